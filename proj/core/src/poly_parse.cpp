#include <cctype>
#include <cstdlib>

#include "plurigreen/error.hpp"
#include "plurigreen/polynomial.hpp"

namespace plurigreen {

namespace {

// Recursive-descent parser:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*
//   factor := base ['^' ['-'] int]
//   base   := number | 'I' | name | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {
    if (names_.empty())
      throw Error(ErrorCode::Parse, "parse_poly needs at least one variable name");
    num_vars_ = static_cast<int>(names_.size());
  }

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Parse,
                "polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  MultiPoly expr() {
    MultiPoly acc(num_vars_);
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    MultiPoly first = term();
    acc += negate ? -first : first;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '.' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c));
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly b = base();
    if (!peek('^')) return b;
    ++pos_;
    skip_ws();
    bool negative = false;
    if (peek('-')) {
      negative = true;
      ++pos_;
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    const int k = std::atoi(std::string(text_.substr(start, pos_ - start)).c_str());
    if (!negative) return b.pow(static_cast<unsigned>(k));
    if (b.size() != 1) fail("negative power of a non-monomial");
    const auto& [e, c] = *b.terms().begin();
    Exponent inv(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i] * k;
    return MultiPoly::monomial(inv, std::pow(c, -k));
  }

  MultiPoly base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(text_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      const auto consumed = static_cast<std::size_t>(end - rest.c_str());
      if (consumed == 0) fail("bad number");
      pos_ += consumed;
      return MultiPoly::constant(num_vars_, v);
    }
    // Longest matching variable name wins, so "xy" with names {x, y} splits.
    std::size_t best = 0;
    int best_index = -1;
    for (int i = 0; i < num_vars_; ++i) {
      const auto& n = names_[i];
      if (n.size() > best && text_.substr(pos_, n.size()) == n) {
        best = n.size();
        best_index = i;
      }
    }
    if (best_index >= 0) {
      pos_ += best;
      return MultiPoly::variable(num_vars_, best_index);
    }
    if (c == 'I') {
      ++pos_;
      return MultiPoly::constant(num_vars_, Complex(0.0, 1.0));
    }
    fail("unknown symbol '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  int num_vars_ = 0;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, std::span<const std::string> names) {
  return Parser(text, names).parse();
}

}  // namespace plurigreen
