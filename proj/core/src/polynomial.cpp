#include "plurigreen/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "plurigreen/error.hpp"

namespace plurigreen {

namespace {

int plain_sum(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

int positive_sum(const Exponent& e) {
  int s = 0;
  for (int a : e) s += std::max(a, 0);
  return s;
}

int negative_sum(const Exponent& e) {
  int s = 0;
  for (int a : e) s += std::max(-a, 0);
  return s;
}

Complex ipow(Complex base, int k) {
  if (k < 0) return Complex(1.0) / ipow(base, -k);
  Complex result(1.0);
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

void check_arity(const MultiPoly& a, const MultiPoly& b) {
  if (a.num_vars() != b.num_vars()) {
    throw Error(ErrorCode::DimensionMismatch, "polynomials in " + std::to_string(a.num_vars()) +
                                                  " and " + std::to_string(b.num_vars()) +
                                                  " variables");
  }
}

}  // namespace

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const noexcept {
  const int sa = plain_sum(a);
  const int sb = plain_sum(b);
  if (sa != sb) return sa < sb;
  // Within a degree, a higher power of the leading variable comes first:
  // 1, x, y, x^2, xy, y^2, ...
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly::MultiPoly(int num_vars, bool laurent) : num_vars_(num_vars), laurent_(laurent) {
  if (num_vars < 1) throw Error(ErrorCode::InvalidSpec, "num_vars must be positive");
}

MultiPoly MultiPoly::constant(int num_vars, Complex c, bool laurent) {
  MultiPoly p(num_vars, laurent);
  p.add_term(Exponent(num_vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int num_vars, int index, bool laurent) {
  if (index < 0 || index >= num_vars) {
    throw Error(ErrorCode::DimensionMismatch, "variable index out of range");
  }
  Exponent e(num_vars, 0);
  e[index] = 1;
  MultiPoly p(num_vars, laurent);
  p.add_term(e, 1.0);
  return p;
}

MultiPoly MultiPoly::monomial(const Exponent& exp, Complex c) {
  const bool laurent = std::any_of(exp.begin(), exp.end(), [](int a) { return a < 0; });
  MultiPoly p(static_cast<int>(exp.size()), laurent);
  p.add_term(exp, c);
  return p;
}

MultiPoly MultiPoly::from_terms(int num_vars, bool laurent,
                                const std::vector<std::pair<Exponent, Complex>>& terms) {
  MultiPoly p(num_vars, laurent);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

Complex MultiPoly::coefficient(const Exponent& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void MultiPoly::add_term(const Exponent& exp, Complex c) {
  if (static_cast<int>(exp.size()) != num_vars_) {
    throw Error(ErrorCode::DimensionMismatch, "exponent tuple length differs from num_vars");
  }
  if (!laurent_ && std::any_of(exp.begin(), exp.end(), [](int a) { return a < 0; })) {
    throw Error(ErrorCode::LaurentRejected, "negative exponent in a non-Laurent polynomial");
  }
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

Complex MultiPoly::eval(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != num_vars_) {
    throw Error(ErrorCode::DimensionMismatch, "evaluation point has " + std::to_string(z.size()) +
                                                  " coordinates, expected " +
                                                  std::to_string(num_vars_));
  }
  Complex sum(0.0);
  for (const auto& [e, c] : terms_) {
    Complex term = c;
    for (int i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0 && z[i] == Complex(0.0)) {
        throw Error(ErrorCode::ZeroLaurentCoordinate,
                    "coordinate " + std::to_string(i) + " is zero under a negative exponent");
      }
      term *= ipow(z[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

std::optional<int> MultiPoly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, positive_sum(e));
  return d;
}

int MultiPoly::laurent_pole_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, negative_sum(e));
  return d;
}

MultiPoly MultiPoly::homogeneous_part(int d) const {
  if (laurent_) throw Error(ErrorCode::LaurentRejected, "homogeneous_part of a Laurent polynomial");
  MultiPoly out(num_vars_, false);
  for (const auto& [e, c] : terms_) {
    if (plain_sum(e) == d) out.terms_.emplace(e, c);
  }
  return out;
}

MultiPoly MultiPoly::derivative(int var) const {
  if (var < 0 || var >= num_vars_) throw Error(ErrorCode::DimensionMismatch, "bad variable index");
  MultiPoly out(num_vars_, laurent_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * static_cast<double>(e[var]));
  }
  return out;
}

MultiPoly MultiPoly::as_laurent() const {
  MultiPoly out = *this;
  out.laurent_ = true;
  return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(num_vars_, 1.0, laurent_);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_arity(*this, other);
  laurent_ = laurent_ || other.laurent_;
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_arity(*this, other);
  laurent_ = laurent_ || other.laurent_;
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    // Underflow can still produce an exact zero.
    if (it->second == Complex(0.0)) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_arity(a, b);
  MultiPoly out(a.num_vars_, a.laurent_ || b.laurent_);
  Exponent e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly add(const MultiPoly& a, const MultiPoly& b) { return a + b; }
MultiPoly mul(const MultiPoly& a, const MultiPoly& b) { return a * b; }
MultiPoly scale(const MultiPoly& a, Complex s) { return a * s; }

MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> subs) {
  if (static_cast<int>(subs.size()) != p.num_vars()) {
    throw Error(ErrorCode::ArityMismatch, "compose: " + std::to_string(subs.size()) +
                                              " substitutions for " + std::to_string(p.num_vars()) +
                                              " variables");
  }
  const int target_vars = subs.front().num_vars();
  bool laurent = false;
  for (const auto& s : subs) {
    if (s.num_vars() != target_vars) {
      throw Error(ErrorCode::ArityMismatch, "compose: substitutions disagree on variable count");
    }
    laurent = laurent || s.laurent();
  }

  // Per-variable power caches, filled lazily.
  std::vector<std::map<int, MultiPoly>> cache(subs.size());
  auto power = [&](std::size_t var, int k) -> const MultiPoly& {
    auto it = cache[var].find(k);
    if (it != cache[var].end()) return it->second;
    MultiPoly value(target_vars);
    if (k >= 0) {
      value = subs[var].pow(static_cast<unsigned>(k));
    } else {
      const MultiPoly& s = subs[var];
      if (s.size() != 1) {
        throw Error(ErrorCode::IllegalLaurentComposition,
                    "negative power of a non-monomial substitution");
      }
      const auto& [e, c] = *s.terms().begin();
      Exponent inv(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) inv[i] = e[i] * k;
      value = MultiPoly::monomial(inv, ipow(c, k));
      if (!value.laurent()) value = value.as_laurent();
    }
    return cache[var].emplace(k, std::move(value)).first->second;
  };

  for (const auto& [e, c] : p.terms()) {
    for (int a : e) {
      if (a < 0) laurent = true;
    }
  }
  MultiPoly result(target_vars, laurent);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(target_vars, c, laurent);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term = term * power(i, e[i]);
    }
    result += term;
  }
  return result;
}

std::vector<MultiPoly> compose_map(std::span<const MultiPoly> map,
                                   std::span<const MultiPoly> subs) {
  std::vector<MultiPoly> out;
  out.reserve(map.size());
  for (const auto& f : map) out.push_back(compose(f, subs));
  return out;
}

std::vector<Exponent> graded_exponents(int num_vars, int max_degree) {
  std::vector<Exponent> out;
  Exponent e(num_vars, 0);
  // Enumerate compositions of each degree; sort afterwards to pin grlex order.
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<Exponent> level;
    std::fill(e.begin(), e.end(), 0);
    auto rec = [&](auto&& self, int var, int remaining) -> void {
      if (var == num_vars - 1) {
        e[var] = remaining;
        level.push_back(e);
        return;
      }
      for (int a = 0; a <= remaining; ++a) {
        e[var] = a;
        self(self, var + 1, remaining - a);
      }
    };
    rec(rec, 0, d);
    std::sort(level.begin(), level.end(), GrlexLess{});
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<MultiPoly> monomial_basis(int num_vars, int max_degree) {
  std::vector<MultiPoly> out;
  for (const auto& e : graded_exponents(num_vars, max_degree))
    out.push_back(MultiPoly::monomial(e));
  return out;
}

std::vector<MultiPoly> identity_map(int num_vars) {
  std::vector<MultiPoly> out;
  for (int i = 0; i < num_vars; ++i) out.push_back(MultiPoly::variable(num_vars, i));
  return out;
}

Point eval_map(std::span<const MultiPoly> map, std::span<const Complex> z) {
  Point out;
  out.reserve(map.size());
  for (const auto& f : map) out.push_back(f.eval(z));
  return out;
}

double norm(std::span<const Complex> z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return std::sqrt(s);
}

std::string to_string(const MultiPoly& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  auto name = [&](int i) {
    return i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i);
  };
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool is_const = std::all_of(e.begin(), e.end(), [](int a) { return a == 0; });
    Complex a = c;
    // Real coefficients carry their sign in the joining operator.
    if (a.imag() == 0.0 && a.real() < 0.0) {
      os << (first ? "-" : " - ");
      a = -a;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    if (a.imag() == 0.0) {
      if (a.real() != 1.0 || is_const) os << a.real();
    } else {
      os << "(" << a.real() << (a.imag() < 0.0 ? " - " : " + ") << std::abs(a.imag()) << "*I)";
    }
    bool need_star = !(a == Complex(1.0) && !is_const);
    for (int i = 0; i < p.num_vars(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      os << name(i);
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace plurigreen
