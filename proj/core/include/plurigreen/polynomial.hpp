#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace plurigreen {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;
using Exponent = std::vector<int>;

/// Graded-lexicographic order: lower plain exponent sum first, ties broken
/// lexicographically with the first variable most significant.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const noexcept;
};

/// Sparse multivariate polynomial with complex double coefficients.
///
/// Terms live in a map keyed by exponent tuple in graded-lex order, so
/// iteration (evaluation, printing, serialization) is deterministic. A
/// coefficient that becomes exactly zero is erased; there is no epsilon
/// pruning, so degree queries never depend on a threshold.
///
/// When `laurent()` is set, exponents may be negative and the polynomial is
/// a Laurent polynomial on the punctured domain.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Complex, GrlexLess>;

  explicit MultiPoly(int num_vars = 1, bool laurent = false);

  static MultiPoly constant(int num_vars, Complex c, bool laurent = false);
  static MultiPoly variable(int num_vars, int index, bool laurent = false);
  /// Single term; becomes Laurent automatically when any exponent is negative.
  static MultiPoly monomial(const Exponent& exp, Complex c = 1.0);
  static MultiPoly from_terms(int num_vars, bool laurent,
                              const std::vector<std::pair<Exponent, Complex>>& terms);

  int num_vars() const noexcept { return num_vars_; }
  bool laurent() const noexcept { return laurent_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Complex coefficient(const Exponent& exp) const;

  /// Adds `c` to the coefficient of `exp`; erases the term if it cancels exactly.
  void add_term(const Exponent& exp, Complex c);

  Complex eval(std::span<const Complex> z) const;

  /// Max over terms of the sum of positive exponent parts; nullopt stands for
  /// the degree of the zero polynomial (negative infinity).
  std::optional<int> total_degree() const;

  /// Max over terms of the sum of negative exponent parts (0 for ordinary
  /// polynomials).
  int laurent_pole_degree() const;

  /// Terms with exponent sum exactly `d`. Rejects Laurent input.
  MultiPoly homogeneous_part(int d) const;

  MultiPoly derivative(int var) const;

  /// Same terms with the Laurent flag raised (used before mixing with Laurent
  /// operands).
  MultiPoly as_laurent() const;

  MultiPoly pow(unsigned k) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(Complex s);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, Complex s) { return a *= s; }
  friend MultiPoly operator*(Complex s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator-(MultiPoly a) { return a *= -1.0; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.laurent_ == b.laurent_ && a.terms_ == b.terms_;
  }

 private:
  int num_vars_;
  bool laurent_;
  TermMap terms_;
};

MultiPoly add(const MultiPoly& a, const MultiPoly& b);
MultiPoly mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly scale(const MultiPoly& a, Complex s);

/// Substitutes `subs[i]` for variable i of `p`. Negative exponents in `p` are
/// legal only when the corresponding substitution is a single monomial.
MultiPoly compose(const MultiPoly& p, std::span<const MultiPoly> subs);

/// Applies `compose` to every component of a map.
std::vector<MultiPoly> compose_map(std::span<const MultiPoly> map, std::span<const MultiPoly> subs);

/// Exponent tuples with total degree <= max_degree, graded-lex order.
std::vector<Exponent> graded_exponents(int num_vars, int max_degree);

/// Monomials with total degree <= max_degree, graded-lex order.
std::vector<MultiPoly> monomial_basis(int num_vars, int max_degree);

/// Identity map (z_1, ..., z_n) as polynomials.
std::vector<MultiPoly> identity_map(int num_vars);

/// Evaluates every component of a map.
Point eval_map(std::span<const MultiPoly> map, std::span<const Complex> z);

double norm(std::span<const Complex> z);

/// Human-readable form, e.g. "x^2*y + (0,1)*z". Default names are x0, x1, ...
std::string to_string(const MultiPoly& p, std::span<const std::string> names = {});

/// Parses expressions such as "x^3+x^2y+xy^2+y^3" or "2*t - t^-1" over the
/// given single-token variable names. Juxtaposition means multiplication,
/// `I` is the imaginary unit, and a negative power makes the result Laurent.
MultiPoly parse_poly(std::string_view text, std::span<const std::string> names);

}  // namespace plurigreen
