#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plurigreen/orthobasis.hpp"
#include "plurigreen/polynomial.hpp"
#include "plurigreen/variety.hpp"

namespace plurigreen {

enum class GreenMethod { Christoffel, DiscreteSiciak, ClosedForm, FunctionalEquation };
std::string green_method_name(GreenMethod m);

using Evaluator = std::function<double(const Point&)>;

/// An approximation of the Green function V_K on a variety, with the data
/// it was built from. `slack` bounds the evaluator on the design points.
struct GreenEstimate {
  GreenMethod method = GreenMethod::ClosedForm;
  int degree = 1;
  std::shared_ptr<const SampleDesign> design;  // null for closed forms
  int basis_rank = 0;
  double slack = 0.0;
  Evaluator evaluator;
  std::map<std::string, double> metadata;
  std::optional<double> growth_constant;  // C_est in value <= log(1+||z||) + C_est

  double operator()(const Point& z) const { return evaluator(z); }
};

/// Orthonormal basis of polynomials of degree <= n restricted to the design.
OrthoBasis restricted_orthobasis(const SampleDesign& design, int n);

/// max(0, (1/2n) log sum_j |q_j(z)|^2 - log(rank)/(2n)).
double christoffel_value(const OrthoBasis& basis, std::span<const Complex> z, int n);
double christoffel_green(std::span<const Complex> z, const SampleDesign& design, int n);
GreenEstimate christoffel_estimate(const SampleDesign& design, int n);

struct SiciakOptions {
  int phases = 32;   // objective phases swept
  int polygon = 16;  // sides of the inscribed polygon replacing |p(x_i)| <= 1
  int max_iterations = 20000;
  int polish_rounds = 20;   // phase realignment after the sweep
  bool power_trick = true;  // degree n also tries p^(n/d) for every divisor d of n
};

struct SiciakSolution {
  double value = 0.0;             // max(0, log(modulus) / grade)
  double modulus = 0.0;           // |p(z)| of the best feasible p found
  int phase_index = 0;            // sweep phase that seeded the winner
  Eigen::VectorXcd coefficients;  // in the orthonormal basis
  int lp_iterations = 0;
};

/// Maximizes |p(z)| over p in span(basis) with p(x_i) inside the regular
/// polygon inscribed in the unit circle (vertices at the polygon-th roots of
/// unity) at every design point. Each phase theta of the sweep gives the LP
/// max Re(e^{-i theta} p(z)); the best is then realigned to theta = arg p(z)
/// until |p(z)| stops increasing.
SiciakSolution solve_discrete_siciak(const OrthoBasis& basis, std::span<const Complex> z,
                                     double grade, const SiciakOptions& options = {});

/// With power_trick the value at degree n is the best over the problems of
/// every divisor d of n: the d-witness raised to n/d stays feasible, so the
/// value never drops along divisibility.
double discrete_siciak(std::span<const Complex> z, const SampleDesign& design, int n,
                       const SiciakOptions& options = {});
GreenEstimate discrete_siciak_estimate(const SampleDesign& design, int n,
                                       const SiciakOptions& options = {});

/// Expands coefficients in an orthonormal basis into a polynomial.
MultiPoly basis_combination(const OrthoBasis& basis, const Eigen::VectorXcd& coefficients);

/// Monomials whose restriction to V has exact growth exponent <= n, with
/// their grades. Throws NoChart when V has no chart.
std::vector<std::pair<Exponent, double>> graded_monomials(const VarietySpec& v, int n);

/// Discrete Siciak problem over the monomials of intrinsic grade <= n.
double siciak_on_variety(std::span<const Complex> z, const VarietySpec& v,
                         const SampleDesign& design, int n, const SiciakOptions& options = {});
GreenEstimate siciak_on_variety_estimate(const VarietySpec& v, const SampleDesign& design, int n,
                                         const SiciakOptions& options = {});

GreenEstimate closed_form_estimate(Evaluator f, std::string label = {});

/// max over escape samples of value(z) - log(1 + ||z||); stored in the
/// estimate's growth_constant.
double estimate_growth_constant(GreenEstimate& est, const VarietySpec& v,
                                std::span<const double> radii, int per_radius, std::uint64_t seed);

struct BwRow {
  Point z;
  double log_abs_p = 0.0;
  double green = 0.0;
  double margin = 0.0;  // log|p(z)| - log||p||_K - grade * green(z)
};

struct BwReport {
  double grade = 0.0;
  double tau = 0.0;
  double log_norm_k = 0.0;
  double worst_margin = 0.0;
  std::vector<BwRow> rows;
  std::vector<int> flagged;  // indices into rows with margin > tau
  bool holds = true;
};

/// Checks |p(z)| <= ||p||_K exp(grade * V_K(z)) on the test points, with
/// ||p||_K taken as the max over the design. Default tau = 0.05 grade + 0.1.
BwReport bernstein_walsh_check(const MultiPoly& p, double grade, const SampleDesign& design,
                               const Evaluator& green, const std::vector<Point>& testpoints,
                               std::optional<double> tau = std::nullopt);

}  // namespace plurigreen
