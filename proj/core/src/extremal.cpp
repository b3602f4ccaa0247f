#include "plurigreen/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include "plurigreen/error.hpp"
#include "plurigreen/exponents.hpp"
#include "plurigreen/simplex.hpp"

namespace plurigreen {

namespace {

void check_degree(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidSpec, "degree must be at least 1");
}

std::vector<int> degrees_tried(int n, const SiciakOptions& options) {
  if (!options.power_trick) return {n};
  std::vector<int> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

using BasisLadder = std::vector<std::pair<int, std::shared_ptr<const OrthoBasis>>>;

template <class Make>
BasisLadder make_ladder(int n, const SiciakOptions& options, Make make) {
  BasisLadder out;
  for (int d : degrees_tried(n, options)) {
    out.emplace_back(d, std::make_shared<const OrthoBasis>(make(d)));
  }
  return out;
}

double ladder_value(const BasisLadder& ladder, std::span<const Complex> z,
                    const SiciakOptions& options) {
  double best = 0.0;
  for (const auto& [d, basis] : ladder) {
    best = std::max(best, solve_discrete_siciak(*basis, z, d, options).value);
  }
  return best;
}

}  // namespace

std::string green_method_name(GreenMethod m) {
  switch (m) {
    case GreenMethod::Christoffel: return "christoffel";
    case GreenMethod::DiscreteSiciak: return "discrete-siciak";
    case GreenMethod::ClosedForm: return "closed-form";
    default: return "functional-equation";
  }
}

OrthoBasis restricted_orthobasis(const SampleDesign& design, int n) {
  check_degree(n);
  return OrthoBasis::graded(design.points, n);
}

double christoffel_value(const OrthoBasis& basis, std::span<const Complex> z, int n) {
  const double k = basis.eval(z).squaredNorm();
  const double v = (std::log(k) - std::log(static_cast<double>(basis.rank()))) / (2.0 * n);
  return std::max(0.0, v);
}

double christoffel_green(std::span<const Complex> z, const SampleDesign& design, int n) {
  return christoffel_value(restricted_orthobasis(design, n), z, n);
}

GreenEstimate christoffel_estimate(const SampleDesign& design, int n) {
  auto shared = std::make_shared<const SampleDesign>(design);
  auto basis = std::make_shared<const OrthoBasis>(restricted_orthobasis(*shared, n));
  GreenEstimate est;
  est.method = GreenMethod::Christoffel;
  est.degree = n;
  est.design = shared;
  est.basis_rank = basis->rank();
  est.slack = std::log(static_cast<double>(basis->rank())) / (2.0 * n);
  est.evaluator = [basis, n](const Point& z) { return christoffel_value(*basis, z, n); };
  est.metadata["design_size"] = static_cast<double>(shared->points.size());
  return est;
}

SiciakSolution solve_discrete_siciak(const OrthoBasis& basis, std::span<const Complex> z,
                                     double grade, const SiciakOptions& options) {
  if (!(grade > 0.0)) throw Error(ErrorCode::InvalidSpec, "grade must be positive");
  if (options.phases < 1 || options.polygon < 3) {
    throw Error(ErrorCode::InvalidSpec, "need at least one phase and a polygon with 3 sides");
  }
  const Eigen::Index r = basis.rank();
  const Eigen::Index m = basis.num_points();
  const int sides = options.polygon;
  const Eigen::MatrixXcd& Q = basis.values();

  // Re(e^{-i phi_k} p(x_i)) <= cos(pi/sides), phi_k = (2k+1) pi / sides.
  Eigen::MatrixXd A(m * sides, 2 * r);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (int k = 0; k < sides; ++k) {
      const Complex w = std::polar(1.0, -(2.0 * k + 1.0) * std::numbers::pi / sides);
      const Eigen::Index row = i * sides + k;
      for (Eigen::Index j = 0; j < r; ++j) {
        const Complex u = w * Q(i, j);
        A(row, j) = u.real();
        A(row, r + j) = -u.imag();
      }
    }
  }
  const Eigen::VectorXd b =
      Eigen::VectorXd::Constant(m * sides, std::cos(std::numbers::pi / sides));
  const Eigen::VectorXcd qz = basis.eval(z);

  SiciakSolution best;
  auto solve = [&](double theta) {
    const Eigen::VectorXcd u = std::polar(1.0, -theta) * qz;
    Eigen::VectorXd g(2 * r);
    g << u.real(), -u.imag();
    const LpResult lp = maximize_free(A, b, g, options.max_iterations);
    best.lp_iterations += lp.iterations;
    Eigen::VectorXcd c(r);
    for (Eigen::Index j = 0; j < r; ++j) c(j) = Complex(lp.x(j), lp.x(r + j));
    return std::make_pair(c, static_cast<Complex>((c.array() * qz.array()).sum()));
  };

  Complex best_pz(0.0);
  for (int k = 0; k < options.phases; ++k) {
    auto [c, pz] = solve(2.0 * std::numbers::pi * k / options.phases);
    if (std::abs(pz) > best.modulus) {
      best.modulus = std::abs(pz);
      best.coefficients = std::move(c);
      best.phase_index = k;
      best_pz = pz;
    }
  }
  for (int round = 0; round < options.polish_rounds && best.modulus > 0.0; ++round) {
    auto [c, pz] = solve(std::arg(best_pz));
    if (!(std::abs(pz) > best.modulus * (1.0 + 1e-13))) break;
    best.modulus = std::abs(pz);
    best.coefficients = std::move(c);
    best_pz = pz;
  }
  best.value = best.modulus > 0.0 ? std::max(0.0, std::log(best.modulus) / grade) : 0.0;
  return best;
}

double discrete_siciak(std::span<const Complex> z, const SampleDesign& design, int n,
                       const SiciakOptions& options) {
  check_degree(n);
  const auto ladder =
      make_ladder(n, options, [&](int d) { return restricted_orthobasis(design, d); });
  return ladder_value(ladder, z, options);
}

GreenEstimate discrete_siciak_estimate(const SampleDesign& design, int n,
                                       const SiciakOptions& options) {
  auto shared = std::make_shared<const SampleDesign>(design);
  check_degree(n);
  auto ladder = std::make_shared<const BasisLadder>(
      make_ladder(n, options, [&](int d) { return restricted_orthobasis(*shared, d); }));
  GreenEstimate est;
  est.method = GreenMethod::DiscreteSiciak;
  est.degree = n;
  est.design = shared;
  est.basis_rank = ladder->back().second->rank();
  est.slack = 1e-9;
  est.evaluator = [ladder, options](const Point& z) { return ladder_value(*ladder, z, options); };
  est.metadata["design_size"] = static_cast<double>(shared->points.size());
  est.metadata["polygon_sides"] = options.polygon;
  est.metadata["phases"] = options.phases;
  return est;
}

MultiPoly basis_combination(const OrthoBasis& basis, const Eigen::VectorXcd& coefficients) {
  const auto qs = basis.polynomials();
  MultiPoly p(basis.num_vars());
  for (std::size_t j = 0; j < qs.size(); ++j) {
    const Complex c = coefficients(static_cast<Eigen::Index>(j));
    if (c != Complex(0.0)) p += qs[j] * c;
  }
  return p;
}

std::vector<std::pair<Exponent, double>> graded_monomials(const VarietySpec& v, int n) {
  check_degree(n);
  if (v.charts().empty()) throw Error(ErrorCode::NoChart, "intrinsic grading needs a chart");
  const int N = v.ambient_dim();
  auto grade_of = [&](const Exponent& e) -> std::optional<Rational> {
    try {
      return exact_exponents_variety({MultiPoly::monomial(e)}, v).growth;
    } catch (const Error& err) {
      if (err.code() == ErrorCode::Unsupported) {
        throw Error(ErrorCode::NoChart, std::string("exact grading unavailable: ") + err.what());
      }
      throw;
    }
  };
  // Total-degree cap: n / (smallest positive coordinate grade), at most 4n.
  Rational smallest(0);
  for (int i = 0; i < N; ++i) {
    Exponent e(N, 0);
    e[i] = 1;
    const auto g = grade_of(e);
    if (g && *g > Rational(0) && (smallest == Rational(0) || *g < smallest)) smallest = *g;
  }
  int cap = 4 * n;
  if (smallest > Rational(0)) {
    cap = std::min(cap, static_cast<int>(std::ceil(n / to_double(smallest) - 1e-12)));
  }
  std::vector<std::pair<Exponent, double>> out;
  for (const Exponent& e : graded_exponents(N, std::max(cap, n))) {
    const auto g = grade_of(e);
    if (!g) continue;  // vanishes on V
    if (*g <= Rational(n)) out.emplace_back(e, to_double(*g));
  }
  return out;
}

namespace {

OrthoBasis variety_basis(const VarietySpec& v, const SampleDesign& design, int n) {
  const auto graded = graded_monomials(v, n);
  std::vector<Exponent> monos;
  for (const auto& [e, g] : graded) monos.push_back(e);
  if (monos == graded_exponents(v.ambient_dim(), n)) return OrthoBasis::graded(design.points, n);
  return OrthoBasis::from_monomials(design.points, monos);
}

}  // namespace

double siciak_on_variety(std::span<const Complex> z, const VarietySpec& v,
                         const SampleDesign& design, int n, const SiciakOptions& options) {
  check_degree(n);
  const auto ladder = make_ladder(n, options, [&](int d) { return variety_basis(v, design, d); });
  return ladder_value(ladder, z, options);
}

GreenEstimate siciak_on_variety_estimate(const VarietySpec& v, const SampleDesign& design, int n,
                                         const SiciakOptions& options) {
  auto shared = std::make_shared<const SampleDesign>(design);
  check_degree(n);
  auto ladder = std::make_shared<const BasisLadder>(
      make_ladder(n, options, [&](int d) { return variety_basis(v, *shared, d); }));
  GreenEstimate est;
  est.method = GreenMethod::DiscreteSiciak;
  est.degree = n;
  est.design = shared;
  est.basis_rank = ladder->back().second->rank();
  est.slack = 1e-9;
  est.evaluator = [ladder, options](const Point& z) { return ladder_value(*ladder, z, options); };
  est.metadata["design_size"] = static_cast<double>(shared->points.size());
  est.metadata["intrinsic_grading"] = 1.0;
  return est;
}

GreenEstimate closed_form_estimate(Evaluator f, std::string label) {
  GreenEstimate est;
  est.method = GreenMethod::ClosedForm;
  est.degree = 1;
  est.slack = 0.0;
  est.evaluator = std::move(f);
  if (!label.empty()) est.metadata["label:" + label] = 1.0;
  return est;
}

double estimate_growth_constant(GreenEstimate& est, const VarietySpec& v,
                                std::span<const double> radii, int per_radius, std::uint64_t seed) {
  const auto shells = sample_escape(v, radii, per_radius, seed);
  double c = -std::numeric_limits<double>::infinity();
  for (const auto& s : shells) {
    for (const auto& z : s.points) c = std::max(c, est(z) - std::log1p(norm(z)));
  }
  est.growth_constant = c;
  return c;
}

BwReport bernstein_walsh_check(const MultiPoly& p, double grade, const SampleDesign& design,
                               const Evaluator& green, const std::vector<Point>& testpoints,
                               std::optional<double> tau) {
  if (design.points.empty()) throw Error(ErrorCode::DesignTooSmall, "empty design");
  BwReport rep;
  rep.grade = grade;
  rep.tau = tau.value_or(0.05 * grade + 0.1);
  double sup = 0.0;
  for (const auto& x : design.points) sup = std::max(sup, std::abs(p.eval(x)));
  rep.log_norm_k = std::log(sup);
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < testpoints.size(); ++i) {
    BwRow row;
    row.z = testpoints[i];
    row.log_abs_p = std::log(std::abs(p.eval(row.z)));
    row.green = green(row.z);
    row.margin = row.log_abs_p - rep.log_norm_k - grade * row.green;
    rep.worst_margin = std::max(rep.worst_margin, row.margin);
    if (row.margin > rep.tau) rep.flagged.push_back(static_cast<int>(i));
    rep.rows.push_back(std::move(row));
  }
  rep.holds = rep.flagged.empty();
  return rep;
}

}  // namespace plurigreen
