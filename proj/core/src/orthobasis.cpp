#include "plurigreen/orthobasis.hpp"

#include <cmath>
#include <map>

#include "plurigreen/error.hpp"

namespace plurigreen {

namespace {

void check_points(const std::vector<Point>& points) {
  if (points.size() < 2) throw Error(ErrorCode::DesignTooSmall, "design needs at least 2 points");
  const std::size_t n = points.front().size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "design points are empty tuples");
  for (const auto& p : points) {
    if (p.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "design points differ in dimension");
  }
}

Complex monomial_value(const Exponent& e, std::span<const Complex> z) {
  Complex v(1.0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (int k = 0; k < e[i]; ++k) v *= z[i];
  }
  return v;
}

}  // namespace

void OrthoBasis::add_candidate(Eigen::VectorXcd c, Step step, double rank_tol, bool& kept) {
  const double m = static_cast<double>(c.size());
  const double size0 = c.norm() / std::sqrt(m);
  const Eigen::Index r = static_cast<Eigen::Index>(steps_.size());
  step.h = Eigen::VectorXcd::Zero(r);
  if (r > 0) {
    const auto q = values_.leftCols(r);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd h = (q.adjoint() * c) / m;
      c.noalias() -= q * h;
      step.h += h;
    }
  }
  const double size = c.norm() / std::sqrt(m);
  kept = size0 > 0.0 && size > rank_tol * size0;
  if (!kept) return;
  step.scale = size;
  if (values_.cols() <= r) values_.conservativeResize(c.size(), std::max<Eigen::Index>(8, 2 * r));
  values_.col(r) = c / size;
  steps_.push_back(std::move(step));
}

OrthoBasis OrthoBasis::graded(const std::vector<Point>& points, int max_degree, double rank_tol) {
  check_points(points);
  if (max_degree < 0) throw Error(ErrorCode::InvalidSpec, "basis degree must be nonnegative");
  OrthoBasis b;
  b.num_vars_ = static_cast<int>(points.front().size());
  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  b.values_.resize(m, 0);

  std::map<Exponent, int> index;
  for (const Exponent& alpha : graded_exponents(b.num_vars_, max_degree)) {
    Step step;
    Eigen::VectorXcd c(m);
    int last = -1;
    bool parents_ok = true;
    for (int j = 0; j < b.num_vars_; ++j) {
      if (alpha[j] == 0) continue;
      Exponent beta = alpha;
      --beta[j];
      if (!index.contains(beta)) {
        parents_ok = false;
        break;
      }
      last = j;
    }
    if (!parents_ok) continue;  // a divisor already vanishes on the design
    if (last < 0) {
      step.monomial = alpha;
      c.setOnes();
    } else {
      Exponent beta = alpha;
      --beta[last];
      step.parent = index.at(beta);
      step.var = last;
      for (Eigen::Index i = 0; i < m; ++i) c(i) = points[i][last] * b.values_(i, step.parent);
    }
    bool kept = false;
    b.add_candidate(std::move(c), std::move(step), rank_tol, kept);
    if (kept) {
      index.emplace(alpha, b.rank() - 1);
      b.leading_.push_back(alpha);
    }
  }
  b.values_.conservativeResize(m, b.rank());
  return b;
}

OrthoBasis OrthoBasis::from_monomials(const std::vector<Point>& points,
                                      const std::vector<Exponent>& monomials, double rank_tol) {
  check_points(points);
  OrthoBasis b;
  b.num_vars_ = static_cast<int>(points.front().size());
  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  b.values_.resize(m, 0);
  for (const Exponent& alpha : monomials) {
    if (static_cast<int>(alpha.size()) != b.num_vars_) {
      throw Error(ErrorCode::DimensionMismatch, "monomial has wrong number of variables");
    }
    Step step;
    step.monomial = alpha;
    Eigen::VectorXcd c(m);
    for (Eigen::Index i = 0; i < m; ++i) c(i) = monomial_value(alpha, points[i]);
    bool kept = false;
    b.add_candidate(std::move(c), std::move(step), rank_tol, kept);
    if (kept) b.leading_.push_back(alpha);
  }
  b.values_.conservativeResize(m, b.rank());
  return b;
}

std::vector<Exponent> OrthoBasis::kept_monomials() const { return leading_; }

Eigen::VectorXcd OrthoBasis::eval(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != num_vars_) {
    throw Error(ErrorCode::DimensionMismatch, "evaluation point has wrong dimension");
  }
  Eigen::VectorXcd q(rank());
  for (int j = 0; j < rank(); ++j) {
    const Step& s = steps_[j];
    Complex v = s.parent < 0 ? monomial_value(s.monomial, z) : z[s.var] * q(s.parent);
    if (j > 0) v -= (s.h.array() * q.head(j).array()).sum();
    q(j) = v / s.scale;
  }
  return q;
}

std::vector<MultiPoly> OrthoBasis::polynomials() const {
  std::vector<MultiPoly> out;
  out.reserve(steps_.size());
  for (const Step& s : steps_) {
    MultiPoly p = s.parent < 0 ? MultiPoly::monomial(s.monomial)
                               : MultiPoly::variable(num_vars_, s.var) * out[s.parent];
    for (Eigen::Index i = 0; i < s.h.size(); ++i) {
      if (s.h(i) != Complex(0.0)) p -= out[i] * s.h(i);
    }
    out.push_back(p * Complex(1.0 / s.scale));
  }
  return out;
}

}  // namespace plurigreen
