#pragma once

#include <Eigen/Dense>
#include <vector>

#include "plurigreen/polynomial.hpp"

namespace plurigreen {

/// Polynomials q_1..q_r orthonormal for <f, g> = (1/m) sum_i conj(f(x_i)) g(x_i)
/// over a point cloud, built by Vandermonde-with-Arnoldi: each new candidate is
/// a coordinate times an earlier basis vector (or a raw monomial), then
/// Gram-Schmidt'd twice against the basis so far. Candidates whose residual
/// falls below `rank_tol` relative to their own size are dropped; those are
/// the directions that vanish on the point cloud.
class OrthoBasis {
 public:
  /// Candidates are all monomials of total degree <= max_degree, grlex order.
  static OrthoBasis graded(const std::vector<Point>& points, int max_degree,
                           double rank_tol = 1e-10);

  /// Candidates are the given monomials, in order (the first must be 0).
  static OrthoBasis from_monomials(const std::vector<Point>& points,
                                   const std::vector<Exponent>& monomials, double rank_tol = 1e-10);

  int rank() const noexcept { return static_cast<int>(steps_.size()); }
  int num_vars() const noexcept { return num_vars_; }
  int num_points() const noexcept { return static_cast<int>(values_.rows()); }

  /// Monomials kept (one per basis element; the leading monomial of q_j).
  std::vector<Exponent> kept_monomials() const;

  /// q_1(z), ..., q_r(z).
  Eigen::VectorXcd eval(std::span<const Complex> z) const;

  /// q_j(x_i) as an m x r matrix; (1/m) Q^H Q = I.
  const Eigen::MatrixXcd& values() const noexcept { return values_; }

  /// The q_j as explicit polynomials (monomial expansion).
  std::vector<MultiPoly> polynomials() const;

 private:
  struct Step {
    int parent = -1;  // basis index multiplied by coordinate `var`
    int var = -1;
    Exponent monomial;   // used when parent < 0
    Eigen::VectorXcd h;  // projection coefficients onto q_0..q_{j-1}
    double scale = 1.0;  // residual norm
  };

  void add_candidate(Eigen::VectorXcd c, Step step, double rank_tol, bool& kept);

  int num_vars_ = 0;
  std::vector<Step> steps_;
  std::vector<Exponent> leading_;
  Eigen::MatrixXcd values_;
};

}  // namespace plurigreen
