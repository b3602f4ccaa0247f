#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "plurigreen/polynomial.hpp"

namespace plurigreen {

/// Finds s > 0 with lo <= g(s) <= hi by geometric expansion from s0 followed
/// by bisection in log s. `grows_at_infinity` tells which way g increases
/// along the ray (false for the pole end of a Laurent chart). Non-finite or
/// throwing evaluations count as failures of that probe. Gives up after
/// `max_steps` probes in total.
std::optional<double> find_scale_in_band(const std::function<double(double)>& g, double s0,
                                         double lo, double hi, bool grows_at_infinity,
                                         int max_steps = 200);

/// Value and real gradient of a function of complex parameters, the gradient
/// packed as complex numbers (d/dRe + i d/dIm).
struct ValueGrad {
  double value = 0.0;
  Point grad;
};

using SmoothFn = std::function<ValueGrad(const Point&)>;

/// A level band {lo <= c(t) <= hi} together with a retraction onto it.
struct ShellConstraint {
  std::function<Point(const Point&)> grad;  // real gradient of c
  std::function<std::optional<Point>(const Point&)> project;
};

/// Band {lo <= c(t) <= hi}, retracted by rescaling t along its ray.
ShellConstraint make_ray_band(std::function<double(const Point&)> value,
                              std::function<Point(const Point&)> grad, double lo, double hi,
                              bool grows_at_infinity);

/// Projected gradient descent with Armijo backtracking; every iterate stays on
/// the band. Returns the best point visited.
Point descend_on_shell(const SmoothFn& objective, const ShellConstraint& shell, Point start,
                       int steps);

/// log ||h(t)||^2 for a polynomial map h, with analytic gradient.
class LogNormSquared {
 public:
  explicit LogNormSquared(std::vector<MultiPoly> components);

  double value(const Point& t) const;
  ValueGrad value_grad(const Point& t) const;
  /// Real gradient of ||h(t)||^2 itself.
  Point norm2_grad(const Point& t) const;

 private:
  std::vector<MultiPoly> h_;
  std::vector<std::vector<MultiPoly>> dh_;  // dh_[i][j] = d h_i / d t_j
};

/// Polynomial map with its holomorphic Jacobian.
class HoloMap {
 public:
  explicit HoloMap(std::vector<MultiPoly> components);

  int num_vars() const noexcept { return num_vars_; }
  const std::vector<MultiPoly>& components() const noexcept { return h_; }
  Point eval(const Point& t) const;
  Eigen::MatrixXcd jacobian(const Point& t) const;

 private:
  int num_vars_ = 0;
  std::vector<MultiPoly> h_;
  std::vector<std::vector<MultiPoly>> dh_;
};

/// Rescales t along its ray until lo <= ||g(s t)|| <= hi.
std::optional<Point> project_to_band(const HoloMap& g, const Point& t, double lo, double hi);

/// Levenberg-Marquardt descent of ||h(t)||^2 with ||g(t)|| held in [lo, hi]:
/// each step is restricted to the tangent space of the level set of ||g||^2
/// and then pulled back into the band by ray rescaling. Returns the best
/// point visited (the projected start if no step succeeds).
std::optional<Point> minimize_norm_on_band(const HoloMap& h, const HoloMap& g, double lo, double hi,
                                           const Point& start, int steps);

}  // namespace plurigreen
