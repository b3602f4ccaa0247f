#include "plurigreen/shell_search.hpp"

#include <cmath>
#include <limits>

#include "plurigreen/error.hpp"

namespace plurigreen {

namespace {

double safe_eval(const std::function<double(double)>& g, double s) {
  try {
    const double v = g(s);
    return std::isnan(v) ? std::numeric_limits<double>::quiet_NaN() : v;
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

double real_dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (std::conj(a[i]) * b[i]).real();
  return s;
}

}  // namespace

std::optional<double> find_scale_in_band(const std::function<double(double)>& g, double s0,
                                         double lo, double hi, bool grows_at_infinity,
                                         int max_steps) {
  if (!(s0 > 0.0) || !(lo > 0.0) || !(hi >= lo)) return std::nullopt;
  const double target = std::sqrt(lo * hi);
  // sign(u) > 0 means "too large" on the log-scale axis u = log s.
  auto classify = [&](double u, double& value) -> int {
    value = safe_eval(g, std::exp(u));
    if (std::isnan(value)) return 2;
    if (value >= lo && value <= hi) return 0;
    return value > hi ? 1 : -1;
  };

  int steps = 0;
  double value = 0.0;
  double u = std::log(s0);
  int cls = classify(u, value);
  ++steps;
  if (cls == 0) return std::exp(u);
  if (cls == 2) return std::nullopt;

  // Move toward the target: increasing u raises g when grows_at_infinity.
  const double dir = ((cls < 0) == grows_at_infinity) ? 1.0 : -1.0;
  double step = std::max(0.25, std::abs(std::log(target / std::max(value, 1e-300))) * 0.5);
  double u_prev = u;
  int cls_prev = cls;
  double u_next = u;
  int cls_next = cls;
  while (steps < max_steps) {
    u_next = u_prev + dir * step;
    cls_next = classify(u_next, value);
    ++steps;
    if (cls_next == 0) return std::exp(u_next);
    if (cls_next == 2) return std::nullopt;
    if (cls_next != cls_prev) break;
    u_prev = u_next;
    step *= 2.0;
  }
  if (cls_next == cls_prev) return std::nullopt;

  double a = u_prev;  // classification cls_prev
  double b = u_next;
  while (steps < max_steps) {
    const double mid = 0.5 * (a + b);
    const int c = classify(mid, value);
    ++steps;
    if (c == 0) return std::exp(mid);
    if (c == 2) return std::nullopt;
    if (c == cls_prev) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return std::nullopt;
}

ShellConstraint make_ray_band(std::function<double(const Point&)> value,
                              std::function<Point(const Point&)> grad, double lo, double hi,
                              bool grows_at_infinity) {
  ShellConstraint c;
  c.grad = std::move(grad);
  c.project = [value = std::move(value), lo, hi,
               grows_at_infinity](const Point& t) -> std::optional<Point> {
    auto along = [&](double s) {
      Point p = t;
      for (auto& x : p) x *= s;
      return value(p);
    };
    auto s = find_scale_in_band(along, 1.0, lo, hi, grows_at_infinity, 120);
    if (!s) return std::nullopt;
    Point p = t;
    for (auto& x : p) x *= *s;
    return p;
  };
  return c;
}

Point descend_on_shell(const SmoothFn& objective, const ShellConstraint& shell, Point start,
                       int steps) {
  auto first = shell.project(start);
  if (!first) return start;
  Point t = *first;
  ValueGrad cur = objective(t);
  if (!std::isfinite(cur.value)) return t;
  double alpha = 0.1;
  for (int it = 0; it < steps; ++it) {
    // Tangential part of the gradient.
    Point d = cur.grad;
    const Point n = shell.grad(t);
    const double nn = real_dot(n, n);
    if (nn > 0.0) {
      const double coef = real_dot(n, d) / nn;
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= coef * n[i];
    }
    const double dn = std::sqrt(real_dot(d, d));
    const double tn = norm(t);
    if (!(dn > 0.0) || !(tn > 0.0) || !std::isfinite(dn)) break;

    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      Point trial = t;
      const double len = alpha * tn / dn;
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] -= len * d[i];
      auto proj = shell.project(trial);
      if (proj) {
        ValueGrad next = objective(*proj);
        if (std::isfinite(next.value) && next.value < cur.value - 1e-4 * alpha * tn * dn) {
          t = std::move(*proj);
          cur = std::move(next);
          accepted = true;
          break;
        }
        if (next.value == -std::numeric_limits<double>::infinity()) {
          // Exact zero reached; nothing lower exists.
          return *proj;
        }
      }
      alpha *= 0.5;
      if (alpha < 1e-300) break;
    }
    if (!accepted) break;
    alpha = std::min(alpha * 2.0, 1.0);
  }
  return t;
}

LogNormSquared::LogNormSquared(std::vector<MultiPoly> components) : h_(std::move(components)) {
  if (h_.empty()) throw Error(ErrorCode::InvalidSpec, "LogNormSquared needs a nonempty map");
  const int k = h_.front().num_vars();
  for (const auto& hi : h_) {
    std::vector<MultiPoly> row;
    for (int j = 0; j < k; ++j) row.push_back(hi.derivative(j));
    dh_.push_back(std::move(row));
  }
}

double LogNormSquared::value(const Point& t) const {
  double s = 0.0;
  for (const auto& hi : h_) s += std::norm(hi.eval(t));
  return std::log(s);
}

Point LogNormSquared::norm2_grad(const Point& t) const {
  // d||h||^2 / d conj(t_j) = sum_i conj(h_i') h_i; real gradient is twice that.
  Point g(t.size(), Complex(0.0));
  for (std::size_t i = 0; i < h_.size(); ++i) {
    const Complex hv = h_[i].eval(t);
    for (std::size_t j = 0; j < t.size(); ++j) {
      g[j] += 2.0 * std::conj(dh_[i][j].eval(t)) * hv;
    }
  }
  return g;
}

ValueGrad LogNormSquared::value_grad(const Point& t) const {
  ValueGrad out;
  out.grad.assign(t.size(), Complex(0.0));
  double s = 0.0;
  std::vector<Complex> hv(h_.size());
  for (std::size_t i = 0; i < h_.size(); ++i) {
    hv[i] = h_[i].eval(t);
    s += std::norm(hv[i]);
  }
  out.value = std::log(s);
  if (s == 0.0) return out;
  for (std::size_t i = 0; i < h_.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      out.grad[j] += 2.0 * std::conj(dh_[i][j].eval(t)) * hv[i] / s;
    }
  }
  return out;
}

HoloMap::HoloMap(std::vector<MultiPoly> components) : h_(std::move(components)) {
  if (h_.empty()) throw Error(ErrorCode::InvalidSpec, "HoloMap needs a nonempty map");
  num_vars_ = h_.front().num_vars();
  for (const auto& hi : h_) {
    if (hi.num_vars() != num_vars_) {
      throw Error(ErrorCode::DimensionMismatch, "map components disagree on variable count");
    }
    std::vector<MultiPoly> row;
    for (int j = 0; j < num_vars_; ++j) row.push_back(hi.derivative(j));
    dh_.push_back(std::move(row));
  }
}

Point HoloMap::eval(const Point& t) const { return eval_map(h_, t); }

Eigen::MatrixXcd HoloMap::jacobian(const Point& t) const {
  Eigen::MatrixXcd J(static_cast<Eigen::Index>(h_.size()), num_vars_);
  for (std::size_t i = 0; i < h_.size(); ++i) {
    for (int j = 0; j < num_vars_; ++j) J(static_cast<Eigen::Index>(i), j) = dh_[i][j].eval(t);
  }
  return J;
}

std::optional<Point> project_to_band(const HoloMap& g, const Point& t, double lo, double hi) {
  auto along = [&](double s) {
    Point p = t;
    for (auto& x : p) x *= s;
    return norm(g.eval(p));
  };
  double base = 0.0;
  try {
    base = along(1.0);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (base >= lo && base <= hi) return t;
  bool grows = true;
  try {
    grows = along(1.1) > base;
  } catch (const Error&) {
    return std::nullopt;
  }
  auto s = find_scale_in_band(along, 1.0, lo, hi, grows, 120);
  if (!s) return std::nullopt;
  Point p = t;
  for (auto& x : p) x *= *s;
  return p;
}

std::optional<Point> minimize_norm_on_band(const HoloMap& h, const HoloMap& g, double lo, double hi,
                                           const Point& start, int steps) {
  auto first = project_to_band(g, start, lo, hi);
  if (!first) return std::nullopt;
  Point t = *first;
  const Eigen::Index k = h.num_vars();
  auto residual = [&](const Point& x) {
    try {
      const Point r = h.eval(x);
      double s = 0.0;
      for (const auto& c : r) s += std::norm(c);
      return s;
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  double cur = residual(t);
  double lambda = 1e-3;
  for (int it = 0; it < steps && cur > 0.0; ++it) {
    const Point hv = h.eval(t);
    const Eigen::MatrixXcd J = h.jacobian(t);
    const Eigen::Index p = J.rows();
    // Real form of the complex-linear least-squares problem.
    Eigen::MatrixXd Jr(2 * p, 2 * k);
    Jr << J.real(), -J.imag(), J.imag(), J.real();
    Eigen::VectorXd r(2 * p);
    for (Eigen::Index i = 0; i < p; ++i) {
      r(i) = hv[i].real();
      r(p + i) = hv[i].imag();
    }
    // Normal of the level set of ||g||^2.
    const Point gv = g.eval(t);
    const Eigen::MatrixXcd Jg = g.jacobian(t);
    Eigen::VectorXd n(2 * k);
    for (Eigen::Index j = 0; j < k; ++j) {
      Complex s(0.0);
      for (Eigen::Index i = 0; i < Jg.rows(); ++i) s += std::conj(gv[i]) * Jg(i, j);
      n(j) = 2.0 * s.real();
      n(k + j) = -2.0 * s.imag();
    }
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(2 * k, 2 * k);
    const double nn = n.squaredNorm();
    if (nn > 0.0) P -= n * n.transpose() / nn;
    const Eigen::MatrixXd B = Jr * P;
    const double scale = std::max(B.colwise().norm().maxCoeff(), 1e-300);

    bool accepted = false;
    for (int tries = 0; tries < 12 && !accepted; ++tries) {
      Eigen::MatrixXd A(2 * p + 2 * k, 2 * k);
      A << B, std::sqrt(lambda) * scale * P;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * p + 2 * k);
      rhs.head(2 * p) = -r;
      const Eigen::VectorXd delta = P * A.colPivHouseholderQr().solve(rhs);
      Point trial = t;
      for (Eigen::Index j = 0; j < k; ++j) trial[j] += Complex(delta(j), delta(k + j));
      auto proj = project_to_band(g, trial, lo, hi);
      const double val = proj ? residual(*proj) : std::numeric_limits<double>::infinity();
      if (val < cur) {
        t = std::move(*proj);
        cur = val;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) break;
  }
  return t;
}

}  // namespace plurigreen
