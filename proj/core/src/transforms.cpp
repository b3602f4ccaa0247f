#include "plurigreen/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plurigreen/error.hpp"
#include "plurigreen/roots.hpp"

namespace plurigreen {

namespace {

double residual(const std::vector<MultiPoly>& f, const Point& z, const Point& w) {
  Point d = eval_map(f, z);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= w[i];
  return norm(d) / (1.0 + norm(w));
}

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

// Exponent span of p - c for a univariate Laurent polynomial p and a
// constant c, so exponent 0 always counts; 0 when p is constant.
int span_of(const MultiPoly& p) {
  int lo = 0;
  int hi = 0;
  for (const auto& [e, c] : p.terms()) {
    lo = std::min(lo, e[0]);
    hi = std::max(hi, e[0]);
  }
  return hi - lo;
}

}  // namespace

FiberSolver FiberSolver::chart_univariate(VarietySpec source, double tolerance) {
  FiberSolver s;
  s.strategy = FiberStrategy::ChartUnivariate;
  s.tolerance = tolerance;
  s.source = std::make_shared<const VarietySpec>(std::move(source));
  return s;
}

FiberSolver FiberSolver::explicit_branches(VarietySpec source,
                                           std::function<std::vector<Point>(const Point&)> branches,
                                           double tolerance) {
  FiberSolver s;
  s.strategy = FiberStrategy::Explicit;
  s.tolerance = tolerance;
  s.source = std::make_shared<const VarietySpec>(std::move(source));
  s.branches = std::move(branches);
  return s;
}

Fiber solve_fiber(const std::vector<MultiPoly>& f, const FiberSolver& solver, const Point& w) {
  if (!solver.source) throw Error(ErrorCode::InvalidSpec, "fiber solver has no source variety");
  const VarietySpec& src = *solver.source;
  if (w.size() != f.size())
    throw Error(ErrorCode::DimensionMismatch, "target point has wrong dimension");

  std::vector<Point> candidates;
  if (solver.strategy == FiberStrategy::Explicit) {
    if (!solver.branches)
      throw Error(ErrorCode::InvalidSpec, "explicit fiber solver without branches");
    candidates = solver.branches(w);
  } else {
    for (const auto& ch : src.charts()) {
      if (ch.param_dim != 1) {
        throw Error(ErrorCode::Unsupported, "chart fiber solving needs one-parameter charts");
      }
      const auto h = compose_map(f, ch.components);
      int pick = -1;
      for (std::size_t j = 0; j < h.size(); ++j) {
        const int s = span_of(h[j]);
        if (s > 0 && (pick < 0 || s < span_of(h[pick]))) pick = static_cast<int>(j);
      }
      if (pick < 0) continue;  // f is constant along this chart
      MultiPoly eq = h[pick];
      eq -= MultiPoly::constant(1, w[pick], eq.laurent());
      if (eq.is_zero()) continue;
      for (const Complex& t : laurent_roots(eq)) {
        if (ch.domain == ParamDomain::Punctured && t == Complex(0.0)) continue;
        candidates.push_back(ch.eval(std::vector<Complex>{t}));
      }
    }
  }

  Fiber fiber;
  fiber.best_residual = std::numeric_limits<double>::infinity();
  for (auto& z : candidates) {
    const double res = residual(f, z, w);
    fiber.best_residual = std::min(fiber.best_residual, res);
    if (!(res <= solver.tolerance)) continue;
    if (!src.implicit().empty() && !membership(src, z, 1e-6)) continue;
    const bool dup = std::any_of(fiber.points.begin(), fiber.points.end(), [&](const Point& q) {
      return distance(q, z) <= 1e-9 * (1.0 + norm(z));
    });
    if (!dup) fiber.points.push_back(std::move(z));
  }
  return fiber;
}

double pushforward_psh(const Evaluator& u, const std::vector<MultiPoly>& f,
                       const FiberSolver& fibers, const Point& w) {
  const Fiber fiber = solve_fiber(f, fibers, w);
  if (fiber.points.empty()) {
    throw Error(ErrorCode::EmptyFiber,
                "empty fiber (best relative residual " + std::to_string(fiber.best_residual) + ")");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& z : fiber.points) best = std::max(best, u(z));
  return best;
}

TransformReport verify_sandwich(const std::vector<MultiPoly>& f, const VarietySpec& source,
                                const CompactSetSpec& target_compact,
                                const GreenEstimate& green_target,
                                const GreenEstimate& green_preimage, double k, double l,
                                const std::vector<Point>& testpoints) {
  for (const auto& fj : f) {
    if (fj.num_vars() != source.ambient_dim()) {
      throw Error(ErrorCode::DimensionMismatch, "map does not act on the source variety");
    }
  }
  if (green_preimage.design) {
    for (const auto& x : green_preimage.design->points) {
      const auto inside = compact_contains(target_compact, eval_map(f, x), 1e-6);
      if (inside && !*inside) {
        throw Error(ErrorCode::InconsistentDesigns, "f maps a preimage design point outside K");
      }
    }
  }
  TransformReport rep;
  rep.k = k;
  rep.l = l;
  const double kl = std::max(k, l);
  rep.tau = 0.05 * kl + green_target.slack + kl * green_preimage.slack;
  rep.worst_lower_margin = -std::numeric_limits<double>::infinity();
  rep.worst_upper_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < testpoints.size(); ++i) {
    SandwichRow row;
    row.z = testpoints[i];
    const double pre = green_preimage(row.z);
    row.lower = k * pre;
    row.upper = l * pre;
    row.mid = green_target(eval_map(f, row.z));
    row.lower_margin = row.lower - row.mid;
    row.upper_margin = row.mid - row.upper;
    row.violated = row.lower_margin > rep.tau || row.upper_margin > rep.tau;
    rep.worst_lower_margin = std::max(rep.worst_lower_margin, row.lower_margin);
    rep.worst_upper_margin = std::max(rep.worst_upper_margin, row.upper_margin);
    if (row.violated) rep.violations.push_back(static_cast<int>(i));
    rep.rows.push_back(std::move(row));
  }
  rep.holds = rep.violations.empty();
  return rep;
}

EqualityMode equality_mode(const std::vector<MultiPoly>& f, const VarietySpec& v,
                           const Schedule& schedule) {
  EqualityMode out;
  if (!v.charts().empty()) {
    try {
      const ExactExponents e = exact_exponents_variety(f, v);
      if (e.loja_available && e.growth && e.loja) {
        out.route = "chart";
        out.growth = to_double(*e.growth);
        out.loja = to_double(*e.loja);
        out.flag = *e.growth == *e.loja;
        if (out.flag) out.exact_d = e.growth;
        out.d = out.growth;
        return out;
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::Unsupported) throw;
    }
  }
  if (v.is_affine_space() || v.implicit().size() == 1) {
    std::optional<int> deg;
    bool equal = true;
    for (const auto& fj : f) {
      const auto d = fj.total_degree();
      if (!d) continue;
      if (deg && *deg != *d) equal = false;
      deg = deg ? std::max(*deg, *d) : *d;
    }
    if (equal && deg && *deg > 0) {
      const ConeReport cone = cone_common_direction_check(f, v, schedule);
      if (cone.verdict == ConeVerdict::Separated) {
        out.route = "cone";
        out.flag = true;
        out.exact_d = Rational(*deg);
        out.d = out.growth = out.loja = *deg;
        return out;
      }
    }
  }
  out.route = "numeric";
  out.growth = growth_exponent(f, v, schedule).value;
  out.loja = lojasiewicz_exponent(f, v, schedule).value;
  out.d = out.growth;
  out.flag = std::isfinite(out.growth) && std::isfinite(out.loja) &&
             std::abs(out.growth - out.loja) <= 0.02;
  return out;
}

Evaluator green_from_functional_equation(const std::vector<MultiPoly>& f, double d,
                                         Evaluator green_target) {
  if (!(d > 0.0)) throw Error(ErrorCode::InvalidSpec, "functional equation needs d > 0");
  return [f, d, g = std::move(green_target)](const Point& z) { return g(eval_map(f, z)) / d; };
}

Evaluator green_on_image(const std::vector<MultiPoly>& f, double d, Evaluator green_source,
                         FiberSolver fibers) {
  if (!(d > 0.0)) throw Error(ErrorCode::InvalidSpec, "functional equation needs d > 0");
  return [f, d, g = std::move(green_source), fibers = std::move(fibers)](const Point& w) {
    return d * pushforward_psh(g, f, fibers, w);
  };
}

BallBounds ball_green_bounds(const VarietySpec& v, const Point& a, double rho) {
  if (!v.sadullaev()) throw Error(ErrorCode::Unsupported, "ball bounds need a Sadullaev split");
  const SadullaevSplit& s = *v.sadullaev();
  if (s.c != 1.0) throw Error(ErrorCode::Unsupported, "ball bounds need a linear split (c = 1)");
  if (static_cast<int>(a.size()) != v.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "ball center has wrong dimension");
  }
  if (!v.implicit().empty() && !membership(v, a, 1e-9)) {
    throw Error(ErrorCode::InvalidSpec, "ball center is not on the variety");
  }
  if (!(rho > s.C))
    throw Error(ErrorCode::BallTooSmall, "ball radius must exceed the split constant C");
  BallBounds b;
  b.r = (rho - s.C) / (1.0 + s.C);
  auto log_plus = [a](double scale) {
    return [a, scale](const Point& z) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) d2 += std::norm(z[i] - a[i]);
      return std::max(0.0, std::log(std::sqrt(d2) / scale));
    };
  };
  b.lower = log_plus(rho);
  b.upper = log_plus(b.r);
  return b;
}

}  // namespace plurigreen
