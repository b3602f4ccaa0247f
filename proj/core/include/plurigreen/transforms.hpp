#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plurigreen/exponents.hpp"
#include "plurigreen/extremal.hpp"
#include "plurigreen/variety.hpp"

namespace plurigreen {

enum class FiberStrategy { ChartUnivariate, Explicit };

/// Resolves fibers f^{-1}(w) on a source variety, either by solving one
/// component of f o gamma = w along each one-parameter chart (companion
/// matrix) and checking the rest, or from user-supplied inverse branches.
struct FiberSolver {
  FiberStrategy strategy = FiberStrategy::ChartUnivariate;
  double tolerance = 1e-8;
  std::shared_ptr<const VarietySpec> source;
  std::function<std::vector<Point>(const Point&)> branches;

  static FiberSolver chart_univariate(VarietySpec source, double tolerance = 1e-8);
  static FiberSolver explicit_branches(VarietySpec source,
                                       std::function<std::vector<Point>(const Point&)> branches,
                                       double tolerance = 1e-8);
};

struct Fiber {
  std::vector<Point> points;
  double best_residual = 0.0;  // smallest relative residual seen, kept or not
};

/// Fiber points z with ||f(z) - w|| <= tolerance (1 + ||w||), deduplicated.
Fiber solve_fiber(const std::vector<MultiPoly>& f, const FiberSolver& solver, const Point& w);

/// max of u over f^{-1}(w). Throws EmptyFiber, reporting the best residual.
double pushforward_psh(const Evaluator& u, const std::vector<MultiPoly>& f,
                       const FiberSolver& fibers, const Point& w);

struct SandwichRow {
  Point z;
  double lower = 0.0;         // k * V_{f^{-1}K}(z)
  double mid = 0.0;           // V_K(f(z))
  double upper = 0.0;         // l * V_{f^{-1}K}(z)
  double lower_margin = 0.0;  // lower - mid, violation when > tau
  double upper_margin = 0.0;  // mid - upper, violation when > tau
  bool violated = false;
};

struct TransformReport {
  std::vector<SandwichRow> rows;
  std::vector<int> violations;
  double k = 0.0;
  double l = 0.0;
  double tau = 0.0;
  double worst_lower_margin = 0.0;
  double worst_upper_margin = 0.0;
  bool holds = true;
};

/// Checks k V_{f^{-1}K} <= V_K o f <= l V_{f^{-1}K} at the test points with
/// tau = 0.05 max(k, l) + slack(target) + max(k, l) slack(preimage). When
/// the preimage estimate carries a design, f must map it into K.
TransformReport verify_sandwich(const std::vector<MultiPoly>& f, const VarietySpec& source,
                                const CompactSetSpec& target_compact,
                                const GreenEstimate& green_target,
                                const GreenEstimate& green_preimage, double k, double l,
                                const std::vector<Point>& testpoints);

struct EqualityMode {
  bool flag = false;
  std::optional<Rational> exact_d;
  double d = 0.0;
  double growth = 0.0;
  double loja = 0.0;
  std::string route;  // "chart", "cone" or "numeric"
};

/// Whether L(f|V) = rho(f, V): exactly along one-parameter charts, through
/// the cone test on C^N, and otherwise from numeric estimates (|gap| <= 0.02).
EqualityMode equality_mode(const std::vector<MultiPoly>& f, const VarietySpec& v,
                           const Schedule& schedule = Schedule::standard());

/// z -> green_target(f(z)) / d.
Evaluator green_from_functional_equation(const std::vector<MultiPoly>& f, double d,
                                         Evaluator green_target);

/// w -> d * max over f^{-1}(w) of green_source: the same identity read in
/// the other direction, transporting a Green function to the image.
Evaluator green_on_image(const std::vector<MultiPoly>& f, double d, Evaluator green_source,
                         FiberSolver fibers);

struct BallBounds {
  Evaluator lower;
  Evaluator upper;
  double r = 0.0;
};

/// log+(||z - a|| / rho) <= V_{B(a, rho) ∩ V} <= log+(||z - a|| / r) with
/// r = (rho - C) / (1 + C), for a linear Sadullaev split (c = 1).
BallBounds ball_green_bounds(const VarietySpec& v, const Point& a, double rho);

}  // namespace plurigreen
