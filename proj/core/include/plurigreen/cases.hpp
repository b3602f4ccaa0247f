#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plurigreen/exponents.hpp"
#include "plurigreen/extremal.hpp"
#include "plurigreen/transforms.hpp"
#include "plurigreen/variety.hpp"

namespace plurigreen {

/// A worked example: a variety, maps on it, compact sets, and closed forms
/// to check computations against.
struct CaseRecord {
  std::string name;
  std::string summary;
  VarietySpec variety;
  std::map<std::string, VarietySpec> related;  // domains and targets of maps other than `variety`
  std::map<std::string, std::vector<MultiPoly>> maps;
  std::map<std::string, CompactSetSpec> compacts;
  std::map<std::string, Evaluator> oracles;
  std::map<std::string, Rational> exact;
  std::string default_compact;
  std::string provenance;
};

/// cusp, cross, sphere_polyhedron, viviani, parabola_exponent, negative_loja,
/// circle_bw, in that order. Built once.
const std::vector<CaseRecord>& registry();

/// Throws InvalidSpec for unknown names.
const CaseRecord& find_case(std::string_view name);

/// Points of V from a grid string:
///   shell:rmin:rmax:count  count points with norms spread geometrically over [rmin, rmax]
///   box:lo:hi:count        chart parameters with real and imaginary parts uniform in [lo, hi]
std::vector<Point> grid_points(const VarietySpec& v, std::string_view grid, std::uint64_t seed);

/// Everything verify_sandwich needs for one case: the map f from `source`
/// to the target, K on the target, both Green estimates and test points.
struct SandwichSetup {
  std::vector<MultiPoly> f;
  VarietySpec source;
  CompactSetSpec target_compact;
  GreenEstimate green_target;
  GreenEstimate green_preimage;
  double k = 0.0;
  double l = 0.0;
  std::string constants_from;  // "exact" or "estimated"
  std::vector<Point> testpoints;
};

struct SandwichOptions {
  int degree = 16;
  int design_size = 2000;
  int testpoints = 200;
  std::uint64_t seed = 7;
  std::optional<double> k;  // defaults: L_inf(f) ...
  std::optional<double> l;  // ... and rho(f), exact when available
};

/// Supported for cusp, cross and sphere_polyhedron; Unsupported otherwise.
SandwichSetup sandwich_setup(const CaseRecord& c, const SandwichOptions& options = {});

/// Green function of a case's compact set built by transport along its
/// maps, with the equality-mode decision taken at each step.
struct PipelineGreen {
  GreenEstimate estimate;
  std::vector<std::pair<std::string, EqualityMode>> steps;  // (map name, decision)
};

/// cusp: push-forward of log+|xi| along xi -> (xi^2, xi^3).
/// cross, sphere_polyhedron: pull-back of the disc / bidisc Green function.
/// viviani: push-forward of V_[0,2] along f, then pull-back along g.
/// Throws Unsupported for other cases and InvalidSpec when a step is not in
/// equality mode.
PipelineGreen functional_equation_green(const CaseRecord& c);

/// V_[0,2](x) = log|x - 1 + sqrt(x^2 - 2x)|, branch taken so the value is >= 0.
double interval_green_0_2(Complex x);

}  // namespace plurigreen
