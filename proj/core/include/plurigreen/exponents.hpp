#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plurigreen/polynomial.hpp"
#include "plurigreen/variety.hpp"

namespace plurigreen {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& q);
double to_double(const Rational& q);

enum class ExponentKind { Growth, Lojasiewicz, Order };
std::string exponent_kind_name(ExponentKind k);

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

/// Radii, points per radius and seed for the escape samplers, plus the
/// multistart settings of the local refinement.
struct Schedule {
  std::vector<double> radii;
  int per_radius = 64;
  std::uint64_t seed = 7;
  int starts = 16;
  int refine_steps = 50;

  /// `count` radii spaced geometrically from lo to hi.
  static Schedule geometric(double lo, double hi, int count, int per_radius = 64,
                            std::uint64_t seed = 7);
  /// 8 radii from 1e2 to 1e6, 64 points each, seed 7.
  static Schedule standard();
};

struct ExponentEstimate {
  ExponentKind kind = ExponentKind::Growth;
  double value = 0.0;  // may be -inf
  bool exact = false;
  std::optional<Rational> exact_value;
  std::vector<std::pair<double, double>> per_radius;  // (radius, statistic)
  RegressionFit fit;
};

/// Exponents along the ends of charts. nullopt stands for -inf (f vanishes
/// identically along the chart).
struct ExactExponents {
  std::optional<Rational> growth;
  std::optional<Rational> loja;  // unset when no end-wise formula applies
  bool loja_available = true;
  bool limit_exists = false;
};

/// Growth and end-wise Lojasiewicz exponent of f along one chart. For a
/// one-parameter chart each end (infinity, and the puncture for Laurent
/// charts) contributes max_j deg_end(f_j o gamma) / deg_end(gamma); growth is
/// the max over ends and loja the min. Charts with several parameters are
/// accepted only when linear with injective linear part; then growth is
/// max_j deg f_j and no end-wise loja exists.
ExactExponents exact_exponents_chart(const std::vector<MultiPoly>& f, const Chart& chart);

/// Combines exact_exponents_chart over all charts of V.
ExactExponents exact_exponents_variety(const std::vector<MultiPoly>& f, const VarietySpec& v);

/// limsup of log||f|| / log||z|| by per-radius maxima over escape samples.
ExponentEstimate growth_exponent(const std::vector<MultiPoly>& f, const VarietySpec& v,
                                 const Schedule& schedule);

/// liminf of log||f|| / log||z|| by per-radius minima, each refined by
/// multistart least-squares descent of ||f|| on the radius shell.
ExponentEstimate lojasiewicz_exponent(const std::vector<MultiPoly>& f, const VarietySpec& v,
                                      const Schedule& schedule);

/// limsup of log||z|| / log||f(z)|| over points graded by ||f(z)|| bands.
/// Throws FBounded when ||f|| does not grow along the schedule.
ExponentEstimate order_of_map(const std::vector<MultiPoly>& f, const VarietySpec& v,
                              const Schedule& schedule);

enum class Properness { Proper, NotProper, Inconclusive };
std::string properness_name(Properness p);

struct PropernessReport {
  Properness verdict = Properness::Inconclusive;
  ExponentEstimate loja;
};

PropernessReport properness_check(const std::vector<MultiPoly>& f, const VarietySpec& v,
                                  const Schedule& schedule);

enum class ConeVerdict { Separated, CommonDirection, Inconclusive };
std::string cone_verdict_name(ConeVerdict c);

struct ConeReport {
  ConeVerdict verdict = ConeVerdict::Inconclusive;
  bool exact_mode = false;
  double min_value = 0.0;            // smallest max_j |f^_j| found on the unit sphere (exact mode)
  std::vector<int> far_zero_counts;  // per component (numeric mode)
};

/// On C^N: common zeros of the top homogeneous parts on the unit sphere,
/// searched by sampling and local descent. A hypersurface {h = 0} gets the
/// same search with h^ added to the system. On other varieties: far zeros of
/// each component along the charts are compared by projective direction
/// (heuristic).
ConeReport cone_common_direction_check(const std::vector<MultiPoly>& f, const VarietySpec& v,
                                       const Schedule& schedule);

}  // namespace plurigreen
