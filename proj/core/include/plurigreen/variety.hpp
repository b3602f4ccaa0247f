#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "plurigreen/polynomial.hpp"

namespace plurigreen {

enum class ParamDomain { Full, Punctured };

/// Polynomial (or Laurent) parametrization t -> (gamma_1(t), ..., gamma_N(t)).
struct Chart {
  int param_dim = 1;
  std::vector<MultiPoly> components;
  ParamDomain domain = ParamDomain::Full;

  Point eval(std::span<const Complex> t) const;
  /// d+ : max positive-part degree over components.
  int positive_degree() const;
  /// d- : max pole degree over components.
  int pole_degree() const;
  bool is_laurent() const;
};

/// Coordinates z' = U z split into complementary index sets X and Y with
/// ||z'_X|| <= C (1 + ||z'_Y||^c) on the variety.
struct SadullaevSplit {
  Eigen::MatrixXcd unitary;  // empty means identity
  std::vector<int> x_indices;
  std::vector<int> y_indices;
  double C = 0.0;
  double c = 1.0;

  /// Returns (||z'_X||, ||z'_Y||).
  std::pair<double, double> split_norms(std::span<const Complex> z) const;
};

/// Algebraic set in C^N, described implicitly, by charts, or both.
class VarietySpec {
 public:
  /// Validates the description: at least one of implicit/charts, chart
  /// component counts, chart-implicit consistency on 1000 random parameter
  /// draws, and the Sadullaev bound on 1000 chart samples.
  static VarietySpec make(int ambient_dim, std::vector<MultiPoly> implicit,
                          std::vector<Chart> charts,
                          std::optional<SadullaevSplit> sadullaev = std::nullopt,
                          bool irreducible = false, bool locally_irreducible = false,
                          std::vector<std::string> names = {});

  /// C^N with the identity chart and the trivial split (C = 0).
  static VarietySpec affine_space(int n, std::vector<std::string> names = {});

  int ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<MultiPoly>& implicit() const noexcept { return implicit_; }
  const std::vector<Chart>& charts() const noexcept { return charts_; }
  const std::optional<SadullaevSplit>& sadullaev() const noexcept { return sadullaev_; }
  bool irreducible_asserted() const noexcept { return irreducible_; }
  bool locally_irreducible_asserted() const noexcept { return locally_irreducible_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  /// True when this is C^N described by its identity chart only.
  bool is_affine_space() const;

 private:
  VarietySpec() = default;

  int ambient_dim_ = 0;
  std::vector<MultiPoly> implicit_;
  std::vector<Chart> charts_;
  std::optional<SadullaevSplit> sadullaev_;
  bool irreducible_ = false;
  bool locally_irreducible_ = false;
  std::vector<std::string> names_;
};

// Compact subsets K of a variety.

struct BallSet {
  Point center;
  double radius = 1.0;
};

/// A ∩ {|p_i| <= bound_i}.
struct PolyhedronSet {
  std::vector<std::pair<MultiPoly, double>> constraints;
};

struct ParamBall {
  Point center;
  double radius = 1.0;
};

/// Parameters with inner <= |t_j| <= outer in every coordinate; inner ==
/// outer gives a torus (a circle for one parameter).
struct ParamAnnulus {
  double inner = 1.0;
  double outer = 1.0;
};

struct ParamRegion {
  int chart = 0;
  std::variant<ParamBall, ParamAnnulus> shape;
};

struct PointSet {
  std::vector<Point> points;
};

using CompactSetSpec = std::variant<BallSet, PolyhedronSet, ParamRegion, PointSet>;

std::string compact_kind_name(const CompactSetSpec& k);

/// Throws InvalidSpec when the compact set does not fit the variety.
void validate_compact(const VarietySpec& v, const CompactSetSpec& k);

/// Membership of z in K by K's defining inequalities. PARAM_REGION sets have
/// no ambient description, so nullopt is returned for them.
std::optional<bool> compact_contains(const CompactSetSpec& k, std::span<const Complex> z,
                                     double tol = 1e-9);

struct SampleDesign {
  std::vector<Point> points;
  CompactSetSpec origin;
  std::uint64_t seed = 0;

  int ambient_dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
};

/// max_i |p_i(z)| <= tol (1 + ||z||)^{deg p_i}. Throws Unsupported for
/// chart-only varieties.
bool membership(const VarietySpec& v, std::span<const Complex> z, double tol);

/// Draws `count` points of V inside K. BALL and POLYHEDRON sets are sampled
/// by pushing uniform parameter proposals through every chart and rejecting
/// points outside K; the parameter region is sized by a log-radial pilot run.
/// The sampling measure is the pushforward of uniform parameter measure and
/// carries no canonical meaning.
SampleDesign sample_compact(const VarietySpec& v, const CompactSetSpec& k, int count,
                            std::uint64_t seed);

struct EscapeShell {
  double radius = 0.0;
  std::vector<Point> points;
  std::vector<Point> params;  // chart parameters, parallel to points
  std::vector<int> chart_index;
};

/// For each radius r, `per_radius` points of V with ||z|| in [r, 1.05 r],
/// found by scaling chart parameters along random rays and bisecting on the
/// ambient norm. Laurent charts contribute points from both ends.
std::vector<EscapeShell> sample_escape(const VarietySpec& v, std::span<const double> radii,
                                       int per_radius, std::uint64_t seed);

/// Deterministic per-index seed derivation (splitmix64).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform random unit vector in C^k.
template <class Rng>
Point random_unit_vector(int k, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Point u(k);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& c : u) {
      c = Complex(gauss(rng), gauss(rng));
      n2 += std::norm(c);
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : u) c *= inv;
  return u;
}

}  // namespace plurigreen
