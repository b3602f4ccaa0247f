#include <gtest/gtest.h>

#include <numbers>

#include "plurigreen/error.hpp"
#include "plurigreen/variety.hpp"

using namespace plurigreen;

namespace {

const std::vector<std::string> kWZ{"w", "z"};
const std::vector<std::string> kT{"t"};
const Complex I(0.0, 1.0);

Chart make_chart(std::vector<MultiPoly> components) {
  Chart c;
  c.param_dim = components.front().num_vars();
  c.components = std::move(components);
  c.domain = c.is_laurent() ? ParamDomain::Punctured : ParamDomain::Full;
  return c;
}

VarietySpec cusp() {
  return VarietySpec::make(2, {parse_poly("w^3 - z^2", kWZ)},
                           {make_chart({parse_poly("t^2", kT), parse_poly("t^3", kT)})});
}

VarietySpec circle() {
  return VarietySpec::make(
      2, {parse_poly("w^2 + z^2 - 1", kWZ)},
      {make_chart({parse_poly("0.5 t + 0.5 t^-1", kT), parse_poly("-0.5 I t + 0.5 I t^-1", kT)})});
}

VarietySpec viviani() {
  const std::vector<std::string> xyz{"x", "y", "z"};
  return VarietySpec::make(
      3, {parse_poly("z^2 - 4 + 2 x", xyz), parse_poly("y^2 - 2 x + x^2", xyz)}, {});
}

}  // namespace

TEST(Variety, Membership) {
  const VarietySpec v = cusp();
  EXPECT_TRUE(membership(v, Point{1.0, 1.0}, 1e-9));
  EXPECT_FALSE(membership(v, Point{1.0, 1.1}, 1e-9));
  EXPECT_TRUE(membership(viviani(), Point{2.0, 0.0, 0.0}, 1e-9));
  EXPECT_FALSE(membership(viviani(), Point{1.0, 0.0, 0.0}, 1e-9));
}

TEST(Variety, MembershipScalesWithNorm) {
  // A far point of the cusp, computed in floating point.
  const Complex t(1e4, 3e3);
  const Point z{t * t, t * t * t};
  EXPECT_TRUE(membership(cusp(), z, 1e-9));
}

TEST(Variety, ChartOnlyMembershipUnsupported) {
  const auto v =
      VarietySpec::make(2, {}, {make_chart({parse_poly("t^2", kT), parse_poly("t^3", kT)})});
  try {
    membership(v, Point{1.0, 1.0}, 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
}

TEST(Variety, InconsistentChartRejected) {
  EXPECT_THROW(VarietySpec::make(2, {parse_poly("w^3 - z^2", kWZ)},
                                 {make_chart({parse_poly("t^2", kT), parse_poly("t^2", kT)})}),
               Error);
  EXPECT_THROW(VarietySpec::make(2, {}, {}), Error);
  EXPECT_THROW(VarietySpec::make(2, {}, {make_chart({parse_poly("t", kT)})}), Error);
}

TEST(Variety, ChartDegrees) {
  const Chart c = circle().charts().front();
  EXPECT_EQ(c.positive_degree(), 1);
  EXPECT_EQ(c.pole_degree(), 1);
  EXPECT_TRUE(c.is_laurent());
  EXPECT_EQ(c.domain, ParamDomain::Punctured);
}

TEST(Variety, SampleBallOnCusp) {
  const VarietySpec v = cusp();
  const double r = std::sqrt(2.0);
  const CompactSetSpec k = BallSet{{0.0, 0.0}, r};
  const SampleDesign d = sample_compact(v, k, 100, 42);
  ASSERT_EQ(d.points.size(), 100u);
  for (const auto& z : d.points) {
    // Independent re-check of both defining conditions.
    EXPECT_LE(std::abs(z[0] * z[0] * z[0] - z[1] * z[1]), 1e-9 * std::pow(1.0 + norm(z), 3));
    EXPECT_LE(std::sqrt(std::norm(z[0]) + std::norm(z[1])), r + 1e-9);
  }
}

TEST(Variety, SamplingIsDeterministic) {
  const VarietySpec v = cusp();
  const CompactSetSpec k =
      PolyhedronSet{{{parse_poly("w", kWZ), 1.0}, {parse_poly("z", kWZ), 1.0}}};
  const SampleDesign a = sample_compact(v, k, 50, 9);
  const SampleDesign b = sample_compact(v, k, 50, 9);
  const SampleDesign c = sample_compact(v, k, 50, 10);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, c.points);
}

TEST(Variety, PointSetPassesThrough) {
  const auto v = VarietySpec::affine_space(1);
  PointSet roots;
  for (int j = 0; j < 64; ++j)
    roots.points.push_back({std::polar(1.0, 2.0 * std::numbers::pi * j / 64)});
  const SampleDesign d = sample_compact(v, roots, 64, 1);
  EXPECT_EQ(d.points, roots.points);
}

TEST(Variety, ParamRegionOnViviani) {
  const std::vector<std::string> xyz{"x", "y", "z"};
  const auto v = VarietySpec::make(
      3, {parse_poly("x^2 + y^2 + z^2 - 4", xyz), parse_poly("x^2 + y^2 - 2 x", xyz)},
      {make_chart({parse_poly("1 + 0.5 t^2 + 0.5 t^-2", kT),
                   parse_poly("-0.5 I t^2 + 0.5 I t^-2", kT), parse_poly("I t - I t^-1", kT)})});
  const SampleDesign d = sample_compact(v, ParamRegion{0, ParamAnnulus{1.0, 1.0}}, 200, 3);
  ASSERT_EQ(d.points.size(), 200u);
  for (const auto& z : d.points) {
    const Complex x = z[0], y = z[1], w = z[2];
    EXPECT_LT(std::abs(x * x + y * y + w * w - 4.0), 1e-9);
    EXPECT_LT(std::abs(x * x + y * y - 2.0 * x), 1e-9);
    // The window is real with x in [0, 2].
    EXPECT_LT(std::abs(x.imag()) + std::abs(y.imag()) + std::abs(w.imag()), 1e-9);
    EXPECT_GE(x.real(), -1e-9);
    EXPECT_LE(x.real(), 2.0 + 1e-9);
  }
}

TEST(Variety, EscapeBandsOnCusp) {
  const std::vector<double> radii{1e6};
  const auto shells = sample_escape(cusp(), radii, 20, 4);
  ASSERT_EQ(shells.size(), 1u);
  ASSERT_EQ(shells[0].points.size(), 20u);
  for (std::size_t i = 0; i < shells[0].points.size(); ++i) {
    const double n = norm(shells[0].points[i]);
    EXPECT_GE(n, 1e6 * (1 - 1e-12));
    EXPECT_LE(n, 1.05e6 * (1 + 1e-12));
    EXPECT_NEAR(std::abs(shells[0].params[i][0]), 100.0, 2.0);
  }
}

TEST(Variety, EscapeOnAffineSpace) {
  const std::vector<double> radii{10.0, 100.0};
  const auto shells = sample_escape(VarietySpec::affine_space(3), radii, 16, 1);
  for (const auto& s : shells) {
    for (const auto& z : s.points) {
      EXPECT_GE(norm(z), s.radius * (1 - 1e-12));
      EXPECT_LE(norm(z), 1.05 * s.radius * (1 + 1e-12));
    }
  }
}

TEST(Variety, EscapeUsesBothLaurentEnds) {
  const std::vector<double> radii{1e3};
  const auto shells = sample_escape(circle(), radii, 40, 2);
  bool big = false, small = false;
  for (const auto& t : shells[0].params) {
    const double a = std::abs(t[0]);
    // ||gamma(t)|| ~ |t|/sqrt2 at infinity and ~ 1/(sqrt2 |t|) near 0.
    if (a > 1e3) big = true;
    if (a < 1e-3) small = true;
  }
  EXPECT_TRUE(big);
  EXPECT_TRUE(small);
  for (const auto& z : shells[0].points) {
    EXPECT_LT(std::abs(z[0] * z[0] + z[1] * z[1] - 1.0), 1e-9 * std::pow(1.0 + norm(z), 2));
  }
}

TEST(Variety, SadullaevSplitValidated) {
  // Parabola w = z^2 with X = {w} is unbounded over Y = {z} with c = 2.
  SadullaevSplit split;
  split.x_indices = {0};
  split.y_indices = {1};
  split.C = 1.0;
  split.c = 2.0;
  const auto chart = make_chart({parse_poly("t^2", kT), parse_poly("t", kT)});
  EXPECT_NO_THROW(VarietySpec::make(2, {parse_poly("w - z^2", kWZ)}, {chart}, split));
  split.c = 1.0;
  EXPECT_THROW(VarietySpec::make(2, {parse_poly("w - z^2", kWZ)}, {chart}, split), Error);
}

TEST(Variety, SplitSeedIsStable) {
  EXPECT_EQ(split_seed(7, 3), split_seed(7, 3));
  EXPECT_NE(split_seed(7, 3), split_seed(7, 4));
  EXPECT_NE(split_seed(7, 3), split_seed(8, 3));
}
