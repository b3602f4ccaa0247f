#include <gtest/gtest.h>

#include <random>

#include "plurigreen/error.hpp"
#include "plurigreen/exponents.hpp"

using namespace plurigreen;

namespace {

const std::vector<std::string> kWZ{"w", "z"};
const std::vector<std::string> kT{"t"};

std::vector<MultiPoly> map_of(std::initializer_list<std::string_view> texts,
                              const std::vector<std::string>& names) {
  std::vector<MultiPoly> out;
  for (auto t : texts) out.push_back(parse_poly(t, names));
  return out;
}

Chart make_chart(std::vector<MultiPoly> components) {
  Chart c;
  c.param_dim = components.front().num_vars();
  c.components = std::move(components);
  c.domain = c.is_laurent() ? ParamDomain::Punctured : ParamDomain::Full;
  return c;
}

VarietySpec parabola() {
  return VarietySpec::make(2, {parse_poly("w - z^2", kWZ)}, {make_chart(map_of({"t^2", "t"}, kT))});
}

Schedule quick() { return Schedule::geometric(1e2, 1e5, 6, 32, 7); }

}  // namespace

TEST(ExactExponents, ParabolaGrowthIsThreeHalves) {
  const auto e = exact_exponents_chart(map_of({"z^2", "w z"}, kWZ), parabola().charts().front());
  ASSERT_TRUE(e.growth.has_value());
  EXPECT_EQ(*e.growth, Rational(3, 2));
  EXPECT_EQ(*e.loja, Rational(3, 2));
  EXPECT_EQ(to_string(*e.growth), "3/2");
}

TEST(ExactExponents, IdentityOnCuspIsOne) {
  const Chart c = make_chart(map_of({"t^2", "t^3"}, kT));
  EXPECT_EQ(*exact_exponents_chart(identity_map(2), c).growth, Rational(1));
}

TEST(ExactExponents, CircleCubicHasGradeOne) {
  const Chart c = make_chart(map_of({"0.5 t + 0.5 t^-1", "-0.5 I t + 0.5 I t^-1"}, kT));
  const auto e = exact_exponents_chart(map_of({"w^3 + w^2 z + w z^2 + z^3"}, kWZ), c);
  EXPECT_EQ(*e.growth, Rational(1));
  // (x + y)(x^2 + y^2) = (x + y) on the circle: degree 1 at both ends.
  EXPECT_EQ(*e.loja, Rational(1));
  EXPECT_TRUE(e.limit_exists);
}

TEST(ExactExponents, AffineSpaceGivesMaxDegree) {
  const auto v = VarietySpec::affine_space(2);
  const auto e = exact_exponents_variety(map_of({"w^2 z", "z^5 - w", "1"}, kWZ), v);
  EXPECT_EQ(*e.growth, Rational(5));
  EXPECT_FALSE(e.loja_available);
}

TEST(ExactExponents, ZeroAlongChartIsMinusInfinity) {
  const Chart c = make_chart(map_of({"t", "0"}, kT));
  EXPECT_FALSE(exact_exponents_chart(map_of({"z"}, kWZ), c).growth.has_value());
}

TEST(GrowthExponent, Parabola) {
  const auto e = growth_exponent(map_of({"z^2", "w z"}, kWZ), parabola(), quick());
  EXPECT_NEAR(e.value, 1.5, 0.05);
  EXPECT_FALSE(e.exact);
  EXPECT_EQ(e.per_radius.size(), 6u);
}

TEST(GrowthExponent, IdentityAndNegativeLojaMap) {
  const auto c2 = VarietySpec::affine_space(2);
  EXPECT_NEAR(growth_exponent(identity_map(2), c2, quick()).value, 1.0, 0.02);
  EXPECT_NEAR(growth_exponent(map_of({"w", "w z - 1"}, kWZ), c2, quick()).value, 2.0, 0.05);
}

TEST(GrowthExponent, ZeroMapIsMinusInfinity) {
  const auto e = growth_exponent(map_of({"0"}, kWZ), VarietySpec::affine_space(2), quick());
  EXPECT_TRUE(std::isinf(e.value));
  EXPECT_LT(e.value, 0.0);
}

TEST(LojasiewiczExponent, NegativeForWZMinusOne) {
  const auto e = lojasiewicz_exponent(map_of({"w", "w z - 1"}, kWZ), VarietySpec::affine_space(2),
                                      Schedule::standard());
  EXPECT_NEAR(e.value, -1.0, 0.15);
}

TEST(LojasiewiczExponent, CuspParametrization) {
  const auto c1 = VarietySpec::affine_space(1, kT);
  EXPECT_NEAR(lojasiewicz_exponent(map_of({"t^2", "t^3"}, kT), c1, quick()).value, 3.0, 0.05);
}

TEST(OrderOfMap, Examples) {
  const auto c1 = VarietySpec::affine_space(1, kT);
  const auto c2 = VarietySpec::affine_space(2);
  EXPECT_NEAR(order_of_map(map_of({"t^2", "t^3"}, kT), c1, quick()).value, 1.0 / 3.0, 0.02);
  EXPECT_NEAR(order_of_map(identity_map(2), c2, quick()).value, 1.0, 0.02);
  EXPECT_NEAR(order_of_map(map_of({"w^2", "z^2"}, kWZ), c2, quick()).value, 0.5, 0.02);
}

TEST(OrderOfMap, BoundedMapThrows) {
  const auto c2 = VarietySpec::affine_space(2);
  try {
    order_of_map(map_of({"1", "2"}, kWZ), c2, quick());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FBounded);
  }
}

TEST(Properness, Verdicts) {
  const auto c2 = VarietySpec::affine_space(2);
  EXPECT_EQ(properness_check(map_of({"w", "w z - 1"}, kWZ), c2, Schedule::standard()).verdict,
            Properness::NotProper);
  EXPECT_EQ(properness_check(map_of({"w^2", "z^2"}, kWZ), c2, quick()).verdict, Properness::Proper);
  EXPECT_NE(properness_check(map_of({"w", "w z"}, kWZ), c2, quick()).verdict, Properness::Proper);
}

TEST(Cone, Verdicts) {
  const auto c2 = VarietySpec::affine_space(2);
  const auto sep = cone_common_direction_check(map_of({"w^2", "z^2"}, kWZ), c2, quick());
  EXPECT_EQ(sep.verdict, ConeVerdict::Separated);
  EXPECT_TRUE(sep.exact_mode);
  EXPECT_EQ(cone_common_direction_check(map_of({"w z", "w z + w"}, kWZ), c2, quick()).verdict,
            ConeVerdict::CommonDirection);
  const auto cusp = VarietySpec::make(2, {parse_poly("w^3 - z^2", kWZ)},
                                      {make_chart(map_of({"t^2", "t^3"}, kT))});
  EXPECT_NE(cone_common_direction_check(map_of({"w", "z"}, kWZ), cusp, quick()).verdict,
            ConeVerdict::CommonDirection);
}

TEST(Exponents, ScalingCovariance) {
  const auto c2 = VarietySpec::affine_space(2);
  const auto f = map_of({"w^2 + z", "z^3 - w"}, kWZ);
  const std::vector<MultiPoly> twice{parse_poly("2 w", kWZ), parse_poly("2 z", kWZ)};
  const auto g = compose_map(f, twice);
  EXPECT_NEAR(growth_exponent(f, c2, quick()).value, growth_exponent(g, c2, quick()).value, 0.02);
  EXPECT_NEAR(lojasiewicz_exponent(f, c2, quick()).value,
              lojasiewicz_exponent(g, c2, quick()).value, 0.02);
  EXPECT_NEAR(order_of_map(f, c2, quick()).value, order_of_map(g, c2, quick()).value, 0.02);
}

TEST(Exponents, OrderingOnRandomMaps) {
  const auto c2 = VarietySpec::affine_space(2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> deg(1, 3);
    std::vector<MultiPoly> f;
    for (int j = 0; j < 2; ++j) {
      MultiPoly p(2);
      for (const auto& e : graded_exponents(2, deg(rng))) p.add_term(e, Complex(g(rng), g(rng)));
      f.push_back(p);
    }
    Schedule s = quick();
    s.seed = seed;
    const double rho = growth_exponent(f, c2, s).value;
    const double loja = lojasiewicz_exponent(f, c2, s).value;
    EXPECT_LE(loja, rho + 0.02) << "seed " << seed;
    EXPECT_GE(order_of_map(f, c2, s).value, -0.02) << "seed " << seed;
  }
}

TEST(NumericExponents, AgreeWithChartOracleOnCusp) {
  // On the cusp log||f|| approaches its slope only like r^(-1/3); the chart
  // computation gives the exact values to compare with.
  const auto cusp = VarietySpec::make(2, {parse_poly("w^3 - z^2", kWZ)},
                                      {make_chart(map_of({"t^2", "t^3"}, kT))});
  for (const auto& f :
       {map_of({"0.3 w - 1.7 z", "2 w + z"}, kWZ), map_of({"w^2 + 3 z", "w z - w"}, kWZ),
        map_of({"w^3 - 2 z^2 + z", "w"}, kWZ)}) {
    const ExactExponents e = exact_exponents_variety(f, cusp);
    ASSERT_TRUE(e.growth && e.loja);
    EXPECT_NEAR(growth_exponent(f, cusp, Schedule::standard()).value, to_double(*e.growth), 0.02);
    EXPECT_NEAR(lojasiewicz_exponent(f, cusp, Schedule::standard()).value, to_double(*e.loja),
                0.02);
  }
}
