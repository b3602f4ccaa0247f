#include <gtest/gtest.h>

#include <random>

#include "plurigreen/error.hpp"
#include "plurigreen/transforms.hpp"

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

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double bidisc(const Point& z) {
  double v = 0.0;
  for (const auto& c : z) v = std::max(v, log_plus(std::abs(c)));
  return v;
}

std::vector<Point> random_points(int n, int count, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(std::log(lo), std::log(hi));
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) {
    Point u = random_unit_vector(n, rng);
    const double s = std::exp(r(rng));
    for (auto& c : u) c *= s;
    out.push_back(u);
  }
  return out;
}

}  // namespace

TEST(Fibers, SquareRoots) {
  const auto solver = FiberSolver::chart_univariate(VarietySpec::affine_space(1, kT));
  const Fiber fib = solve_fiber(map_of({"t^2"}, kT), solver, Point{Complex(-4.0, 0.0)});
  ASSERT_EQ(fib.points.size(), 2u);
  for (const auto& z : fib.points) EXPECT_NEAR(std::abs(z[0] * z[0] + 4.0), 0.0, 1e-10);
}

TEST(Fibers, CuspFiberIsOnePoint) {
  const auto cusp = VarietySpec::affine_space(1, kT);
  const auto solver = FiberSolver::chart_univariate(cusp);
  const Complex xi(1.3, -0.7);
  const Fiber fib = solve_fiber(map_of({"t^2", "t^3"}, kT), solver, Point{xi * xi, xi * xi * xi});
  ASSERT_EQ(fib.points.size(), 1u);
  EXPECT_LT(std::abs(fib.points[0][0] - xi), 1e-10);
}

TEST(Fibers, PushforwardOfLogPlus) {
  // max of log+|t| over the square roots of w is (1/2) log+|w|.
  const auto solver = FiberSolver::chart_univariate(VarietySpec::affine_space(1, kT));
  const Evaluator u = [](const Point& z) { return log_plus(std::abs(z[0])); };
  for (Complex w : {Complex(9.0), Complex(0.2, 0.1), Complex(-30.0, 40.0)}) {
    EXPECT_NEAR(pushforward_psh(u, map_of({"t^2"}, kT), solver, Point{w}),
                0.5 * log_plus(std::abs(w)), 1e-12);
  }
}

TEST(Fibers, EmptyFiberReportsResidual) {
  const auto solver = FiberSolver::chart_univariate(VarietySpec::affine_space(1, kT));
  const Evaluator u = [](const Point&) { return 0.0; };
  try {
    pushforward_psh(u, map_of({"t", "t"}, kT), solver, Point{1.0, 2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyFiber);
  }
}

TEST(Fibers, ExplicitBranches) {
  const auto solver =
      FiberSolver::explicit_branches(VarietySpec::affine_space(1, kT), [](const Point& w) {
        const Complex r = std::sqrt(w[0]);
        return std::vector<Point>{{r}, {-r}, {r + 1.0}};  // the last one is wrong
      });
  const Fiber fib = solve_fiber(map_of({"t^2"}, kT), solver, Point{Complex(2.0, 1.0)});
  EXPECT_EQ(fib.points.size(), 2u);
}

TEST(Sandwich, SquareMapOnDisc) {
  const auto c1 = VarietySpec::affine_space(1, kT);
  const GreenEstimate target =
      closed_form_estimate([](const Point& w) { return log_plus(std::abs(w[0])); });
  const GreenEstimate pre =
      closed_form_estimate([](const Point& z) { return log_plus(std::abs(z[0])); });
  const CompactSetSpec disc = BallSet{{0.0}, 1.0};
  const auto pts = random_points(1, 100, 0.5, 100.0, 1);
  const auto rep = verify_sandwich(map_of({"t^2"}, kT), c1, disc, target, pre, 2.0, 2.0, pts);
  EXPECT_TRUE(rep.holds);
  EXPECT_LT(std::abs(rep.worst_lower_margin), 1e-12);
  EXPECT_NEAR(rep.tau, 0.1, 1e-15);
}

TEST(Sandwich, MixedDegreesNeedBothConstants) {
  // f = (w^2, z^3) on C^2 with K the unit bidisc; f^-1(K) is the bidisc too.
  const auto c2 = VarietySpec::affine_space(2);
  const auto f = map_of({"w^2", "z^3"}, kWZ);
  const GreenEstimate green = closed_form_estimate(bidisc);
  const CompactSetSpec k =
      PolyhedronSet{{{parse_poly("w", kWZ), 1.0}, {parse_poly("z", kWZ), 1.0}}};
  const auto pts = random_points(2, 200, 0.5, 50.0, 2);
  const auto ok = verify_sandwich(f, c2, k, green, green, 2.0, 3.0, pts);
  EXPECT_TRUE(ok.holds);
  const auto bad = verify_sandwich(f, c2, k, green, green, 3.0, 3.0, pts);
  EXPECT_FALSE(bad.holds);
  // Violations are where |w| dominates, so V_K(f) = 2 log|w| < 3 V.
  for (int i : bad.violations) {
    const auto& z = bad.rows[i].z;
    EXPECT_GT(std::abs(z[0]), std::abs(z[1]) * 0.9) << i;
  }
}

TEST(Sandwich, DesignOutsideKIsInconsistent) {
  const auto c1 = VarietySpec::affine_space(1, kT);
  SampleDesign d;
  d.points = {Point{2.0}, Point{0.5}};
  d.origin = PointSet{d.points};
  GreenEstimate pre = closed_form_estimate([](const Point& z) { return log_plus(std::abs(z[0])); });
  pre.design = std::make_shared<const SampleDesign>(d);
  const GreenEstimate target =
      closed_form_estimate([](const Point& w) { return log_plus(std::abs(w[0])); });
  try {
    verify_sandwich(map_of({"t^2"}, kT), c1, BallSet{{0.0}, 1.0}, target, pre, 2.0, 2.0,
                    {Point{3.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentDesigns);
  }
}

TEST(EqualityMode, Routes) {
  const auto c1 = VarietySpec::affine_space(1, kT);
  const auto c2 = VarietySpec::affine_space(2);
  const auto cusp_map = equality_mode(map_of({"t^2", "t^3"}, kT), c1);
  EXPECT_TRUE(cusp_map.flag);
  EXPECT_EQ(cusp_map.route, "chart");
  EXPECT_EQ(*cusp_map.exact_d, Rational(3));

  const auto squares = equality_mode(map_of({"w^2", "z^2"}, kWZ), c2);
  EXPECT_TRUE(squares.flag);
  EXPECT_EQ(squares.route, "cone");
  EXPECT_DOUBLE_EQ(squares.d, 2.0);

  EXPECT_FALSE(equality_mode(map_of({"w^2", "z^3"}, kWZ), c2).flag);
  EXPECT_FALSE(equality_mode(map_of({"w", "w z - 1"}, kWZ), c2).flag);
}

TEST(FunctionalEquation, PullBackAndPushForward) {
  const Evaluator disc = [](const Point& w) { return log_plus(std::abs(w[0])); };
  const auto f = map_of({"t^2"}, kT);
  const Evaluator pulled = green_from_functional_equation(f, 2.0, disc);
  const Evaluator pushed =
      green_on_image(f, 2.0, disc, FiberSolver::chart_univariate(VarietySpec::affine_space(1, kT)));
  for (Complex z : {Complex(3.0, 1.0), Complex(0.1, 0.2), Complex(-7.0)}) {
    EXPECT_NEAR(pulled(Point{z}), log_plus(std::abs(z)), 1e-12);
    EXPECT_NEAR(pushed(Point{z}), log_plus(std::abs(z)), 1e-12);
  }
}

TEST(BallBounds, AffineSpaceIsExact) {
  const auto c2 = VarietySpec::affine_space(2);
  const Point a{1.0, 0.0};
  const BallBounds b = ball_green_bounds(c2, a, 2.0);
  EXPECT_DOUBLE_EQ(b.r, 2.0);
  const Point z{Complex(5.0, 1.0), Complex(0.0, -3.0)};
  EXPECT_DOUBLE_EQ(b.lower(z), b.upper(z));
}

TEST(BallBounds, LinearSplit) {
  // The line w = z/2 with X = {w}, Y = {z}: |w| <= 0.5 (1 + |z|).
  SadullaevSplit split;
  split.x_indices = {0};
  split.y_indices = {1};
  split.C = 0.5;
  split.c = 1.0;
  const auto line = VarietySpec::make(2, {parse_poly("2 w - z", kWZ)},
                                      {make_chart(map_of({"0.5 t", "t"}, kT))}, split);
  const BallBounds b = ball_green_bounds(line, Point{0.0, 0.0}, 2.0);
  EXPECT_DOUBLE_EQ(b.r, 1.0);
  for (double s : {0.5, 3.0, 40.0}) {
    const Point z{0.5 * s, s};
    EXPECT_LE(b.lower(z), b.upper(z));
  }
  try {
    ball_green_bounds(line, Point{0.0, 0.0}, 0.4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BallTooSmall);
  }
}

TEST(BallBounds, ParabolaRejected) {
  SadullaevSplit split;
  split.x_indices = {0};
  split.y_indices = {1};
  split.C = 1.0;
  split.c = 2.0;
  const auto parabola = VarietySpec::make(2, {parse_poly("w - z^2", kWZ)},
                                          {make_chart(map_of({"t^2", "t"}, kT))}, split);
  try {
    ball_green_bounds(parabola, Point{0.0, 0.0}, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
}

TEST(EqualityMode, HypersurfaceCone) {
  // On the sphere the top parts (x^2, y^2) only meet the cone x^2+y^2+z^2 = 0
  // at the origin, so d = 2 exactly.
  const std::vector<std::string> xyz{"x", "y", "z"};
  const auto sphere = VarietySpec::make(3, {parse_poly("x^2 + y^2 + z^2 - 1", xyz)}, {});
  const auto m = equality_mode(map_of({"x^2 + y", "y^2 - x"}, xyz), sphere);
  EXPECT_EQ(m.route, "cone");
  EXPECT_TRUE(m.flag);
  EXPECT_EQ(*m.exact_d, Rational(2));
  // The plane z = 0: (x^2, x y) vanish together along the y axis.
  const auto plane = VarietySpec::make(3, {parse_poly("z", xyz)}, {});
  EXPECT_EQ(cone_common_direction_check(map_of({"x^2", "x y"}, xyz), plane,
                                        Schedule::geometric(1e2, 1e5, 6, 32, 7))
                .verdict,
            ConeVerdict::CommonDirection);
}
