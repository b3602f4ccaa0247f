#include <gtest/gtest.h>

#include <random>

#include "plurigreen/error.hpp"
#include "plurigreen/polynomial.hpp"

using namespace plurigreen;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kT{"t"};
const Complex I(0.0, 1.0);

MultiPoly P(std::string_view s, const std::vector<std::string>& names = kXY) {
  return parse_poly(s, names);
}

MultiPoly random_poly(int num_vars, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> keep(0, 2);
  std::normal_distribution<double> g;
  MultiPoly p(num_vars);
  for (const auto& e : graded_exponents(num_vars, degree)) {
    if (keep(rng) != 0) p.add_term(e, Complex(g(rng), g(rng)));
  }
  return p;
}

Point random_point(int n, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Point z(n);
  for (auto& c : z) c = Complex(u(rng), u(rng)) * (radius / std::sqrt(2.0 * n));
  return z;
}

}  // namespace

TEST(Polynomial, EvalSmall) {
  const MultiPoly p = P("x^2 y + 1");
  const Point z{2.0, 3.0};
  EXPECT_EQ(p.eval(z), Complex(13.0));
  EXPECT_EQ(MultiPoly(3).eval(Point{1.0, 2.0, 3.0}), Complex(0.0));
}

TEST(Polynomial, EvalFactoredCubicAtIsotropicPoint) {
  // (x + y)(x^2 + y^2) expanded by hand; x^2 + y^2 vanishes at (1, i).
  const MultiPoly p = P("x^3 + x^2 y + x y^2 + y^3");
  const MultiPoly product = P("x + y") * P("x^2 + y^2");
  EXPECT_EQ(p, product);
  EXPECT_LT(std::abs(p.eval(Point{1.0, I})), 1e-15);
}

TEST(Polynomial, EvalRejectsBadInput) {
  const MultiPoly p = P("x + y");
  EXPECT_THROW(p.eval(Point{1.0}), Error);
  const MultiPoly q = P("t + t^-1", kT);
  try {
    q.eval(Point{0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroLaurentCoordinate);
  }
}

TEST(Polynomial, Degrees) {
  EXPECT_EQ(P("x^2 y + y").total_degree(), 3);
  EXPECT_FALSE(MultiPoly(2).total_degree().has_value());
  EXPECT_EQ(P("t + t^-1", kT).total_degree(), 1);
  EXPECT_EQ(P("t + t^-1", kT).laurent_pole_degree(), 1);
  EXPECT_EQ(P("t^2", kT).laurent_pole_degree(), 0);
  EXPECT_EQ(P("t^-3 + t^-1", kT).laurent_pole_degree(), 3);
}

TEST(Polynomial, HomogeneousParts) {
  EXPECT_EQ(P("x^2 + x y + x + 1").homogeneous_part(2), P("x^2 + x y"));
  EXPECT_TRUE(P("x^2 + 1").homogeneous_part(3).is_zero());
  EXPECT_EQ(P("x y - 1").homogeneous_part(2), P("x y"));
  EXPECT_THROW(P("t + t^-1", kT).homogeneous_part(1), Error);
}

TEST(Polynomial, HomogeneousPartsSumBack) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const MultiPoly p = random_poly(3, 4, rng);
    if (p.is_zero()) continue;
    MultiPoly sum(3);
    for (int d = 0; d <= *p.total_degree(); ++d) sum += p.homogeneous_part(d);
    EXPECT_EQ(sum, p);
    EXPECT_FALSE(p.homogeneous_part(*p.total_degree()).is_zero());
  }
}

TEST(Polynomial, ExactZeroPurge) {
  MultiPoly p = P("x + 1e-300 y");
  p -= P("x");
  // The tiny coefficient survives; only exact cancellation removes terms.
  EXPECT_EQ(p.size(), 1u);
  p -= P("1e-300 y");
  EXPECT_TRUE(p.is_zero());
}

TEST(Polynomial, ComposeExamples) {
  const MultiPoly t2 = P("t^2", kT);
  const MultiPoly t3 = P("t^3", kT);
  const std::vector<MultiPoly> subs{t2, t3};
  EXPECT_EQ(compose(P("x^2 + y"), subs), P("t^4 + t^3", kT));

  const MultiPoly p = P("3 x^2 y - I x + 2");
  EXPECT_EQ(compose(p, identity_map(2)), p);

  // x + y on the circle chart: (1 - i)/2 t + (1 + i)/2 t^-1.
  const std::vector<MultiPoly> circle{P("0.5 t + 0.5 t^-1", kT), P("-0.5 I t + 0.5 I t^-1", kT)};
  const MultiPoly pulled = compose(P("x + y"), circle);
  EXPECT_TRUE(pulled.laurent());
  EXPECT_EQ(pulled.total_degree(), 1);
  EXPECT_EQ(pulled.laurent_pole_degree(), 1);
  for (Complex t : {Complex(2.0, 0.5), Complex(-0.3, 1.1)}) {
    const Complex x = (t + 1.0 / t) / 2.0;
    const Complex y = (t - 1.0 / t) / (2.0 * I);
    EXPECT_LT(std::abs(pulled.eval(Point{t}) - (x + y)), 1e-14);
  }
}

TEST(Polynomial, ComposeRejectsIllegalLaurent) {
  const std::vector<MultiPoly> subs{P("1 + t", kT)};
  try {
    compose(P("t^-1", kT), subs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllegalLaurentComposition);
  }
  const std::vector<MultiPoly> monomial{P("2 t^3", kT)};
  EXPECT_EQ(compose(P("t^-1", kT), monomial), P("0.5 t^-3", kT));
  EXPECT_THROW(compose(P("x + y"), monomial), Error);
}

TEST(Polynomial, ComposeAssociativeAndMatchesEvaluation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const MultiPoly p = random_poly(2, 3, rng);
    const std::vector<MultiPoly> f{random_poly(2, 2, rng), random_poly(2, 2, rng)};
    const std::vector<MultiPoly> g{random_poly(2, 2, rng), random_poly(2, 2, rng)};
    const MultiPoly lhs = compose(compose(p, f), g);
    const MultiPoly rhs = compose(p, compose_map(f, g));
    // Coefficients agree up to rounding in the different summation order.
    const MultiPoly diff = lhs - rhs;
    double scale = 0.0;
    for (const auto& [e, c] : lhs.terms()) scale = std::max(scale, std::abs(c));
    for (const auto& [e, c] : diff.terms()) EXPECT_LE(std::abs(c), 1e-12 * (1.0 + scale));

    for (int k = 0; k < 5; ++k) {
      const Point z = random_point(2, 2.0, rng);
      const Complex direct = p.eval(eval_map(f, z));
      const Complex composed = compose(p, f).eval(z);
      EXPECT_LE(std::abs(direct - composed), 1e-12 * (1.0 + std::abs(direct)));
    }
  }
}

TEST(Polynomial, DegreeOfProductOnMonomials) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const MultiPoly a = MultiPoly::monomial({d(rng), d(rng), d(rng)}, Complex(1.5, -2.0));
    const MultiPoly b = MultiPoly::monomial({d(rng), d(rng), d(rng)}, Complex(-0.25, 3.0));
    EXPECT_EQ(*(a * b).total_degree(), *a.total_degree() + *b.total_degree());
  }
}

TEST(Polynomial, MonomialBasis) {
  const auto b12 = monomial_basis(1, 2);
  ASSERT_EQ(b12.size(), 3u);
  EXPECT_EQ(b12[0], MultiPoly::monomial({0}));
  EXPECT_EQ(b12[1], MultiPoly::monomial({1}));
  EXPECT_EQ(b12[2], MultiPoly::monomial({2}));
  const auto b21 = monomial_basis(2, 1);
  ASSERT_EQ(b21.size(), 3u);
  EXPECT_EQ(b21[1], MultiPoly::monomial({1, 0}));
  EXPECT_EQ(b21[2], MultiPoly::monomial({0, 1}));
  EXPECT_EQ(monomial_basis(2, 2).size(), 6u);
  EXPECT_EQ(monomial_basis(3, 4).size(), 35u);  // C(7, 3)
}

TEST(Polynomial, GrlexOrder) {
  const GrlexLess less;
  EXPECT_TRUE(less({1, 0}, {0, 2}));
  EXPECT_TRUE(less({0, 0}, {0, 1}));
  // Equal degree: the larger first exponent comes first.
  EXPECT_TRUE(less({2, 0}, {1, 1}));
  EXPECT_TRUE(less({1, 1}, {0, 2}));
  EXPECT_FALSE(less({0, 2}, {0, 2}));
}

TEST(Polynomial, ParseErrors) {
  EXPECT_THROW(P("x +"), Error);
  EXPECT_THROW(P("q"), Error);
  EXPECT_THROW(P("x^"), Error);
}

TEST(Polynomial, ToStringParsesBack) {
  const MultiPoly p = P("x^3 - 2.5 x y + I y^2 + 7");
  EXPECT_EQ(P(to_string(p, kXY)), p);
}
