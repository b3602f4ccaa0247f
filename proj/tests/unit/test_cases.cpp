#include <gtest/gtest.h>

#include <numbers>

#include "plurigreen/cases.hpp"
#include "plurigreen/error.hpp"

using namespace plurigreen;

namespace {

// acosh form of the interval Green function, independent of the library's
// square-root form.
double interval_oracle(Complex x) { return std::abs(std::acosh(x - 1.0).real()); }

double max_pipeline_error(const std::string& name, const std::string& oracle, const char* grid) {
  const CaseRecord& c = find_case(name);
  const PipelineGreen pg = functional_equation_green(c);
  double worst = 0.0;
  for (const auto& z : grid_points(c.variety, grid, 5)) {
    worst = std::max(worst, std::abs(pg.estimate(z) - c.oracles.at(oracle)(z)));
  }
  return worst;
}

}  // namespace

TEST(Cases, RegistryOrder) {
  std::vector<std::string> names;
  for (const auto& c : registry()) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"cusp", "cross", "sphere_polyhedron", "viviani",
                                             "parabola_exponent", "negative_loja", "circle_bw"}));
  try {
    find_case("torus");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidSpec);
  }
}

TEST(Cases, CompactsFitVarieties) {
  for (const auto& c : registry()) {
    for (const auto& [name, k] : c.compacts) {
      if (name == "K_on_B") continue;  // lives on the related variety B
      EXPECT_NO_THROW(validate_compact(c.variety, k)) << c.name << " " << name;
    }
  }
}

TEST(Cases, CuspPipelineMatchesClosedForm) {
  EXPECT_LT(max_pipeline_error("cusp", "green_E", "shell:0.3:1000:200"), 1e-9);
  // Both stated forms agree on the cusp: |z| = |w|^(3/2).
  const CaseRecord& c = find_case("cusp");
  for (const auto& z : grid_points(c.variety, "shell:0.3:1000:50", 1)) {
    EXPECT_NEAR(c.oracles.at("green_E")(z), c.oracles.at("green_E_from_w")(z), 1e-9);
  }
}

TEST(Cases, CrossAndSpherePipelines) {
  EXPECT_LT(max_pipeline_error("cross", "green_E", "shell:0.3:1000:200"), 1e-12);
  EXPECT_LT(max_pipeline_error("sphere_polyhedron", "green_E", "shell:1.5:1000:200"), 1e-12);
}

TEST(Cases, VivianiPipelineGivesIntervalFunction) {
  EXPECT_LT(max_pipeline_error("viviani", "interval_green_x", "shell:2.1:1000:200"), 1e-9);
  const PipelineGreen pg = functional_equation_green(find_case("viviani"));
  ASSERT_EQ(pg.steps.size(), 2u);
  for (const auto& [name, mode] : pg.steps) {
    EXPECT_TRUE(mode.flag) << name;
    ASSERT_TRUE(mode.exact_d.has_value()) << name;
    EXPECT_EQ(*mode.exact_d, Rational(2)) << name;
  }
}

TEST(Cases, IntervalGreenBranches) {
  for (double x : {0.0, 0.3, 1.0, 1.7, 2.0}) EXPECT_NEAR(interval_green_0_2(x), 0.0, 1e-7);
  for (Complex x : {Complex(3.0), Complex(-1.0), Complex(1.0, 2.0), Complex(1.0, -2.0),
                    Complex(-50.0, 0.1), Complex(2.0, 1e-3)}) {
    EXPECT_NEAR(interval_green_0_2(x), interval_oracle(x), 1e-12) << x;
    EXPECT_NEAR(interval_green_0_2(x), interval_green_0_2(std::conj(x)), 1e-12);
    EXPECT_NEAR(interval_green_0_2(x), interval_green_0_2(2.0 - x), 1e-12);
  }
}

TEST(Cases, VivianiWindowIsReal) {
  const CaseRecord& c = find_case("viviani");
  const SampleDesign d = sample_compact(c.variety, c.compacts.at("E"), 100, 3);
  for (const auto& z : d.points) {
    EXPECT_TRUE(membership(c.variety, z, 1e-9));
    EXPECT_NEAR(interval_green_0_2(z[0]), 0.0, 1e-6);
  }
}

TEST(Cases, ExactValues) {
  EXPECT_EQ(find_case("parabola_exponent").exact.at("rho_f"), Rational(3, 2));
  EXPECT_EQ(find_case("negative_loja").exact.at("loja_f"), Rational(-1));
  EXPECT_EQ(find_case("circle_bw").exact.at("rho_p"), Rational(1));
  const CaseRecord& parabola = find_case("parabola_exponent");
  const auto e = exact_exponents_variety(parabola.maps.at("f"), parabola.variety);
  EXPECT_EQ(*e.growth, parabola.exact.at("rho_f"));
}

TEST(Cases, GridStrings) {
  const CaseRecord& c = find_case("cusp");
  const auto shell = grid_points(c.variety, "shell:2:20:30", 1);
  ASSERT_EQ(shell.size(), 30u);
  for (const auto& z : shell) {
    EXPECT_GE(norm(z), 2.0 * (1 - 1e-9));
    EXPECT_LE(norm(z), 20.0 * 1.01 * (1 + 1e-9));
  }
  EXPECT_EQ(grid_points(c.variety, "box:-1:1:12", 1).size(), 12u);
  for (const char* bad : {"shell:2:1", "ring:1:2:3", "box:a:1:3", "shell:2:1:-4"}) {
    EXPECT_THROW(grid_points(c.variety, bad, 1), Error) << bad;
  }
}

TEST(Cases, ShellBelowVarietyFails) {
  // Every point of the Viviani curve has norm 2.
  try {
    grid_points(find_case("viviani").variety, "shell:1:1.5:4", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BracketingFailed);
  }
}

TEST(Cases, SandwichScope) {
  EXPECT_THROW(sandwich_setup(find_case("circle_bw")), Error);
  SandwichOptions opts;
  opts.design_size = 400;
  opts.degree = 8;
  opts.testpoints = 20;
  const SandwichSetup s = sandwich_setup(find_case("cross"), opts);
  EXPECT_EQ(s.constants_from, "exact");
  EXPECT_EQ(s.k, 2.0);
  EXPECT_EQ(s.l, 2.0);
  EXPECT_EQ(s.testpoints.size(), 20u);
}
