#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <numbers>
#include <random>

#include "plurigreen/extremal.hpp"
#include "plurigreen/orthobasis.hpp"

using namespace plurigreen;

namespace {

std::vector<Point> roots_of_unity(int m) {
  std::vector<Point> pts;
  for (int j = 0; j < m; ++j) pts.push_back({std::polar(1.0, 2.0 * std::numbers::pi * j / m)});
  return pts;
}

std::vector<Point> cusp_points(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts;
  for (int i = 0; i < m; ++i) {
    const Complex t(u(rng), u(rng));
    pts.push_back({t * t, t * t * t});
  }
  return pts;
}

// Numerical rank of the plain monomial Vandermonde matrix, the oracle for
// the Arnoldi rank.
int svd_rank(const std::vector<Point>& pts, int degree) {
  const auto exps = graded_exponents(static_cast<int>(pts.front().size()), degree);
  Eigen::MatrixXcd V(pts.size(), exps.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < exps.size(); ++j) {
      Complex v = 1.0;
      for (std::size_t k = 0; k < exps[j].size(); ++k) v *= std::pow(pts[i][k], exps[j][k]);
      V(i, j) = v;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i) r += s(i) > s(0) * 1e-10;
  return r;
}

double orthonormality_error(const OrthoBasis& b) {
  const auto& Q = b.values();
  const Eigen::MatrixXcd G = Q.adjoint() * Q / static_cast<double>(Q.rows());
  return (G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(OrthoBasis, CircleRank) {
  const auto pts = roots_of_unity(64);
  const OrthoBasis b = OrthoBasis::graded(pts, 2);
  EXPECT_EQ(b.rank(), 3);
  EXPECT_EQ(b.rank(), svd_rank(pts, 2));
  EXPECT_LT(orthonormality_error(b), 1e-12);
}

TEST(OrthoBasis, CuspRankDeficient) {
  const auto pts = cusp_points(300, 1);
  const OrthoBasis b = OrthoBasis::graded(pts, 3);
  const int oracle = svd_rank(pts, 3);
  EXPECT_LT(oracle, 10);
  EXPECT_EQ(b.rank(), oracle);
  EXPECT_LT(orthonormality_error(b), 1e-10);
}

TEST(OrthoBasis, RepeatedPoint) {
  const std::vector<Point> pts(10, Point{Complex(0.3, -0.2), Complex(1.5, 0.0)});
  EXPECT_EQ(OrthoBasis::graded(pts, 4).rank(), 1);
}

TEST(OrthoBasis, PolynomialsMatchValues) {
  const auto pts = cusp_points(100, 2);
  const OrthoBasis b = OrthoBasis::graded(pts, 2);
  const auto polys = b.polynomials();
  ASSERT_EQ(static_cast<int>(polys.size()), b.rank());
  for (int i = 0; i < 5; ++i) {
    const Eigen::VectorXcd q = b.eval(pts[i]);
    for (int j = 0; j < b.rank(); ++j) {
      EXPECT_LT(std::abs(polys[j].eval(pts[i]) - b.values()(i, j)), 1e-9);
      EXPECT_LT(std::abs(q(j) - b.values()(i, j)), 1e-9);
    }
  }
}

TEST(OrthoBasis, RestrictedBasisNeedsTwoPoints) {
  SampleDesign d;
  d.points = {Point{1.0}};
  EXPECT_ANY_THROW(restricted_orthobasis(d, 2));
}

TEST(OrthoBasis, HighDegreeIntervalStaysOrthonormal) {
  std::vector<Point> pts;
  for (int j = 0; j < 128; ++j) pts.push_back({1.0 - std::cos(std::numbers::pi * (j + 0.5) / 128)});
  const OrthoBasis b = OrthoBasis::graded(pts, 30);
  EXPECT_EQ(b.rank(), 31);
  EXPECT_LT(orthonormality_error(b), 1e-9);
}
