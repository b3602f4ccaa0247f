#include "plurigreen/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "plurigreen/error.hpp"

namespace plurigreen {

// Primal active-set method. The working set W holds linearly independent
// rows that are tight at x. While g has a component in the null space of
// A_W we walk along it until a new row blocks; once it has none, the
// multipliers of A_W^T lambda = g decide between optimality and releasing
// a row. Nothing is updated in place: the small system is refactored every
// step, and at a vertex x is re-solved from the tight rows directly.
LpResult maximize_free(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& g,
                       int max_iterations) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || g.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "LP data shapes disagree");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(b(i) >= 0.0)) throw Error(ErrorCode::InvalidSpec, "LP right-hand side must be >= 0");
  }

  // Unit rows; rows that are numerically zero can never bind.
  const Eigen::VectorXd norms = A.rowwise().norm();
  const double big = norms.size() ? norms.maxCoeff() : 0.0;
  Eigen::MatrixXd U(m, n);
  Eigen::VectorXd c(m);
  std::vector<char> live(m, 0);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (norms(i) > 1e-14 * big) {
      U.row(i) = A.row(i) / norms(i);
      c(i) = b(i) / norms(i);
      live[i] = 1;
    } else {
      U.row(i).setZero();
      c(i) = 0.0;
    }
  }

  const double gnorm = g.norm();
  const double tol = 1e-12 * std::max(1.0, gnorm);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Index> work;
  std::vector<char> in_work(m, 0);
  int degenerate_run = 0;

  LpResult out;
  for (out.iterations = 0;; ++out.iterations) {
    if (out.iterations >= max_iterations) {
      throw Error(ErrorCode::SolverStall, "simplex iteration cap exceeded");
    }
    const bool bland = degenerate_run > 20;
    const auto k = static_cast<Eigen::Index>(work.size());
    Eigen::MatrixXd M(n, k);
    for (Eigen::Index j = 0; j < k; ++j) M.col(j) = U.row(work[j]).transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    Eigen::VectorXd d = g;
    if (k > 0) {
      const Eigen::MatrixXd Q = qr.householderQ();
      const Eigen::MatrixXd Q2 = Q.rightCols(n - k);
      d = Q2 * (Q2.transpose() * g);
    }

    if (d.norm() > tol) {
      // Ratio test along d.
      const double dn = d.norm();
      Eigen::Index enter = -1;
      double step = 0.0;
      double enter_rate = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (!live[i] || in_work[i]) continue;
        const double rate = U.row(i).dot(d);
        if (rate <= 1e-12 * dn) continue;
        const double t = std::max(0.0, c(i) - U.row(i).dot(x)) / rate;
        const bool tie = enter >= 0 && std::abs(t - step) <= 1e-14 * (1.0 + step);
        if (enter < 0 || (!tie && t < step) || (tie && (bland ? i < enter : rate > enter_rate))) {
          enter = i;
          step = t;
          enter_rate = rate;
        }
      }
      if (enter < 0) throw Error(ErrorCode::SolverStall, "LP is unbounded");
      degenerate_run = step * dn <= 1e-14 ? degenerate_run + 1 : 0;
      x += step * d;
      work.push_back(enter);
      in_work[enter] = 1;
      if (static_cast<Eigen::Index>(work.size()) == n) {
        Eigen::MatrixXd B(n, n);
        Eigen::VectorXd rhs(n);
        for (Eigen::Index j = 0; j < n; ++j) {
          B.row(j) = U.row(work[j]);
          rhs(j) = c(work[j]);
        }
        x = B.partialPivLu().solve(rhs);
      }
      continue;
    }

    if (k == 0) break;  // g == 0
    const Eigen::VectorXd lambda =
        qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(
            (qr.householderQ().transpose() * g).head(k));
    Eigen::Index leave = -1;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (lambda(j) >= -tol) continue;
      if (leave < 0 || (bland ? work[j] < work[leave] : lambda(j) < lambda(leave))) leave = j;
    }
    if (leave < 0) break;
    in_work[work[leave]] = 0;
    work.erase(work.begin() + leave);
  }

  // Pull x toward the feasible origin if round-off left a row violated.
  double shrink = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double ax = A.row(i).dot(x);
    if (ax > b(i)) shrink = std::min(shrink, b(i) / ax);
  }
  out.x = shrink * x;
  out.objective = g.dot(out.x);
  return out;
}

}  // namespace plurigreen
