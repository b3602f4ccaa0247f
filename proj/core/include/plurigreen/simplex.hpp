#pragma once

#include <Eigen/Dense>

namespace plurigreen {

struct LpResult {
  double objective = 0.0;
  Eigen::VectorXd x;
  int iterations = 0;
};

/// Maximizes g^T x subject to A x <= b over free x, for b >= 0 (so x = 0 is
/// feasible). Primal active-set (vertex-following simplex) method that
/// refactors its working set each step and falls back to Bland's rule after
/// a run of degenerate steps. The returned x is always feasible. Throws
/// SolverStall when `max_iterations` is exceeded or the problem is unbounded.
LpResult maximize_free(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& g,
                       int max_iterations = 20000);

}  // namespace plurigreen
