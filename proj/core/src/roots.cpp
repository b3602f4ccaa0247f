#include "plurigreen/roots.hpp"

#include <Eigen/Eigenvalues>

#include "plurigreen/error.hpp"

namespace plurigreen {

std::vector<Complex> polynomial_roots(std::vector<Complex> coefficients) {
  while (!coefficients.empty() && coefficients.back() == Complex(0.0)) coefficients.pop_back();
  if (coefficients.empty()) throw Error(ErrorCode::InvalidSpec, "roots of the zero polynomial");
  const int d = static_cast<int>(coefficients.size()) - 1;
  if (d == 0) return {};
  const Complex lead = coefficients.back();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) C(i, d - 1) = -coefficients[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::SolverStall, "companion eigenvalue iteration failed");
  }
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  for (auto& r : roots) {
    for (int it = 0; it < 2; ++it) {
      Complex p = coefficients[d];
      Complex dp(0.0);
      for (int k = d - 1; k >= 0; --k) {
        dp = dp * r + p;
        p = p * r + coefficients[k];
      }
      if (dp == Complex(0.0)) break;
      const Complex next = r - p / dp;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      r = next;
    }
  }
  return roots;
}

std::vector<Complex> laurent_roots(const MultiPoly& p) {
  if (p.num_vars() != 1)
    throw Error(ErrorCode::DimensionMismatch, "laurent_roots needs one variable");
  if (p.is_zero()) throw Error(ErrorCode::InvalidSpec, "roots of the zero polynomial");
  int lo = 0;
  int hi = 0;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    lo = first ? e[0] : std::min(lo, e[0]);
    hi = first ? e[0] : std::max(hi, e[0]);
    first = false;
  }
  if (lo > 0) lo = 0;  // keep t = 0 as a root of ordinary polynomials
  std::vector<Complex> coeffs(static_cast<std::size_t>(hi - lo + 1), Complex(0.0));
  for (const auto& [e, c] : p.terms()) coeffs[static_cast<std::size_t>(e[0] - lo)] = c;
  return polynomial_roots(coeffs);
}

}  // namespace plurigreen
