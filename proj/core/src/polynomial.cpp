#include "eop/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include "eop/errors.hpp"

namespace eop {

std::vector<std::complex<double>> all_roots(const Poly& p) {
  const int n = p.degree();
  if (n < 0) throw Error(ErrorKind::ZeroFunction, "roots of the zero polynomial");
  std::vector<std::complex<double>> out;
  if (n == 0) return out;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  const double l = p.c[n];
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -p.c[i] / l;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::EvaluationFailure, "companion eigenvalues did not converge");
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

std::vector<double> real_roots(const Poly& p, double lo, double hi, double imag_tol) {
  const Poly dp = p.derivative();
  std::vector<double> out;
  for (auto z : all_roots(p)) {
    if (std::abs(z.imag()) > imag_tol * (1.0 + std::abs(z))) continue;
    double x = z.real();
    for (int it = 0; it < 8; ++it) {
      const double d = dp(x);
      if (d == 0.0) break;
      const double step = p(x) / d;
      x -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    const double slack = 1e-12 * (1.0 + std::abs(hi - lo));
    if (x < lo - slack || x > hi + slack) continue;
    out.push_back(std::clamp(x, lo, hi));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace eop
