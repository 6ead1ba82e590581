#include "dhopf/polyroots.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace dhopf {

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  if (coeffs.size() < 2) return {};
  if (coeffs[0] == 0.0) {
    throw std::invalid_argument("polynomial_roots: leading coefficient is zero");
  }
  const int n = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    companion(0, i) = -coeffs[i + 1] / coeffs[0];
    if (i + 1 < n) companion(i + 1, i) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = solver.eigenvalues()[i];
  return roots;
}

}  // namespace dhopf
