#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dhopf {

/// All complex roots of a real polynomial given by coefficients in
/// descending powers (leading coefficient first, must be nonzero).
/// Backed by the eigenvalues of the companion matrix.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

}  // namespace dhopf
