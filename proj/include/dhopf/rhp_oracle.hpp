#pragma once

#include <complex>
#include <vector>

#include "dhopf/charpoly.hpp"

namespace dhopf {

/// Rectangular counting contour: the boundary of [0, depth] x
/// [-half_width, half_width] in the lambda plane. samples is the initial
/// trapezoidal sampling per edge before adaptive refinement.
struct ContourSpec {
  double half_width = 0.0;
  double depth = 0.0;
  int samples = 256;

  void validate() const;  ///< half_width > 0, depth > 0, samples >= 64
};

/// Contour sized from the coefficient magnitudes so that every root with
/// nonnegative real part lies strictly inside (|e^{-lambda tau}| <= 1 there,
/// so the Cauchy bound of the delay-free part plus the delayed perturbation
/// bounds all such roots).
ContourSpec default_contour(const CharSpec& spec);

struct RootCount {
  int count = 0;
  double winding_residual = 0.0;  ///< distance of the raw winding from the integer
  ContourSpec contour;            ///< contour actually used (after perturbation)
};

/// Number of characteristic roots with positive real part, by the winding
/// number of the characteristic function around the contour. Throws
/// ContourOnRoot when a root clings to the contour through 5 perturbation
/// retries and NonIntegerWinding when refinement cannot certify an integer.
RootCount count_rhp_roots(const CharSpec& spec, double tau, ContourSpec contour);
RootCount count_rhp_roots(const CharSpec& spec, double tau);

struct RootPathPoint {
  double tau = 0.0;
  Complex lambda;
};

/// Newton-corrected continuation of a single characteristic root from
/// tau_start to tau_end (either direction) over a uniform tau grid, halving
/// the step on divergence rather than jumping branches. Every returned point
/// satisfies |char_value| < 1e-8. Throws LostRoot at the minimum step 1e-6.
std::vector<RootPathPoint> track_root(const CharSpec& spec, Complex lambda_start,
                                      double tau_start, double tau_end, int steps);

/// Bisection localization of a change in the RHP count on [tau_lo, tau_hi]
/// down to the given resolution. Requires the endpoint counts to differ.
double locate_count_jump(const CharSpec& spec, double tau_lo, double tau_hi,
                         double resolution);

}  // namespace dhopf
