#pragma once

#include "bmc/rng.hpp"
#include "bmc/types.hpp"

namespace bmc {

// A multivariate normal restricted to an axis-aligned box, parametrized by
// mean and precision. The precision may be positive semidefinite: directions
// with zero conditional precision carry no Gaussian information and the box
// alone constrains them. A zero-width box coordinate (lower == upper) is a
// pinned point mass.
struct BoxTruncatedGaussian {
  Vector mean;
  Matrix precision;
  Vector lower;
  Vector upper;

  int dim() const { return static_cast<int>(mean.size()); }
  // Full structural check: consistent sizes, lower <= upper, precision
  // symmetric within 1e-10 with eigenvalues >= -1e-10. Costs an eigen
  // decomposition; intended for validation paths, not the sampler hot loop.
  void validate() const;
};

// One draw from N(mu, sigma^2) conditioned on [lo, hi], lo < hi. Moderate
// truncation uses the inverse CDF; when the box sits more than 5 standard
// deviations into a tail it switches to an exponential-proposal rejection
// scheme that stays exact where the CDF difference would underflow.
double sample_truncated_univariate(double mu, double sigma, double lo, double hi,
                                   Rng& rng);

// `sweeps` full coordinate-Gibbs passes over the box-truncated Gaussian,
// starting from `current` (which must lie inside the box). Each coordinate is
// redrawn from its univariate conditional, truncated to its box interval.
// Pinned coordinates are never resampled; coordinates with zero conditional
// precision fall back to a uniform draw over their interval. The returned
// point always lies inside the box.
Vector sample_box_tmvn(const BoxTruncatedGaussian& dist, Vector current, int sweeps,
                       Rng& rng);

namespace detail {

// Allocation-free core used by both the public sampler and the Gibbs engine.
void tmvn_sweeps_inplace(const Matrix& precision, const Vector& mean,
                         const Vector& lower, const Vector& upper, Vector& x,
                         int sweeps, Rng& rng);

}  // namespace detail

}  // namespace bmc
