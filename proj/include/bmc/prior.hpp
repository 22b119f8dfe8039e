#pragma once

#include <cmath>

#include "bmc/rng.hpp"
#include "bmc/types.hpp"

namespace bmc {

// Structured uniform prior over factor pairs. A rank indicator k in 1..K is
// drawn with geometric decay tau; factor columns up to k get the wide slab
// [-delta, delta] with delta = sqrt(2L/K), columns past k get the narrow
// spike [-kappa, kappa]. kappa = 0 is an exact point mass at zero, which
// forces rank(U V^T) <= k. Any matrix drawn this way has entries bounded by
// 2L in absolute value.
struct PriorConfig {
  double L = 50.0;
  int K = 5;
  double tau = 0.5;
  double kappa = 0.0;

  double delta() const { return std::sqrt(2.0 * L / K); }

  // Static checks: L > 0, K >= 1, tau in (0,1), kappa >= 0.
  void validate() const;
  // Data-dependent checks: K <= min(m,p) and kappa <= (1/n) sqrt(L/(10K)).
  void validate_for(const ObservationSet& obs) const;
};

// Latent state (U, V, k): U is m x K, V is p x K, k the active rank index.
struct FactorPair {
  FactorMatrix U;
  FactorMatrix V;
  int k = 1;

  Matrix product() const { return U * V.transpose(); }
  bool in_support(const PriorConfig& cfg) const;
  // Throws unless the box invariants hold for this k.
  void validate(const PriorConfig& cfg) const;
};

// Gaussian-prior baseline: U_{il}, V_{jl} ~ N(0, gamma_l) with
// gamma_l ~ InvGamma(a, b), shared across the two factors per column.
struct ConjugatePriorConfig {
  double a = 1.0;
  double b = 0.01;
  int K = 5;

  void validate() const;
};

// P(rank index = k) = tau^{k-1} (1-tau) / (1-tau^K), k = 1..K.
Vector rank_indicator_pmf(const PriorConfig& cfg);

// Draw (U, V, k) from the prior.
FactorPair sample_prior(const PriorConfig& cfg, int m, int p, Rng& rng);

// Draw (U, V) conditional on a fixed rank index.
FactorPair sample_prior_given_rank(const PriorConfig& cfg, int m, int p, int k,
                                   Rng& rng);

// Log density of (U, V, k) against the product of Lebesgue measure on the
// slab coordinates and counting measure on k (spike columns with kappa = 0
// act as Dirac factors: 0 if satisfied, -inf otherwise). Returns -inf when
// any entry leaves its box.
double log_prior_density(const FactorPair& fp, const PriorConfig& cfg);

}  // namespace bmc
