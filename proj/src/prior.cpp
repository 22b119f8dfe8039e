#include "bmc/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bmc/error.hpp"

namespace bmc {

void PriorConfig::validate() const {
  if (!(L > 0.0)) fail(ErrorKind::InvalidConfig, "PriorConfig: L must be > 0");
  if (K < 1) fail(ErrorKind::InvalidConfig, "PriorConfig: K must be >= 1");
  if (!(tau > 0.0 && tau < 1.0)) {
    fail(ErrorKind::InvalidConfig, "PriorConfig: tau must lie in (0,1)");
  }
  if (!(kappa >= 0.0)) fail(ErrorKind::InvalidConfig, "PriorConfig: kappa must be >= 0");
}

void PriorConfig::validate_for(const ObservationSet& obs) const {
  validate();
  if (K > std::min(obs.m, obs.p)) {
    fail(ErrorKind::InvalidConfig, "PriorConfig: K = " + std::to_string(K) +
                                       " exceeds min(m,p) = " +
                                       std::to_string(std::min(obs.m, obs.p)));
  }
  if (obs.n() < 1) fail(ErrorKind::EmptyObservations, "PriorConfig: n must be >= 1");
  const double kappa_max = std::sqrt(L / (10.0 * K)) / obs.n();
  if (kappa > kappa_max + 1e-15) {
    fail(ErrorKind::InvalidConfig,
         "PriorConfig: kappa = " + std::to_string(kappa) + " exceeds (1/n)sqrt(L/(10K)) = " +
             std::to_string(kappa_max));
  }
}

void ConjugatePriorConfig::validate() const {
  if (!(a > 0.0)) fail(ErrorKind::InvalidConfig, "ConjugatePriorConfig: a must be > 0");
  if (!(b > 0.0)) fail(ErrorKind::InvalidConfig, "ConjugatePriorConfig: b must be > 0");
  if (K < 1) fail(ErrorKind::InvalidConfig, "ConjugatePriorConfig: K must be >= 1");
}

bool FactorPair::in_support(const PriorConfig& cfg) const {
  if (k < 1 || k > cfg.K) return false;
  if (U.cols() != cfg.K || V.cols() != cfg.K) return false;
  const double delta = cfg.delta();
  for (int l = 0; l < cfg.K; ++l) {
    const double half = (l < k) ? delta : cfg.kappa;
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
      if (std::fabs(U(i, l)) > half) return false;
    }
    for (Eigen::Index j = 0; j < V.rows(); ++j) {
      if (std::fabs(V(j, l)) > half) return false;
    }
  }
  return true;
}

void FactorPair::validate(const PriorConfig& cfg) const {
  if (k < 1 || k > cfg.K) {
    fail(ErrorKind::InvalidArgument,
         "FactorPair: rank index " + std::to_string(k) + " outside 1.." + std::to_string(cfg.K));
  }
  if (U.cols() != cfg.K || V.cols() != cfg.K) {
    fail(ErrorKind::DimensionMismatch, "FactorPair: factor width differs from K");
  }
  if (!in_support(cfg)) {
    fail(ErrorKind::InvalidArgument, "FactorPair: an entry violates its box bound");
  }
}

Vector rank_indicator_pmf(const PriorConfig& cfg) {
  cfg.validate();
  // tau^{k-1} normalized over k = 1..K; identical to (1-tau)/(1-tau^K) scaling
  // but stable for tau arbitrarily close to 1.
  Vector w(cfg.K);
  double g = 1.0;
  double total = 0.0;
  for (int kk = 0; kk < cfg.K; ++kk) {
    w[kk] = g;
    total += g;
    g *= cfg.tau;
  }
  w /= total;
  return w;
}

FactorPair sample_prior_given_rank(const PriorConfig& cfg, int m, int p, int k, Rng& rng) {
  cfg.validate();
  if (m < 1 || p < 1) fail(ErrorKind::InvalidArgument, "sample_prior: bad dimensions");
  if (cfg.K > std::min(m, p)) {
    fail(ErrorKind::InvalidConfig, "sample_prior: K exceeds min(m,p)");
  }
  if (k < 1 || k > cfg.K) {
    fail(ErrorKind::InvalidArgument, "sample_prior: rank index outside 1..K");
  }
  FactorPair fp;
  fp.k = k;
  fp.U.setZero(m, cfg.K);
  fp.V.setZero(p, cfg.K);
  const double delta = cfg.delta();
  // Column-major fill; spike columns with kappa = 0 stay exactly zero and
  // consume no randomness.
  for (int l = 0; l < cfg.K; ++l) {
    const double half = (l < k) ? delta : cfg.kappa;
    if (half == 0.0) continue;
    for (int i = 0; i < m; ++i) fp.U(i, l) = rng.uniform(-half, half);
  }
  for (int l = 0; l < cfg.K; ++l) {
    const double half = (l < k) ? delta : cfg.kappa;
    if (half == 0.0) continue;
    for (int j = 0; j < p; ++j) fp.V(j, l) = rng.uniform(-half, half);
  }
  return fp;
}

FactorPair sample_prior(const PriorConfig& cfg, int m, int p, Rng& rng) {
  const Vector pmf = rank_indicator_pmf(cfg);
  const int k = 1 + rng.categorical(pmf.data(), cfg.K);
  return sample_prior_given_rank(cfg, m, p, k, rng);
}

double log_prior_density(const FactorPair& fp, const PriorConfig& cfg) {
  cfg.validate();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (fp.k < 1 || fp.k > cfg.K) return kNegInf;
  if (fp.U.cols() != cfg.K || fp.V.cols() != cfg.K) {
    fail(ErrorKind::DimensionMismatch, "log_prior_density: factor width differs from K");
  }
  const Vector pmf = rank_indicator_pmf(cfg);
  double logd = std::log(pmf[fp.k - 1]);
  const double delta = cfg.delta();
  for (int l = 0; l < cfg.K; ++l) {
    const double half = (l < fp.k) ? delta : cfg.kappa;
    if (half == 0.0) {
      // Dirac spike: contributes nothing when satisfied.
      for (Eigen::Index i = 0; i < fp.U.rows(); ++i) {
        if (fp.U(i, l) != 0.0) return kNegInf;
      }
      for (Eigen::Index j = 0; j < fp.V.rows(); ++j) {
        if (fp.V(j, l) != 0.0) return kNegInf;
      }
      continue;
    }
    const double log_box = -std::log(2.0 * half);
    for (Eigen::Index i = 0; i < fp.U.rows(); ++i) {
      if (std::fabs(fp.U(i, l)) > half) return kNegInf;
      logd += log_box;
    }
    for (Eigen::Index j = 0; j < fp.V.rows(); ++j) {
      if (std::fabs(fp.V(j, l)) > half) return kNegInf;
      logd += log_box;
    }
  }
  return logd;
}

}  // namespace bmc
