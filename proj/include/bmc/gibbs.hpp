#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bmc/prior.hpp"
#include "bmc/rng.hpp"
#include "bmc/tmvn.hpp"
#include "bmc/types.hpp"

namespace bmc {

// Chain-length and reproducibility knobs shared by both samplers.
struct GibbsConfig {
  int burn_in = 500;
  int iterations = 2000;  // kept rounds after burn-in
  int thin = 1;
  int inner_sweeps = 2;  // coordinate-Gibbs passes per row update
  std::uint64_t seed = 0;

  void validate() const;
};

// K coupled chains, one per rank index; chain k keeps active rank k for its
// whole life. Selection each round picks the chain whose current state the
// running posterior mean absorbs.
struct ChainEnsemble {
  std::vector<FactorPair> chains;
  double lambda = 1.0;
  Vector weights;           // selection probabilities from the last round
  Matrix mean_accumulator;  // running sum of selected U V^T draws
  long draws_accumulated = 0;
};

// Per-round scalars and monitored matrix entries recorded after burn-in.
struct TraceData {
  std::vector<std::pair<int, int>> entries;  // 0-based monitored cells
  std::vector<int> k_selected;
  std::vector<double> r_selected;
  std::vector<std::vector<double>> values;  // values[e][round]
};

struct FitOptions {
  // Monitored cells; when empty and n_trace_entries > 0, cells are drawn
  // from a seed-derived stream.
  std::vector<std::pair<int, int>> trace_entries;
  int n_trace_entries = 0;
  int chain_workers = 1;  // parallel chain sweeps (deterministic for any value)
};

struct FitResult {
  Matrix estimate;
  TraceData trace;
};

// Empirical risk of the factored state without forming U V^T.
double factored_empirical_risk(const ObservationSet& obs, const FactorPair& fp);

// Conditional law of row i of U given V and the data: a box-truncated
// Gaussian with precision (2 lambda / n) sum_{t: i_t = i} V_{j_t}^T V_{j_t}
// and mean solving precision * mean = (2 lambda / n) sum y_t V_{j_t}
// (minimum-norm on any null space). Box half-widths are delta on columns
// <= k and kappa past k. Rows with no observations yield zero precision:
// the conditional degenerates to the prior boxes.
BoxTruncatedGaussian row_conditional(int i, const FactorMatrix& V,
                                     const ObservationSet& obs, double lambda, int k,
                                     const PriorConfig& cfg);

// One full sweep over the chain: every row of U, then every row of V (the
// two factors play symmetric roles in U V^T).
FactorPair gibbs_sweep(FactorPair chain, const ObservationSet& obs, double lambda,
                       const PriorConfig& cfg, const GibbsConfig& gibbs_cfg, Rng& rng);

// Softmax selection over chains with unnormalized log-weights
// log p_k - lambda * r(U_k V_k^T); updates ensemble.weights and returns the
// selected rank index (1-based).
int select_chain(ChainEnsemble& ensemble, const ObservationSet& obs,
                 const PriorConfig& cfg, Rng& rng);

// Posterior-mean estimate under the structured uniform prior: K simultaneous
// chains, per-round selection, average of selected U V^T draws after burn-in.
FitResult fit_uniform_prior(const ObservationSet& obs, const PriorConfig& cfg,
                            double lambda, const GibbsConfig& gibbs_cfg,
                            const FitOptions& options = {});

// Posterior-mean estimate under the Gaussian/inverse-gamma baseline prior.
// Same tempered likelihood exp(-lambda r(M)); row conditionals are plain
// multivariate normals and the column variances get conjugate updates.
FitResult fit_conjugate_prior(const ObservationSet& obs,
                              const ConjugatePriorConfig& cfg, double lambda,
                              const GibbsConfig& gibbs_cfg,
                              const FitOptions& options = {});

}  // namespace bmc
