#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bmc/bounds.hpp"
#include "bmc/gibbs.hpp"
#include "bmc/prior.hpp"
#include "bmc/rng.hpp"
#include "bmc/types.hpp"

namespace bmc {

// Entry noise for synthetic data.
struct NoiseModel {
  enum class Kind { Gaussian, Uniform, StudentT };

  Kind kind = Kind::Gaussian;
  double param = 1.0;  // sd, half-width, or degrees of freedom

  static NoiseModel gaussian(double sd);
  static NoiseModel uniform(double half_width);
  static NoiseModel student_t(double dof);  // dof > 2; not rescaled to unit variance

  void validate() const;
  double draw(Rng& rng) const;
  std::string name() const;
};

enum class LambdaMode { Experiment, Star, Gauss };

enum class EstimatorChoice { Uniform, Conjugate, Both };

// Full description of one synthetic run: ground truth, sampling, noise and
// both estimators' settings.
struct ExperimentSpec {
  int series = 1;  // 1 exact rank 2; 2 approximately rank 2; 3 uniform noise;
                   // 4 heavy-tailed noise. Ground truth is square (p = m).
  int m = 100;
  double observe_fraction = 0.2;
  std::uint64_t seed = 0;

  PriorConfig prior;
  ConjugatePriorConfig conjugate;
  GibbsConfig gibbs;
  NoiseModel noise;
  LambdaMode lambda_mode = LambdaMode::Experiment;
  NoiseSpec noise_spec;        // sigma/xi for LambdaMode::Star
  double gauss_sigma = 1.0;    // sigma for LambdaMode::Gauss
  bool param_is_variance = true;   // reading of N(0, 20/sqrt(m))
  bool without_replacement = false;
  bool row_weighted_pi = false;    // non-uniform sampling distribution
  EstimatorChoice estimators = EstimatorChoice::Both;
  int n_trace_entries = 4;

  // Reference settings for a given series and size: lambda = n/4, K = 5,
  // L = 50, kappa = 0, tau = 1/2 (1/4 for the heavy-tailed series), a = 1,
  // b = 1/100.
  static ExperimentSpec reference(int series, int m, std::uint64_t seed);

  long n_observations() const;
  double resolve_lambda(long n) const;
  void validate() const;
};

struct ExperimentResult {
  int series = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::optional<double> rmse_uniform;
  std::optional<double> rmse_conjugate;
  double seconds_uniform = 0.0;
  double seconds_conjugate = 0.0;
  TraceData trace_uniform;
  TraceData trace_conjugate;
};

// Ground-truth matrix for one experiment series. Series 1, 3 and 4 share the
// rank-2 construction U0 V0^T with i.i.d. N(0, 20/sqrt(m)) factor entries;
// series 2 adds a (1/100) Z0 W0^T perturbation with m x 50 factors (and so
// requires m >= 50). The second Gaussian parameter is read as the variance
// when param_is_variance is set, as the standard deviation otherwise.
Matrix gen_ground_truth(int series, int m, Rng& rng, bool param_is_variance = true);

// n i.i.d. cells from Pi (with replacement by default), each observed value
// the ground-truth entry plus noise. without_replacement instead masks n
// distinct cells, still proportionally to Pi.
ObservationSet sample_observations(const Matrix& M0, const SamplingDistribution& Pi,
                                   long n, const NoiseModel& noise, Rng& rng,
                                   bool without_replacement = false);

// Generate data and run the configured estimators; deterministic given the
// spec (all streams derive from spec.seed).
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace bmc
