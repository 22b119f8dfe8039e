#pragma once

#include "bmc/error.hpp"

namespace bmc {

// Sub-exponential noise envelope: E e_i^2 <= sigma^2 and
// E |e_i|^k <= sigma^2 k! xi^{k-2} for k >= 3.
struct NoiseSpec {
  double sigma = 1.0;
  double xi = 1.0;

  void validate() const;
};

// Everything the explicit oracle bound needs.
struct BoundInputs {
  int m = 0;
  int p = 0;
  long n = 0;
  int rank = 1;
  double approx_error = 0.0;  // ||M - M0||^2_{F,Pi} at the comparison matrix
  double epsilon = 0.05;      // confidence level
  double L = 50.0;
  double tau = 0.5;
  NoiseSpec noise;

  void validate() const;  // requires n >= max(m,p), 0 < epsilon < 1
};

// C = max(12 L (2 xi + 3 L), 8 sigma^2 + 18 L^2).
double constant_C(double L, const NoiseSpec& noise);

// Theoretical inverse temperature: lambda* = n / (2 C).
double lambda_star(long n, double L, const NoiseSpec& noise);

// Practitioner presets for the same knob.
double lambda_experiment(long n);              // n / 4
double lambda_gauss(long n, double sigma);     // n / (2 sigma^2): exact Bayes
                                               // under N(0, sigma^2) noise

struct AuxiliaryConstants {
  double w;          // 12 L (2 xi + 3 L)
  double C_sigma_L;  // 2 (4 sigma^2 + 9 L^2)
  double alpha;      // lambda - lambda^2 C_sigma_L / (2n (1 - w lambda / n))
  double beta;       // lambda + lambda^2 C_sigma_L / (2n (1 - w lambda / n))
};

// Valid for lambda in (0, n/w); throws otherwise.
AuxiliaryConstants auxiliary_constants(double lambda, long n, double L,
                                       const NoiseSpec& noise);

// Explicit high-probability excess-risk bound for the posterior-mean
// estimator run at lambda*:
//   3 [ L^2 (m+p)/(18n) ((m+p)/(9n) + 3) + approx_error ]
//   + (8C/n) [ (m+p) rank/2 * log(36n/(m+p)) + log(2/eps)
//              + 2 rank log(1/tau) + 2 log(tau/(1-tau)) ].
double oracle_bound(const BoundInputs& inputs);

// Looser variant with log(36 min(m,p)) in place of log(36n/(m+p)) and
// 2 log(1/(1-tau)) in place of 2 log(tau/(1-tau)).
double oracle_bound_log_k(const BoundInputs& inputs);

}  // namespace bmc
