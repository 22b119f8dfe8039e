#pragma once

#include "bmc/types.hpp"

namespace bmc {

// Mean squared residual over the observed entries:
//   r(M) = (1/n) sum_t (y_t - M(i_t, j_t))^2.
// Accumulation is left-to-right in entry order; sums longer than 1e4 terms
// use compensated summation so results are reproducible at scale.
double empirical_risk(const ObservationSet& obs, const Matrix& M);

// Weighted squared Frobenius norm  sum_ij A_ij^2 Pi_ij. For uniform Pi this
// equals (1/mp) * ||A||_F^2.
double weighted_frobenius_sq(const Matrix& A, const SamplingDistribution& Pi);

// Root-mean-squared error per entry: sqrt((1/mp) * ||Mhat - M0||_F^2).
double rmse_per_entry(const Matrix& Mhat, const Matrix& M0);

namespace detail {

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double value() const { return s + c; }
};

}  // namespace detail

}  // namespace bmc
