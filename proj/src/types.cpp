#include "bmc/types.hpp"

#include <cmath>
#include <string>

#include "bmc/error.hpp"

namespace bmc {

void ObservationSet::validate() const {
  if (m <= 0 || p <= 0) {
    fail(ErrorKind::InvalidArgument, "ObservationSet: dimensions must be positive, got " +
                                         std::to_string(m) + "x" + std::to_string(p));
  }
  for (std::size_t t = 0; t < entries.size(); ++t) {
    const Observation& e = entries[t];
    if (e.i < 0 || e.i >= m || e.j < 0 || e.j >= p) {
      fail(ErrorKind::DimensionMismatch,
           "ObservationSet: entry " + std::to_string(t) + " at (" + std::to_string(e.i) +
               "," + std::to_string(e.j) + ") lies outside the " + std::to_string(m) + "x" +
               std::to_string(p) + " grid");
    }
    if (!std::isfinite(e.y)) {
      fail(ErrorKind::InvalidArgument,
           "ObservationSet: entry " + std::to_string(t) + " has non-finite value");
    }
  }
}

void SamplingDistribution::validate() const {
  if (weights.rows() <= 0 || weights.cols() <= 0) {
    fail(ErrorKind::InvalidArgument, "SamplingDistribution: empty weight matrix");
  }
  double total = 0.0;
  for (Eigen::Index j = 0; j < weights.cols(); ++j) {
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
      const double w = weights(i, j);
      if (!(w >= 0.0)) {
        fail(ErrorKind::InvalidArgument, "SamplingDistribution: negative weight at (" +
                                             std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ")");
      }
      total += w;
    }
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    fail(ErrorKind::InvalidArgument,
         "SamplingDistribution: weights sum to " + std::to_string(total) + ", expected 1");
  }
}

SamplingDistribution SamplingDistribution::uniform(int m, int p) {
  if (m <= 0 || p <= 0) {
    fail(ErrorKind::InvalidArgument, "SamplingDistribution::uniform: bad dimensions");
  }
  SamplingDistribution d;
  d.weights = Matrix::Constant(m, p, 1.0 / (static_cast<double>(m) * p));
  return d;
}

SamplingDistribution SamplingDistribution::row_weighted(int m, int p) {
  if (m <= 0 || p <= 0) {
    fail(ErrorKind::InvalidArgument, "SamplingDistribution::row_weighted: bad dimensions");
  }
  SamplingDistribution d;
  d.weights.resize(m, p);
  // Row i (1-based) gets weight i; total over the grid is p * m(m+1)/2.
  const double total = static_cast<double>(p) * m * (m + 1) / 2.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < p; ++j) {
      d.weights(i, j) = static_cast<double>(i + 1) / total;
    }
  }
  return d;
}

}  // namespace bmc
