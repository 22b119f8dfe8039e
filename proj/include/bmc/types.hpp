#pragma once

#include <Eigen/Dense>
#include <vector>

namespace bmc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
// Latent factors are accessed row-by-row in every sampler loop.
using FactorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One observed entry. Indices are 0-based everywhere inside the library;
// the 1-based convention of the CSV formats is applied at the I/O boundary
// only.
struct Observation {
  int i = 0;
  int j = 0;
  double y = 0.0;
};

// The n observed triples (i, j, y) on an m x p grid. Duplicate (i, j) pairs
// are legal and kept as distinct samples: the data model is i.i.d. draws of
// cells with replacement, and the empirical risk weights repeats naturally.
struct ObservationSet {
  int m = 0;
  int p = 0;
  std::vector<Observation> entries;

  int n() const { return static_cast<int>(entries.size()); }
  // Throws if dimensions are nonpositive or an entry falls outside the grid.
  void validate() const;
};

// Entrywise probabilities over the m x p grid: which cell gets observed.
struct SamplingDistribution {
  Matrix weights;

  int m() const { return static_cast<int>(weights.rows()); }
  int p() const { return static_cast<int>(weights.cols()); }
  // Throws unless all weights are >= 0 and they sum to 1 within 1e-12.
  void validate() const;

  static SamplingDistribution uniform(int m, int p);
  // Weight proportional to the 1-based row index; a simple non-uniform case.
  static SamplingDistribution row_weighted(int m, int p);
};

}  // namespace bmc
