#include "bmc/risk.hpp"

#include <cmath>
#include <string>

#include "bmc/error.hpp"

namespace bmc {

namespace {

constexpr long kCompensateThreshold = 10000;

void check_same_shape(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorKind::DimensionMismatch,
         std::string(who) + ": shapes " + std::to_string(a.rows()) + "x" +
             std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
             std::to_string(b.cols()) + " differ");
  }
}

}  // namespace

double empirical_risk(const ObservationSet& obs, const Matrix& M) {
  if (obs.entries.empty()) {
    fail(ErrorKind::EmptyObservations, "empirical_risk: no observations");
  }
  if (M.rows() != obs.m || M.cols() != obs.p) {
    fail(ErrorKind::DimensionMismatch,
         "empirical_risk: matrix is " + std::to_string(M.rows()) + "x" +
             std::to_string(M.cols()) + " but observations live on " +
             std::to_string(obs.m) + "x" + std::to_string(obs.p));
  }
  const long n = obs.n();
  if (n > kCompensateThreshold) {
    detail::CompensatedSum acc;
    for (const Observation& e : obs.entries) {
      if (e.i < 0 || e.i >= obs.m || e.j < 0 || e.j >= obs.p) {
        fail(ErrorKind::DimensionMismatch, "empirical_risk: entry outside grid");
      }
      const double d = e.y - M(e.i, e.j);
      acc.add(d * d);
    }
    return acc.value() / static_cast<double>(n);
  }
  double acc = 0.0;
  for (const Observation& e : obs.entries) {
    if (e.i < 0 || e.i >= obs.m || e.j < 0 || e.j >= obs.p) {
      fail(ErrorKind::DimensionMismatch, "empirical_risk: entry outside grid");
    }
    const double d = e.y - M(e.i, e.j);
    acc += d * d;
  }
  return acc / static_cast<double>(n);
}

double weighted_frobenius_sq(const Matrix& A, const SamplingDistribution& Pi) {
  check_same_shape(A, Pi.weights, "weighted_frobenius_sq");
  const long size = static_cast<long>(A.rows()) * A.cols();
  if (size > kCompensateThreshold) {
    detail::CompensatedSum acc;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      for (Eigen::Index i = 0; i < A.rows(); ++i) {
        acc.add(A(i, j) * A(i, j) * Pi.weights(i, j));
      }
    }
    return acc.value();
  }
  double acc = 0.0;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      acc += A(i, j) * A(i, j) * Pi.weights(i, j);
    }
  }
  return acc;
}

double rmse_per_entry(const Matrix& Mhat, const Matrix& M0) {
  check_same_shape(Mhat, M0, "rmse_per_entry");
  const long size = static_cast<long>(Mhat.rows()) * Mhat.cols();
  double total;
  if (size > kCompensateThreshold) {
    detail::CompensatedSum acc;
    for (Eigen::Index j = 0; j < Mhat.cols(); ++j) {
      for (Eigen::Index i = 0; i < Mhat.rows(); ++i) {
        const double d = Mhat(i, j) - M0(i, j);
        acc.add(d * d);
      }
    }
    total = acc.value();
  } else {
    total = 0.0;
    for (Eigen::Index j = 0; j < Mhat.cols(); ++j) {
      for (Eigen::Index i = 0; i < Mhat.rows(); ++i) {
        const double d = Mhat(i, j) - M0(i, j);
        total += d * d;
      }
    }
  }
  return std::sqrt(total / static_cast<double>(size));
}

}  // namespace bmc
