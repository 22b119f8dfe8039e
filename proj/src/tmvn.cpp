#include "bmc/tmvn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bmc/error.hpp"

namespace bmc {

namespace {

constexpr double kTailSwitch = 5.0;
// Below this the conditional precision is treated as exactly zero (the
// coordinate is unconstrained by the Gaussian part).
constexpr double kPrecisionFloor = 1e-300;

// N(0,1) restricted to [a, b] with a >= 0 far in the right tail.
// Exponential proposal tilted at alpha = (a + sqrt(a^2+4))/2 (Robert 1995).
double right_tail_draw(double a, double b, Rng& rng) {
  const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const double z = a + rng.exponential(alpha);
    if (z > b) continue;
    const double d = z - alpha;
    if (std::log(rng.u01_open()) <= -0.5 * d * d) return z;
  }
  // Only reachable for a sliver of box so thin the density is flat on it.
  return a + (b - a) * rng.u01();
}

}  // namespace

double sample_truncated_univariate(double mu, double sigma, double lo, double hi,
                                   Rng& rng) {
  if (!(lo < hi)) {
    fail(ErrorKind::InvalidArgument,
         "sample_truncated_univariate: requires lo < hi, got [" + std::to_string(lo) +
             ", " + std::to_string(hi) + "]");
  }
  if (!(sigma > 0.0)) {
    fail(ErrorKind::InvalidArgument, "sample_truncated_univariate: sigma must be > 0");
  }
  const double a = (lo - mu) / sigma;
  const double b = (hi - mu) / sigma;
  double z;
  if (a > kTailSwitch) {
    z = right_tail_draw(a, b, rng);
  } else if (b < -kTailSwitch) {
    z = -right_tail_draw(-b, -a, rng);
  } else {
    const double pa = normal_cdf(a);
    const double pb = normal_cdf(b);
    if (pb > pa) {
      const double u = pa + (pb - pa) * rng.u01();
      z = normal_quantile(std::clamp(u, 1e-300, 1.0 - 1e-16));
    } else {
      // CDF difference underflowed inside the moderate range: the box is a
      // floating-point sliver; its conditional is effectively uniform.
      z = a + (b - a) * rng.u01();
    }
  }
  return std::clamp(mu + sigma * z, lo, hi);
}

namespace detail {

void tmvn_sweeps_inplace(const Matrix& precision, const Vector& mean,
                         const Vector& lower, const Vector& upper, Vector& x,
                         int sweeps, Rng& rng) {
  const int d = static_cast<int>(x.size());
  for (int s = 0; s < sweeps; ++s) {
    for (int c = 0; c < d; ++c) {
      if (lower[c] == upper[c]) continue;  // pinned coordinate
      const double lam = precision(c, c);
      if (lam < -1e-10) {
        fail(ErrorKind::Numeric,
             "tmvn sampler: negative conditional precision on coordinate " +
                 std::to_string(c));
      }
      if (lam <= kPrecisionFloor) {
        // No Gaussian information along this axis; the prior box rules.
        x[c] = rng.uniform(lower[c], upper[c]);
        continue;
      }
      // Conditional of coordinate c given the rest:
      //   mean_c - (1/lam) * sum_{j != c} P_cj (x_j - mean_j),  variance 1/lam.
      double cross = 0.0;
      for (int j = 0; j < d; ++j) {
        if (j != c) cross += precision(c, j) * (x[j] - mean[j]);
      }
      const double cmu = mean[c] - cross / lam;
      const double csd = 1.0 / std::sqrt(lam);
      x[c] = sample_truncated_univariate(cmu, csd, lower[c], upper[c], rng);
    }
  }
}

}  // namespace detail

void BoxTruncatedGaussian::validate() const {
  const int d = dim();
  if (precision.rows() != d || precision.cols() != d || lower.size() != d ||
      upper.size() != d) {
    fail(ErrorKind::DimensionMismatch, "BoxTruncatedGaussian: inconsistent sizes");
  }
  for (int c = 0; c < d; ++c) {
    if (!(lower[c] <= upper[c])) {
      fail(ErrorKind::InvalidArgument,
           "BoxTruncatedGaussian: lower > upper at coordinate " + std::to_string(c));
    }
  }
  const double scale = std::max(1.0, precision.cwiseAbs().maxCoeff());
  if ((precision - precision.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    fail(ErrorKind::InvalidArgument, "BoxTruncatedGaussian: precision not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(precision, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() < -1e-10 * scale) {
    fail(ErrorKind::InvalidArgument,
         "BoxTruncatedGaussian: precision has a negative eigenvalue");
  }
}

Vector sample_box_tmvn(const BoxTruncatedGaussian& dist, Vector current, int sweeps,
                       Rng& rng) {
  const int d = dist.dim();
  if (current.size() != d) {
    fail(ErrorKind::DimensionMismatch, "sample_box_tmvn: state size differs from dim");
  }
  if (sweeps < 1) fail(ErrorKind::InvalidArgument, "sample_box_tmvn: sweeps must be >= 1");
  for (int c = 0; c < d; ++c) {
    if (!(dist.lower[c] <= dist.upper[c])) {
      fail(ErrorKind::InvalidArgument, "sample_box_tmvn: lower > upper");
    }
    if (current[c] < dist.lower[c] || current[c] > dist.upper[c]) {
      fail(ErrorKind::InvalidArgument,
           "sample_box_tmvn: current state outside the box at coordinate " +
               std::to_string(c));
    }
  }
  detail::tmvn_sweeps_inplace(dist.precision, dist.mean, dist.lower, dist.upper,
                              current, sweeps, rng);
  return current;
}

}  // namespace bmc
