#include "bmc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bmc {

void NoiseSpec::validate() const {
  if (!(sigma > 0.0)) fail(ErrorKind::InvalidConfig, "NoiseSpec: sigma must be > 0");
  if (!(xi > 0.0)) fail(ErrorKind::InvalidConfig, "NoiseSpec: xi must be > 0");
}

void BoundInputs::validate() const {
  noise.validate();
  if (m < 1 || p < 1) fail(ErrorKind::InvalidConfig, "BoundInputs: dimensions must be >= 1");
  if (n < std::max(m, p)) {
    fail(ErrorKind::InvalidConfig, "BoundInputs: requires n >= max(m,p), got n = " +
                                       std::to_string(n));
  }
  if (rank < 0 || rank > std::min(m, p)) {
    fail(ErrorKind::InvalidConfig, "BoundInputs: rank outside 0..min(m,p)");
  }
  if (!(approx_error >= 0.0)) {
    fail(ErrorKind::InvalidConfig, "BoundInputs: approx_error must be >= 0");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    fail(ErrorKind::InvalidConfig, "BoundInputs: epsilon must lie in (0,1)");
  }
  if (!(L > 0.0)) fail(ErrorKind::InvalidConfig, "BoundInputs: L must be > 0");
  if (!(tau > 0.0 && tau < 1.0)) {
    fail(ErrorKind::InvalidConfig, "BoundInputs: tau must lie in (0,1)");
  }
}

double constant_C(double L, const NoiseSpec& noise) {
  noise.validate();
  if (!(L > 0.0)) fail(ErrorKind::InvalidConfig, "constant_C: L must be > 0");
  const double bernstein = 12.0 * L * (2.0 * noise.xi + 3.0 * L);
  const double variance = 8.0 * noise.sigma * noise.sigma + 18.0 * L * L;
  return std::max(bernstein, variance);
}

double lambda_star(long n, double L, const NoiseSpec& noise) {
  if (n < 1) fail(ErrorKind::InvalidConfig, "lambda_star: n must be >= 1");
  return static_cast<double>(n) / (2.0 * constant_C(L, noise));
}

double lambda_experiment(long n) {
  if (n < 1) fail(ErrorKind::InvalidConfig, "lambda_experiment: n must be >= 1");
  return static_cast<double>(n) / 4.0;
}

double lambda_gauss(long n, double sigma) {
  if (n < 1) fail(ErrorKind::InvalidConfig, "lambda_gauss: n must be >= 1");
  if (!(sigma > 0.0)) fail(ErrorKind::InvalidConfig, "lambda_gauss: sigma must be > 0");
  return static_cast<double>(n) / (2.0 * sigma * sigma);
}

AuxiliaryConstants auxiliary_constants(double lambda, long n, double L,
                                       const NoiseSpec& noise) {
  noise.validate();
  if (n < 1) fail(ErrorKind::InvalidConfig, "auxiliary_constants: n must be >= 1");
  if (!(L > 0.0)) fail(ErrorKind::InvalidConfig, "auxiliary_constants: L must be > 0");
  AuxiliaryConstants out;
  out.w = 12.0 * L * (2.0 * noise.xi + 3.0 * L);
  out.C_sigma_L = 2.0 * (4.0 * noise.sigma * noise.sigma + 9.0 * L * L);
  if (!(lambda > 0.0 && lambda < static_cast<double>(n) / out.w)) {
    fail(ErrorKind::InvalidArgument,
         "auxiliary_constants: lambda must lie in (0, n/w) = (0, " +
             std::to_string(static_cast<double>(n) / out.w) + ")");
  }
  const double correction =
      lambda * lambda * out.C_sigma_L /
      (2.0 * static_cast<double>(n) * (1.0 - out.w * lambda / static_cast<double>(n)));
  out.alpha = lambda - correction;
  out.beta = lambda + correction;
  return out;
}

namespace {

double bound_impl(const BoundInputs& in, bool sharp_log) {
  in.validate();
  const double n = static_cast<double>(in.n);
  const double mp = static_cast<double>(in.m + in.p);
  const double C = constant_C(in.L, in.noise);
  const double dim_term =
      in.L * in.L * mp / (18.0 * n) * (mp / (9.0 * n) + 3.0);
  const double log_factor =
      sharp_log ? std::log(36.0 * n / mp)
                : std::log(36.0 * static_cast<double>(std::min(in.m, in.p)));
  const double tau_term =
      sharp_log ? 2.0 * std::log(in.tau / (1.0 - in.tau))
                : 2.0 * std::log(1.0 / (1.0 - in.tau));
  const double complexity =
      0.5 * mp * in.rank * log_factor + std::log(2.0 / in.epsilon) +
      2.0 * in.rank * std::log(1.0 / in.tau) + tau_term;
  return 3.0 * (dim_term + in.approx_error) + (8.0 * C / n) * complexity;
}

}  // namespace

double oracle_bound(const BoundInputs& inputs) { return bound_impl(inputs, true); }

double oracle_bound_log_k(const BoundInputs& inputs) { return bound_impl(inputs, false); }

}  // namespace bmc
