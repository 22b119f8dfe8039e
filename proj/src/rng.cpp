#include "bmc/rng.hpp"

#include <cmath>

#include "bmc/error.hpp"

namespace bmc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    fail(ErrorKind::Numeric, "normal_quantile: p outside (0,1)");
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r +
                4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r +
              1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r +
                2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r +
              6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r +
            1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r +
             1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r +
           5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r +
         1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r +
             1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r +
           1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r +
         1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r +
             2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r +
           1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r +
         6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r +
             7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r +
           1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r +
         1.0);
  }
  return (q < 0.0) ? -x : x;
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

std::uint64_t Rng::derive_seed(std::uint64_t seed, std::string_view label,
                               std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ fnv1a64(label)) + index);
}

Rng Rng::derive(std::string_view label, std::uint64_t index) const {
  return Rng(derive_seed(seed_, label, index));
}

double Rng::u01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::u01_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * u01();
}

double Rng::normal() {
  return normal_quantile(u01_open());
}

double Rng::exponential(double rate) {
  if (!(rate > 0.0)) fail(ErrorKind::InvalidArgument, "exponential: rate must be > 0");
  return -std::log1p(-u01()) / rate;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) fail(ErrorKind::InvalidArgument, "gamma: shape must be > 0");
  if (shape < 1.0) {
    // Boost to shape+1 and scale back.
    const double g = gamma(shape + 1.0);
    return g * std::pow(u01_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = u01_open();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::inverse_gamma(double shape, double scale) {
  if (!(scale > 0.0)) fail(ErrorKind::InvalidArgument, "inverse_gamma: scale must be > 0");
  return scale / gamma(shape);
}

double Rng::student_t(double dof) {
  if (!(dof > 0.0)) fail(ErrorKind::InvalidArgument, "student_t: dof must be > 0");
  const double z = normal();
  const double chi2 = 2.0 * gamma(0.5 * dof);
  return z / std::sqrt(chi2 / dof);
}

int Rng::categorical(const double* weights, int count) {
  if (count <= 0) fail(ErrorKind::InvalidArgument, "categorical: empty weight vector");
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    if (!(weights[i] >= 0.0)) {
      fail(ErrorKind::InvalidArgument, "categorical: negative weight");
    }
    total += weights[i];
  }
  if (!(total > 0.0)) fail(ErrorKind::InvalidArgument, "categorical: zero total weight");
  const double u = u01() * total;
  double acc = 0.0;
  for (int i = 0; i < count; ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return count - 1;
}

}  // namespace bmc
