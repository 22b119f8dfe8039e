#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bmc {

// Standard-normal CDF, accurate in both tails (erfc based).
double normal_cdf(double x);

// Standard-normal quantile (inverse CDF), Wichura's AS241 rational
// approximation, full double precision. p must lie in (0, 1).
double normal_quantile(double p);

// Standard-normal density.
double normal_pdf(double x);

// Deterministic random stream. All draws are derived from explicit 53-bit
// uniforms pulled from a mt19937_64 engine, so a (seed, label) pair pins the
// entire trajectory bit-exactly; none of the implementation-defined
// std::*_distribution adaptors are used.
//
// Substreams: child = Rng(splitmix64(splitmix64(parent_seed ^ fnv1a64(label)) + index)).
// Labels are module/chain/replication names; independent labels give
// independent streams for any number of parallel workers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Derived, statistically independent substream.
  Rng derive(std::string_view label, std::uint64_t index = 0) const;
  static std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                   std::uint64_t index = 0);

  std::uint64_t seed() const noexcept { return seed_; }

  // Uniform on [0, 1) with 53 random bits.
  double u01();
  // Uniform on (0, 1); safe to feed into log or normal_quantile.
  double u01_open();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via inverse CDF (one engine call per draw).
  double normal();
  // Exponential with the given rate.
  double exponential(double rate);
  // Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape > 0.
  double gamma(double shape);
  // Inverse gamma with shape a and scale b.
  double inverse_gamma(double shape, double scale);
  // Student t with dof degrees of freedom.
  double student_t(double dof);
  // Index into a cumulative-weight categorical; weights need not be
  // normalized. Returns 0-based index.
  int categorical(const double* weights, int count);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace bmc
