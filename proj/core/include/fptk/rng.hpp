#ifndef FPTK_RNG_HPP
#define FPTK_RNG_HPP

#include <cstdint>

namespace fptk::sim {

/// splitmix64 step; used for seeding and stream derivation.
std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256++ with a per-(seed, stream) state. Streams with distinct ids
/// are derived through independent splitmix64 chains, so path j can always
/// use stream j regardless of how paths are scheduled across workers.
class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform in the open interval (0, 1), 53-bit resolution, never 0.
  double next_uniform();

 private:
  std::uint64_t s_[4];
};

/// Deterministic stream of standard normal variates: Box-Muller pairs over
/// xoshiro256++ uniforms. Same (seed, stream_id) always reproduces the same
/// sequence; distinct stream ids are statistically independent.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream_id);

  double next();

 private:
  Xoshiro256pp rng_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace fptk::sim

#endif  // FPTK_RNG_HPP
