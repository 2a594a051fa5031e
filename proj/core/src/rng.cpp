#include "fptk/rng.hpp"

#include <cmath>
#include <numbers>

namespace fptk::sim {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed, std::uint64_t stream_id) {
  // Chain the seed and the stream id through splitmix so that nearby ids
  // land in unrelated regions of the state space.
  std::uint64_t sm = seed;
  const std::uint64_t a = splitmix64(sm);
  sm ^= stream_id * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL;
  for (auto& s : s_) s = splitmix64(sm);
  s_[0] ^= a;
  // xoshiro dislikes the all-zero state; splitmix output makes it
  // astronomically unlikely, but guard anyway.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[3] = 0x1ULL;
  for (int i = 0; i < 4; ++i) next_u64();
}

std::uint64_t Xoshiro256pp::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256pp::next_uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t stream_id)
    : rng_(seed, stream_id) {}

double GaussianStream::next() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  const double u1 = rng_.next_uniform();
  const double u2 = rng_.next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(angle);
  have_cached_ = true;
  return r * std::cos(angle);
}

}  // namespace fptk::sim
