#pragma once

// SplitMix64 stream with Box-Muller normals. Every random quantity in the
// toolkit is drawn from this generator so runs are reproducible from a seed.

#include <cstddef>
#include <cstdint>

namespace ripkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();
  // Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n);

  // Independent child stream for sub-task `index`.
  Rng split(std::uint64_t index) const { return Rng(mix_seed(state_, index)); }

  static std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ripkit
