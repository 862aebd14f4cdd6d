#pragma once

#include <cstdint>
#include <vector>

#include "topmg/material.hpp"

namespace topmg {

/// 64-bit linear congruential generator with Knuth's MMIX constants
/// (a = 6364136223846793005, c = 1442695040888963407, modulus 2^64).
/// Used wherever a run must be reproducible bit-for-bit across machines.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ = 6364136223846793005ULL * state_ + 1442695040888963407ULL;
    return state_;
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Per-cell uniforms in cell order.
std::vector<double> uniform_field(index_t count, std::uint64_t seed);

/// Frozen benchmark design: LCG uniforms, `smoothing_passes` sweeps of
/// 7-point neighbor averaging (which grows connected blobs instead of
/// salt-and-pepper noise), then the ceil(vstar*M) largest values binarized to
/// 1 and the rest to 0. Deterministic for a given seed and grid.
DesignField frozen_bench_design(const GridSpec& grid, double vstar,
                                std::uint64_t seed, int smoothing_passes = 2);

}  // namespace topmg
