// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace spherecalc {

/// Philox4x32-10 counter-based block generator. Each (key, counter) pair maps
/// to an independent 128-bit block, which makes per-sample substreams trivial:
/// sample index goes into the counter, the seed into the key. Streams are
/// reproducible regardless of how samples are distributed over workers.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::uint64_t key, std::uint64_t ctr_lo,
                                            std::uint64_t ctr_hi) {
    std::uint32_t x0 = static_cast<std::uint32_t>(ctr_lo);
    std::uint32_t x1 = static_cast<std::uint32_t>(ctr_lo >> 32);
    std::uint32_t x2 = static_cast<std::uint32_t>(ctr_hi);
    std::uint32_t x3 = static_cast<std::uint32_t>(ctr_hi >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x0;
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t y0 = hi1 ^ x1 ^ k0;
      const std::uint32_t y1 = lo1;
      const std::uint32_t y2 = hi0 ^ x3 ^ k1;
      const std::uint32_t y3 = lo0;
      x0 = y0;
      x1 = y1;
      x2 = y2;
      x3 = y3;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    return {x0, x1, x2, x3};
  }
};

/// Deterministic substream of uniforms/gaussians for one sample index.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index)
      : seed_(seed), index_(index), block_(0), pos_(2), have_gauss_(false), gauss_(0.0) {}

  /// Uniform in the open interval (0, 1).
  double uniform() {
    if (pos_ >= 2) {
      words_ = Philox4x32::block(seed_, index_, block_++);
      pos_ = 0;
    }
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(words_[2 * pos_]) << 32) | words_[2 * pos_ + 1];
    ++pos_;
    // 53-bit mantissa, shifted off zero so log() is safe
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the Box-Muller pair; the second value is cached.
  double gaussian() {
    if (have_gauss_) {
      have_gauss_ = false;
      return gauss_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    gauss_ = r * std::sin(a);
    have_gauss_ = true;
    return r * std::cos(a);
  }

  void fill_gaussian(Eigen::VectorXd& out) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = gaussian();
  }

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t block_;
  std::array<std::uint32_t, 4> words_{};
  int pos_;
  bool have_gauss_;
  double gauss_;
};

/// Stable 64-bit mix used to derive per-check sub-seeds from (seed, tag).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed ^ (tag + 0x9E3779B97F4A7C15ull + (seed << 6) + (seed >> 2));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// FNV-1a of a string, for deriving stable tags from check names.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace spherecalc
