#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>

namespace gravbath {

/// Splittable RNG used for every stochastic quantity in the library. Streams
/// are keyed by (seed, stream_index): the key is expanded with SplitMix64
/// into four xoshiro256+ lanes whose outputs are interleaved round-robin
/// through a small buffer. The four independent lanes break the generator's
/// serial dependency chain, which matters in the particle-sampling hot loop.
/// Both algorithms are fully specified; results are identical across
/// platforms and worker counts.
///
/// Algorithm string for output metadata: see Rng::kAlgorithm.
class Rng {
 public:
  static constexpr const char* kAlgorithm =
      "xoshiro256+ x4 interleaved, keyed by splitmix64(seed,stream)";

  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t sm = seed;
    sm = splitmix64(sm) ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    for (int word = 0; word < 4; ++word) {
      for (int lane = 0; lane < 4; ++lane) state_[word][lane] = splitmix64(sm);
    }
    for (int lane = 0; lane < 4; ++lane) {
      if ((state_[0][lane] | state_[1][lane] | state_[2][lane] | state_[3][lane]) == 0) {
        state_[0][lane] = 0x8764000B3C5A7191ULL;  // xoshiro forbids the zero state
      }
    }
    pos_ = kBuf;
  }

  std::uint64_t next_u64() {
    if (pos_ == kBuf) refill();
    return buf_[pos_++];
  }

  /// Uniform in [0,1), 53 significant bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1,1) on a 2^-51 grid. Builds a double in [1,2) directly
  /// from 52 mantissa bits, avoiding the integer-to-double conversion latency
  /// that dominates the position-sampling loop.
  static double symmetric_from_bits(std::uint64_t u) {
    const double d =
        std::bit_cast<double>((u & 0xFFFFFFFFFFFFFULL) | 0x3FF0000000000000ULL);
    return d * 2.0 - 3.0;
  }

  /// Uniform in [-1,1).
  double uniform_symmetric() { return symmetric_from_bits(next_u64()); }

  /// Standard normal via Box-Muller; one spare value is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
    const double phi = 6.283185307179586476925286766559 * uniform();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  /// Poisson(mean). Knuth's product method below mean 10, Hormann's PTRS
  /// transformed rejection above it.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
      const double limit = std::exp(-mean);
      std::uint64_t k = 0;
      double p = uniform();
      while (p > limit) {
        ++k;
        p *= uniform();
      }
      return k;
    }
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
      double u = uniform() - 0.5;
      const double v = uniform();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * log_mean - mean - std::lgamma(kf + 1.0)) {
        return static_cast<std::uint64_t>(kf);
      }
    }
  }

 private:
  static constexpr int kBuf = 16;

  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  void refill() {
    for (int round = 0; round < kBuf / 4; ++round) {
      for (int lane = 0; lane < 4; ++lane) {
        buf_[4 * round + lane] = state_[0][lane] + state_[3][lane];
      }
      std::uint64_t t[4];
      for (int lane = 0; lane < 4; ++lane) t[lane] = state_[1][lane] << 17;
      for (int lane = 0; lane < 4; ++lane) state_[2][lane] ^= state_[0][lane];
      for (int lane = 0; lane < 4; ++lane) state_[3][lane] ^= state_[1][lane];
      for (int lane = 0; lane < 4; ++lane) state_[1][lane] ^= state_[2][lane];
      for (int lane = 0; lane < 4; ++lane) state_[0][lane] ^= state_[3][lane];
      for (int lane = 0; lane < 4; ++lane) state_[2][lane] ^= t[lane];
      for (int lane = 0; lane < 4; ++lane) state_[3][lane] = rotl(state_[3][lane], 45);
    }
    pos_ = 0;
  }

  alignas(32) std::uint64_t state_[4][4];  // [word][lane]
  alignas(32) std::uint64_t buf_[kBuf];
  int pos_ = kBuf;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gravbath
