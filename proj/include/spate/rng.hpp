#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace spate {

// Counter-style keyed RNG. A stream is identified by a 64-bit key plus a
// path of integer context labels (fold, sample, seed index, ...). Identical
// (key, path) pairs always produce the identical sequence, independent of
// how many other streams were created or in what order, so per-item streams
// can be handed to parallel workers without losing reproducibility.
class RngStream {
 public:
  static RngStream from_key(std::uint64_t key) { return RngStream(mix(key)); }

  // Derive the sub-stream for one context label.
  RngStream child(std::uint64_t label) const {
    return RngStream(mix(state_ ^ mix(label ^ 0xda942042e4dd58b5ULL)));
  }

  std::uint64_t next_u64() {
    return mix(state_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform in (0, 1]; never returns 0 so it is safe inside log().
  double next_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller on the stream's uniform output.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  // Uniform integer in [0, bound) by rejection, bias-free.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

 private:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spate
