#pragma once

// SplitMix64: output k of a stream is mix(seed + (k + 1) * golden), so every
// draw is a pure function of (seed, counter). split() derives independent
// child streams.

#include <cstdint>

#include "pnts/rational.hpp"

namespace pnts {

class SplitMix64 {
public:
  static constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed = 0) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() { return mix(seed_ + (++counter_) * golden); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  /// Independent stream keyed by `stream`; does not advance this one.
  SplitMix64 split(std::uint64_t stream) const {
    return SplitMix64(mix(seed_ ^ mix(stream + golden)));
  }

  /// Uniform integer in [lo, hi], without modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>((*this)());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do r = (*this)(); while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  bool coin(std::int64_t num, std::int64_t den) { return uniform_int(0, den - 1) < num; }

  /// k/d with d in [1, max_den] and the value in [lo, hi].
  Rational rational(long lo, long hi, long max_den) {
    const long d = static_cast<long>(uniform_int(1, max_den));
    const long k = static_cast<long>(uniform_int(lo * d, hi * d));
    return Rational(k, d);
  }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace pnts
