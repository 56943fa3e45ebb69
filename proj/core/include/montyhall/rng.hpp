#pragma once

#include <cstdint>

#include "montyhall/rational.hpp"

namespace montyhall::rng {

/// SplitMix64 (Steele, Lea, Flood). Tiny state, fully specified output
/// sequence, so transcripts are reproducible on any platform.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed for replication `index` of a batch started from `master`.
/// seed_i = mix(master ^ mix(index + 1)); counter based, so any partition of
/// the index range reproduces the same per-replication seeds.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return SplitMix64::mix(master ^ SplitMix64::mix(index + 1));
}

/// Maps a raw 64-bit word onto {0, ..., n-1} by fixed-point multiplication.
constexpr unsigned bounded(std::uint64_t word, unsigned n) {
  return static_cast<unsigned>((static_cast<unsigned __int128>(word) * n) >> 64);
}

/// True iff word / 2^64 < p. Exact comparison against the rational value.
inline bool bernoulli(std::uint64_t word, const Probability& p) {
  const Rational& v = p.value();
  return (static_cast<unsigned __int128>(word) * static_cast<std::uint64_t>(v.den())) <
         (static_cast<unsigned __int128>(static_cast<std::uint64_t>(v.num())) << 64);
}

}  // namespace montyhall::rng
