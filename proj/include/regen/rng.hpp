#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace regen {

using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream splitting rule. The seed of a stream is obtained by folding each
// identifier into the running state:
//
//   s_0 = mix64(master)
//   s_{i+1} = mix64(s_i ^ mix64(id_i))
//
// A stream is addressed by (master seed, purpose tag, cell, replication, ...),
// so the seed a replication receives never depends on which thread runs it.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> ids) noexcept {
  std::uint64_t s = mix64(master);
  for (std::uint64_t id : ids) s = mix64(s ^ mix64(id));
  return s;
}

inline Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> ids) {
  return Rng{derive_seed(master, ids)};
}

// Purpose tags used as the first stream identifier. Values are part of the
// reproducibility contract; do not renumber.
enum class StreamTag : std::uint64_t {
  Estimate = 1,
  Table1 = 2,
  Tau2 = 3,
  TwoStateCheck = 4,
  Confidence = 5,
  Validation = 6,
};

constexpr std::uint64_t tag(StreamTag t) noexcept { return static_cast<std::uint64_t>(t); }

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace regen
