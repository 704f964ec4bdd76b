#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace cbo::rng {

/// Counter-based randomness. Every draw is a pure function of
/// (stream key, counter), so streams keyed by (seed, domain, particle index)
/// can be evaluated in any order, in parallel, and replayed exactly.

/// Philox4x32-10 block cipher (Salmon et al. reference constants).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

struct U64Pair {
  std::uint64_t a;
  std::uint64_t b;
};

/// One Philox block viewed as two 64-bit words; counter = (hi, lo).
U64Pair philox2x64(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo);

/// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a + 0x9E3779B97F4A7C15ULL) ^ b);
}

/// Key for an independent stream identified by (seed, domain, id).
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t domain,
                                std::uint64_t id) {
  return mix(mix(seed, domain), id);
}

// Domain tags keeping unrelated uses of the same (seed, id) decorrelated.
inline constexpr std::uint64_t kDomainInit = 0x496E6974;       // initial sampling
inline constexpr std::uint64_t kDomainBrownian = 0x42726F77;   // Brownian increments
inline constexpr std::uint64_t kDomainExperiment = 0x45787065; // experiment sub-seeds

/// Uniform in the open interval (0,1); never returns 0 or 1.
inline double u01(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal pair via Box-Muller from counter block (ctr_hi, ctr_lo).
void normal_pair(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo,
                 double& z0, double& z1);

/// Fills out with i.i.d. standard normals drawn from blocks
/// (ctr_hi, 0), (ctr_hi, 1), ... of the given stream.
void fill_normals(std::uint64_t key, std::uint64_t ctr_hi, std::span<double> out);

/// Uniform (0,1) draw number `index` of block `ctr_hi`.
double uniform01(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t index);

}  // namespace cbo::rng
