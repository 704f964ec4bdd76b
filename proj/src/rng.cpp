#include "cbo/rng.hpp"

#include <cmath>
#include <numbers>

namespace cbo::rng {

namespace {

inline void mulhilo32(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo32(kMul0, counter[0], hi0, lo0);
    mulhilo32(kMul1, counter[2], hi1, lo1);
    counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return counter;
}

U64Pair philox2x64(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo) {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(ctr_lo), static_cast<std::uint32_t>(ctr_lo >> 32),
      static_cast<std::uint32_t>(ctr_hi), static_cast<std::uint32_t>(ctr_hi >> 32)};
  const std::array<std::uint32_t, 2> k = {static_cast<std::uint32_t>(key),
                                          static_cast<std::uint32_t>(key >> 32)};
  const auto out = philox4x32(ctr, k);
  return {static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32),
          static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void normal_pair(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t ctr_lo,
                 double& z0, double& z1) {
  const U64Pair u = philox2x64(key, ctr_hi, ctr_lo);
  const double r = std::sqrt(-2.0 * std::log(u01(u.a)));
  const double phi = 2.0 * std::numbers::pi * u01(u.b);
  z0 = r * std::cos(phi);
  z1 = r * std::sin(phi);
}

void fill_normals(std::uint64_t key, std::uint64_t ctr_hi, std::span<double> out) {
  std::uint64_t block = 0;
  std::size_t i = 0;
  while (i < out.size()) {
    double z0, z1;
    normal_pair(key, ctr_hi, block++, z0, z1);
    out[i++] = z0;
    if (i < out.size()) out[i++] = z1;
  }
}

double uniform01(std::uint64_t key, std::uint64_t ctr_hi, std::uint64_t index) {
  const U64Pair u = philox2x64(key, ctr_hi, index >> 1);
  return u01((index & 1) ? u.b : u.a);
}

}  // namespace cbo::rng
