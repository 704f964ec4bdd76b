#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "cbo/rng.hpp"

using namespace cbo;

TEST_SUITE("rng") {

TEST_CASE("philox4x32-10 reference vectors") {
  // Known-answer vectors for the reference parameterization.
  const auto zero = rng::philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du,
                                             0xbc57ac4cu, 0x9b00dbd8u});
  const auto ones = rng::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu,
                                     0xffffffffu},
                                    {0xffffffffu, 0xffffffffu});
  CHECK(ones == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu,
                                             0xa20bc7c6u, 0x6d5451fdu});
  const auto pi = rng::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu,
                                   0x03707344u},
                                  {0xa4093822u, 0x299f31d0u});
  CHECK(pi == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu,
                                           0x5001e420u, 0x24126ea1u});
}

TEST_CASE("draws are pure functions of key and counter") {
  const auto a = rng::philox2x64(42, 7, 9);
  const auto b = rng::philox2x64(42, 7, 9);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
  CHECK(rng::philox2x64(42, 7, 10).a != a.a);
  CHECK(rng::philox2x64(43, 7, 9).a != a.a);

  std::vector<double> x(5), y(5);
  rng::fill_normals(11, 3, x);
  rng::fill_normals(11, 3, y);
  CHECK(x == y);
  rng::fill_normals(11, 4, y);
  CHECK(x != y);
}

TEST_CASE("uniform01 stays inside the open unit interval") {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double v = rng::uniform01(99, i, i % 3);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("normals have standard moments") {
  const std::size_t n = 2'000'000;
  std::vector<double> buf(4);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < n / 4; ++i) {
    rng::fill_normals(rng::stream_key(123, rng::kDomainBrownian, i), 0, buf);
    for (double z : buf) {
      sum += z;
      sum_sq += z * z;
    }
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 3e-3);
  CHECK(std::abs(var - 1.0) < 5e-3);
}

TEST_CASE("stream keys separate domains and ids") {
  CHECK(rng::stream_key(1, rng::kDomainInit, 0) !=
        rng::stream_key(1, rng::kDomainBrownian, 0));
  CHECK(rng::stream_key(1, rng::kDomainInit, 0) !=
        rng::stream_key(1, rng::kDomainInit, 1));
  CHECK(rng::stream_key(1, rng::kDomainInit, 0) !=
        rng::stream_key(2, rng::kDomainInit, 0));
}

}  // TEST_SUITE
