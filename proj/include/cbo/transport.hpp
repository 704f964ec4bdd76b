#pragma once

#include <cstddef>

#include "cbo/points.hpp"

namespace cbo {

inline constexpr std::size_t kWassersteinOracleLimit = 8;

/// Exact Wasserstein-1 distance between two uniform atomic measures with the
/// same number of atoms m <= 8: (1/m) min over permutations of the summed
/// pairing distances, by exhaustive enumeration. Deliberately small so the
/// oracle is trivially correct.
double wasserstein1_exact(const PointsSoA& a, const PointsSoA& b);

}  // namespace cbo
