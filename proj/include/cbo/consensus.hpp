#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cbo/objective.hpp"
#include "cbo/points.hpp"

namespace cbo {

/// Weighted barycenter of the ensemble with Laplace weights exp(-alpha E).
/// Weights are computed with the energies shifted by their minimum, which is
/// algebraically identical and cannot overflow for any alpha. All reductions
/// run in a canonical value-sorted order, so the result is independent of
/// particle ordering (and hence bit-stable under index permutations).
struct ConsensusPoint {
  std::vector<double> point;
  /// log of the mean unshifted weight (1/N) sum exp(-alpha E_j); diagnostic.
  double log_normalizer = 0.0;
  /// Lowest index among particles attaining the minimal energy.
  std::size_t argmin_index = 0;
};

ConsensusPoint consensus_point(const PointsSoA& positions,
                               std::span<const double> energies, double alpha);

/// Normalized weights used by consensus_point, in particle order.
std::vector<double> consensus_weights(std::span<const double> energies,
                                      double alpha);

/// True iff |v_alpha| <= (1/N) exp(alpha (max E - min E)) sum_j |V_j| + 1e-9.
/// Compared in log space when the exponential overflows, in which case the
/// bound holds trivially.
bool consensus_growth_bound_check(const PointsSoA& positions,
                                  std::span<const double> energies, double alpha);

struct StabilityCheck {
  double difference_norm;  // |v_alpha(a) - v_alpha(b)|
  double w1_distance;      // exact Wasserstein-1 between the two atom sets
};

/// Compares the consensus points of two small uniform atomic measures against
/// their exact Wasserstein-1 distance (enumeration oracle, support <= 8).
StabilityCheck consensus_stability_check(const PointsSoA& measure_a,
                                         const PointsSoA& measure_b, double alpha,
                                         const Objective& objective);

}  // namespace cbo
