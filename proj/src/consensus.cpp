#include "cbo/consensus.hpp"

#include <algorithm>
#include <cmath>

#include "cbo/kernels.hpp"
#include "cbo/transport.hpp"
#include "cbo/vec.hpp"

namespace cbo {

namespace {

void validate_inputs(std::size_t n, std::span<const double> energies, double alpha) {
  if (n == 0) raise(ErrorCode::EmptyEnsemble, "consensus of an empty ensemble");
  if (energies.size() != n)
    raise(ErrorCode::DimensionMismatch, "one energy per particle required");
  if (!(alpha > 0.0)) raise(ErrorCode::ValidationError, "alpha must be positive");
  for (double e : energies)
    if (!std::isfinite(e)) raise(ErrorCode::NonFiniteEnergy, "non-finite energy value");
}

double sorted_sum(std::vector<double>& scratch) {
  std::sort(scratch.begin(), scratch.end());
  return kernels::reduce_sum(scratch.data(), scratch.size());
}

}  // namespace

ConsensusPoint consensus_point(const PointsSoA& positions,
                               std::span<const double> energies, double alpha) {
  const std::size_t n = positions.size();
  const std::size_t d = positions.dim();
  validate_inputs(n, energies, alpha);

  const double e_min = kernels::reduce_min(energies.data(), n);
  std::size_t argmin = 0;
  while (energies[argmin] != e_min) ++argmin;

  std::vector<double> weights(n);
  kernels::exp_weights(energies.data(), n, alpha, e_min, weights.data());

  std::vector<double> scratch(weights);
  const double w_sum = sorted_sum(scratch);

  ConsensusPoint cp;
  cp.point.resize(d);
  for (std::size_t c = 0; c < d; ++c) {
    kernels::multiply(weights.data(), positions.col(c), scratch.data(), n);
    cp.point[c] = sorted_sum(scratch) / w_sum;
  }
  cp.log_normalizer = std::log(w_sum / static_cast<double>(n)) - alpha * e_min;
  cp.argmin_index = argmin;
  return cp;
}

std::vector<double> consensus_weights(std::span<const double> energies,
                                      double alpha) {
  const std::size_t n = energies.size();
  validate_inputs(n, energies, alpha);
  const double e_min = kernels::reduce_min(energies.data(), n);
  std::vector<double> weights(n);
  kernels::exp_weights(energies.data(), n, alpha, e_min, weights.data());
  std::vector<double> scratch(weights);
  const double w_sum = sorted_sum(scratch);
  for (double& w : weights) w /= w_sum;
  return weights;
}

bool consensus_growth_bound_check(const PointsSoA& positions,
                                  std::span<const double> energies, double alpha) {
  const std::size_t n = positions.size();
  const std::size_t d = positions.dim();
  const ConsensusPoint cp = consensus_point(positions, energies, alpha);

  double norm_sum = 0.0;
  std::vector<double> row(d);
  for (std::size_t i = 0; i < n; ++i) {
    positions.get_row(i, row);
    norm_sum += vec::norm(row);
  }
  const double spread = kernels::reduce_max(energies.data(), n) -
                        kernels::reduce_min(energies.data(), n);
  const double log_bound =
      alpha * spread + std::log(norm_sum / static_cast<double>(n));
  if (log_bound > 700.0) return true;  // bound exceeds the double range
  return vec::norm(cp.point) <= std::exp(log_bound) + 1e-9;
}

StabilityCheck consensus_stability_check(const PointsSoA& measure_a,
                                         const PointsSoA& measure_b, double alpha,
                                         const Objective& objective) {
  if (measure_a.size() > kWassersteinOracleLimit ||
      measure_b.size() > kWassersteinOracleLimit)
    raise(ErrorCode::OracleLimitExceeded,
          "stability check is limited to supports of at most 8 atoms");
  std::vector<double> ea(measure_a.size()), eb(measure_b.size());
  objective.eval_batch(measure_a, ea);
  objective.eval_batch(measure_b, eb);
  const ConsensusPoint ca = consensus_point(measure_a, ea, alpha);
  const ConsensusPoint cb = consensus_point(measure_b, eb, alpha);
  return {vec::distance(ca.point, cb.point),
          wasserstein1_exact(measure_a, measure_b)};
}

}  // namespace cbo
