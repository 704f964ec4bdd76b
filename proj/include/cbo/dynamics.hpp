#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cbo/consensus.hpp"
#include "cbo/manifold.hpp"
#include "cbo/objective.hpp"
#include "cbo/points.hpp"

namespace cbo {

/// ConsensusResidualBelow stops once consecutive consensus points are closer
/// than eps. At large alpha the consensus tracks the current best particle
/// and can be quasi-stationary long before the ensemble contracts, so
/// DiameterBelow is the more robust early-stopping choice there.
enum class StopRule { FixedHorizon, DiameterBelow, ConsensusResidualBelow };

struct StopConfig {
  StopRule rule = StopRule::FixedHorizon;
  double eps = 1e-4;  // threshold for the two early-stopping rules
};

struct SimConfig {
  double lambda = 1.0;  // drift rate; figure presets leave it at 1
  double sigma = 0.25;  // diffusion strength
  double alpha = 50.0;  // Laplace weight sharpness
  double dt = 0.05;
  double t_max = 5.0;
  std::size_t n_particles = 20;
  std::uint64_t seed = 0;
  Manifold manifold = Manifold::sphere(1.0, 3);
  Objective objective = Objective::ackley({0.0, 0.0, 1.0});
  StopConfig stop;

  void validate() const;  // ValidationError naming the offending field
};

/// Particle positions constrained to the surface. Brownian and sampling
/// streams are keyed by (rng_seed, stream_ids[i], step), so two ensembles
/// built with the same seed share increments index by index, and permuting
/// rows together with stream_ids permutes trajectories exactly.
struct Ensemble {
  PointsSoA positions;
  std::vector<std::uint64_t> stream_ids;
  std::uint64_t rng_seed = 0;
  std::uint64_t step = 0;
  double time = 0.0;
};

/// Samples n_particles i.i.d. uniform on the surface; stream_ids = 0..n-1.
Ensemble make_initial_ensemble(const SimConfig& cfg);

struct StepInfo {
  ConsensusPoint consensus;      // computed from the pre-step positions
  double pre_projection_defect;  // max_i |gamma(V_i)| before re-projection
};

/// One Euler-Maruyama step with the consensus point supplied by the caller:
///   V <- V - lambda dt P(V)(V - v_a) + sigma |V - v_a| P(V) dB
///          - (sigma^2/2) |V - v_a|^2 Laplacian(gamma)(V) grad(gamma)(V) dt,
/// followed by closest-point projection (unless project = false).
/// Returns the max pre-projection |gamma|. dB ~ Normal(0, dt I) is drawn from
/// the particle's stream at counter = current step.
double em_step_with_consensus(Ensemble& ens, const SimConfig& cfg,
                              std::span<const double> v_alpha,
                              bool project = true);

/// Standard step: evaluates energies, computes the consensus point from the
/// pre-step positions once, then advances every particle.
StepInfo em_step(Ensemble& ens, const SimConfig& cfg);

struct TraceRecord {
  std::size_t step = 0;
  double t = 0.0;
  std::vector<double> consensus;
  double consensus_energy = 0.0;
  double diameter = 0.0;          // max pairwise distance
  double max_gamma_defect = 0.0;  // pre-projection, for the step ending here
  double mean_energy = 0.0;
};

struct RunTrace {
  std::vector<TraceRecord> records;

  const TraceRecord& final_record() const {
    if (records.empty()) raise(ErrorCode::ValidationError, "empty trace");
    return records.back();
  }
};

/// Runs the full simulation; the trace has one record per state including
/// t = 0, and the final record's consensus point is the optimizer output.
/// Identical (cfg, seed) produce bit-identical traces on a given build.
RunTrace run(const SimConfig& cfg);

struct DefectSample {
  double dt;
  double max_defect;  // averaged over repeats of the per-run max |gamma|
};

/// Integrates WITHOUT the projection step for each dt in the (decreasing)
/// list and records the per-run maximum |gamma| over all particles and steps
/// up to t_max, averaged over n_repeats independent seeds. The continuous
/// dynamics conserves gamma exactly, so the defect must shrink as dt -> 0.
std::vector<DefectSample> manifold_defect_scaling(const SimConfig& cfg,
                                                  std::span<const double> dt_list,
                                                  std::size_t n_repeats = 16);

/// Max pairwise distance between particle positions.
double ensemble_diameter(const PointsSoA& positions);

/// Max |gamma| over the rows of an on-surface ensemble.
double max_gamma(const Manifold& m, const PointsSoA& positions);

}  // namespace cbo
