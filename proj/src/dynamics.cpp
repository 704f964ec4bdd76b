#include "cbo/dynamics.hpp"

#include <cmath>

#include "cbo/kernels.hpp"
#include "cbo/rng.hpp"
#include "cbo/vec.hpp"

namespace cbo {

void SimConfig::validate() const {
  if (!(lambda >= 0.0)) raise(ErrorCode::ValidationError, "lambda must be nonnegative");
  if (!(sigma >= 0.0)) raise(ErrorCode::ValidationError, "sigma must be nonnegative");
  if (!(alpha > 0.0)) raise(ErrorCode::ValidationError, "alpha must be positive");
  if (!(dt > 0.0)) raise(ErrorCode::ValidationError, "dt must be positive");
  if (!(t_max > 0.0)) raise(ErrorCode::ValidationError, "t_max must be positive");
  if (dt > t_max) raise(ErrorCode::ValidationError, "dt must not exceed t_max");
  if (n_particles < 1)
    raise(ErrorCode::ValidationError, "n_particles must be >= 1");
  if (objective.dim() != manifold.dim())
    raise(ErrorCode::ValidationError,
          "objective dimension does not match the manifold ambient dimension");
  if (stop.rule != StopRule::FixedHorizon && !(stop.eps > 0.0))
    raise(ErrorCode::ValidationError, "stopping threshold must be positive");
}

Ensemble make_initial_ensemble(const SimConfig& cfg) {
  Ensemble ens;
  ens.rng_seed = cfg.seed;
  ens.positions = cfg.manifold.sample_uniform(
      cfg.n_particles, rng::stream_key(cfg.seed, rng::kDomainInit, 0));
  ens.stream_ids.resize(cfg.n_particles);
  for (std::size_t i = 0; i < cfg.n_particles; ++i) ens.stream_ids[i] = i;
  return ens;
}

double em_step_with_consensus(Ensemble& ens, const SimConfig& cfg,
                              std::span<const double> v_alpha, bool project) {
  const std::size_t n = ens.positions.size();
  const std::size_t d = ens.positions.dim();
  if (v_alpha.size() != d)
    raise(ErrorCode::DimensionMismatch, "consensus point dimension mismatch");
  if (ens.stream_ids.size() != n)
    raise(ErrorCode::ValidationError, "ensemble stream ids out of sync");

  const Manifold& m = cfg.manifold;
  const double sqrt_dt = std::sqrt(cfg.dt);
  const double half_sigma_sq = 0.5 * cfg.sigma * cfg.sigma;

  std::vector<double> v(d), diff(d), grad(d), noise(d), vhat(d);
  double defect = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    ens.positions.get_row(i, v);
    vec::sub(v, v_alpha, diff);
    const double dist = vec::norm(diff);
    m.sdf_grad(v, grad);
    const double lap = m.sdf_laplacian(v);

    rng::fill_normals(rng::stream_key(ens.rng_seed, rng::kDomainBrownian,
                                      ens.stream_ids[i]),
                      ens.step, noise);
    for (double& z : noise) z *= sqrt_dt;

    const double grad_diff = vec::dot(grad, diff);
    const double grad_noise = vec::dot(grad, noise);
    const double corr = half_sigma_sq * dist * dist * lap * cfg.dt;
    for (std::size_t c = 0; c < d; ++c) {
      vhat[c] = v[c] - cfg.lambda * cfg.dt * (diff[c] - grad_diff * grad[c]) +
                cfg.sigma * dist * (noise[c] - grad_noise * grad[c]) -
                corr * grad[c];
    }
    if (!vec::all_finite(vhat))
      raise(ErrorCode::NonFiniteState,
            "particle state became non-finite at step " + std::to_string(ens.step));

    defect = std::max(defect, std::abs(m.sdf(vhat)));
    if (project) {
      m.closest_point(vhat, v);
      ens.positions.set_row(i, v);
    } else {
      ens.positions.set_row(i, vhat);
    }
  }

  ens.step += 1;
  ens.time = static_cast<double>(ens.step) * cfg.dt;
  return defect;
}

StepInfo em_step(Ensemble& ens, const SimConfig& cfg) {
  std::vector<double> energies(ens.positions.size());
  cfg.objective.eval_batch(ens.positions, energies);
  ConsensusPoint cp = consensus_point(ens.positions, energies, cfg.alpha);
  const double defect = em_step_with_consensus(ens, cfg, cp.point);
  return {std::move(cp), defect};
}

double ensemble_diameter(const PointsSoA& positions) {
  const std::size_t n = positions.size();
  const std::size_t d = positions.dim();
  std::vector<double> a(d), b(d);
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    positions.get_row(i, a);
    for (std::size_t j = i + 1; j < n; ++j) {
      positions.get_row(j, b);
      best = std::max(best, vec::distance(a, b));
    }
  }
  return best;
}

double max_gamma(const Manifold& m, const PointsSoA& positions) {
  std::vector<double> row(positions.dim());
  double worst = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    positions.get_row(i, row);
    worst = std::max(worst, std::abs(m.sdf(row)));
  }
  return worst;
}

namespace {

TraceRecord make_record(const Ensemble& ens, const SimConfig& cfg,
                        const ConsensusPoint& cp, std::span<const double> energies,
                        double defect) {
  TraceRecord rec;
  rec.step = ens.step;
  rec.t = ens.time;
  rec.consensus = cp.point;
  rec.consensus_energy = cfg.objective.eval(cp.point);
  rec.diameter = ensemble_diameter(ens.positions);
  rec.max_gamma_defect = defect;
  rec.mean_energy = kernels::reduce_sum(energies.data(), energies.size()) /
                    static_cast<double>(energies.size());
  return rec;
}

}  // namespace

RunTrace run(const SimConfig& cfg) {
  cfg.validate();
  Ensemble ens = make_initial_ensemble(cfg);
  const std::size_t n_steps =
      static_cast<std::size_t>(std::floor(cfg.t_max / cfg.dt + 1e-9));

  std::vector<double> energies(cfg.n_particles);
  cfg.objective.eval_batch(ens.positions, energies);
  ConsensusPoint cp = consensus_point(ens.positions, energies, cfg.alpha);

  RunTrace trace;
  trace.records.reserve(n_steps + 1);
  trace.records.push_back(
      make_record(ens, cfg, cp, energies, max_gamma(cfg.manifold, ens.positions)));

  for (std::size_t k = 0; k < n_steps; ++k) {
    // The consensus recorded for the current state is the drift target of
    // this step, so each step reuses the previous record's consensus point.
    const double defect = em_step_with_consensus(ens, cfg, cp.point);
    cfg.objective.eval_batch(ens.positions, energies);
    ConsensusPoint next = consensus_point(ens.positions, energies, cfg.alpha);
    trace.records.push_back(make_record(ens, cfg, next, energies, defect));

    const TraceRecord& rec = trace.records.back();
    if (cfg.stop.rule == StopRule::DiameterBelow && rec.diameter < cfg.stop.eps)
      break;
    if (cfg.stop.rule == StopRule::ConsensusResidualBelow &&
        vec::distance(next.point, cp.point) < cfg.stop.eps)
      break;
    cp = std::move(next);
  }
  return trace;
}

std::vector<DefectSample> manifold_defect_scaling(const SimConfig& cfg,
                                                  std::span<const double> dt_list,
                                                  std::size_t n_repeats) {
  if (dt_list.empty()) raise(ErrorCode::ValidationError, "dt list must be nonempty");
  for (std::size_t k = 0; k + 1 < dt_list.size(); ++k)
    if (!(dt_list[k] > dt_list[k + 1]))
      raise(ErrorCode::ValidationError, "dt list must be strictly decreasing");
  if (n_repeats < 1) raise(ErrorCode::ValidationError, "n_repeats must be >= 1");

  std::vector<DefectSample> out;
  out.reserve(dt_list.size());
  for (const double dt : dt_list) {
    SimConfig scan_cfg = cfg;
    scan_cfg.dt = dt;
    scan_cfg.validate();
    const std::size_t n_steps =
        static_cast<std::size_t>(std::floor(scan_cfg.t_max / dt + 1e-9));
    double acc = 0.0;
    for (std::size_t rep = 0; rep < n_repeats; ++rep) {
      scan_cfg.seed = rng::mix(cfg.seed, rep);
      Ensemble ens = make_initial_ensemble(scan_cfg);
      std::vector<double> energies(scan_cfg.n_particles);
      double worst = 0.0;
      for (std::size_t k = 0; k < n_steps; ++k) {
        scan_cfg.objective.eval_batch(ens.positions, energies);
        const ConsensusPoint cp =
            consensus_point(ens.positions, energies, scan_cfg.alpha);
        worst = std::max(
            worst, em_step_with_consensus(ens, scan_cfg, cp.point, false));
      }
      acc += worst;
    }
    out.push_back({dt, acc / static_cast<double>(n_repeats)});
  }
  return out;
}

}  // namespace cbo
