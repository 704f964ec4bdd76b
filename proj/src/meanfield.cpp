#include "cbo/meanfield.hpp"

#include <cmath>

#include "cbo/parallel.hpp"
#include "cbo/rng.hpp"
#include "cbo/vec.hpp"

namespace cbo {

namespace {

constexpr std::uint64_t kDomainReference = 0x52656600;

void validate_repeats(std::size_t n_repeats) {
  if (n_repeats < 10)
    raise(ErrorCode::InsufficientRepeats, "at least 10 repeats required");
}

void validate_n_values(std::span<const std::size_t> n_values,
                       std::size_t m_reference) {
  if (n_values.empty()) raise(ErrorCode::ValidationError, "empty N list");
  for (std::size_t k = 0; k + 1 < n_values.size(); ++k)
    if (!(n_values[k] < n_values[k + 1]))
      raise(ErrorCode::ValidationError, "N values must be strictly increasing");
  if (m_reference < n_values.back())
    raise(ErrorCode::ValidationError,
          "m_reference must dominate the largest probed N");
}

std::uint64_t sub_seed(std::uint64_t seed, std::size_t n, std::size_t repeat) {
  return rng::mix(rng::mix(rng::mix(seed, rng::kDomainExperiment), n), repeat);
}

std::size_t steps_for(double t_check, double dt) {
  const auto steps = static_cast<std::size_t>(std::floor(t_check / dt + 1e-9));
  if (steps < 1)
    raise(ErrorCode::ValidationError, "t_check must cover at least one step");
  return steps;
}

}  // namespace

RateEstimate fit_rate(std::span<const std::size_t> n_values,
                      std::span<const double> mse_values, std::size_t n_repeats) {
  const std::size_t m = n_values.size();
  if (m < 3 || mse_values.size() != m)
    raise(ErrorCode::ValidationError, "rate fit needs >= 3 (N, mse) pairs");
  if (n_values.back() < 16 * n_values.front())
    raise(ErrorCode::ValidationError, "N values must span at least a factor 16");
  for (double v : mse_values)
    if (!(v > 0.0) || !std::isfinite(v))
      raise(ErrorCode::ValidationError,
            "rate fit requires positive finite mse values");

  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += std::log(static_cast<double>(n_values[i]));
    sy += std::log(mse_values[i]);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(static_cast<double>(n_values[i])) - mx;
    const double dy = std::log(mse_values[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  RateEstimate est;
  est.n_values.assign(n_values.begin(), n_values.end());
  est.mse_values.assign(mse_values.begin(), mse_values.end());
  est.n_repeats = n_repeats;
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double fit = est.intercept + est.slope * std::log(static_cast<double>(n_values[i]));
    const double r = std::log(mse_values[i]) - fit;
    ssr += r * r;
  }
  est.conf_halfwidth =
      m > 2 ? 1.96 * std::sqrt(ssr / static_cast<double>(m - 2) / sxx) : 0.0;
  return est;
}

std::vector<double> consensus_lln_mse(const Manifold& manifold,
                                      const Objective& objective, double alpha,
                                      std::span<const std::size_t> n_values,
                                      std::size_t n_repeats,
                                      std::size_t m_reference, std::uint64_t seed,
                                      std::size_t n_threads) {
  validate_repeats(n_repeats);
  validate_n_values(n_values, m_reference);

  const PointsSoA ref =
      manifold.sample_uniform(m_reference, rng::mix(seed, kDomainReference));
  std::vector<double> ref_energies(m_reference);
  objective.eval_batch(ref, ref_energies);
  const std::vector<double> v_ref =
      consensus_point(ref, ref_energies, alpha).point;

  std::vector<double> mse(n_values.size());
  for (std::size_t a = 0; a < n_values.size(); ++a) {
    const std::size_t n = n_values[a];
    std::vector<double> sq_err(n_repeats);
    parallel_for(0, n_repeats, n_threads, [&](std::size_t rep) {
      const PointsSoA pts = manifold.sample_uniform(n, sub_seed(seed, n, rep));
      std::vector<double> energies(n);
      objective.eval_batch(pts, energies);
      const ConsensusPoint cp = consensus_point(pts, energies, alpha);
      const double dist = vec::distance(cp.point, v_ref);
      sq_err[rep] = dist * dist;
    });
    double acc = 0.0;
    for (double e : sq_err) acc += e;
    mse[a] = acc / static_cast<double>(n_repeats);
  }
  return mse;
}

RateEstimate consensus_lln_rate(const Manifold& manifold,
                                const Objective& objective, double alpha,
                                std::span<const std::size_t> n_values,
                                std::size_t n_repeats, std::size_t m_reference,
                                std::uint64_t seed, std::size_t n_threads) {
  const std::vector<double> mse = consensus_lln_mse(
      manifold, objective, alpha, n_values, n_repeats, m_reference, seed, n_threads);
  return fit_rate(n_values, mse, n_repeats);
}

std::vector<std::vector<double>> record_consensus_path(const SimConfig& cfg,
                                                       std::size_t n_steps) {
  cfg.validate();
  Ensemble ens = make_initial_ensemble(cfg);
  std::vector<std::vector<double>> path;
  path.reserve(n_steps);
  for (std::size_t k = 0; k < n_steps; ++k) {
    StepInfo info = em_step(ens, cfg);
    path.push_back(std::move(info.consensus.point));
  }
  return path;
}

std::vector<double> coupled_meanfield_mse(const SimConfig& cfg_template,
                                          std::span<const std::size_t> n_values,
                                          std::size_t m_reference, double t_check,
                                          std::size_t n_repeats,
                                          std::size_t n_threads) {
  cfg_template.validate();
  validate_repeats(n_repeats);
  validate_n_values(n_values, m_reference);
  if (t_check > cfg_template.t_max)
    raise(ErrorCode::ValidationError, "t_check must not exceed t_max");
  const std::size_t n_steps = steps_for(t_check, cfg_template.dt);

  // The reference run is the (N = m_reference, repeat 0) system, so probing
  // N = m_reference reproduces it exactly and the coupled error vanishes.
  SimConfig ref_cfg = cfg_template;
  ref_cfg.n_particles = m_reference;
  ref_cfg.seed = sub_seed(cfg_template.seed, m_reference, 0);
  const std::vector<std::vector<double>> path =
      record_consensus_path(ref_cfg, n_steps);
  if (path.size() != n_steps)
    raise(ErrorCode::ReferencePathMissing, "reference path step count mismatch");

  std::vector<double> metric(n_values.size());
  for (std::size_t a = 0; a < n_values.size(); ++a) {
    const std::size_t n = n_values[a];
    std::vector<std::vector<double>> per_repeat(n_repeats);
    parallel_for(0, n_repeats, n_threads, [&](std::size_t rep) {
      SimConfig cfg = cfg_template;
      cfg.n_particles = n;
      cfg.seed = sub_seed(cfg_template.seed, n, rep);
      Ensemble interacting = make_initial_ensemble(cfg);
      Ensemble meanfield = interacting;  // same positions, streams, seed
      for (std::size_t k = 0; k < n_steps; ++k) {
        if (k >= path.size())
          raise(ErrorCode::ReferencePathMissing, "reference path too short");
        em_step(interacting, cfg);
        em_step_with_consensus(meanfield, cfg, path[k]);
      }
      std::vector<double> sq(n);
      std::vector<double> a_row(cfg.manifold.dim()), b_row(cfg.manifold.dim());
      for (std::size_t i = 0; i < n; ++i) {
        interacting.positions.get_row(i, a_row);
        meanfield.positions.get_row(i, b_row);
        const double dist = vec::distance(a_row, b_row);
        sq[i] = dist * dist;
      }
      per_repeat[rep] = std::move(sq);
    });
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t rep = 0; rep < n_repeats; ++rep) acc += per_repeat[rep][i];
      worst = std::max(worst, acc / static_cast<double>(n_repeats));
    }
    metric[a] = worst;
  }
  return metric;
}

RateEstimate coupled_meanfield_rate(const SimConfig& cfg_template,
                                    std::span<const std::size_t> n_values,
                                    std::size_t m_reference, double t_check,
                                    std::size_t n_repeats, std::size_t n_threads) {
  const std::vector<double> mse = coupled_meanfield_mse(
      cfg_template, n_values, m_reference, t_check, n_repeats, n_threads);
  return fit_rate(n_values, mse, n_repeats);
}

TestFunction TestFunction::coordinate(std::size_t c) {
  return {"coord:" + std::to_string(c),
          [c](std::span<const double> v) { return v[c]; }};
}

TestFunction TestFunction::coordinate_square(std::size_t c) {
  return {"coordsq:" + std::to_string(c),
          [c](std::span<const double> v) { return v[c] * v[c]; }};
}

TestFunction TestFunction::constant_one() {
  return {"one", [](std::span<const double>) { return 1.0; }};
}

TestFunction TestFunction::scaled(double factor) const {
  auto base = fn;
  return {name + "*" + std::to_string(factor),
          [base, factor](std::span<const double> v) { return factor * base(v); }};
}

namespace {

double phi_mean(const TestFunction& phi, const PointsSoA& pts) {
  std::vector<double> row(pts.dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts.get_row(i, row);
    acc += phi.fn(row);
  }
  return acc / static_cast<double>(pts.size());
}

}  // namespace

std::vector<double> empirical_measure_mse(const SimConfig& cfg_template,
                                          const TestFunction& phi,
                                          std::span<const std::size_t> n_values,
                                          std::size_t m_reference, double t_check,
                                          std::size_t n_repeats,
                                          std::size_t n_threads) {
  cfg_template.validate();
  validate_repeats(n_repeats);
  validate_n_values(n_values, m_reference);
  if (!phi.fn) raise(ErrorCode::ValidationError, "test function not set");
  if (t_check > cfg_template.t_max)
    raise(ErrorCode::ValidationError, "t_check must not exceed t_max");
  const std::size_t n_steps = steps_for(t_check, cfg_template.dt);

  SimConfig ref_cfg = cfg_template;
  ref_cfg.n_particles = m_reference;
  ref_cfg.seed = sub_seed(cfg_template.seed, m_reference, 0);
  Ensemble ref = make_initial_ensemble(ref_cfg);
  for (std::size_t k = 0; k < n_steps; ++k) em_step(ref, ref_cfg);
  const double ref_mean = phi_mean(phi, ref.positions);

  std::vector<double> mse(n_values.size());
  for (std::size_t a = 0; a < n_values.size(); ++a) {
    const std::size_t n = n_values[a];
    std::vector<double> sq_err(n_repeats);
    parallel_for(0, n_repeats, n_threads, [&](std::size_t rep) {
      SimConfig cfg = cfg_template;
      cfg.n_particles = n;
      cfg.seed = sub_seed(cfg_template.seed, n, rep);
      Ensemble ens = make_initial_ensemble(cfg);
      for (std::size_t k = 0; k < n_steps; ++k) em_step(ens, cfg);
      const double diff = phi_mean(phi, ens.positions) - ref_mean;
      sq_err[rep] = diff * diff;
    });
    double acc = 0.0;
    for (double e : sq_err) acc += e;
    mse[a] = acc / static_cast<double>(n_repeats);
  }
  return mse;
}

RateEstimate empirical_measure_convergence(const SimConfig& cfg_template,
                                           const TestFunction& phi,
                                           std::span<const std::size_t> n_values,
                                           std::size_t m_reference, double t_check,
                                           std::size_t n_repeats,
                                           std::size_t n_threads) {
  const std::vector<double> mse = empirical_measure_mse(
      cfg_template, phi, n_values, m_reference, t_check, n_repeats, n_threads);
  return fit_rate(n_values, mse, n_repeats);
}

}  // namespace cbo
