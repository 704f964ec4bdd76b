// Acceptance suite: one named check per criterion, each printing a single
// PASS/FAIL line with the measured quantities. Run all, or one with
// `cbo_acceptance --criterion <k>`. Exit code 0 iff every selected check
// passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "cbo/config.hpp"
#include "cbo/dynamics.hpp"
#include "cbo/meanfield.hpp"
#include "cbo/outputs.hpp"
#include "cbo/parallel.hpp"
#include "cbo/rng.hpp"
#include "cbo/transport.hpp"
#include "cbo/vec.hpp"

namespace {

using namespace cbo;

struct Outcome {
  bool pass;
  std::string detail;
};

SimConfig sphere_preset(std::uint64_t seed) {
  ExperimentConfig cfg;
  apply_preset(cfg, "sphere-north");
  cfg.seed = seed;
  return make_sim_config(cfg);
}

SimConfig torus_preset(std::uint64_t seed) {
  ExperimentConfig cfg;
  apply_preset(cfg, "torus-top");
  cfg.seed = seed;
  return make_sim_config(cfg);
}

char buf[512];

// 1. On-manifold invariant: max |gamma| <= 1e-10 after projection at every
//    step of the sphere preset, across 20 seeds.
Outcome c1_on_manifold() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SimConfig cfg = sphere_preset(seed);
    Ensemble ens = make_initial_ensemble(cfg);
    worst = std::max(worst, max_gamma(cfg.manifold, ens.positions));
    for (std::size_t k = 0; k < 100; ++k) {
      em_step(ens, cfg);
      worst = std::max(worst, max_gamma(cfg.manifold, ens.positions));
    }
  }
  std::snprintf(buf, sizeof buf, "max |gamma| = %.3e (tolerance 1e-10)", worst);
  return {worst <= 1e-10, buf};
}

// 2. Discrete conservation: pre-projection defect strictly decreasing over
//    dt in {0.05, 0.025, 0.0125} at sigma = 0.25, T = 1.
Outcome c2_defect_scaling() {
  SimConfig cfg = sphere_preset(0);
  cfg.t_max = 1.0;
  const std::vector<double> dts = {0.05, 0.025, 0.0125};
  const auto samples = manifold_defect_scaling(cfg, dts, 16);
  const bool decreasing = samples[0].max_defect > samples[1].max_defect &&
                          samples[1].max_defect > samples[2].max_defect;
  std::snprintf(buf, sizeof buf, "defects %.3e > %.3e > %.3e : %s",
                samples[0].max_defect, samples[1].max_defect,
                samples[2].max_defect, decreasing ? "yes" : "no");
  return {decreasing, buf};
}

std::size_t preset_successes(const std::function<SimConfig(std::uint64_t)>& preset,
                             std::size_t n_seeds) {
  std::vector<int> success(n_seeds, 0);
  parallel_for(0, n_seeds, 0, [&](std::size_t seed) {
    const SimConfig cfg = preset(seed);
    const RunTrace trace = run(cfg);
    std::vector<double> projected(cfg.manifold.dim());
    cfg.manifold.closest_point(trace.final_record().consensus, projected);
    const double dist = cfg.manifold.surface_distance(
        projected, *cfg.objective.known_minimizer());
    success[seed] = dist < 0.1 ? 1 : 0;
  });
  std::size_t total = 0;
  for (int s : success) total += s;
  return total;
}

// 3. Optimization success on the sphere: >= 80% of seeded runs end within
//    surface distance 0.1 of the minimizer at T = 5. Measured over the full
//    1000-seed calibration family (100-seed subfamilies fluctuate by several
//    percent; 1000 runs still finish in ~1 s).
Outcome c3_sphere_success() {
  const std::size_t wins = preset_successes(sphere_preset, 1000);
  std::snprintf(buf, sizeof buf, "%zu/1000 within 0.1 (threshold 800)", wins);
  return {wins >= 800, buf};
}

// 4. Same protocol on the torus preset.
Outcome c4_torus_success() {
  const std::size_t wins = preset_successes(torus_preset, 1000);
  std::snprintf(buf, sizeof buf, "%zu/1000 within 0.1 (threshold 800)", wins);
  return {wins >= 800, buf};
}

// 5. Consensus law-of-large-numbers rate at t = 0 on the 2-sphere.
Outcome c5_lln_rate() {
  const RateEstimate est = consensus_lln_rate(
      Manifold::sphere(1.0, 3), Objective::ackley({0.0, 0.0, 1.0}), 50.0,
      std::vector<std::size_t>{16, 64, 256, 1024}, 200, 1000000, 0);
  std::snprintf(buf, sizeof buf, "slope %.3f (band [-1.3, -0.7])", est.slope);
  return {est.slope > -1.3 && est.slope < -0.7, buf};
}

// 6. Mean-field coupling rate with shared Brownian increments.
Outcome c6_coupled_rate() {
  const SimConfig cfg = sphere_preset(0);
  const RateEstimate est = coupled_meanfield_rate(
      cfg, std::vector<std::size_t>{16, 64, 256}, 50000, 1.0, 100);
  std::snprintf(buf, sizeof buf, "slope %.3f (band [-1.4, -0.6])", est.slope);
  return {est.slope > -1.4 && est.slope < -0.6, buf};
}

// 7. Dimension robustness: the criterion-5 protocol repeated on spheres in
//    d = 10 and d = 30 ambient dimensions, same slope band.
//
// Known to fail at alpha = 50: with N <= 1024 uniform samples on a
// (d-1)-sphere, the Laplace weights concentrate on the few lowest-energy
// samples, so the measured error follows the nearest-sample scaling
// N^(-2/(d-1)) instead of the asymptotic N^(-1) regime, which these sample
// sizes cannot reach for d >= 10. The check is kept as specified and
// reports the measured slopes.
Outcome c7_dimension_robustness() {
  std::string detail;
  bool pass = true;
  for (const std::size_t d : {10u, 30u}) {
    std::vector<double> vstar(d, 0.0);
    vstar[d - 1] = 1.0;
    const RateEstimate est = consensus_lln_rate(
        Manifold::sphere(1.0, d), Objective::ackley(vstar), 50.0,
        std::vector<std::size_t>{16, 64, 256, 1024}, 200, 1000000, 0);
    std::snprintf(buf, sizeof buf, "d=%zu slope %.3f ", d, est.slope);
    detail += buf;
    pass = pass && est.slope > -1.3 && est.slope < -0.7;
  }
  detail += "(band [-1.3, -0.7])";
  return {pass, detail};
}

// 8. Consensus property suite.
Outcome c8_consensus_properties() {
  const Manifold sphere = Manifold::sphere(1.0, 3);
  const Objective obj = Objective::ackley({0.0, 0.0, 1.0});
  std::string failures;

  {  // convex combination
    const PointsSoA pts = sphere.sample_uniform(64, 801);
    std::vector<double> e(64);
    obj.eval_batch(pts, e);
    const std::vector<double> w = consensus_weights(e, 50.0);
    double sum = 0.0;
    bool nonneg = true;
    for (double x : w) {
      nonneg = nonneg && x >= 0.0;
      sum += x;
    }
    if (!nonneg || std::abs(sum - 1.0) > 1e-12)
      failures += "convex-combination ";
  }
  {  // shift invariance
    const PointsSoA pts = sphere.sample_uniform(40, 802);
    std::vector<double> e(40), shifted(40);
    obj.eval_batch(pts, e);
    for (std::size_t i = 0; i < 40; ++i) shifted[i] = e[i] + 123.456;
    const auto a = consensus_point(pts, e, 50.0);
    const auto b = consensus_point(pts, shifted, 50.0);
    if (vec::distance(a.point, b.point) > 1e-12) failures += "shift-invariance ";
  }
  {  // large-alpha limit
    const PointsSoA pts = sphere.sample_uniform(50, 803);
    std::vector<double> e(50);
    obj.eval_batch(pts, e);
    const auto cp = consensus_point(pts, e, 1e8);
    if (vec::distance(cp.point, pts.row(cp.argmin_index)) > 1e-6)
      failures += "large-alpha-limit ";
  }
  {  // growth bound on 1000 random instances
    for (std::size_t trial = 0; trial < 1000; ++trial) {
      const std::size_t n =
          1 + static_cast<std::size_t>(rng::uniform01(900, trial, 0) * 99);
      const double alpha = 0.5 + 49.5 * rng::uniform01(900, trial, 1);
      const PointsSoA pts = sphere.sample_uniform(n, rng::mix(901, trial));
      std::vector<double> e(n);
      obj.eval_batch(pts, e);
      if (!consensus_growth_bound_check(pts, e, alpha)) {
        failures += "growth-bound ";
        break;
      }
    }
  }
  {  // stability against the exact transport oracle on epsilon sweeps
    const PointsSoA a = sphere.sample_uniform(5, 804);
    std::vector<double> v(3), t(3), g(3), moved(3);
    for (const double alpha : {1.0, 5.0, 50.0}) {
      double prev = 1e300;
      std::vector<double> ratios;
      for (const double eps : {0.1, 0.01, 0.001}) {
        PointsSoA b(5, 3);
        for (std::size_t i = 0; i < 5; ++i) {
          a.get_row(i, v);
          rng::fill_normals(rng::stream_key(805, 1, i), 0, t);
          sphere.sdf_grad(v, g);
          vec::tangent_component(g, t, t);
          const double tn = vec::norm(t);
          for (std::size_t c = 0; c < 3; ++c) moved[c] = v[c] + eps * t[c] / tn;
          sphere.closest_point(moved, v);
          b.set_row(i, v);
        }
        const StabilityCheck sc = consensus_stability_check(a, b, alpha, obj);
        if (!(sc.difference_norm < prev)) failures += "stability-decrease ";
        prev = sc.difference_norm;
        ratios.push_back(sc.difference_norm / sc.w1_distance);
      }
      // Small alpha: smooth Lipschitz response with a modest constant. Large
      // alpha: the constant grows with alpha (the weights can reshuffle the
      // winning atom), so assert that the fitted constant from the coarser
      // perturbations still bounds the vanishing-epsilon response -- the
      // ratio must not diverge as eps -> 0.
      if (alpha <= 5.0) {
        for (double r : ratios)
          if (!(r < 20.0)) {
            failures += "stability-ratio-smooth ";
            break;
          }
      } else if (!(ratios[2] <= 1.5 * std::max(ratios[0], ratios[1]))) {
        failures += "stability-ratio-divergent ";
      }
    }
  }

  if (failures.empty()) return {true, "all consensus properties hold"};
  return {false, "failed: " + failures};
}

// 9. Geometry property suite.
Outcome c9_geometry_properties() {
  std::string failures;
  for (const Manifold& m :
       {Manifold::sphere(1.0, 3), Manifold::torus(1.0, 0.5)}) {
    const std::size_t d = m.dim();
    const PointsSoA pts = m.sample_uniform(1000, 806);
    std::vector<double> v(d), g(d), y(d), py(d), ppy(d), proj(d), proj2(d);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      pts.get_row(i, v);
      m.sdf_grad(v, g);
      if (std::abs(vec::norm(g) - 1.0) >= 1e-10) {
        failures += "unit-normal ";
        break;
      }
      rng::fill_normals(rng::stream_key(807, 1, i), 0, y);
      m.project_tangent(v, y, py);
      m.project_tangent(v, py, ppy);
      bool ok = std::abs(vec::dot(g, py)) < 1e-12;
      for (std::size_t c = 0; c < d; ++c) ok = ok && std::abs(ppy[c] - py[c]) < 1e-12;
      if (!ok) {
        failures += "projector ";
        break;
      }
      m.closest_point(v, proj);
      m.closest_point(proj, proj2);
      if (vec::distance(proj, proj2) >= 1e-12) {
        failures += "retraction ";
        break;
      }
    }
    // finite-difference gradient consistency near the surface
    std::vector<double> off(d), fd(d), probe(d);
    for (std::size_t i = 0; i < 100; ++i) {
      pts.get_row(i, probe);
      rng::fill_normals(rng::stream_key(808, 1, i), 0, off);
      for (std::size_t c = 0; c < d; ++c) probe[c] += 0.02 * off[c];
      m.sdf_grad(probe, g);
      const double h = 1e-6;
      bool ok = true;
      for (std::size_t c = 0; c < d; ++c) {
        const double saved = probe[c];
        probe[c] = saved + h;
        const double fp = m.sdf(probe);
        probe[c] = saved - h;
        const double fm = m.sdf(probe);
        probe[c] = saved;
        ok = ok && std::abs((fp - fm) / (2 * h) - g[c]) < 1e-4;
      }
      if (!ok) {
        failures += "fd-gradient ";
        break;
      }
    }
  }
  {  // torus minor-angle distribution
    const double R = 1.0, r = 0.5;
    const Manifold t = Manifold::torus(R, r);
    const std::size_t n = 100000;
    const PointsSoA pts = t.sample_uniform(n, 809);
    constexpr int kBins = 24;
    std::vector<double> observed(kBins, 0.0);
    std::vector<double> v(3);
    for (std::size_t i = 0; i < n; ++i) {
      pts.get_row(i, v);
      const double theta = t.torus_minor_angle(v);
      int b = static_cast<int>((theta + std::numbers::pi) /
                               (2.0 * std::numbers::pi) * kBins);
      if (b == kBins) b = kBins - 1;
      observed[b] += 1.0;
    }
    double chi2 = 0.0;
    for (int b = 0; b < kBins; ++b) {
      const double lo = -std::numbers::pi + 2.0 * std::numbers::pi * b / kBins;
      const double hi = lo + 2.0 * std::numbers::pi / kBins;
      const double expected = n * ((hi - lo) * R + r * (std::sin(hi) - std::sin(lo))) /
                              (2.0 * std::numbers::pi * R);
      chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
    }
    if (!(chi2 < 41.638398)) {  // chi^2 99th percentile, 23 dof
      std::snprintf(buf, sizeof buf, "torus-chi2=%.1f ", chi2);
      failures += buf;
    }
  }
  if (failures.empty()) return {true, "all geometry properties hold"};
  return {false, "failed: " + failures};
}

// 10. Determinism: a preset run twice with the same seed produces
//     byte-identical trace CSV content.
Outcome c10_determinism() {
  for (const char* preset : {"sphere-north", "torus-top"}) {
    ExperimentConfig cfg;
    apply_preset(cfg, preset);
    cfg.seed = 2718;
    const SimConfig sim = make_sim_config(cfg);
    const std::string a = trace_csv(run(sim), sim.manifold.dim());
    const std::string b = trace_csv(run(sim), sim.manifold.dim());
    if (a != b) {
      std::snprintf(buf, sizeof buf, "%s traces differ", preset);
      return {false, buf};
    }
  }
  return {true, "reruns are byte-identical"};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {1, "on-manifold invariant", c1_on_manifold},
    {2, "discrete conservation scaling", c2_defect_scaling},
    {3, "sphere optimization success", c3_sphere_success},
    {4, "torus optimization success", c4_torus_success},
    {5, "consensus LLN rate", c5_lln_rate},
    {6, "mean-field coupling rate", c6_coupled_rate},
    {7, "dimension robustness", c7_dimension_robustness},
    {8, "consensus property suite", c8_consensus_properties},
    {9, "geometry property suite", c9_geometry_properties},
    {10, "trace determinism", c10_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
  }
  bool all_pass = true;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome{false, "exception"};
    try {
      outcome = c.fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] C%-2d %-32s %s (%.1fs)\n", outcome.pass ? "PASS" : "FAIL",
                c.id, c.name, outcome.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
