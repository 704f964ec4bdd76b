#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbo/config.hpp"
#include "cbo/kernels.hpp"
#include "cbo/outputs.hpp"
#include "cbo/parallel.hpp"

namespace {

using cbo::ExperimentConfig;

struct Flags {
  ExperimentConfig v;  // values bound to CLI options
  std::map<std::string, CLI::Option*> opts;
  std::string preset;
  CLI::Option* preset_opt = nullptr;
};

void add_sim_options(CLI::App* cmd, Flags& f) {
  f.opts["manifold"] = cmd->add_option("--manifold", f.v.manifold,
                                       "e.g. sphere:radius=1,dim=3 or torus:R=1,r=0.5");
  f.opts["objective"] =
      cmd->add_option("--objective", f.v.objective, "e.g. ackley:vstar=0,0,1");
  f.opts["lambda"] = cmd->add_option("--lambda", f.v.lambda, "drift rate");
  f.opts["sigma"] = cmd->add_option("--sigma", f.v.sigma, "diffusion strength");
  f.opts["alpha"] = cmd->add_option("--alpha", f.v.alpha, "weight sharpness");
  f.opts["dt"] = cmd->add_option("--dt", f.v.dt, "time step");
  f.opts["t_max"] = cmd->add_option("--tmax", f.v.t_max, "time horizon");
  f.opts["n_particles"] = cmd->add_option("--n", f.v.n_particles, "particle count");
  f.opts["seed"] = cmd->add_option("--seed", f.v.seed, "RNG seed");
  f.preset_opt = cmd->add_option("--preset", f.preset,
                                 "sphere-north | sphere-tilted | torus-top | torus-inner");
}

void add_output_options(CLI::App* cmd, Flags& f) {
  f.opts["out_csv"] = cmd->add_option("--out", f.v.out_csv, "CSV output path");
  f.opts["out_json"] = cmd->add_option("--summary", f.v.out_json, "JSON summary path");
}

/// File values first, then explicitly passed flags on top.
ExperimentConfig merge(const Flags& f, const ExperimentConfig& file_cfg,
                       const std::string& command) {
  ExperimentConfig cfg = file_cfg;
  cfg.command = command;
  if (f.preset_opt && f.preset_opt->count()) cbo::apply_preset(cfg, f.preset);
  const auto touch = [&](const char* key, auto member) {
    const auto it = f.opts.find(key);
    if (it != f.opts.end() && it->second && it->second->count())
      cfg.*member = f.v.*member;
  };
  touch("manifold", &ExperimentConfig::manifold);
  touch("objective", &ExperimentConfig::objective);
  touch("lambda", &ExperimentConfig::lambda);
  touch("sigma", &ExperimentConfig::sigma);
  touch("alpha", &ExperimentConfig::alpha);
  touch("dt", &ExperimentConfig::dt);
  touch("t_max", &ExperimentConfig::t_max);
  touch("n_particles", &ExperimentConfig::n_particles);
  touch("seed", &ExperimentConfig::seed);
  touch("stop_rule", &ExperimentConfig::stop_rule);
  touch("stop_eps", &ExperimentConfig::stop_eps);
  touch("n_values", &ExperimentConfig::n_values);
  touch("n_repeats", &ExperimentConfig::n_repeats);
  touch("m_reference", &ExperimentConfig::m_reference);
  touch("t_check", &ExperimentConfig::t_check);
  touch("phi", &ExperimentConfig::phi);
  touch("dt_list", &ExperimentConfig::dt_list);
  touch("defect_repeats", &ExperimentConfig::defect_repeats);
  touch("bench_seeds", &ExperimentConfig::bench_seeds);
  touch("success_threshold", &ExperimentConfig::success_threshold);
  touch("out_csv", &ExperimentConfig::out_csv);
  touch("out_json", &ExperimentConfig::out_json);
  touch("threads", &ExperimentConfig::threads);
  return cfg;
}

std::string default_json_path(const std::string& csv_path) {
  if (csv_path.size() > 4 && csv_path.ends_with(".csv"))
    return csv_path.substr(0, csv_path.size() - 4) + ".json";
  return csv_path + ".json";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_command(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const cbo::SimConfig sim = cbo::make_sim_config(cfg);
  const cbo::RunTrace trace = cbo::run(sim);
  const std::string csv = cfg.out_csv.empty() ? "trace.csv" : cfg.out_csv;
  const std::string json = cfg.out_json.empty() ? default_json_path(csv) : cfg.out_json;
  ExperimentConfig echo = cfg;
  echo.out_csv = csv;
  echo.out_json = json;
  cbo::write_trace_csv(csv, trace, sim.manifold.dim());
  cbo::write_run_summary(json, echo, trace, seconds_since(t0));
  const auto& last = trace.final_record();
  std::printf("run: %zu records, final consensus energy %.6g, wrote %s and %s\n",
              trace.records.size(), last.consensus_energy, csv.c_str(),
              json.c_str());
  return 0;
}

int rates_command(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::size_t> n_values(cfg.n_values.begin(), cfg.n_values.end());
  cbo::RateEstimate est;
  if (cfg.command == "rates-lln") {
    cbo::validate_config(cfg);
    est = cbo::consensus_lln_rate(cbo::parse_manifold(cfg.manifold),
                                  cbo::parse_objective(cfg.objective), cfg.alpha,
                                  n_values, cfg.n_repeats, cfg.m_reference,
                                  cfg.seed, cfg.threads);
  } else if (cfg.command == "rates-coupled") {
    const cbo::SimConfig sim = cbo::make_sim_config(cfg);
    est = cbo::coupled_meanfield_rate(sim, n_values, cfg.m_reference, cfg.t_check,
                                      cfg.n_repeats, cfg.threads);
  } else {
    const cbo::SimConfig sim = cbo::make_sim_config(cfg);
    est = cbo::empirical_measure_convergence(sim, cbo::parse_test_function(cfg.phi),
                                             n_values, cfg.m_reference, cfg.t_check,
                                             cfg.n_repeats, cfg.threads);
  }
  const std::string csv = cfg.out_csv.empty() ? "rates.csv" : cfg.out_csv;
  const std::string json = cfg.out_json.empty() ? default_json_path(csv) : cfg.out_json;
  ExperimentConfig echo = cfg;
  echo.out_csv = csv;
  echo.out_json = json;
  cbo::write_rate_csv(csv, est);
  cbo::write_rate_summary(json, echo, est, seconds_since(t0));
  std::printf("%s: slope %.4f (+/- %.4f), wrote %s and %s\n", cfg.command.c_str(),
              est.slope, est.conf_halfwidth, csv.c_str(), json.c_str());
  return 0;
}

int defect_scan_command(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const cbo::SimConfig sim = cbo::make_sim_config(cfg);
  const auto samples =
      cbo::manifold_defect_scaling(sim, cfg.dt_list, cfg.defect_repeats);
  const std::string csv = cfg.out_csv.empty() ? "defect.csv" : cfg.out_csv;
  const std::string json = cfg.out_json.empty() ? default_json_path(csv) : cfg.out_json;
  ExperimentConfig echo = cfg;
  echo.out_csv = csv;
  echo.out_json = json;
  cbo::write_defect_csv(csv, samples);
  cbo::write_defect_summary(json, echo, samples, seconds_since(t0));
  std::printf("defect-scan:");
  for (const auto& s : samples) std::printf(" (dt=%g, defect=%.3e)", s.dt, s.max_defect);
  std::printf(", wrote %s and %s\n", csv.c_str(), json.c_str());
  return 0;
}

int bench_command(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const cbo::SimConfig sim = cbo::make_sim_config(cfg);
  if (!sim.objective.known_minimizer())
    cbo::raise(cbo::ErrorCode::ValidationError,
               "bench requires an objective with a known minimizer");
  const std::vector<double>& v_star = *sim.objective.known_minimizer();

  std::vector<double> distances(cfg.bench_seeds);
  cbo::parallel_for(0, cfg.bench_seeds, cfg.threads, [&](std::size_t s) {
    cbo::SimConfig one = sim;
    one.seed = cfg.seed + s;
    const cbo::RunTrace trace = cbo::run(one);
    std::vector<double> projected(one.manifold.dim());
    one.manifold.closest_point(trace.final_record().consensus, projected);
    distances[s] = one.manifold.surface_distance(projected, v_star);
  });
  std::size_t successes = 0;
  for (double d : distances)
    if (d < cfg.success_threshold) ++successes;

  const std::string json = cfg.out_json.empty()
                               ? (cfg.out_csv.empty() ? "bench.json"
                                                      : default_json_path(cfg.out_csv))
                               : cfg.out_json;
  ExperimentConfig echo = cfg;
  echo.out_json = json;
  cbo::write_bench_summary(json, echo, successes, cfg.bench_seeds, distances,
                           seconds_since(t0));
  std::printf("bench: %zu/%llu runs within %.3g of the minimizer, wrote %s\n",
              successes, static_cast<unsigned long long>(cfg.bench_seeds),
              cfg.success_threshold, json.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consensus-based optimization constrained to hypersurfaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::string kernels_choice;
  app.add_option("--config", config_path, "key = value config file; flags override it")
      ->check(CLI::ExistingFile);
  app.add_option("--kernels", kernels_choice, "force kernel backend: scalar | avx2")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  Flags run_f, lln_f, coupled_f, weak_f, defect_f, bench_f;

  CLI::App* run_cmd = app.add_subcommand("run", "simulate one ensemble, write a trace");
  add_sim_options(run_cmd, run_f);
  add_output_options(run_cmd, run_f);
  run_f.opts["stop_rule"] = run_cmd->add_option("--stop-rule", run_f.v.stop_rule,
                                                "fixed | diameter | residual");
  run_f.opts["stop_eps"] = run_cmd->add_option("--stop-eps", run_f.v.stop_eps,
                                               "early stopping threshold");
  run_f.opts["threads"] = run_cmd->add_option("--threads", run_f.v.threads, "");

  CLI::App* rates_cmd =
      app.add_subcommand("rates", "empirical 1/N rate experiments");
  rates_cmd->require_subcommand(1);
  CLI::App* lln_cmd = rates_cmd->add_subcommand(
      "lln", "consensus-point error of N uniform samples vs a large reference");
  CLI::App* coupled_cmd = rates_cmd->add_subcommand(
      "coupled", "coupling error between the interacting system and mean-field copies");
  CLI::App* weak_cmd = rates_cmd->add_subcommand(
      "weak", "empirical-measure error for a test function");
  for (auto [cmd, f] : {std::pair{lln_cmd, &lln_f}, {coupled_cmd, &coupled_f},
                        {weak_cmd, &weak_f}}) {
    add_sim_options(cmd, *f);
    add_output_options(cmd, *f);
    f->opts["n_values"] =
        cmd->add_option("--n-values", f->v.n_values, "probed ensemble sizes")->delimiter(',');
    f->opts["n_repeats"] = cmd->add_option("--repeats", f->v.n_repeats, "");
    f->opts["m_reference"] = cmd->add_option("--mref", f->v.m_reference, "");
    f->opts["threads"] = cmd->add_option("--threads", f->v.threads, "");
  }
  coupled_f.opts["t_check"] = coupled_cmd->add_option("--tcheck", coupled_f.v.t_check, "");
  weak_f.opts["t_check"] = weak_cmd->add_option("--tcheck", weak_f.v.t_check, "");
  weak_f.opts["phi"] =
      weak_cmd->add_option("--phi", weak_f.v.phi, "one | coord:<k> | coordsq:<k>");

  CLI::App* defect_cmd = app.add_subcommand(
      "defect-scan", "pre-projection |gamma| defect for a decreasing dt list");
  add_sim_options(defect_cmd, defect_f);
  add_output_options(defect_cmd, defect_f);
  defect_f.opts["dt_list"] =
      defect_cmd->add_option("--dt-list", defect_f.v.dt_list, "decreasing dt values")->delimiter(',');
  defect_f.opts["defect_repeats"] =
      defect_cmd->add_option("--repeats", defect_f.v.defect_repeats, "");

  CLI::App* bench_cmd =
      app.add_subcommand("bench", "success rate of a preset over many seeds");
  add_sim_options(bench_cmd, bench_f);
  add_output_options(bench_cmd, bench_f);
  bench_f.opts["bench_seeds"] =
      bench_cmd->add_option("--seeds", bench_f.v.bench_seeds, "number of seeded runs");
  bench_f.opts["success_threshold"] = bench_cmd->add_option(
      "--threshold", bench_f.v.success_threshold, "surface distance to count success");
  bench_f.opts["threads"] = bench_cmd->add_option("--threads", bench_f.v.threads, "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!kernels_choice.empty())
      cbo::kernels::set_backend(kernels_choice == "avx2"
                                    ? cbo::kernels::Backend::Avx2
                                    : cbo::kernels::Backend::Scalar);

    ExperimentConfig file_cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) cbo::raise(cbo::ErrorCode::IoError, "cannot read " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      file_cfg = cbo::parse_config(ss.str());
    }

    if (run_cmd->parsed()) {
      const auto cfg = merge(run_f, file_cfg, "run");
      cbo::validate_config(cfg);
      return run_command(cfg);
    }
    if (lln_cmd->parsed() || coupled_cmd->parsed() || weak_cmd->parsed()) {
      const Flags& f = lln_cmd->parsed() ? lln_f
                       : coupled_cmd->parsed() ? coupled_f
                                               : weak_f;
      const char* name = lln_cmd->parsed() ? "rates-lln"
                         : coupled_cmd->parsed() ? "rates-coupled"
                                                 : "rates-weak";
      const auto cfg = merge(f, file_cfg, name);
      cbo::validate_config(cfg);
      return rates_command(cfg);
    }
    if (defect_cmd->parsed()) {
      const auto cfg = merge(defect_f, file_cfg, "defect-scan");
      cbo::validate_config(cfg);
      return defect_scan_command(cfg);
    }
    const auto cfg = merge(bench_f, file_cfg, "bench");
    cbo::validate_config(cfg);
    return bench_command(cfg);
  } catch (const cbo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cbo::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
