#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cbo/dynamics.hpp"
#include "cbo/meanfield.hpp"

namespace cbo {

/// Flat key = value experiment description covering every subcommand. The
/// canonical serialization round-trips losslessly: parse(serialize(c)) == c.
struct ExperimentConfig {
  std::string command = "run";  // run | rates-lln | rates-coupled | rates-weak
                                // | defect-scan | bench
  std::string manifold = "sphere:radius=1,dim=3";
  std::string objective = "ackley:vstar=0,0,1";
  double lambda = 1.0;
  double sigma = 0.25;
  double alpha = 50.0;
  double dt = 0.05;
  double t_max = 5.0;
  std::uint64_t n_particles = 20;
  std::uint64_t seed = 0;
  std::string stop_rule = "fixed";  // fixed | diameter | residual
  double stop_eps = 1e-4;

  // rate experiments
  std::vector<std::uint64_t> n_values = {16, 64, 256};
  std::uint64_t n_repeats = 100;
  std::uint64_t m_reference = 50000;
  double t_check = 1.0;
  std::string phi = "coord:2";

  // defect scan
  std::vector<double> dt_list = {0.05, 0.025, 0.0125};
  std::uint64_t defect_repeats = 16;

  // bench
  std::uint64_t bench_seeds = 100;
  double success_threshold = 0.1;

  // outputs / execution
  std::string out_csv;
  std::string out_json;
  std::uint64_t threads = 0;  // 0 = hardware concurrency

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the key = value format ('#' starts a comment). ParseError carries
/// the line number and key; ValidationError lists every violated constraint.
ExperimentConfig parse_config(std::string_view text);

/// Canonical serialization: every field, fixed order, full precision.
std::string serialize_config(const ExperimentConfig& cfg);

/// Checks every invariant and reports all violations at once.
void validate_config(const ExperimentConfig& cfg);

/// Named parameter sets from the reference simulations: "sphere-north",
/// "sphere-tilted", "torus-top", "torus-inner" (aliases "figure2", "figure3"
/// for the first of each pair). Overwrites manifold, objective and the
/// simulation parameters; leaves seeds and outputs untouched.
void apply_preset(ExperimentConfig& cfg, std::string_view preset);

/// "sphere:radius=1,dim=3" or "torus:R=1,r=0.5".
Manifold parse_manifold(std::string_view spec);

/// "ackley:vstar=0,0,1" with optional A, a, b, B keys.
Objective parse_objective(std::string_view spec);

TestFunction parse_test_function(std::string_view spec);

/// Builds the validated SimConfig (manifold and objective instantiated).
SimConfig make_sim_config(const ExperimentConfig& cfg);

}  // namespace cbo
