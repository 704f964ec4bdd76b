#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cbo/config.hpp"
#include "cbo/outputs.hpp"

using namespace cbo;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_SUITE("outputs") {

TEST_CASE("empty trace serializes to a header-only csv") {
  const RunTrace empty;
  const std::string csv = trace_csv(empty, 3);
  CHECK(csv ==
        "step,t,consensus_0,consensus_1,consensus_2,consensus_energy,diameter,"
        "max_gamma_defect,mean_energy\n");
}

TEST_CASE("a 100-step run serializes to 101 data rows") {
  ExperimentConfig cfg;
  apply_preset(cfg, "figure2");
  cfg.seed = 5;
  const RunTrace trace = run(make_sim_config(cfg));
  const std::string csv = trace_csv(trace, 3);
  CHECK(count_lines(csv) == 102);  // header + t=0 + 100 steps
}

TEST_CASE("reruns serialize byte-identically") {
  ExperimentConfig cfg;
  apply_preset(cfg, "figure2");
  cfg.seed = 1234;
  const SimConfig sim = make_sim_config(cfg);
  CHECK(trace_csv(run(sim), 3) == trace_csv(run(sim), 3));
}

TEST_CASE("run summary records everything needed to reproduce the run") {
  ExperimentConfig cfg;
  apply_preset(cfg, "figure2");
  cfg.seed = 77;
  cfg.t_max = 0.25;
  const RunTrace trace = run(make_sim_config(cfg));
  const std::string path = "test_summary_tmp.json";
  write_run_summary(path, cfg, trace, 0.125);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  CHECK(j["seed"] == 77);
  CHECK(j["build_id"].is_string());
  CHECK(j["final_consensus"].size() == 3);
  // The embedded config text parses back to the exact same configuration.
  const ExperimentConfig echoed = parse_config(j["config"].get<std::string>());
  CHECK(echoed == cfg);
  std::remove(path.c_str());
}

TEST_CASE("rate and defect csv formats") {
  RateEstimate est;
  est.n_values = {16, 64};
  est.mse_values = {0.5, 0.125};
  const std::string csv = rate_csv(est);
  CHECK(csv == "n,mse\n16,0.5\n64,0.125\n");

  // dt values print at full precision so the file parses back bit-exactly.
  const std::vector<DefectSample> defects = {{0.25, 0.5}, {0.125, 0.25}};
  CHECK(defect_csv(defects) == "dt,max_defect\n0.25,0.5\n0.125,0.25\n");
}

TEST_CASE("unwritable paths raise IoError") {
  const RunTrace empty;
  try {
    write_trace_csv("/nonexistent-dir/none/trace.csv", empty, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

}  // TEST_SUITE
