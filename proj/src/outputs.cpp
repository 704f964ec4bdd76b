#include "cbo/outputs.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace cbo {

namespace {

void append_g17(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) raise(ErrorCode::IoError, "failed writing '" + path + "'");
}

nlohmann::json base_summary(const ExperimentConfig& cfg, double wall_seconds) {
  return {
      {"command", cfg.command},
      {"config", serialize_config(cfg)},
      {"seed", cfg.seed},
      {"build_id", build_id()},
      {"wall_time_s", wall_seconds},
  };
}

}  // namespace

const char* build_id() {
#ifdef CBO_BUILD_ID
  return CBO_BUILD_ID;
#else
  return "unknown";
#endif
}

std::string trace_csv(const RunTrace& trace, std::size_t dim) {
  std::string s = "step,t";
  for (std::size_t c = 0; c < dim; ++c) s += ",consensus_" + std::to_string(c);
  s += ",consensus_energy,diameter,max_gamma_defect,mean_energy\n";
  for (const TraceRecord& r : trace.records) {
    s += std::to_string(r.step);
    s += ',';
    append_g17(s, r.t);
    for (std::size_t c = 0; c < dim; ++c) {
      s += ',';
      append_g17(s, r.consensus.at(c));
    }
    s += ',';
    append_g17(s, r.consensus_energy);
    s += ',';
    append_g17(s, r.diameter);
    s += ',';
    append_g17(s, r.max_gamma_defect);
    s += ',';
    append_g17(s, r.mean_energy);
    s += '\n';
  }
  return s;
}

void write_trace_csv(const std::string& path, const RunTrace& trace,
                     std::size_t dim) {
  write_file(path, trace_csv(trace, dim));
}

std::string rate_csv(const RateEstimate& est) {
  std::string s = "n,mse\n";
  for (std::size_t i = 0; i < est.n_values.size(); ++i) {
    s += std::to_string(est.n_values[i]);
    s += ',';
    append_g17(s, est.mse_values[i]);
    s += '\n';
  }
  return s;
}

void write_rate_csv(const std::string& path, const RateEstimate& est) {
  write_file(path, rate_csv(est));
}

std::string defect_csv(const std::vector<DefectSample>& samples) {
  std::string s = "dt,max_defect\n";
  for (const DefectSample& d : samples) {
    append_g17(s, d.dt);
    s += ',';
    append_g17(s, d.max_defect);
    s += '\n';
  }
  return s;
}

void write_defect_csv(const std::string& path,
                      const std::vector<DefectSample>& samples) {
  write_file(path, defect_csv(samples));
}

void write_run_summary(const std::string& path, const ExperimentConfig& cfg,
                       const RunTrace& trace, double wall_seconds) {
  nlohmann::json j = base_summary(cfg, wall_seconds);
  const TraceRecord& last = trace.final_record();
  j["records"] = trace.records.size();
  j["final_t"] = last.t;
  j["final_consensus"] = last.consensus;
  j["final_consensus_energy"] = last.consensus_energy;
  j["final_diameter"] = last.diameter;
  write_file(path, j.dump(2) + "\n");
}

void write_rate_summary(const std::string& path, const ExperimentConfig& cfg,
                        const RateEstimate& est, double wall_seconds) {
  nlohmann::json j = base_summary(cfg, wall_seconds);
  j["n_values"] = est.n_values;
  j["mse_values"] = est.mse_values;
  j["slope"] = est.slope;
  j["intercept"] = est.intercept;
  j["conf_halfwidth"] = est.conf_halfwidth;
  j["n_repeats"] = est.n_repeats;
  write_file(path, j.dump(2) + "\n");
}

void write_defect_summary(const std::string& path, const ExperimentConfig& cfg,
                          const std::vector<DefectSample>& samples,
                          double wall_seconds) {
  nlohmann::json j = base_summary(cfg, wall_seconds);
  nlohmann::json arr = nlohmann::json::array();
  for (const DefectSample& d : samples)
    arr.push_back({{"dt", d.dt}, {"max_defect", d.max_defect}});
  j["defects"] = arr;
  bool decreasing = true;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k)
    decreasing = decreasing && samples[k].max_defect > samples[k + 1].max_defect;
  j["strictly_decreasing"] = decreasing;
  write_file(path, j.dump(2) + "\n");
}

void write_bench_summary(const std::string& path, const ExperimentConfig& cfg,
                         std::size_t successes, std::size_t seeds,
                         const std::vector<double>& distances,
                         double wall_seconds) {
  nlohmann::json j = base_summary(cfg, wall_seconds);
  j["seeds"] = seeds;
  j["successes"] = successes;
  j["success_rate"] = static_cast<double>(successes) / static_cast<double>(seeds);
  j["threshold"] = cfg.success_threshold;
  j["distances"] = distances;
  write_file(path, j.dump(2) + "\n");
}

}  // namespace cbo
