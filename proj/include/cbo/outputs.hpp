#pragma once

#include <string>
#include <vector>

#include "cbo/config.hpp"
#include "cbo/dynamics.hpp"
#include "cbo/meanfield.hpp"

namespace cbo {

/// Identifier of the built tree (git describe), for reproducibility records.
const char* build_id();

/// Header: step,t,consensus_0..consensus_{d-1},consensus_energy,diameter,
/// max_gamma_defect,mean_energy. Full %.17g precision; a rerun of the same
/// seeded config writes byte-identical content.
std::string trace_csv(const RunTrace& trace, std::size_t dim);
void write_trace_csv(const std::string& path, const RunTrace& trace,
                     std::size_t dim);

std::string rate_csv(const RateEstimate& est);
void write_rate_csv(const std::string& path, const RateEstimate& est);

std::string defect_csv(const std::vector<DefectSample>& samples);
void write_defect_csv(const std::string& path,
                      const std::vector<DefectSample>& samples);

/// JSON summary with everything needed to reproduce the run: the canonical
/// config text, seed, build id, plus result fields and wall time.
void write_run_summary(const std::string& path, const ExperimentConfig& cfg,
                       const RunTrace& trace, double wall_seconds);
void write_rate_summary(const std::string& path, const ExperimentConfig& cfg,
                        const RateEstimate& est, double wall_seconds);
void write_defect_summary(const std::string& path, const ExperimentConfig& cfg,
                          const std::vector<DefectSample>& samples,
                          double wall_seconds);
void write_bench_summary(const std::string& path, const ExperimentConfig& cfg,
                         std::size_t successes, std::size_t seeds,
                         const std::vector<double>& distances,
                         double wall_seconds);

}  // namespace cbo
