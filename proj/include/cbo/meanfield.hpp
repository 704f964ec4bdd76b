#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cbo/dynamics.hpp"
#include "cbo/transport.hpp"

namespace cbo {

/// Result of a log-log rate fit of mean squared error against particle count.
struct RateEstimate {
  std::vector<std::size_t> n_values;
  std::vector<double> mse_values;
  double slope = 0.0;
  double intercept = 0.0;
  double conf_halfwidth = 0.0;  // ~95% half-width on the slope
  std::size_t n_repeats = 0;
};

/// OLS fit of log(mse) on log(n). Requires >= 3 strictly increasing n values
/// spanning a factor of at least 16, and strictly positive mse values.
RateEstimate fit_rate(std::span<const std::size_t> n_values,
                      std::span<const double> mse_values, std::size_t n_repeats);

/// Mean squared consensus error at t = 0 against an m_reference-sample proxy
/// of the population consensus, one entry per N. Repeats run in parallel
/// across n_threads (0 = hardware).
std::vector<double> consensus_lln_mse(const Manifold& manifold,
                                      const Objective& objective, double alpha,
                                      std::span<const std::size_t> n_values,
                                      std::size_t n_repeats,
                                      std::size_t m_reference, std::uint64_t seed,
                                      std::size_t n_threads = 0);

/// Law-of-large-numbers rate for the consensus point: slope of log MSE vs
/// log N, expected near -1.
RateEstimate consensus_lln_rate(const Manifold& manifold,
                                const Objective& objective, double alpha,
                                std::span<const std::size_t> n_values,
                                std::size_t n_repeats, std::size_t m_reference,
                                std::uint64_t seed, std::size_t n_threads = 0);

/// Consensus-point path of a single simulation with cfg.n_particles
/// particles: entry k is the consensus computed from the state at step k and
/// used to advance to step k+1.
std::vector<std::vector<double>> record_consensus_path(const SimConfig& cfg,
                                                       std::size_t n_steps);

/// Per-N coupling error: the interacting N-particle system and N independent
/// copies driven by the recorded reference consensus path share initial data
/// and Brownian increments index by index; the entry is max_i of the
/// Monte-Carlo mean of |V_i - Vbar_i|^2 at t_check. The sub-seed rule makes
/// (N = m_reference, repeat 0) coincide with the reference run exactly.
std::vector<double> coupled_meanfield_mse(const SimConfig& cfg_template,
                                          std::span<const std::size_t> n_values,
                                          std::size_t m_reference, double t_check,
                                          std::size_t n_repeats,
                                          std::size_t n_threads = 0);

/// Mean-field coupling rate: slope of the above vs N, expected near -1.
RateEstimate coupled_meanfield_rate(const SimConfig& cfg_template,
                                    std::span<const std::size_t> n_values,
                                    std::size_t m_reference, double t_check,
                                    std::size_t n_repeats,
                                    std::size_t n_threads = 0);

/// Bounded test function with bounded gradient, used to probe weak
/// convergence of the empirical measure.
struct TestFunction {
  std::string name;
  std::function<double(std::span<const double>)> fn;

  static TestFunction coordinate(std::size_t c);
  static TestFunction coordinate_square(std::size_t c);
  static TestFunction constant_one();
  /// Scaled copy: phi'(v) = factor * phi(v).
  TestFunction scaled(double factor) const;
};

/// MSE of the empirical mean of phi over the interacting N-particle system at
/// t_check against the m_reference-particle proxy, one entry per N.
std::vector<double> empirical_measure_mse(const SimConfig& cfg_template,
                                          const TestFunction& phi,
                                          std::span<const std::size_t> n_values,
                                          std::size_t m_reference, double t_check,
                                          std::size_t n_repeats,
                                          std::size_t n_threads = 0);

/// Weak empirical-measure convergence rate, expected near -1.
RateEstimate empirical_measure_convergence(const SimConfig& cfg_template,
                                           const TestFunction& phi,
                                           std::span<const std::size_t> n_values,
                                           std::size_t m_reference, double t_check,
                                           std::size_t n_repeats,
                                           std::size_t n_threads = 0);

}  // namespace cbo
