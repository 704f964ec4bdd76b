#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbo/kernels.hpp"
#include "cbo/points.hpp"

namespace cbo {

/// Nonnegative cost evaluated pointwise; the dynamics never takes gradients.
class Objective {
 public:
  /// E(v) = -A exp(-a sqrt(b^2/d sum (v_k - v*_k)^2))
  ///        - exp(1/d sum cos(2 pi b (v_k - v*_k))) + e + B.
  /// Minimum value B - A at v = v*.
  static Objective ackley(std::vector<double> v_star, double A = 20.0,
                          double a = 0.2, double b = 3.0, double B = 20.0);

  static Objective custom(std::string name, std::size_t dim,
                          std::function<double(std::span<const double>)> fn);

  double eval(std::span<const double> v) const;  // DimensionMismatch on bad size
  void eval_batch(const PointsSoA& points, std::span<double> out) const;

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::optional<std::vector<double>>& known_minimizer() const {
    return known_minimizer_;
  }
  const std::map<std::string, double>& params() const { return params_; }
  std::string description() const;  // e.g. "ackley:vstar=0,0,1"

 private:
  Objective() = default;

  std::string name_;
  std::size_t dim_ = 0;
  std::function<double(std::span<const double>)> fn_;
  std::optional<std::vector<double>> known_minimizer_;
  std::map<std::string, double> params_;
  // Set for the Ackley benchmark; routes eval_batch through the batch kernel.
  std::optional<kernels::AckleyParams> ackley_params_;
  std::vector<double> v_star_;
};

}  // namespace cbo
