#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cbo/errors.hpp"

namespace cbo {

/// A fixed set of n points in R^d stored coordinate-major, so that a sweep
/// over all points along one coordinate is a contiguous array. This is the
/// layout the batch kernels operate on.
class PointsSoA {
 public:
  PointsSoA() = default;
  PointsSoA(std::size_t n, std::size_t d) : n_(n), d_(d), data_(n * d, 0.0) {}

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }

  double* col(std::size_t c) { return data_.data() + c * n_; }
  const double* col(std::size_t c) const { return data_.data() + c * n_; }

  double& at(std::size_t i, std::size_t c) { return data_[c * n_ + i]; }
  double at(std::size_t i, std::size_t c) const { return data_[c * n_ + i]; }

  void get_row(std::size_t i, std::span<double> out) const {
    if (out.size() != d_) raise(ErrorCode::DimensionMismatch, "row buffer size");
    for (std::size_t c = 0; c < d_; ++c) out[c] = at(i, c);
  }

  void set_row(std::size_t i, std::span<const double> in) {
    if (in.size() != d_) raise(ErrorCode::DimensionMismatch, "row buffer size");
    for (std::size_t c = 0; c < d_; ++c) at(i, c) = in[c];
  }

  std::vector<double> row(std::size_t i) const {
    std::vector<double> out(d_);
    get_row(i, out);
    return out;
  }

  bool all_finite() const {
    for (double x : data_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  bool operator==(const PointsSoA&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> data_;
};

}  // namespace cbo
