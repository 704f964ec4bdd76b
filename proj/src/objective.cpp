#include "cbo/objective.hpp"

#include <cstdio>

#include "kernels/kernel_table.hpp"

namespace cbo {

Objective Objective::ackley(std::vector<double> v_star, double A, double a,
                            double b, double B) {
  if (v_star.empty())
    raise(ErrorCode::ValidationError, "ackley requires a nonempty minimizer");
  Objective obj;
  obj.name_ = "ackley";
  obj.dim_ = v_star.size();
  obj.v_star_ = v_star;
  obj.known_minimizer_ = std::move(v_star);
  obj.params_ = {{"A", A}, {"a", a}, {"b", b}, {"B", B}};
  obj.ackley_params_ = kernels::AckleyParams{A, a, b, B};
  return obj;
}

Objective Objective::custom(std::string name, std::size_t dim,
                            std::function<double(std::span<const double>)> fn) {
  if (!fn) raise(ErrorCode::ValidationError, "custom objective requires a callable");
  if (dim == 0) raise(ErrorCode::ValidationError, "objective dimension must be >= 1");
  Objective obj;
  obj.name_ = std::move(name);
  obj.dim_ = dim;
  obj.fn_ = std::move(fn);
  return obj;
}

double Objective::eval(std::span<const double> v) const {
  if (v.size() != dim_)
    raise(ErrorCode::DimensionMismatch, "objective expects dimension " +
                                            std::to_string(dim_) + ", got " +
                                            std::to_string(v.size()));
  if (ackley_params_) {
    const double* col = v.data();
    std::vector<const double*> cols(dim_);
    for (std::size_t c = 0; c < dim_; ++c) cols[c] = col + c;
    return kernels::detail::ackley_scalar_point(cols.data(), 0, dim_,
                                                v_star_.data(), *ackley_params_);
  }
  return fn_(v);
}

void Objective::eval_batch(const PointsSoA& points, std::span<double> out) const {
  if (points.dim() != dim_)
    raise(ErrorCode::DimensionMismatch, "batch dimension mismatch");
  if (out.size() != points.size())
    raise(ErrorCode::DimensionMismatch, "output length mismatch");
  const std::size_t n = points.size();
  if (n == 0) return;
  if (ackley_params_) {
    std::vector<const double*> cols(dim_);
    for (std::size_t c = 0; c < dim_; ++c) cols[c] = points.col(c);
    kernels::ackley_batch(cols.data(), n, dim_, v_star_.data(), *ackley_params_,
                          out.data());
    return;
  }
  std::vector<double> row(dim_);
  for (std::size_t i = 0; i < n; ++i) {
    points.get_row(i, row);
    out[i] = fn_(row);
  }
}

std::string Objective::description() const {
  if (!ackley_params_) return name_;
  std::string s = "ackley:vstar=";
  char buf[64];
  for (std::size_t c = 0; c < v_star_.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%.17g", v_star_[c]);
    if (c) s += ',';
    s += buf;
  }
  const kernels::AckleyParams def;
  const auto& p = *ackley_params_;
  if (p.amplitude != def.amplitude) {
    std::snprintf(buf, sizeof buf, ",A=%.17g", p.amplitude);
    s += buf;
  }
  if (p.decay != def.decay) {
    std::snprintf(buf, sizeof buf, ",a=%.17g", p.decay);
    s += buf;
  }
  if (p.frequency != def.frequency) {
    std::snprintf(buf, sizeof buf, ",b=%.17g", p.frequency);
    s += buf;
  }
  if (p.offset != def.offset) {
    std::snprintf(buf, sizeof buf, ",B=%.17g", p.offset);
    s += buf;
  }
  return s;
}

}  // namespace cbo
