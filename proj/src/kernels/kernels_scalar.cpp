#include <cmath>
#include <numbers>

#include "kernel_table.hpp"

namespace cbo::kernels::detail {

double ackley_scalar_point(const double* const* cols, std::size_t i, std::size_t d,
                           const double* vstar, const AckleyParams& p) {
  const double two_pi_b = 2.0 * std::numbers::pi * p.frequency;
  double acc_sq = 0.0;
  double acc_cos = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    const double dv = cols[c][i] - vstar[c];
    acc_sq += dv * dv;
    acc_cos += std::cos(two_pi_b * dv);
  }
  const double inv_d = 1.0 / static_cast<double>(d);
  const double root = std::sqrt(p.frequency * p.frequency * inv_d * acc_sq);
  return -p.amplitude * std::exp(-p.decay * root) - std::exp(inv_d * acc_cos) +
         std::numbers::e + p.offset;
}

namespace {

double s_reduce_min(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = x[i] < m ? x[i] : m;
  return m;
}

double s_reduce_max(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

double s_reduce_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

void s_multiply(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void s_exp_weights(const double* e, std::size_t n, double alpha, double shift,
                   double* w) {
  for (std::size_t i = 0; i < n; ++i) w[i] = std::exp((shift - e[i]) * alpha);
}

void s_ackley_batch(const double* const* cols, std::size_t n, std::size_t d,
                    const double* vstar, const AckleyParams& p, double* out) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = ackley_scalar_point(cols, i, d, vstar, p);
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table = {s_reduce_min, s_reduce_max, s_reduce_sum,
                                    s_multiply,   s_exp_weights, s_ackley_batch};
  return table;
}

}  // namespace cbo::kernels::detail
