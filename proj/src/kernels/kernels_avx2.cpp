#include <cmath>
#include <numbers>

#include "avx2_math.hpp"
#include "kernel_table.hpp"

namespace cbo::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
}

inline double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(s2, _mm_unpackhi_pd(s2, s2)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(s2, _mm_unpackhi_pd(s2, s2)));
}

double v_reduce_min(const double* x, std::size_t n) {
  std::size_t i = 0;
  double m;
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
    m = hmin(acc);
  } else {
    m = x[0];
    i = 1;
  }
  for (; i < n; ++i) m = x[i] < m ? x[i] : m;
  return m;
}

double v_reduce_max(const double* x, std::size_t n) {
  std::size_t i = 0;
  double m;
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
    m = hmax(acc);
  } else {
    m = x[0];
    i = 1;
  }
  for (; i < n; ++i) m = x[i] > m ? x[i] : m;
  return m;
}

double v_reduce_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

void v_multiply(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

void v_exp_weights(const double* e, std::size_t n, double alpha, double shift,
                   double* w) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vs = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d arg =
        _mm256_mul_pd(_mm256_sub_pd(vs, _mm256_loadu_pd(e + i)), va);
    _mm256_storeu_pd(w + i, exp_pd(arg));
  }
  for (; i < n; ++i) w[i] = std::exp((shift - e[i]) * alpha);
}

void v_ackley_batch(const double* const* cols, std::size_t n, std::size_t d,
                    const double* vstar, const AckleyParams& p, double* out) {
  const double inv_d = 1.0 / static_cast<double>(d);
  const __m256d two_pi_b =
      _mm256_set1_pd(2.0 * std::numbers::pi * p.frequency);
  const __m256d sq_scale = _mm256_set1_pd(p.frequency * p.frequency * inv_d);
  const __m256d neg_decay = _mm256_set1_pd(-p.decay);
  const __m256d vinv_d = _mm256_set1_pd(inv_d);
  const __m256d amp = _mm256_set1_pd(p.amplitude);
  const __m256d base = _mm256_set1_pd(std::numbers::e + p.offset);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc_sq = _mm256_setzero_pd();
    __m256d acc_cos = _mm256_setzero_pd();
    for (std::size_t c = 0; c < d; ++c) {
      const __m256d dv =
          _mm256_sub_pd(_mm256_loadu_pd(cols[c] + i), _mm256_set1_pd(vstar[c]));
      acc_sq = _mm256_fmadd_pd(dv, dv, acc_sq);
      acc_cos = _mm256_add_pd(acc_cos, cos_pd(_mm256_mul_pd(two_pi_b, dv)));
    }
    const __m256d root = _mm256_sqrt_pd(_mm256_mul_pd(sq_scale, acc_sq));
    const __m256d t1 = exp_pd(_mm256_mul_pd(neg_decay, root));
    const __m256d t2 = exp_pd(_mm256_mul_pd(vinv_d, acc_cos));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(base, _mm256_fmadd_pd(amp, t1, t2)));
  }
  for (; i < n; ++i) out[i] = ackley_scalar_point(cols, i, d, vstar, p);
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table = {v_reduce_min, v_reduce_max, v_reduce_sum,
                                    v_multiply,   v_exp_weights, v_ackley_batch};
  return table;
}

}  // namespace cbo::kernels::detail
