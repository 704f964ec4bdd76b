#pragma once

// Vector transcendentals for the AVX2 kernel lane. Range reduction plus
// near-minimax polynomials; coefficients fitted to ~1e-18 on the reduced
// interval. Inputs must be finite. cos_pd is accurate for |x| <= ~1e6
// (the k*pi products stay exact); exp_pd handles the full double range with
// gradual underflow to zero.

#include <immintrin.h>

namespace cbo::kernels::detail {

inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
  const __m256d ln2_hi = _mm256_set1_pd(0.69314716756343842);
  const __m256d ln2_lo = _mm256_set1_pd(1.2996506893889889e-08);

  // Clamp so the exponent arithmetic below stays in range; exp saturates to
  // 0 (underflow) / ~8.2e307 (just below overflow) outside.
  x = _mm256_max_pd(x, _mm256_set1_pd(-745.0));
  x = _mm256_min_pd(x, _mm256_set1_pd(709.0));

  const __m256d k =
      _mm256_round_pd(_mm256_mul_pd(x, log2e),
                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  __m256d p = _mm256_set1_pd(2.5110037605963778e-08);
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7632639639041030e-07));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7557240918578970e-06));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.4801485482328492e-05));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.9841269890047114e-04));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.3888888952314775e-03));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(8.3333333333196006e-03));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(4.1666666666488095e-02));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.6666666666666681e-01));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(5.0000000000000184e-01));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  // Scale by 2^k in two halves so subnormal results round gracefully.
  const __m128i ki = _mm256_cvtpd_epi32(k);
  const __m128i k1 = _mm_srai_epi32(ki, 1);
  const __m128i k2 = _mm_sub_epi32(ki, k1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256d s1 = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k1), bias), 52));
  const __m256d s2 = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(k2), bias), 52));
  return _mm256_mul_pd(_mm256_mul_pd(p, s1), s2);
}

inline __m256d cos_pd(__m256d x) {
  const __m256d inv_pi = _mm256_set1_pd(0.31830988618379069);
  const __m256d pi_hi = _mm256_set1_pd(3.1415926218032837);
  const __m256d pi_mid = _mm256_set1_pd(3.1786509424591713e-08);
  const __m256d pi_lo = _mm256_set1_pd(1.2246467991473532e-16);

  // cos(x) = (-1)^k cos(r) with r = x - k*pi, r in [-pi/2, pi/2].
  const __m256d k =
      _mm256_round_pd(_mm256_mul_pd(x, inv_pi),
                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, pi_hi, x);
  r = _mm256_fnmadd_pd(k, pi_mid, r);
  r = _mm256_fnmadd_pd(k, pi_lo, r);

  const __m256d u = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(4.6089770030017970e-14);
  p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(-1.1462901901757275e-11));
  p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(2.0876561839933163e-09));
  p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(-2.7557316391025751e-07));
  p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(2.4801587277414924e-05));
  p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(-1.3888888888772990e-03));
  p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(4.1666666666663882e-02));
  p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(-4.9999999999999974e-01));
  p = _mm256_fmadd_pd(p, u, _mm256_set1_pd(9.9999999999999996e-01));

  const __m256i k64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  const __m256i sign =
      _mm256_slli_epi64(_mm256_and_si256(k64, _mm256_set1_epi64x(1)), 63);
  return _mm256_xor_pd(p, _mm256_castsi256_pd(sign));
}

}  // namespace cbo::kernels::detail
