#pragma once

#include <cstddef>

namespace cbo::kernels {

/// The inner arithmetic loops (batch objective evaluation, consensus weight
/// and reduction sweeps) exist twice: a scalar reference and an AVX2 variant.
/// The backend is chosen once per process: explicitly via set_backend(), via
/// the CBO_KERNELS environment variable ("scalar" or "avx2"), or by CPU
/// detection. Both variants are equivalence-tested against each other; a
/// given backend is bit-deterministic run to run.
enum class Backend { Scalar, Avx2 };

bool backend_supported(Backend backend) noexcept;
Backend active_backend() noexcept;
void set_backend(Backend backend);  // ValidationError when unsupported here
const char* backend_name(Backend backend) noexcept;

struct AckleyParams {
  double amplitude = 20.0;   // A
  double decay = 0.2;        // a
  double frequency = 3.0;    // b
  double offset = 20.0;      // B
};

double reduce_min(const double* x, std::size_t n);
double reduce_max(const double* x, std::size_t n);
double reduce_sum(const double* x, std::size_t n);

/// out[i] = x[i] * y[i]
void multiply(const double* x, const double* y, double* out, std::size_t n);

/// w[i] = exp(-alpha * (e[i] - shift)); the shift keeps arguments <= 0 when
/// shift = min(e), so the weights never overflow for any alpha.
void exp_weights(const double* e, std::size_t n, double alpha, double shift,
                 double* w);

/// Evaluates the Ackley cost at n points given as d coordinate columns.
void ackley_batch(const double* const* cols, std::size_t n, std::size_t d,
                  const double* vstar, const AckleyParams& p, double* out);

}  // namespace cbo::kernels
