#include <cstdlib>
#include <string_view>

#include "cbo/errors.hpp"
#include "kernel_table.hpp"

namespace cbo::kernels {

namespace {

using detail::KernelTable;

bool cpu_has_avx2() noexcept {
#if CBO_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) noexcept {
#if CBO_HAVE_AVX2
  if (b == Backend::Avx2) return &detail::avx2_table();
#endif
  (void)b;
  return &detail::scalar_table();
}

struct State {
  Backend backend;
  const KernelTable* table;
};

State initial_state() {
  Backend b = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
  if (const char* env = std::getenv("CBO_KERNELS")) {
    const std::string_view v(env);
    if (v == "scalar") b = Backend::Scalar;
    else if (v == "avx2" && backend_supported(Backend::Avx2)) b = Backend::Avx2;
  }
  return {b, table_for(b)};
}

State& state() {
  static State s = initial_state();
  return s;
}

}  // namespace

bool backend_supported(Backend backend) noexcept {
  return backend == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() noexcept { return state().backend; }

void set_backend(Backend backend) {
  if (!backend_supported(backend))
    raise(ErrorCode::ValidationError,
          std::string("kernel backend not supported on this host: ") +
              backend_name(backend));
  state() = {backend, table_for(backend)};
}

const char* backend_name(Backend backend) noexcept {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

double reduce_min(const double* x, std::size_t n) {
  return state().table->reduce_min(x, n);
}

double reduce_max(const double* x, std::size_t n) {
  return state().table->reduce_max(x, n);
}

double reduce_sum(const double* x, std::size_t n) {
  return n == 0 ? 0.0 : state().table->reduce_sum(x, n);
}

void multiply(const double* x, const double* y, double* out, std::size_t n) {
  state().table->multiply(x, y, out, n);
}

void exp_weights(const double* e, std::size_t n, double alpha, double shift,
                 double* w) {
  state().table->exp_weights(e, n, alpha, shift, w);
}

void ackley_batch(const double* const* cols, std::size_t n, std::size_t d,
                  const double* vstar, const AckleyParams& p, double* out) {
  state().table->ackley_batch(cols, n, d, vstar, p, out);
}

}  // namespace cbo::kernels
