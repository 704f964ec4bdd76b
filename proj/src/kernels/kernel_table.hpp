#pragma once

#include <cstddef>

#include "cbo/kernels.hpp"

namespace cbo::kernels::detail {

struct KernelTable {
  double (*reduce_min)(const double*, std::size_t);
  double (*reduce_max)(const double*, std::size_t);
  double (*reduce_sum)(const double*, std::size_t);
  void (*multiply)(const double*, const double*, double*, std::size_t);
  void (*exp_weights)(const double*, std::size_t, double, double, double*);
  void (*ackley_batch)(const double* const*, std::size_t, std::size_t,
                       const double*, const AckleyParams&, double*);
};

const KernelTable& scalar_table() noexcept;
#if CBO_HAVE_AVX2
const KernelTable& avx2_table() noexcept;
#endif

/// Shared scalar Ackley evaluation; also used for vector-loop tails so a
/// single point evaluates identically under both backends.
double ackley_scalar_point(const double* const* cols, std::size_t i, std::size_t d,
                           const double* vstar, const AckleyParams& p);

}  // namespace cbo::kernels::detail
