#include "cbo/transport.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "cbo/vec.hpp"

namespace cbo {

double wasserstein1_exact(const PointsSoA& a, const PointsSoA& b) {
  const std::size_t m = a.size();
  if (m == 0 || b.size() == 0)
    raise(ErrorCode::UnequalSupport, "measures must have at least one atom");
  if (m != b.size())
    raise(ErrorCode::UnequalSupport,
          "equal-weight oracle requires equal atom counts");
  if (a.dim() != b.dim())
    raise(ErrorCode::DimensionMismatch, "atoms live in different dimensions");
  if (m > kWassersteinOracleLimit)
    raise(ErrorCode::OracleLimitExceeded,
          "exact oracle enumerates permutations of at most 8 atoms");

  std::array<std::array<double, kWassersteinOracleLimit>, kWassersteinOracleLimit>
      cost{};
  std::vector<double> ra(a.dim()), rb(b.dim());
  for (std::size_t i = 0; i < m; ++i) {
    a.get_row(i, ra);
    for (std::size_t j = 0; j < m; ++j) {
      b.get_row(j, rb);
      cost[i][j] = vec::distance(ra, rb);
    }
  }

  std::array<std::size_t, kWassersteinOracleLimit> perm{};
  std::iota(perm.begin(), perm.begin() + m, 0u);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += cost[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.begin() + m));
  return best / static_cast<double>(m);
}

}  // namespace cbo
