#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace cbo::vec {

inline double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm2(std::span<const double> x) { return dot(x, x); }

inline double norm(std::span<const double> x) { return std::sqrt(norm2(x)); }

inline double distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x[i] - y[i];
    s += t * t;
  }
  return std::sqrt(s);
}

inline void sub(std::span<const double> x, std::span<const double> y,
                std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
}

/// out = y - (g.y) g, the component of y orthogonal to the unit vector g.
inline void tangent_component(std::span<const double> g, std::span<const double> y,
                              std::span<double> out) {
  const double gy = dot(g, y);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = y[i] - gy * g[i];
}

inline bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace cbo::vec
