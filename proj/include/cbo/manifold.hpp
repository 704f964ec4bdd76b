#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cbo/errors.hpp"
#include "cbo/points.hpp"

namespace cbo {

/// A compact hypersurface given as the zero level set of a signed distance
/// function gamma: negative inside, positive outside, |grad gamma| = 1 near
/// the surface. Built-in sphere and torus shapes carry exact closed-form
/// gradients and Laplacians; custom surfaces supply callbacks.
class Manifold {
 public:
  struct CustomCallbacks {
    std::size_t dim = 0;
    std::function<double(std::span<const double>)> sdf;
    std::function<void(std::span<const double>, std::span<double>)> grad;
    /// Optional; central finite differences with step 1e-4 * scale otherwise.
    std::function<double(std::span<const double>)> laplacian;
    /// Optional; sample_uniform raises UnsupportedSampler when absent.
    /// Receives (point index, stream seed, output row).
    std::function<void(std::size_t, std::uint64_t, std::span<double>)> sampler;
    /// Characteristic length used for finite-difference steps and tolerances.
    double scale = 1.0;
    std::string name = "custom";
  };

  static Manifold sphere(double radius, std::size_t dim);
  static Manifold torus(double major_radius, double minor_radius);
  static Manifold custom(CustomCallbacks callbacks);

  std::size_t dim() const;
  double scale() const;
  std::string description() const;  // e.g. "sphere:radius=1,dim=3"

  /// Signed distance gamma(v). SingularPoint where undefined (sphere center,
  /// torus symmetry axis or core circle).
  double sdf(std::span<const double> v) const;

  /// Outward unit normal grad gamma(v); |result| = 1 near the surface.
  void sdf_grad(std::span<const double> v, std::span<double> out) const;

  /// Laplacian of gamma at v.
  double sdf_laplacian(std::span<const double> v) const;

  /// P(v) y = y - (grad gamma . y) grad gamma, for v on the surface
  /// (|gamma(v)| <= 1e-8, OffManifold otherwise).
  void project_tangent(std::span<const double> v, std::span<const double> y,
                       std::span<double> out) const;

  /// Closest-point projection v -> v - gamma(v) grad gamma(v), iterated up to
  /// 5 times until |gamma| <= 1e-12; exact radial rescaling for the sphere.
  /// ProjectionDiverged when the tolerance is not met (v outside the reach).
  void closest_point(std::span<const double> v, std::span<double> out) const;

  /// n i.i.d. points uniform w.r.t. surface measure. Point i depends only on
  /// (stream_seed, i), never on n.
  PointsSoA sample_uniform(std::size_t n, std::uint64_t stream_seed) const;

  /// Intrinsic distance between nearby surface points: exact great-circle arc
  /// on the sphere, product-chart arc on the torus (exact to third order in
  /// the separation), Euclidean fallback for custom surfaces.
  double surface_distance(std::span<const double> u,
                          std::span<const double> v) const;

  /// Minor angle of a torus point (angle around the tube core), in (-pi, pi].
  double torus_minor_angle(std::span<const double> v) const;

  static constexpr double kOnSurfaceTol = 1e-8;
  static constexpr double kProjectionTol = 1e-12;
  static constexpr int kMaxProjectionIters = 5;

 private:
  struct Sphere {
    double radius;
    std::size_t dim;
  };
  struct Torus {
    double major_radius;
    double minor_radius;
  };

  explicit Manifold(std::variant<Sphere, Torus, CustomCallbacks> shape)
      : shape_(std::move(shape)) {}

  void check_dim(std::size_t got) const;

  std::variant<Sphere, Torus, CustomCallbacks> shape_;
};

}  // namespace cbo
