#include "cbo/manifold.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "cbo/rng.hpp"
#include "cbo/vec.hpp"

namespace cbo {

namespace {

constexpr std::uint64_t kDomainSample = 0x53616D70;  // manifold samplers

double sphere_norm_checked(std::span<const double> v, double radius) {
  const double n = vec::norm(v);
  if (n < 1e-14 * radius)
    raise(ErrorCode::SingularPoint, "sphere signed distance undefined at the center");
  return n;
}

struct TorusFrame {
  double s;  // distance to the symmetry axis
  double q;  // distance to the core circle
};

TorusFrame torus_frame(std::span<const double> v, double R, double r,
                       bool need_grad) {
  const double s = std::hypot(v[0], v[1]);
  if (need_grad && s < 1e-14 * R)
    raise(ErrorCode::SingularPoint, "torus gradient undefined on the symmetry axis");
  const double q = std::hypot(s - R, v[2]);
  if (need_grad && q < 1e-14 * r)
    raise(ErrorCode::SingularPoint, "torus gradient undefined on the core circle");
  return {s, q};
}

}  // namespace

Manifold Manifold::sphere(double radius, std::size_t dim) {
  if (!(radius > 0.0)) raise(ErrorCode::ValidationError, "sphere radius must be positive");
  if (dim < 2) raise(ErrorCode::ValidationError, "ambient dimension must be >= 2");
  return Manifold(Sphere{radius, dim});
}

Manifold Manifold::torus(double major_radius, double minor_radius) {
  if (!(major_radius > 0.0) || !(minor_radius > 0.0))
    raise(ErrorCode::ValidationError, "torus radii must be positive");
  if (!(minor_radius < major_radius))
    raise(ErrorCode::ValidationError, "torus requires minor radius r < major radius R");
  return Manifold(Torus{major_radius, minor_radius});
}

Manifold Manifold::custom(CustomCallbacks callbacks) {
  if (callbacks.dim < 2) raise(ErrorCode::ValidationError, "ambient dimension must be >= 2");
  if (!callbacks.sdf || !callbacks.grad)
    raise(ErrorCode::ValidationError, "custom manifold requires sdf and grad callbacks");
  if (!(callbacks.scale > 0.0))
    raise(ErrorCode::ValidationError, "custom manifold scale must be positive");
  return Manifold(std::move(callbacks));
}

std::size_t Manifold::dim() const {
  if (const auto* s = std::get_if<Sphere>(&shape_)) return s->dim;
  if (std::holds_alternative<Torus>(shape_)) return 3;
  return std::get<CustomCallbacks>(shape_).dim;
}

double Manifold::scale() const {
  if (const auto* s = std::get_if<Sphere>(&shape_)) return s->radius;
  if (const auto* t = std::get_if<Torus>(&shape_)) return t->major_radius;
  return std::get<CustomCallbacks>(shape_).scale;
}

std::string Manifold::description() const {
  char buf[128];
  if (const auto* s = std::get_if<Sphere>(&shape_)) {
    std::snprintf(buf, sizeof buf, "sphere:radius=%.17g,dim=%zu", s->radius, s->dim);
    return buf;
  }
  if (const auto* t = std::get_if<Torus>(&shape_)) {
    std::snprintf(buf, sizeof buf, "torus:R=%.17g,r=%.17g", t->major_radius,
                  t->minor_radius);
    return buf;
  }
  return std::get<CustomCallbacks>(shape_).name;
}

void Manifold::check_dim(std::size_t got) const {
  if (got != dim()) raise(ErrorCode::DimensionMismatch, "point dimension mismatch");
}

double Manifold::sdf(std::span<const double> v) const {
  check_dim(v.size());
  if (const auto* s = std::get_if<Sphere>(&shape_))
    return sphere_norm_checked(v, s->radius) - s->radius;
  if (const auto* t = std::get_if<Torus>(&shape_)) {
    const auto f = torus_frame(v, t->major_radius, t->minor_radius, false);
    return f.q - t->minor_radius;
  }
  return std::get<CustomCallbacks>(shape_).sdf(v);
}

void Manifold::sdf_grad(std::span<const double> v, std::span<double> out) const {
  check_dim(v.size());
  check_dim(out.size());
  if (const auto* s = std::get_if<Sphere>(&shape_)) {
    const double n = sphere_norm_checked(v, s->radius);
    for (std::size_t c = 0; c < v.size(); ++c) out[c] = v[c] / n;
    return;
  }
  if (const auto* t = std::get_if<Torus>(&shape_)) {
    const auto f = torus_frame(v, t->major_radius, t->minor_radius, true);
    const double radial = (f.s - t->major_radius) / (f.q * f.s);
    out[0] = radial * v[0];
    out[1] = radial * v[1];
    out[2] = v[2] / f.q;
    return;
  }
  std::get<CustomCallbacks>(shape_).grad(v, out);
}

double Manifold::sdf_laplacian(std::span<const double> v) const {
  check_dim(v.size());
  if (const auto* s = std::get_if<Sphere>(&shape_)) {
    const double n = sphere_norm_checked(v, s->radius);
    return static_cast<double>(s->dim - 1) / n;
  }
  if (const auto* t = std::get_if<Torus>(&shape_)) {
    const auto f = torus_frame(v, t->major_radius, t->minor_radius, true);
    return 1.0 / f.q + (f.s - t->major_radius) / (f.s * f.q);
  }
  const auto& cb = std::get<CustomCallbacks>(shape_);
  if (cb.laplacian) return cb.laplacian(v);
  // Central finite differences, step h = 1e-4 * scale.
  const double h = 1e-4 * cb.scale;
  std::vector<double> p(v.begin(), v.end());
  const double center = cb.sdf(p);
  double acc = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const double saved = p[c];
    p[c] = saved + h;
    const double fp = cb.sdf(p);
    p[c] = saved - h;
    const double fm = cb.sdf(p);
    p[c] = saved;
    acc += (fp - 2.0 * center + fm) / (h * h);
  }
  return acc;
}

void Manifold::project_tangent(std::span<const double> v, std::span<const double> y,
                               std::span<double> out) const {
  check_dim(y.size());
  const double gamma = sdf(v);
  if (std::abs(gamma) > kOnSurfaceTol)
    raise(ErrorCode::OffManifold, "project_tangent requires |gamma(v)| <= 1e-8");
  std::vector<double> g(v.size());
  sdf_grad(v, g);
  vec::tangent_component(g, y, out);
}

void Manifold::closest_point(std::span<const double> v, std::span<double> out) const {
  check_dim(v.size());
  check_dim(out.size());
  if (const auto* s = std::get_if<Sphere>(&shape_)) {
    const double n = sphere_norm_checked(v, s->radius);
    const double f = s->radius / n;
    for (std::size_t c = 0; c < v.size(); ++c) out[c] = v[c] * f;
    return;
  }
  std::vector<double> g(v.size());
  for (std::size_t c = 0; c < v.size(); ++c) out[c] = v[c];
  for (int iter = 0; iter < kMaxProjectionIters; ++iter) {
    const double gamma = sdf(out);
    if (std::abs(gamma) <= kProjectionTol) return;
    sdf_grad(out, g);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] -= gamma * g[c];
  }
  if (std::abs(sdf(out)) <= kProjectionTol) return;
  raise(ErrorCode::ProjectionDiverged,
        "closest-point iteration did not converge; point may be outside the reach");
}

PointsSoA Manifold::sample_uniform(std::size_t n, std::uint64_t stream_seed) const {
  if (n < 1) raise(ErrorCode::ValidationError, "sample count must be >= 1");
  const std::size_t d = dim();
  PointsSoA pts(n, d);
  std::vector<double> row(d);

  if (const auto* s = std::get_if<Sphere>(&shape_)) {
    // Normalized isotropic Gaussians are uniform on the sphere.
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t key = rng::stream_key(stream_seed, kDomainSample, i);
      std::uint64_t attempt = 0;
      double norm = 0.0;
      do {
        rng::fill_normals(key, attempt++, row);
        norm = vec::norm(row);
      } while (norm < 1e-12);
      const double f = s->radius / norm;
      for (double& x : row) x *= f;
      pts.set_row(i, row);
    }
    return pts;
  }

  if (const auto* t = std::get_if<Torus>(&shape_)) {
    // Minor angle by rejection with acceptance (R + r cos t) / (R + r),
    // major angle uniform; together uniform w.r.t. surface area.
    const double R = t->major_radius;
    const double r = t->minor_radius;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t key = rng::stream_key(stream_seed, kDomainSample, i);
      for (std::uint64_t attempt = 0;; ++attempt) {
        const double theta =
            2.0 * std::numbers::pi * rng::uniform01(key, attempt, 0);
        const double accept = rng::uniform01(key, attempt, 1);
        if (accept * (R + r) > R + r * std::cos(theta)) continue;
        const double phi = 2.0 * std::numbers::pi * rng::uniform01(key, attempt, 2);
        const double ring = R + r * std::cos(theta);
        row[0] = ring * std::cos(phi);
        row[1] = ring * std::sin(phi);
        row[2] = r * std::sin(theta);
        pts.set_row(i, row);
        break;
      }
    }
    return pts;
  }

  const auto& cb = std::get<CustomCallbacks>(shape_);
  if (!cb.sampler)
    raise(ErrorCode::UnsupportedSampler,
          "custom manifold has no uniform sampler callback");
  for (std::size_t i = 0; i < n; ++i) {
    cb.sampler(i, stream_seed, row);
    pts.set_row(i, row);
  }
  return pts;
}

double Manifold::surface_distance(std::span<const double> u,
                                  std::span<const double> v) const {
  check_dim(u.size());
  check_dim(v.size());
  if (const auto* s = std::get_if<Sphere>(&shape_)) {
    const double nu = sphere_norm_checked(u, s->radius);
    const double nv = sphere_norm_checked(v, s->radius);
    double c = vec::dot(u, v) / (nu * nv);
    c = c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
    return s->radius * std::acos(c);
  }
  if (const auto* t = std::get_if<Torus>(&shape_)) {
    const double R = t->major_radius;
    const double r = t->minor_radius;
    const auto wrap = [](double a) {
      while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
      while (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
      return a;
    };
    const double phi_u = std::atan2(u[1], u[0]);
    const double phi_v = std::atan2(v[1], v[0]);
    const double th_u = torus_minor_angle(u);
    const double th_v = torus_minor_angle(v);
    const double dphi = wrap(phi_v - phi_u);
    const double dth = wrap(th_v - th_u);
    const double ring = R + r * std::cos(th_u + 0.5 * dth);
    return std::hypot(ring * dphi, r * dth);
  }
  return vec::distance(u, v);
}

double Manifold::torus_minor_angle(std::span<const double> v) const {
  const auto* t = std::get_if<Torus>(&shape_);
  if (!t) raise(ErrorCode::ValidationError, "minor angle is defined for the torus only");
  check_dim(v.size());
  const double s = std::hypot(v[0], v[1]);
  return std::atan2(v[2], s - t->major_radius);
}

}  // namespace cbo
