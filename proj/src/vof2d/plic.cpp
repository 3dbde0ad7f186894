#include <cmath>

#include "caprise/error.hpp"
#include "caprise/vof2d/vof2d.hpp"

namespace caprise::vof2d {

namespace {

// Clip a convex polygon (at most 8 vertices here) by n.p <= d.
struct Poly {
  std::array<Vec2, 8> pts;
  int n = 0;
};

Poly clip(const Poly& in, Vec2 n, double d) {
  Poly out;
  for (int k = 0; k < in.n; ++k) {
    const Vec2 a = in.pts[k];
    const Vec2 b = in.pts[(k + 1) % in.n];
    const double fa = n.x * a.x + n.y * a.y - d;
    const double fb = n.x * b.x + n.y * b.y - d;
    if (fa <= 0) out.pts[out.n++] = a;
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) {
      const double s = fa / (fa - fb);
      out.pts[out.n++] = {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
    }
  }
  return out;
}

double shoelace(const Poly& p) {
  double a = 0.0;
  for (int k = 0; k < p.n; ++k) {
    const Vec2 u = p.pts[k];
    const Vec2 w = p.pts[(k + 1) % p.n];
    a += u.x * w.y - w.x * u.y;
  }
  return 0.5 * std::abs(a);
}

}  // namespace

double plane_area(const PlicPlane& plane, const Rect& r) {
  Poly box;
  box.n = 4;
  box.pts[0] = {r.x0, r.y0};
  box.pts[1] = {r.x1, r.y0};
  box.pts[2] = {r.x1, r.y1};
  box.pts[3] = {r.x0, r.y1};
  const Poly cut = clip(box, plane.normal, plane.offset);
  return cut.n < 3 ? 0.0 : shoelace(cut);
}

Vec2 youngs_normal(const Stencil3& a, double dx, double dy) {
  // Central 3x3 stencil with 1-2-1 weights.
  const double gx = ((a[2][2] + 2.0 * a[2][1] + a[2][0]) - (a[0][2] + 2.0 * a[0][1] + a[0][0])) /
                    (8.0 * dx);
  const double gy = ((a[2][2] + 2.0 * a[1][2] + a[0][2]) - (a[2][0] + 2.0 * a[1][0] + a[0][0])) /
                    (8.0 * dy);
  const double norm = std::hypot(gx, gy);
  if (norm * std::max(dx, dy) < 1e-14) {
    throw Error(ErrorKind::DegenerateNormal, "volume fraction gradient vanishes");
  }
  return {-gx / norm, -gy / norm};
}

double plane_offset(Vec2 n, double alpha, double dx, double dy) {
  const Rect cell{-0.5 * dx, 0.5 * dx, -0.5 * dy, 0.5 * dy};
  const double target = std::clamp(alpha, 0.0, 1.0) * dx * dy;
  const double half_extent = 0.5 * (std::abs(n.x) * dx + std::abs(n.y) * dy);
  double lo = -half_extent;
  double hi = half_extent;
  // Cut area is monotone in the offset; bisection until the area matches.
  const double area_tol = 1e-14 * dx * dy;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double area = plane_area({n, mid}, cell);
    if (std::abs(area - target) <= area_tol) return mid;
    if (area < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-16 * half_extent) break;
  }
  return 0.5 * (lo + hi);
}

PlicPlane plic_reconstruct(const Stencil3& alpha, double dx, double dy) {
  Vec2 n{0.0, 1.0};
  try {
    n = youngs_normal(alpha, dx, dy);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateNormal) throw;
  }
  return {n, plane_offset(n, alpha[1][1], dx, dy)};
}

}  // namespace caprise::vof2d
