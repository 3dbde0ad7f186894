#include "caprise/vof2d/stencil_solver.hpp"

#include <algorithm>
#include <cmath>

namespace caprise::vof2d {

void Stencil5::apply(const std::vector<double>& x, std::vector<double>& y) const {
  y.resize(x.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int k = j * nx + i;
      double s = diag[k] * x[k];
      if (i + 1 < nx) s += east[k] * x[k + 1];
      if (i > 0) s += east[k - 1] * x[k - 1];
      if (j + 1 < ny) s += north[k] * x[k + nx];
      if (j > 0) s += north[k - nx] * x[k - nx];
      y[k] = s;
    }
  }
}

namespace {

constexpr double kTau = 0.97;
constexpr double kSafety = 0.25;

std::vector<double> mic0(const Stencil5& A) {
  const int nx = A.nx;
  std::vector<double> pre(A.diag.size(), 0.0);
  for (int j = 0; j < A.ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int k = j * nx + i;
      if (A.diag[k] == 0.0) continue;
      double e = A.diag[k];
      if (i > 0) {
        const int w = k - 1;
        const double aw = A.east[w] * pre[w];
        const double an = j + 1 < A.ny ? A.north[w] : 0.0;
        e -= aw * aw + kTau * A.east[w] * an * pre[w] * pre[w];
      }
      if (j > 0) {
        const int s = k - nx;
        const double as = A.north[s] * pre[s];
        const double ae = i + 1 < nx ? A.east[s] : 0.0;
        e -= as * as + kTau * A.north[s] * ae * pre[s] * pre[s];
      }
      if (e < kSafety * A.diag[k]) e = A.diag[k];
      pre[k] = 1.0 / std::sqrt(e);
    }
  }
  return pre;
}

void apply_mic0(const Stencil5& A, const std::vector<double>& pre, const std::vector<double>& r,
                std::vector<double>& z, std::vector<double>& q) {
  const int nx = A.nx;
  const int n = static_cast<int>(r.size());
  q.assign(n, 0.0);
  for (int j = 0; j < A.ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int k = j * nx + i;
      double t = r[k];
      if (i > 0) t -= A.east[k - 1] * pre[k - 1] * q[k - 1];
      if (j > 0) t -= A.north[k - nx] * pre[k - nx] * q[k - nx];
      q[k] = t * pre[k];
    }
  }
  z.assign(n, 0.0);
  for (int j = A.ny - 1; j >= 0; --j) {
    for (int i = nx - 1; i >= 0; --i) {
      const int k = j * nx + i;
      double t = q[k];
      if (i + 1 < nx) t -= A.east[k] * pre[k] * z[k + 1];
      if (j + 1 < A.ny) t -= A.north[k] * pre[k] * z[k + nx];
      z[k] = t * pre[k];
    }
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

PcgResult pcg_solve(const Stencil5& A, const std::vector<double>& b, std::vector<double>& x,
                    double tol, int max_iterations) {
  PcgResult res;
  const std::size_t n = b.size();
  x.resize(n, 0.0);
  const double bmax = max_abs(b);
  if (bmax == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    res.converged = true;
    return res;
  }
  std::vector<double> r(n), Ap(n), z, q, p;
  A.apply(x, Ap);
  for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - Ap[k];
  res.residual = max_abs(r) / bmax;
  if (res.residual <= tol) {
    res.converged = true;
    return res;
  }
  const auto pre = mic0(A);
  apply_mic0(A, pre, r, z, q);
  p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= max_iterations; ++it) {
    A.apply(p, Ap);
    const double pAp = dot(p, Ap);
    if (pAp <= 0.0) break;
    const double step = rz / pAp;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += step * p[k];
      r[k] -= step * Ap[k];
    }
    res.iterations = it;
    res.residual = max_abs(r) / bmax;
    if (res.residual <= tol) {
      res.converged = true;
      return res;
    }
    apply_mic0(A, pre, r, z, q);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
  return res;
}

}  // namespace caprise::vof2d
