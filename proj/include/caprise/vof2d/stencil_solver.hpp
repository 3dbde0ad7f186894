#pragma once

#include <vector>

namespace caprise::vof2d {

/// Symmetric 5-point operator on an nx by ny lattice, row index k = j nx + i.
/// `east[k]` couples k and k+1, `north[k]` couples k and k+nx; both store the
/// (non-positive) matrix entries.
struct Stencil5 {
  int nx = 0;
  int ny = 0;
  std::vector<double> diag;
  std::vector<double> east;
  std::vector<double> north;

  Stencil5(int nx_, int ny_)
      : nx(nx_), ny(ny_), diag(nx_ * ny_, 0.0), east(nx_ * ny_, 0.0), north(nx_ * ny_, 0.0) {}

  void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

struct PcgResult {
  int iterations = 0;
  double residual = 0.0;  // max|r| / max|b|
  bool converged = false;
};

/// Preconditioned conjugate gradients with a modified incomplete Cholesky
/// (MIC(0)) preconditioner; stops when max|r| <= tol max|b|. `x` holds the
/// initial guess on entry.
PcgResult pcg_solve(const Stencil5& A, const std::vector<double>& b, std::vector<double>& x,
                    double tol, int max_iterations);

}  // namespace caprise::vof2d
