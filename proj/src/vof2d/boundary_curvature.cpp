#include <cmath>

#include "caprise/error.hpp"
#include "caprise/vof2d/vof2d.hpp"

namespace caprise::vof2d {

double alpha_ext(const SimState& s, int i, int j) {
  const int nx = s.grid.nx;
  const int ny = s.grid.ny;
  if (j < 0) return 1.0;
  if (j >= ny) return 0.0;
  if (i < 0) i = std::min(-1 - i, nx - 1);
  if (i >= nx) i = nx - 1;
  return s.alpha(i, j);
}

void apply_boundaries(SimState& s, const BoundaryModel& bc) {
  const int nx = s.grid.nx;
  const int ny = s.grid.ny;
  for (int j = 0; j < ny; ++j) {
    s.u(0, j) = 0.0;
    s.u(nx, j) = 0.0;
  }
  for (int i = 0; i < nx; ++i) {
    s.v(i, 0) = bc.closed_inflow ? 0.0 : s.v(i, 1);
    s.v(i, ny) = s.v(i, ny - 1);
  }
}

double contact_angle_ghost(double h_wall, double theta, double dx) {
  if (std::abs(theta - std::numbers::pi / 2) < 1e-12) return h_wall;
  return h_wall + dx / std::tan(theta);
}

namespace {

constexpr double kBracketTol = 1e-2;

// Height of column c above y = j_lo dy, integrated from a full cell at j_lo
// up to the first (nearly) empty cell plus the thin tail right above it;
// detached liquid further up is ignored. nullopt when the window does not
// bracket the interface.
std::optional<double> window_height(const SimState& s, int c, int j_lo, int j_hi) {
  if (alpha_ext(s, c, j_lo) < 1.0 - kBracketTol) return std::nullopt;
  double h = 0.0;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double a = alpha_ext(s, c, j);
    h += a * s.grid.dy;
    if (a <= kBracketTol) {
      for (int k = j + 1; k <= j_hi; ++k) {
        const double t = alpha_ext(s, c, k);
        if (t <= 1e-12 || t > kBracketTol) break;
        h += t * s.grid.dy;
      }
      return h;
    }
  }
  return std::nullopt;
}

}  // namespace

double curvature_height_function(const SimState& s, int column, double theta) {
  const Grid& g = s.grid;
  if (column < 0 || column >= g.nx) {
    throw Error(ErrorKind::InvalidArgument, "column index out of range");
  }
  double full = 0.0;
  for (int j = 0; j < g.ny; ++j) full += s.alpha(column, j);
  const int j0 = std::clamp(static_cast<int>(std::floor(full)), 0, g.ny - 1);

  for (int half : {3, 5}) {
    const int lo = j0 - half;
    const int hi = j0 + half;
    const auto hc = window_height(s, column, lo, hi);
    if (!hc) continue;
    // Left neighbour: mirror image across the symmetry plane for column 0.
    const auto hl = column == 0 ? hc : window_height(s, column - 1, lo, hi);
    if (!hl) continue;
    std::optional<double> hr;
    if (column == g.nx - 1) {
      hr = contact_angle_ghost(*hc, theta, g.dx);
    } else {
      hr = window_height(s, column + 1, lo, hi);
    }
    if (!hr) continue;
    const double d1 = (*hr - *hl) / (2.0 * g.dx);
    const double d2 = (*hr - 2.0 * *hc + *hl) / (g.dx * g.dx);
    return d2 / std::pow(1.0 + d1 * d1, 1.5);
  }
  throw Error(ErrorKind::StencilInvalid,
              "height-function window does not bracket the interface in column " +
                  std::to_string(column));
}

std::vector<double> column_curvatures(const SimState& s, double theta) {
  std::vector<double> k(s.grid.nx);
  for (int i = 0; i < s.grid.nx; ++i) k[i] = curvature_height_function(s, i, theta);
  return k;
}

double liquid_volume(const SimState& s) {
  double sum = 0.0;
  for (double a : s.alpha.data()) sum += a;
  return sum * s.grid.dx * s.grid.dy;
}

double apex_height(const SimState& s) {
  const Grid& g = s.grid;
  constexpr double eps = 1e-6;
  // Expected pattern from the bottom: full cells, one contiguous run of
  // partial cells, empty cells.
  int phase = 0;  // 0 full, 1 partial, 2 empty
  double h = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    const double a = s.alpha(0, j);
    h += a * g.dy;
    const int kind = a >= 1.0 - eps ? 0 : (a <= eps ? 2 : 1);
    if (kind < phase) {
      throw Error(ErrorKind::MultiValuedColumn,
                  "apex column is not single-valued at row " + std::to_string(j));
    }
    phase = kind;
  }
  return h;
}

}  // namespace caprise::vof2d
