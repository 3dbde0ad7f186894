#pragma once

// Dormand-Prince 5(4) with FSAL and the 4th-order continuous extension of
// Hairer, Norsett & Wanner (DOPRI5). Fixed state dimension N.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>

#include "caprise/error.hpp"

namespace caprise {

struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-12;
};

struct Dopri5Stats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
};

template <std::size_t N>
using StateN = std::array<double, N>;

namespace detail {

template <std::size_t N>
StateN<N> axpy(const StateN<N>& y, double h,
               std::initializer_list<std::pair<double, const StateN<N>*>> terms) {
  StateN<N> out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}

}  // namespace detail

/// Integrates y' = f(t, y) from t0 to the last entry of `out_times`, invoking
/// `emit(t, y)` for every requested output time via dense output. Output times
/// must be non-decreasing and start at t0.
template <std::size_t N, class Rhs, class Emit>
Dopri5Stats dopri5(Rhs&& f, double t0, StateN<N> y, std::span<const double> out_times,
                   const Tolerance& tol, Emit&& emit) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0,
                   d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0,
                   d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0,
                   d7 = 69997945.0 / 29380423.0;

  Dopri5Stats stats;
  if (out_times.empty()) return stats;
  const double t_end = out_times.back();
  const double span = t_end - t0;
  std::size_t next_out = 0;
  while (next_out < out_times.size() && out_times[next_out] <= t0) {
    emit(out_times[next_out], y);
    ++next_out;
  }
  if (span <= 0) return stats;

  auto err_norm = [&](const StateN<N>& y0, const StateN<N>& y1, const StateN<N>& e) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = tol.abs + tol.rel * std::max(std::abs(y0[i]), std::abs(y1[i]));
      s += (e[i] / sc) * (e[i] / sc);
    }
    return std::sqrt(s / N);
  };

  StateN<N> k1 = f(t0, y);
  ++stats.rhs_evals;

  // Initial step guess (Hairer's hinit).
  double h;
  {
    double d0 = 0, d1n = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = tol.abs + tol.rel * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1n += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1n = std::sqrt(d1n / N);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, span);
    StateN<N> y1 = detail::axpy<N>(y, h0, {{1.0, &k1}});
    StateN<N> f1 = f(t0 + h0, y1);
    ++stats.rhs_evals;
    double d2 = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = tol.abs + tol.rel * std::abs(y[i]);
      d2 += ((f1[i] - k1[i]) / sc) * ((f1[i] - k1[i]) / sc);
    }
    d2 = std::sqrt(d2 / N) / h0;
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = std::min({100 * h0, h1, span});
  }

  const double h_min = 1e-15 * std::abs(span);
  double t = t0;
  double err_old = 1e-4;
  bool last_rejected = false;

  while (t < t_end) {
    if (h < h_min) {
      throw Error(ErrorKind::StepSizeUnderflow,
                  "step size " + std::to_string(h) + " at t=" + std::to_string(t));
    }
    bool last = false;
    if (t + h >= t_end || t + 1.01 * h >= t_end) {
      h = t_end - t;
      last = true;
    }
    const StateN<N> y2 = detail::axpy<N>(y, h, {{a21, &k1}});
    const StateN<N> k2 = f(t + c2 * h, y2);
    const StateN<N> y3 = detail::axpy<N>(y, h, {{a31, &k1}, {a32, &k2}});
    const StateN<N> k3 = f(t + c3 * h, y3);
    const StateN<N> y4 = detail::axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    const StateN<N> k4 = f(t + c4 * h, y4);
    const StateN<N> y5 =
        detail::axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    const StateN<N> k5 = f(t + c5 * h, y5);
    const StateN<N> y6 = detail::axpy<N>(
        y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    const StateN<N> k6 = f(t + h, y6);
    const StateN<N> y_new = detail::axpy<N>(
        y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const StateN<N> k7 = f(t + h, y_new);
    stats.rhs_evals += 6;

    StateN<N> e{};
    for (std::size_t i = 0; i < N; ++i) {
      e[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                  e7 * k7[i]);
    }
    const double err = err_norm(y, y_new, e);

    if (err <= 1.0) {
      ++stats.accepted;
      const double t_new = last ? t_end : t + h;
      // Dense output coefficients.
      StateN<N> r1 = y, r2{}, r3{}, r4{}, r5{};
      for (std::size_t i = 0; i < N; ++i) {
        const double ydiff = y_new[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        r2[i] = ydiff;
        r3[i] = bspl;
        r4[i] = ydiff - h * k7[i] - bspl;
        r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                     d7 * k7[i]);
      }
      while (next_out < out_times.size() && out_times[next_out] <= t_new) {
        const double to = out_times[next_out];
        StateN<N> yo{};
        if (to == t_new) {
          yo = y_new;
        } else {
          const double th = (to - t) / h;
          const double th1 = 1.0 - th;
          for (std::size_t i = 0; i < N; ++i) {
            yo[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
          }
        }
        emit(to, yo);
        ++next_out;
      }
      y = y_new;
      k1 = k7;
      t = t_new;
      // PI step-size controller.
      const double e_c = std::max(err, 1e-10);
      double fac = 0.9 * std::pow(e_c, -0.7 / 5.0) * std::pow(err_old, 0.4 / 5.0);
      fac = std::clamp(fac, 0.2, 10.0);
      if (last_rejected) fac = std::min(fac, 1.0);
      err_old = std::max(err, 1e-4);
      h *= fac;
      last_rejected = false;
    } else {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      last_rejected = true;
    }
  }
  return stats;
}

}  // namespace caprise
