#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta step with PI-free step control.
// Kept local to the shooting solver: event handling and exact landing on
// output nodes are easier with a hand-held stepper than through a framework.

#include <algorithm>
#include <array>
#include <cmath>

namespace kirchhoff::detail {

template <std::size_t K>
using StateVec = std::array<double, K>;

// One attempted step from (r, y) with size h.  F: (r, y) -> dy/dr.
// Returns the RMS of the embedded error relative to scale; the caller accepts
// the step iff that ratio is <= 1.  k1 must hold F(r, y) on entry (FSAL: on an
// accepted step k1 is overwritten with F(r+h, y_new)).
template <std::size_t K, typename F>
double dopri5_try_step(const F& f, double r, const StateVec<K>& y, double h,
                       StateVec<K>& y_new, StateVec<K>& k1, double atol, double rtol) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b_hat (5th-order weights minus the embedded 4th-order ones)
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  StateVec<K> k2, k3, k4, k5, k6, k7, tmp;

  for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  k2 = f(r + c2 * h, tmp);
  for (std::size_t i = 0; i < K; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  k3 = f(r + c3 * h, tmp);
  for (std::size_t i = 0; i < K; ++i)
    tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  k4 = f(r + c4 * h, tmp);
  for (std::size_t i = 0; i < K; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  k5 = f(r + c5 * h, tmp);
  for (std::size_t i = 0; i < K; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  k6 = f(r + h, tmp);
  for (std::size_t i = 0; i < K; ++i)
    y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  k7 = f(r + h, y_new);

  double err2 = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
    double q = e / scale;
    err2 += q * q;
  }
  double err = std::sqrt(err2 / K);
  if (err <= 1.0) k1 = k7;  // FSAL
  return err;
}

inline double dopri5_next_h(double h, double err, double h_min, double h_max) {
  double fac = (err <= 1e-30) ? 5.0 : 0.9 * std::pow(err, -0.2);
  return std::clamp(h * std::clamp(fac, 0.2, 5.0), h_min, h_max);
}

}  // namespace kirchhoff::detail
