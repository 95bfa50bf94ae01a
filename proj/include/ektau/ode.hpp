// Adaptive Runge-Kutta (Dormand-Prince 5(4)) integration of scalar ODEs
// y' = f(t, y), with stored accepted steps and cubic-Hermite dense output
// (fourth-order interpolation between nodes; the step size is capped so the
// interpolation error stays at the integration tolerance).
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ektau/core.hpp"

namespace ektau {

struct ODEProfile {
  std::vector<double> t;      // accepted abscissae, strictly increasing
  std::vector<double> value;  // y(t_i)
  std::vector<double> deriv;  // y'(t_i)

  double t_min() const { return t.front(); }
  double t_max() const { return t.back(); }

  // Cubic Hermite interpolation of y at s.
  double eval(double s) const {
    const auto [k, h, w] = locate(s);
    const double w2 = w * w, w3 = w2 * w;
    return (2 * w3 - 3 * w2 + 1) * value[k] + (w3 - 2 * w2 + w) * h * deriv[k] +
           (-2 * w3 + 3 * w2) * value[k + 1] + (w3 - w2) * h * deriv[k + 1];
  }

  // Derivative of the Hermite interpolant at s.
  double eval_deriv(double s) const {
    const auto [k, h, w] = locate(s);
    const double w2 = w * w;
    return ((6 * w2 - 6 * w) * value[k] + (3 * w2 - 4 * w + 1) * h * deriv[k] +
            (-6 * w2 + 6 * w) * value[k + 1] + (3 * w2 - 2 * w) * h *
                deriv[k + 1]) /
           h;
  }

 private:
  std::tuple<int, double, double> locate(double s) const {
    if (t.size() < 2 || s < t.front() - 1e-12 || s > t.back() + 1e-12) {
      fail(ErrorKind::OutOfWindow, "ODE profile queried outside its range");
    }
    const int n = static_cast<int>(t.size());
    int lo = 0, hi = n - 2;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      if (t[mid] <= s) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    const double h = t[lo + 1] - t[lo];
    return {lo, h, std::clamp((s - t[lo]) / h, 0.0, 1.0)};
  }
};

// Integrates y' = f(t, y) from (t0, y0) to t1 > t0.
inline ODEProfile integrate_ode(const std::function<double(double, double)>& f,
                                double t0, double y0, double t1,
                                double tol = 1e-10, double max_step = 0.02) {
  // Dormand-Prince 5(4) tableau.
  static const double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
  static const double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
       -5103.0 / 18656},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
  };
  static const double b5[7] = {35.0 / 384,     0,           500.0 / 1113,
                               125.0 / 192,    -2187.0 / 6784, 11.0 / 84, 0};
  static const double b4[7] = {5179.0 / 57600,  0,
                               7571.0 / 16695,  393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100,
                               1.0 / 40};

  if (!(t1 > t0)) fail(ErrorKind::DomainViolation, "empty ODE range");
  ODEProfile out;
  double t = t0, y = y0;
  out.t.push_back(t);
  out.value.push_back(y);
  out.deriv.push_back(f(t, y));
  double h = std::min(max_step, (t1 - t0) / 10);
  int rejects_in_a_row = 0;
  while (t < t1 - 1e-14 * (1 + std::abs(t1))) {
    h = std::min(h, t1 - t);
    double k[7];
    for (int i = 0; i < 7; ++i) {
      double yi = y;
      for (int m = 0; m < i; ++m) yi += h * a[i][m] * k[m];
      k[i] = f(t + c[i] * h, yi);
    }
    double y5 = y, y4 = y;
    for (int i = 0; i < 7; ++i) {
      y5 += h * b5[i] * k[i];
      y4 += h * b4[i] * k[i];
    }
    const double err = std::abs(y5 - y4);
    const double scale = tol * (1 + std::abs(y));
    if (err <= scale) {
      t += h;
      y = y5;
      out.t.push_back(t);
      out.value.push_back(y);
      out.deriv.push_back(f(t, y));
      rejects_in_a_row = 0;
    } else if (++rejects_in_a_row > 60) {
      fail(ErrorKind::DomainViolation, "ODE step control failed to converge");
    }
    const double grow =
        err > 0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
    h = std::min(h, max_step);
    if (h < 1e-14) fail(ErrorKind::DomainViolation, "ODE step size underflow");
  }
  return out;
}

}  // namespace ektau
