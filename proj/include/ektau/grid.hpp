// Uniform-grid sample backend for graph surfaces.
//
// Jets are recovered by tensor-product Lagrange interpolation through a 6x6
// block of nodes around the query point, differentiated analytically.  On
// smooth data this yields fourth-order-accurate values and derivatives.
// Points closer than 2h to the window edge are out of domain (no one-sided
// stencils: accuracy over coverage).
#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "ektau/core.hpp"
#include "ektau/jet.hpp"

namespace ektau {

class GridData {
 public:
  GridData() = default;

  // Grid covering `window` with nx * ny nodes; values in row-major order
  // (x index fastest within a row of constant y).
  GridData(const Window& window, int nx, int ny, std::vector<double> values)
      : window_(window), nx_(nx), ny_(ny), values_(std::move(values)) {
    if (nx_ < 6 || ny_ < 6) {
      fail(ErrorKind::DomainViolation, "grid needs at least 6x6 nodes");
    }
    if (static_cast<int>(values_.size()) != nx_ * ny_) {
      fail(ErrorKind::DomainViolation, "grid value count mismatch");
    }
    hx_ = window_.width() / (nx_ - 1);
    hy_ = window_.height() / (ny_ - 1);
  }

  // Uniform-step convenience: node count chosen so that the step is exactly h
  // (window extents must be integer multiples of h up to round-off).
  static GridData from_step(const Window& window, double h,
                            std::vector<double> values) {
    const int nx = static_cast<int>(std::lround(window.width() / h)) + 1;
    const int ny = static_cast<int>(std::lround(window.height() / h)) + 1;
    return GridData(window, nx, ny, std::move(values));
  }

  // Fill a uniform grid by sampling fn(x, y) at the nodes.
  template <typename Fn>
  static GridData sampled(const Window& window, double h, Fn&& fn) {
    const int nx = static_cast<int>(std::lround(window.width() / h)) + 1;
    const int ny = static_cast<int>(std::lround(window.height() / h)) + 1;
    std::vector<double> values(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
      const double y = window.y0 + j * window.height() / (ny - 1);
      for (int i = 0; i < nx; ++i) {
        const double x = window.x0 + i * window.width() / (nx - 1);
        values[static_cast<size_t>(j) * nx + i] = fn(x, y);
      }
    }
    return GridData(window, nx, ny, std::move(values));
  }

  const Window& window() const { return window_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double node_x(int i) const { return window_.x0 + i * hx_; }
  double node_y(int j) const { return window_.y0 + j * hy_; }
  double value(int i, int j) const { return values_[j * nx_ + i]; }
  double& value(int i, int j) { return values_[j * nx_ + i]; }
  const std::vector<double>& values() const { return values_; }

  // Usable region: at least 2h from every edge.
  bool usable(double x, double y) const {
    const double sx = 1e-9 * hx_, sy = 1e-9 * hy_;
    return x >= window_.x0 + 2 * hx_ - sx && x <= window_.x1 - 2 * hx_ + sx &&
           y >= window_.y0 + 2 * hy_ - sy && y <= window_.y1 - 2 * hy_ + sy;
  }

  SurfaceJet jet(double x, double y) const {
    if (!usable(x, y)) {
      fail(ErrorKind::OutOfWindow, "grid jet query outside the usable window");
    }
    // 6-node block base index, clamped so the block stays inside the grid.
    const double tx = (x - window_.x0) / hx_;
    const double ty = (y - window_.y0) / hy_;
    const int i0 = clamp_base(static_cast<int>(std::floor(tx)) - 2, nx_);
    const int j0 = clamp_base(static_cast<int>(std::floor(ty)) - 2, ny_);
    const Basis bx = lagrange_basis(tx - i0, hx_);
    const Basis by = lagrange_basis(ty - j0, hy_);
    SurfaceJet out;
    for (int b = 0; b < 6; ++b) {
      double r0 = 0, r1 = 0, r2 = 0;  // value/dx/dxx partial sums along x
      for (int a = 0; a < 6; ++a) {
        const double v = value(i0 + a, j0 + b);
        r0 += bx.w0[a] * v;
        r1 += bx.w1[a] * v;
        r2 += bx.w2[a] * v;
      }
      out.u += by.w0[b] * r0;
      out.ux += by.w0[b] * r1;
      out.uxx += by.w0[b] * r2;
      out.uy += by.w1[b] * r0;
      out.uxy += by.w1[b] * r1;
      out.uyy += by.w2[b] * r0;
    }
    return out;
  }

 private:
  struct Basis {
    std::array<double, 6> w0{}, w1{}, w2{};  // value/1st/2nd derivative weights
  };

  static int clamp_base(int i0, int n) {
    if (i0 < 0) return 0;
    if (i0 > n - 6) return n - 6;
    return i0;
  }

  // Lagrange basis through nodes {0,1,...,5} evaluated at t (grid units),
  // with first/second derivative weights scaled to physical units by h.
  static Basis lagrange_basis(double t, double h) {
    Basis b;
    for (int k = 0; k < 6; ++k) {
      // L_k(t) = prod_{m != k} (t - m)/(k - m); accumulate value and the
      // first two derivatives of the product incrementally.
      double p0 = 1, p1 = 0, p2 = 0, den = 1;
      for (int m = 0; m < 6; ++m) {
        if (m == k) continue;
        const double d = t - m;
        p2 = p2 * d + 2 * p1;
        p1 = p1 * d + p0;
        p0 = p0 * d;
        den *= (k - m);
      }
      b.w0[k] = p0 / den;
      b.w1[k] = p1 / den / h;
      b.w2[k] = p2 / den / (h * h);
    }
    return b;
  }

  Window window_;
  int nx_ = 0, ny_ = 0;
  double hx_ = 0, hy_ = 0;
  std::vector<double> values_;
};

}  // namespace ektau
