// Vertical graphs z = u(x,y) in E(kappa,tau) and spacelike vertical graphs
// in L(kappa,H), with their first/second fundamental data.
//
// All geometry is derived from the 2-jet of the height function plus the
// ambient parameters.  The key per-point quantities on the Riemannian side:
//   alpha = u_x/lambda + tau y,  beta = u_y/lambda - tau x,
//   omega = sqrt(1 + alpha^2 + beta^2),   nu = 1/omega,
// and on the Lorentzian side:
//   alpha~ = v_x/lambda - H y,   beta~ = v_y/lambda + H x,
//   omega~ = sqrt(1 - alpha~^2 - beta~^2)  (spacelike iff positive),
// with nu~ = 1/omega~ the magnitude of the (timelike) normal's vertical part.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <utility>

#include "ektau/core.hpp"
#include "ektau/grid.hpp"
#include "ektau/jet.hpp"
#include "ektau/space.hpp"

namespace ektau {

// Frame-level first-order data of a graph at a point.  Vectors are given by
// their components in the ambient orthonormal frame (E1, E2, E3).
struct FrameData {
  double alpha = 0, beta = 0;
  double omega = 0;  // omega (Riemannian) or omega~ (Lorentzian)
  double nu = 0;     // 1/omega in both cases
  Eigen::Vector3d e1, e2;    // tangent directions E1 + alpha E3, E2 + beta E3
  Eigen::Vector3d normal;    // unit normal (frame components)
  Eigen::Matrix2d firstFF;   // inner products of (e1, e2)
};

struct ShapeData {
  Eigen::Matrix2d sigma;   // second fundamental form on (e1, e2)
  double mean = 0;         // mean curvature
  double gauss = 0;        // intrinsic curvature of the induced metric
};

class GraphSurface {
 public:
  using JetFn = std::function<SurfaceJet(double, double)>;

  GraphSurface() = default;

  // Closed-form backend.
  GraphSurface(SpaceParams space, double cmc, Window window, JetFn jets,
               double step = 0.05)
      : space_(space),
        cmc_(cmc),
        window_(window),
        step_(step),
        closed_(std::move(jets)) {}

  // Grid backend.
  GraphSurface(SpaceParams space, double cmc, GridData grid)
      : space_(space),
        cmc_(cmc),
        window_(grid.window()),
        step_(grid.hx()),
        grid_(std::make_shared<GridData>(std::move(grid))) {}

  const SpaceParams& space() const { return space_; }
  double cmc() const { return cmc_; }
  const Window& window() const { return window_; }
  double step() const { return step_; }
  void set_step(double h) { step_ = h; }
  bool grid_backed() const { return grid_ != nullptr; }
  const GridData& grid() const {
    if (!grid_) fail(ErrorKind::NotAGraph, "surface has no grid backend");
    return *grid_;
  }
  double spacelike_margin() const { return spacelike_margin_; }
  void set_spacelike_margin(double m) { spacelike_margin_ = m; }

  bool usable(double x, double y) const {
    return grid_ ? grid_->usable(x, y) : window_.contains(x, y, 1e-12);
  }

  SurfaceJet jet_at(double x, double y) const {
    if (grid_) return grid_->jet(x, y);
    if (!window_.contains(x, y, 1e-12)) {
      fail(ErrorKind::OutOfWindow, "jet query outside the surface window");
    }
    return closed_(x, y);
  }

  // The ambient of the dual graph: same base curvature, bundle curvature and
  // target mean curvature exchanged, causal character flipped.
  SpaceParams partner_space() const {
    SpaceParams p;
    p.kappa = space_.kappa;
    p.bundle = cmc_;
    p.side =
        space_.side == Side::Riemannian ? Side::Lorentzian : Side::Riemannian;
    return p;
  }

 private:
  SpaceParams space_;
  double cmc_ = 0.0;  // target mean curvature (H Riemannian / tau Lorentzian)
  Window window_;
  double step_ = 0.05;
  JetFn closed_;
  std::shared_ptr<const GridData> grid_;
  double spacelike_margin_ = 1e-8;
};

namespace detail {

struct PointData {
  double lam = 0, alpha = 0, beta = 0, omega2 = 0, omega = 0;
};

inline PointData first_order(const GraphSurface& s, double x, double y,
                             const SurfaceJet& j) {
  PointData d;
  d.lam = conformal_factor(s.space(), x, y);
  const double b = s.space().bundle;
  if (s.space().side == Side::Riemannian) {
    d.alpha = j.ux / d.lam + b * y;
    d.beta = j.uy / d.lam - b * x;
    d.omega2 = 1 + d.alpha * d.alpha + d.beta * d.beta;
  } else {
    d.alpha = j.ux / d.lam - b * y;
    d.beta = j.uy / d.lam + b * x;
    d.omega2 = 1 - d.alpha * d.alpha - d.beta * d.beta;
    if (d.omega2 <= s.spacelike_margin()) {
      fail(ErrorKind::SpacelikeViolation,
           "graph gradient reaches the light cone");
    }
  }
  d.omega = std::sqrt(d.omega2);
  return d;
}

}  // namespace detail

inline FrameData frame_data(const GraphSurface& s, double x, double y) {
  const SurfaceJet j = s.jet_at(x, y);
  const auto d = detail::first_order(s, x, y, j);
  FrameData f;
  f.alpha = d.alpha;
  f.beta = d.beta;
  f.omega = d.omega;
  f.nu = 1.0 / d.omega;
  f.e1 = Eigen::Vector3d(1, 0, d.alpha);
  f.e2 = Eigen::Vector3d(0, 1, d.beta);
  if (s.space().side == Side::Riemannian) {
    f.normal = Eigen::Vector3d(-d.alpha, -d.beta, 1) / d.omega;
    f.firstFF << 1 + d.alpha * d.alpha, d.alpha * d.beta, d.alpha * d.beta,
        1 + d.beta * d.beta;
  } else {
    f.normal = Eigen::Vector3d(d.alpha, d.beta, 1) / d.omega;
    f.firstFF << 1 - d.alpha * d.alpha, -d.alpha * d.beta, -d.alpha * d.beta,
        1 - d.beta * d.beta;
  }
  return f;
}

// Second fundamental form on (e1, e2), mean curvature, and the intrinsic
// curvature of the induced metric.
inline ShapeData shape_data(const GraphSurface& s, double x, double y) {
  const SurfaceJet j = s.jet_at(x, y);
  const auto d = detail::first_order(s, x, y, j);
  const double k = s.space().kappa;
  const double b = s.space().bundle;
  const double lam2 = d.lam * d.lam;
  const double A = d.alpha, B = d.beta, W = d.omega;
  ShapeData out;
  double s11, s12, s22;
  if (s.space().side == Side::Riemannian) {
    s11 = (j.uxx / lam2 + 2 * b * A * B + 0.5 * k * (x * A - y * B) -
           0.5 * k * b * x * y) / W;
    s12 = (j.uxy / lam2 + b * (B * B - A * A) + 0.5 * k * (x * B + y * A) +
           0.25 * k * b * (x * x - y * y)) / W;
    s22 = (j.uyy / lam2 - 2 * b * A * B - 0.5 * k * (x * A - y * B) +
           0.5 * k * b * x * y) / W;
  } else {
    s11 = -(j.uxx / lam2 + 2 * b * A * B + 0.5 * k * (x * A - y * B) +
            0.5 * k * b * x * y) / W;
    s12 = -(j.uxy / lam2 + b * (B * B - A * A) + 0.5 * k * (x * B + y * A) -
            0.25 * k * b * (x * x - y * y)) / W;
    s22 = -(j.uyy / lam2 - 2 * b * A * B - 0.5 * k * (x * A - y * B) -
            0.5 * k * b * x * y) / W;
  }
  out.sigma << s11, s12, s12, s22;
  Eigen::Matrix2d I;
  if (s.space().side == Side::Riemannian) {
    I << 1 + A * A, A * B, A * B, 1 + B * B;
    out.mean = 0.5 * (I.inverse() * out.sigma).trace();
    const double nu2 = 1.0 / d.omega2;
    out.gauss = (I.inverse() * out.sigma).determinant() + b * b +
                (k - 4 * b * b) * nu2;
  } else {
    I << 1 - A * A, -A * B, -A * B, 1 - B * B;
    out.mean = -0.5 * (I.inverse() * out.sigma).trace();
    if (k == 0.0 && b == 0.0) {
      // Flat Lorentzian ambient: intrinsic curvature as a Hessian quotient.
      const double den = sq(1 - j.ux * j.ux - j.uy * j.uy);
      out.gauss = (j.uxy * j.uxy - j.uxx * j.uyy) / den;
    } else {
      out.gauss = -(I.inverse() * out.sigma).determinant() - b * b +
                  (k + 4 * b * b) / d.omega2;
    }
  }
  return out;
}

// Defect of the target-CMC equation.  For kappa = 0 this is the divergence-
// form polynomial expression (not normalized by omega^3):
//   Riemannian:  (1+beta^2) u_xx - 2 alpha beta u_xy + (1+alpha^2) u_yy
//                 - 2 H omega^3
//   Lorentzian:  (1-beta^2) v_xx + 2 alpha beta v_xy + (1-alpha^2) v_yy
//                 - 2 tau omega~^3
// For kappa != 0 it is twice the defect of the mean curvature itself.
inline double cmc_residual(const GraphSurface& s, double x, double y) {
  const SurfaceJet j = s.jet_at(x, y);
  const auto d = detail::first_order(s, x, y, j);
  if (s.space().kappa == 0.0) {
    const double A = d.alpha, B = d.beta;
    const double w3 = d.omega2 * d.omega;
    if (s.space().side == Side::Riemannian) {
      return (1 + B * B) * j.uxx - 2 * A * B * j.uxy + (1 + A * A) * j.uyy -
             2 * s.cmc() * w3;
    }
    return (1 - B * B) * j.uxx + 2 * A * B * j.uxy + (1 - A * A) * j.uyy -
           2 * s.cmc() * w3;
  }
  return 2.0 * (shape_data(s, x, y).mean - s.cmc());
}

}  // namespace ektau
