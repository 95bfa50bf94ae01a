// Homogeneous ambient spaces fibering over a constant-curvature base:
// the Riemannian family E(kappa, tau) and the Lorentzian family L(kappa, H),
// presented as Killing submersions over the chart
//   Omega_kappa = { (x,y) : 1 + (kappa/4)(x^2+y^2) > 0 }
// with conformal factor lambda = 1 / (1 + (kappa/4)(x^2+y^2)).
//
// Metrics in coordinates (x, y, z):
//   Riemannian:  lambda^2 (dx^2+dy^2) + (dz + tau lambda (y dx - x dy))^2
//   Lorentzian:  lambda^2 (dx^2+dy^2) - (dz - H   lambda (y dx - x dy))^2
// The fiber direction xi = d/dz is unit, spacelike/timelike respectively.
#pragma once

#include <string>

#include <Eigen/Dense>

#include "ektau/core.hpp"

namespace ektau {

enum class Side { Riemannian, Lorentzian };

inline const char* to_string(Side s) {
  return s == Side::Riemannian ? "riemannian" : "lorentzian";
}

inline Side side_from_string(const std::string& s) {
  if (s == "riemannian") return Side::Riemannian;
  if (s == "lorentzian") return Side::Lorentzian;
  fail(ErrorKind::UsageError, "unknown side '" + s + "'");
}

// Ambient space parameters.  `bundle` is the bundle curvature: tau for the
// Riemannian family, H for the Lorentzian one.
struct SpaceParams {
  double kappa = 0.0;
  double bundle = 0.0;
  Side side = Side::Riemannian;

  double sign() const { return side == Side::Riemannian ? +1.0 : -1.0; }
};

struct AmbientPoint {
  double x = 0, y = 0, z = 0;
};

// Coordinate components of a tangent vector in the basis (d/dx, d/dy, d/dz).
using AmbientVector = Eigen::Vector3d;

// lambda(x, y); throws DomainViolation outside the base chart.
inline double conformal_factor(const SpaceParams& space, double x, double y) {
  const double den = 1.0 + 0.25 * space.kappa * (x * x + y * y);
  if (den <= 0.0) {
    fail(ErrorKind::DomainViolation,
         "point outside the base chart (1 + kappa/4 r^2 <= 0)");
  }
  return 1.0 / den;
}

// Coordinate metric matrix g_ij at p (independent of z).
inline Eigen::Matrix3d metric_matrix(const SpaceParams& space,
                                     const AmbientPoint& p) {
  const double lam = conformal_factor(space, p.x, p.y);
  const double b = space.bundle;
  Eigen::Vector3d theta;  // the vertical 1-form, as a covector
  if (space.side == Side::Riemannian) {
    theta << b * lam * p.y, -b * lam * p.x, 1.0;
  } else {
    theta << -b * lam * p.y, b * lam * p.x, 1.0;
  }
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  g(0, 0) = lam * lam;
  g(1, 1) = lam * lam;
  g += space.sign() * theta * theta.transpose();
  return g;
}

inline double metric_eval(const SpaceParams& space, const AmbientPoint& p,
                          const AmbientVector& v, const AmbientVector& w) {
  return v.dot(metric_matrix(space, p) * w);
}

// Orthonormal frame (E1, E2, E3) as columns of a matrix of coordinate
// components; E3 = d/dz is the fiber direction (timelike on the Lorentzian
// side, where <E3,E3> = -1).
inline Eigen::Matrix3d orthonormal_frame(const SpaceParams& space,
                                         const AmbientPoint& p) {
  const double lam = conformal_factor(space, p.x, p.y);
  const double b = space.bundle;
  Eigen::Matrix3d E = Eigen::Matrix3d::Zero();
  E(0, 0) = 1.0 / lam;
  E(1, 1) = 1.0 / lam;
  E(2, 2) = 1.0;
  if (space.side == Side::Riemannian) {
    E(2, 0) = -b * p.y;
    E(2, 1) = b * p.x;
  } else {
    E(2, 0) = b * p.y;
    E(2, 1) = -b * p.x;
  }
  return E;
}

// Frame components of nabla_{E_i} E_j (Levi-Civita connection of the ambient
// metric).  Index convention: i, j, and the returned components are 0-based
// over (E1, E2, E3).
inline Eigen::Vector3d connection_in_frame(const SpaceParams& space, int i,
                                           int j, const AmbientPoint& p) {
  if (i < 0 || i > 2 || j < 0 || j > 2) {
    fail(ErrorKind::DomainViolation, "frame index out of range");
  }
  conformal_factor(space, p.x, p.y);  // validate the base point
  const double b = space.bundle;
  const double k2x = 0.5 * space.kappa * p.x;
  const double k2y = 0.5 * space.kappa * p.y;
  // Sign of the bundle terms pairing horizontal with vertical directions
  // flips between the two causal characters.
  const double sgn = space.sign();
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  if (i == 0 && j == 0) out << 0, k2y, 0;
  if (i == 0 && j == 1) out << -k2y, 0, sgn * b;
  if (i == 0 && j == 2) out << 0, -b, 0;
  if (i == 1 && j == 0) out << 0, -k2x, -sgn * b;
  if (i == 1 && j == 1) out << k2x, 0, 0;
  if (i == 1 && j == 2) out << b, 0, 0;
  if (i == 2 && j == 0) out << 0, -b, 0;
  if (i == 2 && j == 1) out << b, 0, 0;
  // (2,2) stays zero: the fiber is geodesic.
  return out;
}

// Frame components of a coordinate vector v at p: (lam vx, lam vy, theta(v)).
inline Eigen::Vector3d to_frame(const SpaceParams& space,
                                const AmbientPoint& p,
                                const AmbientVector& v) {
  const double lam = conformal_factor(space, p.x, p.y);
  const double b = space.bundle;
  const double vert =
      space.side == Side::Riemannian
          ? v.z() + b * lam * (p.y * v.x() - p.x * v.y())
          : v.z() - b * lam * (p.y * v.x() - p.x * v.y());
  return Eigen::Vector3d(lam * v.x(), lam * v.y(), vert);
}

}  // namespace ektau
