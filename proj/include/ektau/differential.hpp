// Quadratic differentials Q_{a,b} on CMC graphs and the duality identity
// Q = Q~ between a graph and its Lorentzian dual.
//
// Q_{a,b} is a complex quadratic form evaluated on the tangent frame
// (e1, e2); its general-path construction combines the second fundamental
// form, the tangent rotation J, and the height components <e_i, E3>:
//   M = Id - i J,   Q = a M^T sigma M + b (M^T h)(M^T h)^T,
// where h = (alpha, beta) on the Riemannian side and (-alpha~, -beta~) on
// the Lorentzian side (index lowered against <E3,E3> = -1).
//
// Admissible coefficients satisfy the side's linear constraint
//   Riemannian:  (kappa - 4 tau^2) a + 2 (H + i tau) b = 0
//   Lorentzian:  (kappa + 4 H^2) a + 2 i (H + i tau) b = 0
// and dual pairs of differentials are related by a~ = -i a together with
// (kappa - 4 tau^2) b~ + (kappa + 4 H^2) b = 0.
#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "ektau/core.hpp"
#include "ektau/duality.hpp"
#include "ektau/surface.hpp"

namespace ektau {

using Complex = std::complex<double>;

struct CoefficientPair {
  Complex a{0, 0};
  Complex b{0, 0};
  // Informational: set by dual_coefficients when kappa - 4 tau^2 = 0, where
  // the b-relation degenerates and b~ is fixed to 0 by convention.
  bool degenerate_relation = false;
};

struct QuadDiffFrame {
  Complex q11{0, 0};
  Complex q12{0, 0};
  Complex q22{0, 0};
};

// Residual of the side's linear coefficient constraint.
inline double coefficient_constraint(const CoefficientPair& c, double kappa,
                                     double tau, double H, Side side) {
  const Complex i(0, 1);
  if (side == Side::Riemannian) {
    return std::abs((kappa - 4 * tau * tau) * c.a + 2.0 * (H + i * tau) * c.b);
  }
  return std::abs((kappa + 4 * H * H) * c.a + 2.0 * i * (H + i * tau) * c.b);
}

// Canonical admissible coefficients.  With `normalized` (kappa = H = 0 only)
// returns the proportional normalized pair (1, -2 i tau) / (-i, 0).
inline CoefficientPair canonical_coefficients(double kappa, double tau,
                                              double H, Side side,
                                              bool normalized = false) {
  const Complex i(0, 1);
  CoefficientPair out;
  if (normalized) {
    if (kappa != 0.0 || H != 0.0) {
      fail(ErrorKind::DomainViolation,
           "normalized canonical coefficients require kappa = H = 0");
    }
    if (side == Side::Riemannian) {
      out.a = Complex(1, 0);
      out.b = -2.0 * i * tau;
    } else {
      out.a = Complex(0, -1);
      out.b = Complex(0, 0);
    }
    return out;
  }
  if (side == Side::Riemannian) {
    out.a = 2.0 * Complex(H, tau);
    out.b = Complex(-(kappa - 4 * tau * tau), 0);
  } else {
    out.a = 2.0 * Complex(tau, -H);  // = -i * 2(H + i tau)
    out.b = Complex(kappa + 4 * H * H, 0);
  }
  return out;
}

// Lorentzian coefficients dual to a Riemannian pair: a~ = -i a and
// (kappa - 4 tau^2) b~ + (kappa + 4 H^2) b = 0.
inline CoefficientPair dual_coefficients(const CoefficientPair& c,
                                         double kappa, double tau, double H) {
  const Complex i(0, 1);
  CoefficientPair out;
  out.a = -i * c.a;
  const double den = kappa - 4 * tau * tau;
  if (den == 0.0) {
    out.b = Complex(0, 0);
    out.degenerate_relation = true;
  } else {
    out.b = -(kappa + 4 * H * H) * c.b / den;
  }
  return out;
}

namespace detail {

// General path: J-rotation algebra on the frame data.
inline QuadDiffFrame evaluate_q_general(const GraphSurface& s,
                                        const CoefficientPair& c, double x,
                                        double y) {
  const SurfaceJet j = s.jet_at(x, y);
  const auto d = first_order(s, x, y, j);
  const ShapeData sh = shape_data(s, x, y);
  const double A = d.alpha, B = d.beta, W = d.omega;
  Eigen::Matrix2d Jm;
  Eigen::Vector2d h;
  if (s.space().side == Side::Riemannian) {
    Jm << -A * B / W, -(1 + B * B) / W, (1 + A * A) / W, A * B / W;
    h << A, B;
  } else {
    Jm << A * B / W, -(1 - B * B) / W, (1 - A * A) / W, -A * B / W;
    h << -A, -B;
  }
  const Complex i(0, 1);
  const Eigen::Matrix2cd M =
      Eigen::Matrix2cd::Identity() - i * Jm.cast<Complex>();
  const Eigen::Matrix2cd QS = M.transpose() * sh.sigma.cast<Complex>() * M;
  const Eigen::Vector2cd Qh = M.transpose() * h.cast<Complex>();
  QuadDiffFrame out;
  out.q11 = c.a * QS(0, 0) + c.b * Qh(0) * Qh(0);
  out.q12 = c.a * QS(0, 1) + c.b * Qh(0) * Qh(1);
  out.q22 = c.a * QS(1, 1) + c.b * Qh(1) * Qh(1);
  return out;
}

// kappa = 0 closed forms, valid on graphs satisfying their CMC equation.
// Riemannian (minimal graphs in Nil3, coefficients on the (1, -2 i tau)
// ray, scale factor `scale` = a):
inline QuadDiffFrame evaluate_q_fast_riem(const GraphSurface& s, Complex scale,
                                          double x, double y) {
  const SurfaceJet j = s.jet_at(x, y);
  const double tau = s.space().bundle;
  const double A = j.ux + tau * y, B = j.uy - tau * x;
  const double W2 = 1 + A * A + B * B;
  const double W = std::sqrt(W2);
  const Complex i(0, 1);
  QuadDiffFrame out;
  out.q11 = scale * (2 * j.uxx / W +
                     (2.0 * i / W2) * (A * B * j.uxx - (1 + A * A) * j.uxy));
  out.q12 = scale * (2 * j.uxy / W +
                     (2.0 * i / W2) * ((1 + B * B) * j.uxx - A * B * j.uxy));
  out.q22 = scale * (2 * j.uyy / W +
                     (2.0 * i / W2) * ((1 + B * B) * j.uxy - A * B * j.uyy));
  return out;
}

// Lorentzian (spacelike CMC-tau graphs in L^3, coefficients on the (-i, 0)
// ray, scale factor `scale` = i a so that (a, 0) = scale * (-i, 0)):
inline QuadDiffFrame evaluate_q_fast_lor(const GraphSurface& s, Complex scale,
                                         double x, double y) {
  const SurfaceJet j = s.jet_at(x, y);
  const double tau = s.cmc();
  const double p = j.ux, q = j.uy;
  const double W2 = 1 - p * p - q * q;
  if (W2 <= s.spacelike_margin()) {
    fail(ErrorKind::SpacelikeViolation,
         "graph gradient reaches the light cone");
  }
  const double W = std::sqrt(W2);
  const Complex i(0, 1);
  QuadDiffFrame out;
  out.q11 = scale * ((2 / W2) * (p * q * j.uxx + (1 - p * p) * j.uxy) +
                     (2.0 * i / W) * j.uxx - 2.0 * i * tau * (1 - p * p));
  out.q12 = scale * (-(2 / W2) * ((1 - q * q) * j.uxx + p * q * j.uxy) +
                     2 * tau * W + (2.0 * i / W) * j.uxy +
                     2.0 * i * tau * p * q);
  out.q22 = scale * (-(2 / W2) * ((1 - q * q) * j.uxy + p * q * j.uyy) +
                     (2.0 * i / W) * j.uyy - 2.0 * i * tau * (1 - q * q));
  return out;
}

}  // namespace detail

// Evaluates Q_{a,b} on the frame (e1, e2).  For kappa = 0 the printed
// closed forms are used when they apply (minimal Riemannian graphs; flat
// Lorentzian ambient) and the coefficients lie on the canonical ray; both
// paths agree on CMC graphs.  Set `force_general` to bypass the closed
// forms.
inline QuadDiffFrame evaluate_Q(const GraphSurface& s,
                                const CoefficientPair& c, double x, double y,
                                bool force_general = false) {
  const double kappa = s.space().kappa;
  if (!force_general && kappa == 0.0) {
    const Complex i(0, 1);
    const double scale_mag = std::max(std::abs(c.a), std::abs(c.b));
    if (s.space().side == Side::Riemannian && s.cmc() == 0.0) {
      const double tau = s.space().bundle;
      if (std::abs(c.b + 2.0 * i * tau * c.a) <= 1e-13 * (1 + scale_mag)) {
        return detail::evaluate_q_fast_riem(s, c.a, x, y);
      }
    }
    if (s.space().side == Side::Lorentzian && s.space().bundle == 0.0) {
      if (std::abs(c.b) <= 1e-13 * (1 + scale_mag)) {
        return detail::evaluate_q_fast_lor(s, i * c.a, x, y);
      }
    }
  }
  return detail::evaluate_q_general(s, c, x, y);
}

struct IdentityResiduals {
  double duality = 0;
  double hessian = 0;
  double modulus = 0;
};

// Pointwise residuals of the three central identities on a dual pair.
// `duality` uses the canonical coefficient pairs on both sides; `hessian`
// and `modulus` are the kappa = 0 statements for minimal graphs in Nil3 and
// their duals in L^3.
inline IdentityResiduals identity_residuals(const DualPair& pair, double x,
                                            double y) {
  const GraphSurface& R = pair.riemannian;
  const GraphSurface& L = pair.lorentzian;
  const double kappa = R.space().kappa;
  const double tau = R.space().bundle;
  const double H = L.space().bundle;
  IdentityResiduals out;

  const CoefficientPair cr = canonical_coefficients(kappa, tau, H,
                                                    Side::Riemannian);
  const CoefficientPair cl = dual_coefficients(cr, kappa, tau, H);
  const QuadDiffFrame Q = evaluate_Q(R, cr, x, y);
  const QuadDiffFrame Qt = evaluate_Q(L, cl, x, y);
  out.duality = std::max({std::abs(Q.q11 - Qt.q11), std::abs(Q.q12 - Qt.q12),
                          std::abs(Q.q22 - Qt.q22)});

  if (kappa != 0.0 || H != 0.0) {
    // The hessian/modulus identities are kappa = 0, H = 0 statements.
    out.hessian = std::numeric_limits<double>::quiet_NaN();
    out.modulus = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const SurfaceJet ju = R.jet_at(x, y);
  const SurfaceJet jv = L.jet_at(x, y);
  const double hess_u = ju.uxy * ju.uxy - ju.uxx * ju.uyy;
  const double den = sq(1 - jv.ux * jv.ux - jv.uy * jv.uy);
  const double k_lor = (jv.uxy * jv.uxy - jv.uxx * jv.uyy) / den;
  out.hessian = std::abs(hess_u - (k_lor + tau * tau));

  // Modulus identity through |Q(e1,e1)| of the normalized differential.
  const CoefficientPair cn = canonical_coefficients(0, tau, 0,
                                                    Side::Riemannian, true);
  const QuadDiffFrame Qn = evaluate_Q(R, cn, x, y);
  const double A = ju.ux + tau * y;
  const double W2 = 1 + A * A + sq(ju.uy - tau * x);
  const double lhs = std::norm(Qn.q11) * sq(W2) / (4 * sq(1 + A * A));
  out.modulus = std::abs(lhs - hess_u);
  return out;
}

}  // namespace ektau
