#pragma once

// Reference surfaces with analytically exact jets: the invariant family and
// its duals, rotated cylinders, the Hano-Nomizu entire CMC families, the
// semitrough, and the ODE-defined catenoids and helicoids.  These are the
// ground truth every other module is tested against.

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ektau/core.hpp"
#include "ektau/ode.hpp"
#include "ektau/patch.hpp"
#include "ektau/surface.hpp"

namespace ektau {

enum class FixtureName {
  Umbrella,
  AffinePlane,
  Saddle,
  InvariantTheta,
  Hyperboloid,
  HyperbolicCylinder,
  ParabolicRotated,
  HanoNomizu,
  Semitrough,
  Catenoid,
  Helicoid,
};

inline const char* to_string(FixtureName n) {
  switch (n) {
    case FixtureName::Umbrella: return "umbrella";
    case FixtureName::AffinePlane: return "affine";
    case FixtureName::Saddle: return "saddle";
    case FixtureName::InvariantTheta: return "invariant";
    case FixtureName::Hyperboloid: return "hyperboloid";
    case FixtureName::HyperbolicCylinder: return "cylinder";
    case FixtureName::ParabolicRotated: return "parabolic_rotated";
    case FixtureName::HanoNomizu: return "hano_nomizu";
    case FixtureName::Semitrough: return "semitrough";
    case FixtureName::Catenoid: return "catenoid";
    case FixtureName::Helicoid: return "helicoid";
  }
  return "unknown";
}

inline FixtureName fixture_from_string(const std::string& s) {
  for (FixtureName n :
       {FixtureName::Umbrella, FixtureName::AffinePlane, FixtureName::Saddle,
        FixtureName::InvariantTheta, FixtureName::Hyperboloid,
        FixtureName::HyperbolicCylinder, FixtureName::ParabolicRotated,
        FixtureName::HanoNomizu, FixtureName::Semitrough,
        FixtureName::Catenoid, FixtureName::Helicoid}) {
    if (s == to_string(n)) return n;
  }
  fail(ErrorKind::UsageError, "unknown fixture '" + s + "'");
}

// Semitrough and Helicoid are parametrized patches, not graphs.
inline bool fixture_is_graph(FixtureName n) {
  return n != FixtureName::Semitrough && n != FixtureName::Helicoid;
}

struct FixtureId {
  FixtureName name = FixtureName::Umbrella;
  double tau = 0.5;    // bundle curvature / CMC target (display prefactor
                       // parameter for the semitrough)
  double a = 0, b = 0, c = 0;  // affine plane u = a x + b y + c
  double theta = 0;            // invariant-family parameter
  double param = 0;  // parabolic a / Hano-Nomizu a / catenoid E / helicoid a
  int family = 3;    // Hano-Nomizu family 1 | 2 | 3
};

// ---------------------------------------------------------------------------
// Closed-form reference displays.

inline double umbrella_nu(double tau, double r) {
  return 1.0 / std::sqrt(1 + sq(tau * r));
}
inline double umbrella_K(double tau, double nu) {
  return -sq(tau) * sq(sq(nu)) - 2 * sq(tau) * sq(nu);
}

inline double invariant_theta_u(double tau, double theta, double x, double y) {
  return -tau * x * y +
         (std::sinh(theta) / (4 * tau)) *
             (2 * tau * x * std::sqrt(1 + 4 * sq(tau * x)) +
              std::asinh(2 * tau * x));
}
inline double invariant_theta_nu(double tau, double theta, double x) {
  return 1.0 / (std::cosh(theta) * std::sqrt(1 + 4 * sq(tau * x)));
}
inline double invariant_theta_K(double tau, double theta, double x) {
  const double nu = invariant_theta_nu(tau, theta, x);
  return -4 * sq(tau) * sq(std::cosh(theta)) * sq(sq(nu));
}

inline double catenoid_nu(double E, double tau, double r) {
  return std::sqrt(r * r - E * E) / (r * std::sqrt(1 + sq(tau * r)));
}
inline double catenoid_K(double E, double tau, double r) {
  const double r2 = r * r;
  return -(E * E + 3 * sq(tau) * sq(r2) + 2 * sq(sq(tau)) * r2 * sq(r2)) /
         (sq(r2) * sq(1 + sq(tau) * r2));
}

inline double helicoid_axis_K(double a, double tau) {
  return (2 * a * tau - 1) / (a * a);
}
inline double helicoid_K_of_f(double a, double tau, double f) {
  const double f2 = f * f;
  const double num = 2 * a * a * a * tau - 6 * sq(a * tau) * f2 - a * a +
                     6 * a * tau * sq(tau) * sq(f2) -
                     2 * sq(sq(tau)) * f2 * sq(f2) - 3 * sq(tau) * sq(f2);
  const double den = sq(sq(a - tau * f2) + f2);
  return num / den;
}

// ---------------------------------------------------------------------------
// ODE profiles.

// Catenoid height profile in the regularizing variable t with r = E cosh t:
// dh/dt = E sqrt(1 + tau^2 E^2 cosh^2 t), h(0) = 0.
inline ODEProfile catenoid_profile_t(double E, double tau, double t_max) {
  if (!(E > 0)) fail(ErrorKind::DomainViolation, "catenoid requires E > 0");
  auto rhs = [E, tau](double t, double) {
    return E * std::sqrt(1 + sq(tau * E * std::cosh(t)));
  };
  return integrate_ode(rhs, 0.0, 0.0, t_max, 1e-10, 0.02);
}

// Same profile addressed by radius: h(r) for r in (E, r_max].
inline ODEProfile catenoid_profile(double E, double tau, double r_max) {
  if (!(r_max > E)) {
    fail(ErrorKind::DomainViolation, "catenoid profile needs r_max > E");
  }
  return catenoid_profile_t(E, tau, std::acosh(r_max / E) + 0.05);
}

// Helicoid generating curve: f'(x) = sqrt((tau f^2 - a)^2 + f^2), f(0) = 0,
// integrated on [0, x_max] and extended to negative x by oddness.
inline ODEProfile helicoid_ode_profile(double a, double tau, double x_max) {
  if (!(a > 0)) fail(ErrorKind::DomainViolation, "helicoid requires a > 0");
  auto rhs = [a, tau](double, double f) {
    return std::sqrt(sq(tau * f * f - a) + f * f);
  };
  return integrate_ode(rhs, 0.0, 0.0, x_max, 1e-10, 0.02);
}

// ---------------------------------------------------------------------------
// Hano-Nomizu family data: f(w), f'(w), f''(w) on the stated w-range.  The
// display is stored over the future-directed branch (the generating function
// is odd, so the branch swap is the substitution w -> -w of the same
// formula).

namespace detail {

struct HanoNomizuF {
  int family;
  double a;

  double lower_bound() const { return family == 1 ? a : 0.0; }

  double f(double w) const {
    switch (family) {
      case 1:
        return w / (w * w - a * a) -
               std::log((w - a) / (w + a)) / (2 * a);
      case 2:
        return w / (w * w + a * a) - std::atan(w / a) / a;
      default:
        return 2.0 / w;
    }
  }
  double fp(double w) const {
    switch (family) {
      case 1: return -2 * w * w / sq(w * w - a * a);
      case 2: return -2 * w * w / sq(w * w + a * a);
      default: return -2.0 / (w * w);
    }
  }
  double fpp(double w) const {
    switch (family) {
      case 1: {
        const double d = w * w - a * a;
        return -4 * w / sq(d) + 8 * w * w * w / (d * sq(d));
      }
      case 2: {
        const double d = w * w + a * a;
        return -4 * w / sq(d) + 8 * w * w * w / (d * sq(d));
      }
      default:
        return 4.0 / (w * w * w);
    }
  }
};

}  // namespace detail

// The (x, w) parametrization of a Hano-Nomizu surface (future branch):
//   Phi = (x, (w - x^2/(2w))/sqrt2 - f(w)/(4 sqrt2 tau^2),
//             (w + x^2/(2w))/sqrt2 + f(w)/(4 sqrt2 tau^2)).
inline ParametrizedPatch hano_nomizu_patch(int family, double a, double tau,
                                           const Window& chart) {
  if (family < 1 || family > 3) {
    fail(ErrorKind::DomainViolation, "Hano-Nomizu family must be 1, 2 or 3");
  }
  if (family != 3 && !(a > 0)) {
    fail(ErrorKind::DomainViolation, "Hano-Nomizu families 1-2 need a > 0");
  }
  if (!(tau > 0)) fail(ErrorKind::DomainViolation, "requires tau > 0");
  detail::HanoNomizuF fd{family, a};
  if (!(chart.y0 > fd.lower_bound())) {
    fail(ErrorKind::UnsupportedWindow,
         "chart w-range must stay above the family's lower bound");
  }
  const double s2 = std::sqrt(2.0);
  const double cf = 1.0 / (4 * s2 * sq(tau));
  auto jets = [fd, s2, cf](double x, double w) {
    PatchJet j;
    const double fw = fd.f(w), fpw = fd.fp(w), fppw = fd.fpp(w);
    const double x2 = x * x;
    j.p = {x, (w - x2 / (2 * w)) / s2 - cf * fw,
           (w + x2 / (2 * w)) / s2 + cf * fw};
    j.ps = {1, -x / (w * s2), x / (w * s2)};
    j.pt = {0, (1 + x2 / (2 * w * w)) / s2 - cf * fpw,
            (1 - x2 / (2 * w * w)) / s2 + cf * fpw};
    j.pss = {0, -1 / (w * s2), 1 / (w * s2)};
    j.pst = {0, x / (w * w * s2), -x / (w * w * s2)};
    j.ptt = {0, -x2 / (w * w * w * s2) - cf * fppw,
             x2 / (w * w * w * s2) + cf * fppw};
    return j;
  };
  ParametrizedPatch p;
  p.space = SpaceParams{0.0, 0.0, Side::Lorentzian};
  p.window = chart;
  p.jets = jets;
  return p;
}

// Semitrough, stored verbatim with its display prefactor 1/H:
//   Phi = (1/H) (x - coth(x)/2, (coth(x)/2) sinh y, (coth(x)/2) cosh y).
inline ParametrizedPatch semitrough_patch(double H, const Window& chart) {
  if (!(H > 0)) fail(ErrorKind::DomainViolation, "requires H > 0");
  if (!(chart.x0 > 0)) {
    fail(ErrorKind::UnsupportedWindow,
         "semitrough chart requires x > 0 (coth pole at x = 0)");
  }
  auto jets = [H](double x, double y) {
    const double c = 1.0 / std::tanh(x);
    const double cp = 1 - c * c;
    const double cpp = -2 * c * cp;
    const double sh = std::sinh(y), ch = std::cosh(y);
    PatchJet j;
    j.p = {(x - c / 2) / H, (c / 2) * sh / H, (c / 2) * ch / H};
    j.ps = {(1 - cp / 2) / H, (cp / 2) * sh / H, (cp / 2) * ch / H};
    j.pt = {0, (c / 2) * ch / H, (c / 2) * sh / H};
    j.pss = {-cpp / 2 / H, (cpp / 2) * sh / H, (cpp / 2) * ch / H};
    j.pst = {0, (cp / 2) * ch / H, (cp / 2) * sh / H};
    j.ptt = {0, (c / 2) * sh / H, (c / 2) * ch / H};
    return j;
  };
  ParametrizedPatch p;
  p.space = SpaceParams{0.0, 0.0, Side::Lorentzian};
  p.window = chart;
  p.jets = jets;
  return p;
}

// Helicoid patch (x, y) -> (f(x) cos y, f(x) sin y, a y) in the Riemannian
// flat-base ambient with bundle curvature tau.
inline std::pair<ODEProfile, ParametrizedPatch> helicoid_profile(
    double a, double tau, double x_max) {
  if (!(x_max > 0)) fail(ErrorKind::DomainViolation, "requires x_max > 0");
  ODEProfile prof = helicoid_ode_profile(a, tau, x_max);
  auto shared = std::make_shared<const ODEProfile>(std::move(prof));
  auto jets = [shared, a, tau](double x, double y) {
    const double ax = std::abs(x);
    const double f0 = shared->eval(ax);
    const double f = x < 0 ? -f0 : f0;
    const double fp = std::sqrt(sq(tau * f * f - a) + f * f);
    const double fpp = f * (2 * tau * (tau * f * f - a) + 1);
    const double cy = std::cos(y), sy = std::sin(y);
    PatchJet j;
    j.p = {f * cy, f * sy, a * y};
    j.ps = {fp * cy, fp * sy, 0};
    j.pt = {-f * sy, f * cy, a};
    j.pss = {fpp * cy, fpp * sy, 0};
    j.pst = {-fp * sy, fp * cy, 0};
    j.ptt = {-f * cy, -f * sy, 0};
    return j;
  };
  ParametrizedPatch p;
  p.space = SpaceParams{0.0, tau, Side::Riemannian};
  p.window = Window{-x_max, x_max, -1e9, 1e9};
  p.jets = jets;
  return {*shared, p};
}

// The holomorphic quadratic differential of a conformally parametrized
// minimal patch over the flat Riemannian base, evaluated from its chart
// fundamental forms: Q(dzeta, dzeta) with zeta = s + i t.
inline std::complex<double> patch_q_zz(const ParametrizedPatch& patch,
                                       double s, double t) {
  if (patch.space.side != Side::Riemannian || patch.space.kappa != 0) {
    fail(ErrorKind::DomainViolation,
         "chart differential implemented over the flat Riemannian base");
  }
  const double tau = patch.space.bundle;
  const PatchData d = patch_data(patch, s, t);
  const std::complex<double> i(0, 1);
  const std::complex<double> sigma_part =
      (d.s11 - d.s22 - 2.0 * i * d.s12) / 4.0;
  const std::complex<double> h3 =
      (d.tangent_s[2] - i * d.tangent_t[2]) / 2.0;
  return sigma_part - 2.0 * i * tau * h3 * h3;
}

// ---------------------------------------------------------------------------
// Graph fixtures.

namespace detail {

inline void require_entire_ok(const Window&) {}

inline double window_min_radius(const Window& w) {
  const double px = w.x0 > 0 ? w.x0 : (w.x1 < 0 ? w.x1 : 0.0);
  const double py = w.y0 > 0 ? w.y0 : (w.y1 < 0 ? w.y1 : 0.0);
  return std::hypot(px, py);
}

inline double window_max_radius(const Window& w) {
  double m = 0;
  for (double x : {w.x0, w.x1}) {
    for (double y : {w.y0, w.y1}) m = std::max(m, std::hypot(x, y));
  }
  return m;
}

}  // namespace detail

inline GraphSurface invariant_theta_surface(double tau, double theta,
                                            const Window& w,
                                            double step = 0.05) {
  if (!(tau > 0)) fail(ErrorKind::DomainViolation, "requires tau > 0");
  auto jets = [tau, theta](double x, double y) {
    const double q = std::sqrt(1 + 4 * sq(tau * x));
    SurfaceJet j;
    j.u = invariant_theta_u(tau, theta, x, y);
    j.ux = -tau * y + std::sinh(theta) * q;
    j.uy = -tau * x;
    j.uxx = std::sinh(theta) * 4 * sq(tau) * x / q;
    j.uxy = -tau;
    j.uyy = 0;
    return j;
  };
  return GraphSurface(SpaceParams{0.0, tau, Side::Riemannian}, 0.0, w, jets,
                      step);
}

// The dual of the invariant family: v_theta = lambda_hyp(x)/cosh(theta) +
// tanh(theta) y with lambda_hyp = sqrt(1/(4 tau^2) + x^2).
inline GraphSurface invariant_theta_dual(double tau, double theta,
                                         const Window& w, double step = 0.05) {
  if (!(tau > 0)) fail(ErrorKind::DomainViolation, "requires tau > 0");
  auto jets = [tau, theta](double x, double y) {
    const double rho = std::sqrt(1.0 / (4 * sq(tau)) + x * x);
    const double ch = std::cosh(theta);
    SurfaceJet j;
    j.u = rho / ch + std::tanh(theta) * y;
    j.ux = x / (rho * ch);
    j.uy = std::tanh(theta);
    j.uxx = (1.0 / (4 * sq(tau))) / (rho * rho * rho * ch);
    j.uxy = 0;
    j.uyy = 0;
    return j;
  };
  return GraphSurface(SpaceParams{0.0, 0.0, Side::Lorentzian}, tau, w, jets,
                      step);
}

inline GraphSurface fixture_surface(const FixtureId& id, const Window& w,
                                    double step = 0.05) {
  if (!(id.tau > 0)) fail(ErrorKind::DomainViolation, "requires tau > 0");
  const double tau = id.tau;
  const SpaceParams nil{0.0, tau, Side::Riemannian};
  const SpaceParams l3{0.0, 0.0, Side::Lorentzian};
  switch (id.name) {
    case FixtureName::Umbrella: {
      auto jets = [](double, double) { return SurfaceJet{}; };
      return GraphSurface(nil, 0.0, w, jets, step);
    }
    case FixtureName::AffinePlane: {
      const double a = id.a, b = id.b, c = id.c;
      auto jets = [a, b, c](double x, double y) {
        SurfaceJet j;
        j.u = a * x + b * y + c;
        j.ux = a;
        j.uy = b;
        return j;
      };
      return GraphSurface(nil, 0.0, w, jets, step);
    }
    case FixtureName::Saddle: {
      auto jets = [tau](double x, double y) {
        SurfaceJet j;
        j.u = -tau * x * y;
        j.ux = -tau * y;
        j.uy = -tau * x;
        j.uxy = -tau;
        return j;
      };
      return GraphSurface(nil, 0.0, w, jets, step);
    }
    case FixtureName::InvariantTheta:
      return invariant_theta_surface(tau, id.theta, w, step);
    case FixtureName::Hyperboloid: {
      auto jets = [tau](double x, double y) {
        const double v = std::sqrt(1.0 / sq(tau) + x * x + y * y);
        SurfaceJet j;
        j.u = v;
        j.ux = x / v;
        j.uy = y / v;
        j.uxx = (v * v - x * x) / (v * v * v);
        j.uxy = -x * y / (v * v * v);
        j.uyy = (v * v - y * y) / (v * v * v);
        return j;
      };
      return GraphSurface(l3, tau, w, jets, step);
    }
    case FixtureName::HyperbolicCylinder: {
      auto jets = [tau](double x, double) {
        const double v = std::sqrt(1.0 / (4 * sq(tau)) + x * x);
        SurfaceJet j;
        j.u = v;
        j.ux = x / v;
        j.uxx = (1.0 / (4 * sq(tau))) / (v * v * v);
        return j;
      };
      return GraphSurface(l3, tau, w, jets, step);
    }
    case FixtureName::ParabolicRotated: {
      const double a = id.param;
      const double q = std::sqrt(sq(sq(a)) + 4);
      const double rx = (a * a - 2) / q, ry = -2 * a / q;
      const double sx = 2 * a / q, sy = (a * a - 2) / q;
      const double c0 = 1.0 / (4 * sq(tau));
      auto jets = [q, rx, ry, sx, sy, c0, a](double x, double y) {
        const double r = rx * x + ry * y;
        const double s = sx * x + sy * y;
        const double rho = std::sqrt(c0 + r * r);
        SurfaceJet j;
        j.u = (2 * rho + a * a * s) / q;
        const double rho_r = r / rho;
        j.ux = (2 * rho_r * rx + a * a * sx) / q;
        j.uy = (2 * rho_r * ry + a * a * sy) / q;
        const double rho_rr = c0 / (rho * rho * rho);
        j.uxx = 2 * rho_rr * rx * rx / q;
        j.uxy = 2 * rho_rr * rx * ry / q;
        j.uyy = 2 * rho_rr * ry * ry / q;
        return j;
      };
      return GraphSurface(l3, tau, w, jets, step);
    }
    case FixtureName::HanoNomizu: {
      detail::HanoNomizuF fd{id.family, id.param};
      if (id.family < 1 || id.family > 3) {
        fail(ErrorKind::DomainViolation, "Hano-Nomizu family must be 1-3");
      }
      // Chart w-range: expand until the monotone second coordinate covers
      // the target y-range with margin at the extreme x columns.
      const double s2 = std::sqrt(2.0);
      const double cf = 1.0 / (4 * s2 * sq(tau));
      const double wb = fd.lower_bound();
      auto y_img = [&](double x, double ww) {
        return (ww - x * x / (2 * ww)) / s2 - cf * fd.f(ww);
      };
      const double xa = std::max(std::abs(w.x0), std::abs(w.x1));
      double lo = wb + 1.0, hi = std::max(2.0, wb + 2.0);
      const double pad = 1.0 + 4 * step;
      for (int it = 0; it < 200 && (y_img(xa, lo) > w.y0 - pad ||
                                    y_img(0, lo) > w.y0 - pad);
           ++it) {
        lo = wb + (lo - wb) / 2;
      }
      for (int it = 0; it < 200 && y_img(0, hi) < w.y1 + pad; ++it) hi *= 2;
      if (y_img(xa, lo) > w.y0 - pad || y_img(0, hi) < w.y1 + pad) {
        fail(ErrorKind::UnsupportedWindow,
             "the family chart does not cover this window");
      }
      const Window chart{w.x0 - 1 - 4 * step, w.x1 + 1 + 4 * step, lo, hi};
      ParametrizedPatch patch =
          hano_nomizu_patch(id.family, id.param, tau, chart);
      PatchRegraphResult rr = patch_regraph(patch, l3, tau, w, step);
      if (rr.shrink_factor < 1.0) {
        fail(ErrorKind::UnsupportedWindow,
             "the family could not be re-graphed on the full window");
      }
      return rr.graph;
    }
    case FixtureName::Catenoid: {
      const double E = id.param;
      if (!(E > 0)) fail(ErrorKind::DomainViolation, "catenoid needs E > 0");
      const double rmin = detail::window_min_radius(w);
      if (!(rmin > E)) {
        fail(ErrorKind::UnsupportedWindow,
             "catenoid window must avoid the disk r <= E");
      }
      const double rmax = detail::window_max_radius(w);
      ODEProfile prof = catenoid_profile(E, tau, rmax * 1.001);
      auto shared = std::make_shared<const ODEProfile>(std::move(prof));
      auto jets = [shared, E, tau](double x, double y) {
        const double r = std::hypot(x, y);
        const double t = std::acosh(r / E);
        const double hp =
            E * std::sqrt(1 + sq(tau * r)) / std::sqrt(r * r - E * E);
        const double hpp = -E * r * (1 + sq(tau * E)) /
                           (std::sqrt(1 + sq(tau * r)) *
                            std::pow(r * r - E * E, 1.5));
        SurfaceJet j;
        j.u = shared->eval(t);
        const double cx = x / r, cy = y / r;
        j.ux = hp * cx;
        j.uy = hp * cy;
        j.uxx = hpp * cx * cx + hp * (1 / r - x * x / (r * r * r));
        j.uxy = hpp * cx * cy - hp * x * y / (r * r * r);
        j.uyy = hpp * cy * cy + hp * (1 / r - y * y / (r * r * r));
        return j;
      };
      return GraphSurface(nil, 0.0, w, jets, step);
    }
    case FixtureName::Semitrough:
    case FixtureName::Helicoid:
      fail(ErrorKind::NotAGraph,
           "fixture is a parametrized patch; use fixture_patch");
  }
  fail(ErrorKind::UsageError, "unhandled fixture");
}

// Patch access for the non-graph fixtures (and the Hano-Nomizu chart).
inline ParametrizedPatch fixture_patch(const FixtureId& id,
                                       const Window& chart) {
  switch (id.name) {
    case FixtureName::Semitrough:
      return semitrough_patch(id.tau, chart);
    case FixtureName::Helicoid: {
      const double xm = std::max(std::abs(chart.x0), std::abs(chart.x1));
      auto [prof, patch] = helicoid_profile(id.param, id.tau, xm + 0.05);
      patch.window = chart;
      return patch;
    }
    case FixtureName::HanoNomizu:
      return hano_nomizu_patch(id.family, id.param, id.tau, chart);
    default:
      fail(ErrorKind::DomainViolation,
           "fixture is a graph; use fixture_surface");
  }
}

// Center of the dual of an affine plane u = a x + b y + c: the hyperboloid
// sqrt(1/tau^2 + (x - b/tau)^2 + (y + a/tau)^2) up to vertical translation.
inline std::pair<double, double> affine_dual_center(double tau, double a,
                                                    double b) {
  return {b / tau, -a / tau};
}

// Catalog metadata for the CLI.
struct FixtureInfo {
  FixtureName name;
  const char* side;
  bool graph;
  const char* parameters;
};

inline std::vector<FixtureInfo> fixture_catalog() {
  return {
      {FixtureName::Umbrella, "riemannian", true, "tau"},
      {FixtureName::AffinePlane, "riemannian", true, "tau,a,b,c"},
      {FixtureName::Saddle, "riemannian", true, "tau"},
      {FixtureName::InvariantTheta, "riemannian", true, "tau,theta"},
      {FixtureName::Hyperboloid, "lorentzian", true, "tau"},
      {FixtureName::HyperbolicCylinder, "lorentzian", true, "tau"},
      {FixtureName::ParabolicRotated, "lorentzian", true, "tau,a"},
      {FixtureName::HanoNomizu, "lorentzian", true, "tau,family,a"},
      {FixtureName::Semitrough, "lorentzian", false, "H"},
      {FixtureName::Catenoid, "riemannian", true, "tau,E"},
      {FixtureName::Helicoid, "riemannian", false, "tau,a"},
  };
}

}  // namespace ektau
