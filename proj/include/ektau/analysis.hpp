#pragma once

// Verification harness for the curvature estimates: two-sided Gauss-curvature
// bounds for entire minimal graphs, Hessian-determinant bounds across a dual
// pair, the stability-operator identity for nu, the curvature proof-chain
// displays, and the second-fundamental-form norm bounds on the Lorentzian
// side.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ektau/core.hpp"
#include "ektau/duality.hpp"
#include "ektau/io.hpp"
#include "ektau/surface.hpp"

namespace ektau {

struct BoundRecord {
  double x = 0, y = 0;
  double value = 0, lower = 0, upper = 0;
  bool pass = true;
};

struct BoundReport {
  std::string quantity;
  bool applicable = true;       // precondition (small CMC defect) held
  bool attested_entire = false; // caller's entirety attestation, recorded
  double tolerance = 0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  double max_violation = 0;
  std::vector<BoundRecord> records;

  void add(double x, double y, double value, double lower, double upper,
           bool keep) {
    BoundRecord r{x, y, value, lower, upper, true};
    const double slack = std::min(value - lower, upper - value);
    min_slack = std::min(min_slack, slack);
    if (slack < -tolerance) {
      r.pass = false;
      ++violations;
      max_violation = std::max(max_violation, -slack);
    }
    ++samples;
    if (keep) records.push_back(r);
  }
  bool pass() const { return applicable && violations == 0; }
};

inline Json bound_report_json(const BoundReport& r) {
  Json j;
  j["quantity"] = r.quantity;
  j["applicable"] = r.applicable;
  j["attested_entire"] = r.attested_entire;
  j["tolerance"] = r.tolerance;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["min_slack"] = r.min_slack;
  j["max_violation"] = r.max_violation;
  j["pass"] = r.pass();
  if (!r.records.empty()) {
    Json recs = Json::array();
    for (const auto& rec : r.records) {
      recs.push_back({{"x", rec.x},
                      {"y", rec.y},
                      {"value", rec.value},
                      {"lower", rec.lower},
                      {"upper", rec.upper},
                      {"pass", rec.pass}});
    }
    j["records"] = std::move(recs);
  }
  return j;
}

namespace detail {

inline void require_flat_base(const GraphSurface& s) {
  if (s.space().kappa != 0.0) {
    fail(ErrorKind::DomainViolation,
         "analysis operations are implemented over the flat base");
  }
}

// Covariant gradient components (nu_x, nu_y) from exact 2-jets (flat base).
inline std::pair<double, double> nu_gradient(const GraphSurface& s, double x,
                                             double y) {
  const SurfaceJet j = s.jet_at(x, y);
  const double b = s.space().bundle;
  if (s.space().side == Side::Riemannian) {
    const double al = j.ux + b * y, be = j.uy - b * x;
    const double w2 = 1 + al * al + be * be;
    const double w3 = w2 * std::sqrt(w2);
    const double ax = j.uxx, ay = j.uxy + b;
    const double bx = j.uxy - b, by = j.uyy;
    return {-(al * ax + be * bx) / w3, -(al * ay + be * by) / w3};
  }
  const double al = j.ux, be = j.uy;  // spacelike slopes, bundle = 0 ambient
  const double w2 = 1 - al * al - be * be;
  const double w3 = w2 * std::sqrt(w2);
  return {(al * j.uxx + be * j.uxy) / w3, (al * j.uxy + be * j.uyy) / w3};
}

struct LorentzShape {
  Eigen::Matrix2d g, sigma, A;
  double omega = 0, Kt = 0, sff2 = 0, ATt2 = 0;
};

inline LorentzShape lorentz_shape(const GraphSurface& s, double x, double y) {
  if (s.space().side != Side::Lorentzian || s.space().kappa != 0 ||
      s.space().bundle != 0) {
    fail(ErrorKind::DomainViolation,
         "second-fundamental-form analysis expects a flat Lorentzian ambient");
  }
  const SurfaceJet j = s.jet_at(x, y);
  const double p = j.ux, q = j.uy;
  const double w2 = 1 - p * p - q * q;
  if (!(w2 > 0)) fail(ErrorKind::SpacelikeViolation, "sample is not spacelike");
  LorentzShape out;
  out.omega = std::sqrt(w2);
  out.g << 1 - p * p, -p * q, -p * q, 1 - q * q;
  out.sigma << j.uxx, j.uxy, j.uxy, j.uyy;
  out.sigma /= -out.omega;
  out.A = out.g.inverse() * out.sigma;
  out.Kt = (j.uxy * j.uxy - j.uxx * j.uyy) / (w2 * w2);
  out.sff2 = (out.A * out.A).trace();
  const Eigen::Vector2d Tt(-p / w2, -q / w2);
  const Eigen::Vector2d ATt = out.A * Tt;
  out.ATt2 = ATt.dot(out.g * ATt);
  return out;
}

inline bool cmc_precondition(const GraphSurface& s,
                             const std::vector<std::pair<double, double>>& pts,
                             double pre_tol) {
  for (const auto& [px, py] : pts) {
    if (!s.usable(px, py)) continue;
    if (std::abs(cmc_residual(s, px, py)) > pre_tol) return false;
  }
  return true;
}

}  // namespace detail

// Two-sided Gauss-curvature bounds -4 tau^2 nu^2 <= K <= -3 tau^2 nu^4 for
// entire minimal graphs over the flat base.  The entirety of the graph cannot
// be certified from a finite window; the caller attests it and the report
// records the attestation.
inline BoundReport curvature_bounds(
    const GraphSurface& s, const std::vector<std::pair<double, double>>& pts,
    bool attested_entire = true, double tol = 1e-9, double pre_tol = 1e-3,
    bool keep_records = false) {
  detail::require_flat_base(s);
  if (s.space().side != Side::Riemannian || s.cmc() != 0.0) {
    fail(ErrorKind::DomainViolation,
         "curvature bounds apply to minimal graphs on the Riemannian side");
  }
  BoundReport rep;
  rep.quantity = "gauss_curvature";
  rep.tolerance = tol;
  rep.attested_entire = attested_entire;
  rep.applicable = detail::cmc_precondition(s, pts, pre_tol);
  if (!rep.applicable) return rep;
  const double t2 = sq(s.space().bundle);
  for (const auto& [px, py] : pts) {
    if (!s.usable(px, py)) continue;
    const FrameData f = frame_data(s, px, py);
    const double K = shape_data(s, px, py).gauss;
    const double nu2 = f.nu * f.nu;
    rep.add(px, py, K, -4 * t2 * nu2, -3 * t2 * nu2 * nu2, keep_records);
  }
  return rep;
}

// Hessian bounds across a dual pair: 0 <= uxy^2 - uxx uyy <= tau^2 on the
// Riemannian side and -tau^2 <= K~ <= 0 on the Lorentzian side.
inline BoundReport hessian_bounds(
    const DualPair& pair, const std::vector<std::pair<double, double>>& pts,
    double tol = 1e-9, bool keep_records = false) {
  detail::require_flat_base(pair.riemannian);
  detail::require_flat_base(pair.lorentzian);
  const double t2 = sq(pair.riemannian.space().bundle);
  BoundReport rep;
  rep.quantity = "hessian_and_dual_gauss";
  rep.tolerance = tol;
  rep.applicable = true;
  for (const auto& [px, py] : pts) {
    if (pair.riemannian.usable(px, py)) {
      const SurfaceJet j = pair.riemannian.jet_at(px, py);
      rep.add(px, py, j.uxy * j.uxy - j.uxx * j.uyy, 0.0, t2, keep_records);
    }
    if (pair.lorentzian.usable(px, py)) {
      const double Kt = shape_data(pair.lorentzian, px, py).gauss;
      rep.add(px, py, Kt, -t2, 0.0, keep_records);
    }
  }
  return rep;
}

// Second-fundamental-form norm on the Lorentzian side:
// |sigma~|^2 = 4 tau^2 + 2 K~ and 2 tau^2 <= |sigma~|^2 <= 4 tau^2.
inline BoundReport sff_norm_check(
    const GraphSurface& s, const std::vector<std::pair<double, double>>& pts,
    bool attested_entire = true, double tol = 1e-9, double pre_tol = 1e-3,
    bool keep_records = false) {
  BoundReport rep;
  rep.quantity = "sff_norm_squared";
  rep.tolerance = tol;
  rep.attested_entire = attested_entire;
  rep.applicable = detail::cmc_precondition(s, pts, pre_tol);
  if (!rep.applicable) return rep;
  const double t2 = sq(s.cmc());
  for (const auto& [px, py] : pts) {
    if (!s.usable(px, py)) continue;
    const auto ls = detail::lorentz_shape(s, px, py);
    if (std::abs(ls.sff2 - (4 * t2 + 2 * ls.Kt)) > tol * (1 + 4 * t2)) {
      ++rep.violations;
      rep.max_violation =
          std::max(rep.max_violation, std::abs(ls.sff2 - 4 * t2 - 2 * ls.Kt));
    }
    rep.add(px, py, ls.sff2, 2 * t2, 4 * t2, keep_records);
  }
  return rep;
}

// Max residual of the stability identity Delta nu = 2 K nu + 4 tau^2 nu^3,
// with the Laplace-Beltrami operator discretized in divergence form by
// second-order central differences of the exact-flux field
// P = omega g^{-1} grad(nu).
inline double stability_residual(
    const GraphSurface& s, const std::vector<std::pair<double, double>>& pts,
    double h) {
  detail::require_flat_base(s);
  if (s.space().side != Side::Riemannian) {
    fail(ErrorKind::DomainViolation,
         "stability identity is checked on the Riemannian side");
  }
  const double tau = s.space().bundle;
  const Window w = s.window();
  auto flux = [&](double px, double py) -> std::pair<double, double> {
    const FrameData f = frame_data(s, px, py);
    const auto [nx, ny] = detail::nu_gradient(s, px, py);
    const double A = f.alpha, B = f.beta, W = f.omega;
    const double P1 = ((1 + B * B) * nx - A * B * ny) / W;
    const double P2 = (-A * B * nx + (1 + A * A) * ny) / W;
    return {P1, P2};
  };
  double worst = 0;
  for (const auto& [px, py] : pts) {
    if (px - 3 * h < w.x0 || px + 3 * h > w.x1 || py - 3 * h < w.y0 ||
        py + 3 * h > w.y1) {
      fail(ErrorKind::OutOfWindow,
           "stability samples must sit at least 3h inside the window");
    }
    const auto [p1e, _e] = flux(px + h, py);
    const auto [p1w, _w2] = flux(px - h, py);
    const auto [_n, p2n] = flux(px, py + h);
    const auto [_s, p2s] = flux(px, py - h);
    const FrameData f = frame_data(s, px, py);
    const double lap = ((p1e - p1w) + (p2n - p2s)) / (2 * h * f.omega);
    const double K = shape_data(s, px, py).gauss;
    const double rhs = 2 * K * f.nu + 4 * sq(tau) * f.nu * f.nu * f.nu;
    worst = std::max(worst, std::abs(lap - rhs));
  }
  return worst;
}

// Least-squares slope of log(residual) against log(h): the empirical
// convergence order of a refinement sweep.
inline double fitted_order(
    const std::vector<std::pair<double, double>>& h_residual) {
  if (h_residual.size() < 2) {
    fail(ErrorKind::UsageError, "need at least two refinement levels");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [h, r] : h_residual) {
    const double lx = std::log(h), ly = std::log(std::max(r, 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(h_residual.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct ProofChainRecord {
  double x = 0, y = 0;
  double K = 0, Kt = 0, nu = 0;
  double grad_nu2 = 0;          // |grad nu|^2 (contravariant norm)
  double equality_residual = 0; // K~ = -K/nu^2 - 4 tau^2 + |grad nu|^2/nu^4
  double gradient_link = 0;     // |grad nu|^2/nu^4 - nu^2 |A~ T~|^2
  double cs_slack = 0;          // (4 tau^2 + 2 K~)(1 - nu^2) - |grad nu|^2/nu^4
  double chain_slack = 0;       // -4 tau^2 nu^4 + K~ nu^2 (1-2 nu^2) - K
  double sff_residual = 0;      // tr(A~^2) - 4 tau^2 - 2 K~
  double sff2 = 0;
};

struct ProofChainReport {
  std::size_t samples = 0;
  double max_equality_residual = 0;
  double max_gradient_link = 0;
  double max_sff_residual = 0;
  double min_cs_slack = std::numeric_limits<double>::infinity();
  double min_chain_slack = std::numeric_limits<double>::infinity();
  double sff_min = std::numeric_limits<double>::infinity();
  double sff_max = -std::numeric_limits<double>::infinity();
  std::vector<ProofChainRecord> records;

  bool pass(double tol) const {
    return max_equality_residual <= tol && max_gradient_link <= tol &&
           max_sff_residual <= tol && min_cs_slack >= -tol &&
           min_chain_slack >= -tol;
  }
};

// Evaluates the curvature proof-chain displays pointwise across a dual pair:
// the equality linking K and K~, the gradient link through A~ T~, the
// Cauchy-Schwarz inequality, the final curvature chain, and the
// second-fundamental-form trace identity.
inline ProofChainReport proof_chain_check(
    const DualPair& pair, const std::vector<std::pair<double, double>>& pts,
    bool keep_records = false) {
  detail::require_flat_base(pair.riemannian);
  const double t2 = sq(pair.riemannian.space().bundle);
  ProofChainReport rep;
  for (const auto& [px, py] : pts) {
    if (!pair.riemannian.usable(px, py) || !pair.lorentzian.usable(px, py)) {
      continue;
    }
    ProofChainRecord r;
    r.x = px;
    r.y = py;
    const FrameData f = frame_data(pair.riemannian, px, py);
    r.nu = f.nu;
    r.K = shape_data(pair.riemannian, px, py).gauss;
    const auto [nx, ny] = detail::nu_gradient(pair.riemannian, px, py);
    const double A = f.alpha, B = f.beta, w2 = f.omega * f.omega;
    r.grad_nu2 = ((1 + B * B) * nx * nx - 2 * A * B * nx * ny +
                  (1 + A * A) * ny * ny) / w2;
    const auto ls = detail::lorentz_shape(pair.lorentzian, px, py);
    r.Kt = ls.Kt;
    r.sff2 = ls.sff2;
    const double nu2 = r.nu * r.nu;
    const double gn4 = r.grad_nu2 / (nu2 * nu2);
    r.equality_residual = std::abs(r.Kt + r.K / nu2 + 4 * t2 - gn4);
    r.gradient_link = std::abs(gn4 - nu2 * ls.ATt2);
    r.cs_slack = (4 * t2 + 2 * r.Kt) * (1 - nu2) - gn4;
    r.chain_slack = -4 * t2 * nu2 * nu2 + r.Kt * nu2 * (1 - 2 * nu2) - r.K;
    r.sff_residual = std::abs(ls.sff2 - 4 * t2 - 2 * ls.Kt);
    ++rep.samples;
    rep.max_equality_residual =
        std::max(rep.max_equality_residual, r.equality_residual);
    rep.max_gradient_link = std::max(rep.max_gradient_link, r.gradient_link);
    rep.max_sff_residual = std::max(rep.max_sff_residual, r.sff_residual);
    rep.min_cs_slack = std::min(rep.min_cs_slack, r.cs_slack);
    rep.min_chain_slack = std::min(rep.min_chain_slack, r.chain_slack);
    rep.sff_min = std::min(rep.sff_min, ls.sff2);
    rep.sff_max = std::max(rep.sff_max, ls.sff2);
    if (keep_records) rep.records.push_back(r);
  }
  return rep;
}

inline Json proof_chain_json(const ProofChainReport& r, double tol) {
  Json j;
  j["samples"] = r.samples;
  j["max_equality_residual"] = r.max_equality_residual;
  j["max_gradient_link"] = r.max_gradient_link;
  j["max_sff_residual"] = r.max_sff_residual;
  j["min_cs_slack"] = r.min_cs_slack;
  j["min_chain_slack"] = r.min_chain_slack;
  j["sff_min"] = r.sff_min;
  j["sff_max"] = r.sff_max;
  j["tolerance"] = tol;
  j["pass"] = r.pass(tol);
  return j;
}

}  // namespace ektau
