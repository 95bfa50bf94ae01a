#pragma once

// Isometries of L^3: the vertical-Killing subgroup, the two-parameter group
// G generated by hyperbolic and parabolic rotations, the half-plane chart,
// the constructive factorization Iso = Iso_xi . G, and the orbit map that
// acts on dual graphs and re-graphs the image surface.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ektau/core.hpp"
#include "ektau/duality.hpp"
#include "ektau/grid.hpp"
#include "ektau/parallel.hpp"
#include "ektau/surface.hpp"

namespace ektau {

// ---------------------------------------------------------------------------
// LorentzIsometry: affine map p -> linear * p + translation of L^3 with
// metric eta = diag(1, 1, -1).

struct LorentzIsometry {
  Eigen::Matrix3d linear = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  bool in_Iso_xi = true;  // linear fixes (0,0,1); any translation allowed
  bool in_G = true;       // linear = Par(a) * Hyp(theta), zero translation

  static LorentzIsometry identity() { return LorentzIsometry{}; }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return linear * p + translation;
  }

  LorentzIsometry compose(const LorentzIsometry& rhs) const {
    LorentzIsometry out;
    out.linear = linear * rhs.linear;
    out.translation = linear * rhs.translation + translation;
    out.in_Iso_xi = in_Iso_xi && rhs.in_Iso_xi;
    out.in_G = in_G && rhs.in_G;
    return out;
  }

  LorentzIsometry inverse() const {
    LorentzIsometry out;
    // eta-orthogonal: L^-1 = eta L^T eta.
    const Eigen::Matrix3d eta = Eigen::Vector3d(1, 1, -1).asDiagonal();
    out.linear = eta * linear.transpose() * eta;
    out.translation = -(out.linear * translation);
    out.in_Iso_xi = in_Iso_xi;
    out.in_G = in_G;
    return out;
  }

  double eta_residual() const {
    const Eigen::Matrix3d eta = Eigen::Vector3d(1, 1, -1).asDiagonal();
    return (linear.transpose() * eta * linear - eta).cwiseAbs().maxCoeff();
  }
  bool is_eta_orthogonal(double tol = 1e-12) const {
    return eta_residual() <= tol;
  }
  bool time_orientation_preserving() const { return linear(2, 2) > 0; }
};

inline void require_isometry(const LorentzIsometry& s, double tol = 1e-12) {
  if (!s.is_eta_orthogonal(tol)) {
    fail(ErrorKind::DomainViolation,
         "linear part is not orthogonal for the (+,+,-) inner product");
  }
  if (!s.time_orientation_preserving()) {
    fail(ErrorKind::NotTimeOrientationPreserving,
         "isometry reverses the time orientation");
  }
}

// ---------------------------------------------------------------------------
// Generators.

enum class GeneratorKind { Hyperbolic, Parabolic, ZRotation, Translation };

inline Eigen::Matrix3d hyperbolic_matrix(double theta) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(1, 1) = std::cosh(theta);
  m(1, 2) = std::sinh(theta);
  m(2, 1) = std::sinh(theta);
  m(2, 2) = std::cosh(theta);
  return m;
}

inline Eigen::Matrix3d parabolic_matrix(double a) {
  Eigen::Matrix3d m;
  m << 1, -a, a,                          //
      a, 1 - a * a / 2, a * a / 2,        //
      a, -a * a / 2, 1 + a * a / 2;
  return m;
}

inline Eigen::Matrix3d z_rotation_matrix(double phi) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 0) = std::cos(phi);
  m(0, 1) = -std::sin(phi);
  m(1, 0) = std::sin(phi);
  m(1, 1) = std::cos(phi);
  return m;
}

inline LorentzIsometry make_generator(GeneratorKind kind, double param) {
  LorentzIsometry s;
  switch (kind) {
    case GeneratorKind::Hyperbolic:
      s.linear = hyperbolic_matrix(param);
      s.in_G = true;
      s.in_Iso_xi = (param == 0);
      break;
    case GeneratorKind::Parabolic:
      s.linear = parabolic_matrix(param);
      s.in_G = true;
      s.in_Iso_xi = (param == 0);
      break;
    case GeneratorKind::ZRotation:
      s.linear = z_rotation_matrix(param);
      s.in_Iso_xi = true;
      s.in_G = (param == 0);
      break;
    case GeneratorKind::Translation:
      s.translation = Eigen::Vector3d(0, 0, param);
      s.in_Iso_xi = true;
      s.in_G = (param == 0);
      break;
  }
  return s;
}

// General translation (all translations commute with the vertical Killing
// field, hence live in Iso_xi).
inline LorentzIsometry translation_isometry(const Eigen::Vector3d& t) {
  LorentzIsometry s;
  s.translation = t;
  s.in_Iso_xi = true;
  s.in_G = (t.norm() == 0);
  return s;
}

// Element Par(a) * Hyp(theta) of G.
inline LorentzIsometry group_G_element(double a, double theta) {
  LorentzIsometry s;
  s.linear = parabolic_matrix(a) * hyperbolic_matrix(theta);
  s.in_Iso_xi = (a == 0 && theta == 0);
  s.in_G = true;
  return s;
}

// ---------------------------------------------------------------------------
// Half-plane chart on the upper unit hyperboloid z = sqrt(1 + x^2 + y^2).

struct HalfPlanePoint {
  double x = 0;
  double y = 1;
};

inline HalfPlanePoint half_plane_chart(const Eigen::Vector3d& p) {
  const double zexp = std::sqrt(1 + p[0] * p[0] + p[1] * p[1]);
  if (std::abs(p[2] - zexp) > 1e-10) {
    fail(ErrorKind::DomainViolation,
         "point is not on the upper unit hyperboloid");
  }
  const double den = p[0] * p[0] + sq(1 - p[1] + p[2]);
  return HalfPlanePoint{2 * p[0] * (1 + p[2]) / den,
                        (sq(1 + p[2]) - p[0] * p[0] - p[1] * p[1]) / den};
}

// ---------------------------------------------------------------------------
// Factorization S = S1 . S2 with S1 in Iso_xi and S2 = Par(a) Hyp(theta) in G.
//
// The linear part acts on the ideal boundary of the hyperboloid; the
// lightlike direction (0,1,1) marks the point at infinity of the half-plane
// chart, and G is exactly the stabilizer acting simply transitively on the
// half-plane.  Reading the image of (0,1,1) gives the z-rotation angle and
// theta; undoing the rotation and pushing the chart origin through what is
// left gives a.

struct GFactorization {
  LorentzIsometry s1;  // in Iso_xi (z-rotation plus the full translation)
  LorentzIsometry s2;  // in G, zero translation
  double phi = 0;      // s1 linear part is the z-rotation by phi
  double a = 0;        // s2 = Par(a) * Hyp(theta)
  double theta = 0;
};

inline GFactorization factorize_G(const LorentzIsometry& s) {
  require_isometry(s);
  if (s.linear.determinant() < 0) {
    fail(ErrorKind::DomainViolation,
         "orientation-reversing isometries are not supported");
  }
  GFactorization out;
  const Eigen::Vector3d w = s.linear * Eigen::Vector3d(0, 1, 1);
  out.phi = std::atan2(-w[0], w[1]);
  out.theta = std::log(w[2]);
  const Eigen::Matrix3d m = z_rotation_matrix(-out.phi) * s.linear;
  out.a = half_plane_chart(m * Eigen::Vector3d(0, 0, 1)).x;

  out.s2 = group_G_element(out.a, out.theta);
  out.s1.linear = s.linear * out.s2.inverse().linear;
  out.s1.translation = s.translation;
  out.s1.in_Iso_xi = true;
  out.s1.in_G = (std::abs(out.phi) == 0 && s.translation.norm() == 0 &&
                 out.a == 0 && out.theta == 0);
  return out;
}

// ---------------------------------------------------------------------------
// act_and_regraph: push a spacelike graph in L^3 through an isometry and
// re-graph the image over a target window.  Marches outward from the window
// center in square rings; each node's planar inversion is solved by damped
// Newton iteration seeded from its solved inner neighbor.

struct RegraphResult {
  GraphSurface graph;
  double shrink_factor = 1.0;   // cropped half-extent / requested half-extent
  double max_residual = 0.0;    // worst accepted Newton residual
  int max_iterations = 0;       // worst accepted Newton iteration count
};

namespace detail {

struct RegraphNode {
  double s = 0, t = 0;   // preimage coordinates in the source chart
  double value = 0;      // new height
  double residual = 0;
  int iterations = 0;
  bool solved = false;
};

// One damped Newton solve of proj(S(s, t, v(s,t))) = (X, Y).
inline bool regraph_newton(const GraphSurface& src, const LorentzIsometry& iso,
                           double X, double Y, RegraphNode& node,
                           int max_iter) {
  const Eigen::Matrix3d& L = iso.linear;
  const Eigen::Vector3d& b = iso.translation;
  const Window uw = src.grid_backed()
                        ? src.window().shrunk(2 * src.step())
                        : src.window();
  auto clamp_to = [&uw](double& s, double& t) {
    s = std::min(std::max(s, uw.x0), uw.x1);
    t = std::min(std::max(t, uw.y0), uw.y1);
  };
  double s = node.s, t = node.t;
  clamp_to(s, t);
  const double tol = 1e-12 * (1 + std::abs(X) + std::abs(Y));

  auto residual_at = [&](double ps, double pt, double& f1, double& f2,
                         SurfaceJet& j) {
    j = src.jet_at(ps, pt);
    f1 = L(0, 0) * ps + L(0, 1) * pt + L(0, 2) * j.u + b[0] - X;
    f2 = L(1, 0) * ps + L(1, 1) * pt + L(1, 2) * j.u + b[1] - Y;
  };

  double f1, f2;
  SurfaceJet j;
  residual_at(s, t, f1, f2, j);
  double fnorm = std::hypot(f1, f2);
  for (int it = 0; it < max_iter; ++it) {
    if (fnorm <= tol) {
      node.s = s;
      node.t = t;
      node.value = L(2, 0) * s + L(2, 1) * t + L(2, 2) * j.u + b[2];
      node.residual = fnorm;
      node.iterations = it;
      node.solved = true;
      return true;
    }
    const double j11 = L(0, 0) + L(0, 2) * j.ux;
    const double j12 = L(0, 1) + L(0, 2) * j.uy;
    const double j21 = L(1, 0) + L(1, 2) * j.ux;
    const double j22 = L(1, 1) + L(1, 2) * j.uy;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0 || !std::isfinite(det)) return false;
    const double ds = -(j22 * f1 - j12 * f2) / det;
    const double dt = -(-j21 * f1 + j11 * f2) / det;

    double damp = 1.0;
    bool advanced = false;
    for (int cut = 0; cut < 12; ++cut) {
      double ns = s + damp * ds, nt = t + damp * dt;
      clamp_to(ns, nt);
      double nf1, nf2;
      SurfaceJet nj;
      residual_at(ns, nt, nf1, nf2, nj);
      const double nnorm = std::hypot(nf1, nf2);
      if (nnorm < fnorm || nnorm <= tol) {
        s = ns;
        t = nt;
        f1 = nf1;
        f2 = nf2;
        j = nj;
        fnorm = nnorm;
        advanced = true;
        break;
      }
      damp *= 0.5;
    }
    if (!advanced) return false;
  }
  if (fnorm <= tol) {
    node.s = s;
    node.t = t;
    node.value = L(2, 0) * s + L(2, 1) * t + L(2, 2) * j.u + b[2];
    node.residual = fnorm;
    node.iterations = max_iter;
    node.solved = true;
    return true;
  }
  return false;
}

}  // namespace detail

inline RegraphResult act_and_regraph(const LorentzIsometry& iso,
                                     const GraphSurface& src,
                                     const Window& target,
                                     int max_iter = 50) {
  require_isometry(iso);
  if (iso.linear.determinant() < 0) {
    fail(ErrorKind::DomainViolation,
         "orientation-reversing isometries are not supported");
  }
  if (src.space().side != Side::Lorentzian || src.space().kappa != 0 ||
      src.space().bundle != 0) {
    fail(ErrorKind::DomainViolation,
         "re-graphing acts on spacelike graphs in flat L^3");
  }
  const double h = src.step();
  const int nx = static_cast<int>(std::lround(target.width() / h)) + 1;
  const int ny = static_cast<int>(std::lround(target.height() / h)) + 1;
  if (nx < 5 || ny < 5) {
    fail(ErrorKind::DomainViolation, "target window too small for the step");
  }
  GridData out_full = GridData::from_step(
      target, h, std::vector<double>(static_cast<size_t>(nx) * ny, 0.0));

  const double cx = 0.5 * (target.x0 + target.x1);
  const double cy = 0.5 * (target.y0 + target.y1);
  const int icx = static_cast<int>(std::lround((cx - target.x0) / h));
  const int icy = static_cast<int>(std::lround((cy - target.y0) / h));

  std::vector<detail::RegraphNode> nodes(static_cast<size_t>(nx) * ny);
  auto at = [&](int i, int j) -> detail::RegraphNode& {
    return nodes[static_cast<size_t>(j) * nx + i];
  };

  // Seed the center node with a coarse scan of the source chart.
  const Window uw =
      src.grid_backed() ? src.window().shrunk(2 * h) : src.window();
  {
    const double Xc = out_full.node_x(icx), Yc = out_full.node_y(icy);
    double best = std::numeric_limits<double>::infinity();
    double bs = 0.5 * (uw.x0 + uw.x1), bt = 0.5 * (uw.y0 + uw.y1);
    const int scan = 48;
    for (int a = 0; a <= scan; ++a) {
      for (int b2 = 0; b2 <= scan; ++b2) {
        const double ss = uw.x0 + (uw.x1 - uw.x0) * a / scan;
        const double tt = uw.y0 + (uw.y1 - uw.y0) * b2 / scan;
        const SurfaceJet jj = src.jet_at(ss, tt);
        const Eigen::Vector3d img = iso.apply(Eigen::Vector3d(ss, tt, jj.u));
        const double d = sq(img[0] - Xc) + sq(img[1] - Yc);
        if (d < best) {
          best = d;
          bs = ss;
          bt = tt;
        }
      }
    }
    detail::RegraphNode& c = at(icx, icy);
    c.s = bs;
    c.t = bt;
    bool ok = false;
    try {
      ok = detail::regraph_newton(src, iso, Xc, Yc, c, max_iter);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) {
      fail(ErrorKind::RegraphDivergence,
           "could not re-graph the window center; the target window does not "
           "meet the image of the source chart");
    }
  }

  // March outward ring by ring; nodes in a ring are independent.
  const int kmax = std::max(std::max(icx, nx - 1 - icx),
                            std::max(icy, ny - 1 - icy));
  int solved_rings = 0;
  for (int k = 1; k <= kmax; ++k) {
    std::vector<std::pair<int, int>> ring;
    for (int j = icy - k; j <= icy + k; ++j) {
      if (j < 0 || j >= ny) continue;
      for (int i = icx - k; i <= icx + k; ++i) {
        if (i < 0 || i >= nx) continue;
        if (std::max(std::abs(i - icx), std::abs(j - icy)) != k) continue;
        ring.emplace_back(i, j);
      }
    }
    if (ring.empty()) break;
    std::vector<uint8_t> ok(ring.size(), 0);
    parallel_for(0, ring.size(), [&](size_t idx) {
      const auto [i, j] = ring[idx];
      const int si = std::min(std::max(i, icx - (k - 1)), icx + (k - 1));
      const int sj = std::min(std::max(j, icy - (k - 1)), icy + (k - 1));
      detail::RegraphNode& n = at(i, j);
      const detail::RegraphNode& seed = at(si, sj);
      n.s = seed.s;
      n.t = seed.t;
      try {
        ok[idx] = detail::regraph_newton(src, iso, out_full.node_x(i),
                                         out_full.node_y(j), n, max_iter)
                      ? 1
                      : 0;
      } catch (const Error&) {
        ok[idx] = 0;
      }
    });
    bool all_ok = true;
    for (uint8_t o : ok) all_ok = all_ok && (o != 0);
    if (!all_ok) break;
    solved_rings = k;
  }

  if (solved_rings < 4) {
    fail(ErrorKind::RegraphDivergence,
         "re-graphed region too small; the target window is too large "
         "relative to the source data");
  }

  // Crop to the solved rectangle of rings <= solved_rings.
  const int i0 = std::max(0, icx - solved_rings);
  const int i1 = std::min(nx - 1, icx + solved_rings);
  const int j0 = std::max(0, icy - solved_rings);
  const int j1 = std::min(ny - 1, icy + solved_rings);
  const Window cropped{out_full.node_x(i0), out_full.node_x(i1),
                       out_full.node_y(j0), out_full.node_y(j1)};
  RegraphResult result;
  {
    std::vector<double> vals(static_cast<size_t>(i1 - i0 + 1) *
                             (j1 - j0 + 1));
    double worst_res = 0;
    int worst_it = 0;
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        const detail::RegraphNode& n = at(i, j);
        vals[static_cast<size_t>(j - j0) * (i1 - i0 + 1) + (i - i0)] = n.value;
        worst_res = std::max(worst_res, n.residual);
        worst_it = std::max(worst_it, n.iterations);
      }
    }
    result.max_residual = worst_res;
    result.max_iterations = worst_it;
    GraphSurface g(src.space(), src.cmc(),
                   GridData(cropped, i1 - i0 + 1, j1 - j0 + 1,
                            std::move(vals)));
    g.set_spacelike_margin(src.spacelike_margin());
    result.graph = std::move(g);
  }
  const double half_req =
      0.5 * std::max(target.width(), target.height());
  const double half_got =
      0.5 * std::max(cropped.width(), cropped.height());
  result.shrink_factor = std::min(1.0, half_got / half_req);

  // Spacelike scan over the usable nodes of the new grid.
  {
    const GraphSurface& g = result.graph;
    const GridData& gd = g.grid();
    std::vector<std::pair<int, int>> pts;
    for (int j = 2; j < gd.ny() - 2; ++j) {
      for (int i = 2; i < gd.nx() - 2; ++i) pts.emplace_back(i, j);
    }
    parallel_for(0, pts.size(), [&](size_t idx) {
      const auto [i, j] = pts[idx];
      const double x = gd.node_x(i), y = gd.node_y(j);
      const SurfaceJet jj = g.jet_at(x, y);
      detail::first_order(g, x, y, jj);  // throws on a spacelike violation
    });
  }
  return result;
}

// ---------------------------------------------------------------------------
// orbit_member: dualize a minimal graph, act by an element of G on the dual,
// re-graph, and dualize back.  The (basepoint, normalization) pair pins the
// intermediate dual graph (G does not commute with vertical translations, so
// the choice of dual representative matters); the returned graph is anchored
// at the same basepoint with the original height there.

struct OrbitResult {
  GraphSurface graph;           // new minimal/CMC graph on the start side
  DualPair forward;             // the pinned dual used as orbit representative
  RegraphResult regraph;        // transformed dual graph and diagnostics
  double loop_residual_back = 0;
};

inline OrbitResult orbit_member(const GraphSurface& surface,
                                const LorentzIsometry& s, double base_x,
                                double base_y, double normalization) {
  if (!s.in_G) {
    fail(ErrorKind::DomainViolation, "orbit map requires an element of G");
  }
  if (surface.space().kappa != 0) {
    fail(ErrorKind::DomainViolation, "orbit map requires a flat base");
  }
  OrbitResult out;
  out.forward = dualize(surface, base_x, base_y, normalization);
  const GraphSurface& dual = surface.space().side == Side::Riemannian
                                 ? out.forward.lorentzian
                                 : out.forward.riemannian;
  out.regraph = act_and_regraph(s, dual, dual.window());

  double bx = base_x, by = base_y;
  const Window& rw = out.regraph.graph.window();
  const double margin = 2 * out.regraph.graph.step();
  if (!rw.shrunk(margin).contains(bx, by)) {
    bx = 0.5 * (rw.x0 + rw.x1);
    by = 0.5 * (rw.y0 + rw.y1);
  }
  const double back_norm = surface.usable(bx, by)
                               ? surface.jet_at(bx, by).u
                               : normalization;
  DualPair back = dualize(out.regraph.graph, bx, by, back_norm);
  out.loop_residual_back = back.loop_residual;
  out.graph = surface.space().side == Side::Riemannian ? back.riemannian
                                                       : back.lorentzian;
  return out;
}

// ---------------------------------------------------------------------------
// Equivariance of the duality with respect to planar motions (flat base).

struct PlanarMotion {
  enum class Kind { Rotation, Translation };
  Kind kind = Kind::Rotation;
  double angle = 0;          // rotation about the origin
  double dx = 0, dy = 0;     // translation

  static PlanarMotion rotation(double angle) {
    PlanarMotion m;
    m.kind = Kind::Rotation;
    m.angle = angle;
    return m;
  }
  static PlanarMotion translation(double dx, double dy) {
    PlanarMotion m;
    m.kind = Kind::Translation;
    m.dx = dx;
    m.dy = dy;
    return m;
  }

  std::pair<double, double> apply(double x, double y) const {
    if (kind == Kind::Rotation) {
      const double c = std::cos(angle), s = std::sin(angle);
      return {c * x - s * y, s * x + c * y};
    }
    return {x + dx, y + dy};
  }
  std::pair<double, double> apply_inverse(double x, double y) const {
    if (kind == Kind::Rotation) {
      const double c = std::cos(angle), s = std::sin(angle);
      return {c * x + s * y, -s * x + c * y};
    }
    return {x - dx, y - dy};
  }
};

// Lift of a planar motion to the Riemannian total space over a flat base:
// rotations lift verbatim; the translation by (a, b) needs the vertical
// correction tau (a Y - b X) to remain an isometry.
inline GraphSurface lift_planar_motion(const GraphSurface& s,
                                       const PlanarMotion& m,
                                       const Window& window) {
  if (s.space().kappa != 0) {
    fail(ErrorKind::DomainViolation, "planar-motion lifts require kappa = 0");
  }
  const double tau = s.space().bundle;
  GraphSurface src = s;  // copy shares the grid snapshot
  if (m.kind == PlanarMotion::Kind::Rotation) {
    const double c = std::cos(m.angle), sn = std::sin(m.angle);
    auto jets = [src, c, sn](double X, double Y) {
      const double px = c * X + sn * Y, py = -sn * X + c * Y;
      const SurfaceJet j = src.jet_at(px, py);
      SurfaceJet out;
      out.u = j.u;
      out.ux = c * j.ux - sn * j.uy;
      out.uy = sn * j.ux + c * j.uy;
      // Hessian transforms as R H R^T.
      const double hxx = j.uxx, hxy = j.uxy, hyy = j.uyy;
      out.uxx = c * (c * hxx - sn * hxy) - sn * (c * hxy - sn * hyy);
      out.uxy = c * (c * hxy - sn * hyy) + sn * (c * hxx - sn * hxy);
      out.uyy = sn * (sn * hxx + c * hxy) + c * (sn * hxy + c * hyy);
      return out;
    };
    GraphSurface g(s.space(), s.cmc(), window, jets, s.step());
    g.set_spacelike_margin(s.spacelike_margin());
    return g;
  }
  const double a = m.dx, b = m.dy;
  auto jets = [src, a, b, tau](double X, double Y) {
    SurfaceJet j = src.jet_at(X - a, Y - b);
    j.u += tau * (a * Y - b * X);
    j.ux -= tau * b;
    j.uy += tau * a;
    return j;
  };
  GraphSurface g(s.space(), s.cmc(), window, jets, s.step());
  g.set_spacelike_margin(s.spacelike_margin());
  return g;
}

struct EquivarianceReport {
  double max_residual = 0;  // after removing the vertical offset
  double offset = 0;        // the removed vertical translation
  int samples = 0;
  int skipped = 0;
};

// Checks that dualizing the lifted motion of a minimal graph agrees with the
// induced vertical-Killing isometry of L^3 applied to the dual graph, up to
// a vertical translation.  Flat base, minimal source.
inline EquivarianceReport equivariance_check(const GraphSurface& s,
                                             const PlanarMotion& m,
                                             int n = 41) {
  if (s.space().side != Side::Riemannian || s.space().kappa != 0) {
    fail(ErrorKind::DomainViolation,
         "equivariance check expects a graph over the flat Riemannian base");
  }
  const double h = s.step();
  const Window uw =
      s.grid_backed() ? s.window().shrunk(2 * h) : s.window();
  const double half_u =
      std::min(std::min(-uw.x0, uw.x1), std::min(-uw.y0, uw.y1));
  double half_c;
  if (m.kind == PlanarMotion::Kind::Rotation) {
    half_c = half_u / std::sqrt(2.0);
  } else {
    half_c = half_u - std::max(std::abs(m.dx), std::abs(m.dy));
  }
  if (half_c < 8 * h) {
    fail(ErrorKind::DomainViolation,
         "window too small for the requested motion");
  }
  const Window wc = Window::square(half_c);

  const DualPair base = dualize(s, 0.0, 0.0, 0.0);
  const GraphSurface lifted = lift_planar_motion(s, m, wc);
  const DualPair moved = dualize(lifted, 0.0, 0.0, 0.0);

  // Sample the two Lorentzian graphs on the checking window.
  EquivarianceReport rep;
  const Window ws = wc.shrunk(3 * h);
  std::vector<double> deltas;
  deltas.reserve(static_cast<size_t>(n) * n);
  for (int jy = 0; jy < n; ++jy) {
    for (int ix = 0; ix < n; ++ix) {
      const double X = ws.x0 + (ws.x1 - ws.x0) * ix / (n - 1);
      const double Y = ws.y0 + (ws.y1 - ws.y0) * jy / (n - 1);
      const auto [px, py] = m.apply_inverse(X, Y);
      if (!moved.lorentzian.usable(X, Y) ||
          !base.lorentzian.usable(px, py)) {
        ++rep.skipped;
        continue;
      }
      const double v1 = moved.lorentzian.jet_at(X, Y).u;
      const double v2 = base.lorentzian.jet_at(px, py).u;
      deltas.push_back(v1 - v2);
    }
  }
  rep.samples = static_cast<int>(deltas.size());
  if (deltas.empty()) {
    fail(ErrorKind::DomainViolation, "no usable equivariance samples");
  }
  double mean = 0;
  for (double d : deltas) mean += d;
  mean /= static_cast<double>(deltas.size());
  rep.offset = mean;
  for (double d : deltas) {
    rep.max_residual = std::max(rep.max_residual, std::abs(d - mean));
  }
  return rep;
}

}  // namespace ektau
