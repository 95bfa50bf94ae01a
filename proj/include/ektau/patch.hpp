#pragma once

// Parametrized surface patches over the flat ambients (kappa = 0): first and
// second fundamental forms, angle function, Gauss curvature, and a Newton
// re-grapher that turns a patch into a graph grid.  Patches carry exact
// position/derivative jets of the immersion in coordinates.

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ektau/core.hpp"
#include "ektau/grid.hpp"
#include "ektau/parallel.hpp"
#include "ektau/space.hpp"
#include "ektau/surface.hpp"

namespace ektau {

struct PatchJet {
  Eigen::Vector3d p;    // position
  Eigen::Vector3d ps;   // d/ds
  Eigen::Vector3d pt;   // d/dt
  Eigen::Vector3d pss;
  Eigen::Vector3d pst;
  Eigen::Vector3d ptt;
};

using PatchFn = std::function<PatchJet(double, double)>;

struct ParametrizedPatch {
  SpaceParams space;  // kappa must vanish
  Window window;      // (s,t) chart rectangle
  PatchFn jets;
};

struct PatchData {
  double E = 0, F = 0, G = 0;        // first fundamental form, chart coords
  Eigen::Vector3d tangent_s;         // frame components of d/ds
  Eigen::Vector3d tangent_t;         // frame components of d/dt
  Eigen::Vector3d normal;            // unit normal, frame components,
                                     // parametrization orientation
  double nu = 0;                     // fiber component of the normal
  double s11 = 0, s12 = 0, s22 = 0;  // second fundamental form, chart coords
  double mean = 0;                   // w.r.t. the parametrization normal
  double gauss = 0;                  // intrinsic curvature (orientation-free)
};

namespace detail {

// Frame components of a coordinate vector at ambient point p (kappa = 0).
inline Eigen::Vector3d flat_frame_components(const SpaceParams& space,
                                             const Eigen::Vector3d& p,
                                             const Eigen::Vector3d& v) {
  const double b = space.bundle;
  if (space.side == Side::Riemannian) {
    return Eigen::Vector3d(v[0], v[1], v[2] + b * (p[1] * v[0] - p[0] * v[1]));
  }
  return Eigen::Vector3d(v[0], v[1], v[2] - b * (p[1] * v[0] - p[0] * v[1]));
}

}  // namespace detail

// Pointwise geometry of a patch (kappa = 0 ambients only).
inline PatchData patch_data(const ParametrizedPatch& patch, double s,
                            double t) {
  if (patch.space.kappa != 0) {
    fail(ErrorKind::DomainViolation, "patch geometry requires kappa = 0");
  }
  if (patch.space.side == Side::Lorentzian && patch.space.bundle != 0) {
    fail(ErrorKind::DomainViolation,
         "Lorentzian patch geometry is implemented for the flat ambient");
  }
  if (!patch.window.contains(s, t, 1e-12)) {
    fail(ErrorKind::OutOfWindow, "patch chart point outside the window");
  }
  const PatchJet j = patch.jets(s, t);
  const SpaceParams& sp = patch.space;
  const double sgn = sp.sign();  // +1 Riemannian, -1 Lorentzian
  const Eigen::Vector3d gdiag(1, 1, sgn);

  // Frame components of the tangent vectors.
  const Eigen::Vector3d Vs = detail::flat_frame_components(sp, j.p, j.ps);
  const Eigen::Vector3d Vt = detail::flat_frame_components(sp, j.p, j.pt);

  PatchData out;
  out.tangent_s = Vs;
  out.tangent_t = Vt;
  out.E = Vs.dot(gdiag.asDiagonal() * Vs);
  out.F = Vs.dot(gdiag.asDiagonal() * Vt);
  out.G = Vt.dot(gdiag.asDiagonal() * Vt);
  const double det1 = out.E * out.G - out.F * out.F;
  if (!(det1 > 0)) {
    fail(ErrorKind::SpacelikeViolation,
         "patch tangent plane is not positive definite");
  }

  // Unit normal in frame components with the parametrization orientation.
  Eigen::Vector3d nd = Vs.cross(Vt);
  if (sp.side == Side::Lorentzian) nd = Eigen::Vector3d(nd[0], nd[1], -nd[2]);
  const double nn = nd.dot(gdiag.asDiagonal() * nd);
  if (sp.side == Side::Lorentzian && !(nn < 0)) {
    fail(ErrorKind::SpacelikeViolation, "patch normal is not timelike");
  }
  const Eigen::Vector3d n = nd / std::sqrt(std::abs(nn));
  out.normal = n;
  out.nu = n[2];

  // Connection terms use the constant frame Christoffel table of the flat
  // ambient.
  const double b = sp.bundle;
  auto cov = [&](const Eigen::Vector3d& dW_frame, const Eigen::Vector3d& V,
                 const Eigen::Vector3d& W) {
    Eigen::Vector3d r = dW_frame;
    if (sp.side == Side::Riemannian) {
      // nabla_{E0}E1 = +b E2, nabla_{E0}E2 = -b E1, nabla_{E1}E0 = -b E2,
      // nabla_{E1}E2 = +b E0, nabla_{E2}E0 = -b E1, nabla_{E2}E1 = +b E0.
      r[2] += b * V[0] * W[1] - b * V[1] * W[0];
      r[1] += -b * V[0] * W[2] - b * V[2] * W[0];
      r[0] += b * V[1] * W[2] + b * V[2] * W[1];
    } else {
      // Lorentzian flat table: the fiber-direction products flip sign.
      r[2] += -b * V[0] * W[1] + b * V[1] * W[0];
      r[1] += -b * V[0] * W[2] - b * V[2] * W[0];
      r[0] += b * V[1] * W[2] + b * V[2] * W[1];
    }
    return r;
  };

  // d/ds of frame(ps) has no cross term (it cancels by antisymmetry), but
  // the mixed derivative d/ds of frame(pt) picks one up from the moving base
  // point.
  const Eigen::Vector3d dVs_s = detail::flat_frame_components(sp, j.p, j.pss);
  Eigen::Vector3d dVs_t = detail::flat_frame_components(sp, j.p, j.pst);
  dVs_t[2] += (sp.side == Side::Riemannian ? b : -b) *
              (j.ps[1] * j.pt[0] - j.ps[0] * j.pt[1]);
  const Eigen::Vector3d dVt_t = detail::flat_frame_components(sp, j.p, j.ptt);

  const Eigen::Vector3d c11 = cov(dVs_s, Vs, Vs);
  const Eigen::Vector3d c12 = cov(dVs_t, Vs, Vt);
  const Eigen::Vector3d c22 = cov(dVt_t, Vt, Vt);

  auto inner = [&](const Eigen::Vector3d& a, const Eigen::Vector3d& c) {
    return a.dot(gdiag.asDiagonal() * c);
  };
  out.s11 = inner(c11, n);
  out.s12 = inner(c12, n);
  out.s22 = inner(c22, n);

  out.mean = (out.G * out.s11 - 2 * out.F * out.s12 + out.E * out.s22) /
             (2 * det1);
  const double det2 = out.s11 * out.s22 - out.s12 * out.s12;
  if (sp.side == Side::Riemannian) {
    out.gauss = det2 / det1 + b * b - 4 * b * b * out.nu * out.nu;
  } else {
    out.gauss = -det2 / det1;
  }
  return out;
}

// Newton re-graphing of a patch onto a coordinate grid: for each node (X, Y)
// solve (p0(s,t), p1(s,t)) = (X, Y) marching outward from the window center,
// exactly as act_and_regraph does for transformed graphs.
struct PatchRegraphResult {
  GraphSurface graph;
  double shrink_factor = 1.0;
  double max_residual = 0.0;
};

namespace detail {

inline bool patch_newton(const ParametrizedPatch& patch, double X, double Y,
                         double& s, double& t, double& value, double& res,
                         int max_iter) {
  const Window& w = patch.window;
  auto clamp_to = [&w](double& a, double& b2) {
    a = std::min(std::max(a, w.x0), w.x1);
    b2 = std::min(std::max(b2, w.y0), w.y1);
  };
  clamp_to(s, t);
  const double tol = 1e-12 * (1 + std::abs(X) + std::abs(Y));
  PatchJet j = patch.jets(s, t);
  double f1 = j.p[0] - X, f2 = j.p[1] - Y;
  double fnorm = std::hypot(f1, f2);
  for (int it = 0; it < max_iter; ++it) {
    if (fnorm <= tol) break;
    const double j11 = j.ps[0], j12 = j.pt[0];
    const double j21 = j.ps[1], j22 = j.pt[1];
    const double det = j11 * j22 - j12 * j21;
    if (det == 0 || !std::isfinite(det)) return false;
    const double ds = -(j22 * f1 - j12 * f2) / det;
    const double dt = -(-j21 * f1 + j11 * f2) / det;
    double damp = 1.0;
    bool advanced = false;
    for (int cut = 0; cut < 12; ++cut) {
      double ns = s + damp * ds, nt = t + damp * dt;
      clamp_to(ns, nt);
      const PatchJet nj = patch.jets(ns, nt);
      const double nf1 = nj.p[0] - X, nf2 = nj.p[1] - Y;
      const double nnorm = std::hypot(nf1, nf2);
      if (nnorm < fnorm || nnorm <= tol) {
        s = ns;
        t = nt;
        j = nj;
        f1 = nf1;
        f2 = nf2;
        fnorm = nnorm;
        advanced = true;
        break;
      }
      damp *= 0.5;
    }
    if (!advanced) return false;
  }
  if (fnorm > tol) return false;
  value = j.p[2];
  res = fnorm;
  return true;
}

}  // namespace detail

inline PatchRegraphResult patch_regraph(const ParametrizedPatch& patch,
                                        const SpaceParams& graph_space,
                                        double cmc, const Window& target,
                                        double h, int max_iter = 50) {
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

  struct Node {
    double s = 0, t = 0, value = 0, res = 0;
  };
  std::vector<Node> nodes(static_cast<size_t>(nx) * ny);
  auto at = [&](int i, int j) -> Node& {
    return nodes[static_cast<size_t>(j) * nx + i];
  };

  {  // seed the center with a coarse chart scan
    const double Xc = out_full.node_x(icx), Yc = out_full.node_y(icy);
    double best = std::numeric_limits<double>::infinity();
    Node c;
    const int scan = 64;
    for (int a = 0; a <= scan; ++a) {
      for (int b2 = 0; b2 <= scan; ++b2) {
        const double ss =
            patch.window.x0 + (patch.window.x1 - patch.window.x0) * a / scan;
        const double tt =
            patch.window.y0 + (patch.window.y1 - patch.window.y0) * b2 / scan;
        PatchJet jj;
        try {
          jj = patch.jets(ss, tt);
        } catch (const Error&) {
          continue;
        }
        const double d = sq(jj.p[0] - Xc) + sq(jj.p[1] - Yc);
        if (d < best) {
          best = d;
          c.s = ss;
          c.t = tt;
        }
      }
    }
    bool ok = false;
    try {
      ok = detail::patch_newton(patch, Xc, Yc, c.s, c.t, c.value, c.res,
                                max_iter);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) {
      fail(ErrorKind::RegraphDivergence,
           "could not re-graph the window center from the patch chart");
    }
    at(icx, icy) = c;
  }

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
      Node& n = at(i, j);
      n = at(si, sj);
      try {
        ok[idx] = detail::patch_newton(patch, out_full.node_x(i),
                                       out_full.node_y(j), n.s, n.t, n.value,
                                       n.res, max_iter)
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
         "re-graphed region too small; the patch does not cover the window");
  }

  const int i0 = std::max(0, icx - solved_rings);
  const int i1 = std::min(nx - 1, icx + solved_rings);
  const int j0 = std::max(0, icy - solved_rings);
  const int j1 = std::min(ny - 1, icy + solved_rings);
  const Window cropped{out_full.node_x(i0), out_full.node_x(i1),
                       out_full.node_y(j0), out_full.node_y(j1)};
  std::vector<double> vals(static_cast<size_t>(i1 - i0 + 1) * (j1 - j0 + 1));
  double worst = 0;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const Node& n = at(i, j);
      vals[static_cast<size_t>(j - j0) * (i1 - i0 + 1) + (i - i0)] = n.value;
      worst = std::max(worst, n.res);
    }
  }
  PatchRegraphResult result;
  result.max_residual = worst;
  result.graph = GraphSurface(
      graph_space, cmc,
      GridData(cropped, i1 - i0 + 1, j1 - j0 + 1, std::move(vals)));
  const double half_req = 0.5 * std::max(target.width(), target.height());
  const double half_got = 0.5 * std::max(cropped.width(), cropped.height());
  result.shrink_factor = std::min(1.0, half_got / half_req);
  return result;
}

}  // namespace ektau
