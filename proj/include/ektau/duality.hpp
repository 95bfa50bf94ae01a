// Conformal duality between CMC-H graphs in E(kappa,tau) and spacelike
// CMC-tau graphs in L(kappa,H), implemented constructively: the dual graph
// is recovered by path integration of the coupled first-order system
// ("twin relations") relating the two gradients:
//   alpha~ = -beta/omega,   beta~ = alpha/omega,
//   v_x = lambda (alpha~ + H y),   v_y = lambda (beta~ - H x),
// and inversely
//   alpha = beta~/omega~,   beta = -alpha~/omega~,
//   u_x = lambda (alpha - tau y),  u_y = lambda (beta + tau x).
// The mixed-partial defect of (v_x, v_y) equals minus the CMC defect of the
// source, so integrability certifies the CMC equation.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ektau/core.hpp"
#include "ektau/parallel.hpp"
#include "ektau/surface.hpp"

namespace ektau {

// Gradient (g_x, g_y) of the would-be dual graph at (x, y).
inline std::pair<double, double> dual_gradient(const GraphSurface& s, double x,
                                               double y) {
  const SurfaceJet j = s.jet_at(x, y);
  const auto d = detail::first_order(s, x, y, j);  // spacelike check inside
  const double partner_bundle = s.cmc();
  if (s.space().side == Side::Riemannian) {
    const double at = -d.beta / d.omega;
    const double bt = d.alpha / d.omega;
    return {d.lam * (at + partner_bundle * y),
            d.lam * (bt - partner_bundle * x)};
  }
  const double a = d.beta / d.omega;
  const double b = -d.alpha / d.omega;
  return {d.lam * (a - partner_bundle * y), d.lam * (b + partner_bundle * x)};
}

struct DualPair {
  GraphSurface riemannian;
  GraphSurface lorentzian;
  double base_x = 0, base_y = 0;
  double normalization = 0;
  double loop_residual = 0;  // max discrete mixed-partial defect observed
};

namespace detail {

// Cumulative integral of uniformly sampled f with node values I[0] = 0,
// I[n] = integral from node 0 to node n.  Every interval integrates the
// degree-4 interpolant of the 5 nearest nodes (one-sided at the ends).
// Using the same rule on every interior interval keeps the accumulated
// quadrature error a smooth function of position: mixing rules by node
// parity leaves an O(h^5) sawtooth that downstream finite differencing of
// the result would amplify by 1/h.
inline std::vector<double> cumulative_integral(const std::vector<double>& f,
                                               double h) {
  const int n = static_cast<int>(f.size());
  std::vector<double> I(n, 0.0);
  if (n < 5) fail(ErrorKind::DomainViolation, "need at least 5 samples");
  // W[m][j]: integral over [m, m+1] of the j-th Lagrange basis polynomial
  // on nodes {0,1,2,3,4} (unit spacing).
  static constexpr double W[4][5] = {
      {251.0 / 720, 323.0 / 360, -11.0 / 30, 53.0 / 360, -19.0 / 720},
      {-19.0 / 720, 173.0 / 360, 19.0 / 30, -37.0 / 360, 11.0 / 720},
      {11.0 / 720, -37.0 / 360, 19.0 / 30, 173.0 / 360, -19.0 / 720},
      {-19.0 / 720, 53.0 / 360, -11.0 / 30, 323.0 / 360, 251.0 / 720}};
  for (int k = 0; k + 1 < n; ++k) {
    const int base = std::clamp(k - 2, 0, n - 5);
    const int m = k - base;
    double inc = 0.0;
    for (int j = 0; j < 5; ++j) inc += W[m][j] * f[base + j];
    I[k + 1] = I[k] + h * inc;
  }
  return I;
}

}  // namespace detail

// Constructs the dual graph on the source window (shrunk by the stencil
// margin for grid-backed sources) by integrating dual_gradient along the
// basepoint row, then along every column.  The basepoint snaps to the
// nearest usable grid node.  `integrability_tol` bounds the allowed
// mixed-partial defect of the dual gradient field.
inline DualPair dualize(const GraphSurface& s, double base_x, double base_y,
                        double normalization,
                        double integrability_tol = 1e-3,
                        bool y_first_spine = false) {
  const double h = s.step();
  Window w = s.window();
  if (s.grid_backed()) w = w.shrunk(2 * h);
  const int nx = static_cast<int>(std::lround(w.width() / h)) + 1;
  const int ny = static_cast<int>(std::lround(w.height() / h)) + 1;
  if (nx < 6 || ny < 6) {
    fail(ErrorKind::DomainViolation, "window too small for dualization");
  }

  // Dual gradient field at the nodes.
  std::vector<double> gx(static_cast<size_t>(nx) * ny),
      gy(static_cast<size_t>(nx) * ny);
  parallel_for(0, ny, [&](int jrow) {
    const double yv = w.y0 + jrow * h;
    for (int i = 0; i < nx; ++i) {
      const auto g = dual_gradient(s, w.x0 + i * h, yv);
      gx[static_cast<size_t>(jrow) * nx + i] = g.first;
      gy[static_cast<size_t>(jrow) * nx + i] = g.second;
    }
  });
  auto GX = [&](int i, int jr) -> double {
    return gx[static_cast<size_t>(jr) * nx + i];
  };
  auto GY = [&](int i, int jr) -> double {
    return gy[static_cast<size_t>(jr) * nx + i];
  };

  // Integrability: fourth-order centered mixed partials on interior nodes.
  double loop = 0.0;
  for (int jr = 2; jr < ny - 2; ++jr) {
    for (int i = 2; i < nx - 2; ++i) {
      const double dgx_dy = (-GX(i, jr + 2) + 8 * GX(i, jr + 1) -
                             8 * GX(i, jr - 1) + GX(i, jr - 2)) /
                            (12 * h);
      const double dgy_dx = (-GY(i + 2, jr) + 8 * GY(i + 1, jr) -
                             8 * GY(i - 1, jr) + GY(i - 2, jr)) /
                            (12 * h);
      loop = std::max(loop, std::abs(dgx_dy - dgy_dx));
    }
  }
  if (loop > integrability_tol) {
    fail(ErrorKind::IntegrabilityFailure,
         "dual gradient is not closed: loop residual " + std::to_string(loop) +
             " exceeds " + std::to_string(integrability_tol) +
             " (source violates its CMC equation)");
  }

  const int i0 = std::clamp(
      static_cast<int>(std::lround((base_x - w.x0) / h)), 0, nx - 1);
  const int j0 = std::clamp(
      static_cast<int>(std::lround((base_y - w.y0) / h)), 0, ny - 1);

  std::vector<double> v(static_cast<size_t>(nx) * ny, 0.0);
  if (!y_first_spine) {
    // Spine along the basepoint row, then columns.
    std::vector<double> row(nx);
    for (int i = 0; i < nx; ++i) row[i] = GX(i, j0);
    const auto spine = detail::cumulative_integral(row, h);
    parallel_for(0, nx, [&](int i) {
      std::vector<double> col(ny);
      for (int jr = 0; jr < ny; ++jr) col[jr] = GY(i, jr);
      const auto C = detail::cumulative_integral(col, h);
      const double v_spine = normalization + spine[i] - spine[i0];
      for (int jr = 0; jr < ny; ++jr) {
        v[static_cast<size_t>(jr) * nx + i] = v_spine + C[jr] - C[j0];
      }
    });
  } else {
    // Spine along the basepoint column, then rows.
    std::vector<double> col(ny);
    for (int jr = 0; jr < ny; ++jr) col[jr] = GY(i0, jr);
    const auto spine = detail::cumulative_integral(col, h);
    parallel_for(0, ny, [&](int jr) {
      std::vector<double> row(nx);
      for (int i = 0; i < nx; ++i) row[i] = GX(i, jr);
      const auto R = detail::cumulative_integral(row, h);
      const double v_spine = normalization + spine[jr] - spine[j0];
      for (int i = 0; i < nx; ++i) {
        v[static_cast<size_t>(jr) * nx + i] = v_spine + R[i] - R[i0];
      }
    });
  }

  GraphSurface dual(s.partner_space(), s.space().bundle,
                    GridData(w, nx, ny, std::move(v)));
  dual.set_spacelike_margin(s.spacelike_margin());

  DualPair pair;
  pair.base_x = w.x0 + i0 * h;
  pair.base_y = w.y0 + j0 * h;
  pair.normalization = normalization;
  pair.loop_residual = loop;
  if (s.space().side == Side::Riemannian) {
    pair.riemannian = s;
    pair.lorentzian = dual;
  } else {
    pair.riemannian = dual;
    pair.lorentzian = s;
  }
  return pair;
}

struct VerifyReport {
  double max_twin = 0;        // twin-relation residual
  double max_omega = 0;       // |omega * omega~ - 1|
  double max_conformal = 0;   // |I - omega^2 I~| entrywise
  double max_cmc_riem = 0;    // CMC defect, Riemannian side
  double max_cmc_lor = 0;     // CMC defect, Lorentzian side
  int evaluated = 0;
  int skipped = 0;  // samples outside a usable region
  double worst_x = 0, worst_y = 0;

  double max_all() const {
    return std::max({max_twin, max_omega, max_conformal, max_cmc_riem,
                     max_cmc_lor});
  }
};

inline VerifyReport verify_pair(const DualPair& pair,
                                const std::vector<std::pair<double, double>>&
                                    samples) {
  VerifyReport rep;
  const GraphSurface& R = pair.riemannian;
  const GraphSurface& L = pair.lorentzian;
  const double Hval = L.space().bundle;
  for (const auto& [x, y] : samples) {
    if (!R.usable(x, y) || !L.usable(x, y)) {
      ++rep.skipped;
      continue;
    }
    const SurfaceJet ju = R.jet_at(x, y);
    const SurfaceJet jv = L.jet_at(x, y);
    const auto du = detail::first_order(R, x, y, ju);
    const auto dv = detail::first_order(L, x, y, jv);
    const double lam = du.lam;
    // Twin relations predicted from the Riemannian side.
    const double pvx = lam * (-du.beta / du.omega + Hval * y);
    const double pvy = lam * (du.alpha / du.omega - Hval * x);
    const double twin =
        std::max(std::abs(jv.ux - pvx), std::abs(jv.uy - pvy));
    const double om = std::abs(du.omega * dv.omega - 1.0);
    // Conformality of the correspondence: I = omega^2 I~ entrywise.
    const double w2 = du.omega2;
    double conf = std::abs((1 + du.alpha * du.alpha) -
                           w2 * (1 - dv.alpha * dv.alpha));
    conf = std::max(conf, std::abs(du.alpha * du.beta -
                                   w2 * (-dv.alpha * dv.beta)));
    conf = std::max(conf, std::abs((1 + du.beta * du.beta) -
                                   w2 * (1 - dv.beta * dv.beta)));
    const double cr = std::abs(cmc_residual(R, x, y));
    const double cl = std::abs(cmc_residual(L, x, y));
    const double local =
        std::max({twin, om, conf, cr, cl});
    if (local > rep.max_all()) {
      rep.worst_x = x;
      rep.worst_y = y;
    }
    rep.max_twin = std::max(rep.max_twin, twin);
    rep.max_omega = std::max(rep.max_omega, om);
    rep.max_conformal = std::max(rep.max_conformal, conf);
    rep.max_cmc_riem = std::max(rep.max_cmc_riem, cr);
    rep.max_cmc_lor = std::max(rep.max_cmc_lor, cl);
    ++rep.evaluated;
  }
  return rep;
}

// Uniform n x n sample set over a window (shrunk by `margin`).
inline std::vector<std::pair<double, double>> sample_grid(const Window& w,
                                                          int n,
                                                          double margin = 0) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<size_t>(n) * n);
  const Window ws = w.shrunk(margin);
  for (int jr = 0; jr < n; ++jr) {
    for (int i = 0; i < n; ++i) {
      pts.emplace_back(ws.x0 + ws.width() * i / (n - 1),
                       ws.y0 + ws.height() * jr / (n - 1));
    }
  }
  return pts;
}

}  // namespace ektau
