// Ambient-space tests: conformal factor, coordinate metric entries, canonical
// orthonormal frames, and connection coefficients on both causal sides.
#include <catch2/catch_amalgamated.hpp>

#include <ektau/space.hpp>

using namespace ektau;
using Catch::Approx;

namespace {

SpaceParams make_space(Side side, double kappa, double bundle) {
  SpaceParams sp;
  sp.side = side;
  sp.kappa = kappa;
  sp.bundle = bundle;
  return sp;
}

}  // namespace

TEST_CASE("conformal factor on the base chart") {
  auto sphere = make_space(Side::Riemannian, 4.0, 0.0);
  CHECK(conformal_factor(sphere, 1.0, 0.0) == Approx(0.5).margin(1e-15));
  CHECK(conformal_factor(sphere, 0.0, 0.0) == Approx(1.0).margin(1e-15));

  auto hyper = make_space(Side::Riemannian, -4.0, 0.0);
  // (1,0) lies on the boundary circle of the model disc: outside the chart.
  CHECK_THROWS_AS(conformal_factor(hyper, 1.0, 0.0), Error);
  try {
    conformal_factor(hyper, 1.0, 0.0);
    FAIL("expected a chart-domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainViolation);
  }
  CHECK(conformal_factor(hyper, 0.5, 0.0) == Approx(1.0 / 0.75).margin(1e-15));

  auto flat = make_space(Side::Lorentzian, 0.0, 0.5);
  CHECK(conformal_factor(flat, 123.0, -7.0) == Approx(1.0).margin(1e-15));
}

TEST_CASE("coordinate metric entries, flat base") {
  const double tau = 0.5;
  auto riem = make_space(Side::Riemannian, 0.0, tau);
  auto lor = make_space(Side::Lorentzian, 0.0, tau);

  AmbientPoint p{0.7, -1.3, 2.0};
  auto gr = metric_matrix(riem, p);
  auto gl = metric_matrix(lor, p);

  // Fiber direction: unit, with sign matching the causal character.
  CHECK(gr(2, 2) == Approx(1.0).margin(1e-15));
  CHECK(gl(2, 2) == Approx(-1.0).margin(1e-15));

  // Mixed entries <d/dx, d/dz> = tau*y and <d/dy, d/dz> = -tau*x
  // (flat chart, Riemannian side).
  CHECK(gr(0, 2) == Approx(tau * p.y).margin(1e-15));
  CHECK(gr(1, 2) == Approx(-tau * p.x).margin(1e-15));

  // Horizontal block picks up the vertical 1-form squared.
  CHECK(gr(0, 0) == Approx(1.0 + tau * tau * p.y * p.y).margin(1e-14));
  CHECK(gr(1, 1) == Approx(1.0 + tau * tau * p.x * p.x).margin(1e-14));
  CHECK(gr(0, 1) == Approx(-tau * tau * p.x * p.y).margin(1e-14));

  // Lorentzian side subtracts the square of its vertical 1-form.
  CHECK(gl(0, 0) == Approx(1.0 - tau * tau * p.y * p.y).margin(1e-14));
  CHECK(gl(0, 2) == Approx(tau * p.y).margin(1e-14));

  // metric_eval agrees with the matrix contraction.
  AmbientVector v(1.0, 2.0, -0.5), w(0.3, 0.0, 1.0);
  CHECK(metric_eval(riem, p, v, w) == Approx(v.dot(gr * w)).margin(1e-14));
}

TEST_CASE("orthonormal frame and connection, Riemannian side") {
  const double tau = 0.5;
  auto riem = make_space(Side::Riemannian, 0.0, tau);
  AmbientPoint p{0.3, 1.1, 0.0};
  auto E = orthonormal_frame(riem, p);

  // E1 = d/dx - tau*y d/dz, E2 = d/dy + tau*x d/dz, E3 = d/dz.
  CHECK(E(0, 0) == Approx(1.0).margin(1e-15));
  CHECK(E(1, 0) == Approx(0.0).margin(1e-15));
  CHECK(E(2, 0) == Approx(-tau * p.y).margin(1e-15));
  CHECK(E(0, 1) == Approx(0.0).margin(1e-15));
  CHECK(E(1, 1) == Approx(1.0).margin(1e-15));
  CHECK(E(2, 1) == Approx(tau * p.x).margin(1e-15));
  CHECK(E(2, 2) == Approx(1.0).margin(1e-15));

  auto g = metric_matrix(riem, p);
  Eigen::Matrix3d gram = E.transpose() * g * E;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(gram(i, j) == Approx(i == j ? 1.0 : 0.0).margin(1e-13));

  // nabla_{E1}E3 = -tau E2, nabla_{E2}E3 = tau E1, nabla_{E3}E3 = 0.
  auto c13 = connection_in_frame(riem, 0, 2, p);
  CHECK(c13[0] == Approx(0.0).margin(1e-14));
  CHECK(c13[1] == Approx(-tau).margin(1e-14));
  CHECK(c13[2] == Approx(0.0).margin(1e-14));
  auto c23 = connection_in_frame(riem, 1, 2, p);
  CHECK(c23[0] == Approx(tau).margin(1e-14));
  CHECK(c23[1] == Approx(0.0).margin(1e-14));
  auto c33 = connection_in_frame(riem, 2, 2, p);
  CHECK(c33.norm() == Approx(0.0).margin(1e-14));

  // Curved base contributes the kappa/2 terms to horizontal derivatives.
  auto sph = make_space(Side::Riemannian, 4.0, tau);
  auto c11 = connection_in_frame(sph, 0, 0, p);
  CHECK(c11[1] == Approx(0.5 * 4.0 * p.y).margin(1e-14));

  CHECK_THROWS_AS(connection_in_frame(riem, 3, 0, p), Error);
}

TEST_CASE("orthonormal frame, Lorentzian side") {
  const double H = 0.5;
  auto lor = make_space(Side::Lorentzian, 0.0, H);
  AmbientPoint p{-0.4, 0.9, 1.7};
  auto E = orthonormal_frame(lor, p);
  auto g = metric_matrix(lor, p);
  Eigen::Matrix3d gram = E.transpose() * g * E;
  CHECK(gram(0, 0) == Approx(1.0).margin(1e-13));
  CHECK(gram(1, 1) == Approx(1.0).margin(1e-13));
  CHECK(gram(2, 2) == Approx(-1.0).margin(1e-13));
  CHECK(gram(0, 1) == Approx(0.0).margin(1e-13));
  CHECK(gram(0, 2) == Approx(0.0).margin(1e-13));
  // The unit timelike fiber field is geodesic.
  auto c33 = connection_in_frame(lor, 2, 2, p);
  CHECK(c33.norm() == Approx(0.0).margin(1e-14));
}

TEST_CASE("frame components of coordinate vectors") {
  const double tau = 0.5;
  auto riem = make_space(Side::Riemannian, 0.0, tau);
  AmbientPoint p{2.0, -1.0, 0.0};
  // The frame columns themselves must have frame components e_i.
  auto E = orthonormal_frame(riem, p);
  for (int j = 0; j < 3; ++j) {
    auto comp = to_frame(riem, p, E.col(j));
    for (int i = 0; i < 3; ++i)
      CHECK(comp[i] == Approx(i == j ? 1.0 : 0.0).margin(1e-13));
  }
}

TEST_CASE("side parsing") {
  CHECK(side_from_string("riemannian") == Side::Riemannian);
  CHECK(side_from_string("lorentzian") == Side::Lorentzian);
  CHECK_THROWS_AS(side_from_string("euclidean"), Error);
  CHECK(std::string(to_string(Side::Lorentzian)) == "lorentzian");
}
