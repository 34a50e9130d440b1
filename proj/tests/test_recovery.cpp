#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ncfem/quadrature.hpp"
#include "ncfem/recovery.hpp"

using namespace ncfem;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("recovery") {

TEST_CASE("k_h reproduces constants on both domains") {
  for (Domain d : {Domain::square, Domain::parallelogram}) {
    const Mesh m = build_domain_mesh(d, 3);
    const Vec2 c{0.3, -1.7};
    const MidpointVectorField rec =
        k_h([&c](int, const Point2&) { return c; }, m);
    for (const Vec2& v : rec.edge_values) {
      CHECK(v.x1 == doctest::Approx(c.x1).epsilon(1e-14));
      CHECK(v.x2 == doctest::Approx(c.x2).epsilon(1e-14));
    }
    const Sym2 tau{0.9, 0.2, -0.4};
    const MidpointMatrixField recm =
        k_h([&tau](int, const Point2&) { return tau; }, m);
    for (const Sym2& s : recm.edge_values) {
      CHECK(s.a11 == doctest::Approx(tau.a11).epsilon(1e-14));
      CHECK(s.a12 == doctest::Approx(tau.a12).epsilon(1e-14));
      CHECK(s.a22 == doctest::Approx(tau.a22).epsilon(1e-14));
    }
  }
}

TEST_CASE("k_h reproduces globally affine fields at every midpoint") {
  // continuous affine input: averaging and the parallelogram extrapolation are
  // both exact, so the recovered midpoint values match the field pointwise
  auto q = [](int, const Point2& x) {
    return Vec2{1.5 - 0.4 * x.x1 + 2.0 * x.x2, 0.7 * x.x1 + 0.3 * x.x2};
  };
  for (Domain d : {Domain::square, Domain::parallelogram}) {
    const Mesh m = build_domain_mesh(d, 4);
    const MidpointVectorField rec = k_h(q, m);
    for (int e = 0; e < m.num_edges(); ++e) {
      const Vec2 want = q(0, m.edges[e].midpoint);
      CHECK(std::abs(rec.edge_values[e].x1 - want.x1) < 1e-13);
      CHECK(std::abs(rec.edge_values[e].x2 - want.x2) < 1e-13);
    }
  }
}

TEST_CASE("k_h averages one-sided values; the boundary pass sees recovered data") {
  // alternate (1,0) on lower triangles and (0,1) on upper ones: every interior
  // average is (1/2,1/2), and the boundary extrapolation 2*(1/2,1/2)-(1/2,1/2)
  // keeps that value, whichever partner stencil was picked
  const Mesh m = build_uniform_square_mesh(2);
  auto alternating = [&m](int t, const Point2&) {
    const Point2 c = m.geom[t].centroid;
    const double u = c.x1 * m.n - std::floor(c.x1 * m.n);
    const double v = c.x2 * m.n - std::floor(c.x2 * m.n);
    return v < u ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
  };
  const MidpointVectorField rec = k_h(alternating, m);
  for (const Vec2& v : rec.edge_values) {
    CHECK(v.x1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v.x2 == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("k_h refuses meshes without extrapolation stencils") {
  const Mesh m = build_uniform_square_mesh(1);
  CHECK_THROWS_AS(k_h([](int, const Point2&) { return Vec2{1.0, 0.0}; }, m),
                  std::invalid_argument);
}

TEST_CASE("pi_rt reproduces the fields RT0 contains") {
  const Mesh m = build_uniform_parallelogram_mesh(3);
  const RTField c = pi_rt([](const Point2&) { return Vec2{1.0, 0.0}; }, m);
  const RTField id = pi_rt([](const Point2& x) { return Vec2{x.x1, x.x2}; }, m);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const TriGeom& g = m.geom[t];
    for (const Point2& x : {g.centroid, g.edge_mid[0], g.p[2]}) {
      const Vec2 vc = c.value(t, x);
      CHECK(std::abs(vc.x1 - 1.0) < 1e-12);
      CHECK(std::abs(vc.x2) < 1e-12);
      const Vec2 vi = id.value(t, x);
      CHECK(std::abs(vi.x1 - x.x1) < 1e-12);
      CHECK(std::abs(vi.x2 - x.x2) < 1e-12);
    }
    CHECK(std::abs(c.divergence(t)) < 1e-12);
    CHECK(id.divergence(t) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("pi_rt fluxes match a composite-quadrature oracle") {
  // polynomial flux integrand: the interpolant's fixed edge rule is exact, so
  // the composite oracle must agree to rounding
  auto cubic = [](const Point2& x) {
    return Vec2{x.x1 * x.x1 * x.x1 + x.x2 * x.x2, 2.0 * x.x1 * x.x2 - x.x2};
  };
  // transcendental flux integrand: only the rule's own truncation remains
  auto q = [](const Point2& x) {
    return Vec2{kPi * std::cos(kPi * x.x1) * std::sin(kPi * x.x2),
                kPi * std::sin(kPi * x.x1) * std::cos(kPi * x.x2)};
  };
  const Mesh m = build_uniform_square_mesh(4);
  const RTField pcub = pi_rt(cubic, m);
  const RTField psin = pi_rt(q, m);
  const EdgeQuadratureRule& gauss = edge_quadrature(2);
  auto composite_flux = [&](const std::function<Vec2(const Point2&)>& field, int e) {
    const Edge& ed = m.edges[e];
    const Point2 a = m.vertices[ed.vertex_ids[0]];
    const Point2 b = m.vertices[ed.vertex_ids[1]];
    double flux = 0.0;
    const int pieces = 16;
    for (int k = 0; k < pieces; ++k)
      for (const auto& node : gauss.nodes) {
        const double s = (k + node.s) / pieces;
        flux += (ed.length / pieces) * node.weight *
                dot(field(a + s * (b - a)), ed.unit_normal);
      }
    return flux;
  };
  for (int e = 0; e < m.num_edges(); ++e) {
    CHECK(std::abs(pcub.edge_flux[e] - composite_flux(cubic, e)) < 1e-13);
    CHECK(std::abs(psin.edge_flux[e] - composite_flux(q, e)) < 2e-8);
  }
}

TEST_CASE("pi_hhj reproduces constants and matches a composite oracle") {
  const Sym2 tau{1.3, -0.5, 0.8};
  const Mesh m = build_uniform_parallelogram_mesh(2);
  const HHJField ct = pi_hhj([&tau](const Point2&) { return tau; }, m);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Sym2 got = ct.matrix(t);
    CHECK(std::abs(got.a11 - tau.a11) < 1e-13);
    CHECK(std::abs(got.a12 - tau.a12) < 1e-13);
    CHECK(std::abs(got.a22 - tau.a22) < 1e-13);
  }

  // cubic components: the interpolant's 4-point edge rule is exact, and so is
  // the composite oracle, so they agree to rounding; a transcendental field
  // only matches up to the rule's truncation
  auto cubic = [](const Point2& x) {
    return Sym2{x.x1 * x.x1 * x.x1, x.x1 * x.x2, x.x2 * x.x2 * x.x2 - x.x1};
  };
  auto smooth = [](const Point2& x) {
    return Sym2{std::sin(x.x1), std::cos(x.x1 + x.x2), x.x2 * x.x2 * x.x2};
  };
  const HHJField icub = pi_hhj(cubic, m);
  const HHJField ismo = pi_hhj(smooth, m);
  const EdgeQuadratureRule& gauss = edge_quadrature(4);
  auto composite_mean = [&](const std::function<Sym2(const Point2&)>& field, int e) {
    const Edge& ed = m.edges[e];
    const Point2 a = m.vertices[ed.vertex_ids[0]];
    const Point2 b = m.vertices[ed.vertex_ids[1]];
    double mean = 0.0;
    const int pieces = 8;
    for (int k = 0; k < pieces; ++k)
      for (const auto& node : gauss.nodes) {
        const double s = (k + node.s) / pieces;
        mean += node.weight / pieces * mnn(field(a + s * (b - a)), ed.unit_normal);
      }
    return mean;
  };
  for (int e = 0; e < m.num_edges(); ++e) {
    CHECK(std::abs(icub.edge_mnn[e] - composite_mean(cubic, e)) < 1e-13);
    CHECK(std::abs(ismo.edge_mnn[e] - composite_mean(smooth, e)) < 2e-8);
  }
}

TEST_CASE("recovery_order_probe: exact on affines, second order on smooth data") {
  auto affine = [](const Point2& x) {
    return Vec2{0.2 + x.x1 - 3.0 * x.x2, 1.0 + 0.5 * x.x1};
  };
  const RateReport flat = recovery_order_probe(affine, {2, 4, 8}, Domain::square);
  for (double err : flat.errors) CHECK(err < 1e-13);

  auto grad_sine = [](const Point2& x) {
    return Vec2{kPi * std::cos(kPi * x.x1) * std::sin(kPi * x.x2),
                kPi * std::sin(kPi * x.x1) * std::cos(kPi * x.x2)};
  };
  const RateReport rr = recovery_order_probe(grad_sine, {4, 8, 16}, Domain::square);
  REQUIRE(rr.rates.size() == 2);
  for (double r : rr.rates) {
    CHECK(r > 1.7);
    CHECK(r < 2.3);
  }

  auto smooth_mat = [](const Point2& x) {
    return Sym2{std::sin(kPi * x.x1) * std::sin(kPi * x.x2),
                std::cos(kPi * x.x1) * std::cos(kPi * x.x2),
                -std::sin(kPi * x.x1) * std::sin(kPi * x.x2)};
  };
  const RateReport rm =
      recovery_order_probe(smooth_mat, {4, 8, 16}, Domain::parallelogram);
  REQUIRE(rm.rates.size() == 2);
  for (double r : rm.rates) {
    CHECK(r > 1.6);
    CHECK(r < 2.4);
  }
}

}  // TEST_SUITE
