#include <cmath>

#include "doctest.h"
#include "ruledgeo/geodesic.hpp"
#include "ruledgeo/oracles.hpp"
#include "test_helpers.hpp"

using namespace ruledgeo;
using testutil::kPi;

TEST_CASE("flat-space geodesics are straight lines") {
  const auto e = testutil::euclid();
  const ChartPoint p{Vec3(0, 0, 0)};
  const GeodesicTrace t =
      exp_map(*e, p, TangentVec{p, Vec3(1, 0, 0)}, 2.0, 1e-3);
  CHECK(enorm(t.state_at(2.0).x - Vec3(2, 0, 0)) < 1e-12);
  CHECK_FALSE(t.exited());
}

TEST_CASE("half-space vertical geodesic is z = e^v") {
  const auto h = testutil::halfspace();
  const ChartPoint p{Vec3(0, 0, 1)};
  const GeodesicTrace t =
      exp_map(*h, p, TangentVec{p, Vec3(0, 0, 1)}, 1.0, 1e-3);
  CHECK(enorm(t.state_at(1.0).x - Vec3(0, 0, std::exp(1.0))) < 1e-10);
}

TEST_CASE("geodesic speed is conserved") {
  TrigPoly rho;
  rho.poly = {2.0};
  rho.sines = {{1.0, 0.4}};
  const ChartMetric metrics[] = {euclidean_metric(), sphere_metric(1.0),
                                 halfspace_metric(-1.0),
                                 revolution_product_metric(rho, std::nullopt)};
  for (const ChartMetric& m : metrics) {
    const Vec3 p0 = m.name() == "halfspace" ? Vec3(0.1, -0.2, 1.0)
                    : m.name() == "sphere"  ? Vec3(1.2, 0.3, -0.1)
                                            : Vec3(0.1, -0.2, 0.4);
    Vec3 z0(0.5, 0.6, 0.3);
    z0 = z0 / m.norm(p0, z0);
    const ChartPoint p{p0};
    const GeodesicTrace t = exp_map(m, p, TangentVec{p, z0}, 5.0, 1e-3);
    double drift = 0.0;
    for (const GeodesicState& s : t.samples())
      drift = std::max(drift, std::abs(m.norm(s.x, s.vel) - 1.0));
    CHECK(drift < 1e-8);
  }
}

TEST_CASE("spherical geodesic through the chart origin has period 2π") {
  // The closed form reaches through the antipode where the chart blows up;
  // the numeric trajectory is compared on the bounded initial stretch.
  const SpaceFormTag tag = SpaceFormTag::sphere(1.0);
  const ChartPoint origin{Vec3()};
  const TangentVec Z{origin, Vec3(1, 0, 0)};
  const GeodesicState back = oracle_geodesic(tag, origin, Z, 2.0 * kPi);
  CHECK(enorm(back.x) < 1e-9);
  CHECK(enorm(back.vel - Vec3(1, 0, 0)) < 1e-9);

  const auto s = testutil::sphere();
  const GeodesicTrace t = exp_map(*s, origin, Z, 2.5, 1e-3);
  for (double v = 0.0; v <= 2.5; v += 0.25) {
    const GeodesicState a = t.state_at(v);
    const GeodesicState b = oracle_geodesic(tag, origin, Z, v);
    CHECK(enorm(a.x - b.x) < 1e-7);
  }
  // r(v) = 2 tan(v/2) along the radial line
  CHECK(t.state_at(1.0).x[0] == doctest::Approx(2.0 * std::tan(0.5)).epsilon(1e-9));
}

TEST_CASE("geodesic integrator is fourth order on the sphere chart") {
  const auto s = testutil::sphere();
  const SpaceFormTag tag = SpaceFormTag::sphere(1.0);
  const ChartPoint p{Vec3(1, 0, 0)};
  const TangentVec Z{p, Vec3(0, 1.25, 0)};
  const GeodesicState want = oracle_geodesic(tag, p, Z, 2.0);
  auto endpoint_err = [&](double h) {
    return enorm(exp_map(*s, p, Z, 2.0, h).state_at(2.0).x - want.x);
  };
  const double e1 = endpoint_err(4e-3);
  const double e2 = endpoint_err(2e-3);
  CHECK(e1 / e2 > 8.0);
  CHECK(e1 / e2 < 32.0);
}

TEST_CASE("chart exit truncates the trajectory with a bisected exit point") {
  TrigPoly f;
  f.sines = {{1.0, 1.0}};  // warped sin-profile chart, domain 0 < t < π
  const ChartMetric m = warped_metric(f);
  const ChartPoint p{Vec3(2.0, 0, 0)};
  const GeodesicTrace t =
      exp_map(m, p, TangentVec{p, Vec3(1, 0, 0)}, 3.0, 1e-3);
  CHECK(t.exited());
  CHECK(t.reached() < 3.0);
  // domain keeps f(t) > 1e-6, so the ruling stops just short of t = π
  CHECK(t.reached() == doctest::Approx(kPi - 2.0).epsilon(1e-3));
  CHECK_THROWS_AS(t.state_at(t.reached() + 0.01), LeftChartDomain);
}

TEST_CASE("parallel transport preserves inner products") {
  const auto metrics = {testutil::euclid(), testutil::sphere(),
                        testutil::halfspace()};
  for (const auto& m : metrics) {
    const Vec3 p0 = m->name() == "halfspace" ? Vec3(0, 0, 1)
                    : m->name() == "sphere"  ? Vec3(1.1, 0.2, 0)
                                             : Vec3(0, 0, 0);
    const ChartPoint p{p0};
    Vec3 z(0.3, 1.0, 0.2);
    z = z / m->norm(p0, z);
    const GeodesicTrace t = exp_map(*m, p, TangentVec{p, z}, 3.0, 1e-3);
    const Vec3 w0 = Vec3(0.7, -0.3, 0.5);
    const TangentVec w = parallel_transport(*m, t, TangentVec{p, w0});
    CHECK(m->norm(w.base.coords, w.components) ==
          doctest::Approx(m->norm(p0, w0)).epsilon(1e-8));
    // g(w, γ′) is preserved as well
    const double before = m->inner(p0, w0, z);
    const double after =
        m->inner(w.base.coords, w.components, t.endpoint().vel);
    CHECK(after == doctest::Approx(before).epsilon(1e-8));
  }
}

TEST_CASE("flat-space transport leaves components unchanged") {
  const auto e = testutil::euclid();
  const ChartPoint p{Vec3(1, 1, 1)};
  const GeodesicTrace t =
      exp_map(*e, p, TangentVec{p, Vec3(0, 1, 0)}, 2.0, 1e-3);
  const TangentVec w =
      parallel_transport(*e, t, TangentVec{p, Vec3(0.2, -0.5, 0.9)});
  CHECK(enorm(w.components - Vec3(0.2, -0.5, 0.9)) < 1e-12);
}

TEST_CASE("half-space transport along the vertical geodesic rescales") {
  const auto h = testutil::halfspace();
  const ChartPoint p{Vec3(0, 0, 1)};
  const GeodesicTrace t =
      exp_map(*h, p, TangentVec{p, Vec3(0, 0, 1)}, 1.0, 1e-3);
  const TangentVec w =
      parallel_transport(*h, t, TangentVec{p, Vec3(1, 0, 0)});
  CHECK(enorm(w.components - Vec3(std::exp(1.0), 0, 0)) < 1e-10);
  CHECK(h->norm(w.base.coords, w.components) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Jacobi fields in flat space stay constant") {
  const auto e = testutil::euclid();
  const ChartPoint p{Vec3()};
  const GeodesicTrace t =
      exp_map(*e, p, TangentVec{p, Vec3(1, 0, 0)}, 3.0, 1e-3);
  const auto js = integrate_jacobi(*e, t, Vec3(0, 2, 1), Vec3());
  for (const JacobiState& j : js) CHECK(enorm(j.J - Vec3(0, 2, 1)) < 1e-12);
}

TEST_CASE("Jacobi norms follow the space-form closed forms") {
  for (double k : {1.0, -1.0}) {
    const auto m = k > 0 ? testutil::sphere(k) : testutil::halfspace(k);
    const Vec3 p0 = k > 0 ? Vec3(1.3, 0, 0) : Vec3(0, 0, 1);
    const ChartPoint p{p0};
    Vec3 z(0.2, 1.0, 0.1);
    z = z / m->norm(p0, z);
    // unit J0 orthogonal to the ruling, DJ0 = 0
    Vec3 j0 = Vec3(1, 0, 0) - m->inner(p0, Vec3(1, 0, 0), z) * z;
    j0 = j0 / m->norm(p0, j0);
    const GeodesicTrace t = exp_map(*m, p, TangentVec{p, z}, 3.0, 1e-3);
    const auto js = integrate_jacobi(*m, t, j0, Vec3());
    for (std::size_t i = 0; i < js.size(); i += 100) {
      const double v = js[i].geo.arc;
      const double want =
          k > 0 ? std::abs(std::cos(std::sqrt(k) * v)) : std::cosh(std::sqrt(-k) * v);
      CHECK(m->norm(js[i].geo.x, js[i].J) == doctest::Approx(want).epsilon(1e-6));
    }
  }
}

TEST_CASE("g(J, γ′) is affine in the ruling parameter") {
  const auto h = testutil::halfspace();
  const ChartPoint p{Vec3(0.2, 0.1, 1.0)};
  Vec3 z(0.4, 0.2, 0.6);
  z = z / h->norm(p.coords, z);
  const Vec3 J0(0.5, -0.2, 0.3), DJ0(0.1, 0.7, -0.4);
  const GeodesicTrace t = exp_map(*h, p, TangentVec{p, z}, 3.0, 1e-3);
  const auto js = integrate_jacobi(*h, t, J0, DJ0);
  const double a = h->inner(p.coords, J0, z);
  const double b = h->inner(p.coords, DJ0, z);
  double resid = 0.0;
  for (const JacobiState& j : js)
    resid = std::max(resid, std::abs(h->inner(j.geo.x, j.J, j.geo.vel) -
                                     (a + b * j.geo.arc)));
  CHECK(resid < 1e-8);
}

TEST_CASE("Jacobi decomposition splits the tangential part") {
  const auto h = testutil::halfspace();
  const ChartPoint p{Vec3(0, 0, 1)};
  const Vec3 z(1, 0, 0);  // unit at z = 1
  const GeodesicTrace t = exp_map(*h, p, TangentVec{p, z}, 2.0, 1e-3);

  SUBCASE("orthogonal initial data keeps the coefficient at zero") {
    const auto js = integrate_jacobi(*h, t, Vec3(0, 1, 0), Vec3());
    const auto d = decompose_jacobi(*h, js.back(), 1.0, kPi / 2);
    CHECK(d.tangential_coeff == doctest::Approx(0.0));
    CHECK(enorm(d.J_perp - js.back().J) < 1e-12);
    CHECK(std::abs(h->inner(js.back().geo.x, d.J_perp, js.back().geo.vel)) <
          1e-8);
  }
  SUBCASE("tangent ruling with unit base speed gives coefficient one") {
    const auto js = integrate_jacobi(*h, t, z, Vec3());
    const auto d = decompose_jacobi(*h, js.back(), 1.0, 0.0);
    CHECK(d.tangential_coeff == doctest::Approx(1.0));
    CHECK(std::abs(h->inner(js.back().geo.x, d.J_perp, js.back().geo.vel)) <
          1e-8);
  }
}
