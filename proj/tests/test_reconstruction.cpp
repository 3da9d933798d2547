#include <cmath>

#include "doctest.h"
#include "ruledgeo/csv.hpp"
#include "ruledgeo/reconstruction.hpp"
#include "ruledgeo/sannia.hpp"
#include "test_helpers.hpp"

using namespace ruledgeo;
using testutil::kPi;

namespace {

SanniaFrame identity_frame(const ChartPoint& p) {
  return SanniaFrame{TangentVec{p, Vec3(1, 0, 0)}, TangentVec{p, Vec3(0, 1, 0)},
                     TangentVec{p, Vec3(0, 0, 1)}};
}

InvariantPrescription helicoid_prescription(double u_end = 2 * kPi) {
  InvariantPrescription presc;
  presc.u0 = 0;
  presc.u_begin = 0;
  presc.u_end = u_end;
  presc.kappa1 = [](double) { return 1.0; };
  presc.kappa2 = [](double) { return 0.0; };
  presc.theta = [](double) { return kPi / 2; };
  presc.phi = [](double) { return 0.0; };
  presc.p0 = ChartPoint{Vec3()};
  presc.frame0 = identity_frame(presc.p0);
  return presc;
}

}  // namespace

TEST_CASE("the helicoid prescription rebuilds the axis and rotating ruling") {
  const ChartMetric m = euclidean_metric();
  const ReconstructedSurface rec = reconstruct(m, helicoid_prescription(), 1e-3);
  REQUIRE(rec.u.size() > 6000);
  for (std::size_t i = 0; i < rec.u.size(); i += 500) {
    const double u = rec.u[i];
    CHECK(enorm(rec.alpha[i] - Vec3(0, 0, u)) < 1e-10);
    CHECK(enorm(rec.frame[i][0] - Vec3(std::cos(u), std::sin(u), 0)) < 1e-10);
  }
  CHECK(orthonormality_drift(m, rec) < 1e-8);
}

TEST_CASE("a zero-length interval returns only the initial sample") {
  const ChartMetric m = euclidean_metric();
  InvariantPrescription presc = helicoid_prescription(0.0);
  const ReconstructedSurface rec = reconstruct(m, presc, 1e-3);
  REQUIRE(rec.u.size() == 1);
  CHECK(rec.u[0] == 0.0);
  CHECK(enorm(rec.alpha[0]) == 0.0);
  CHECK(enorm(rec.frame[0][0] - Vec3(1, 0, 0)) == 0.0);
  CHECK(orthonormality_drift(m, rec) == 0.0);
}

TEST_CASE("reconstructed arc length and frame relation") {
  const ChartMetric m = halfspace_metric(-1.0);
  InvariantPrescription presc;
  presc.u0 = 0;
  presc.u_begin = 0;
  presc.u_end = 1.5;
  presc.kappa1 = [](double u) { return 1.1 + 0.3 * std::sin(2 * u); };
  presc.kappa2 = [](double u) { return 0.4 * std::cos(3 * u); };
  presc.theta = [](double u) { return 0.6 * std::sin(u); };
  presc.phi = [](double u) { return 0.5 * std::cos(2 * u); };
  presc.p0 = ChartPoint{Vec3(0, 0, 1)};
  presc.frame0 = identity_frame(presc.p0);
  const ReconstructedSurface rec = reconstruct(m, presc, 1e-3);

  // ‖α′‖ = 1 by construction
  const std::vector<Vec3> ap = grid_derivative(rec.u, rec.alpha);
  for (std::size_t i = 4; i + 4 < rec.u.size(); i += 50)
    CHECK(m.norm(rec.alpha[i], ap[i]) == doctest::Approx(1.0).epsilon(1e-6));

  // ∇_{α′}X₁ = κ₁ X₂ with the prescribed κ₁
  std::vector<Vec3> X1(rec.u.size());
  for (std::size_t i = 0; i < rec.u.size(); ++i) X1[i] = rec.frame[i][0];
  std::vector<Vec3> dX1 = grid_derivative(rec.u, X1);
  double resid = 0.0;
  for (std::size_t i = 4; i + 4 < rec.u.size(); i += 10) {
    const Christoffel c = m.christoffel(rec.alpha[i]);
    Vec3 cov = dX1[i];
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          cov[a] += c.sym[a][j][k] * ap[i][j] * X1[i][k];
    resid = std::max(
        resid, enorm(cov - presc.kappa1(rec.u[i]) * rec.frame[i][1]));
  }
  CHECK(resid < 1e-5);
}

TEST_CASE("round trip through the hyperbolic circle surface") {
  // extract invariants of the surface, rebuild from the starting frame, and
  // compare curve points; θ is undefined (cos φ = 0) along this base.
  const auto spec = testutil::example1_spec();
  const ChartMetric& m = *spec.metric;
  const std::vector<double> grid = uniform_grid(0.0, kPi, 3142);
  const SanniaInvariants inv = sannia_invariants(spec, grid);

  InvariantTable table;
  table.u = inv.u;
  table.kappa0 = inv.kappa0;
  table.kappa1 = inv.kappa1;
  table.kappa2 = inv.kappa2;
  table.theta = inv.theta;  // NaN everywhere
  table.phi = inv.phi;

  const SanniaFrame frame0 = sannia_frame_at(spec, 0.0);
  const InvariantPrescription presc = prescription_from_table(
      table, ChartPoint{spec.alpha_pos(0.0)}, frame0, 0.0, 0.0, kPi);
  const ReconstructedSurface rec = reconstruct(m, presc, 1e-3);
  double sup = 0.0;
  for (std::size_t i = 0; i < rec.u.size(); i += 100)
    sup = std::max(sup, enorm(rec.alpha[i] - spec.alpha_pos(rec.u[i])));
  CHECK(sup < 1e-5);
}

TEST_CASE("reconstructions related by a chart isometry stay related") {
  // half-space isometry: rotation about the z-axis composed with a dilation
  const ChartMetric m = halfspace_metric(-1.0);
  const double lam = 1.7, ang = 0.8;
  auto iso = [&](const Vec3& p) {
    return lam * Vec3(std::cos(ang) * p[0] - std::sin(ang) * p[1],
                      std::sin(ang) * p[0] + std::cos(ang) * p[1], p[2]);
  };
  auto diso = [&](const Vec3& v) { return iso(v); };  // linear map

  InvariantPrescription presc;
  presc.u0 = 0;
  presc.u_begin = 0;
  presc.u_end = 1.0;
  presc.kappa1 = [](double u) { return 1.0 + 0.4 * std::sin(3 * u); };
  presc.kappa2 = [](double u) { return 0.7 * std::cos(2 * u); };
  presc.theta = [](double u) { return 0.5 * std::sin(2 * u); };
  presc.phi = [](double u) { return 0.4 * std::cos(u); };
  presc.p0 = ChartPoint{Vec3(0.2, -0.1, 1.0)};
  const auto axes = orthonormalize(
      m, presc.p0.coords, {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
  presc.frame0 =
      SanniaFrame{TangentVec{presc.p0, axes[0]}, TangentVec{presc.p0, axes[1]},
                  TangentVec{presc.p0, axes[2]}};

  InvariantPrescription moved = presc;
  moved.p0 = ChartPoint{iso(presc.p0.coords)};
  moved.frame0 = SanniaFrame{TangentVec{moved.p0, diso(axes[0])},
                             TangentVec{moved.p0, diso(axes[1])},
                             TangentVec{moved.p0, diso(axes[2])}};

  const ReconstructedSurface a = reconstruct(m, presc, 1e-3);
  const ReconstructedSurface b = reconstruct(m, moved, 1e-3);
  REQUIRE(a.u.size() == b.u.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < a.u.size(); i += 50)
    sup = std::max(sup, enorm(iso(a.alpha[i]) - b.alpha[i]));
  CHECK(sup < 1e-6);
}

TEST_CASE("prescription validation") {
  const ChartMetric m = euclidean_metric();
  SUBCASE("kappa0 must be one") {
    InvariantTable t;
    t.u = {0.0, 0.5, 1.0};
    t.kappa0 = {1.0, 1.2, 1.0};
    t.kappa1 = {1.0, 1.0, 1.0};
    t.kappa2 = t.theta = t.phi = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(prescription_from_table(t, ChartPoint{Vec3()},
                                            identity_frame(ChartPoint{Vec3()}),
                                            0, 0, 1),
                    GeometryError);
  }
  SUBCASE("kappa1 must stay positive") {
    InvariantPrescription presc = helicoid_prescription(1.0);
    presc.kappa1 = [](double u) { return 0.5 - u; };
    CHECK_THROWS_AS(reconstruct(m, presc, 1e-3), NonPositiveKappa1);
  }
  SUBCASE("the initial frame must be orthonormal") {
    InvariantPrescription presc = helicoid_prescription(1.0);
    presc.frame0.X1.components = Vec3(1.1, 0, 0);
    CHECK_THROWS_AS(reconstruct(m, presc, 1e-3), GeometryError);
  }
}

TEST_CASE("reconstruction truncates at the chart boundary") {
  // flat metric restricted to the unit box: the curve marches along x = u
  // and leaves through the face x = 1
  const ChartMetric m(
      "flat_box", [](const Vec3&) { return Mat3::identity(); },
      [](const Vec3&) { return std::array<Mat3, 3>{}; },
      [](const Vec3& p) {
        return std::abs(p[0]) < 1.0 && std::abs(p[1]) < 1.0 &&
               std::abs(p[2]) < 1.0;
      },
      CurvatureTag::constant(0.0));
  InvariantPrescription presc;
  presc.u0 = 0;
  presc.u_begin = -0.5;
  presc.u_end = 5.0;
  presc.kappa1 = [](double) { return 1e-4; };  // X₁ stays almost parallel
  presc.kappa2 = [](double) { return 0.0; };
  presc.theta = [](double) { return 0.0; };
  presc.phi = [](double) { return 0.0; };
  presc.p0 = ChartPoint{Vec3(0, 0, 0)};
  presc.frame0 = identity_frame(presc.p0);
  const ReconstructedSurface rec = reconstruct(m, presc, 1e-3);
  CHECK(rec.exited_end);
  CHECK(rec.reached_end == doctest::Approx(1.0).epsilon(1e-3));
  CHECK_FALSE(rec.exited_begin);
  CHECK(rec.u.front() == doctest::Approx(-0.5));
}

TEST_CASE("surface spec assembled from a reconstruction") {
  const ChartMetric m = euclidean_metric();
  const ReconstructedSurface rec = reconstruct(m, helicoid_prescription(), 1e-3);
  const RuledSurfaceSpec spec =
      spec_from_reconstruction(testutil::euclid(), rec);
  const SanniaInvariants inv =
      sannia_invariants(spec, uniform_grid(0.5, 5.5, 501));
  for (std::size_t i = 0; i < inv.size(); i += 50) {
    CHECK(inv.kappa1[i] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(inv.kappa2[i]) < 1e-6);
  }
}
