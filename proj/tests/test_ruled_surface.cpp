#include <cmath>
#include <random>

#include "doctest.h"
#include "ruledgeo/ruled_surface.hpp"
#include "test_helpers.hpp"

using namespace ruledgeo;
using testutil::kPi;

TEST_CASE("the jet at v = 0 reproduces the base data") {
  const auto spec = testutil::example1_spec();
  const double u = 1.234;
  const SurfaceJet jet = evaluate_jet(spec, u, 0.0);
  CHECK(enorm(jet.point.coords - spec.alpha_pos(u)) < 1e-14);
  CHECK(enorm(jet.Xu.components - spec.alpha_vel(u)) < 1e-14);
  CHECK(enorm(jet.Xv.components - spec.ruling_effective(u)) < 1e-14);
  CHECK(enorm(jet.DXu.components - spec.cov_deriv_ruling_effective(u)) <
        1e-14);
  CHECK(jet.rank2);
}

TEST_CASE("helicoid Jacobi field matches the explicit parametrization") {
  // X(u,v) = (v cos u, v sin u, u) gives X_u = (−v sin u, v cos u, 1).
  const auto spec = testutil::helicoid_spec();
  for (double u : {0.0, 0.7, 2.1}) {
    for (double v : {-1.5, 0.5, 1.3}) {
      const SurfaceJet jet = evaluate_jet(spec, u, v);
      const Vec3 want(-v * std::sin(u), v * std::cos(u), 1.0);
      CHECK(enorm(jet.Xu.components - want) < 1e-10);
      CHECK(enorm(jet.point.coords -
                  Vec3(v * std::cos(u), v * std::sin(u), u)) < 1e-10);
    }
  }
}

TEST_CASE("product-chart jet with the raw profile ruling") {
  // With the unnormalized ruling ∂_w the base jet satisfies g(X_u, ∇X_u) = 2.
  auto spec = testutil::example2_spec();
  spec.normalize_ruling = false;
  const SurfaceJet jet = evaluate_jet(spec, 0.9, 0.0);
  CHECK(spec.metric->inner(jet.point.coords, jet.Xu.components,
                           jet.DXu.components) == doctest::Approx(2.0));
}

TEST_CASE("g(X_u, X_v) is constant along rulings") {
  const auto specs = {testutil::helicoid_spec(), testutil::example1_spec(),
                      testutil::example2_spec()};
  for (const auto& spec : specs) {
    for (double u : {0.4, 2.9}) {
      const RulingTrace trace = ruling_sweep(spec, u, 0.0, 3.0);
      const double g0 = spec.metric->inner(
          spec.alpha_pos(u), spec.alpha_vel(u), spec.ruling_effective(u));
      for (double v = 0.0; v <= 3.0; v += 0.2) {
        const SurfaceJet jet = trace.jet_at(v);
        CHECK(std::abs(spec.metric->inner(jet.point.coords, jet.Xu.components,
                                          jet.Xv.components) -
                       g0) < 1e-7);
      }
    }
  }
}

namespace {

// Independent extrinsic-curvature oracle for the flat ambient: first and
// second fundamental forms of the explicit helicoid patch by central
// differences.
double helicoid_gauss_curvature_fd(double u, double v) {
  auto X = [](double uu, double vv) {
    return Vec3(vv * std::cos(uu), vv * std::sin(uu), uu);
  };
  const double h = 1e-5;
  const Vec3 Xu = (X(u + h, v) - X(u - h, v)) / (2 * h);
  const Vec3 Xv = (X(u, v + h) - X(u, v - h)) / (2 * h);
  const Vec3 Xuu =
      (X(u + h, v) - 2.0 * X(u, v) + X(u - h, v)) / (h * h);
  const Vec3 Xvv =
      (X(u, v + h) - 2.0 * X(u, v) + X(u, v - h)) / (h * h);
  const Vec3 Xuv = (X(u + h, v + h) - X(u + h, v - h) - X(u - h, v + h) +
                    X(u - h, v - h)) /
                   (4 * h * h);
  const Vec3 n = ecross(Xu, Xv) / enorm(ecross(Xu, Xv));
  const double E = edot(Xu, Xu), F = edot(Xu, Xv), G = edot(Xv, Xv);
  const double L = edot(Xuu, n), M = edot(Xuv, n), N = edot(Xvv, n);
  return (L * N - M * M) / (E * G - F * F);
}

}  // namespace

TEST_CASE("helicoid curvature report") {
  const auto spec = testutil::helicoid_spec();
  for (double v : {0.0, 0.8, 1.6}) {
    const CurvatureReport rep = curvature_report(spec, 1.1, v);
    const double want = -1.0 / std::pow(1.0 + v * v, 2);
    CHECK(rep.K_ext == doctest::Approx(want).epsilon(1e-8));
    CHECK(rep.K_ext ==
          doctest::Approx(helicoid_gauss_curvature_fd(1.1, v)).epsilon(1e-4));
    CHECK(rep.K_ambient == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(rep.K_intrinsic ==
          doctest::Approx(rep.K_ambient + rep.K_ext).epsilon(1e-12));
    CHECK(rep.lambda_defined);
    CHECK(rep.lambda == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("trivially ruled plane has an undefined distribution parameter") {
  RuledSurfaceSpec s;
  s.metric = testutil::euclid();
  s.alpha.pos = [](double u) { return Vec3(u, 0, 0); };
  s.alpha.vel = [](double) { return Vec3(1, 0, 0); };
  s.ruling.val = [](double) { return Vec3(0, 1, 0); };
  s.ruling.dval = [](double) { return Vec3(0, 0, 0); };
  s.u_min = 0;
  s.u_max = 1;
  const CurvatureReport rep = curvature_report(s, 0.3, 0.7);
  CHECK_FALSE(rep.lambda_defined);
  CHECK(rep.K_ext == doctest::Approx(0.0));
  CHECK(rep.K_ambient == doctest::Approx(0.0));
  CHECK(rep.K_intrinsic == doctest::Approx(0.0));
}

TEST_CASE("the example1 surface has vanishing extrinsic curvature everywhere") {
  const auto spec = testutil::example1_spec();
  for (double u : {0.3, 1.7, 4.4})
    for (double v : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
      const CurvatureReport rep = curvature_report(spec, u, v);
      CHECK(std::abs(rep.K_ext) < 1e-9);
      CHECK(rep.K_ambient == doctest::Approx(-1.0).epsilon(1e-8));
    }
}

TEST_CASE("extrinsic curvature is never positive") {
  const auto specs = {testutil::helicoid_spec(), testutil::example2_spec(),
                      testutil::example3_spec()};
  for (const auto& spec : specs)
    for (double u : {0.5, 2.0})
      for (double v : {0.3, 1.2, 2.4})
        CHECK(curvature_report(spec, u, v).K_ext <= 1e-9);
}

TEST_CASE("orthogonal rulings stay orthogonal and the angle formula holds") {
  const auto hel = testutil::helicoid_spec();
  for (double v : {-1.0, 0.5, 2.0})
    CHECK(ruling_angle(hel, 0.8, v) == doctest::Approx(kPi / 2).epsilon(1e-9));

  // tangent-ruled sphere surface: cos σ_q = 1/‖X_u‖ along the ruling
  RuledSurfaceSpec tan_spec;
  tan_spec.metric = testutil::sphere();
  tan_spec.alpha.pos = [](double u) {
    return Vec3(0.5 * std::cos(u), 0.5 * std::sin(u), 0);
  };
  tan_spec.alpha.vel = [](double u) {
    return Vec3(-0.5 * std::sin(u), 0.5 * std::cos(u), 0);
  };
  tan_spec.ruling = RulingFieldFn{tan_spec.alpha.vel, [](double u) {
    return Vec3(-0.5 * std::cos(u), -0.5 * std::sin(u), 0);
  }};
  tan_spec.u_min = 0;
  tan_spec.u_max = 2 * kPi;
  const double an = tan_spec.metric->norm(tan_spec.alpha_pos(0.4),
                                          tan_spec.alpha_vel(0.4));
  for (double v : {0.3, 1.0, 2.2}) {
    const SurfaceJet jet = evaluate_jet(tan_spec, 0.4, v);
    const double xun =
        tan_spec.metric->norm(jet.point.coords, jet.Xu.components);
    const double direct = std::acos(clamp_unit(
        tan_spec.metric->inner(jet.point.coords, jet.Xu.components,
                               jet.Xv.components) /
        xun));
    const double via_formula = ruling_angle(tan_spec, 0.4, v);
    CHECK(via_formula == doctest::Approx(direct).epsilon(1e-7));
    CHECK(std::cos(via_formula) == doctest::Approx(an * 1.0 / xun).epsilon(1e-7));
  }
  // σ_q → σ_p = 0 at the base, where X_u ∥ X_v makes the jet rank deficient
  const SurfaceJet base = evaluate_jet(tan_spec, 0.4, 0.0);
  CHECK_FALSE(base.rank2);
  CHECK_THROWS_AS(curvature_report(*tan_spec.metric, base), RankDeficientPlane);
}

TEST_CASE("mesh grids carry curvature attributes and validity flags") {
  const auto spec = testutil::example3_spec();
  const MeshGrid mesh = build_mesh(spec, uniform_grid(0, 2 * kPi, 8),
                                   uniform_grid(0.1, 2.8, 10), 1e-3, 2);
  REQUIRE(mesh.verts.size() == 80);
  for (const MeshVertex& vert : mesh.verts) {
    CHECK(vert.valid);
    CHECK(vert.rank2);
    CHECK(vert.kext <= 1e-9);
    CHECK(vert.sigma == doctest::Approx(kPi / 2).epsilon(1e-6));
  }
}

TEST_CASE("ruling sweep covers both parameter directions") {
  const auto spec = testutil::example1_spec();
  const RulingTrace trace = ruling_sweep(spec, 0.0, -2.0, 2.0);
  CHECK(trace.reached_min() == doctest::Approx(-2.0));
  CHECK(trace.reached_max() == doctest::Approx(2.0));
  const SurfaceJet back = trace.jet_at(-1.0);
  const SurfaceJet front = trace.jet_at(1.0);
  // the ruling semicircle is symmetric in z about v = 0
  CHECK(back.point.coords[2] == doctest::Approx(front.point.coords[2]).epsilon(1e-9));
  CHECK_THROWS_AS(trace.jet_at(2.5), LeftChartDomain);
}
