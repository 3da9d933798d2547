#pragma once
#include <cmath>
#include <memory>

#include "ruledgeo/presets.hpp"
#include "ruledgeo/ruled_surface.hpp"

namespace testutil {

constexpr double kPi = 3.14159265358979323846;

inline std::shared_ptr<const ruledgeo::ChartMetric> euclid() {
  return std::make_shared<ruledgeo::ChartMetric>(ruledgeo::euclidean_metric());
}

inline std::shared_ptr<const ruledgeo::ChartMetric> halfspace(double k = -1.0) {
  return std::make_shared<ruledgeo::ChartMetric>(ruledgeo::halfspace_metric(k));
}

inline std::shared_ptr<const ruledgeo::ChartMetric> sphere(double k = 1.0) {
  return std::make_shared<ruledgeo::ChartMetric>(ruledgeo::sphere_metric(k));
}

// α(u) = (0,0,u), Z = (cos u, sin u, 0) in flat space.
inline ruledgeo::RuledSurfaceSpec helicoid_spec() {
  ruledgeo::RuledSurfaceSpec s;
  s.metric = euclid();
  s.alpha.pos = [](double u) { return ruledgeo::Vec3(0, 0, u); };
  s.alpha.vel = [](double) { return ruledgeo::Vec3(0, 0, 1); };
  s.ruling.val = [](double u) {
    return ruledgeo::Vec3(std::cos(u), std::sin(u), 0);
  };
  s.ruling.dval = [](double u) {
    return ruledgeo::Vec3(-std::sin(u), std::cos(u), 0);
  };
  s.u_min = 0;
  s.u_max = 2 * kPi;
  s.name = "helicoid";
  return s;
}

// α(u) = (cos u, sin u, 1), Z = (cos u, sin u, 0) in the half-space chart.
inline ruledgeo::RuledSurfaceSpec example1_spec() {
  ruledgeo::RuledSurfaceSpec s;
  s.metric = halfspace();
  s.alpha.pos = [](double u) {
    return ruledgeo::Vec3(std::cos(u), std::sin(u), 1);
  };
  s.alpha.vel = [](double u) {
    return ruledgeo::Vec3(-std::sin(u), std::cos(u), 0);
  };
  s.ruling.val = [](double u) {
    return ruledgeo::Vec3(std::cos(u), std::sin(u), 0);
  };
  s.ruling.dval = [](double u) {
    return ruledgeo::Vec3(-std::sin(u), std::cos(u), 0);
  };
  s.u_min = 0;
  s.u_max = 2 * kPi;
  s.name = "example1";
  return s;
}

// Cylinder over the unit circle, constant vertical ruling.
inline ruledgeo::RuledSurfaceSpec cylinder_spec() {
  ruledgeo::RuledSurfaceSpec s;
  s.metric = euclid();
  s.alpha.pos = [](double u) {
    return ruledgeo::Vec3(std::cos(u), std::sin(u), 0);
  };
  s.alpha.vel = [](double u) {
    return ruledgeo::Vec3(-std::sin(u), std::cos(u), 0);
  };
  s.ruling.val = [](double) { return ruledgeo::Vec3(0, 0, 1); };
  s.ruling.dval = [](double) { return ruledgeo::Vec3(0, 0, 0); };
  s.u_min = 0;
  s.u_max = 2 * kPi;
  s.name = "cylinder";
  return s;
}

// Product of a line with the revolution-symmetric surface of the example2
// scenario: dt² + (2+sin w)² da² + (1+cos²w)² dw².
inline ruledgeo::RuledSurfaceSpec example2_spec() {
  ruledgeo::TrigPoly rho;
  rho.poly = {2.0};
  rho.sines = {{1.0, 1.0}};
  ruledgeo::TrigPoly m;
  m.poly = {1.5};
  m.cosines = {{2.0, 0.5}};
  ruledgeo::RuledSurfaceSpec s;
  s.metric = std::make_shared<ruledgeo::ChartMetric>(
      ruledgeo::revolution_product_metric(rho, m));
  s.alpha.pos = [](double u) { return ruledgeo::Vec3(0, u, 0); };
  s.alpha.vel = [](double) { return ruledgeo::Vec3(0, 1, 0); };
  s.ruling.val = [](double) { return ruledgeo::Vec3(0, 0, 1); };
  s.ruling.dval = [](double) { return ruledgeo::Vec3(0, 0, 0); };
  s.u_min = 0;
  s.u_max = 2 * kPi;
  s.name = "example2";
  return s;
}

// Warped product dt² + sin²t δ₂ with the fiber circle lifted at t0.
inline ruledgeo::RuledSurfaceSpec example3_spec(double t0 = 0.05) {
  ruledgeo::TrigPoly f;
  f.sines = {{1.0, 1.0}};
  ruledgeo::RuledSurfaceSpec s;
  s.metric =
      std::make_shared<ruledgeo::ChartMetric>(ruledgeo::warped_metric(f));
  s.alpha.pos = [t0](double u) {
    return ruledgeo::Vec3(t0, std::cos(u), std::sin(u));
  };
  s.alpha.vel = [](double u) {
    return ruledgeo::Vec3(0, -std::sin(u), std::cos(u));
  };
  s.ruling.val = [](double) { return ruledgeo::Vec3(1, 0, 0); };
  s.ruling.dval = [](double) { return ruledgeo::Vec3(0, 0, 0); };
  s.u_min = 0;
  s.u_max = 2 * kPi;
  s.name = "example3";
  return s;
}

}  // namespace testutil
