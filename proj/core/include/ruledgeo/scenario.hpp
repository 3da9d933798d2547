#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ruledgeo/presets.hpp"
#include "ruledgeo/ruled_surface.hpp"
#include "ruledgeo/striction.hpp"

namespace ruledgeo::io {

struct GridSpec {
  double min = 0.0, max = 1.0;
  int count = 2;
};

struct MetricSpec {
  std::string preset;  // euclidean | sphere | halfspace | revolution_product | warped
  double k = 0.0;
  TrigPoly profile;                  // revolution_product
  std::optional<TrigPoly> w_weight;  // revolution_product, empty => induced
  TrigPoly f;                        // warped
};

struct BaseSpec {
  std::string preset;  // line | circle | helix | custom
  Vec3 origin, direction, center;
  double radius = 1.0, pitch = 1.0, phase = 0.0;
  std::string plane = "xy";
  TrigPoly x, y, z;
};

struct RulingSpec {
  std::string preset;  // constant | tangent | custom
  Vec3 components;
  TrigPoly x, y, z;
};

struct SurfaceSpec {
  BaseSpec base;
  RulingSpec ruling;
  double u_min = 0.0, u_max = 1.0;
  bool normalize_ruling = true;
};

struct StrictionSpec {
  bool present = false;
  double v_min = 0.0, v_max = 3.0;
  int coarse_samples = 64;
};

struct ReconstructSpec {
  bool present = false;
  std::string invariants_csv;
  Vec3 p0;
  std::optional<std::array<Vec3, 3>> frame;  // default: orthonormalized axes
  double u0 = 0.0, u_begin = 0.0, u_end = 1.0;
};

struct TolSpec {
  double step = 1e-3;
  double eps_root = 1e-10;
  double v_tol = 1e-9;
  double eps_touch = 1e-9;
};

struct Scenario {
  int version = 1;
  std::string name = "scenario";
  MetricSpec metric;
  SurfaceSpec surface;
  GridSpec ugrid, vgrid;
  StrictionSpec striction;
  ReconstructSpec reconstruct;
  std::vector<std::string> outputs;
  TolSpec tol;
};

// Strict parsing: unknown keys are rejected, version must be 1.
Scenario parse_scenario_text(const std::string& json_text);
Scenario parse_scenario_file(const std::string& path);

// Bundled scenarios: helicoid, cylinder, sphere_tangent, example1, example2,
// example3 (also shipped as JSON files under scenarios/).
const std::vector<std::string>& builtin_scenario_names();
std::string builtin_scenario_text(const std::string& name);
Scenario builtin_scenario(const std::string& name);

ChartMetric build_metric(const MetricSpec& spec);
RuledSurfaceSpec build_spec(const Scenario& scenario);

std::vector<double> scenario_ugrid(const Scenario& scenario);
std::vector<double> scenario_vgrid(const Scenario& scenario);
StrictionOptions scenario_striction_options(const Scenario& scenario);

// Arc-length resampling: a spec whose base curve is reparametrized by metric
// arc length (quadrature of ‖α′‖ plus monotone spline inversion). Comparisons
// of invariants across parametrizations go through this.
RuledSurfaceSpec resample_by_arclength(const RuledSurfaceSpec& spec,
                                       std::size_t quad_samples = 2048);

}  // namespace ruledgeo::io
