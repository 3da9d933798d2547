#include "ruledgeo/scenario.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <set>

#include "json.hpp"
#include "ruledgeo/csv.hpp"
#include "ruledgeo/errors.hpp"
#include "ruledgeo/interp.hpp"

namespace ruledgeo::io {

using nlohmann::json;

namespace {

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::string& ctx) {
  if (!j.is_object()) throw ScenarioError(ctx + ": expected an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ScenarioError(ctx + ": unknown key '" + item.key() + "'");
}

const json& req(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key))
    throw ScenarioError(ctx + ": missing required key '" + key + "'");
  return j.at(key);
}

double num(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw ScenarioError(ctx + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ScenarioError(ctx + ": value must be finite");
  return x;
}

Vec3 vec3(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3)
    throw ScenarioError(ctx + ": expected an array of 3 numbers");
  return Vec3(num(j[0], ctx), num(j[1], ctx), num(j[2], ctx));
}

TrigPoly trig_poly(const json& j, const std::string& ctx) {
  expect_keys(j, {"poly", "cos", "sin"}, ctx);
  TrigPoly t;
  if (j.contains("poly")) {
    for (const auto& c : j.at("poly")) t.poly.push_back(num(c, ctx + ".poly"));
  }
  auto terms = [&](const char* key, std::vector<std::pair<double, double>>& out) {
    if (!j.contains(key)) return;
    for (const auto& pair : j.at(key)) {
      if (!pair.is_array() || pair.size() != 2)
        throw ScenarioError(ctx + "." + key + ": expected [frequency, amplitude] pairs");
      out.emplace_back(num(pair[0], ctx), num(pair[1], ctx));
    }
  };
  terms("cos", t.cosines);
  terms("sin", t.sines);
  return t;
}

GridSpec grid(const json& j, const std::string& ctx) {
  expect_keys(j, {"min", "max", "count"}, ctx);
  GridSpec g;
  g.min = num(req(j, "min", ctx), ctx + ".min");
  g.max = num(req(j, "max", ctx), ctx + ".max");
  if (!req(j, "count", ctx).is_number_integer())
    throw ScenarioError(ctx + ".count: expected an integer");
  g.count = req(j, "count", ctx).get<int>();
  if (g.count < 2) throw ScenarioError(ctx + ".count: need at least 2 samples");
  if (!(g.max > g.min)) throw ScenarioError(ctx + ": max must exceed min");
  return g;
}

MetricSpec metric_spec(const json& j) {
  const std::string ctx = "metric";
  MetricSpec m;
  m.preset = req(j, "preset", ctx).get<std::string>();
  if (m.preset == "euclidean") {
    expect_keys(j, {"preset"}, ctx);
  } else if (m.preset == "sphere") {
    expect_keys(j, {"preset", "k"}, ctx);
    m.k = num(req(j, "k", ctx), ctx + ".k");
    if (!(m.k > 0.0)) throw ScenarioError("metric sphere needs k > 0");
  } else if (m.preset == "halfspace") {
    expect_keys(j, {"preset", "k"}, ctx);
    m.k = num(req(j, "k", ctx), ctx + ".k");
    if (!(m.k < 0.0)) throw ScenarioError("metric halfspace needs k < 0");
  } else if (m.preset == "revolution_product") {
    expect_keys(j, {"preset", "profile", "w_weight"}, ctx);
    m.profile = trig_poly(req(j, "profile", ctx), ctx + ".profile");
    if (j.contains("w_weight"))
      m.w_weight = trig_poly(j.at("w_weight"), ctx + ".w_weight");
  } else if (m.preset == "warped") {
    expect_keys(j, {"preset", "f"}, ctx);
    m.f = trig_poly(req(j, "f", ctx), ctx + ".f");
  } else {
    throw ScenarioError("unknown metric preset '" + m.preset + "'");
  }
  return m;
}

BaseSpec base_spec(const json& j) {
  const std::string ctx = "surface.base";
  BaseSpec b;
  b.preset = req(j, "preset", ctx).get<std::string>();
  if (b.preset == "line") {
    expect_keys(j, {"preset", "origin", "direction"}, ctx);
    b.origin = vec3(req(j, "origin", ctx), ctx + ".origin");
    b.direction = vec3(req(j, "direction", ctx), ctx + ".direction");
  } else if (b.preset == "circle") {
    expect_keys(j, {"preset", "center", "radius", "plane", "phase"}, ctx);
    b.center = vec3(req(j, "center", ctx), ctx + ".center");
    b.radius = num(req(j, "radius", ctx), ctx + ".radius");
    if (j.contains("plane")) b.plane = j.at("plane").get<std::string>();
    if (b.plane != "xy" && b.plane != "yz" && b.plane != "xz")
      throw ScenarioError("circle plane must be xy, yz or xz");
    if (j.contains("phase")) b.phase = num(j.at("phase"), ctx + ".phase");
  } else if (b.preset == "helix") {
    expect_keys(j, {"preset", "radius", "pitch"}, ctx);
    b.radius = num(req(j, "radius", ctx), ctx + ".radius");
    b.pitch = num(req(j, "pitch", ctx), ctx + ".pitch");
  } else if (b.preset == "custom") {
    expect_keys(j, {"preset", "x", "y", "z"}, ctx);
    if (j.contains("x")) b.x = trig_poly(j.at("x"), ctx + ".x");
    if (j.contains("y")) b.y = trig_poly(j.at("y"), ctx + ".y");
    if (j.contains("z")) b.z = trig_poly(j.at("z"), ctx + ".z");
  } else {
    throw ScenarioError("unknown base-curve preset '" + b.preset + "'");
  }
  return b;
}

RulingSpec ruling_spec(const json& j) {
  const std::string ctx = "surface.ruling";
  RulingSpec r;
  r.preset = req(j, "preset", ctx).get<std::string>();
  if (r.preset == "constant") {
    expect_keys(j, {"preset", "components"}, ctx);
    r.components = vec3(req(j, "components", ctx), ctx + ".components");
  } else if (r.preset == "tangent") {
    expect_keys(j, {"preset"}, ctx);
  } else if (r.preset == "custom") {
    expect_keys(j, {"preset", "x", "y", "z"}, ctx);
    if (j.contains("x")) r.x = trig_poly(j.at("x"), ctx + ".x");
    if (j.contains("y")) r.y = trig_poly(j.at("y"), ctx + ".y");
    if (j.contains("z")) r.z = trig_poly(j.at("z"), ctx + ".z");
  } else {
    throw ScenarioError("unknown ruling preset '" + r.preset + "'");
  }
  return r;
}

SurfaceSpec surface_spec(const json& j) {
  const std::string ctx = "surface";
  expect_keys(j, {"base", "ruling", "u_domain", "normalize_ruling"}, ctx);
  SurfaceSpec s;
  s.base = base_spec(req(j, "base", ctx));
  s.ruling = ruling_spec(req(j, "ruling", ctx));
  const json& dom = req(j, "u_domain", ctx);
  if (!dom.is_array() || dom.size() != 2)
    throw ScenarioError("surface.u_domain: expected [min, max]");
  s.u_min = num(dom[0], ctx + ".u_domain");
  s.u_max = num(dom[1], ctx + ".u_domain");
  if (!(s.u_max > s.u_min))
    throw ScenarioError("surface.u_domain: max must exceed min");
  if (j.contains("normalize_ruling"))
    s.normalize_ruling = j.at("normalize_ruling").get<bool>();
  return s;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("scenario JSON parse error: ") + e.what());
  }
  expect_keys(j,
              {"version", "name", "metric", "surface", "grids", "striction",
               "reconstruct", "outputs", "tolerances"},
              "scenario");
  Scenario s;
  const json& ver = req(j, "version", "scenario");
  if (!ver.is_number_integer() || ver.get<int>() != 1)
    throw ScenarioError("scenario version must be 1");
  if (j.contains("name")) s.name = j.at("name").get<std::string>();

  s.metric = metric_spec(req(j, "metric", "scenario"));
  s.surface = surface_spec(req(j, "surface", "scenario"));

  const json& grids = req(j, "grids", "scenario");
  expect_keys(grids, {"u", "v"}, "grids");
  s.ugrid = grid(req(grids, "u", "grids"), "grids.u");
  s.vgrid = grid(req(grids, "v", "grids"), "grids.v");

  if (j.contains("striction")) {
    const json& st = j.at("striction");
    expect_keys(st, {"v_min", "v_max", "coarse_samples"}, "striction");
    s.striction.present = true;
    s.striction.v_min = num(req(st, "v_min", "striction"), "striction.v_min");
    s.striction.v_max = num(req(st, "v_max", "striction"), "striction.v_max");
    if (!(s.striction.v_max > s.striction.v_min))
      throw ScenarioError("striction: v_max must exceed v_min");
    if (st.contains("coarse_samples")) {
      s.striction.coarse_samples = st.at("coarse_samples").get<int>();
      if (s.striction.coarse_samples < 8)
        throw ScenarioError("striction.coarse_samples: need at least 8");
    }
  } else {
    s.striction.v_min = s.vgrid.min;
    s.striction.v_max = s.vgrid.max;
  }

  if (j.contains("reconstruct")) {
    const json& rc = j.at("reconstruct");
    expect_keys(rc, {"invariants_csv", "p0", "frame", "u0", "u_begin", "u_end"},
                "reconstruct");
    s.reconstruct.present = true;
    s.reconstruct.invariants_csv =
        req(rc, "invariants_csv", "reconstruct").get<std::string>();
    s.reconstruct.p0 = vec3(req(rc, "p0", "reconstruct"), "reconstruct.p0");
    if (rc.contains("frame")) {
      const json& fr = rc.at("frame");
      if (!fr.is_array() || fr.size() != 3)
        throw ScenarioError("reconstruct.frame: expected 3 vectors");
      s.reconstruct.frame = {vec3(fr[0], "reconstruct.frame"),
                             vec3(fr[1], "reconstruct.frame"),
                             vec3(fr[2], "reconstruct.frame")};
    }
    s.reconstruct.u0 = num(req(rc, "u0", "reconstruct"), "reconstruct.u0");
    s.reconstruct.u_begin =
        num(req(rc, "u_begin", "reconstruct"), "reconstruct.u_begin");
    s.reconstruct.u_end =
        num(req(rc, "u_end", "reconstruct"), "reconstruct.u_end");
  }

  if (j.contains("outputs")) {
    const std::set<std::string> known{"mesh", "curvature", "invariants",
                                      "striction", "reconstruct"};
    for (const auto& o : j.at("outputs")) {
      const std::string name = o.get<std::string>();
      if (!known.count(name))
        throw ScenarioError("outputs: unknown artifact '" + name + "'");
      s.outputs.push_back(name);
    }
  }

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    expect_keys(t, {"step", "eps_root", "v_tol", "eps_touch"}, "tolerances");
    if (t.contains("step")) s.tol.step = num(t.at("step"), "tolerances.step");
    if (t.contains("eps_root"))
      s.tol.eps_root = num(t.at("eps_root"), "tolerances.eps_root");
    if (t.contains("v_tol"))
      s.tol.v_tol = num(t.at("v_tol"), "tolerances.v_tol");
    if (t.contains("eps_touch"))
      s.tol.eps_touch = num(t.at("eps_touch"), "tolerances.eps_touch");
    if (!(s.tol.step > 0.0))
      throw ScenarioError("tolerances.step must be positive");
  }
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ScenarioError(e.what());
  }
  return parse_scenario_text(text);
}

namespace {

const std::map<std::string, const char*>& builtin_texts() {
  static const std::map<std::string, const char*> texts{
      {"helicoid", R"({
  "version": 1,
  "name": "helicoid",
  "metric": {"preset": "euclidean"},
  "surface": {
    "base": {"preset": "line", "origin": [0.0, 0.0, 0.0], "direction": [0.0, 0.0, 1.0]},
    "ruling": {"preset": "custom", "x": {"cos": [[1.0, 1.0]]}, "y": {"sin": [[1.0, 1.0]]}, "z": {}},
    "u_domain": [0.0, 6.283185307179586],
    "normalize_ruling": true
  },
  "grids": {"u": {"min": 0.0, "max": 6.283185307179586, "count": 50},
            "v": {"min": -2.0, "max": 2.0, "count": 50}},
  "striction": {"v_min": -2.0, "v_max": 2.0, "coarse_samples": 64}
})"},
      {"cylinder", R"({
  "version": 1,
  "name": "cylinder",
  "metric": {"preset": "euclidean"},
  "surface": {
    "base": {"preset": "circle", "center": [0.0, 0.0, 0.0], "radius": 1.0, "plane": "xy"},
    "ruling": {"preset": "constant", "components": [0.0, 0.0, 1.0]},
    "u_domain": [0.0, 6.283185307179586],
    "normalize_ruling": true
  },
  "grids": {"u": {"min": 0.0, "max": 6.283185307179586, "count": 50},
            "v": {"min": 0.0, "max": 3.0, "count": 50}},
  "striction": {"v_min": 0.0, "v_max": 3.0, "coarse_samples": 64}
})"},
      {"sphere_tangent", R"({
  "version": 1,
  "name": "sphere_tangent",
  "metric": {"preset": "sphere", "k": 1.0},
  "surface": {
    "base": {"preset": "circle", "center": [0.0, 0.0, 0.0], "radius": 0.5, "plane": "xy"},
    "ruling": {"preset": "tangent"},
    "u_domain": [0.0, 6.283185307179586],
    "normalize_ruling": true
  },
  "grids": {"u": {"min": 0.0, "max": 6.283185307179586, "count": 50},
            "v": {"min": 0.05, "max": 3.0, "count": 50}},
  "striction": {"v_min": 0.05, "v_max": 3.0, "coarse_samples": 64}
})"},
      {"example1", R"({
  "version": 1,
  "name": "example1",
  "metric": {"preset": "halfspace", "k": -1.0},
  "surface": {
    "base": {"preset": "circle", "center": [0.0, 0.0, 1.0], "radius": 1.0, "plane": "xy"},
    "ruling": {"preset": "custom", "x": {"cos": [[1.0, 1.0]]}, "y": {"sin": [[1.0, 1.0]]}, "z": {}},
    "u_domain": [0.0, 6.283185307179586],
    "normalize_ruling": true
  },
  "grids": {"u": {"min": 0.0, "max": 6.283185307179586, "count": 50},
            "v": {"min": -5.0, "max": 5.0, "count": 50}},
  "striction": {"v_min": -5.0, "v_max": 5.0, "coarse_samples": 64}
})"},
      {"example2", R"({
  "version": 1,
  "name": "example2",
  "metric": {"preset": "revolution_product",
             "profile": {"poly": [2.0], "sin": [[1.0, 1.0]]},
             "w_weight": {"poly": [1.5], "cos": [[2.0, 0.5]]}},
  "surface": {
    "base": {"preset": "line", "origin": [0.0, 0.0, 0.0], "direction": [0.0, 1.0, 0.0]},
    "ruling": {"preset": "constant", "components": [0.0, 0.0, 1.0]},
    "u_domain": [0.0, 6.283185307179586],
    "normalize_ruling": true
  },
  "grids": {"u": {"min": 0.0, "max": 6.283185307179586, "count": 50},
            "v": {"min": 0.0, "max": 7.5, "count": 50}},
  "striction": {"v_min": 0.0, "v_max": 7.5, "coarse_samples": 64}
})"},
      {"example3", R"({
  "version": 1,
  "name": "example3",
  "metric": {"preset": "warped", "f": {"sin": [[1.0, 1.0]]}},
  "surface": {
    "base": {"preset": "circle", "center": [0.05, 0.0, 0.0], "radius": 1.0, "plane": "yz"},
    "ruling": {"preset": "constant", "components": [1.0, 0.0, 0.0]},
    "u_domain": [0.0, 6.283185307179586],
    "normalize_ruling": true
  },
  "grids": {"u": {"min": 0.0, "max": 6.283185307179586, "count": 50},
            "v": {"min": 0.1, "max": 2.8, "count": 50}},
  "striction": {"v_min": 0.1, "v_max": 3.0415926535897931, "coarse_samples": 64}
})"}};
  return texts;
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names{"helicoid",       "cylinder",
                                              "sphere_tangent", "example1",
                                              "example2",       "example3"};
  return names;
}

std::string builtin_scenario_text(const std::string& name) {
  const auto& texts = builtin_texts();
  const auto it = texts.find(name);
  if (it == texts.end())
    throw ScenarioError("unknown builtin scenario '" + name + "'");
  return it->second;
}

Scenario builtin_scenario(const std::string& name) {
  return parse_scenario_text(builtin_scenario_text(name));
}

ChartMetric build_metric(const MetricSpec& spec) {
  if (spec.preset == "euclidean") return euclidean_metric();
  if (spec.preset == "sphere") return sphere_metric(spec.k);
  if (spec.preset == "halfspace") return halfspace_metric(spec.k);
  if (spec.preset == "revolution_product")
    return revolution_product_metric(spec.profile, spec.w_weight);
  if (spec.preset == "warped") return warped_metric(spec.f);
  throw ScenarioError("unknown metric preset '" + spec.preset + "'");
}

namespace {

struct BaseCurve {
  std::function<Vec3(double)> pos, vel, acc;
};

BaseCurve build_base(const BaseSpec& b) {
  BaseCurve out;
  if (b.preset == "line") {
    const Vec3 o = b.origin, d = b.direction;
    out.pos = [o, d](double u) { return o + u * d; };
    out.vel = [d](double) { return d; };
    out.acc = [](double) { return Vec3(); };
    return out;
  }
  if (b.preset == "circle" || b.preset == "helix") {
    Vec3 e1(1, 0, 0), e2(0, 1, 0);
    Vec3 center = b.center;
    double r = b.radius, phase = b.phase, pitch = 0.0;
    if (b.preset == "helix") {
      center = Vec3();
      phase = 0.0;
      pitch = b.pitch;
    } else if (b.plane == "yz") {
      e1 = Vec3(0, 1, 0);
      e2 = Vec3(0, 0, 1);
    } else if (b.plane == "xz") {
      e1 = Vec3(1, 0, 0);
      e2 = Vec3(0, 0, 1);
    }
    const Vec3 axis = b.preset == "helix" ? Vec3(0, 0, pitch) : Vec3();
    out.pos = [center, r, phase, e1, e2, axis](double u) {
      return center + r * std::cos(u + phase) * e1 +
             r * std::sin(u + phase) * e2 + u * axis;
    };
    out.vel = [r, phase, e1, e2, axis](double u) {
      return -r * std::sin(u + phase) * e1 + r * std::cos(u + phase) * e2 +
             axis;
    };
    out.acc = [r, phase, e1, e2](double u) {
      return -r * std::cos(u + phase) * e1 - r * std::sin(u + phase) * e2;
    };
    return out;
  }
  // custom
  const TrigPoly x = b.x, y = b.y, z = b.z;
  const TrigPoly dx = x.derivative(), dy = y.derivative(), dz = z.derivative();
  const TrigPoly ddx = dx.derivative(), ddy = dy.derivative(),
                 ddz = dz.derivative();
  out.pos = [x, y, z](double u) { return Vec3(x(u), y(u), z(u)); };
  out.vel = [dx, dy, dz](double u) { return Vec3(dx(u), dy(u), dz(u)); };
  out.acc = [ddx, ddy, ddz](double u) { return Vec3(ddx(u), ddy(u), ddz(u)); };
  return out;
}

}  // namespace

RuledSurfaceSpec build_spec(const Scenario& scenario) {
  RuledSurfaceSpec spec;
  spec.metric = std::make_shared<ChartMetric>(build_metric(scenario.metric));
  const BaseCurve base = build_base(scenario.surface.base);
  spec.alpha.pos = base.pos;
  spec.alpha.vel = base.vel;

  const RulingSpec& r = scenario.surface.ruling;
  if (r.preset == "constant") {
    const Vec3 c = r.components;
    spec.ruling.val = [c](double) { return c; };
    spec.ruling.dval = [](double) { return Vec3(); };
  } else if (r.preset == "tangent") {
    spec.ruling.val = base.vel;
    spec.ruling.dval = base.acc;
  } else {
    const TrigPoly x = r.x, y = r.y, z = r.z;
    const TrigPoly dx = x.derivative(), dy = y.derivative(),
                   dz = z.derivative();
    spec.ruling.val = [x, y, z](double u) { return Vec3(x(u), y(u), z(u)); };
    spec.ruling.dval = [dx, dy, dz](double u) {
      return Vec3(dx(u), dy(u), dz(u));
    };
  }
  spec.u_min = scenario.surface.u_min;
  spec.u_max = scenario.surface.u_max;
  spec.normalize_ruling = scenario.surface.normalize_ruling;
  spec.name = scenario.name;
  return spec;
}

std::vector<double> scenario_ugrid(const Scenario& s) {
  return uniform_grid(s.ugrid.min, s.ugrid.max,
                      static_cast<std::size_t>(s.ugrid.count));
}

std::vector<double> scenario_vgrid(const Scenario& s) {
  return uniform_grid(s.vgrid.min, s.vgrid.max,
                      static_cast<std::size_t>(s.vgrid.count));
}

StrictionOptions scenario_striction_options(const Scenario& s) {
  StrictionOptions opt;
  opt.coarse_samples = s.striction.coarse_samples;
  opt.eps_root = s.tol.eps_root;
  opt.v_tol = s.tol.v_tol;
  opt.eps_touch = s.tol.eps_touch;
  opt.step = s.tol.step;
  return opt;
}

RuledSurfaceSpec resample_by_arclength(const RuledSurfaceSpec& spec,
                                       std::size_t quad_samples) {
  std::size_t n = quad_samples;
  if (n < 16) n = 16;
  if (n % 2) ++n;
  const double h = (spec.u_max - spec.u_min) / static_cast<double>(n);

  std::vector<double> speed(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double u = spec.u_min + h * static_cast<double>(i);
    speed[i] = spec.metric->norm(spec.alpha_pos(u), spec.alpha_vel(u));
  }
  // Composite Simpson gives arc length at the even nodes.
  std::vector<double> su, uu;
  su.reserve(n / 2 + 1);
  uu.reserve(n / 2 + 1);
  double s = 0.0;
  su.push_back(0.0);
  uu.push_back(spec.u_min);
  for (std::size_t i = 0; i + 2 <= n; i += 2) {
    s += h / 3.0 * (speed[i] + 4.0 * speed[i + 1] + speed[i + 2]);
    su.push_back(s);
    uu.push_back(spec.u_min + h * static_cast<double>(i + 2));
  }
  const CubicSpline u_of_s(su, uu);
  const double total = su.back();

  RuledSurfaceSpec out = spec;
  const RuledSurfaceSpec inner = spec;  // copy for the closures
  out.alpha.pos = [inner, u_of_s](double t) {
    return inner.alpha_pos(u_of_s(t));
  };
  out.alpha.vel = [inner, u_of_s](double t) {
    const double u = u_of_s(t);
    const Vec3 v = inner.alpha_vel(u);
    return v / inner.metric->norm(inner.alpha_pos(u), v);
  };
  out.ruling.val = [inner, u_of_s](double t) {
    return inner.ruling_raw(u_of_s(t));
  };
  out.ruling.dval = [inner, u_of_s](double t) {
    const double u = u_of_s(t);
    const Vec3 v = inner.alpha_vel(u);
    const double sp = inner.metric->norm(inner.alpha_pos(u), v);
    return inner.ruling_raw_du(u) / sp;
  };
  out.u_min = 0.0;
  out.u_max = total;
  out.name = spec.name + "_arclength";
  return out;
}

}  // namespace ruledgeo::io
