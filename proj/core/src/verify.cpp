#include "ruledgeo/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ruledgeo/csv.hpp"
#include "ruledgeo/geodesic.hpp"
#include "ruledgeo/oracles.hpp"
#include "ruledgeo/reconstruction.hpp"
#include "ruledgeo/scenario.hpp"
#include "ruledgeo/striction.hpp"

namespace ruledgeo::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed-seed uniform draws independent of the standard library's
// distribution implementations.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * unit(); }
};

std::string fmt(double x) { return io::fmt17(x); }

RuledSurfaceSpec builtin_spec(const std::string& name) {
  return io::build_spec(io::builtin_scenario(name));
}

TrigPoly random_trig(Rng& rng, double base, double amp, int max_freq) {
  TrigPoly t;
  t.poly = {base};
  for (int f = 1; f <= max_freq; ++f) {
    t.cosines.emplace_back(static_cast<double>(f), rng.uniform(-amp, amp));
    t.sines.emplace_back(static_cast<double>(f), rng.uniform(-amp, amp));
  }
  return t;
}

enum class Chart { euclid, sphere, halfspace, product, warped };

std::shared_ptr<const ChartMetric> chart_metric(Chart c) {
  switch (c) {
    case Chart::euclid:
      return std::make_shared<ChartMetric>(euclidean_metric());
    case Chart::sphere:
      return std::make_shared<ChartMetric>(sphere_metric(1.0));
    case Chart::halfspace:
      return std::make_shared<ChartMetric>(halfspace_metric(-1.0));
    case Chart::product: {
      TrigPoly rho;
      rho.poly = {2.0};
      rho.sines = {{1.0, 0.4}};
      return std::make_shared<ChartMetric>(
          revolution_product_metric(rho, std::nullopt));
    }
    case Chart::warped: {
      TrigPoly f;
      f.poly = {2.0};
      f.sines = {{1.0, 0.3}};
      return std::make_shared<ChartMetric>(warped_metric(f));
    }
  }
  throw std::logic_error("unreachable");
}

Vec3 chart_center(Chart c) {
  // The sphere window sits near the chart equator so the sampled great
  // circles stay far from the projection pole (|x| stays moderate).
  if (c == Chart::halfspace) return Vec3(0, 0, 1);
  if (c == Chart::sphere) return Vec3(1.5, 0, 0);
  return Vec3();
}

// Random smooth base curve + unit ruling, kept inside a safe window of the
// chart; rejection keeps the curve regular and the rulings bounded.
RuledSurfaceSpec random_spec(Chart c, Rng& rng, double v_span) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    RuledSurfaceSpec spec;
    spec.metric = chart_metric(c);
    spec.u_min = 0.0;
    spec.u_max = 2.0 * kPi;
    spec.normalize_ruling = true;
    spec.name = "random";

    const Vec3 center = chart_center(c);
    double amp = c == Chart::sphere ? 0.25 : 0.3;
    TrigPoly cx = random_trig(rng, center[0], amp, 2);
    TrigPoly cy = random_trig(rng, center[1], amp, 2);
    TrigPoly cz = random_trig(rng, center[2], c == Chart::halfspace ? 0.08 : amp, 2);
    const TrigPoly dcx = cx.derivative(), dcy = cy.derivative(),
                   dcz = cz.derivative();
    spec.alpha.pos = [cx, cy, cz](double u) {
      return Vec3(cx(u), cy(u), cz(u));
    };
    spec.alpha.vel = [dcx, dcy, dcz](double u) {
      return Vec3(dcx(u), dcy(u), dcz(u));
    };

    TrigPoly zx = random_trig(rng, rng.uniform(-1, 1), 0.4, 2);
    TrigPoly zy = random_trig(rng, rng.uniform(-1, 1), 0.4, 2);
    TrigPoly zz = random_trig(rng, rng.uniform(-1, 1), 0.4, 2);
    const TrigPoly dzx = zx.derivative(), dzy = zy.derivative(),
                   dzz = zz.derivative();
    spec.ruling.val = [zx, zy, zz](double u) {
      return Vec3(zx(u), zy(u), zz(u));
    };
    spec.ruling.dval = [dzx, dzy, dzz](double u) {
      return Vec3(dzx(u), dzy(u), dzz(u));
    };

    bool ok = true;
    for (int i = 0; i < 24 && ok; ++i) {
      const double u = spec.u_min + (spec.u_max - spec.u_min) * i / 24.0;
      const Vec3 p = spec.alpha_pos(u);
      if (!spec.metric->in_domain(p)) {
        ok = false;
        break;
      }
      if (spec.metric->norm(p, spec.alpha_vel(u)) < 0.05) ok = false;
      if (spec.metric->norm(p, spec.ruling_raw(u)) < 0.3) ok = false;
    }
    if (!ok) continue;

    // Orbit safety on curved charts: keep the sampled rulings well inside.
    if (c == Chart::sphere || c == Chart::halfspace) {
      const SpaceFormTag tag = c == Chart::sphere
                                   ? SpaceFormTag::sphere(1.0)
                                   : SpaceFormTag::hyperbolic(-1.0);
      for (int i = 0; i < 8 && ok; ++i) {
        const double u = spec.u_min + (spec.u_max - spec.u_min) * i / 8.0;
        const ChartPoint p{spec.alpha_pos(u)};
        const TangentVec Z{p, spec.ruling_effective(u)};
        for (double v = 0.0; v <= v_span + 1e-12 && ok; v += 0.25) {
          GeodesicState g;
          try {
            g = oracle_geodesic(tag, p, Z, v);
          } catch (const ChartSingularity&) {
            ok = false;
            break;
          }
          if (c == Chart::sphere && enorm(g.x) > 10.0) ok = false;
          if (c == Chart::halfspace && g.x[2] < 0.03) ok = false;
        }
      }
      if (!ok) continue;
    }
    return spec;
  }
  throw std::runtime_error("random_spec: rejection sampling did not converge");
}

// ---------------------------------------------------------------- criteria

CriterionResult c1_kext_nonpositive(unsigned threads) {
  CriterionResult r{1, "K_ext non-positivity on the bundled surfaces", true, ""};
  double worst = -1e300;
  std::string worst_name;
  for (const std::string& name : io::builtin_scenario_names()) {
    const io::Scenario sc = io::builtin_scenario(name);
    const RuledSurfaceSpec spec = io::build_spec(sc);
    const MeshGrid mesh = build_mesh(spec, io::scenario_ugrid(sc),
                                     io::scenario_vgrid(sc), sc.tol.step,
                                     threads);
    for (const MeshVertex& vert : mesh.verts) {
      if (!vert.valid || !vert.rank2) continue;
      if (vert.kext > worst) {
        worst = vert.kext;
        worst_name = name;
      }
    }
  }
  r.passed = worst <= 1e-9;
  r.detail = "max K_ext = " + fmt(worst) + " (" + worst_name +
             "), bound 1e-9 over 6 surfaces, 50x50 grids";
  return r;
}

CriterionResult c2_ruling_constancy(unsigned threads) {
  (void)threads;
  CriterionResult r{2, "g(X_u,X_v) constant along rulings", true, ""};
  Rng rng(20240811);
  const Chart kinds[5] = {Chart::euclid, Chart::sphere, Chart::halfspace,
                          Chart::product, Chart::warped};
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const RuledSurfaceSpec spec = random_spec(kinds[s % 5], rng, 3.0);
    const double u = rng.uniform(0.5, 5.5);
    const RulingTrace trace = ruling_sweep(spec, u, 0.0, 3.0, 1e-3);
    const Vec3 p = spec.alpha_pos(u);
    const double g0 =
        spec.metric->inner(p, spec.alpha_vel(u), spec.ruling_effective(u));
    for (double v = 0.0; v <= std::min(3.0, trace.reached_max()); v += 0.05) {
      const SurfaceJet jet = trace.jet_at(v);
      const double g = spec.metric->inner(jet.point.coords, jet.Xu.components,
                                          jet.Xv.components);
      worst = std::max(worst, std::abs(g - g0));
    }
  }
  r.passed = worst < 1e-7;
  r.detail = "max drift = " + fmt(worst) + ", bound 1e-7, 20 random specs";
  return r;
}

struct SpaceFormRun {
  Chart chart;
  double k;
};

const SpaceFormRun kSpaceForms[3] = {{Chart::sphere, 1.0},
                                     {Chart::euclid, 0.0},
                                     {Chart::halfspace, -1.0}};

CriterionResult c3_closed_form_F(unsigned threads) {
  (void)threads;
  CriterionResult r{3, "closed-form F agreement in space forms", true, ""};
  Rng rng(117);
  double worst = 0.0;
  for (const SpaceFormRun& run : kSpaceForms) {
    for (int s = 0; s < 10; ++s) {
      const RuledSurfaceSpec spec = random_spec(run.chart, rng, 3.0);
      const double u = rng.uniform(0.5, 5.5);
      const SpaceFormFCoefficients co = spaceform_coefficients(spec, u);
      const RulingTrace trace = ruling_sweep(spec, u, 0.0, 3.0, 1e-3);
      for (double v = 0.0; v <= std::min(3.0, trace.reached_max());
           v += 0.05) {
        const double Fn = evaluate_F_value(*spec.metric, trace.jet_at(v));
        worst = std::max(worst, std::abs(Fn - spaceform_F(co, v)));
      }
    }
  }
  r.passed = worst < 1e-6;
  r.detail = "sup |F_num - F_closed| = " + fmt(worst) +
             ", bound 1e-6, 10 setups per k in {+1,0,-1}";
  return r;
}

CriterionResult c4_F_ode(unsigned threads) {
  (void)threads;
  CriterionResult r{4, "F'' = -4kF along space-form rulings", true, ""};
  Rng rng(512);
  double worst = 0.0;
  for (const SpaceFormRun& run : kSpaceForms) {
    for (int s = 0; s < 10; ++s) {
      const RuledSurfaceSpec spec = random_spec(run.chart, rng, 3.0);
      const double u = rng.uniform(0.5, 5.5);
      const RulingTrace trace = ruling_sweep(spec, u, 0.0, 3.0, 1e-3);
      for (double v = 0.0; v <= std::min(3.0, trace.reached_max());
           v += 0.25) {
        const JacobiEvolutionSample s2 = evaluate_F(trace, v);
        worst = std::max(worst, std::abs(s2.d2Fdv2 + 4.0 * run.k * s2.F));
      }
    }
  }
  r.passed = worst < 1e-6;
  r.detail = "sup |F'' + 4kF| = " + fmt(worst) + ", bound 1e-6";
  return r;
}

CriterionResult c5_example1(unsigned threads) {
  CriterionResult r{5, "example1: F = cosh2v+sinh2v, no striction", true, ""};
  const io::Scenario sc = io::builtin_scenario("example1");
  const RuledSurfaceSpec spec = io::build_spec(sc);

  double worstF = 0.0;
  for (double u : {0.0, 1.3, 2.7, 4.1, 5.5}) {
    const RulingTrace trace = ruling_sweep(spec, u, -5.0, 5.0, 1e-3);
    for (double v = -5.0; v <= 5.0; v += 0.25) {
      const double Fn = evaluate_F_value(*spec.metric, trace.jet_at(v));
      worstF = std::max(worstF,
                        std::abs(Fn - (std::cosh(2 * v) + std::sinh(2 * v))));
    }
  }

  StrictionOptions opt = io::scenario_striction_options(sc);
  opt.threads = threads;
  const std::vector<double> ugrid = uniform_grid(0.0, 2.0 * kPi, 9);
  const StrictionResult sr =
      find_striction_numeric(spec, ugrid, -5.0, 5.0, opt);
  bool none = true;
  for (const RulingStriction& rs : sr.per_u)
    none = none && rs.verdict == StrictionVerdictKind::NotFound;

  const auto cls = hyperbolic_nonexistence_classifier(spec, ugrid, -1.0);
  double worst_kext = 0.0, worst_k1 = 0.0;
  bool all_no = true, all_agree = true;
  for (const auto& c : cls) {
    worst_kext = std::max(worst_kext, std::abs(c.kext0));
    worst_k1 = std::max(worst_k1, std::abs(c.kappa1 - 1.0));
    all_no = all_no && c.no_striction;
    all_agree = all_agree && c.closed_form_agrees;
  }

  r.passed = worstF < 1e-6 && none && all_no && all_agree &&
             worst_kext < 1e-8 && worst_k1 < 1e-6;
  r.detail = "sup F err = " + fmt(worstF) + ", NotFound everywhere = " +
             (none ? "yes" : "no") + ", |K_ext| = " + fmt(worst_kext) +
             ", |kappa1-1| = " + fmt(worst_k1);
  return r;
}

CriterionResult c6_example2(unsigned threads) {
  CriterionResult r{6, "example2: striction circles and F formula", true, ""};
  const io::Scenario sc = io::builtin_scenario("example2");
  const RuledSurfaceSpec spec = io::build_spec(sc);

  StrictionOptions opt = io::scenario_striction_options(sc);
  opt.threads = threads;
  const std::vector<double> ugrid = uniform_grid(0.0, 2.0 * kPi, 12);
  const StrictionResult sr = find_striction_numeric(
      spec, ugrid, sc.striction.v_min, sc.striction.v_max, opt);

  bool roots_ok = true;
  double worst_root = 0.0;
  for (const RulingStriction& rs : sr.per_u) {
    if (rs.roots.size() != 2) {
      roots_ok = false;
      continue;
    }
    const double w1 = rs.roots[0].point[2];
    const double w2 = rs.roots[1].point[2];
    worst_root = std::max(worst_root, std::abs(w1 - kPi / 2));
    worst_root = std::max(worst_root, std::abs(w2 - 3 * kPi / 2));
  }
  roots_ok = roots_ok && worst_root < 1e-6;

  // F through the profile coordinate: v(w) = 1.5 w + 0.25 sin 2w.
  double worstF = 0.0;
  for (double u : {0.5, 2.0, 4.5}) {
    const RulingTrace trace = ruling_sweep(spec, u, 0.0, 7.5, 1e-3);
    for (double w = 0.0; w <= 2.0 * kPi; w += 0.05) {
      const double v = 1.5 * w + 0.25 * std::sin(2.0 * w);
      if (v > trace.reached_max()) break;
      const double Fn = evaluate_F_value(*spec.metric, trace.jet_at(v));
      const double Fw = std::cos(w) * (2.0 + std::sin(w)) /
                        (1.0 + std::cos(w) * std::cos(w));
      worstF = std::max(worstF, std::abs(Fn - Fw));
    }
  }

  r.passed = roots_ok && worstF < 1e-6;
  r.detail = "max |w_root - (pi/2, 3pi/2)| = " + fmt(worst_root) +
             ", sup F err = " + fmt(worstF) + ", bounds 1e-6";
  return r;
}

CriterionResult c7_example3(unsigned threads) {
  CriterionResult r{7, "example3: striction at the profile equator", true, ""};
  const io::Scenario sc = io::builtin_scenario("example3");
  const RuledSurfaceSpec spec = io::build_spec(sc);
  StrictionOptions opt = io::scenario_striction_options(sc);
  opt.threads = threads;
  const std::vector<double> ugrid = uniform_grid(0.0, 2.0 * kPi, 9);
  const StrictionResult sr = find_striction_numeric(
      spec, ugrid, 0.1, kPi - 0.1, opt);
  double worst = 1e300;
  bool ok = true;
  for (const RulingStriction& rs : sr.per_u) {
    if (rs.roots.empty()) {
      ok = false;
      continue;
    }
    double best = 1e300;
    for (const StrictionRoot& root : rs.roots)
      best = std::min(best, std::abs(root.point[0] - kPi / 2));
    worst = worst == 1e300 ? best : std::max(worst, best);
    ok = ok && best < 1e-6;
  }
  r.passed = ok;
  r.detail = "max |t_root - pi/2| = " + fmt(worst) + ", bound 1e-6";
  return r;
}

CriterionResult c8_euclid_striction(unsigned threads) {
  CriterionResult r{8, "Euclidean striction formula", true, ""};
  const RuledSurfaceSpec hel = builtin_spec("helicoid");

  double worst_v = 0.0, worst_lambda = 0.0;
  for (double u : uniform_grid(0.0, 2.0 * kPi, 7)) {
    const SpaceFormStriction sv =
        spaceform_striction_v(spaceform_coefficients(hel, u));
    if (sv.kind != StrictionVerdictKind::Found) {
      r.passed = false;
      continue;
    }
    worst_v = std::max(worst_v, std::abs(sv.v));
    const CurvatureReport rep = curvature_report(hel, u, 0.0);
    worst_lambda = std::max(worst_lambda, std::abs(rep.lambda - 1.0));
  }

  Rng rng(90210);
  StrictionOptions opt;
  opt.threads = threads;
  double worst_match = 0.0;
  int found = 0;
  for (int s = 0; s < 10; ++s) {
    RuledSurfaceSpec spec;
    double u = 0.0, vstar = 0.0;
    for (int attempt = 0; attempt < 100; ++attempt) {
      spec = random_spec(Chart::euclid, rng, 0.0);
      u = rng.uniform(0.5, 5.5);
      const SpaceFormFCoefficients co = spaceform_coefficients(spec, u);
      const SpaceFormStriction sv = spaceform_striction_v(co);
      if (sv.kind == StrictionVerdictKind::Found && std::abs(sv.v) <= 4.0 &&
          co.C2 > 0.05) {
        vstar = sv.v;
        ++found;
        break;
      }
      if (attempt == 99) throw std::runtime_error("no euclid striction draw");
    }
    const StrictionResult sr =
        find_striction_numeric(spec, {u}, -5.0, 5.0, opt);
    double best = 1e300;
    for (const StrictionRoot& root : sr.per_u[0].roots)
      best = std::min(best, std::abs(root.v - vstar));
    worst_match = std::max(worst_match, best);
  }

  r.passed = r.passed && worst_v < 1e-10 && worst_lambda < 1e-6 &&
             worst_match < 1e-8 && found == 10;
  r.detail = "helicoid |v*| = " + fmt(worst_v) + ", |lambda-1| = " +
             fmt(worst_lambda) + ", closed-vs-numeric = " + fmt(worst_match) +
             " (bounds 1e-10, 1e-6, 1e-8)";
  return r;
}

struct RoundTrip {
  double sup_err = 0.0;       // over the whole grid
  double sup_interior = 0.0;  // away from the one-sided edge stencils
  double drift = 0.0;
};

RoundTrip round_trip(const ChartMetric& m, const InvariantPrescription& presc,
                     double step) {
  const ReconstructedSurface rec = reconstruct(m, presc, step);
  RoundTrip out;
  out.drift = orthonormality_drift(m, rec);
  std::vector<Vec3> Z(rec.u.size());
  for (std::size_t i = 0; i < rec.u.size(); ++i) Z[i] = rec.frame[i][0];
  const SanniaInvariants inv =
      sannia_invariants_from_samples(m, rec.u, rec.alpha, Z);
  for (std::size_t i = 0; i < inv.size(); ++i) {
    const double u = inv.u[i];
    double e = std::abs(inv.kappa1[i] - presc.kappa1(u));
    e = std::max(e, std::abs(inv.kappa2[i] - presc.kappa2(u)));
    e = std::max(e, std::abs(inv.phi[i] - presc.phi(u)));
    if (inv.theta_defined[i])
      e = std::max(
          e, std::abs(std::remainder(inv.theta[i] - presc.theta(u), 2.0 * kPi)));
    out.sup_err = std::max(out.sup_err, e);
    if (i >= 4 && i + 4 < inv.size())
      out.sup_interior = std::max(out.sup_interior, e);
  }
  return out;
}

CriterionResult c9_reconstruction(unsigned threads) {
  (void)threads;
  CriterionResult r{9, "reconstruction round trip + 4th-order convergence",
                    true, ""};
  Rng rng(424242);
  double worst_err = 0.0, worst_drift = 0.0;
  double err1 = 0.0, err2 = 0.0, drift1 = 0.0, drift2 = 0.0;

  for (const SpaceFormRun& run : kSpaceForms) {
    const auto metric = chart_metric(run.chart);
    const Vec3 p0 = chart_center(run.chart);
    const ChartPoint cp{p0};
    const auto axes = orthonormalize(
        *metric, p0, {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
    const SanniaFrame frame{TangentVec{cp, axes[0]}, TangentVec{cp, axes[1]},
                            TangentVec{cp, axes[2]}};
    for (int s = 0; s < 5; ++s) {
      InvariantPrescription presc;
      presc.u0 = 0.0;
      presc.u_begin = 0.0;
      presc.u_end = 1.0;
      presc.p0 = cp;
      presc.frame0 = frame;
      const double b1 = rng.uniform(1.0, 1.5), a1 = rng.uniform(0.25, 0.45);
      const double f1 = rng.uniform(8.0, 11.0), p1 = rng.uniform(0, 2 * kPi);
      const double a2 = rng.uniform(0.5, 1.0), f2 = rng.uniform(8.0, 11.0),
                   p2 = rng.uniform(0, 2 * kPi);
      const double a3 = rng.uniform(0.5, 0.9), f3 = rng.uniform(8.0, 11.0),
                   p3 = rng.uniform(0, 2 * kPi);
      const double a4 = rng.uniform(0.4, 0.8), f4 = rng.uniform(8.0, 11.0),
                   p4 = rng.uniform(0, 2 * kPi);
      presc.kappa1 = [=](double u) { return b1 + a1 * std::sin(f1 * u + p1); };
      presc.kappa2 = [=](double u) { return a2 * std::sin(f2 * u + p2); };
      presc.theta = [=](double u) { return a3 * std::sin(f3 * u + p3); };
      presc.phi = [=](double u) { return a4 * std::cos(f4 * u + p4); };

      const RoundTrip rt1 = round_trip(*metric, presc, 1e-3);
      worst_err = std::max(worst_err, rt1.sup_err);
      worst_drift = std::max(worst_drift, rt1.drift);
      if (s == 0) {
        // Convergence order measured on the interior samples (pure central
        // stencils) and aggregated across the space forms; the flat chart
        // alone sits at the roundoff floor.
        const RoundTrip rt2 = round_trip(*metric, presc, 5e-4);
        err1 = std::max(err1, rt1.sup_interior);
        err2 = std::max(err2, rt2.sup_interior);
        drift1 = std::max(drift1, rt1.drift);
        drift2 = std::max(drift2, rt2.drift);
      }
    }
  }

  const double ratio_err = err1 / err2;
  const double ratio_drift = drift1 / drift2;
  const bool ratios_ok = ratio_err >= 8.0 && ratio_err <= 32.0 &&
                         ratio_drift >= 8.0 && ratio_drift <= 32.0;
  r.passed = worst_err < 1e-4 && worst_drift < 1e-8 && ratios_ok;
  r.detail = "sup invariant err = " + fmt(worst_err) + " (<1e-4), drift = " +
             fmt(worst_drift) + " (<1e-8), step-halving ratios: err " +
             fmt(ratio_err) + ", drift " + fmt(ratio_drift) + " (in [8,32])";
  return r;
}

CriterionResult c10_rebase(unsigned threads) {
  CriterionResult r{10, "striction re-basing: phi and parallel rulings", true,
                    ""};
  const io::Scenario sc = io::builtin_scenario("example2");
  const RuledSurfaceSpec spec = io::build_spec(sc);
  StrictionOptions opt = io::scenario_striction_options(sc);
  opt.threads = threads;
  const std::vector<double> ugrid = uniform_grid(0.0, 2.0 * kPi, 16);
  const StrictionResult sr = find_striction_numeric(
      spec, ugrid, sc.striction.v_min, sc.striction.v_max, opt);

  std::vector<double> us, vroots;
  for (const RulingStriction& rs : sr.per_u)
    for (const StrictionRoot& root : rs.roots)
      if (root.branch == 0) {
        us.push_back(rs.u);
        vroots.push_back(root.v);
      }
  if (us.size() != ugrid.size()) {
    r.passed = false;
    r.detail = "striction branch 0 incomplete";
    return r;
  }
  const auto rebase = rebase_striction_branch(spec, us, vroots);
  double worst_phi = 0.0, worst_tan = 0.0;
  for (const RebaseSample& s : rebase) {
    worst_phi = std::max(worst_phi, std::abs(s.phi));
    worst_tan = std::max(worst_tan, s.dZ_tangential_norm);
  }
  r.passed = worst_phi < 1e-5 && worst_tan < 1e-5;
  r.detail = "max |phi| = " + fmt(worst_phi) + ", max tangential |dZ| = " +
             fmt(worst_tan) + ", bounds 1e-5";
  return r;
}

CriterionResult c11_integrator_fidelity(unsigned threads) {
  (void)threads;
  CriterionResult r{11, "geodesic and Jacobi integrators vs oracles", true,
                    ""};
  Rng rng(31337);
  double worst_geo = 0.0, worst_jac = 0.0;

  for (const SpaceFormRun& run : kSpaceForms) {
    const auto metric = chart_metric(run.chart);
    const SpaceFormTag tag = run.k > 0   ? SpaceFormTag::sphere(run.k)
                             : run.k < 0 ? SpaceFormTag::hyperbolic(run.k)
                                         : SpaceFormTag::euclidean();
    for (int s = 0; s < 3; ++s) {
      const RuledSurfaceSpec spec = random_spec(run.chart, rng, 3.0);
      const double u = rng.uniform(0.5, 5.5);
      const ChartPoint p{spec.alpha_pos(u)};
      const TangentVec Z{p, spec.ruling_effective(u)};
      const GeodesicTrace trace = exp_map(*metric, p, Z, 3.0, 1e-3);
      for (double v = 0.0; v <= 3.0; v += 0.05) {
        const GeodesicState a = trace.state_at(v);
        const GeodesicState b = oracle_geodesic(tag, p, Z, v);
        worst_geo = std::max(worst_geo, enorm(a.x - b.x));
      }

      Vec3 J0(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      Vec3 DJ0(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      const double a0 = metric->inner(p.coords, J0, Z.components);
      const double b0 = metric->inner(p.coords, DJ0, Z.components);
      const Vec3 J0p = J0 - a0 * Z.components;
      const Vec3 DJ0p = DJ0 - b0 * Z.components;
      const double jn = metric->norm(p.coords, J0p);
      const double djn = metric->norm(p.coords, DJ0p);
      const double jd = metric->inner(p.coords, J0p, DJ0p);
      const auto jac = integrate_jacobi(*metric, trace, J0, DJ0);
      for (std::size_t i = 0; i < jac.size(); i += 50) {
        const double v = jac[i].geo.arc;
        const double num = metric->norm(jac[i].geo.x, jac[i].J);
        const double want = oracle_jacobi_norm(tag, a0, b0, jn, v, djn, jd);
        worst_jac = std::max(worst_jac, std::abs(num - want));
      }
    }
  }

  // S³(1): a great circle away from the projection pole closes after 2π.
  const auto sphere = chart_metric(Chart::sphere);
  const ChartPoint p{Vec3(1, 0, 0)};
  const TangentVec Z{p, Vec3(0, 1.25, 0)};
  const GeodesicTrace loop = exp_map(*sphere, p, Z, 2.0 * kPi, 1e-3);
  const double closure = enorm(loop.state_at(2.0 * kPi).x - p.coords);

  r.passed = worst_geo < 1e-7 && worst_jac < 1e-6 && closure < 1e-6;
  r.detail = "geo sup err = " + fmt(worst_geo) + " (<1e-7), jacobi norm err = " +
             fmt(worst_jac) + " (<1e-6), S3 closure = " + fmt(closure) +
             " (<1e-6)";
  return r;
}

using CriterionFn = CriterionResult (*)(unsigned);

const CriterionFn kCriteria[] = {
    c1_kext_nonpositive, c2_ruling_constancy, c3_closed_form_F,
    c4_F_ode,            c5_example1,         c6_example2,
    c7_example3,         c8_euclid_striction, c9_reconstruction,
    c10_rebase,          c11_integrator_fidelity};

}  // namespace

int criterion_count() { return static_cast<int>(std::size(kCriteria)); }

CriterionResult run_criterion(int id, unsigned threads) {
  if (id < 1 || id > criterion_count())
    throw std::out_of_range("criterion id out of range");
  try {
    return kCriteria[id - 1](threads);
  } catch (const std::exception& e) {
    return CriterionResult{id, "criterion " + std::to_string(id), false,
                           std::string("exception: ") + e.what()};
  }
}

std::vector<CriterionResult> run_acceptance(unsigned threads) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count(); ++id)
    out.push_back(run_criterion(id, threads));
  return out;
}

}  // namespace ruledgeo::verify
