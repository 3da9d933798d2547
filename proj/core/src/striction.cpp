#include "ruledgeo/striction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ruledgeo/interp.hpp"
#include "ruledgeo/parallel.hpp"
#include "ruledgeo/sannia.hpp"

namespace ruledgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNablaRStep = 1e-4;

double F_of_jet(const ChartMetric& m, const SurfaceJet& jet) {
  return m.inner(jet.point.coords, jet.DXu.components, jet.Xu.components);
}

// (∇_{ẋ}R)^i_jkl = d/dv R^i_jkl + ẋ^a (Γ^i_am R^m_jkl − Γ^m_aj R^i_mkl
//                  − Γ^m_ak R^i_jml − Γ^m_al R^i_jkm)
RiemannTensor covariant_riemann_derivative(const ChartMetric& m,
                                           const RulingTrace& trace,
                                           double v) {
  double dp = kNablaRStep, dm = kNablaRStep;
  if (v + dp > trace.reached_max()) dp = trace.reached_max() - v;
  if (v - dm < trace.reached_min()) dm = v - trace.reached_min();
  if (dp + dm < 1e-8)
    throw LeftChartDomain("no room to differentiate R along the ruling");
  const auto rp = trace.raw_at(v + dp);
  const auto rm = trace.raw_at(v - dm);
  const RiemannTensor Rp = m.riemann(Vec3(rp.y[0], rp.y[1], rp.y[2]));
  const RiemannTensor Rm = m.riemann(Vec3(rm.y[0], rm.y[1], rm.y[2]));
  const auto r0 = trace.raw_at(v);
  const Vec3 x(r0.y[0], r0.y[1], r0.y[2]);
  const Vec3 vel(r0.y[3], r0.y[4], r0.y[5]);
  const RiemannTensor R0 = m.riemann(x);
  const Christoffel c = m.christoffel(x);

  RiemannTensor out;
  const double denom = dp + dm;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double s = (Rp.comp[i][j][k][l] - Rm.comp[i][j][k][l]) / denom;
          for (int a = 0; a < 3; ++a)
            for (int q = 0; q < 3; ++q)
              s += vel[a] * (c.sym[i][a][q] * R0.comp[q][j][k][l] -
                             c.sym[q][a][j] * R0.comp[i][q][k][l] -
                             c.sym[q][a][k] * R0.comp[i][j][q][l] -
                             c.sym[q][a][l] * R0.comp[i][j][k][q]);
          out.comp[i][j][k][l] = s;
        }
  return out;
}

}  // namespace

double evaluate_F_value(const ChartMetric& m, const SurfaceJet& jet) {
  return F_of_jet(m, jet);
}

JacobiEvolutionSample evaluate_F(const RulingTrace& trace, double v) {
  const ChartMetric& m = trace.metric();
  const SurfaceJet jet = trace.jet_at(v);
  const Vec3& p = jet.point.coords;
  const Vec3& Xu = jet.Xu.components;
  const Vec3& Xv = jet.Xv.components;
  const Vec3& DXu = jet.DXu.components;
  const Mat3 g = m.metric(p);
  const RiemannTensor R = m.riemann(p);

  JacobiEvolutionSample s;
  s.u = jet.u;
  s.v = jet.v;
  s.F = edot(g * DXu, Xu);
  s.dFdv = -ChartMetric::riem(R, g, Xv, Xu, Xv, Xu) + edot(g * DXu, DXu);

  double nabla_term = 0.0;
  if (!m.tag().is_constant) {
    const RiemannTensor dR = covariant_riemann_derivative(m, trace, v);
    // ((∇R)(X_v, X_u, X_v))^i = (∇R)^i_jkl X_v^j X_v^k X_u^l
    Vec3 W;
    for (int i = 0; i < 3; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            acc += dR.comp[i][j][k][l] * Xv[j] * Xv[k] * Xu[l];
      W[i] = acc;
    }
    nabla_term = edot(g * W, Xu);
  }
  s.d2Fdv2 = nabla_term - 4.0 * ChartMetric::riem(R, g, Xv, Xu, Xv, DXu);
  return s;
}

JacobiEvolutionSample evaluate_F(const RuledSurfaceSpec& spec, double u,
                                 double v, double step) {
  const double lo = std::min(0.0, v - 2.0 * kNablaRStep);
  const double hi = std::max(0.0, v + 2.0 * kNablaRStep);
  const RulingTrace trace = ruling_sweep(spec, u, lo, hi, step);
  return evaluate_F(trace, v);
}

SpaceFormFCoefficients spaceform_coefficients(const RuledSurfaceSpec& spec,
                                              double u) {
  if (!spec.metric->tag().is_constant)
    throw GeometryError("space-form coefficients need a constant-curvature chart");
  if (!spec.normalize_ruling)
    throw GeometryError("space-form coefficients need a unit ruling");
  const double k = spec.metric->tag().k;
  const Vec3 p = spec.alpha_pos(u);
  const Vec3 ap = spec.alpha_vel(u);
  const Vec3 dz = spec.cov_deriv_ruling_effective(u);
  const double an = spec.metric->norm(p, ap);
  const double sigma = spec.base_angle(u);
  const double sin2 = std::sin(sigma) * std::sin(sigma);
  SpaceFormFCoefficients c;
  c.k = k;
  c.C1 = spec.metric->inner(p, dz, ap);
  c.D = -k * an * an * sin2 + spec.metric->inner(p, dz, dz);
  c.C2 = k != 0.0 ? c.D / std::sqrt(std::abs(4.0 * k)) : c.D;
  return c;
}

double spaceform_F(const SpaceFormFCoefficients& c, double v) {
  if (c.k > 0.0) {
    const double w = std::sqrt(4.0 * c.k);
    return c.C1 * std::cos(w * v) + c.C2 * std::sin(w * v);
  }
  if (c.k < 0.0) {
    const double w = std::sqrt(-4.0 * c.k);
    return c.C1 * std::cosh(w * v) + c.C2 * std::sinh(w * v);
  }
  return c.C1 + c.C2 * v;
}

SpaceFormStriction spaceform_striction_v(const SpaceFormFCoefficients& c) {
  constexpr double eps = 1e-12;
  SpaceFormStriction out;
  if (c.k > 0.0) {
    const double w = std::sqrt(4.0 * c.k);
    out.period = 2.0 * kPi / std::sqrt(c.k);
    if (std::abs(c.C1) < eps && std::abs(c.D) < eps) {
      out.kind = StrictionVerdictKind::Degenerate;
      return out;
    }
    // tan(w v) = −w C1 / D, read through atan2 so D = 0 lands on ±π/2.
    out.kind = StrictionVerdictKind::Found;
    out.v = std::atan2(-w * c.C1, c.D) / w;
    return out;
  }
  if (c.k == 0.0) {
    if (std::abs(c.C2) < eps) {
      out.kind = std::abs(c.C1) < eps ? StrictionVerdictKind::Degenerate
                                      : StrictionVerdictKind::NotFound;
      return out;
    }
    out.kind = StrictionVerdictKind::Found;
    out.v = -c.C1 / c.C2;
    return out;
  }
  const double w = std::sqrt(-4.0 * c.k);
  if (std::abs(c.D) < eps) {
    out.kind = std::abs(c.C1) < eps ? StrictionVerdictKind::Degenerate
                                    : StrictionVerdictKind::NotFound;
    return out;
  }
  out.arg = -w * c.C1 / c.D;
  if (std::abs(out.arg) >= 1.0) {
    out.kind = StrictionVerdictKind::NotFound;
    return out;
  }
  out.kind = StrictionVerdictKind::Found;
  out.v = std::atanh(out.arg) / w;
  return out;
}

namespace {

struct RulingScan {
  const RuledSurfaceSpec* spec;
  const StrictionOptions* opt;

  RulingStriction run(double u, double v_min, double v_max) const {
    RulingStriction rs;
    rs.u = u;
    const RulingTrace trace = ruling_sweep(*spec, u, std::min(0.0, v_min),
                                           std::max(0.0, v_max), opt->step);
    rs.v_lo = std::max(v_min, trace.reached_min());
    rs.v_hi = std::min(v_max, trace.reached_max());
    rs.truncated = rs.v_lo > v_min + 1e-9 || rs.v_hi < v_max - 1e-9;
    const int n = std::max(2, opt->coarse_samples);
    std::vector<double> vs(n), Fs(n);
    for (int i = 0; i < n; ++i) {
      vs[i] = rs.v_lo + (rs.v_hi - rs.v_lo) * static_cast<double>(i) /
                            static_cast<double>(n - 1);
      Fs[i] = F_of_jet(*spec->metric, trace.jet_at(vs[i]));
      rs.max_abs_F = std::max(rs.max_abs_F, std::abs(Fs[i]));
    }
    if (rs.max_abs_F < opt->eps_root) {
      rs.verdict = StrictionVerdictKind::Degenerate;
      return rs;
    }

    auto Fat = [&](double v) { return F_of_jet(*spec->metric, trace.jet_at(v)); };
    auto dFat = [&](double v) { return evaluate_F(trace, v).dFdv; };

    auto add_root = [&](double v, RootKind kind) {
      // Spherical charts: reduce modulo the geodesic period, dedupe.
      if (spec->metric->tag().is_constant && spec->metric->tag().k > 0.0) {
        const double period = 2.0 * kPi / std::sqrt(spec->metric->tag().k);
        for (const StrictionRoot& r : rs.roots) {
          const double d = std::remainder(r.v - v, period);
          if (std::abs(d) < 1e-8) return;
        }
      } else {
        for (const StrictionRoot& r : rs.roots)
          if (std::abs(r.v - v) < 1e-8) return;
      }
      StrictionRoot root;
      root.v = v;
      root.kind = kind;
      root.point = trace.jet_at(v).point.coords;
      rs.roots.push_back(root);
    };

    auto polish = [&](double a, double b, double fa) {
      while (b - a > opt->v_tol) {
        const double mid = 0.5 * (a + b);
        const double fm = Fat(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fa < 0.0) != (fm < 0.0))
          b = mid;
        else {
          a = mid;
          fa = fm;
        }
      }
      double v = 0.5 * (a + b);
      for (int it = 0; it < 3; ++it) {
        const double f = Fat(v);
        const double df = dFat(v);
        if (std::abs(df) < 1e-14) break;
        const double vn = v - f / df;
        if (vn < rs.v_lo || vn > rs.v_hi) break;
        v = vn;
      }
      return v;
    };

    for (int i = 0; i + 1 < n; ++i) {
      const double fa = Fs[i], fb = Fs[i + 1];
      if (fa == 0.0) {
        add_root(vs[i], RootKind::Crossing);
        continue;
      }
      if ((fa < 0.0) != (fb < 0.0)) {
        const double v = polish(vs[i], vs[i + 1], fa);
        if (std::abs(Fat(v)) < opt->eps_root) add_root(v, RootKind::Crossing);
      }
    }
    if (!Fs.empty() && Fs.back() == 0.0) add_root(vs.back(), RootKind::Crossing);

    // Even-multiplicity roots: interior minima of |F| without a sign change,
    // refined by driving dF/dv to zero.
    for (int i = 1; i + 1 < n; ++i) {
      if (!(std::abs(Fs[i]) <= std::abs(Fs[i - 1]) &&
            std::abs(Fs[i]) <= std::abs(Fs[i + 1])))
        continue;
      if ((Fs[i - 1] < 0.0) != (Fs[i + 1] < 0.0)) continue;  // handled above
      double a = vs[i - 1], b = vs[i + 1];
      double da = dFat(a), db = dFat(b);
      if ((da < 0.0) == (db < 0.0)) continue;
      while (b - a > opt->v_tol) {
        const double mid = 0.5 * (a + b);
        const double dm = dFat(mid);
        if (dm == 0.0) {
          a = b = mid;
          break;
        }
        if ((da < 0.0) != (dm < 0.0)) {
          b = mid;
          db = dm;
        } else {
          a = mid;
          da = dm;
        }
      }
      const double v = 0.5 * (a + b);
      if (std::abs(Fat(v)) < opt->eps_touch) add_root(v, RootKind::Tangential);
    }

    std::sort(rs.roots.begin(), rs.roots.end(),
              [](const StrictionRoot& a, const StrictionRoot& b) {
                return a.v < b.v;
              });
    rs.verdict = rs.roots.empty() ? StrictionVerdictKind::NotFound
                                  : StrictionVerdictKind::Found;
    return rs;
  }
};

}  // namespace

StrictionResult find_striction_numeric(const RuledSurfaceSpec& spec,
                                       const std::vector<double>& ugrid,
                                       double v_min, double v_max,
                                       const StrictionOptions& opt) {
  if (!spec.normalize_ruling)
    throw GeometryError("striction search requires a unit ruling field");
  if (!(v_min < v_max))
    throw std::invalid_argument("striction search needs v_min < v_max");

  StrictionResult result;
  result.per_u.resize(ugrid.size());
  const RulingScan scan{&spec, &opt};
  parallel_for(ugrid.size(), opt.threads, [&](std::size_t i) {
    result.per_u[i] = scan.run(ugrid[i], v_min, v_max);
  });

  // Branch assembly by v-continuity across consecutive u samples.
  const double jump_tol =
      2.0 * (v_max - v_min) / std::max(2, opt.coarse_samples);
  std::vector<double> branch_last_v;
  for (RulingStriction& rs : result.per_u) {
    std::vector<bool> claimed(branch_last_v.size(), false);
    for (StrictionRoot& root : rs.roots) {
      int best = -1;
      double best_d = jump_tol;
      for (std::size_t b = 0; b < branch_last_v.size(); ++b) {
        if (claimed[b]) continue;
        const double d = std::abs(branch_last_v[b] - root.v);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(b);
        }
      }
      if (best < 0) {
        branch_last_v.push_back(root.v);
        claimed.push_back(true);
        root.branch = static_cast<int>(branch_last_v.size()) - 1;
      } else {
        branch_last_v[static_cast<std::size_t>(best)] = root.v;
        claimed[static_cast<std::size_t>(best)] = true;
        root.branch = best;
      }
    }
  }
  result.branch_count = static_cast<int>(branch_last_v.size());
  return result;
}

std::vector<HyperbolicClassification> hyperbolic_nonexistence_classifier(
    const RuledSurfaceSpec& spec, const std::vector<double>& ugrid, double k,
    double eps_root, double eps_class) {
  if (!(k < 0.0))
    throw HypothesisViolated("classifier needs negative constant curvature");
  if (!spec.metric->tag().is_constant ||
      std::abs(spec.metric->tag().k - k) > 1e-12)
    throw HypothesisViolated("chart curvature tag does not match k");
  const double sk = std::sqrt(-k);

  std::vector<HyperbolicClassification> out;
  out.reserve(ugrid.size());
  for (double u : ugrid) {
    const Vec3 p = spec.alpha_pos(u);
    const Vec3 ap = spec.alpha_vel(u);
    const Vec3 z = spec.ruling_effective(u);
    if (std::abs(spec.metric->norm(p, ap) - 1.0) > 1e-7)
      throw HypothesisViolated("base curve is not arc-length at u=" +
                               std::to_string(u));
    if (std::abs(spec.metric->norm(p, z) - 1.0) > 1e-7)
      throw HypothesisViolated("ruling is not unit at u=" + std::to_string(u));
    if (std::abs(spec.metric->inner(p, ap, z)) > 1e-7)
      throw HypothesisViolated("ruling not orthogonal to the base at u=" +
                               std::to_string(u));

    HyperbolicClassification c;
    c.u = u;
    c.kext0 = curvature_report(spec, u, 0.0).K_ext;
    c.kappa1 = spec.metric->norm(p, spec.cov_deriv_ruling_effective(u));
    c.no_striction =
        std::abs(c.kext0) < eps_root && std::abs(c.kappa1 - sk) < eps_class;
    const SpaceFormStriction sf =
        spaceform_striction_v(spaceform_coefficients(spec, u));
    c.closed_form_agrees =
        c.no_striction == (sf.kind == StrictionVerdictKind::NotFound);
    out.push_back(c);
  }
  return out;
}

std::vector<RebaseSample> rebase_striction_branch(
    const RuledSurfaceSpec& spec, const std::vector<double>& us,
    const std::vector<double>& vroots, double step, double du) {
  if (us.size() != vroots.size() || us.size() < 2)
    throw std::invalid_argument("rebase needs matching u/v arrays (>= 2)");
  if (!spec.normalize_ruling)
    throw GeometryError("rebase check requires a unit ruling field");
  const ChartMetric& m = *spec.metric;
  const CubicSpline vstar(us, vroots);

  auto striction_state = [&](double u) {
    const double v = vstar(u);
    const RulingTrace trace =
        ruling_sweep(spec, u, std::min(0.0, v), std::max(0.0, v), step);
    return trace.jet_at(v);
  };

  constexpr double eps_gp = 1e-7;
  std::vector<RebaseSample> out;
  out.reserve(us.size());
  for (double u : us) {
    const SurfaceJet j0 = striction_state(u);
    const SurfaceJet jp = striction_state(u + du);
    const SurfaceJet jm = striction_state(u - du);
    const Vec3& p = j0.point.coords;
    const Vec3 sprime = (jp.point.coords - jm.point.coords) / (2.0 * du);
    const Vec3 dZdu = (jp.Xv.components - jm.Xv.components) / (2.0 * du);
    const TangentVec covdZ = covariant_derivative_along(
        m, j0.point, TangentVec{j0.point, sprime},
        TangentVec{j0.point, j0.Xv.components}, dZdu);

    RebaseSample rb;
    rb.u = u;
    rb.point = p;
    rb.dZ_full_norm = m.norm(p, covdZ.components);

    // Tangent plane along the striction curve is spanned by s′ and Z.
    const Vec3 e1 = j0.Xv.components;  // unit
    Vec3 e2 = sprime - m.inner(p, sprime, e1) * e1;
    const double e2n = m.norm(p, e2);
    Vec3 tang = m.inner(p, covdZ.components, e1) * e1;
    if (e2n > 1e-10) {
      e2 = e2 / e2n;
      tang += m.inner(p, covdZ.components, e2) * e2;
    }
    rb.dZ_tangential_norm = m.norm(p, tang);

    if (rb.dZ_full_norm >= eps_gp) {
      const Vec3 X2 = covdZ.components / rb.dZ_full_norm;
      const Vec3 shat = sprime / m.norm(p, sprime);
      rb.phi = std::asin(clamp_unit(m.inner(p, shat, X2)));
    } else {
      rb.parallel_degenerate = true;
      rb.phi = 0.0;
    }
    out.push_back(rb);
  }
  return out;
}

}  // namespace ruledgeo
