#include "ruledgeo/ruled_surface.hpp"

#include <cmath>
#include <stdexcept>

#include "ruledgeo/parallel.hpp"

namespace ruledgeo {

namespace {

using detail::StateN;

struct JointRhs {
  const ChartMetric* m;
  StateN<12> operator()(const StateN<12>& y) const {
    const Vec3 x(y[0], y[1], y[2]);
    const Vec3 vel(y[3], y[4], y[5]);
    const Vec3 J(y[6], y[7], y[8]);
    const Vec3 DJ(y[9], y[10], y[11]);
    const Christoffel c = m->christoffel_stage(x);
    const RiemannTensor R = m->riemann_stage(x);
    const Vec3 RJvv = ChartMetric::curvature_op(R, J, vel, vel);
    StateN<12> d{};
    for (int i = 0; i < 3; ++i) {
      double acc = 0.0, gJ = 0.0, gDJ = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          acc += c.sym[i][j][k] * vel[j] * vel[k];
          gJ += c.sym[i][j][k] * vel[j] * J[k];
          gDJ += c.sym[i][j][k] * vel[j] * DJ[k];
        }
      d[i] = vel[i];
      d[3 + i] = -acc;
      d[6 + i] = DJ[i] - gJ;
      d[9 + i] = -gDJ - RJvv[i];
    }
    return d;
  }
};

struct JointRhsNeg {
  JointRhs rhs;
  StateN<12> operator()(const StateN<12>& y) const {
    StateN<12> d = rhs(y);
    for (double& c : d) c = -c;
    return d;
  }
};

bool joint_ok(const ChartMetric& m, const StateN<12>& y) {
  for (double c : y)
    if (!std::isfinite(c)) return false;
  return m.in_domain(Vec3(y[0], y[1], y[2]));
}

}  // namespace

Vec3 RuledSurfaceSpec::alpha_vel(double u) const {
  if (alpha.vel) return alpha.vel(u);
  return (alpha.pos(u + fd_step) - alpha.pos(u - fd_step)) / (2.0 * fd_step);
}

Vec3 RuledSurfaceSpec::ruling_raw_du(double u) const {
  if (ruling.dval) return ruling.dval(u);
  return (ruling.val(u + fd_step) - ruling.val(u - fd_step)) / (2.0 * fd_step);
}

double RuledSurfaceSpec::kappa0(double u) const {
  const double n = metric->norm(alpha_pos(u), ruling_raw(u));
  if (!(n > eps_reg))
    throw GeometryError("ruling field vanishes at u=" + std::to_string(u));
  return n;
}

Vec3 RuledSurfaceSpec::ruling_effective(double u) const {
  const Vec3 z = ruling_raw(u);
  return normalize_ruling ? z / kappa0(u) : z;
}

Vec3 RuledSurfaceSpec::cov_deriv_ruling_raw(double u) const {
  const Vec3 p = alpha_pos(u);
  const Vec3 ap = alpha_vel(u);
  if (!(metric->norm(p, ap) > eps_reg))
    throw GeometryError("base curve not regular at u=" + std::to_string(u));
  const TangentVec d = covariant_derivative_along(
      *metric, ChartPoint{p}, TangentVec{ChartPoint{p}, ap},
      TangentVec{ChartPoint{p}, ruling_raw(u)}, ruling_raw_du(u));
  return d.components;
}

Vec3 RuledSurfaceSpec::cov_deriv_ruling_effective(double u) const {
  const Vec3 dz = cov_deriv_ruling_raw(u);
  if (!normalize_ruling) return dz;
  // ∇(Z/κ₀) = ∇Z/κ₀ − (dκ₀/du) Z/κ₀², dκ₀/du = g(∇Z, Z)/κ₀
  const Vec3 p = alpha_pos(u);
  const Vec3 z = ruling_raw(u);
  const double k0 = kappa0(u);
  const double dk0 = metric->inner(p, dz, z) / k0;
  return dz / k0 - (dk0 / (k0 * k0)) * z;
}

double RuledSurfaceSpec::base_angle(double u) const {
  const Vec3 p = alpha_pos(u);
  const Vec3 ap = alpha_vel(u);
  const Vec3 z = ruling_effective(u);
  const double c = metric->inner(p, ap, z) /
                   (metric->norm(p, ap) * metric->norm(p, z));
  return std::acos(clamp_unit(c));
}

RulingTrace::Raw RulingTrace::raw_at(double v) const {
  if (v > reached_max_ + 1e-9 || v < reached_min_ - 1e-9)
    throw LeftChartDomain("ruling parameter beyond the integrated range");
  if (v > reached_max_) v = reached_max_;
  if (v < reached_min_) v = reached_min_;

  const JointRhs rhs{metric_.get()};
  if (v >= 0.0) {
    auto i = static_cast<std::size_t>(std::floor(v / step_ + 1e-9));
    if (i >= fwd_.size()) i = fwd_.size() - 1;
    const double h = v - step_ * static_cast<double>(i);
    if (std::abs(h) < 1e-13) return Raw{fwd_[i], v};
    return Raw{detail::rk4_step(rhs, fwd_[i], h), v};
  }
  // bwd_[j] sits at v = −(j+1)·step.
  auto j = static_cast<std::size_t>(std::floor(-v / step_ + 1e-9));
  if (j > bwd_.size()) j = bwd_.size();
  const double h = v + step_ * static_cast<double>(j);
  const StateN<12>& base = j == 0 ? fwd_[0] : bwd_[j - 1];
  if (std::abs(h) < 1e-13) return Raw{base, v};
  return Raw{detail::rk4_step(rhs, base, h), v};
}

SurfaceJet RulingTrace::jet_at(double v) const {
  const Raw r = raw_at(v);
  SurfaceJet jet;
  jet.u = u_;
  jet.v = r.v;
  jet.point = ChartPoint{Vec3(r.y[0], r.y[1], r.y[2])};
  jet.Xu = TangentVec{jet.point, Vec3(r.y[6], r.y[7], r.y[8])};
  jet.Xv = TangentVec{jet.point, Vec3(r.y[3], r.y[4], r.y[5])};
  jet.DXu = TangentVec{jet.point, Vec3(r.y[9], r.y[10], r.y[11])};
  const Mat3 g = metric_->metric(jet.point.coords);
  const double uu = edot(jet.Xu.components, g * jet.Xu.components);
  const double vv = edot(jet.Xv.components, g * jet.Xv.components);
  const double uv = edot(jet.Xu.components, g * jet.Xv.components);
  jet.rank2 = (uu * vv - uv * uv) > eps_lin * uu * vv;
  return jet;
}

RulingTrace ruling_sweep(const RuledSurfaceSpec& spec, double u, double v_min,
                         double v_max, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("ruling_sweep: step <= 0");
  if (v_min > v_max) std::swap(v_min, v_max);

  RulingTrace t;
  t.metric_ = spec.metric;
  t.u_ = u;
  t.step_ = step;

  const Vec3 p = spec.alpha_pos(u);
  spec.metric->metric(p);  // domain check at the base point
  const Vec3 ap = spec.alpha_vel(u);
  if (!(spec.metric->norm(p, ap) > spec.eps_reg))
    throw GeometryError("base curve not regular at u=" + std::to_string(u));
  const Vec3 z = spec.ruling_effective(u);
  const Vec3 dz = spec.cov_deriv_ruling_effective(u);

  StateN<12> y0{p[0],  p[1],  p[2],  z[0],  z[1],  z[2],
                ap[0], ap[1], ap[2], dz[0], dz[1], dz[2]};

  const ChartMetric* m = spec.metric.get();
  const JointRhs rhs{m};
  auto ok = [m](const StateN<12>& y) { return joint_ok(*m, y); };

  const double fwd_span = v_max > 0.0 ? v_max : 0.0;
  const double bwd_span = v_min < 0.0 ? -v_min : 0.0;

  auto fdrive = detail::rk4_drive<12>(rhs, ok, y0, fwd_span, step);
  t.fwd_ = std::move(fdrive.samples);
  t.reached_max_ = fdrive.reached;
  t.exited_max_ = fdrive.exited;

  if (bwd_span > 0.0) {
    auto bdrive =
        detail::rk4_drive<12>(JointRhsNeg{rhs}, ok, y0, bwd_span, step);
    t.bwd_.assign(bdrive.samples.begin() + 1, bdrive.samples.end());
    t.reached_min_ = -bdrive.reached;
    t.exited_min_ = bdrive.exited;
  }
  return t;
}

SurfaceJet evaluate_jet(const RuledSurfaceSpec& spec, double u, double v,
                        double step) {
  const RulingTrace t =
      ruling_sweep(spec, u, std::min(0.0, v), std::max(0.0, v), step);
  return t.jet_at(v);
}

CurvatureReport curvature_report(const ChartMetric& m, const SurfaceJet& jet,
                                 double eps_reg) {
  if (!jet.rank2)
    throw RankDeficientPlane("curvature report at a rank-deficient jet");
  const Vec3& p = jet.point.coords;
  const Vec3& Xu = jet.Xu.components;
  const Vec3& Xv = jet.Xv.components;
  const Vec3& DXu = jet.DXu.components;
  const Mat3 g = m.metric(p);
  const double uu = edot(Xu, g * Xu);
  const double vv = edot(Xv, g * Xv);
  const double uv = edot(Xu, g * Xv);
  const double gram = uu * vv - uv * uv;

  CurvatureReport rep;
  rep.rank2 = true;
  rep.K_ambient = m.sectional(p, Xu, Xv);
  const double vol = m.volume_form(p, Xu, Xv, DXu);
  rep.K_ext = -(vol * vol) / (gram * gram);
  rep.K_intrinsic = rep.K_ambient + rep.K_ext;
  const double dn2 = edot(DXu, g * DXu);
  if (dn2 > eps_reg * eps_reg) {
    rep.lambda = vol / dn2;
    rep.lambda_defined = true;
  }
  rep.sigma = std::acos(clamp_unit(uv / std::sqrt(uu * vv)));
  rep.h_uv = vol / std::sqrt(gram);
  return rep;
}

CurvatureReport curvature_report(const RuledSurfaceSpec& spec, double u,
                                 double v, double step) {
  return curvature_report(*spec.metric, evaluate_jet(spec, u, v, step),
                          spec.eps_reg);
}

double ruling_angle(const RuledSurfaceSpec& spec, double u, double v,
                    double step) {
  if (!spec.normalize_ruling)
    throw GeometryError("ruling_angle requires a unit ruling field");
  const SurfaceJet jet = evaluate_jet(spec, u, v, step);
  const Vec3 p0 = spec.alpha_pos(u);
  const double an = spec.metric->norm(p0, spec.alpha_vel(u));
  const double sigma_p = spec.base_angle(u);
  const double xun = spec.metric->norm(jet.point.coords, jet.Xu.components);
  if (!(xun > spec.eps_reg))
    throw RankDeficientPlane("ruling_angle: ‖X_u‖ vanishes");
  return std::acos(clamp_unit(an * std::cos(sigma_p) / xun));
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g;
  if (count == 0) return g;
  if (count == 1) {
    g.push_back(lo);
    return g;
  }
  g.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    g.push_back(lo + (hi - lo) * static_cast<double>(i) /
                         static_cast<double>(count - 1));
  return g;
}

MeshGrid build_mesh(const RuledSurfaceSpec& spec,
                    const std::vector<double>& ugrid,
                    const std::vector<double>& vgrid, double step,
                    unsigned threads) {
  MeshGrid mesh;
  mesh.us = ugrid;
  mesh.vs = vgrid;
  mesh.verts.resize(ugrid.size() * vgrid.size());
  double vlo = 0.0, vhi = 0.0;
  for (double v : vgrid) {
    vlo = std::min(vlo, v);
    vhi = std::max(vhi, v);
  }
  parallel_for(ugrid.size(), threads, [&](std::size_t iu) {
    const RulingTrace trace = ruling_sweep(spec, ugrid[iu], vlo, vhi, step);
    for (std::size_t iv = 0; iv < vgrid.size(); ++iv) {
      MeshVertex& vert = mesh.verts[iu * vgrid.size() + iv];
      const double v = vgrid[iv];
      if (v > trace.reached_max() + 1e-9 || v < trace.reached_min() - 1e-9) {
        vert.valid = false;
        continue;
      }
      const SurfaceJet jet = trace.jet_at(v);
      vert.point = jet.point.coords;
      vert.valid = true;
      vert.rank2 = jet.rank2;
      if (jet.rank2) {
        const CurvatureReport rep =
            curvature_report(*spec.metric, jet, spec.eps_reg);
        vert.kext = rep.K_ext;
        vert.lambda = rep.lambda;
        vert.lambda_defined = rep.lambda_defined;
        vert.sigma = rep.sigma;
      } else {
        vert.kext = std::nan("");
        vert.lambda = std::nan("");
        vert.sigma = std::nan("");
      }
    }
  });
  return mesh;
}

}  // namespace ruledgeo
