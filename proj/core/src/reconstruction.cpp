#include "ruledgeo/reconstruction.hpp"

#include <cmath>
#include <stdexcept>

#include "ruledgeo/integrate.hpp"
#include "ruledgeo/interp.hpp"

namespace ruledgeo {

namespace {

using detail::StateN;

// y = (x, X1, X2, X3)
StateN<12> frame_system_rhs(const ChartMetric& m,
                            const InvariantPrescription& presc,
                            const StateN<12>& y, double u) {
  const Vec3 x(y[0], y[1], y[2]);
  const Vec3 X1(y[3], y[4], y[5]);
  const Vec3 X2(y[6], y[7], y[8]);
  const Vec3 X3(y[9], y[10], y[11]);
  const double k1 = presc.kappa1(u);
  if (!(k1 > 0.0))
    throw NonPositiveKappa1("kappa1 must stay positive during reconstruction");
  const double k2 = presc.kappa2(u);
  const double th = presc.theta(u);
  const double ph = presc.phi(u);
  const Vec3 xdot = std::cos(ph) * std::cos(th) * X1 + std::sin(ph) * X2 +
                    std::cos(ph) * std::sin(th) * X3;
  const Christoffel c = m.christoffel_stage(x);
  auto gamma_term = [&](const Vec3& w) {
    Vec3 r;
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s += c.sym[i][j][k] * xdot[j] * w[k];
      r[i] = s;
    }
    return r;
  };
  const Vec3 d1 = k1 * X2 - gamma_term(X1);
  const Vec3 d2 = -k1 * X1 + k2 * X3 - gamma_term(X2);
  const Vec3 d3 = -k2 * X2 - gamma_term(X3);
  StateN<12> d;
  for (int i = 0; i < 3; ++i) {
    d[i] = xdot[i];
    d[3 + i] = d1[i];
    d[6 + i] = d2[i];
    d[9 + i] = d3[i];
  }
  return d;
}

void check_frame(const ChartMetric& m, const InvariantPrescription& presc) {
  const Vec3& p = presc.p0.coords;
  const Vec3 e[3] = {presc.frame0.X1.components, presc.frame0.X2.components,
                     presc.frame0.X3.components};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const double want = i == j ? 1.0 : 0.0;
      if (std::abs(m.inner(p, e[i], e[j]) - want) > 1e-10)
        throw GeometryError("initial frame is not orthonormal within 1e-10");
    }
  if (!(m.volume_form(p, e[0], e[1], e[2]) > 0.0))
    throw GeometryError("initial frame is not positively oriented");
}

}  // namespace

ReconstructedSurface reconstruct(const ChartMetric& m,
                                 const InvariantPrescription& presc,
                                 double step) {
  if (!(step > 0.0)) throw std::invalid_argument("reconstruct: step <= 0");
  if (presc.u0 < presc.u_begin - 1e-12 || presc.u0 > presc.u_end + 1e-12)
    throw std::invalid_argument("reconstruct: u0 outside [u_begin, u_end]");
  m.metric(presc.p0.coords);
  check_frame(m, presc);

  StateN<12> y0;
  for (int i = 0; i < 3; ++i) {
    y0[i] = presc.p0.coords[i];
    y0[3 + i] = presc.frame0.X1.components[i];
    y0[6 + i] = presc.frame0.X2.components[i];
    y0[9 + i] = presc.frame0.X3.components[i];
  }

  // The RK4 driver advances an autonomous state; u rides along as a 13th
  // component so the prescribed functions see the true parameter.
  struct Aug {
    const ChartMetric* m;
    const InvariantPrescription* presc;
    double dir;
    StateN<13> operator()(const StateN<13>& y) const {
      StateN<12> core;
      for (int i = 0; i < 12; ++i) core[i] = y[i];
      const StateN<12> d = frame_system_rhs(*m, *presc, core, y[12]);
      StateN<13> out;
      for (int i = 0; i < 12; ++i) out[i] = dir * d[i];
      out[12] = dir;
      return out;
    }
  };

  auto ok = [&m](const StateN<13>& y) {
    for (double c : y)
      if (!std::isfinite(c)) return false;
    return m.in_domain(Vec3(y[0], y[1], y[2]));
  };

  StateN<13> a0;
  for (int i = 0; i < 12; ++i) a0[i] = y0[i];
  a0[12] = presc.u0;

  const double span_fwd = presc.u_end - presc.u0;
  const double span_bwd = presc.u0 - presc.u_begin;

  const auto fdrive =
      detail::rk4_drive<13>(Aug{&m, &presc, +1.0}, ok, a0, span_fwd, step);
  const auto bdrive =
      detail::rk4_drive<13>(Aug{&m, &presc, -1.0}, ok, a0, span_bwd, step);

  ReconstructedSurface rec;
  rec.step = step;
  rec.exited_end = fdrive.exited;
  rec.exited_begin = bdrive.exited;
  rec.reached_end = presc.u0 + fdrive.reached;
  rec.reached_begin = presc.u0 - bdrive.reached;

  auto push = [&rec](const StateN<13>& y, double u) {
    rec.u.push_back(u);
    rec.alpha.push_back(Vec3(y[0], y[1], y[2]));
    rec.frame.push_back({Vec3(y[3], y[4], y[5]), Vec3(y[6], y[7], y[8]),
                         Vec3(y[9], y[10], y[11])});
  };
  for (std::size_t i = bdrive.samples.size(); i > 1; --i)
    push(bdrive.samples[i - 1],
         presc.u0 - step * static_cast<double>(i - 1));
  for (std::size_t i = 0; i < fdrive.samples.size(); ++i)
    push(fdrive.samples[i], presc.u0 + step * static_cast<double>(i));
  return rec;
}

double orthonormality_drift(const ChartMetric& m,
                            const ReconstructedSurface& rec) {
  double drift = 0.0;
  for (std::size_t s = 0; s < rec.u.size(); ++s) {
    const Vec3& p = rec.alpha[s];
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const double want = i == j ? 1.0 : 0.0;
        drift = std::max(
            drift, std::abs(m.inner(p, rec.frame[s][i], rec.frame[s][j]) -
                            want));
      }
  }
  return drift;
}

RuledSurfaceSpec spec_from_reconstruction(
    std::shared_ptr<const ChartMetric> metric,
    const ReconstructedSurface& rec) {
  if (rec.u.size() < 2)
    throw GeometryError("reconstruction too short to build a surface spec");
  std::array<CubicSpline, 3> pos, z1;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> pc(rec.u.size()), zc(rec.u.size());
    for (std::size_t i = 0; i < rec.u.size(); ++i) {
      pc[i] = rec.alpha[i][c];
      zc[i] = rec.frame[i][0][c];
    }
    pos[c] = CubicSpline(rec.u, pc);
    z1[c] = CubicSpline(rec.u, zc);
  }
  RuledSurfaceSpec spec;
  spec.metric = std::move(metric);
  spec.alpha.pos = [pos](double u) {
    return Vec3(pos[0](u), pos[1](u), pos[2](u));
  };
  spec.alpha.vel = [pos](double u) {
    return Vec3(pos[0].derivative(u), pos[1].derivative(u),
                pos[2].derivative(u));
  };
  spec.ruling.val = [z1](double u) {
    return Vec3(z1[0](u), z1[1](u), z1[2](u));
  };
  spec.ruling.dval = [z1](double u) {
    return Vec3(z1[0].derivative(u), z1[1].derivative(u),
                z1[2].derivative(u));
  };
  spec.u_min = rec.u.front();
  spec.u_max = rec.u.back();
  spec.normalize_ruling = true;
  spec.name = "reconstructed";
  return spec;
}

InvariantPrescription prescription_from_table(const InvariantTable& table,
                                              const ChartPoint& p0,
                                              const SanniaFrame& frame0,
                                              double u0, double u_begin,
                                              double u_end) {
  const std::size_t n = table.u.size();
  if (n < 2) throw std::invalid_argument("invariant table too short");
  for (double k0 : table.kappa0)
    if (std::abs(k0 - 1.0) > 1e-6)
      throw GeometryError(
          "reconstruction expects kappa0 = 1 (arc-length base, unit ruling)");
  std::vector<double> theta = table.theta;
  for (std::size_t i = 0; i < n; ++i)
    if (std::isnan(theta[i])) theta[i] = 0.0;

  const CubicSpline sk1(table.u, table.kappa1);
  const CubicSpline sk2(table.u, table.kappa2);
  const CubicSpline sth(table.u, theta);
  const CubicSpline sph(table.u, table.phi);

  InvariantPrescription presc;
  presc.u0 = u0;
  presc.u_begin = u_begin;
  presc.u_end = u_end;
  presc.kappa1 = [sk1](double u) { return sk1(u); };
  presc.kappa2 = [sk2](double u) { return sk2(u); };
  presc.theta = [sth](double u) { return sth(u); };
  presc.phi = [sph](double u) { return sph(u); };
  presc.p0 = p0;
  presc.frame0 = frame0;
  return presc;
}

}  // namespace ruledgeo
