#include "ruledgeo/chart_metric.hpp"

namespace ruledgeo {

Mat3 ChartMetric::metric(const Vec3& p) const {
  if (!in_domain(p))
    throw PointOutsideDomain("point outside chart domain of '" + name_ + "'");
  Mat3 g = g_(p);
  if (!g.positive_definite())
    throw SingularMetric("metric '" + name_ +
                         "' is not positive definite at visited point");
  return g;
}

std::array<Mat3, 3> ChartMetric::partials_unchecked(const Vec3& p) const {
  if (dg_) return dg_(p);
  std::array<Mat3, 3> d;
  for (int m = 0; m < 3; ++m) {
    Vec3 pp = p, pm = p;
    pp[m] += h_fd;
    pm[m] -= h_fd;
    const Mat3 gp = g_(pp), gm = g_(pm);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        d[m](i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h_fd);
  }
  return d;
}

std::array<Mat3, 3> ChartMetric::metric_partials(const Vec3& p) const {
  if (dg_) return dg_(p);
  // Central differences of g; one-sided near the domain boundary.
  std::array<Mat3, 3> d;
  for (int m = 0; m < 3; ++m) {
    Vec3 pp = p, pm = p;
    pp[m] += h_fd;
    pm[m] -= h_fd;
    const bool okp = in_domain(pp), okm = in_domain(pm);
    if (okp && okm) {
      const Mat3 gp = g_(pp), gm = g_(pm);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          d[m](i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h_fd);
    } else if (okp || okm) {
      const double s = okp ? 1.0 : -1.0;
      Vec3 p1 = p, p2 = p;
      p1[m] += s * h_fd;
      p2[m] += 2.0 * s * h_fd;
      const Mat3 g0 = g_(p), g1 = g_(p1), g2 = g_(p2);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          d[m](i, j) =
              s * (-3.0 * g0(i, j) + 4.0 * g1(i, j) - g2(i, j)) / (2.0 * h_fd);
    } else {
      throw PointOutsideDomain("no room for finite differences of g in '" +
                               name_ + "'");
    }
  }
  return d;
}

Christoffel ChartMetric::christoffel_stage(const Vec3& p) const {
  const Mat3 ginv = g_(p).inverse();
  const std::array<Mat3, 3> dg = partials_unchecked(p);
  Christoffel c;
  // Γ^i_jk = ½ g^{il} (∂_j g_{lk} + ∂_k g_{jl} − ∂_l g_{jk})
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = j; k < 3; ++k) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l)
          s += ginv(i, l) * (dg[j](l, k) + dg[k](j, l) - dg[l](j, k));
        c.sym[i][j][k] = 0.5 * s;
        c.sym[i][k][j] = c.sym[i][j][k];
      }
  return c;
}

Christoffel ChartMetric::christoffel(const Vec3& p) const {
  metric(p);  // domain + positive-definiteness check
  return christoffel_stage(p);
}

// ∂_m Γ^i_jk = ½(∂_m g^{il}) S_ljk + ½ g^{il} ∂_m S_ljk with
// S_ljk = ∂_j g_lk + ∂_k g_jl − ∂_l g_jk and ∂_m g^{il} = −g^{ia} ∂_m g_ab g^{bl}.
void ChartMetric::dgamma_exact(const Vec3& p, Christoffel out[3]) const {
  const Mat3 ginv = g_(p).inverse();
  const std::array<Mat3, 3> dg = dg_(p);
  const std::array<std::array<Mat3, 3>, 3> d2 = d2g_(p);

  Mat3 dginv[3];
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int l = 0; l < 3; ++l) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            s -= ginv(i, a) * dg[m](a, b) * ginv(b, l);
        dginv[m](i, l) = s;
      }

  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = j; k < 3; ++k) {
          double s = 0.0;
          for (int l = 0; l < 3; ++l) {
            const double S = dg[j](l, k) + dg[k](j, l) - dg[l](j, k);
            const double dS =
                d2[m][j](l, k) + d2[m][k](j, l) - d2[m][l](j, k);
            s += dginv[m](i, l) * S + ginv(i, l) * dS;
          }
          out[m].sym[i][j][k] = 0.5 * s;
          out[m].sym[i][k][j] = out[m].sym[i][j][k];
        }
}

// R^i_jkl = ∂_k Γ^i_lj − ∂_l Γ^i_kj + Γ^i_km Γ^m_lj − Γ^i_lm Γ^m_kj
RiemannTensor ChartMetric::assemble_riemann(const Christoffel& c,
                                            const Christoffel dgamma[3]) const {
  RiemannTensor R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double s = dgamma[k].sym[i][l][j] - dgamma[l].sym[i][k][j];
          for (int m = 0; m < 3; ++m)
            s += c.sym[i][k][m] * c.sym[m][l][j] -
                 c.sym[i][l][m] * c.sym[m][k][j];
          R.comp[i][j][k][l] = s;
        }
  return R;
}

RiemannTensor ChartMetric::riemann_stage(const Vec3& p) const {
  const Christoffel c = christoffel_stage(p);
  Christoffel dgamma[3];
  if (d2g_) {
    dgamma_exact(p, dgamma);
    return assemble_riemann(c, dgamma);
  }
  const double h = dg_ ? h_gamma : h_gamma_fd;
  for (int m = 0; m < 3; ++m) {
    Vec3 pp = p, pm = p;
    pp[m] += h;
    pm[m] -= h;
    const Christoffel cp = christoffel_stage(pp);
    const Christoffel cm = christoffel_stage(pm);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          dgamma[m].sym[i][j][k] =
              (cp.sym[i][j][k] - cm.sym[i][j][k]) / (2.0 * h);
  }
  return assemble_riemann(c, dgamma);
}

RiemannTensor ChartMetric::riemann(const Vec3& p) const {
  metric(p);
  if (d2g_) return riemann_stage(p);
  const double h = dg_ ? h_gamma : h_gamma_fd;
  // ∂Γ needs in-domain neighbors on both sides; fall back to one-sided
  // differences at the chart boundary.
  bool central_ok = true;
  for (int m = 0; m < 3 && central_ok; ++m) {
    Vec3 pp = p, pm = p;
    pp[m] += h;
    pm[m] -= h;
    central_ok = in_domain(pp) && in_domain(pm);
  }
  if (central_ok) return riemann_stage(p);

  const Christoffel c = christoffel_stage(p);
  Christoffel dgamma[3];
  for (int m = 0; m < 3; ++m) {
    Vec3 pp = p, pm = p;
    pp[m] += h;
    pm[m] -= h;
    const bool okp = in_domain(pp), okm = in_domain(pm);
    if (okp && okm) {
      const Christoffel cp = christoffel_stage(pp);
      const Christoffel cm = christoffel_stage(pm);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            dgamma[m].sym[i][j][k] =
                (cp.sym[i][j][k] - cm.sym[i][j][k]) / (2.0 * h);
    } else if (okp || okm) {
      const double s = okp ? 1.0 : -1.0;
      Vec3 p1 = p, p2 = p;
      p1[m] += s * h;
      p2[m] += 2.0 * s * h;
      const Christoffel c1 = christoffel_stage(p1);
      const Christoffel c2 = christoffel_stage(p2);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            dgamma[m].sym[i][j][k] =
                s *
                (-3.0 * c.sym[i][j][k] + 4.0 * c1.sym[i][j][k] -
                 c2.sym[i][j][k]) /
                (2.0 * h);
    } else {
      throw PointOutsideDomain("no room for finite differences of Γ in '" +
                               name_ + "'");
    }
  }
  return assemble_riemann(c, dgamma);
}

Vec3 ChartMetric::curvature_op(const RiemannTensor& R, const Vec3& X,
                               const Vec3& Y, const Vec3& Z) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          s += R.comp[i][j][k][l] * Z[j] * X[k] * Y[l];
    out[i] = s;
  }
  return out;
}

double ChartMetric::riem(const RiemannTensor& R, const Mat3& g, const Vec3& A,
                         const Vec3& B, const Vec3& C, const Vec3& D) {
  return -edot(g * curvature_op(R, A, B, C), D);
}

double ChartMetric::riem(const Vec3& p, const Vec3& A, const Vec3& B,
                         const Vec3& C, const Vec3& D) const {
  return riem(riemann(p), metric(p), A, B, C, D);
}

double ChartMetric::sectional(const Vec3& p, const Vec3& X,
                              const Vec3& Y) const {
  const Mat3 g = metric(p);
  const double xx = edot(X, g * X);
  const double yy = edot(Y, g * Y);
  const double xy = edot(X, g * Y);
  const double gram = xx * yy - xy * xy;
  if (!(gram > eps_lin * xx * yy))
    throw DegeneratePlane("sectional curvature of a degenerate plane");
  return riem(riemann(p), g, X, Y, X, Y) / gram;
}

double ChartMetric::volume_form(const Vec3& p, const Vec3& A, const Vec3& B,
                                const Vec3& C) const {
  return volume_density(p) * det3(A, B, C);
}

Vec3 ChartMetric::metric_cross(const Vec3& p, const Vec3& A,
                               const Vec3& B) const {
  const Mat3 g = metric(p);
  const Vec3 w = ecross(A, B) * std::sqrt(g.det());
  return g.inverse() * w;
}

TangentVec covariant_derivative_along(const ChartMetric& m,
                                      const ChartPoint& curve_point,
                                      const TangentVec& curve_velocity,
                                      const TangentVec& field_value,
                                      const Vec3& field_derivative) {
  const Christoffel c = m.christoffel(curve_point.coords);
  Vec3 out = field_derivative;
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        s += c.sym[i][j][k] * curve_velocity.components[j] *
             field_value.components[k];
    out[i] += s;
  }
  return TangentVec{curve_point, out};
}

std::array<Vec3, 3> orthonormalize(const ChartMetric& m, const Vec3& p,
                                   const std::array<Vec3, 3>& basis) {
  std::array<Vec3, 3> e = basis;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < i; ++j) e[i] -= m.inner(p, e[i], e[j]) * e[j];
    const double n = m.norm(p, e[i]);
    if (n < 1e-13)
      throw DegeneratePlane("orthonormalization of a degenerate basis");
    e[i] = e[i] / n;
  }
  return e;
}

}  // namespace ruledgeo
