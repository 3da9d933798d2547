#include "ruledgeo/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace ruledgeo {

SpaceFormTag SpaceFormTag::sphere(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("sphere tag needs k > 0");
  return {k, SpaceFormChart::stereographic};
}

SpaceFormTag SpaceFormTag::hyperbolic(double k) {
  if (!(k < 0.0)) throw std::invalid_argument("hyperbolic tag needs k < 0");
  return {k, SpaceFormChart::halfspace};
}

namespace {

// Half-space model with g = (1/(−k)) z⁻² δ. Horizontal initial velocities
// traverse semicircles x = ξc + R tanh τ, z = R sech τ with τ = v√(−k).
GeodesicState halfspace_geodesic(double k, const Vec3& p0, const Vec3& z0,
                                 double v) {
  const double sk = std::sqrt(-k);
  const double rc = 1.0 / sk;  // √c with c = 1/(−k)
  const double z = p0[2];
  const Vec3 h(z0[0], z0[1], 0.0);
  const double hn = enorm(h);
  if (hn < 1e-14) {
    // Vertical line, z(v) = z e^{±v√(−k)}.
    const double s = z0[2] > 0.0 ? 1.0 : -1.0;
    const double zz = z * std::exp(s * sk * v);
    return GeodesicState{Vec3(p0[0], p0[1], zz), Vec3(0.0, 0.0, s * sk * zz),
                         v};
  }
  const Vec3 hdir = h / hn;
  const double tanh0 = -rc * z0[2] / z;
  const double tau0 = std::atanh(tanh0);
  const double R = z * std::cosh(tau0);
  const double tau = tau0 + v * sk;
  const double sech = 1.0 / std::cosh(tau);
  const double xi = R * (std::tanh(tau) - std::tanh(tau0));
  const Vec3 x = Vec3(p0[0], p0[1], 0.0) + xi * hdir +
                 Vec3(0.0, 0.0, R * sech);
  // dξ/dv = R sech²(τ) √(−k), dz/dv = −R sech τ tanh τ √(−k)
  const Vec3 vel = (R * sech * sech * sk) * hdir +
                   Vec3(0.0, 0.0, -R * sech * std::tanh(tau) * sk);
  return GeodesicState{x, vel, v};
}

// Stereographic chart of S³(k): x = (2/√k) y with y the radius-one
// stereographic coordinate; internally the great circle is propagated on the
// unit sphere in R⁴ and projected back.
GeodesicState sphere_geodesic(double k, const Vec3& p0, const Vec3& z0,
                              double v) {
  const double sk = std::sqrt(k);
  const Vec3 y = p0 * (sk / 2.0);
  const double r2 = edot(y, y);
  const double denom = 1.0 + r2;
  // Embedding X = (2y, r²−1)/(1+r²); dX(w) computed directly.
  const Vec3 X3 = y * (2.0 / denom);
  const double X4 = (r2 - 1.0) / denom;
  auto embed_tangent = [&](const Vec3& w) {
    const double yw = edot(y, w);
    const Vec3 t3 = (w * (2.0 / denom)) - y * (4.0 * yw / (denom * denom));
    const double t4 = yw * 2.0 / denom - (r2 - 1.0) * 2.0 * yw /
                      (denom * denom);
    return std::pair<Vec3, double>(t3, t4);
  };
  // Chart velocity → y-velocity → R⁴ tangent of euclidean norm √k · ‖Z‖_g.
  const Vec3 wy = z0 * (sk / 2.0);
  auto [V3, V4] = embed_tangent(wy);
  // Unit-speed circle in arc of the k-metric: σ = v√k, |V| = √k for g-unit Z.
  const double Vn = std::sqrt(edot(V3, V3) + V4 * V4);
  const Vec3 U3 = V3 / Vn;
  const double U4 = V4 / Vn;
  const double sigma = v * Vn;  // = v√k when Z is g-unit
  const double cs = std::cos(sigma), sn = std::sin(sigma);
  const Vec3 G3 = X3 * cs + U3 * sn;
  const double G4 = X4 * cs + U4 * sn;
  const Vec3 dG3 = (U3 * cs - X3 * sn) * Vn;
  const double dG4 = (U4 * cs - X4 * sn) * Vn;
  if (1.0 - G4 < 1e-12)
    throw ChartSingularity("geodesic reached the stereographic antipode");
  const Vec3 ynew = G3 / (1.0 - G4);
  const Vec3 dynew = dG3 / (1.0 - G4) + G3 * (dG4 / ((1.0 - G4) * (1.0 - G4)));
  return GeodesicState{ynew * (2.0 / sk), dynew * (2.0 / sk), v};
}

}  // namespace

GeodesicState oracle_geodesic(const SpaceFormTag& tag, const ChartPoint& p,
                              const TangentVec& Z, double v) {
  switch (tag.chart) {
    case SpaceFormChart::euclidean:
      return GeodesicState{p.coords + v * Z.components, Z.components, v};
    case SpaceFormChart::halfspace:
      return halfspace_geodesic(tag.k, p.coords, Z.components, v);
    case SpaceFormChart::stereographic:
      return sphere_geodesic(tag.k, p.coords, Z.components, v);
  }
  throw std::logic_error("unreachable");
}

double oracle_jacobi_norm(const SpaceFormTag& tag, double a, double b,
                          double jperp0_norm, double v, double djperp0_norm,
                          double jperp0_dot_djperp0) {
  // J⊥(v) = A(v) P(J0⊥) + B(v) P(DJ0⊥) in a parallel frame, with
  // A = cos(√k v), B = sin(√k v)/√k for k>0; cosh/sinh for k<0; 1, v for k=0.
  double A = 1.0, B = v;
  if (tag.k > 0.0) {
    const double s = std::sqrt(tag.k);
    A = std::cos(s * v);
    B = std::sin(s * v) / s;
  } else if (tag.k < 0.0) {
    const double s = std::sqrt(-tag.k);
    A = std::cosh(s * v);
    B = std::sinh(s * v) / s;
  }
  const double perp2 = A * A * jperp0_norm * jperp0_norm +
                       2.0 * A * B * jperp0_dot_djperp0 +
                       B * B * djperp0_norm * djperp0_norm;
  const double tan = a + b * v;
  return std::sqrt(tan * tan + perp2);
}

}  // namespace ruledgeo
