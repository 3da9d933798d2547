#include "ruledgeo/presets.hpp"

#include <cmath>

namespace ruledgeo {

double TrigPoly::operator()(double u) const {
  double s = 0.0, up = 1.0;
  for (double c : poly) {
    s += c * up;
    up *= u;
  }
  for (const auto& [w, a] : cosines) s += a * std::cos(w * u);
  for (const auto& [w, b] : sines) s += b * std::sin(w * u);
  return s;
}

TrigPoly TrigPoly::derivative() const {
  TrigPoly d;
  for (std::size_t n = 1; n < poly.size(); ++n)
    d.poly.push_back(static_cast<double>(n) * poly[n]);
  for (const auto& [w, a] : cosines) d.sines.emplace_back(w, -a * w);
  for (const auto& [w, b] : sines) d.cosines.emplace_back(w, b * w);
  return d;
}

using D2 = std::array<std::array<Mat3, 3>, 3>;

ChartMetric euclidean_metric() {
  ChartMetric m(
      "euclidean", [](const Vec3&) { return Mat3::identity(); },
      [](const Vec3&) { return std::array<Mat3, 3>{}; }, nullptr,
      CurvatureTag::constant(0.0));
  m.set_second_partials([](const Vec3&) { return D2{}; });
  return m;
}

ChartMetric sphere_metric(double k) {
  // g = λ² δ with λ = 1/(1 + (k/4)|x|²); ∂_m g = −k x_m λ³ δ;
  // ∂_n ∂_m g = (−k λ³ δ_mn + (3k²/2) x_m x_n λ⁴) δ.
  auto lam = [k](const Vec3& p) { return 1.0 / (1.0 + 0.25 * k * edot(p, p)); };
  auto g = [lam](const Vec3& p) {
    const double l = lam(p);
    return Mat3::identity() * (l * l);
  };
  auto dg = [k, lam](const Vec3& p) {
    const double l3 = std::pow(lam(p), 3);
    std::array<Mat3, 3> d;
    for (int m = 0; m < 3; ++m) d[m] = Mat3::identity() * (-k * p[m] * l3);
    return d;
  };
  auto d2g = [k, lam](const Vec3& p) {
    const double l = lam(p);
    const double l3 = l * l * l, l4 = l3 * l;
    D2 d;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        const double diag = (m == n ? -k * l3 : 0.0) +
                            1.5 * k * k * p[m] * p[n] * l4;
        d[m][n] = Mat3::identity() * diag;
      }
    return d;
  };
  // Coordinate cap: the chart formally covers all of ℝ³, but runaway
  // coordinates near the missing antipode are reported as a chart exit.
  auto dom = [](const Vec3& p) { return edot(p, p) < 1e12; };
  ChartMetric m("sphere", g, dg, dom, CurvatureTag::constant(k));
  m.set_second_partials(d2g);
  return m;
}

ChartMetric halfspace_metric(double k) {
  const double c = 1.0 / (-k);
  auto g = [c](const Vec3& p) {
    return Mat3::identity() * (c / (p[2] * p[2]));
  };
  auto dg = [c](const Vec3& p) {
    std::array<Mat3, 3> d;
    d[2] = Mat3::identity() * (-2.0 * c / (p[2] * p[2] * p[2]));
    return d;
  };
  auto d2g = [c](const Vec3& p) {
    D2 d;
    const double z = p[2];
    d[2][2] = Mat3::identity() * (6.0 * c / (z * z * z * z));
    return d;
  };
  auto dom = [](const Vec3& p) { return p[2] > 0.0; };
  ChartMetric m("halfspace", g, dg, dom, CurvatureTag::constant(k));
  m.set_second_partials(d2g);
  return m;
}

ChartMetric revolution_product_metric(
    const TrigPoly& profile, const std::optional<TrigPoly>& w_weight) {
  const TrigPoly rho = profile;
  const TrigPoly drho = rho.derivative();
  const TrigPoly ddrho = drho.derivative();
  if (w_weight) {
    const TrigPoly m = *w_weight;
    const TrigPoly dm = m.derivative();
    const TrigPoly ddm = dm.derivative();
    auto g = [rho, m](const Vec3& p) {
      const double r = rho(p[2]), mm = m(p[2]);
      return Mat3::diagonal(1.0, r * r, mm * mm);
    };
    auto dg = [rho, drho, m, dm](const Vec3& p) {
      std::array<Mat3, 3> d;
      d[2] = Mat3::diagonal(0.0, 2.0 * rho(p[2]) * drho(p[2]),
                            2.0 * m(p[2]) * dm(p[2]));
      return d;
    };
    auto d2g = [rho, drho, ddrho, m, dm, ddm](const Vec3& p) {
      D2 d;
      const double w = p[2];
      d[2][2] = Mat3::diagonal(
          0.0, 2.0 * (drho(w) * drho(w) + rho(w) * ddrho(w)),
          2.0 * (dm(w) * dm(w) + m(w) * ddm(w)));
      return d;
    };
    auto dom = [rho, m](const Vec3& p) {
      return rho(p[2]) > 1e-9 && m(p[2]) > 1e-9;
    };
    ChartMetric out("revolution_product", g, dg, dom, CurvatureTag::generic());
    out.set_second_partials(d2g);
    return out;
  }
  // Induced weight of a revolution surface in ℝ³: g_ww = 1 + ρ'(w)².
  const TrigPoly dddrho = ddrho.derivative();
  auto g = [rho, drho](const Vec3& p) {
    const double r = rho(p[2]), rp = drho(p[2]);
    return Mat3::diagonal(1.0, r * r, 1.0 + rp * rp);
  };
  auto dg = [rho, drho, ddrho](const Vec3& p) {
    std::array<Mat3, 3> d;
    d[2] = Mat3::diagonal(0.0, 2.0 * rho(p[2]) * drho(p[2]),
                          2.0 * drho(p[2]) * ddrho(p[2]));
    return d;
  };
  auto d2g = [rho, drho, ddrho, dddrho](const Vec3& p) {
    D2 d;
    const double w = p[2];
    d[2][2] = Mat3::diagonal(
        0.0, 2.0 * (drho(w) * drho(w) + rho(w) * ddrho(w)),
        2.0 * (ddrho(w) * ddrho(w) + drho(w) * dddrho(w)));
    return d;
  };
  auto dom = [rho](const Vec3& p) { return rho(p[2]) > 1e-9; };
  ChartMetric out("revolution_product", g, dg, dom, CurvatureTag::generic());
  out.set_second_partials(d2g);
  return out;
}

ChartMetric warped_metric(const TrigPoly& f) {
  const TrigPoly df = f.derivative();
  const TrigPoly ddf = df.derivative();
  auto g = [f](const Vec3& p) {
    const double ff = f(p[0]);
    return Mat3::diagonal(1.0, ff * ff, ff * ff);
  };
  auto dg = [f, df](const Vec3& p) {
    std::array<Mat3, 3> d;
    const double s = 2.0 * f(p[0]) * df(p[0]);
    d[0] = Mat3::diagonal(0.0, s, s);
    return d;
  };
  auto d2g = [f, df, ddf](const Vec3& p) {
    D2 d;
    const double t = p[0];
    const double s = 2.0 * (df(t) * df(t) + f(t) * ddf(t));
    d[0][0] = Mat3::diagonal(0.0, s, s);
    return d;
  };
  auto dom = [f](const Vec3& p) { return f(p[0]) > 1e-6; };
  ChartMetric out("warped", g, dg, dom, CurvatureTag::generic());
  out.set_second_partials(d2g);
  return out;
}

}  // namespace ruledgeo
