#include "ruledgeo/sannia.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ruledgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEpsAngle = 1e-7;  // |cos φ| below this leaves θ undefined

double grid_spacing(const std::vector<double>& u) {
  if (u.size() < 5)
    throw std::invalid_argument("invariant grid needs at least 5 samples");
  const double h = u[1] - u[0];
  for (std::size_t i = 1; i + 1 < u.size(); ++i)
    if (std::abs((u[i + 1] - u[i]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw std::invalid_argument("invariant grid must be uniform");
  if (!(h > 0.0)) throw std::invalid_argument("invariant grid must increase");
  return h;
}

// 4th-order stencils: central in the interior, one-sided at the edges.
double stencil_deriv(const std::vector<double>& f, std::size_t i, double h) {
  const std::size_t n = f.size();
  if (i >= 2 && i + 2 < n)
    return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  if (i == 0)
    return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] -
            3.0 * f[4]) /
           (12.0 * h);
  if (i == 1)
    return (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) /
           (12.0 * h);
  if (i + 1 == n)
    return (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] -
            16.0 * f[n - 4] + 3.0 * f[n - 5]) /
           (12.0 * h);
  // i == n-2
  return (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] -
          f[n - 5]) /
         (12.0 * h);
}

Vec3 cov_deriv_unit_ruling(const RuledSurfaceSpec& spec, double u) {
  // ∇_{α′}(Z/κ₀) independently of the normalize flag
  const Vec3 p = spec.alpha_pos(u);
  const Vec3 z = spec.ruling_raw(u);
  const Vec3 dz = spec.cov_deriv_ruling_raw(u);
  const double k0 = spec.kappa0(u);
  const double dk0 = spec.metric->inner(p, dz, z) / k0;
  return dz / k0 - (dk0 / (k0 * k0)) * z;
}

}  // namespace

std::vector<double> grid_derivative(const std::vector<double>& u,
                                    const std::vector<double>& f) {
  const double h = grid_spacing(u);
  std::vector<double> d(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) d[i] = stencil_deriv(f, i, h);
  return d;
}

std::vector<Vec3> grid_derivative(const std::vector<double>& u,
                                  const std::vector<Vec3>& f) {
  const double h = grid_spacing(u);
  std::vector<Vec3> d(f.size());
  std::vector<double> comp(f.size());
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < f.size(); ++i) comp[i] = f[i][c];
    for (std::size_t i = 0; i < f.size(); ++i)
      d[i][c] = stencil_deriv(comp, i, h);
  }
  return d;
}

GeneralPositionReport is_general_position(const RuledSurfaceSpec& spec,
                                          double u, double eps_gp) {
  const Vec3 p = spec.alpha_pos(u);
  const Vec3 z = spec.ruling_raw(u);
  const Vec3 dz = spec.cov_deriv_ruling_raw(u);
  const double zz = spec.metric->inner(p, z, z);
  const double dd = spec.metric->inner(p, dz, dz);
  const double zd = spec.metric->inner(p, z, dz);
  GeneralPositionReport rep;
  rep.gram = zz * dd - zd * zd;
  rep.kappa1_est = std::sqrt(std::max(0.0, rep.gram)) / zz;
  rep.ok = rep.kappa1_est > eps_gp;
  return rep;
}

SanniaFrame sannia_frame_at(const RuledSurfaceSpec& spec, double u,
                            double eps_gp) {
  const auto gp = is_general_position(spec, u, eps_gp);
  if (!gp.ok)
    throw NotGeneralPosition(
        u, "ruling not in general position at u=" + std::to_string(u));
  const Vec3 p = spec.alpha_pos(u);
  const ChartMetric& m = *spec.metric;
  const Vec3 X1 = spec.ruling_raw(u) / spec.kappa0(u);
  const Vec3 dX1 = cov_deriv_unit_ruling(spec, u);
  const double k1 = m.norm(p, dX1);
  const Vec3 X2 = dX1 / k1;
  Vec3 X3 = m.metric_cross(p, X1, X2);
  X3 = X3 / m.norm(p, X3);
  const ChartPoint cp{p};
  return SanniaFrame{TangentVec{cp, X1}, TangentVec{cp, X2},
                     TangentVec{cp, X3}};
}

SanniaInvariants sannia_invariants_from_samples(
    const ChartMetric& m, const std::vector<double>& ugrid,
    const std::vector<Vec3>& alpha_samples, const std::vector<Vec3>& Z_samples,
    double eps_gp) {
  const std::size_t n = ugrid.size();
  if (alpha_samples.size() != n || Z_samples.size() != n)
    throw std::invalid_argument("sample arrays must match the grid");
  grid_spacing(ugrid);

  SanniaInvariants inv;
  inv.u = ugrid;
  inv.base_points = alpha_samples;
  inv.alpha_prime = grid_derivative(ugrid, alpha_samples);

  auto covariant_on_grid =
      [&](const std::vector<Vec3>& field) -> std::vector<Vec3> {
    std::vector<Vec3> d = grid_derivative(ugrid, field);
    for (std::size_t i = 0; i < n; ++i) {
      const Christoffel c = m.christoffel(alpha_samples[i]);
      for (int a = 0; a < 3; ++a) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            s += c.sym[a][j][k] * inv.alpha_prime[i][j] * field[i][k];
        d[i][a] += s;
      }
    }
    return d;
  };

  inv.kappa0.resize(n);
  std::vector<Vec3> X1(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv.kappa0[i] = m.norm(alpha_samples[i], Z_samples[i]);
    if (!(inv.kappa0[i] > 1e-12))
      throw NotGeneralPosition(ugrid[i], "vanishing ruling at u=" +
                                             std::to_string(ugrid[i]));
    X1[i] = Z_samples[i] / inv.kappa0[i];
  }
  inv.kappa0_prime = grid_derivative(ugrid, inv.kappa0);

  const std::vector<Vec3> dX1 = covariant_on_grid(X1);
  inv.kappa1.resize(n);
  std::vector<Vec3> X2(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv.kappa1[i] = m.norm(alpha_samples[i], dX1[i]);
    if (!(inv.kappa1[i] > eps_gp))
      throw NotGeneralPosition(ugrid[i], "not in general position at u=" +
                                             std::to_string(ugrid[i]));
    X2[i] = dX1[i] / inv.kappa1[i];
  }

  const std::vector<Vec3> dX2 = covariant_on_grid(X2);
  inv.kappa2.resize(n);
  inv.theta.resize(n);
  inv.phi.resize(n);
  inv.theta_defined.assign(n, true);
  inv.frames.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& p = alpha_samples[i];
    Vec3 X3 = m.metric_cross(p, X1[i], X2[i]);
    X3 = X3 / m.norm(p, X3);
    inv.kappa2[i] = m.inner(p, dX2[i], X3);
    inv.frames[i] = {X1[i], X2[i], X3};

    const double an = m.norm(p, inv.alpha_prime[i]);
    const Vec3 shat = inv.alpha_prime[i] / an;
    const double a1 = m.inner(p, shat, X1[i]);
    const double a2 = m.inner(p, shat, X2[i]);
    const double a3 = m.inner(p, shat, X3);
    inv.phi[i] = std::asin(clamp_unit(a2));
    const double cphi = std::sqrt(std::max(0.0, 1.0 - a2 * a2));
    if (cphi < kEpsAngle) {
      inv.theta_defined[i] = false;
      inv.theta[i] = std::nan("");
    } else {
      inv.theta[i] = std::atan2(a3, a1);
    }
  }

  // Unwrap θ to a continuous branch across defined samples.
  double prev = 0.0;
  bool have_prev = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!inv.theta_defined[i]) continue;
    if (have_prev) {
      while (inv.theta[i] - prev > kPi) inv.theta[i] -= 2.0 * kPi;
      while (inv.theta[i] - prev < -kPi) inv.theta[i] += 2.0 * kPi;
    }
    prev = inv.theta[i];
    have_prev = true;
  }
  return inv;
}

SanniaInvariants sannia_invariants(const RuledSurfaceSpec& spec,
                                   const std::vector<double>& ugrid,
                                   double eps_gp) {
  std::vector<Vec3> alpha(ugrid.size()), Z(ugrid.size());
  for (std::size_t i = 0; i < ugrid.size(); ++i) {
    alpha[i] = spec.alpha_pos(ugrid[i]);
    Z[i] = spec.ruling_effective(ugrid[i]);
  }
  return sannia_invariants_from_samples(*spec.metric, ugrid, alpha, Z, eps_gp);
}

double distribution_parameter_on_base(const ChartMetric& m,
                                      const SanniaInvariants& inv,
                                      std::size_t i) {
  const double an = m.norm(inv.base_points[i], inv.alpha_prime[i]);
  const double k0 = inv.kappa0[i], k1 = inv.kappa1[i];
  const double dk0 = inv.kappa0_prime[i];
  const double cphi = std::cos(inv.phi[i]);
  const double stheta = inv.theta_defined[i] ? std::sin(inv.theta[i]) : 0.0;
  return an * k0 * k0 * k1 * cphi * stheta / (dk0 * dk0 + k0 * k0 * k1 * k1);
}

}  // namespace ruledgeo
