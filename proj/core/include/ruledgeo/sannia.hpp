#pragma once
#include <array>
#include <vector>

#include "ruledgeo/ruled_surface.hpp"

namespace ruledgeo {

struct GeneralPositionReport {
  bool ok = false;
  double gram = 0.0;        // Gram determinant of (Z, ∇_{α′}Z)
  double kappa1_est = 0.0;  // √gram / κ₀², the scale-invariant measure
};

// Z and ∇_{α′}Z linearly independent at u: √gram/κ₀² > eps_gp.
GeneralPositionReport is_general_position(const RuledSurfaceSpec& spec,
                                          double u, double eps_gp = 1e-7);

struct SanniaFrame {
  TangentVec X1, X2, X3;  // orthonormal, positively oriented, X1 = Z/‖Z‖
};

// X1 = Z/κ₀, X2 = ∇_{α′}X1/κ₁, X3 the positive orthonormal completion.
SanniaFrame sannia_frame_at(const RuledSurfaceSpec& spec, double u,
                            double eps_gp = 1e-7);

struct SanniaInvariants {
  std::vector<double> u;
  std::vector<double> kappa0, kappa0_prime, kappa1, kappa2;
  std::vector<double> theta, phi;  // radians; theta on a continuous branch
  std::vector<bool> theta_defined;  // false where cos φ ≈ 0
  std::vector<Vec3> base_points;
  std::vector<Vec3> alpha_prime;
  std::vector<std::array<Vec3, 3>> frames;

  std::size_t size() const { return u.size(); }
};

// Frame fields and their u-derivatives are taken over the (uniform) grid with
// 4th-order stencils plus the covariant Γ correction.
SanniaInvariants sannia_invariants(const RuledSurfaceSpec& spec,
                                   const std::vector<double>& ugrid,
                                   double eps_gp = 1e-7);

// Same pipeline for sampled data (reconstructed surfaces, CSV round trips).
SanniaInvariants sannia_invariants_from_samples(
    const ChartMetric& m, const std::vector<double>& ugrid,
    const std::vector<Vec3>& alpha_samples, const std::vector<Vec3>& Z_samples,
    double eps_gp = 1e-7);

// λ(u,0) = ‖α′‖ κ₀² κ₁ cos φ sin θ / (κ₀′² + κ₀² κ₁²); the arc-length unit
// ruling case reduces to cos φ sin θ / κ₁.
double distribution_parameter_on_base(const ChartMetric& m,
                                      const SanniaInvariants& inv,
                                      std::size_t i);

// 4th-order first derivative of uniformly spaced samples.
std::vector<double> grid_derivative(const std::vector<double>& u,
                                    const std::vector<double>& f);
std::vector<Vec3> grid_derivative(const std::vector<double>& u,
                                  const std::vector<Vec3>& f);

}  // namespace ruledgeo
