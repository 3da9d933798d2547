#pragma once
#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "ruledgeo/ruled_surface.hpp"
#include "ruledgeo/sannia.hpp"

namespace ruledgeo {

// Prescribed invariants for the constructive side of the fundamental theorem;
// κ₀ is fixed to 1 (arc-length base curve, unit ruling).
struct InvariantPrescription {
  double u0 = 0.0;
  double u_begin = 0.0, u_end = 1.0;
  std::function<double(double)> kappa1, kappa2, theta, phi;
  ChartPoint p0;
  SanniaFrame frame0;  // orthonormal, positively oriented at p0
};

struct ReconstructedSurface {
  std::vector<double> u;  // uniform grid covering [u_begin, u_end] ∩ reach
  std::vector<Vec3> alpha;
  std::vector<std::array<Vec3, 3>> frame;  // (X1, X2, X3) per sample
  double step = 1e-3;
  bool exited_begin = false, exited_end = false;
  double reached_begin = 0.0, reached_end = 0.0;
};

// Integrates the coupled curve + frame system
//   dx/du  = cos φ cos θ X₁ + sin φ X₂ + cos φ sin θ X₃
//   ∇X₁/du = κ₁ X₂,  ∇X₂/du = −κ₁ X₁ + κ₂ X₃,  ∇X₃/du = −κ₂ X₂
// with Γ at the running curve point. Drift is measured, not corrected.
ReconstructedSurface reconstruct(const ChartMetric& m,
                                 const InvariantPrescription& presc,
                                 double step);

// max over samples of |g(Xi, Xj) − δij|
double orthonormality_drift(const ChartMetric& m,
                            const ReconstructedSurface& rec);

// Z(u) = X₁(u); callbacks cubic-spline the samples.
RuledSurfaceSpec spec_from_reconstruction(
    std::shared_ptr<const ChartMetric> metric, const ReconstructedSurface& rec);

struct InvariantTable {
  std::vector<double> u, kappa0, kappa1, kappa2, theta, phi;
};

// Cubic interpolation of tabulated invariants; requires κ₀ ≈ 1. Undefined θ
// samples ("nan" at cos φ = 0) enter as 0, where the coefficient cos φ cos θ
// vanishes anyway.
InvariantPrescription prescription_from_table(const InvariantTable& table,
                                              const ChartPoint& p0,
                                              const SanniaFrame& frame0,
                                              double u0, double u_begin,
                                              double u_end);

}  // namespace ruledgeo
