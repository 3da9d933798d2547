#pragma once
#include "ruledgeo/geodesic.hpp"

namespace ruledgeo {

enum class SpaceFormChart { euclidean, stereographic, halfspace };

struct SpaceFormTag {
  double k = 0.0;
  SpaceFormChart chart = SpaceFormChart::euclidean;

  static SpaceFormTag euclidean() { return {0.0, SpaceFormChart::euclidean}; }
  static SpaceFormTag sphere(double k);     // k > 0
  static SpaceFormTag hyperbolic(double k); // k < 0
};

// Closed-form unit-speed geodesic in the model chart: straight lines,
// stereographic images of great circles, half-space semicircles and
// vertical lines. Test oracle for the numeric integrator.
GeodesicState oracle_geodesic(const SpaceFormTag& tag, const ChartPoint& p,
                              const TangentVec& Z, double v);

// ‖J(v)‖ for a Jacobi field along a unit-speed space-form geodesic with
// J(0) = a γ′ + J0⊥, (∇J)(0) = b γ′ + DJ0⊥, described by the scalars
// a, b, ‖J0⊥‖, ‖DJ0⊥‖ and g(J0⊥, DJ0⊥).
double oracle_jacobi_norm(const SpaceFormTag& tag, double a, double b,
                          double jperp0_norm, double v,
                          double djperp0_norm = 0.0,
                          double jperp0_dot_djperp0 = 0.0);

}  // namespace ruledgeo
