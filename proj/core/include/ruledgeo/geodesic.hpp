#pragma once
#include <vector>

#include "ruledgeo/chart_metric.hpp"

namespace ruledgeo {

struct GeodesicState {
  Vec3 x;
  Vec3 vel;
  double arc = 0.0;  // affine parameter v
};

struct JacobiState {
  Vec3 J;
  Vec3 DJ;  // components of ∇_{X_v} J
  GeodesicState geo;
};

// A geodesic integrated forward from v = 0, sampled at multiples of the step.
class GeodesicTrace {
 public:
  GeodesicTrace(const ChartMetric* metric, double step)
      : metric_(metric), step_(step) {}

  const ChartMetric& metric() const { return *metric_; }
  double step() const { return step_; }
  double reached() const { return reached_; }
  bool exited() const { return exited_; }

  std::size_t size() const { return samples_.size(); }
  const GeodesicState& operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<GeodesicState>& samples() const { return samples_; }
  const GeodesicState& endpoint() const;

  // State at arbitrary v in [0, reached]: one partial RK4 step from the
  // nearest stored sample below. Throws LeftChartDomain beyond the reach.
  GeodesicState state_at(double v) const;

  std::vector<GeodesicState> samples_;
  double reached_ = 0.0;
  bool exited_ = false;

 private:
  const ChartMetric* metric_;
  double step_;
};

// Integrates ẍ^i + Γ^i_jk ẋ^j ẋ^k = 0 from p with initial velocity Z up to
// v_max; truncates at the chart boundary (bisected to 1e-10) with the exit
// recorded on the trace.
GeodesicTrace exp_map(const ChartMetric& m, const ChartPoint& p,
                      const TangentVec& Z, double v_max, double step);

// Solves ẇ^i + Γ^i_jk ẋ^j w^k = 0 along the trace; returns w at parameter v
// (default: the trace endpoint).
TangentVec parallel_transport(const ChartMetric& m, const GeodesicTrace& geo,
                              const TangentVec& w0, double v = -1.0);

// Solves ∇_{X_v}∇_{X_v}J + R(J, X_v)X_v = 0 as a first-order system in
// (J, ∇J) jointly with the geodesic; returns states at the trace samples.
std::vector<JacobiState> integrate_jacobi(const ChartMetric& m,
                                          const GeodesicTrace& geo,
                                          const Vec3& J0, const Vec3& DJ0);

struct JacobiDecomposition {
  double tangential_coeff;  // ‖α′‖ cos σ_p, constant in v for unit rulings
  Vec3 J_perp;
};

JacobiDecomposition decompose_jacobi(const ChartMetric& m,
                                     const JacobiState& state,
                                     double alpha_prime_norm, double sigma_p);

}  // namespace ruledgeo
