#pragma once
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ruledgeo/chart_metric.hpp"
#include "ruledgeo/integrate.hpp"

namespace ruledgeo {

struct CurveFn {
  std::function<Vec3(double)> pos;
  std::function<Vec3(double)> vel;  // optional exact derivative
};

struct RulingFieldFn {
  std::function<Vec3(double)> val;
  std::function<Vec3(double)> dval;  // optional exact component derivative
};

// Base curve α, ruling field Z and the ambient chart; X(u,v) is the geodesic
// from α(u) with initial velocity Z(u).
struct RuledSurfaceSpec {
  std::shared_ptr<const ChartMetric> metric;
  CurveFn alpha;
  RulingFieldFn ruling;
  double u_min = 0.0;
  double u_max = 1.0;
  bool normalize_ruling = true;
  double fd_step = 1e-6;  // curve/field derivative fallback step
  double eps_reg = 1e-8;
  std::string name;

  Vec3 alpha_pos(double u) const { return alpha.pos(u); }
  Vec3 alpha_vel(double u) const;
  Vec3 ruling_raw(double u) const { return ruling.val(u); }
  Vec3 ruling_raw_du(double u) const;
  double kappa0(double u) const;       // ‖Z_raw‖_g at α(u)
  Vec3 ruling_effective(double u) const;
  Vec3 cov_deriv_ruling_raw(double u) const;        // ∇_{α′} Z_raw
  Vec3 cov_deriv_ruling_effective(double u) const;  // ∇_{α′} (Z/κ₀) if normalized
  double base_angle(double u) const;   // σ_p from cos σ = g(α′,Ẑ)/‖α′‖
};

struct SurfaceJet {
  double u = 0.0, v = 0.0;
  ChartPoint point;
  TangentVec Xu;   // Jacobi field value
  TangentVec Xv;   // geodesic velocity
  TangentVec DXu;  // ∇_{X_v} X_u = ∇_{X_u} X_v
  bool rank2 = true;
};

// One ruling integrated as the joint 12-dimensional system
// (x, ẋ, J, ∇J), densely sampled at multiples of the step in both
// parameter directions.
class RulingTrace {
 public:
  struct Raw {
    detail::StateN<12> y;
    double v;
  };

  double u() const { return u_; }
  double step() const { return step_; }
  double reached_min() const { return reached_min_; }
  double reached_max() const { return reached_max_; }
  bool exited_min() const { return exited_min_; }
  bool exited_max() const { return exited_max_; }
  const ChartMetric& metric() const { return *metric_; }

  Raw raw_at(double v) const;  // throws LeftChartDomain beyond the reach
  SurfaceJet jet_at(double v) const;

  double eps_lin = 1e-10;

  // filled by ruling_sweep
  std::shared_ptr<const ChartMetric> metric_;
  double u_ = 0.0;
  double step_ = 1e-3;
  std::vector<detail::StateN<12>> fwd_;  // states at v = i*step
  std::vector<detail::StateN<12>> bwd_;  // states at v = −(i+1)*step
  double reached_min_ = 0.0, reached_max_ = 0.0;
  bool exited_min_ = false, exited_max_ = false;
};

// Integrates one ruling across [v_min, v_max] (the interval may straddle 0);
// Jacobi initial data J(0) = α′(u), (∇J)(0) = ∇_{α′}Z.
RulingTrace ruling_sweep(const RuledSurfaceSpec& spec, double u, double v_min,
                         double v_max, double step = 1e-3);

SurfaceJet evaluate_jet(const RuledSurfaceSpec& spec, double u, double v,
                        double step = 1e-3);

struct CurvatureReport {
  double K_ambient = 0.0;    // sectional curvature of T_pΣ in (M,g)
  double K_ext = 0.0;        // −vol²/gram², non-positive
  double K_intrinsic = 0.0;  // K_ambient + K_ext
  double lambda = 0.0;       // vol / ‖∇_{X_u}X_v‖²
  bool lambda_defined = false;
  double sigma = 0.0;  // angle between X_u and X_v, in [0, π]
  double h_uv = 0.0;   // mixed second fundamental form, chart-oriented normal
  bool rank2 = true;
};

// Throws RankDeficientPlane when the jet has rank2 == false.
CurvatureReport curvature_report(const ChartMetric& m, const SurfaceJet& jet,
                                 double eps_reg = 1e-8);
CurvatureReport curvature_report(const RuledSurfaceSpec& spec, double u,
                                 double v, double step = 1e-3);

// σ_q along the ruling from cos σ_q = ‖α′(u)‖ cos σ_p / ‖X_u‖_q; requires a
// unit ruling. Throws RankDeficientPlane when ‖X_u‖ vanishes.
double ruling_angle(const RuledSurfaceSpec& spec, double u, double v,
                    double step = 1e-3);

struct MeshVertex {
  Vec3 point;
  double kext = 0.0;
  double lambda = 0.0;
  bool lambda_defined = false;
  double sigma = 0.0;
  bool rank2 = false;
  bool valid = false;  // false past a chart-exit truncation
};

struct MeshGrid {
  std::vector<double> us, vs;
  std::vector<MeshVertex> verts;  // row-major, index iu * vs.size() + iv

  const MeshVertex& at(std::size_t iu, std::size_t iv) const {
    return verts[iu * vs.size() + iv];
  }
};

MeshGrid build_mesh(const RuledSurfaceSpec& spec,
                    const std::vector<double>& ugrid,
                    const std::vector<double>& vgrid, double step = 1e-3,
                    unsigned threads = 1);

std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

}  // namespace ruledgeo
