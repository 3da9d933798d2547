#pragma once
#include <array>
#include <functional>
#include <string>
#include <utility>

#include "ruledgeo/errors.hpp"
#include "ruledgeo/linalg.hpp"

namespace ruledgeo {

struct ChartPoint {
  Vec3 coords;
};

struct TangentVec {
  ChartPoint base;
  Vec3 components;
};

struct CurvatureTag {
  bool is_constant = false;
  double k = 0.0;

  static CurvatureTag constant(double k) { return {true, k}; }
  static CurvatureTag generic() { return {false, 0.0}; }
};

// Gamma[i][j][k] = Γ^i_jk, symmetric in (j,k).
struct Christoffel {
  double sym[3][3][3]{};
};

// comp[i][j][k][l] = R^i_jkl with R(∂_k,∂_l)∂_j = R^i_jkl ∂_i, built from
// R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z.
struct RiemannTensor {
  double comp[3][3][3][3]{};
};

using MetricFn = std::function<Mat3(const Vec3&)>;
using MetricDerivFn = std::function<std::array<Mat3, 3>(const Vec3&)>;
// d2[m][n] = ∂_m ∂_n g, symmetric in (m, n)
using MetricDeriv2Fn =
    std::function<std::array<std::array<Mat3, 3>, 3>(const Vec3&)>;
using DomainFn = std::function<bool(const Vec3&)>;

// A Riemannian metric on a single coordinate chart of a 3-manifold, given by
// its component matrix, optional exact partials, and a validity predicate.
class ChartMetric {
 public:
  ChartMetric(std::string name, MetricFn g, MetricDerivFn dg, DomainFn domain,
              CurvatureTag tag)
      : name_(std::move(name)),
        g_(std::move(g)),
        dg_(std::move(dg)),
        domain_(std::move(domain)),
        tag_(tag) {}

  const std::string& name() const { return name_; }
  CurvatureTag tag() const { return tag_; }
  bool has_exact_partials() const { return static_cast<bool>(dg_); }

  // Exact second partials make the curvature tensor fully analytic; without
  // them ∂Γ falls back to central differences of Γ.
  void set_second_partials(MetricDeriv2Fn d2g) { d2g_ = std::move(d2g); }
  bool has_second_partials() const { return static_cast<bool>(d2g_); }

  bool in_domain(const Vec3& p) const {
    if (!finite(p)) return false;
    return domain_ ? domain_(p) : true;
  }

  // Positive definiteness is verified lazily at points actually visited.
  Mat3 metric(const Vec3& p) const;
  Mat3 inverse_metric(const Vec3& p) const { return metric(p).inverse(); }
  std::array<Mat3, 3> metric_partials(const Vec3& p) const;

  double inner(const Vec3& p, const Vec3& a, const Vec3& b) const {
    return edot(a, metric(p) * b);
  }
  double norm(const Vec3& p, const Vec3& a) const {
    return std::sqrt(inner(p, a, a));
  }
  double volume_density(const Vec3& p) const {
    return std::sqrt(metric(p).det());
  }

  Christoffel christoffel(const Vec3& p) const;
  RiemannTensor riemann(const Vec3& p) const;

  // Unchecked evaluation for integrator stage points: no domain or
  // positive-definiteness checks, non-finite values propagate to the caller.
  Christoffel christoffel_stage(const Vec3& p) const;
  RiemannTensor riemann_stage(const Vec3& p) const;

  // Riem(A,B,C,D) = −g(R(A,B)C, D).
  double riem(const Vec3& p, const Vec3& A, const Vec3& B, const Vec3& C,
              const Vec3& D) const;
  static double riem(const RiemannTensor& R, const Mat3& g, const Vec3& A,
                     const Vec3& B, const Vec3& C, const Vec3& D);
  static Vec3 curvature_op(const RiemannTensor& R, const Vec3& X, const Vec3& Y,
                           const Vec3& Z);  // R(X,Y)Z

  // Riem(X,Y,X,Y) / (‖X‖²‖Y‖² − g(X,Y)²); throws DegeneratePlane when the
  // normalized Gram determinant falls below eps_lin.
  double sectional(const Vec3& p, const Vec3& X, const Vec3& Y) const;

  // √det g(p) · det[A|B|C], signed with the chart orientation.
  double volume_form(const Vec3& p, const Vec3& A, const Vec3& B,
                     const Vec3& C) const;

  // Unique C with g(C,W) = vol_g(A,B,W) for all W.
  Vec3 metric_cross(const Vec3& p, const Vec3& A, const Vec3& B) const;

  double h_fd = 1e-5;        // central-difference step for the dg fallback
  double h_gamma = 1e-5;     // step for ∂Γ when dg is exact
  double h_gamma_fd = 1e-4;  // step for ∂Γ when dg is itself finite-difference
  double eps_lin = 1e-10;    // normalized Gram-determinant threshold

 private:
  std::array<Mat3, 3> partials_unchecked(const Vec3& p) const;
  void dgamma_exact(const Vec3& p, Christoffel out[3]) const;
  RiemannTensor assemble_riemann(const Christoffel& c,
                                 const Christoffel dgamma[3]) const;

  std::string name_;
  MetricFn g_;
  MetricDerivFn dg_;
  MetricDeriv2Fn d2g_;
  DomainFn domain_;
  CurvatureTag tag_;
};

// (∇_velocity field)^i = dfield^i/du + Γ^i_jk velocity^j field^k, all data at
// the same base point; field_derivative holds dfield^i/du.
TangentVec covariant_derivative_along(const ChartMetric& m,
                                      const ChartPoint& curve_point,
                                      const TangentVec& curve_velocity,
                                      const TangentVec& field_value,
                                      const Vec3& field_derivative);

// Metric Gram–Schmidt; throws DegeneratePlane if the input is not a basis.
std::array<Vec3, 3> orthonormalize(const ChartMetric& m, const Vec3& p,
                                   const std::array<Vec3, 3>& basis);

}  // namespace ruledgeo
