#pragma once
#include <vector>

#include "ruledgeo/ruled_surface.hpp"

namespace ruledgeo {

struct JacobiEvolutionSample {
  double u = 0.0, v = 0.0;
  double F = 0.0;       // g(∇_{X_v}X_u, X_u) = ½ X_v(‖X_u‖²)
  double dFdv = 0.0;    // −Riem(X_v,X_u,X_v,X_u) + ‖∇_{X_v}X_u‖²
  double d2Fdv2 = 0.0;  // g((∇_{X_v}R)(X_v,X_u,X_v),X_u) − 4 Riem(X_v,X_u,X_v,∇X_u)
};

// The ∇R term is zero for constant-curvature charts and is otherwise taken by
// central differences of the Riemann tensor along the ruling (step 1e-4).
JacobiEvolutionSample evaluate_F(const RulingTrace& trace, double v);
JacobiEvolutionSample evaluate_F(const RuledSurfaceSpec& spec, double u,
                                 double v, double step = 1e-3);

// F value only, no curvature contractions.
double evaluate_F_value(const ChartMetric& m, const SurfaceJet& jet);

struct SpaceFormFCoefficients {
  double k = 0.0;
  double C1 = 0.0;  // g_p(∇_{α′}Z, α′)
  double C2 = 0.0;  // D/√|4k| for k ≠ 0, D for k = 0
  double D = 0.0;   // −k‖α′‖² sin²σ_p + ‖∇_{α′}Z‖² = ∂F/∂v at v = 0
};

// Requires a constant-curvature chart and a unit ruling.
SpaceFormFCoefficients spaceform_coefficients(const RuledSurfaceSpec& spec,
                                              double u);

// k>0: C1 cos(√(4k) v) + C2 sin(√(4k) v); k=0: C1 + C2 v;
// k<0: C1 cosh(√(−4k) v) + C2 sinh(√(−4k) v).
double spaceform_F(const SpaceFormFCoefficients& c, double v);

enum class StrictionVerdictKind { Found, NotFound, Degenerate };

struct SpaceFormStriction {
  StrictionVerdictKind kind = StrictionVerdictKind::NotFound;
  double v = 0.0;
  double period = 0.0;  // 2π/√k for k > 0, otherwise 0
  double arg = 0.0;     // arctanh argument diagnostics for k < 0
};

SpaceFormStriction spaceform_striction_v(const SpaceFormFCoefficients& c);

enum class RootKind { Crossing, Tangential };

struct StrictionRoot {
  double v = 0.0;
  Vec3 point;
  RootKind kind = RootKind::Crossing;
  int branch = -1;
};

struct RulingStriction {
  double u = 0.0;
  StrictionVerdictKind verdict = StrictionVerdictKind::NotFound;
  std::vector<StrictionRoot> roots;
  double max_abs_F = 0.0;
  bool truncated = false;  // searched range narrowed by a chart exit
  double v_lo = 0.0, v_hi = 0.0;
};

struct StrictionOptions {
  int coarse_samples = 64;
  double eps_root = 1e-10;  // |F| at an accepted root
  double v_tol = 1e-9;      // parameter tolerance of the bisection
  double eps_touch = 1e-9;  // |F| gate for even-multiplicity roots
  double step = 1e-3;
  unsigned threads = 1;
};

struct StrictionResult {
  std::vector<RulingStriction> per_u;
  int branch_count = 0;
};

// Bracket sign changes of F on a coarse grid per ruling, bisect and
// Newton-polish; even-multiplicity roots are caught by minimizing |F| at
// interior minima of the coarse scan. Roots on spherical charts are reduced
// modulo the geodesic period before deduplication. Branches are assembled
// across u by v-continuity.
StrictionResult find_striction_numeric(const RuledSurfaceSpec& spec,
                                       const std::vector<double>& ugrid,
                                       double v_min, double v_max,
                                       const StrictionOptions& opt = {});

struct HyperbolicClassification {
  double u = 0.0;
  bool no_striction = false;
  double kext0 = 0.0;   // K_ext at (u, 0)
  double kappa1 = 0.0;  // first Sannia curvature at u
  bool closed_form_agrees = false;
};

// NoStriction iff |K_ext(u,0)| < eps_root and |κ₁ − √(−k)| < eps_class, on an
// arc-length base with unit orthogonal ruling; cross-validated against the
// closed-form verdict.
std::vector<HyperbolicClassification> hyperbolic_nonexistence_classifier(
    const RuledSurfaceSpec& spec, const std::vector<double>& ugrid, double k,
    double eps_root = 1e-10, double eps_class = 1e-6);

struct RebaseSample {
  double u = 0.0;
  double phi = 0.0;
  bool parallel_degenerate = false;  // ∇_{s′}Z below eps_gp; φ taken as 0
  double dZ_tangential_norm = 0.0;   // projection of ∇_{s′}Z onto span{s′, Z}
  double dZ_full_norm = 0.0;
  Vec3 point;
};

// Re-bases the surface on a striction branch (us, vroots) and reports the
// Sannia angle φ of the new base and the tangential part of ∇_{s′}Z.
std::vector<RebaseSample> rebase_striction_branch(
    const RuledSurfaceSpec& spec, const std::vector<double>& us,
    const std::vector<double>& vroots, double step = 1e-3, double du = 1e-4);

}  // namespace ruledgeo
