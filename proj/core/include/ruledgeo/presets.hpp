#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "ruledgeo/chart_metric.hpp"

namespace ruledgeo {

// c0 + c1 u + c2 u² + ... + Σ aᵢ cos(ωᵢ u) + Σ bᵢ sin(ωᵢ u)
struct TrigPoly {
  std::vector<double> poly;
  std::vector<std::pair<double, double>> cosines;  // (frequency, amplitude)
  std::vector<std::pair<double, double>> sines;

  static TrigPoly constant(double c) { return TrigPoly{{c}, {}, {}}; }

  double operator()(double u) const;
  TrigPoly derivative() const;
  bool empty() const { return poly.empty() && cosines.empty() && sines.empty(); }
};

// Built-in charts. All presets carry exact metric partials.

ChartMetric euclidean_metric();

// S³(k), k>0, stereographic chart g = δ/(1 + (k/4)|x|²)², sectional
// curvature k; the chart misses the antipode of the origin point.
ChartMetric sphere_metric(double k);

// H³(k), k<0, half-space chart g = (1/(−k)) z⁻² δ on {z > 0}.
ChartMetric halfspace_metric(double k);

// dt² + ρ(w)² da² + m(w)² dw² in coordinates (t, a, w): the product of a line
// with a revolution-symmetric surface of profile radius ρ; m is the profile
// parameter weight. Empty w_weight means the induced m = √(1 + ρ'(w)²).
ChartMetric revolution_product_metric(const TrigPoly& profile,
                                      const std::optional<TrigPoly>& w_weight);

// dt² + f(t)² (dx² + dy²) in coordinates (t, x, y), flat fiber.
ChartMetric warped_metric(const TrigPoly& f);

}  // namespace ruledgeo
