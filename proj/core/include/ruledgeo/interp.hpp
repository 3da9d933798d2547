#pragma once
#include <vector>

namespace ruledgeo {

// Natural cubic spline over strictly increasing knots; evaluation clamps to
// the knot range (constant extrapolation of the boundary polynomial).
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double t) const;
  double derivative(double t) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t segment(double t) const;
  std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
};

}  // namespace ruledgeo
