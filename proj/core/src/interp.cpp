#include "ruledgeo/interp.hpp"

#include <algorithm>
#include <stdexcept>

namespace ruledgeo {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("spline needs >= 2 matching knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("spline knots must strictly increase");

  // Tridiagonal solve for natural boundary conditions.
  m_.assign(n, 0.0);
  if (n == 2) return;
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    a[i] = h0;
    b[i] = 2.0 * (h0 + h1);
    c[i] = h1;
    d[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (d[i] - c[i] * (i + 2 < n ? m_[i + 1] : 0.0)) / b[i];
    if (i == 1) break;
  }
}

std::size_t CubicSpline::segment(double t) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double CubicSpline::operator()(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - t) / h;
  const double B = (t - x_[i]) / h;
  return A * y_[i] + B * y_[i + 1] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double A = (x_[i + 1] - t) / h;
  const double B = (t - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((3.0 * B * B - 1.0) * m_[i + 1] - (3.0 * A * A - 1.0) * m_[i]) * h /
             6.0;
}

}  // namespace ruledgeo
