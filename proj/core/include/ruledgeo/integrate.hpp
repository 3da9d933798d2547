#pragma once
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace ruledgeo::detail {

template <std::size_t N>
using StateN = std::array<double, N>;

template <std::size_t N>
StateN<N> axpy(const StateN<N>& y, double a, const StateN<N>& d) {
  StateN<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + a * d[i];
  return r;
}

// Classical fixed-step RK4; h may be negative.
template <std::size_t N, class RHS>
StateN<N> rk4_step(const RHS& rhs, const StateN<N>& y, double h) {
  const StateN<N> k1 = rhs(y);
  const StateN<N> k2 = rhs(axpy(y, 0.5 * h, k1));
  const StateN<N> k3 = rhs(axpy(y, 0.5 * h, k2));
  const StateN<N> k4 = rhs(axpy(y, h, k3));
  StateN<N> r;
  for (std::size_t i = 0; i < N; ++i)
    r[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  return r;
}

template <std::size_t N>
struct DriveResult {
  std::vector<StateN<N>> samples;  // states at i*step, starting with y0
  bool exited = false;
  double reached = 0.0;  // parameter distance covered from the start
  bool has_tail = false;
  StateN<N> tail{};  // state at `reached` when it is not a sample multiple
};

// Integrates until `span` is covered or the state leaves the domain; on exit
// the boundary parameter is bisected to within exit_tol and the trajectory is
// truncated there.
template <std::size_t N, class RHS, class OK>
DriveResult<N> rk4_drive(const RHS& rhs, const OK& ok, const StateN<N>& y0,
                         double span, double step, double exit_tol = 1e-10) {
  DriveResult<N> out;
  out.samples.push_back(y0);
  if (span <= 0.0 || step <= 0.0) return out;

  StateN<N> y = y0;
  double t = 0.0;
  auto advance = [&](double h) -> bool {
    StateN<N> ytry = rk4_step(rhs, y, h);
    if (ok(ytry)) {
      y = ytry;
      t += h;
      return true;
    }
    double lo = 0.0, hi = h;
    while (hi - lo > exit_tol) {
      const double mid = 0.5 * (lo + hi);
      if (ok(rk4_step(rhs, y, mid)))
        lo = mid;
      else
        hi = mid;
    }
    if (lo > 0.0) {
      y = rk4_step(rhs, y, lo);
      t += lo;
    }
    out.exited = true;
    return false;
  };

  const auto nfull = static_cast<std::size_t>(std::floor(span / step + 1e-9));
  for (std::size_t i = 0; i < nfull; ++i) {
    if (!advance(step)) {
      out.reached = t;
      out.has_tail = t > step * static_cast<double>(out.samples.size() - 1);
      out.tail = y;
      return out;
    }
    out.samples.push_back(y);
  }
  const double rest = span - step * static_cast<double>(nfull);
  if (rest > 1e-12) {
    advance(rest);
    out.reached = t;
    out.has_tail = t > step * static_cast<double>(nfull);
    out.tail = y;
  } else {
    out.reached = t;
  }
  return out;
}

}  // namespace ruledgeo::detail
