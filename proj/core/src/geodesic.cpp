#include "ruledgeo/geodesic.hpp"

#include <cmath>
#include <stdexcept>

#include "ruledgeo/integrate.hpp"

namespace ruledgeo {

namespace {

using detail::StateN;

StateN<6> pack6(const Vec3& x, const Vec3& v) {
  return {x[0], x[1], x[2], v[0], v[1], v[2]};
}

GeodesicState unpack6(const StateN<6>& y, double arc) {
  return GeodesicState{Vec3(y[0], y[1], y[2]), Vec3(y[3], y[4], y[5]), arc};
}

struct GeodesicRhs {
  const ChartMetric* m;
  StateN<6> operator()(const StateN<6>& y) const {
    const Vec3 x(y[0], y[1], y[2]);
    const Vec3 v(y[3], y[4], y[5]);
    const Christoffel c = m->christoffel_stage(x);
    StateN<6> d{v[0], v[1], v[2], 0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      double a = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) a += c.sym[i][j][k] * v[j] * v[k];
      d[3 + i] = -a;
    }
    return d;
  }
};

template <std::size_t N>
bool state_in_domain(const ChartMetric& m, const StateN<N>& y) {
  for (double c : y)
    if (!std::isfinite(c)) return false;
  return m.in_domain(Vec3(y[0], y[1], y[2]));
}

}  // namespace

const GeodesicState& GeodesicTrace::endpoint() const {
  if (samples_.empty()) throw GeometryError("empty geodesic trace");
  return samples_.back();
}

GeodesicState GeodesicTrace::state_at(double v) const {
  if (v < -1e-12 || v > reached_ + 1e-9)
    throw LeftChartDomain("geodesic parameter beyond the integrated range");
  if (v < 0.0) v = 0.0;
  if (v > reached_) v = reached_;
  auto i = static_cast<std::size_t>(std::floor(v / step_ + 1e-9));
  if (i >= samples_.size()) i = samples_.size() - 1;
  const GeodesicState& s = samples_[i];
  const double h = v - s.arc;
  if (std::abs(h) < 1e-13) {
    GeodesicState r = s;
    r.arc = v;
    return r;
  }
  const StateN<6> y = detail::rk4_step(GeodesicRhs{metric_},
                                       pack6(s.x, s.vel), h);
  return unpack6(y, v);
}

GeodesicTrace exp_map(const ChartMetric& m, const ChartPoint& p,
                      const TangentVec& Z, double v_max, double step) {
  if (step <= 0.0) throw std::invalid_argument("exp_map: step must be > 0");
  m.metric(p.coords);  // domain check
  GeodesicTrace trace(&m, step);
  const auto drive = detail::rk4_drive<6>(
      GeodesicRhs{&m},
      [&m](const StateN<6>& y) { return state_in_domain(m, y); },
      pack6(p.coords, Z.components), v_max, step);
  trace.samples_.reserve(drive.samples.size());
  for (std::size_t i = 0; i < drive.samples.size(); ++i)
    trace.samples_.push_back(
        unpack6(drive.samples[i], step * static_cast<double>(i)));
  if (drive.has_tail) trace.samples_.push_back(unpack6(drive.tail, drive.reached));
  trace.reached_ = drive.reached;
  trace.exited_ = drive.exited;
  return trace;
}

TangentVec parallel_transport(const ChartMetric& m, const GeodesicTrace& geo,
                              const TangentVec& w0, double v) {
  if (geo.samples().empty()) throw GeometryError("empty geodesic trace");
  if (v < 0.0) v = geo.reached();
  if (v > geo.reached() + 1e-9)
    throw LeftChartDomain("transport parameter beyond the integrated range");

  struct Rhs {
    const ChartMetric* m;
    StateN<9> operator()(const StateN<9>& y) const {
      const Vec3 x(y[0], y[1], y[2]);
      const Vec3 vel(y[3], y[4], y[5]);
      const Vec3 w(y[6], y[7], y[8]);
      const Christoffel c = m->christoffel_stage(x);
      StateN<9> d{vel[0], vel[1], vel[2], 0, 0, 0, 0, 0, 0};
      for (int i = 0; i < 3; ++i) {
        double a = 0.0, b = 0.0;
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            a += c.sym[i][j][k] * vel[j] * vel[k];
            b += c.sym[i][j][k] * vel[j] * w[k];
          }
        d[3 + i] = -a;
        d[6 + i] = -b;
      }
      return d;
    }
  };

  const GeodesicState& s0 = geo[0];
  StateN<9> y{s0.x[0],  s0.x[1],  s0.x[2],  s0.vel[0],          s0.vel[1],
              s0.vel[2], w0.components[0], w0.components[1], w0.components[2]};
  const auto drive = detail::rk4_drive<9>(
      Rhs{&m}, [&m](const StateN<9>& s) { return state_in_domain(m, s); }, y,
      v, geo.step());
  const StateN<9>& ye = drive.has_tail ? drive.tail : drive.samples.back();
  if (drive.reached < v - 1e-9)
    throw LeftChartDomain("parallel transport left the chart domain");
  return TangentVec{ChartPoint{Vec3(ye[0], ye[1], ye[2])},
                    Vec3(ye[6], ye[7], ye[8])};
}

std::vector<JacobiState> integrate_jacobi(const ChartMetric& m,
                                          const GeodesicTrace& geo,
                                          const Vec3& J0, const Vec3& DJ0) {
  struct Rhs {
    const ChartMetric* m;
    StateN<12> operator()(const StateN<12>& y) const {
      const Vec3 x(y[0], y[1], y[2]);
      const Vec3 vel(y[3], y[4], y[5]);
      const Vec3 J(y[6], y[7], y[8]);
      const Vec3 DJ(y[9], y[10], y[11]);
      const Christoffel c = m->christoffel_stage(x);
      const RiemannTensor R = m->riemann_stage(x);
      const Vec3 RJvv = ChartMetric::curvature_op(R, J, vel, vel);
      StateN<12> d{};
      for (int i = 0; i < 3; ++i) {
        double acc = 0.0, gJ = 0.0, gDJ = 0.0;
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            acc += c.sym[i][j][k] * vel[j] * vel[k];
            gJ += c.sym[i][j][k] * vel[j] * J[k];
            gDJ += c.sym[i][j][k] * vel[j] * DJ[k];
          }
        d[i] = vel[i];
        d[3 + i] = -acc;
        d[6 + i] = DJ[i] - gJ;          // dJ/dv = (∇J) − Γ(ẋ, J)
        d[9 + i] = -gDJ - RJvv[i];      // ∇∇J = −R(J, ẋ)ẋ
      }
      return d;
    }
  };

  if (geo.samples().empty()) throw GeometryError("empty geodesic trace");
  const GeodesicState& s0 = geo[0];
  StateN<12> y{s0.x[0],   s0.x[1],   s0.x[2],  s0.vel[0], s0.vel[1],
               s0.vel[2], J0[0],     J0[1],    J0[2],     DJ0[0],
               DJ0[1],    DJ0[2]};
  const auto drive = detail::rk4_drive<12>(
      Rhs{&m}, [&m](const StateN<12>& s) { return state_in_domain(m, s); }, y,
      geo.reached(), geo.step());

  std::vector<JacobiState> out;
  out.reserve(drive.samples.size() + 1);
  auto push = [&out](const StateN<12>& s, double arc) {
    out.push_back(JacobiState{
        Vec3(s[6], s[7], s[8]), Vec3(s[9], s[10], s[11]),
        GeodesicState{Vec3(s[0], s[1], s[2]), Vec3(s[3], s[4], s[5]), arc}});
  };
  for (std::size_t i = 0; i < drive.samples.size(); ++i)
    push(drive.samples[i], geo.step() * static_cast<double>(i));
  if (drive.has_tail) push(drive.tail, drive.reached);
  return out;
}

JacobiDecomposition decompose_jacobi(const ChartMetric& m,
                                     const JacobiState& state,
                                     double alpha_prime_norm, double sigma_p) {
  (void)m;
  const double coeff = alpha_prime_norm * std::cos(sigma_p);
  return JacobiDecomposition{coeff, state.J - coeff * state.geo.vel};
}

}  // namespace ruledgeo
