#pragma once
#include <array>
#include <cmath>

namespace ruledgeo {

// Small fixed-size linear algebra for 3-dimensional chart computations.
struct Vec3 {
  double v[3]{0.0, 0.0, 0.0};

  Vec3() = default;
  Vec3(double a, double b, double c) : v{a, b, c} {}
  explicit Vec3(const std::array<double, 3>& a) : v{a[0], a[1], a[2]} {}

  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }

  Vec3& operator+=(const Vec3& o) {
    v[0] += o.v[0]; v[1] += o.v[1]; v[2] += o.v[2];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    v[0] -= o.v[0]; v[1] -= o.v[1]; v[2] -= o.v[2];
    return *this;
  }
  Vec3& operator*=(double s) {
    v[0] *= s; v[1] *= s; v[2] *= s;
    return *this;
  }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
inline Vec3 operator-(const Vec3& a) { return Vec3(-a[0], -a[1], -a[2]); }

// Euclidean (chart-coordinate) products; metric products live on ChartMetric.
inline double edot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double enorm(const Vec3& a) { return std::sqrt(edot(a, a)); }
inline Vec3 ecross(const Vec3& a, const Vec3& b) {
  return Vec3(a[1] * b[2] - a[2] * b[1],
              a[2] * b[0] - a[0] * b[2],
              a[0] * b[1] - a[1] * b[0]);
}

inline bool finite(const Vec3& a) {
  return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]);
}

struct Mat3 {
  double m[3][3]{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }
  static Mat3 diagonal(double a, double b, double c) {
    Mat3 r;
    r.m[0][0] = a; r.m[1][1] = b; r.m[2][2] = c;
    return r;
  }

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  Vec3 operator*(const Vec3& x) const {
    Vec3 r;
    for (int i = 0; i < 3; ++i)
      r[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
    return r;
  }

  Mat3 operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * s;
    return r;
  }

  double det() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  // Sylvester criterion; valid for symmetric matrices.
  bool positive_definite() const {
    const double d1 = m[0][0];
    const double d2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return d1 > 0.0 && d2 > 0.0 && det() > 0.0;
  }

  Mat3 inverse() const {
    Mat3 r;
    const double d = det();
    r.m[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
    r.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
    r.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
    r.m[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
    r.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
    r.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
    r.m[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
    r.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
    r.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
    return r;
  }
};

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return edot(a, ecross(b, c));
}

inline double clamp_unit(double x) {
  return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x);
}

}  // namespace ruledgeo
