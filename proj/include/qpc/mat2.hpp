#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <cmath>
#include <complex>

#include "qpc/torus_function.hpp"

namespace qpc {

/// 2x2 complex matrix ((a, b), (c, d)).
struct Mat2 {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static constexpr Mat2 identity() { return {}; }
  static Mat2 diagonal(cplx x, cplx y) { return {x, 0.0, 0.0, y}; }

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  /// Max-absolute-entry norm.
  double norm_max() const { return std::sqrt(norm_max_squared()); }
  double norm_max_squared() const {
    return std::max(std::max(std::norm(a), std::norm(b)), std::max(std::norm(c), std::norm(d)));
  }
  /// Inverse assuming det = 1 (the adjugate).
  Mat2 sl_inverse() const { return {d, -b, -c, a}; }
  Mat2 inverse() const {
    const cplx D = det();
    return {d / D, -b / D, -c / D, a / D};
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator*(cplx s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
};

/// A vector in C^2, used for projective directions.
struct Vec2 {
  cplx x{1.0}, y{0.0};

  double norm() const { return std::hypot(std::abs(x), std::abs(y)); }
  Vec2 normalized() const {
    const double n = norm();
    return {x / n, y / n};
  }
  friend Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
  }
};

/// Sine of the angle between the complex lines spanned by v and w.
inline double projective_distance(const Vec2& v, const Vec2& w) {
  return std::abs(v.x * w.y - v.y * w.x) / (v.norm() * w.norm());
}

/// Matrix e^{logscale} * m with the max-entry norm of m kept in [1/2, 2].
/// Rescaling is by exact powers of two, so it never perturbs the represented matrix.
struct ScaledMatrix {
  Mat2 m = Mat2::identity();
  double logscale = 0.0;

  void renormalize() {
    const double n2 = m.norm_max_squared();
    if (n2 >= 0.25 && n2 <= 4.0) return;
    if (!(n2 > std::numeric_limits<double>::min()) || !std::isfinite(n2)) return;
    // n2 in [2^e2, 2^(e2+1)), so scaling by 2^-(e2 >> 1) lands the norm in [1, 2).
    const int e2 = static_cast<int>((std::bit_cast<std::uint64_t>(n2) >> 52) & 0x7ff) - 1023;
    const int e = e2 >> 1;
    const double factor = std::bit_cast<double>(static_cast<std::uint64_t>(1023 - e) << 52);
    m = cplx(factor) * m;
    logscale += e * 0.69314718055994530941723212145818;
  }

  /// this <- x * this
  void left_multiply(const Mat2& x) {
    m = x * m;
    renormalize();
  }

  Mat2 represented() const { return cplx(std::exp(logscale)) * m; }
  /// ln of the max-entry norm of the represented matrix.
  double log_norm() const { return logscale + std::log(m.norm_max()); }
  /// Inverse of a unimodular represented matrix.
  ScaledMatrix sl_inverse() const { return {m.sl_inverse(), logscale}; }
};

/// Spectral radius of a unimodular matrix: the larger root modulus of
/// z^2 - tr z + 1. Throws NotUnimodular when |det - 1| > 1e-6.
double spectral_radius(const Mat2& m);

/// ln rho(t) for the unimodular matrix with trace t, clamped at 0.
double log_spectral_radius_from_trace(cplx t);

/// ln rho of the represented matrix without forming it.
double log_spectral_radius(const ScaledMatrix& s);

}  // namespace qpc
