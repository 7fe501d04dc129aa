#pragma once

#include <array>
#include <cmath>

namespace chnst {

/// Forward-mode first-order dual number carrying N directional derivatives.
/// Drives the element Jacobian: the same density code that produces the
/// residual with T = double produces exact partial derivatives with T = Dual.
template <int N>
struct Dual {
  double v = 0.0;
  std::array<double, N> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit constant lift is the point

  static Dual seeded(double value, int slot) {
    Dual x(value);
    x.d[slot] = 1.0;
    return x;
  }
};

template <int N>
inline double scalar_value(const Dual<N>& x) {
  return x.v;
}

template <int N>
inline Dual<N> operator-(const Dual<N>& x) {
  Dual<N> r(-x.v);
  for (int i = 0; i < N; ++i) r.d[i] = -x.d[i];
  return r;
}

template <int N>
inline Dual<N> operator+(const Dual<N>& a, const Dual<N>& b) {
  Dual<N> r(a.v + b.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
  return r;
}

template <int N>
inline Dual<N> operator-(const Dual<N>& a, const Dual<N>& b) {
  Dual<N> r(a.v - b.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
  return r;
}

template <int N>
inline Dual<N> operator*(const Dual<N>& a, const Dual<N>& b) {
  Dual<N> r(a.v * b.v);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return r;
}

template <int N>
inline Dual<N> operator/(const Dual<N>& a, const Dual<N>& b) {
  Dual<N> r(a.v / b.v);
  const double inv = 1.0 / b.v;
  for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
  return r;
}

template <int N>
inline Dual<N> operator+(const Dual<N>& a, double b) {
  Dual<N> r = a;
  r.v += b;
  return r;
}

template <int N>
inline Dual<N> operator+(double a, const Dual<N>& b) {
  return b + a;
}

template <int N>
inline Dual<N> operator-(const Dual<N>& a, double b) {
  Dual<N> r = a;
  r.v -= b;
  return r;
}

template <int N>
inline Dual<N> operator-(double a, const Dual<N>& b) {
  Dual<N> r(a - b.v);
  for (int i = 0; i < N; ++i) r.d[i] = -b.d[i];
  return r;
}

template <int N>
inline Dual<N> operator*(const Dual<N>& a, double b) {
  Dual<N> r(a.v * b);
  for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b;
  return r;
}

template <int N>
inline Dual<N> operator*(double a, const Dual<N>& b) {
  return b * a;
}

template <int N>
inline Dual<N> operator/(const Dual<N>& a, double b) {
  return a * (1.0 / b);
}

template <int N>
inline Dual<N> operator/(double a, const Dual<N>& b) {
  const double w = a / b.v;
  Dual<N> r(w);
  const double s = -w / b.v;
  for (int i = 0; i < N; ++i) r.d[i] = s * b.d[i];
  return r;
}

template <int N>
inline Dual<N> log(const Dual<N>& x) {
  Dual<N> r(std::log(x.v));
  const double inv = 1.0 / x.v;
  for (int i = 0; i < N; ++i) r.d[i] = x.d[i] * inv;
  return r;
}

}  // namespace chnst
