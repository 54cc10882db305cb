#pragma once

// Forward-mode dual numbers carrying N partial derivatives.
//
// The scalar type T is usually double; Dual<Var, N> nests the forward
// derivatives inside the reverse tape so that mixed second derivatives
// d2u/dx dtheta come out of a single backward pass.

#include <array>
#include <cmath>
#include <cstddef>

namespace xpinn::ad {

inline double value_of(double x) { return x; }

template <class T, std::size_t N>
struct Dual {
  T value{};
  std::array<T, N> partials{};

  constexpr Dual() : value(0.0) { partials.fill(T(0.0)); }
  constexpr Dual(double v) : value(v) { partials.fill(T(0.0)); }  // NOLINT: constants convert implicitly
  constexpr Dual(T v, const std::array<T, N>& p) : value(std::move(v)), partials(p) {}

  /// Independent variable number k with seed 1.
  static Dual variable(T v, std::size_t k) {
    Dual d(std::move(v), zero_partials());
    d.partials[k] = T(1.0);
    return d;
  }

  static std::array<T, N> zero_partials() {
    std::array<T, N> p;
    p.fill(T(0.0));
    return p;
  }

  Dual& operator+=(const Dual& o) {
    value = value + o.value;
    for (std::size_t k = 0; k < N; ++k) partials[k] = partials[k] + o.partials[k];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value = value - o.value;
    for (std::size_t k = 0; k < N; ++k) partials[k] = partials[k] - o.partials[k];
    return *this;
  }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
};

template <class T, std::size_t N>
Dual<T, N> operator-(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.value = -a.value;
  for (std::size_t k = 0; k < N; ++k) r.partials[k] = -a.partials[k];
  return r;
}

template <class T, std::size_t N>
Dual<T, N> operator+(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r = a;
  r += b;
  return r;
}

template <class T, std::size_t N>
Dual<T, N> operator-(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r = a;
  r -= b;
  return r;
}

template <class T, std::size_t N>
Dual<T, N> operator*(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.value = a.value * b.value;
  for (std::size_t k = 0; k < N; ++k) r.partials[k] = a.value * b.partials[k] + b.value * a.partials[k];
  return r;
}

template <class T, std::size_t N>
Dual<T, N> operator/(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.value = a.value / b.value;
  const T inv_b2 = 1.0 / (b.value * b.value);
  for (std::size_t k = 0; k < N; ++k)
    r.partials[k] = (a.partials[k] * b.value - a.value * b.partials[k]) * inv_b2;
  return r;
}

template <class T, std::size_t N>
Dual<T, N> operator+(const Dual<T, N>& a, double b) {
  Dual<T, N> r = a;
  r.value = r.value + b;
  return r;
}
template <class T, std::size_t N>
Dual<T, N> operator+(double a, const Dual<T, N>& b) {
  return b + a;
}
template <class T, std::size_t N>
Dual<T, N> operator-(const Dual<T, N>& a, double b) {
  Dual<T, N> r = a;
  r.value = r.value - b;
  return r;
}
template <class T, std::size_t N>
Dual<T, N> operator-(double a, const Dual<T, N>& b) {
  return -b + a;
}
template <class T, std::size_t N>
Dual<T, N> operator*(const Dual<T, N>& a, double b) {
  Dual<T, N> r;
  r.value = a.value * b;
  for (std::size_t k = 0; k < N; ++k) r.partials[k] = a.partials[k] * b;
  return r;
}
template <class T, std::size_t N>
Dual<T, N> operator*(double a, const Dual<T, N>& b) {
  return b * a;
}
template <class T, std::size_t N>
Dual<T, N> operator/(const Dual<T, N>& a, double b) {
  return a * (1.0 / b);
}
template <class T, std::size_t N>
Dual<T, N> operator/(double a, const Dual<T, N>& b) {
  return Dual<T, N>(a) / b;
}

template <class T, std::size_t N>
bool operator<(const Dual<T, N>& a, const Dual<T, N>& b) {
  return a.value < b.value;
}
template <class T, std::size_t N>
bool operator>(const Dual<T, N>& a, const Dual<T, N>& b) {
  return a.value > b.value;
}

/// f(a) given f(a.value) and f'(a.value).
template <class T, std::size_t N>
Dual<T, N> chain(const Dual<T, N>& a, const T& f, const T& df) {
  Dual<T, N> r;
  r.value = f;
  for (std::size_t k = 0; k < N; ++k) r.partials[k] = df * a.partials[k];
  return r;
}

template <class T, std::size_t N>
Dual<T, N> tanh(const Dual<T, N>& a) {
  using std::tanh;
  const T t = tanh(a.value);
  return chain(a, t, 1.0 - t * t);
}

template <class T, std::size_t N>
Dual<T, N> exp(const Dual<T, N>& a) {
  using std::exp;
  const T e = exp(a.value);
  return chain(a, e, e);
}

template <class T, std::size_t N>
Dual<T, N> log(const Dual<T, N>& a) {
  using std::log;
  return chain(a, T(log(a.value)), T(1.0 / a.value));
}

template <class T, std::size_t N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
  using std::sqrt;
  const T s = sqrt(a.value);
  return chain(a, s, T(0.5 / s));
}

template <class T, std::size_t N>
Dual<T, N> sin(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  return chain(a, T(sin(a.value)), T(cos(a.value)));
}

template <class T, std::size_t N>
Dual<T, N> cos(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  return chain(a, T(cos(a.value)), T(-sin(a.value)));
}

template <class T, std::size_t N>
Dual<T, N> erf(const Dual<T, N>& a) {
  using std::erf;
  using std::exp;
  constexpr double two_over_sqrt_pi = 1.1283791670955126;
  return chain(a, T(erf(a.value)), T(two_over_sqrt_pi * exp(-(a.value * a.value))));
}

/// |a| with subgradient 0 at the kink.
template <class T, std::size_t N>
Dual<T, N> abs(const Dual<T, N>& a) {
  using std::abs;
  const double v = value_of(a.value);
  const double s = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
  return chain(a, T(abs(a.value)), T(s));
}

template <class T, std::size_t N>
Dual<T, N> pow(const Dual<T, N>& a, int n) {
  if (n == 0) return Dual<T, N>(1.0);
  Dual<T, N> r = a;
  for (int i = 1; i < n; ++i) r = r * a;
  return r;
}

template <class T, std::size_t N>
double value_of(const Dual<T, N>& d) {
  return value_of(d.value);
}

}  // namespace xpinn::ad
