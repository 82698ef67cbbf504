#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace biharm {

/// Second-order truncated Taylor number: value, gradient and symmetric
/// Hessian with respect to a fixed set of `m` parameters.
template <typename T>
struct Jet2 {
  using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

  T value{};
  Vector grad;
  Matrix hess;

  Jet2() = default;
  Jet2(T v, int m) : value(v), grad(Vector::Zero(m)), hess(Matrix::Zero(m, m)) {}
  Jet2(T v, Vector g, Matrix h) : value(v), grad(std::move(g)), hess(std::move(h)) {}

  static Jet2 constant(T v, int m) { return Jet2(v, m); }
  /// The coordinate function u_k evaluated at `v`.
  static Jet2 variable(T v, int k, int m) {
    Jet2 j(v, m);
    j.grad(k) = T(1);
    return j;
  }

  int params() const { return static_cast<int>(grad.size()); }
};

/// Chain rule for a scalar function g with g(a), g'(a), g''(a) already known.
template <typename T>
Jet2<T> compose(const Jet2<T>& a, T g0, T g1, T g2) {
  // Materialised first: Eigen would otherwise fold g2 into one factor and break symmetry.
  const typename Jet2<T>::Matrix outer = a.grad * a.grad.transpose();
  return Jet2<T>(g0, g1 * a.grad, g1 * a.hess + g2 * outer);
}

template <typename T>
Jet2<T> operator-(const Jet2<T>& a) {
  return Jet2<T>(-a.value, -a.grad, -a.hess);
}

template <typename T>
Jet2<T> operator+(const Jet2<T>& a, const Jet2<T>& b) {
  return Jet2<T>(a.value + b.value, a.grad + b.grad, a.hess + b.hess);
}

template <typename T>
Jet2<T> operator-(const Jet2<T>& a, const Jet2<T>& b) {
  return Jet2<T>(a.value - b.value, a.grad - b.grad, a.hess - b.hess);
}

template <typename T>
Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
  typename Jet2<T>::Matrix cross = a.grad * b.grad.transpose();
  return Jet2<T>(a.value * b.value, a.value * b.grad + b.value * a.grad,
                 a.value * b.hess + b.value * a.hess + cross + cross.transpose());
}

template <typename T>
Jet2<T> operator*(T s, const Jet2<T>& a) {
  return Jet2<T>(s * a.value, s * a.grad, s * a.hess);
}

template <typename T>
Jet2<T> operator*(const Jet2<T>& a, T s) {
  return s * a;
}

template <typename T>
Jet2<T> operator+(const Jet2<T>& a, T s) {
  return Jet2<T>(a.value + s, a.grad, a.hess);
}

template <typename T>
Jet2<T> operator+(T s, const Jet2<T>& a) {
  return a + s;
}

template <typename T>
Jet2<T> operator-(const Jet2<T>& a, T s) {
  return a + (-s);
}

template <typename T>
Jet2<T> operator-(T s, const Jet2<T>& a) {
  return (-a) + s;
}

template <typename T>
Jet2<T> reciprocal(const Jet2<T>& a) {
  const T inv = T(1) / a.value;
  return compose(a, inv, -inv * inv, T(2) * inv * inv * inv);
}

template <typename T>
Jet2<T> operator/(const Jet2<T>& a, const Jet2<T>& b) {
  return a * reciprocal(b);
}

template <typename T>
Jet2<T> operator/(const Jet2<T>& a, T s) {
  return a * (T(1) / s);
}

template <typename T>
Jet2<T> operator/(T s, const Jet2<T>& a) {
  return s * reciprocal(a);
}

template <typename T>
Jet2<T> sin(const Jet2<T>& a) {
  using std::cos;
  using std::sin;
  const T s = sin(a.value), c = cos(a.value);
  return compose(a, s, c, -s);
}

template <typename T>
Jet2<T> cos(const Jet2<T>& a) {
  using std::cos;
  using std::sin;
  const T s = sin(a.value), c = cos(a.value);
  return compose(a, c, -s, -c);
}

template <typename T>
Jet2<T> sinh(const Jet2<T>& a) {
  using std::cosh;
  using std::sinh;
  const T s = sinh(a.value), c = cosh(a.value);
  return compose(a, s, c, s);
}

template <typename T>
Jet2<T> cosh(const Jet2<T>& a) {
  using std::cosh;
  using std::sinh;
  const T s = sinh(a.value), c = cosh(a.value);
  return compose(a, c, s, c);
}

template <typename T>
Jet2<T> tanh(const Jet2<T>& a) {
  using std::tanh;
  const T t = tanh(a.value);
  const T d = T(1) - t * t;
  return compose(a, t, d, T(-2) * t * d);
}

template <typename T>
Jet2<T> exp(const Jet2<T>& a) {
  using std::exp;
  const T e = exp(a.value);
  return compose(a, e, e, e);
}

// Requires a.value > 0.
template <typename T>
Jet2<T> log(const Jet2<T>& a) {
  using std::log;
  const T inv = T(1) / a.value;
  return compose(a, log(a.value), inv, -inv * inv);
}

// Requires a.value > 0.
template <typename T>
Jet2<T> sqrt(const Jet2<T>& a) {
  using std::sqrt;
  const T r = sqrt(a.value);
  return compose(a, r, T(0.5) / r, T(-0.25) / (r * r * r));
}

/// a^k for integer k; k < 0 requires a.value != 0.
template <typename T>
Jet2<T> pow(const Jet2<T>& a, int k) {
  using std::pow;
  if (k == 0) return Jet2<T>::constant(T(1), a.params());
  if (k == 1) return a;
  const T v = a.value;
  const T g0 = pow(v, k);
  const T g1 = T(k) * pow(v, k - 1);
  const T g2 = T(k) * T(k - 1) * pow(v, k - 2);
  return compose(a, g0, g1, g2);
}

}  // namespace biharm
