#ifndef ROCFLOW_JET_HPP
#define ROCFLOW_JET_HPP

#include <cmath>

#include "rocflow/errors.hpp"

namespace rocflow {

// Value and partial derivatives of a curvature function at a point of the
// radii-of-curvature half-plane. Ordered subscripts: first index is the
// psi-derivative count, second the |sigma|-derivative count.
struct FlowJet {
  double K = 0.0;
  double K10 = 0.0;
  double K01 = 0.0;
  double K20 = 0.0;
  double K11 = 0.0;
  double K02 = 0.0;
};

// Truncated second-order Taylor jet in two variables, used for forward-mode
// automatic differentiation. Coefficients: value, d/dp, d/dq, d2/dp2,
// d2/dpdq, d2/dq2 where (p, q) are the two independent variables.
template <class T>
struct Jet2 {
  T v{}, p{}, q{}, pp{}, pq{}, qq{};

  static Jet2 constant(T c) { return {c, T{}, T{}, T{}, T{}, T{}}; }
  static Jet2 var_p(T x) { return {x, T{1}, T{}, T{}, T{}, T{}}; }
  static Jet2 var_q(T x) { return {x, T{}, T{1}, T{}, T{}, T{}}; }
};

template <class T>
Jet2<T> operator+(const Jet2<T>& a, const Jet2<T>& b) {
  return {a.v + b.v, a.p + b.p, a.q + b.q, a.pp + b.pp, a.pq + b.pq, a.qq + b.qq};
}

template <class T>
Jet2<T> operator-(const Jet2<T>& a, const Jet2<T>& b) {
  return {a.v - b.v, a.p - b.p, a.q - b.q, a.pp - b.pp, a.pq - b.pq, a.qq - b.qq};
}

template <class T>
Jet2<T> operator-(const Jet2<T>& a) {
  return {-a.v, -a.p, -a.q, -a.pp, -a.pq, -a.qq};
}

template <class T>
Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
  Jet2<T> r;
  r.v = a.v * b.v;
  r.p = a.p * b.v + a.v * b.p;
  r.q = a.q * b.v + a.v * b.q;
  r.pp = a.pp * b.v + T{2} * a.p * b.p + a.v * b.pp;
  r.pq = a.pq * b.v + a.p * b.q + a.q * b.p + a.v * b.pq;
  r.qq = a.qq * b.v + T{2} * a.q * b.q + a.v * b.qq;
  return r;
}

template <class T>
Jet2<T> operator*(T c, const Jet2<T>& a) {
  return {c * a.v, c * a.p, c * a.q, c * a.pp, c * a.pq, c * a.qq};
}

// Composition with a scalar function given by value and two derivatives at
// g.v: f(g), f'(g), f''(g).
template <class T>
Jet2<T> compose(const Jet2<T>& g, T f, T f1, T f2) {
  Jet2<T> r;
  r.v = f;
  r.p = f1 * g.p;
  r.q = f1 * g.q;
  r.pp = f2 * g.p * g.p + f1 * g.pp;
  r.pq = f2 * g.p * g.q + f1 * g.pq;
  r.qq = f2 * g.q * g.q + f1 * g.qq;
  return r;
}

inline Jet2<double> inv(const Jet2<double>& a) {
  if (a.v == 0.0) throw EvalDomain("division by zero");
  double iv = 1.0 / a.v;
  return compose(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

template <class T>
Jet2<T> operator/(const Jet2<T>& a, const Jet2<T>& b) {
  return a * inv(b);
}

inline Jet2<double> exp(const Jet2<double>& a) {
  double e = std::exp(a.v);
  return compose(a, e, e, e);
}

inline Jet2<double> log(const Jet2<double>& a) {
  if (a.v <= 0.0) throw EvalDomain("log of non-positive value");
  return compose(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

inline Jet2<double> sqrt(const Jet2<double>& a) {
  if (a.v < 0.0) throw EvalDomain("sqrt of negative value");
  if (a.v == 0.0) throw EvalDomain("sqrt derivative singular at zero");
  double s = std::sqrt(a.v);
  return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

// a^c for real constant exponent c.
inline Jet2<double> pow(const Jet2<double>& a, double c) {
  if (a.v <= 0.0 && c != std::floor(c))
    throw EvalDomain("non-integer power of non-positive base");
  if (a.v == 0.0 && c < 2.0)
    throw EvalDomain("power derivative singular at zero base");
  double f = std::pow(a.v, c);
  double f1 = c * std::pow(a.v, c - 1.0);
  double f2 = c * (c - 1.0) * std::pow(a.v, c - 2.0);
  return compose(a, f, f1, f2);
}

// General power a^b via exp(b log a).
inline Jet2<double> pow(const Jet2<double>& a, const Jet2<double>& b) {
  return exp(b * log(a));
}

inline FlowJet to_flow_jet(const Jet2<double>& j) {
  return {j.v, j.p, j.q, j.pp, j.pq, j.qq};
}

// Chain rule: the jet of K(a, b) where K is given by its second-order data at
// (a.v, b.v) and a, b are jets in some other pair of variables.
inline Jet2<double> apply_jet(const FlowJet& k, const Jet2<double>& a,
                              const Jet2<double>& b) {
  Jet2<double> r;
  r.v = k.K;
  r.p = k.K10 * a.p + k.K01 * b.p;
  r.q = k.K10 * a.q + k.K01 * b.q;
  r.pp = k.K20 * a.p * a.p + 2.0 * k.K11 * a.p * b.p + k.K02 * b.p * b.p +
         k.K10 * a.pp + k.K01 * b.pp;
  r.pq = k.K20 * a.p * a.q + k.K11 * (a.p * b.q + a.q * b.p) +
         k.K02 * b.p * b.q + k.K10 * a.pq + k.K01 * b.pq;
  r.qq = k.K20 * a.q * a.q + 2.0 * k.K11 * a.q * b.q + k.K02 * b.q * b.q +
         k.K10 * a.qq + k.K01 * b.qq;
  return r;
}

}  // namespace rocflow

#endif
