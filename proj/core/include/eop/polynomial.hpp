#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace eop {

// Polynomial with coefficients in ascending degree order.
template <class T>
struct BasicPoly {
  std::vector<T> c;

  BasicPoly() = default;
  explicit BasicPoly(std::vector<T> coeffs) : c(std::move(coeffs)) {}

  static BasicPoly constant(T v) { return BasicPoly(std::vector<T>{v}); }
  static BasicPoly x() { return BasicPoly(std::vector<T>{T(0), T(1)}); }

  // Index of the last nonzero coefficient, -1 for the zero polynomial.
  int degree() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
      if (c[i] != T(0)) return i;
    return -1;
  }
  T leading() const {
    const int d = degree();
    return d < 0 ? T(0) : c[d];
  }
  T coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : T(0); }

  template <class U>
  auto operator()(U x) const {
    decltype(T(0) * x) v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c[i];
    return v;
  }

  BasicPoly derivative() const {
    if (c.size() <= 1) return BasicPoly::constant(T(0));
    std::vector<T> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = T(double(i)) * c[i];
    return BasicPoly(d);
  }

  BasicPoly trimmed() const {
    BasicPoly p(c);
    p.c.resize(std::max(1, degree() + 1));
    return p;
  }

  BasicPoly monic() const {
    const T l = leading();
    BasicPoly p = trimmed();
    for (auto& v : p.c) v /= l;
    return p;
  }

  // p(s x + t)
  BasicPoly compose_affine(T s, T t) const {
    BasicPoly out = BasicPoly::constant(T(0));
    const BasicPoly lin(std::vector<T>{t, s});
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) out = out * lin + BasicPoly::constant(c[i]);
    return out;
  }

  friend BasicPoly operator+(const BasicPoly& a, const BasicPoly& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return BasicPoly(r);
  }
  friend BasicPoly operator-(const BasicPoly& a, const BasicPoly& b) { return a + b * T(-1); }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    if (a.c.empty() || b.c.empty()) return BasicPoly::constant(T(0));
    std::vector<T> r(a.c.size() + b.c.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return BasicPoly(r);
  }
  friend BasicPoly operator*(const BasicPoly& a, T s) {
    BasicPoly p(a.c);
    for (auto& v : p.c) v *= s;
    return p;
  }
  friend BasicPoly operator*(T s, const BasicPoly& a) { return a * s; }
};

using Poly = BasicPoly<double>;
using CPoly = BasicPoly<std::complex<double>>;

// p(x) = q(x) (x - r) + rem, by synthetic division.
template <class T>
struct Division {
  BasicPoly<T> quotient;
  T remainder;
};

template <class T>
Division<T> synthetic_division(const BasicPoly<T>& p, T r) {
  const int n = static_cast<int>(p.c.size()) - 1;
  if (n <= 0) return {BasicPoly<T>::constant(T(0)), p.coeff(0)};
  std::vector<T> q(n);
  T acc = p.c[n];
  for (int i = n - 1; i >= 0; --i) {
    q[i] = acc;
    acc = p.c[i] + acc * r;
  }
  return {BasicPoly<T>(q), acc};
}

inline CPoly to_complex(const Poly& p) {
  CPoly q;
  q.c.assign(p.c.begin(), p.c.end());
  return q;
}

// Real roots in [lo, hi] from the companion matrix eigenvalues, polished by
// Newton steps. Roots with |Im| > imag_tol * (1 + |z|) are dropped. Sorted.
std::vector<double> real_roots(const Poly& p, double lo, double hi, double imag_tol = 1e-7);
// All complex roots (companion eigenvalues).
std::vector<std::complex<double>> all_roots(const Poly& p);

}  // namespace eop
