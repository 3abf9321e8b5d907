// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "core/error.hpp"

namespace ellforge {

using Rational = mpq_class;

// a/b in canonical form (mpq_class(a, b) does not reduce).
inline Rational ratio(long a, long b) {
  require(b != 0, ErrorKind::kDomain, "zero denominator");
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// Canonical decimal form: "p" or "p/q", q > 0, gcd 1.
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view s);
double to_double(const Rational& x);

// Exact a + b i with a, b rational.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussianRational& operator*=(const Rational& s) {
    re *= s;
    im *= s;
    return *this;
  }
};

inline GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
inline GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
inline GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
inline GaussianRational operator*(GaussianRational a, const Rational& s) { return a *= s; }
inline GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
inline bool operator==(const GaussianRational& a, const GaussianRational& b) {
  return a.re == b.re && a.im == b.im;
}

// i^k as a Gaussian rational.
GaussianRational i_power(int k);

}  // namespace ellforge
