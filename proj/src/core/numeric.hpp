// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "core/series.hpp"

namespace ellforge {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64";

// 50-digit floats for checks whose residuals sit far below double epsilon.
using HighFloat = boost::multiprecision::cpp_bin_float_50;
using HighComplex = boost::multiprecision::cpp_complex_50;

inline constexpr double kPi = 3.14159265358979323846;
inline const Complex kTwoPiI(0.0, 2.0 * kPi);

template <class C>
C to_complex(const Rational& x);
template <>
inline Complex to_complex<Complex>(const Rational& x) {
  return Complex(x.get_d(), 0.0);
}
template <>
inline HighComplex to_complex<HighComplex>(const Rational& x) {
  return HighComplex(HighFloat(x.get_num().get_str()) / HighFloat(x.get_den().get_str()));
}

// Horner evaluation of a Laurent q-series at a numeric point.
template <class C>
C evaluate(const Series<Rational>& s, const C& x) {
  C acc(0);
  if (s.is_zero()) return acc;
  int lo = s.valuation();
  int hi = s.degree();
  for (int e = hi; e >= lo; --e) {
    acc *= x;
    Rational c = s.coeff(e);
    if (sgn(c) != 0) acc += to_complex<C>(c);
  }
  if (lo > 0) {
    C p(1);
    for (int k = 0; k < lo; ++k) p *= x;
    acc *= p;
  } else if (lo < 0) {
    C p(1);
    for (int k = 0; k < -lo; ++k) p *= x;
    acc /= p;
  }
  return acc;
}

// Worker count from ELLFORGE_THREADS (default: hardware concurrency).
int thread_cap();

// Runs body(i) for i in [0, n) on up to thread_cap() threads. Each index is
// handled by exactly one call; results must be written to per-index slots.
void parallel_for(int n, const std::function<void(int)>& body);

// 17 significant digits.
std::string format_double(double x);

}  // namespace ellforge
