// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Lattices, the SL2(Z) x C^* action, Eisenstein series and the discriminant.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/numeric.hpp"
#include "core/series.hpp"

namespace ellforge {

using QSeries = Series<Rational>;

struct Lattice {
  Complex l1, l2;

  Complex tau() const { return l1 / l2; }
  Complex q() const { return std::exp(kTwoPiI * tau()); }
  // Area of C / Lambda.
  double vol() const { return std::imag(std::conj(l2) * l1); }
};

Lattice make_lattice(Complex l1, Complex l2);
// Lattice with generators (tau, 1).
Lattice lattice_from_tau(Complex tau);

struct SL2Z {
  long a = 1, b = 0, c = 0, d = 1;

  static SL2Z identity() { return {}; }
  static SL2Z S() { return {0, -1, 1, 0}; }
  static SL2Z T() { return {1, 1, 0, 1}; }
  SL2Z operator*(const SL2Z& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const SL2Z& o) const = default;
  Complex mobius(Complex tau) const { return (double(a) * tau + double(b)) / (double(c) * tau + double(d)); }
  std::string str() const;
};

// (mu^2 (a l1 + b l2), mu^2 (c l1 + d l2)); a left action.
Lattice act(const SL2Z& g, Complex mu, const Lattice& lat);

// Weight is stored doubled so that half-integral weights are exact.
struct ModularObject {
  std::string name;
  int weight_twice = 0;
  std::string group = "SL2(Z)";
  QSeries qexp;
  bool quasimodular = false;

  double weight() const { return weight_twice / 2.0; }
  // (2 pi i / l2)^weight * qexp(q); integral weights only.
  Complex evaluate(const Lattice& lat) const;
};

Rational bernoulli(int n);
Rational divisor_sigma(int k, int n);

// G_k = -B_k/(2k) + sum sigma_{k-1}(n) q^n.
ModularObject eisenstein_q(int k, int order);
// q prod (1 - q^n)^24.
ModularObject delta_q(int order);

// Ratio between the lattice sum sum' omega^{-k} and the evaluator of
// eisenstein_q(k): 2/(k-1)!. Fitted from eisenstein_num; see tests.
Rational lattice_sum_scale(int k);

// Symmetric-square partial lattice sum over |m|,|n| <= M, (m,n) != 0.
Complex eisenstein_num(int k, const Lattice& lat, int M);
// Two-level extrapolation (2^{k-2} S(2M) - S(M)) / (2^{k-2} - 1), removing the
// M^{2-k} tail of the square truncation.
Complex eisenstein_num_extrapolated(int k, const Lattice& lat, int M);

struct WeightSample {
  SL2Z gamma;
  Complex mu;
  Lattice lattice;
};

struct WeightSampleResult {
  WeightSample sample;
  Complex value;       // f(act(gamma, mu, lattice))
  Complex predicted;   // mu^{-2 weight} f(lattice)
  double residual = 0; // relative
  // Quasimodular objects: [g(gamma tau) - (c tau + d)^w g(tau)] / (c (c tau + d)).
  std::optional<Complex> anomaly;
};

struct WeightReport {
  std::string name;
  double tol = 0;
  bool passed = false;
  std::vector<WeightSampleResult> results;
  double max_residual = 0;
  std::optional<Complex> anomaly_mean;
  double anomaly_spread = 0;
};

// Lattices with Im tau in [1, 2], random S/T words, mu of modulus near 1;
// words whose image has Im(gamma tau) < min_image_im are rejected.
std::vector<WeightSample> random_weight_samples(Rng& rng, int count, double min_image_im = 0.25);

WeightReport check_weight(const ModularObject& f, const std::vector<WeightSample>& samples, double tol);

// Exact membership of f in the span of G4^a G6^b. weight >= 0 restricts to
// that homogeneous weight; weight < 0 allows every weight <= max_weight.
struct G4G6Term {
  int a, b;
  Rational coeff;
};
std::optional<std::vector<G4G6Term>> decompose_g4g6(const QSeries& f, int weight, int max_weight = 0);
std::string format_g4g6(const std::vector<G4G6Term>& terms);

}  // namespace ellforge
