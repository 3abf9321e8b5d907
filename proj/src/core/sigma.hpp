// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// The sigma function in product, exponential and numerical form, its
// quasi-periods, Taylor coefficients, and the formal group laws it induces.
//
// Exact expansions are of s(z) = sigma(z) / lambda2; the lambda2 prefactor
// of the normalized form is kept symbolic.

#pragma once

#include <string>
#include <vector>

#include "core/modforms.hpp"

namespace ellforge {

using ZSeries = Series<QSeries>;  // z-series with q-series coefficients
using QMulti = MultiSeries<QSeries>;

enum class SigmaForm { kNormalized, kRaw };

struct SigmaSeries {
  int q_order = 0;
  int z_order = 0;
  SigmaForm form = SigmaForm::kNormalized;
  // Normalized: coefficients of lambda2^{-1} sigma. Raw: the raw product itself.
  ZSeries expansion;
  bool lambda2_prefactor() const { return form == SigmaForm::kNormalized; }
};

// lambda2 (1 - e^{-z}) prod (1 - q^n e^{-z})(1 - q^n e^z) / (1 - q^n)^2, or the
// raw product (1 - e^z) prod (1 - q^n e^z)(1 - q^n e^{-z}).
SigmaSeries sigma_product(int q_order, int z_order, bool normalized = true);

// log(s(z)/z) = linear * z - sum_k c_k G_{2k} z^{2k}.
struct SigmaExpConstants {
  Rational linear;
  std::vector<Rational> c;  // c[0] is c_1, the G2 coefficient
};

// Frozen constants: linear = -1/2, c_k = 2/(2k)!.
Rational sigma_linear_constant();
Rational sigma_exp_constant(int k);

// Re-derives the constants by exact coefficient matching against the
// product; consistent is false if log(s/z) is not of the assumed shape.
struct DerivedSigmaConstants {
  SigmaExpConstants constants;
  bool consistent = false;
  std::string detail;
};
DerivedSigmaConstants derive_sigma_exp_constants(int max_k, int q_order);

struct ExponentialOptions {
  bool linear_factor = true;  // e^{-z/2}
  bool g2 = true;             // the k = 1 term
  bool higher = true;         // k >= 2 terms
};
SigmaSeries sigma_exponential(int q_order, int z_order, ExponentialOptions opts = {});

// s(z) at q = exp(2 pi i tau), product truncated at n <= M.
template <class C>
C sigma_reduced(const C& q, const C& z, int M) {
  using std::exp;
  C one(1);
  C ez = exp(z), emz = exp(-z);
  C prod = one - emz;
  C qn = one;
  for (int n = 1; n <= M; ++n) {
    qn *= q;
    C den = one - qn;
    prod *= (one - qn * emz) * (one - qn * ez) / (den * den);
  }
  return prod;
}

// lambda2 s(z).
Complex sigma_num(const Lattice& lat, Complex z, int M);
// Product length giving |q|^M below 10^{-digits}.
int sigma_product_length(double abs_q, int digits);

// Evaluate a z-series with q-series coefficients at numeric (q, z).
Complex evaluate(const ZSeries& s, Complex q, Complex z);
HighComplex evaluate(const ZSeries& s, const HighComplex& q, const HighComplex& z);

// s(z + 2 pi i (s1 + s2 tau)) / s(z) = eps^{s2} q^{a s2 + b s2 (s2-1)/2} e^{b s2 z}.
struct QuasiPeriodLaw {
  int eps = 1;
  Rational a;
  int b = 0;
};
QuasiPeriodLaw quasi_period_law(int direction);
Complex quasi_period_multiplier(const Lattice& lat, Complex z, long s1, long s2);

// Measured factor sigma(z + 2 pi i period) / sigma(z) (direction 1: period 1,
// direction 2: period tau).
Complex quasi_periods(const Lattice& lat, Complex z, int direction);

struct QuasiPeriodFit {
  QuasiPeriodLaw law;
  double fit_residual = 0;      // at the fitting lattice
  double holdout_residual = 0;  // at the validation lattice
  double z_independence = 0;    // spread of factor * e^{-bz} over the z samples
};
QuasiPeriodFit fit_quasi_period(int direction, const Lattice& fit_at, const Lattice& validate_at,
                                const std::vector<Complex>& zs);

// Exact check in the variable x = e^z: theta(x) = (1 - 1/x) prod (1 - q^n/x)(1 - q^n x)
// satisfies theta(x e^{2 pi i}) = theta(x) and theta(q x) = -q^{-1} x^{-1} theta(x).
struct ExactQuasiPeriodCheck {
  bool direction1 = false;
  bool direction2 = false;
  int checked_q_order = 0;
};
ExactQuasiPeriodCheck quasi_period_exact_check(int q_order);

enum class CoefficientTag { kModular, kQuasimodular };

struct TaylorCoefficient {
  int power = 0;
  QSeries coeff;
  CoefficientTag tag = CoefficientTag::kModular;
  std::vector<G4G6Term> decomposition;  // when modular
};

// Coefficients of z^0..z^N of s(z); corrected drops e^{-z/2} and the G2 term.
std::vector<TaylorCoefficient> taylor_completion(int N, bool corrected = false, int q_order = -1);

struct FormalGroupLaw {
  int degree = 0;
  std::string provenance;  // additive | multiplicative | elliptic-sigma | custom
  QMulti F;                // variables (x, y)
};

// F(x, y) = c(c^{-1}(x) + c^{-1}(y)) to total degree D.
FormalGroupLaw fgl_from_coordinate(const ZSeries& c, int D, std::string provenance = "custom");

ZSeries additive_coordinate(int D);
ZSeries multiplicative_coordinate(int D);  // e^z - 1
ZSeries sigma_coordinate(int D, int q_order);  // s(z), lambda2 = 1
FormalGroupLaw named_fgl(const std::string& kind, int D, int q_order);

struct FglAxioms {
  bool unit = false;
  bool commutative = false;
  bool associative = false;
};
FglAxioms check_fgl_axioms(const FormalGroupLaw& f);

// exp(S) for S without constant term; coefficients carry q-order nq.
QMulti exp_series(const QMulti& S, int nq);

// Each coefficient replaced by its constant q-term.
QMulti q_zero_slice(const QMulti& f);

struct GroupLawPoint {
  Complex z1, z2;
  double residual = 0;
  double bound = 0;  // max(|z1|,|z2|)^{D+1}
  std::vector<double> halving_residuals;
  std::vector<double> slopes;  // log2 of successive residual ratios
};

struct GroupLawReport {
  int degree = 0;
  int q_order = 0;
  double fitted_constant = 0;  // C with residual <= C max|z|^{D+1}
  double tol = 0;
  bool passed = false;
  std::vector<GroupLawPoint> points;
};

// Residual |s(z1+z2) - F_D(s(z1), s(z2))| in 50-digit arithmetic; lambda2 = 1.
// Passes when every residual is within tol and the last halving slope is
// within 0.5 of D + 1.
GroupLawReport group_law_check(const Lattice& lat, const std::vector<std::pair<Complex, Complex>>& points,
                               int D, double tol = 1e-9, int halvings = 4, int q_order = 12);

}  // namespace ellforge
