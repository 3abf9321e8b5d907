// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Gauged free fermion on C / Lambda: eigenvalues, truncated Pfaffian ratios,
// the closed form as a product of sigma values, the level-1 vacuum
// character, and coweight / SL2(Z) transformation checks.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/sigma.hpp"

namespace ellforge {

struct SectorDatum {
  int rank = 0;
  std::vector<double> alpha1, alpha2;
  std::vector<Complex> X;
  Lattice lattice;
};

// Validates sizes and finiteness; X defaults to zero.
SectorDatum make_sector(const Lattice& lat, std::vector<double> alpha1, std::vector<double> alpha2,
                        std::vector<Complex> X = {});

// Coefficient of X in u = lambda2 alpha1 - lambda1 alpha2 + kappa X. Fitted
// from the truncated-ratio oracle; see tests.
double fermion_x_scale();

// u_j = lambda2 alpha1_j - lambda1 alpha2_j + kappa X_j.
Complex sector_u(const SectorDatum& d, int j);
// z_j = 2 pi i u_j / lambda2.
Complex sector_z(const SectorDatum& d, int j);

// (pi/vol) ((n - alpha2_j) lambda1 + (m + alpha1_j) lambda2 + kappa X_j); j is 1-based.
Complex weight_eigenvalue(const SectorDatum& d, int j, long n, long m);

// prod over |n|,|m| <= M (n outer, m inner) of eig_a / eig_b. Needs no
// regularization; the pi/vol normalization cancels.
Complex pf_truncated_ratio(const SectorDatum& a, const SectorDatum& b, int M);

// Limit of pf_truncated_ratio divided by the closed-form ratio, as measured:
// prod_j exp((z_a - z_b)/2 + W (u_a^2 - u_b^2)/2), W = 4 artanh(tau) / (lambda2^2 tau).
// The square window sums sum' 1/omega^2 in an order that differs from the
// q-expansion, and the closed form carries e^{-z/2}.
Complex window_anomaly(const SectorDatum& a, const SectorDatum& b);

enum class PfMode { kNumeric, kFormal };

struct PfaffianValue {
  PfMode mode = PfMode::kNumeric;
  std::optional<Complex> value;  // numeric: prod lambda2 s(z_j)
  std::optional<QMulti> series;  // formal: prod s(z_j) in variables z1..zn
  int lambda2_power = 0;         // formal: symbolic lambda2^rank prefactor
  std::string normalization;
};

// Numeric mode evaluates at the sector's z_j; formal mode expands in
// symbolic z_j through the exponential form, to q-order nq and total degree nz.
PfaffianValue pf_closed(const SectorDatum& d, PfMode mode = PfMode::kNumeric, int nq = 6, int nz = 6);

struct VacuumCharacter {
  int rank = 0;
  int lambda2_power = 0;
  QMulti series;  // prod_i s(z_i), variables z1..zn
};

// Product form of the LU(n) level-1 vacuum character.
VacuumCharacter vacuum_character(int n, int nq, int nz);

struct CoweightShift {
  std::vector<long> k1, k2;  // integer shifts of alpha1, alpha2
};

struct ShiftResult {
  CoweightShift shift;
  Complex measured;   // pf(shifted) / pf(d)
  Complex predicted;  // product of sigma quasi-period multipliers
  double rel_error = 0;
};

struct GammaResult {
  SL2Z gamma;
  std::vector<Complex> factors;  // pf(gamma . (Lambda, alpha)) / pf(Lambda, alpha) per alpha sample
  double spread = 0;             // max relative deviation from the mean factor
  bool alpha_independent = false;
};

struct LooijengaReport {
  std::vector<ShiftResult> shifts;
  std::vector<GammaResult> gammas;
  double shift_tol = 1e-8;
  double spread_tol = 1e-6;
  // Shifts within shift_tol and alpha-independence for every gamma with c = 0.
  bool passed = false;
};

// (Lambda, alpha1, alpha2) -> (gamma Lambda, a alpha1 + b alpha2, c alpha1 + d alpha2) keeps u.
SectorDatum act(const SL2Z& g, const SectorDatum& d);

LooijengaReport looijenga_check(const SectorDatum& d, const std::vector<CoweightShift>& shifts,
                                const std::vector<SL2Z>& gammas, Rng& rng, int alpha_samples = 5);

}  // namespace ellforge
