// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Elliptic Euler classes of sums of line bundles in nilpotent Chern roots.
//
// Elements live in Q[[q]][w_1..w_m] truncated at total degree D, with
// w_j = 2i F_j / lambda2; the overall lambda2^m is carried symbolically.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/sigma.hpp"

namespace ellforge {

struct ChernRoots {
  int m = 0;   // number of roots
  int D = 0;   // total-degree nilpotency bound
  int nq = 0;  // q-order of the coefficients
};

ChernRoots make_chern_roots(int m, int D, int nq);

struct CoefficientCertificate {
  Monomial monomial = 0;
  bool modular = false;  // polynomial in G4, G6
  std::vector<G4G6Term> decomposition;
};

struct EulerCocycle {
  ChernRoots roots;
  bool corrected = false;
  int lambda2_power = 0;
  QMulti element;  // variables w1..wm
  std::vector<CoefficientCertificate> certificate;
  int certificate_q_order = 0;
};

// prod_j s(w_j) from the product form of sigma.
EulerCocycle twisted_euler(const ChernRoots& r);

struct AnomalyFactors {
  QMulti linear;  // exp(linear * sum w_j)
  QMulti g2;      // exp(-c_1 G2 sum w_j^2)
};
AnomalyFactors anomaly_factors(const ChernRoots& r);

// prod_j w_j exp(-sum_{k>=2} c_k G_2k w_j^{2k}); each coefficient is certified
// as a homogeneous polynomial in G4, G6 (internal error otherwise).
EulerCocycle mu6_corrected_euler(const ChernRoots& r);

// Normal form modulo the ideal (p1, p2), p1 = sum w_j, p2 = sum w_j^2, degree by degree.
QMulti reduce_mod_c1c2(const QMulti& f, int m);

struct WhitneyReport {
  bool twisted = false;
  bool corrected = false;
};
// Eu(a + b) against Eu(a) Eu(b) with the roots of b placed after those of a.
WhitneyReport whitney_check(int ma, int mb, int D, int nq);

struct EulerAnomalyReport {
  bool factorization = false;   // twisted == corrected * linear * g2
  bool g2_free = false;         // certificate of the corrected class
  bool quotient_equal = false;  // twisted == corrected modulo (p1, p2)
  bool factors_trivial_in_quotient = false;
  bool symmetric = false;
  bool nilpotent_sound = false;  // bound D agrees with D + 2 truncated
};
EulerAnomalyReport euler_anomaly_check(const ChernRoots& r);

}  // namespace ellforge
