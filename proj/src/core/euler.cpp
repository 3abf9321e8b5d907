// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/euler.hpp"

#include <functional>

#include "core/linalg.hpp"

namespace ellforge {

namespace {

std::vector<std::string> w_vars(int m) {
  std::vector<std::string> v;
  for (int i = 1; i <= m; ++i) v.push_back("w" + std::to_string(i));
  return v;
}

QSeries qone(int nq) { return QSeries::constant(1, "q", nq); }

std::vector<Monomial> monomials_of_degree(int m, int d) {
  std::vector<Monomial> out;
  std::function<void(int, int, Monomial)> rec = [&](int var, int left, Monomial acc) {
    if (var == m - 1) {
      out.push_back(acc + mono_unit(var, left));
      return;
    }
    for (int e = left; e >= 0; --e) rec(var + 1, left - e, acc + mono_unit(var, e));
  };
  if (m == 0) {
    if (d == 0) out.push_back(0);
    return out;
  }
  rec(0, d, 0);
  return out;
}

// Power sum p_k = sum w_j^k.
QMulti power_sum(int m, int k, int D, const QSeries& c) {
  QMulti p(w_vars(m), D);
  for (int j = 0; j < m; ++j)
    if (k <= D) p.add_to(mono_unit(j, k), c);
  return p;
}

QMulti twisted_element(int m, int D, int nq) {
  auto vars = w_vars(m);
  QMulti out = QMulti::constant(vars, qone(nq), D);
  if (m == 0) return out;
  ZSeries s = sigma_product(std::max(nq, 1), D).expansion;
  for (int i = 0; i < m; ++i) {
    QMulti f(vars, D);
    for (const auto& [e, c] : s.terms()) f.set(mono_unit(i, e), c.truncated(nq));
    out = out * f;
  }
  return out;
}

QMulti corrected_element(int m, int D, int nq) {
  auto vars = w_vars(m);
  int t = D - m;
  QMulti S(vars, t);
  for (int k = 2; 2 * k <= t; ++k) {
    QSeries c = eisenstein_q(2 * k, nq).qexp.scaled(Rational(-sigma_exp_constant(k)));
    S = S + power_sum(m, 2 * k, t, c);
  }
  QMulti e = exp_series(S, nq);
  Monomial lead = 0;
  for (int i = 0; i < m; ++i) lead += mono_unit(i);
  QMulti out(vars, D);
  for (const auto& [mono, c] : e.terms())
    if (mono_degree(mono) + m <= D) out.set(mono + lead, c);
  return out;
}

QMulti truncate_coeffs(const QMulti& f, int nq) {
  return f.map_coeffs([&](const QSeries& c) { return c.truncated(nq); });
}

// Smallest q-order at which every homogeneous G4/G6 membership test up to
// weight w is determined.
int certificate_order(int nq, int w) {
  int basis = 0;
  for (int k = 0; k <= w; ++k) {
    int count = 0;
    for (int a = 0; 4 * a <= k; ++a)
      if ((k - 4 * a) % 6 == 0) ++count;
    basis = std::max(basis, count);
  }
  int mixed = 0;
  for (int a = 0; 4 * a <= w; ++a)
    for (int b = 0; 4 * a + 6 * b <= w; ++b) ++mixed;
  return std::max({nq, basis + 4, mixed + 4});
}

std::vector<CoefficientCertificate> certify(const QMulti& f, int m, bool homogeneous) {
  std::vector<CoefficientCertificate> out;
  for (const auto& [mono, c] : f.terms()) {
    CoefficientCertificate cert;
    cert.monomial = mono;
    int w = mono_degree(mono) - m;
    auto dec = homogeneous ? decompose_g4g6(c, w) : decompose_g4g6(c, -1, std::max(w, 0));
    if (dec) {
      cert.modular = true;
      cert.decomposition = *dec;
    }
    out.push_back(std::move(cert));
  }
  return out;
}

// Place the variables of f at positions offset.. of an n-variable algebra.
QMulti embed(const QMulti& f, int n, int offset, int D) {
  QMulti out(w_vars(n), D);
  for (const auto& [mono, c] : f.terms()) {
    Monomial e = 0;
    for (int i = 0; i < f.nvars(); ++i) e += mono_unit(offset + i, mono_exp(mono, i));
    out.set(e, c);
  }
  return out;
}

}  // namespace

ChernRoots make_chern_roots(int m, int D, int nq) {
  require(m >= 0 && m <= kMaxVars, ErrorKind::kInput, "number of roots must be in 0..8");
  require(D >= m, ErrorKind::kInput, "nilpotency bound must be at least the number of roots");
  require(nq >= 0, ErrorKind::kInput, "negative q-order");
  return ChernRoots{m, D, nq};
}

EulerCocycle twisted_euler(const ChernRoots& r) {
  EulerCocycle e;
  e.roots = r;
  e.lambda2_power = r.m;
  int cq = certificate_order(r.nq, r.D);
  QMulti wide = twisted_element(r.m, r.D, cq);
  e.element = truncate_coeffs(wide, r.nq);
  e.certificate = certify(wide, r.m, false);
  e.certificate_q_order = cq;
  return e;
}

AnomalyFactors anomaly_factors(const ChernRoots& r) {
  QSeries lin = QSeries::constant(sigma_linear_constant(), "q", r.nq);
  QSeries g2 = eisenstein_q(2, r.nq).qexp.scaled(Rational(-sigma_exp_constant(1)));
  AnomalyFactors f;
  f.linear = exp_series(power_sum(r.m, 1, r.D, lin), r.nq);
  f.g2 = exp_series(power_sum(r.m, 2, r.D, g2), r.nq);
  return f;
}

EulerCocycle mu6_corrected_euler(const ChernRoots& r) {
  EulerCocycle e;
  e.roots = r;
  e.corrected = true;
  e.lambda2_power = r.m;
  int cq = certificate_order(r.nq, r.D);
  QMulti wide = corrected_element(r.m, r.D, cq);
  e.element = truncate_coeffs(wide, r.nq);
  e.certificate = certify(wide, r.m, true);
  e.certificate_q_order = cq;
  for (const auto& c : e.certificate)
    require(c.modular, ErrorKind::kInternal, "corrected Euler coefficient is not a polynomial in G4, G6");
  return e;
}

QMulti reduce_mod_c1c2(const QMulti& f, int m) {
  require(f.nvars() == m, ErrorKind::kInput, "variable count mismatch");
  int D = f.trunc();
  require(D != kExactOrder, ErrorKind::kInput, "reduction needs a truncated element");
  QMulti out(f.vars(), D);
  for (int d = 0; d <= D; ++d) {
    auto mons = monomials_of_degree(m, d);
    std::map<Monomial, int> col;
    for (std::size_t i = 0; i < mons.size(); ++i) col[mons[i]] = static_cast<int>(i);
    EchelonBasis ideal(static_cast<int>(mons.size()));
    for (int k : {1, 2}) {
      if (d < k) continue;
      for (Monomial mu : monomials_of_degree(m, d - k)) {
        std::map<int, Rational> v;
        for (int j = 0; j < m; ++j) v[col.at(mu + mono_unit(j, k))] += 1;
        SparseVec sv;
        for (auto& [c, x] : v)
          if (sgn(x) != 0) sv.emplace_back(c, x);
        ideal.insert(sv);
      }
    }
    // one vector per q-exponent
    std::map<int, std::map<int, Rational>> by_q;
    int trunc = kExactOrder;
    for (Monomial mu : mons) {
      QSeries c = f.coeff(mu);
      if (c.is_zero()) continue;
      trunc = std::min(trunc, c.trunc());
      for (const auto& [e, x] : c.terms()) by_q[e][col.at(mu)] = x;
    }
    std::map<int, QSeries> coeffs;
    for (auto& [e, entries] : by_q) {
      SparseVec v(entries.begin(), entries.end());
      for (const auto& [c, x] : ideal.reduce(v)) {
        auto it = coeffs.try_emplace(c, "q", trunc, 0).first;
        it->second.set(e, x);
      }
    }
    for (auto& [c, s] : coeffs) out.set(mons[c], s);
  }
  return out;
}

WhitneyReport whitney_check(int ma, int mb, int D, int nq) {
  int n = ma + mb;
  make_chern_roots(n, D, nq);
  WhitneyReport rep;
  auto check = [&](auto build) {
    QMulti whole = build(n);
    QMulti prod = embed(build(ma), n, 0, D) * embed(build(mb), n, ma, D);
    return whole == prod;
  };
  rep.twisted = check([&](int m) { return twisted_element(m, D, nq); });
  rep.corrected = check([&](int m) { return corrected_element(m, D, nq); });
  return rep;
}

EulerAnomalyReport euler_anomaly_check(const ChernRoots& r) {
  EulerAnomalyReport rep;
  auto tw = twisted_euler(r);
  auto co = mu6_corrected_euler(r);
  auto f = anomaly_factors(r);
  rep.factorization = tw.element == co.element * f.linear * f.g2;
  rep.g2_free = true;
  for (const auto& c : co.certificate) rep.g2_free = rep.g2_free && c.modular;
  rep.quotient_equal = reduce_mod_c1c2(tw.element - co.element, r.m).is_zero();
  QMulti one = QMulti::constant(w_vars(r.m), qone(r.nq), r.D);
  rep.factors_trivial_in_quotient =
      reduce_mod_c1c2(f.linear - one, r.m).is_zero() && reduce_mod_c1c2(f.g2 - one, r.m).is_zero();
  rep.symmetric = true;
  for (int i = 0; i + 1 < r.m; ++i) {
    std::vector<int> perm(r.m);
    for (int j = 0; j < r.m; ++j) perm[j] = j;
    std::swap(perm[i], perm[i + 1]);
    rep.symmetric = rep.symmetric && tw.element.permuted(perm) == tw.element &&
                    co.element.permuted(perm) == co.element;
  }
  rep.nilpotent_sound = twisted_element(r.m, r.D + 2, r.nq).truncated(r.D) == tw.element &&
                        corrected_element(r.m, r.D + 2, r.nq).truncated(r.D) == co.element;
  return rep;
}

}  // namespace ellforge
