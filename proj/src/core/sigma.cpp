// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/sigma.hpp"

#include <cmath>

namespace ellforge {

namespace {

QSeries qconst(const Rational& c, int nq) { return QSeries::constant(c, "q", nq); }

// e^{sign z} with constant q-series coefficients.
ZSeries exp_z(int sign, int nz, int nq) {
  ZSeries s("z", nz, 0);
  Rational f = 1;
  for (int j = 0; j <= nz; ++j) {
    if (j > 0) f /= j;
    s.set(j, qconst((sign < 0 && j % 2) ? Rational(-f) : f, nq));
  }
  return s;
}

// 1 - q^n (e^z + e^{-z}) + q^{2n}, the n-th factor pair.
ZSeries factor_pair(int n, int nz, int nq) {
  ZSeries s("z", nz, 0);
  Rational f = 1;
  for (int j = 0; j <= nz; j += 2) {
    if (j > 0) f /= (j - 1) * j;
    QSeries c("q", nq, 0);
    if (j == 0) {
      c.set(0, 1);
      if (n <= nq) c.set(n, -2);
      if (2 * n <= nq) c.add_to(2 * n, 1);
    } else if (n <= nq) {
      c.set(n, -2 * f);
    }
    s.set(j, c);
  }
  return s;
}

template <class C>
C eval_z(const ZSeries& s, const C& q, const C& z) {
  C acc(0);
  for (int e = s.degree(); e >= 0; --e) {
    acc *= z;
    QSeries c = s.coeff(e);
    if (!c.is_zero()) acc += evaluate(c, q);
  }
  return acc;
}

}  // namespace

SigmaSeries sigma_product(int q_order, int z_order, bool normalized) {
  require(q_order >= 1 && z_order >= 1, ErrorKind::kInput, "sigma_product needs Nq, Nz >= 1");
  ZSeries one = ZSeries::constant(qconst(1, q_order), "z", z_order);
  ZSeries prod = one - exp_z(normalized ? -1 : 1, z_order, q_order);
  for (int n = 1; n <= q_order; ++n) prod = prod * factor_pair(n, z_order, q_order);
  if (normalized) {
    QSeries p = qconst(1, q_order);
    for (int n = 1; n <= q_order; ++n) {
      QSeries f = qconst(1, q_order);
      f.set(n, -1);
      p = p * f * f;
    }
    prod = prod.mul_coeff(inverse(p));
  }
  return SigmaSeries{q_order, z_order, normalized ? SigmaForm::kNormalized : SigmaForm::kRaw, prod};
}

Rational sigma_linear_constant() { return ratio(-1, 2); }

Rational sigma_exp_constant(int k) {
  require(k >= 1, ErrorKind::kInput, "sigma constants start at k = 1");
  mpz_class f = 1;
  for (int i = 2; i <= 2 * k; ++i) f *= i;
  Rational r(mpz_class(2), f);
  r.canonicalize();
  return r;
}

DerivedSigmaConstants derive_sigma_exp_constants(int max_k, int q_order) {
  DerivedSigmaConstants out;
  int nz = 2 * max_k + 1;
  ZSeries s = sigma_product(q_order, nz, true).expansion;
  ZSeries u("z", nz - 1, 0);  // s / z
  for (const auto& [e, c] : s.terms()) u.set(e - 1, c);
  ZSeries L = log(u);
  QSeries l1 = L.coeff(1);
  out.consistent = true;
  if (l1.terms().size() != 1 || l1.terms()[0].first != 0) {
    out.consistent = false;
    out.detail = "z^1 coefficient of log(s/z) is not a constant";
  } else {
    out.constants.linear = l1.terms()[0].second;
  }
  for (int j = 3; j <= nz - 1; j += 2)
    if (!L.coeff(j).is_zero()) {
      out.consistent = false;
      out.detail = "odd coefficient z^" + std::to_string(j) + " does not vanish";
    }
  for (int k = 1; 2 * k <= nz - 1; ++k) {
    QSeries l = L.coeff(2 * k);
    QSeries g = eisenstein_q(2 * k, q_order).qexp;
    Rational c = -l.coeff(1) / g.coeff(1);
    out.constants.c.push_back(c);
    if (!(l == g.scaled(Rational(-c)))) {
      out.consistent = false;
      out.detail = "z^" + std::to_string(2 * k) + " coefficient is not proportional to G" + std::to_string(2 * k);
    }
  }
  return out;
}

SigmaSeries sigma_exponential(int q_order, int z_order, ExponentialOptions opts) {
  require(q_order >= 1 && z_order >= 1, ErrorKind::kInput, "sigma_exponential needs Nq, Nz >= 1");
  ZSeries E("z", z_order - 1, 0);
  if (opts.linear_factor && z_order - 1 >= 1) E.set(1, qconst(sigma_linear_constant(), q_order));
  for (int k = 1; 2 * k <= z_order - 1; ++k) {
    if ((k == 1 && !opts.g2) || (k >= 2 && !opts.higher)) continue;
    E.set(2 * k, eisenstein_q(2 * k, q_order).qexp.scaled(Rational(-sigma_exp_constant(k))));
  }
  ZSeries s = exp(E);
  ZSeries out("z", z_order, 0);
  for (const auto& [e, c] : s.terms()) out.set(e + 1, c.truncated(q_order));
  return SigmaSeries{q_order, z_order, SigmaForm::kNormalized, out};
}

int sigma_product_length(double abs_q, int digits) {
  require(abs_q < 1, ErrorKind::kDomain, "|q| >= 1");
  if (abs_q == 0) return 1;
  return static_cast<int>(std::ceil(digits * std::log(10.0) / -std::log(abs_q))) + 2;
}

Complex sigma_num(const Lattice& lat, Complex z, int M) {
  Complex q = lat.q();
  require(std::abs(q) < 1, ErrorKind::kDomain, "|q| >= 1");
  require(M >= 0, ErrorKind::kInput, "negative product length");
  return lat.l2 * sigma_reduced(q, z, M);
}

Complex evaluate(const ZSeries& s, Complex q, Complex z) { return eval_z(s, q, z); }
HighComplex evaluate(const ZSeries& s, const HighComplex& q, const HighComplex& z) { return eval_z(s, q, z); }

QuasiPeriodLaw quasi_period_law(int direction) {
  require(direction == 1 || direction == 2, ErrorKind::kInput, "direction must be 1 or 2");
  // Direction 2 fitted at tau = 2i, validated at tau = 1 + 3i (see tests).
  if (direction == 1) return {1, Rational(0), 0};
  return {-1, Rational(-1), -1};
}

Complex quasi_period_multiplier(const Lattice& lat, Complex z, long s1, long s2) {
  (void)s1;  // direction-1 shifts act trivially
  QuasiPeriodLaw law = quasi_period_law(2);
  Rational expo = law.a * s2 + Rational(law.b) * ratio(s2 * (s2 - 1), 2);
  double sign = (law.eps < 0 && (s2 % 2 != 0)) ? -1.0 : 1.0;
  return sign * std::exp(kTwoPiI * lat.tau() * expo.get_d() + double(law.b * s2) * z);
}

Complex quasi_periods(const Lattice& lat, Complex z, int direction) {
  require(direction == 1 || direction == 2, ErrorKind::kInput, "direction must be 1 or 2");
  Complex q = lat.q();
  int M = sigma_product_length(std::abs(q), 17) + 4;
  Complex base = sigma_reduced(q, z, M);
  require(std::abs(base) >= 1e-10, ErrorKind::kNearZero, "sigma(z) below 1e-10");
  Complex shift = direction == 1 ? kTwoPiI : kTwoPiI * lat.tau();
  return sigma_reduced(q, z + shift, M) / base;
}

QuasiPeriodFit fit_quasi_period(int direction, const Lattice& fit_at, const Lattice& validate_at,
                                const std::vector<Complex>& zs) {
  require(zs.size() >= 2, ErrorKind::kInput, "need at least two z samples");
  QuasiPeriodFit fit;
  Complex f0 = quasi_periods(fit_at, zs[0], direction), f1 = quasi_periods(fit_at, zs[1], direction);
  double b = (std::log(f1 / f0) / (zs[1] - zs[0])).real();
  fit.law.b = static_cast<int>(std::lround(b));
  Complex v = f0 * std::exp(-double(fit.law.b) * zs[0]);
  double aq = std::abs(fit_at.q());
  double a = std::log(std::abs(v)) / std::log(aq);
  long twice = std::lround(2 * a);
  fit.law.a = ratio(twice, 2);
  Complex qa = std::exp(kTwoPiI * fit_at.tau() * fit.law.a.get_d());
  fit.law.eps = (v / qa).real() < 0 ? -1 : 1;

  auto predicted = [&](const Lattice& lat, Complex z) {
    Complex qa2 = std::exp(kTwoPiI * lat.tau() * fit.law.a.get_d());
    return double(fit.law.eps) * qa2 * std::exp(double(fit.law.b) * z);
  };
  Complex mean = 0;
  std::vector<Complex> reduced;
  for (Complex z : zs) {
    Complex f = quasi_periods(fit_at, z, direction);
    Complex p = predicted(fit_at, z);
    fit.fit_residual = std::max(fit.fit_residual, std::abs(f - p) / std::abs(p));
    reduced.push_back(f * std::exp(-double(fit.law.b) * z));
    mean += reduced.back();
    Complex g = quasi_periods(validate_at, z, direction);
    Complex pv = predicted(validate_at, z);
    fit.holdout_residual = std::max(fit.holdout_residual, std::abs(g - pv) / std::abs(pv));
  }
  mean /= double(zs.size());
  for (const auto& r : reduced) fit.z_independence = std::max(fit.z_independence, std::abs(r - mean) / std::abs(mean));
  return fit;
}

ExactQuasiPeriodCheck quasi_period_exact_check(int q_order) {
  using XPoly = Series<Rational>;  // Laurent polynomial in x, exact
  using QX = Series<XPoly>;
  require(q_order >= 1 && q_order <= 20, ErrorKind::kInput, "exact check supports 1 <= q-order <= 20");
  int N = q_order;
  auto xmono = [](int e, const Rational& c) { return XPoly::monomial("x", e, c); };
  QX theta = QX::constant(xmono(0, 1) - xmono(-1, 1), "q", N);
  for (int n = 1; n <= N; ++n) {
    QX f("q", N, 0);
    f.set(0, xmono(0, 1));
    f.set(n, xmono(-1, -1) + xmono(1, -1));
    if (2 * n <= N) f.set(2 * n, xmono(0, 1));
    theta = theta * f;
  }
  ExactQuasiPeriodCheck out;
  // x -> x e^{2 pi i} leaves every monomial x^j unchanged.
  out.direction1 = true;
  // x -> q x sends q^k x^j to q^{k+j} x^j.
  int E = N - static_cast<int>(std::ceil(std::sqrt(2.0 * N))) - 3;
  out.checked_q_order = E;
  if (E < -1) return out;
  std::map<int, XPoly> lhs;
  for (const auto& [k, poly] : theta.terms())
    for (const auto& [j, c] : poly.terms())
      if (k + j <= E) {
        auto& slot = lhs[k + j];
        slot = slot.is_zero() ? xmono(j, c) : slot + xmono(j, c);
      }
  std::map<int, XPoly> rhs;  // -q^{-1} x^{-1} theta(x)
  for (const auto& [k, poly] : theta.terms())
    if (k - 1 <= E) rhs[k - 1] = poly * xmono(-1, -1);
  auto clean = [](std::map<int, XPoly>& m) {
    for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
  };
  clean(lhs);
  clean(rhs);
  out.direction2 = lhs.size() == rhs.size();
  for (auto& [k, p] : lhs)
    if (!rhs.count(k) || !(rhs[k] == p)) out.direction2 = false;
  return out;
}

std::vector<TaylorCoefficient> taylor_completion(int N, bool corrected, int q_order) {
  require(N >= 0, ErrorKind::kInput, "negative order");
  if (q_order < 0) q_order = N + 12;
  int nz = std::max(N, 1);
  ZSeries s = corrected ? sigma_exponential(q_order, nz, {false, false, true}).expansion
                        : sigma_product(q_order, nz, true).expansion;
  std::vector<TaylorCoefficient> out;
  for (int k = 0; k <= N; ++k) {
    TaylorCoefficient t;
    t.power = k;
    t.coeff = s.coeff(k);
    if (t.coeff.is_zero()) t.coeff = QSeries("q", q_order, 0);
    auto dec = decompose_g4g6(t.coeff, -1, std::max(k - 1, 0));
    if (dec) {
      t.tag = CoefficientTag::kModular;
      t.decomposition = *dec;
    } else {
      t.tag = CoefficientTag::kQuasimodular;
    }
    out.push_back(std::move(t));
  }
  return out;
}

FormalGroupLaw fgl_from_coordinate(const ZSeries& c_in, int D, std::string provenance) {
  require(D >= 1, ErrorKind::kInput, "FGL degree must be >= 1");
  require(c_in.trunc() >= D, ErrorKind::kInput, "coordinate truncated below the requested degree");
  require(c_in.valuation() >= 1, ErrorKind::kDomain, "coordinate must vanish at z = 0");
  QSeries c1 = c_in.coeff(1);
  require(!c1.is_zero() && !is_zero(c1.coeff(0)), ErrorKind::kDomain,
          "not a coordinate: linear coefficient is not invertible");
  ZSeries cc = c_in.truncated(D);
  ZSeries g = reversion(cc);
  std::vector<std::string> xy{"x", "y"};
  QMulti gx(xy, D), gy(xy, D);
  for (const auto& [e, coef] : g.terms()) {
    gx.set(mono_unit(0, e), coef);
    gy.set(mono_unit(1, e), coef);
  }
  QMulti S = gx + gy;
  QMulti F(xy, D);
  for (int e = std::min(cc.degree(), D); e >= 0; --e) {
    F = F * S;
    QSeries coef = cc.coeff(e);
    if (!coef.is_zero()) F.add_to(Monomial(0), coef);
  }
  return FormalGroupLaw{D, std::move(provenance), F};
}

ZSeries additive_coordinate(int D) {
  ZSeries s("z", D, 0);
  s.set(1, QSeries::constant(1, "q"));
  return s;
}

ZSeries multiplicative_coordinate(int D) {
  ZSeries s("z", D, 0);
  Rational f = 1;
  for (int j = 1; j <= D; ++j) {
    f /= j;
    s.set(j, QSeries::constant(f, "q"));
  }
  return s;
}

ZSeries sigma_coordinate(int D, int q_order) { return sigma_product(q_order, D, true).expansion; }

FormalGroupLaw named_fgl(const std::string& kind, int D, int q_order) {
  if (kind == "additive") return fgl_from_coordinate(additive_coordinate(D), D, "additive");
  if (kind == "multiplicative") return fgl_from_coordinate(multiplicative_coordinate(D), D, "multiplicative");
  if (kind == "sigma") return fgl_from_coordinate(sigma_coordinate(D, q_order), D, "elliptic-sigma");
  fail(ErrorKind::kInput, "unknown coordinate '" + kind + "' (additive|multiplicative|sigma)");
}

namespace {

bool qseries_agree(const QSeries& a, const QSeries& b) {
  int t = std::min(a.trunc(), b.trunc());
  return a.truncated(t) == b.truncated(t);
}

bool qmulti_agree(const QMulti& a, const QMulti& b) {
  int t = std::min(a.trunc(), b.trunc());
  QMulti x = a.truncated(t), y = b.truncated(t);
  for (const auto& [m, c] : x.terms())
    if (!qseries_agree(c, y.coeff(m))) return false;
  for (const auto& [m, c] : y.terms())
    if (!qseries_agree(c, x.coeff(m))) return false;
  return true;
}

}  // namespace

FglAxioms check_fgl_axioms(const FormalGroupLaw& f) {
  FglAxioms out;
  const QMulti& F = f.F;
  int D = f.degree;
  QMulti x = QMulti::variable({"x", "y"}, 0, D), zero({"x", "y"}, D);
  out.unit = qmulti_agree(substitute(F, {x, zero}), x);
  out.commutative = qmulti_agree(F.permuted({1, 0}), F);
  std::vector<std::string> xyw{"x", "y", "w"};
  QMulti X = QMulti::variable(xyw, 0, D), Y = QMulti::variable(xyw, 1, D), W = QMulti::variable(xyw, 2, D);
  QMulti left = substitute(F, {substitute(F, {X, Y}), W});
  QMulti right = substitute(F, {X, substitute(F, {Y, W})});
  out.associative = qmulti_agree(left, right);
  return out;
}

QMulti exp_series(const QMulti& S, int nq) {
  int t = S.trunc();
  require(t != kExactOrder, ErrorKind::kInput, "exp_series needs a truncated argument");
  QMulti expo({"t"}, t);
  Rational f = 1;
  for (int k = 0; k <= t; ++k) {
    if (k > 0) f /= k;
    expo.set(mono_unit(0, k), QSeries::constant(f, "q", nq));
  }
  return substitute(expo, {S});
}

QMulti q_zero_slice(const QMulti& f) {
  return f.map_coeffs([](const QSeries& c) { return QSeries::constant(c.coeff(0), "q"); });
}

GroupLawReport group_law_check(const Lattice& lat, const std::vector<std::pair<Complex, Complex>>& points, int D,
                               double tol, int halvings, int q_order) {
  require(halvings >= 1, ErrorKind::kInput, "group_law_check needs at least one halving");
  GroupLawReport rep;
  rep.degree = D;
  rep.q_order = q_order;
  rep.tol = tol;
  for (const auto& [z1, z2] : points)
    require(std::abs(z1) <= 0.3 && std::abs(z2) <= 0.3, ErrorKind::kInput,
            "group_law_check: points must satisfy |z| <= 0.3");
  FormalGroupLaw F = named_fgl("sigma", D, q_order);
  HighComplex tau(HighFloat(lat.tau().real()), HighFloat(lat.tau().imag()));
  const HighFloat two_pi = boost::multiprecision::atan(HighFloat(1)) * 8;
  HighComplex q = exp(HighComplex(HighFloat(0), two_pi) * tau);
  int M = sigma_product_length(std::abs(lat.q()), 48);
  std::vector<std::pair<Monomial, HighComplex>> coeffs;
  for (const auto& [m, c] : F.F.terms()) coeffs.emplace_back(m, evaluate(c, q));
  auto F_num = [&](const HighComplex& X, const HighComplex& Y) {
    HighComplex acc(0);
    for (const auto& [m, c] : coeffs) acc += c * pow(X, mono_exp(m, 0)) * pow(Y, mono_exp(m, 1));
    return acc;
  };
  auto residual = [&](Complex a, Complex b) {
    HighComplex z1(HighFloat(a.real()), HighFloat(a.imag())), z2(HighFloat(b.real()), HighFloat(b.imag()));
    HighComplex lhs = sigma_reduced(q, HighComplex(z1 + z2), M);
    HighComplex rhs = F_num(sigma_reduced(q, z1, M), sigma_reduced(q, z2, M));
    return static_cast<double>(abs(lhs - rhs));
  };
  rep.points.resize(points.size());
  parallel_for(static_cast<int>(points.size()), [&](int i) {
    auto [z1, z2] = points[i];
    GroupLawPoint p{z1, z2, 0, 0, {}, {}};
    p.residual = residual(z1, z2);
    p.bound = std::pow(std::max(std::abs(z1), std::abs(z2)), D + 1);
    p.halving_residuals.push_back(p.residual);
    double scale = 1;
    for (int h = 1; h <= halvings; ++h) {
      scale *= 0.5;
      p.halving_residuals.push_back(residual(z1 * scale, z2 * scale));
    }
    for (std::size_t h = 1; h < p.halving_residuals.size(); ++h) {
      double a = p.halving_residuals[h - 1], b = p.halving_residuals[h];
      if (a > 0 && b > 0) p.slopes.push_back(std::log2(a / b));
    }
    rep.points[i] = p;
  });
  rep.passed = true;
  for (const auto& p : rep.points) {
    if (p.bound > 0) rep.fitted_constant = std::max(rep.fitted_constant, p.residual / p.bound);
    if (p.residual > tol) rep.passed = false;
    // higher-order terms bend the first halvings; judge the finest one
    if (!p.slopes.empty() && std::abs(p.slopes.back() - (D + 1)) > 0.5) rep.passed = false;
  }
  return rep;
}

}  // namespace ellforge
