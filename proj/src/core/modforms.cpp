// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/modforms.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "core/linalg.hpp"

namespace ellforge {

Lattice make_lattice(Complex l1, Complex l2) {
  require(std::isfinite(l1.real()) && std::isfinite(l1.imag()) && std::isfinite(l2.real()) &&
              std::isfinite(l2.imag()),
          ErrorKind::kInput, "lattice generators must be finite");
  require(std::abs(l2) > 0, ErrorKind::kOrientation, "lambda2 = 0");
  Lattice lat{l1, l2};
  require(lat.tau().imag() > 0, ErrorKind::kOrientation, "Im(lambda1/lambda2) <= 0");
  return lat;
}

Lattice lattice_from_tau(Complex tau) { return make_lattice(tau, 1.0); }

std::string SL2Z::str() const {
  return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
         std::to_string(d) + "]]";
}

Lattice act(const SL2Z& g, Complex mu, const Lattice& lat) {
  require(g.a * g.d - g.b * g.c == 1, ErrorKind::kInput, "act: determinant is not 1");
  require(std::abs(mu) > 0, ErrorKind::kInput, "act: mu = 0");
  Complex m2 = mu * mu;
  return Lattice{m2 * (double(g.a) * lat.l1 + double(g.b) * lat.l2),
                 m2 * (double(g.c) * lat.l1 + double(g.d) * lat.l2)};
}

Complex ModularObject::evaluate(const Lattice& lat) const {
  require(weight_twice % 2 == 0, ErrorKind::kInput, "numeric evaluator needs integral weight");
  Complex q = lat.q();
  require(std::abs(q) < 1, ErrorKind::kDomain, "|q| >= 1");
  Complex f = ellforge::evaluate(qexp, q);
  return std::pow(kTwoPiI / lat.l2, weight_twice / 2) * f;
}

Rational bernoulli(int n) {
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    int m = static_cast<int>(cache.size());
    Rational acc = 0;
    mpz_class binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += Rational(binom) * cache[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    cache.push_back(-acc / (m + 1));
  }
  return cache[n];
}

Rational divisor_sigma(int k, int n) {
  mpz_class acc = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), d, k);
    acc += p;
  }
  return Rational(acc);
}

ModularObject eisenstein_q(int k, int order) {
  require(k % 2 == 0, ErrorKind::kDomain, "Eisenstein series of odd weight vanish");
  require(k >= 2, ErrorKind::kDomain, "Eisenstein weight must be >= 2");
  require(order >= 0, ErrorKind::kInput, "negative q-order");
  QSeries s("q", order, 0);
  s.set(0, -bernoulli(k) / (2 * k));
  for (int n = 1; n <= order; ++n) s.set(n, divisor_sigma(k - 1, n));
  return ModularObject{"G" + std::to_string(k), 2 * k, "SL2(Z)", s, k == 2};
}

ModularObject delta_q(int order) {
  require(order >= 0, ErrorKind::kInput, "negative q-order");
  QSeries p = QSeries::constant(1, "q", order);
  for (int n = 1; n <= order; ++n) {
    QSeries f = QSeries::constant(1, "q", order);
    f.set(n, -1);
    for (int r = 0; r < 24; ++r) p = p * f;
  }
  QSeries d("q", order, 0);
  for (const auto& [e, c] : p.terms())
    if (e + 1 <= order) d.set(e + 1, c);
  return ModularObject{"Delta", 24, "SL2(Z)", d, false};
}

Rational lattice_sum_scale(int k) {
  require(k >= 4 && k % 2 == 0, ErrorKind::kDomain, "lattice sums need even k >= 4");
  mpz_class f = 1;
  for (int i = 2; i < k; ++i) f *= i;
  Rational r(mpz_class(2), f);
  r.canonicalize();
  return r;
}

Complex eisenstein_num(int k, const Lattice& lat, int M) {
  require(k != 2, ErrorKind::kDomain, "the weight-2 lattice sum is conditionally convergent; use the q-series");
  require(k >= 4, ErrorKind::kDomain, "lattice sums need k >= 4");
  require(M >= 1, ErrorKind::kInput, "M must be positive");
  int rows = 2 * M + 1;
  std::vector<Complex> row_sum(rows);
  parallel_for(rows, [&](int r) {
    int m = r - M;
    Complex acc = 0, comp = 0;  // Kahan-compensated
    for (int n = -M; n <= M; ++n) {
      if (m == 0 && n == 0) continue;
      Complex w = double(m) * lat.l1 + double(n) * lat.l2;
      Complex p = 1;
      for (int i = 0; i < k; ++i) p *= w;
      Complex y = 1.0 / p - comp;
      Complex t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    row_sum[r] = acc;
  });
  Complex total = 0;
  for (const auto& s : row_sum) total += s;
  return total;
}

Complex eisenstein_num_extrapolated(int k, const Lattice& lat, int M) {
  double f = std::ldexp(1.0, k - 2);
  Complex a = eisenstein_num(k, lat, M), b = eisenstein_num(k, lat, 2 * M);
  return (f * b - a) / (f - 1.0);
}

std::vector<WeightSample> random_weight_samples(Rng& rng, int count, double min_image_im) {
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(1.0, 2.0), ang(0, 2 * kPi), mod(0.5, 2.0),
      mumod(0.8, 1.25);
  std::uniform_int_distribution<int> len(1, 5), pick(0, 2);
  std::vector<WeightSample> out;
  while (static_cast<int>(out.size()) < count) {
    Complex tau(re(rng), im(rng));
    Complex l2 = std::polar(mod(rng), ang(rng));
    Lattice lat{tau * l2, l2};
    SL2Z g = SL2Z::S();
    int L = len(rng);
    for (int i = 0; i < L; ++i) {
      int p = pick(rng);
      g = (p == 0 ? SL2Z::S() : p == 1 ? SL2Z::T() : SL2Z{1, -1, 0, 1}) * g;
    }
    if (g.mobius(tau).imag() < min_image_im) continue;
    Complex mu = std::polar(mumod(rng), ang(rng));
    out.push_back({g, mu, lat});
  }
  return out;
}

WeightReport check_weight(const ModularObject& f, const std::vector<WeightSample>& samples, double tol) {
  WeightReport rep;
  rep.name = f.name;
  rep.tol = tol;
  rep.results.resize(samples.size());
  int w = f.weight_twice / 2;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    Lattice image = act(s.gamma, s.mu, s.lattice);
    auto fail_sample = [&](const char* what) {
      fail(ErrorKind::kNumerical, std::string(what) + " for " + f.name + " at sample " + std::to_string(i) +
                                      " gamma=" + s.gamma.str());
    };
    if (!(std::abs(image.q()) < 1) || !(std::abs(s.lattice.q()) < 1)) fail_sample("evaluator diverges");
    WeightSampleResult r{s, f.evaluate(image), 0, 0, std::nullopt};
    r.predicted = std::pow(s.mu, -2 * w) * f.evaluate(s.lattice);
    if (!std::isfinite(std::abs(r.value)) || !std::isfinite(std::abs(r.predicted)))
      fail_sample("non-finite value");
    r.residual = std::abs(r.value - r.predicted) / std::abs(r.predicted);
    if (f.quasimodular && s.gamma.c != 0) {
      Complex tau = s.lattice.tau();
      Complex j = double(s.gamma.c) * tau + double(s.gamma.d);
      Complex g_img = ellforge::evaluate(f.qexp, std::exp(kTwoPiI * s.gamma.mobius(tau)));
      Complex g = ellforge::evaluate(f.qexp, std::exp(kTwoPiI * tau));
      r.anomaly = (g_img - std::pow(j, w) * g) / (double(s.gamma.c) * j);
    }
    rep.max_residual = std::max(rep.max_residual, r.residual);
    rep.results[i] = r;
  }
  rep.passed = rep.max_residual <= tol;
  Complex sum = 0;
  int n = 0;
  for (const auto& r : rep.results)
    if (r.anomaly) {
      sum += *r.anomaly;
      ++n;
    }
  if (n > 0) {
    rep.anomaly_mean = sum / double(n);
    for (const auto& r : rep.results)
      if (r.anomaly) rep.anomaly_spread = std::max(rep.anomaly_spread, std::abs(*r.anomaly - *rep.anomaly_mean));
  }
  return rep;
}

std::optional<std::vector<G4G6Term>> decompose_g4g6(const QSeries& f, int weight, int max_weight) {
  require(!f.exact(), ErrorKind::kInput, "membership test needs a truncated q-series");
  int N = f.trunc();
  std::vector<std::pair<int, int>> mons;
  int top = weight >= 0 ? weight : max_weight;
  for (int a = 0; 4 * a <= top; ++a)
    for (int b = 0; 4 * a + 6 * b <= top; ++b)
      if (weight < 0 || 4 * a + 6 * b == weight) mons.emplace_back(a, b);
  if (f.is_zero()) {
    return std::vector<G4G6Term>{};
  }
  if (f.valuation() < 0) return std::nullopt;
  if (mons.empty()) return std::nullopt;
  require(N + 1 >= static_cast<int>(mons.size()) + 5, ErrorKind::kInput,
          "membership test needs q-order >= basis size + 4");
  QSeries g4 = eisenstein_q(4, N).qexp, g6 = eisenstein_q(6, N).qexp;
  std::map<int, QSeries> p4, p6;
  p4[0] = QSeries::constant(1, "q", N);
  p6[0] = QSeries::constant(1, "q", N);
  std::vector<QSeries> basis;
  for (auto [a, b] : mons) {
    for (int i = 1; i <= a; ++i)
      if (!p4.count(i)) p4[i] = p4[i - 1] * g4;
    for (int i = 1; i <= b; ++i)
      if (!p6.count(i)) p6[i] = p6[i - 1] * g6;
    basis.push_back(p4[a] * p6[b]);
  }
  std::vector<SparseVec> rows(N + 1);
  std::vector<Rational> rhs(N + 1);
  for (int e = 0; e <= N; ++e) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Rational c = basis[j].coeff(e);
      if (sgn(c) != 0) rows[e].emplace_back(static_cast<int>(j), c);
    }
    rhs[e] = f.coeff(e);
  }
  bool unique = false;
  auto x = solve(rows, rhs, static_cast<int>(basis.size()), &unique);
  if (!x) return std::nullopt;
  require(unique, ErrorKind::kInternal, "G4/G6 monomials dependent at this q-order");
  std::vector<G4G6Term> out;
  for (std::size_t j = 0; j < mons.size(); ++j)
    if (sgn((*x)[j]) != 0) out.push_back({mons[j].first, mons[j].second, (*x)[j]});
  return out;
}

std::string format_g4g6(const std::vector<G4G6Term>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& t : terms) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(t.coeff) + ")";
    if (t.a) s += "*G4" + (t.a > 1 ? "^" + std::to_string(t.a) : std::string());
    if (t.b) s += "*G6" + (t.b > 1 ? "^" + std::to_string(t.b) : std::string());
  }
  return s;
}

}  // namespace ellforge
