#include <doctest.h>

#include <cmath>

#include "core/sigma.hpp"

using namespace ellforge;

namespace {

// s(z) from the theta series: e^{-z/2} sum (-1)^n q^{n(n+1)/2} (e^{(2n+1)z/2} - e^{-(2n+1)z/2})
// divided by sum (-1)^n (2n+1) q^{n(n+1)/2}.
Complex theta_oracle(Complex q, Complex z) {
  Complex num = 0, den = 0;
  for (int n = 0; n < 60; ++n) {
    double sign = n % 2 ? -1.0 : 1.0;
    Complex qt = std::pow(q, n * (n + 1) / 2);
    num += sign * qt * (std::exp((2.0 * n + 1) * z / 2.0) - std::exp(-(2.0 * n + 1) * z / 2.0));
    den += sign * (2.0 * n + 1) * qt;
  }
  return std::exp(-z / 2.0) * num / den;
}

QSeries qc(const Rational& c) { return QSeries::constant(c, "q"); }

}  // namespace

TEST_CASE("sigma product examples") {
  auto s = sigma_product(6, 8);
  CHECK(s.lambda2_prefactor());
  CHECK(s.expansion.coeff(0).is_zero());
  CHECK(s.expansion.coeff(1).terms().size() == 1);
  CHECK(s.expansion.coeff(1).coeff(0) == 1);
  // q -> 0: 1 - e^{-z}
  Rational f = 1;
  for (int j = 1; j <= 8; ++j) {
    f /= j;
    CHECK(s.expansion.coeff(j).coeff(0) == (j % 2 ? f : Rational(-f)));
  }
  auto raw = sigma_product(6, 8, false);
  CHECK_FALSE(raw.lambda2_prefactor());
  CHECK(raw.expansion.coeff(1).coeff(0) == -1);
  CHECK_THROWS_AS(sigma_product(0, 4), Error);
}

TEST_CASE("series agrees with the theta-series oracle") {
  auto s = sigma_product(20, 16).expansion;
  for (Complex tau : {Complex(0, 1), Complex(0.3, 1.2)}) {
    Complex q = std::exp(kTwoPiI * tau);
    for (Complex z : {Complex(0.3, 0), Complex(0.1, -0.2), Complex(-0.25, 0.05)}) {
      Complex want = theta_oracle(q, z);
      CHECK(std::abs(evaluate(s, q, z) - want) < 1e-8 * std::abs(want));
      CHECK(std::abs(sigma_reduced(q, z, 40) - want) < 1e-13 * std::abs(want));
    }
  }
}

TEST_CASE("sigma_num converges in M") {
  auto L = make_lattice(Complex(0.2, 0.9) * 1.5, 1.5);
  Complex z(0.4, 0.7);
  Complex want = 1.5 * theta_oracle(L.q(), z);
  double prev = 1;
  for (int M : {2, 4, 8, 16}) {
    double err = std::abs(sigma_num(L, z, M) - want) / std::abs(want);
    CHECK(err <= prev);
    prev = err;
  }
  CHECK(prev < 1e-14);
  CHECK_THROWS_AS(sigma_num(make_lattice(Complex(0, 1), 1.0), z, -1), Error);
}

TEST_CASE("exponential form equals the product exactly") {
  for (auto [nq, nz] : {std::pair{8, 12}, {4, 9}, {10, 6}}) {
    auto p = sigma_product(nq, nz).expansion;
    auto e = sigma_exponential(nq, nz).expansion;
    CHECK(p == e);
  }
  auto no_g2 = sigma_exponential(8, 12, {true, false, true}).expansion;
  CHECK_FALSE(no_g2 == sigma_product(8, 12).expansion);
}

TEST_CASE("exponential constants regenerate from the product") {
  auto d = derive_sigma_exp_constants(6, 10);
  CHECK(d.consistent);
  CHECK(d.constants.linear == sigma_linear_constant());
  REQUIRE(d.constants.c.size() == 6);
  for (int k = 1; k <= 6; ++k) CHECK(d.constants.c[k - 1] == sigma_exp_constant(k));
  CHECK(sigma_exp_constant(1) == 1);
  CHECK(sigma_exp_constant(2) == ratio(1, 12));
}

TEST_CASE("quasi-periods") {
  auto fit_at = lattice_from_tau(Complex(0, 2));
  auto validate_at = lattice_from_tau(Complex(1, 3));
  std::vector<Complex> zs{{0.3, 0.1}, {-0.2, 0.4}, {0.5, -0.3}, {0.1, 0.9}};
  auto f2 = fit_quasi_period(2, fit_at, validate_at, zs);
  auto law = quasi_period_law(2);
  CHECK(f2.law.eps == law.eps);
  CHECK(f2.law.a == law.a);
  CHECK(f2.law.b == law.b);
  CHECK(f2.fit_residual < 1e-8);
  CHECK(f2.holdout_residual < 1e-8);
  CHECK(f2.z_independence < 1e-8);
  auto f1 = fit_quasi_period(1, fit_at, validate_at, zs);
  CHECK(f1.law.eps == 1);
  CHECK(f1.law.a == 0);
  CHECK(f1.law.b == 0);
  CHECK(f1.holdout_residual < 1e-8);

  // multiplier for k-fold shifts against repeated single shifts
  auto L = lattice_from_tau(Complex(0.1, 1.4));
  Complex z(0.2, 0.3);
  Complex acc = 1;
  for (int k = 0; k < 3; ++k) acc *= quasi_period_multiplier(L, z + kTwoPiI * L.tau() * double(k), 0, 1);
  Complex m3 = quasi_period_multiplier(L, z, 0, 3);
  CHECK(std::abs(acc - m3) < 1e-12 * std::abs(m3));
  Complex direct = sigma_reduced(L.q(), z + 3.0 * kTwoPiI * L.tau(), 60) / sigma_reduced(L.q(), z, 60);
  CHECK(std::abs(direct - m3) < 1e-8 * std::abs(m3));

  CHECK_THROWS_AS(quasi_periods(fit_at, 0.0, 1), Error);
}

TEST_CASE("exact quasi-period identity in x = e^z") {
  auto r = quasi_period_exact_check(12);
  CHECK(r.direction1);
  CHECK(r.direction2);
  CHECK(r.checked_q_order == 4);
  CHECK(quasi_period_exact_check(20).direction2);
}

TEST_CASE("taylor completion tags") {
  auto t = taylor_completion(8);
  REQUIRE(t.size() == 9);
  CHECK(t[0].tag == CoefficientTag::kModular);
  CHECK(t[1].tag == CoefficientTag::kModular);
  CHECK(t[2].tag == CoefficientTag::kModular);
  CHECK(t[2].coeff.coeff(0) == ratio(-1, 2));
  CHECK(t[2].coeff.terms().size() == 1);
  CHECK(t[3].tag == CoefficientTag::kQuasimodular);
  // z^3 coefficient is 1/8 - G2
  QSeries g2 = eisenstein_q(2, t[3].coeff.trunc()).qexp;
  CHECK(t[3].coeff == QSeries::constant(ratio(1, 8), "q", g2.trunc()) - g2);

  auto c = taylor_completion(10, true);
  for (const auto& k : c) CHECK(k.tag == CoefficientTag::kModular);
  REQUIRE(c[5].decomposition.size() == 1);
  CHECK(c[5].decomposition[0].a == 1);
  CHECK(c[5].decomposition[0].coeff == ratio(-1, 12));
  CHECK(c[2].coeff.is_zero());
}

TEST_CASE("formal group laws: baselines") {
  std::vector<std::string> xy{"x", "y"};
  auto X = QMulti::variable(xy, 0, 8), Y = QMulti::variable(xy, 1, 8);
  auto add = named_fgl("additive", 8, 0);
  CHECK(add.F == X + Y);
  auto mul = named_fgl("multiplicative", 8, 0);
  CHECK(mul.F == X + Y + X * Y);
  CHECK_THROWS_AS(named_fgl("formal", 4, 0), Error);

  ZSeries bad("z", 4, 0);
  bad.set(2, qc(1));
  CHECK_THROWS_AS(fgl_from_coordinate(bad, 4), Error);
  ZSeries shortc("z", 3, 0);
  shortc.set(1, qc(1));
  CHECK_THROWS_AS(fgl_from_coordinate(shortc, 5), Error);
}

TEST_CASE("elliptic formal group law") {
  auto F = named_fgl("sigma", 10, 6);
  CHECK(F.provenance == "elliptic-sigma");
  auto ax = check_fgl_axioms(F);
  CHECK(ax.unit);
  CHECK(ax.commutative);
  CHECK(ax.associative);
  // q -> 0 recovers the coordinate 1 - e^{-z}: x + y - xy
  std::vector<std::string> xy{"x", "y"};
  auto X = QMulti::variable(xy, 0, 10), Y = QMulti::variable(xy, 1, 10);
  CHECK(q_zero_slice(F.F) == X + Y - X * Y);
  // q^1 content appears first in degree 3
  bool low_pure = true;
  for (const auto& [m, c] : F.F.terms())
    if (mono_degree(m) <= 2 && c.terms().size() != 1) low_pure = false;
  CHECK(low_pure);

  // a non-group-law fails associativity
  FormalGroupLaw broken = F;
  broken.F.add_to(mono_unit(0, 2), qc(1));
  broken.F.add_to(mono_unit(1, 2), qc(1));
  CHECK_FALSE(check_fgl_axioms(broken).associative);
}

TEST_CASE("group law residuals") {
  auto L = lattice_from_tau(Complex(0, 1));
  std::vector<std::pair<Complex, Complex>> pts{{0.2, 0.1}, {Complex(-0.1, 0.05), Complex(0, 0.15)}, {0.25, -0.2}};
  auto r = group_law_check(L, pts, 10);
  CHECK(r.passed);
  for (const auto& p : r.points) {
    CHECK(p.residual < 1e-9);
    REQUIRE(p.slopes.size() == 4);
    CHECK(std::abs(p.slopes.back() - 11) < 0.5);
    // slopes approach D + 1 from below
    CHECK(p.slopes.back() >= p.slopes.front() - 0.05);
  }
  CHECK(r.fitted_constant > 0);
  CHECK_THROWS_AS(group_law_check(L, {{0.4, 0.1}}, 6), Error);
  auto coarse = group_law_check(L, {{0.2, 0.1}}, 4, 1e-9);
  CHECK_FALSE(coarse.passed);
}
