#include <doctest.h>

#include <cmath>

#include "core/euler.hpp"

using namespace ellforge;

namespace {

Complex theta_s(Complex q, Complex z) {
  Complex num = 0, den = 0;
  for (int n = 0; n < 40; ++n) {
    double sign = n % 2 ? -1.0 : 1.0;
    Complex qt = std::pow(q, n * (n + 1) / 2);
    num += sign * qt * (std::exp((2.0 * n + 1) * z / 2.0) - std::exp(-(2.0 * n + 1) * z / 2.0));
    den += sign * (2.0 * n + 1) * qt;
  }
  return std::exp(-z / 2.0) * num / den;
}

Complex eval2(const QMulti& f, Complex q, std::vector<Complex> w) {
  Complex acc = 0;
  for (const auto& [m, c] : f.terms()) {
    Complex t = evaluate(c, q);
    for (std::size_t i = 0; i < w.size(); ++i) t *= std::pow(w[i], mono_exp(m, static_cast<int>(i)));
    acc += t;
  }
  return acc;
}

}  // namespace

TEST_CASE("twisted class examples") {
  auto e = twisted_euler(make_chern_roots(1, 1, 4));
  REQUIRE(e.element.terms().size() == 1);
  CHECK(e.element.coeff(mono_unit(0)) == QSeries::constant(1, "q", 4));
  CHECK(e.lambda2_power == 1);
  auto z = twisted_euler(make_chern_roots(3, 5, 2));
  CHECK(z.element.coeff(Monomial(0)).is_zero());
  CHECK_THROWS_AS(make_chern_roots(3, 2, 2), Error);
}

TEST_CASE("twisted class against the theta oracle") {
  auto e = twisted_euler(make_chern_roots(2, 8, 20));
  Complex q = std::exp(kTwoPiI * Complex(0.2, 1.1));
  for (double h : {0.05, 0.025}) {
    Complex w1(h, 0.3 * h), w2(-0.5 * h, h);
    Complex want = theta_s(q, w1) * theta_s(q, w2);
    // error is of order |w|^9
    CHECK(std::abs(eval2(e.element, q, {w1, w2}) - want) < 50 * std::pow(h, 9));
  }
}

TEST_CASE("corrected class and anomaly factors against the theta oracle") {
  ChernRoots r = make_chern_roots(1, 9, 20);
  auto co = mu6_corrected_euler(r);
  auto f = anomaly_factors(r);
  Complex q = std::exp(kTwoPiI * Complex(-0.1, 1.3));
  Complex g2 = evaluate(eisenstein_q(2, 20).qexp, q);
  Complex w(0.04, -0.03);
  Complex c = eval2(co.element, q, {w});
  // s(w) = corrected * e^{-w/2} * e^{-G2 w^2}
  Complex want = theta_s(q, w) * std::exp(w / 2.0) * std::exp(g2 * w * w);
  CHECK(std::abs(c - want) < 1e-12);
  CHECK(std::abs(eval2(f.linear, q, {w}) - std::exp(-w / 2.0)) < 1e-12);
  CHECK(std::abs(eval2(f.g2, q, {w}) - std::exp(-g2 * w * w)) < 1e-12);
}

TEST_CASE("G2 factor is exp(-G2 p2)") {
  ChernRoots r = make_chern_roots(1, 8, 5);
  auto g = anomaly_factors(r).g2;
  QSeries G2 = eisenstein_q(2, 5).qexp;
  QSeries pw = QSeries::constant(1, "q", 5);
  Rational fact = 1;
  for (int k = 0; 2 * k <= 8; ++k) {
    if (k > 0) {
      pw = pw * G2.scaled(Rational(-1));
      fact *= k;
    }
    CHECK(g.coeff(mono_unit(0, 2 * k)) == pw.scaled(Rational(1 / fact)));
  }
  // two roots: depends on w1, w2 only through w1^2 + w2^2
  auto g2 = anomaly_factors(make_chern_roots(2, 6, 3)).g2;
  CHECK(g2.coeff(make_monomial({1, 1})).is_zero());
  CHECK(g2.coeff(make_monomial({2, 2})) == g2.coeff(make_monomial({4, 0})).scaled(Rational(2)));
}

TEST_CASE("anomaly factorization and certificate") {
  for (auto [m, D, nq] : {std::tuple{2, 4, 3}, {1, 7, 4}, {3, 7, 2}}) {
    auto rep = euler_anomaly_check(make_chern_roots(m, D, nq));
    CHECK(rep.factorization);
    CHECK(rep.g2_free);
    CHECK(rep.quotient_equal);
    CHECK(rep.factors_trivial_in_quotient);
    CHECK(rep.symmetric);
    CHECK(rep.nilpotent_sound);
  }
  auto c3 = mu6_corrected_euler(make_chern_roots(1, 3, 2));
  CHECK(c3.element.coeff(mono_unit(0, 3)).is_zero());
  auto c5 = mu6_corrected_euler(make_chern_roots(1, 5, 2));
  bool found = false;
  for (const auto& cert : c5.certificate)
    if (cert.monomial == mono_unit(0, 5)) {
      found = true;
      REQUIRE(cert.decomposition.size() == 1);
      CHECK(cert.decomposition[0].a == 1);
      CHECK(cert.decomposition[0].coeff == ratio(-1, 12));
    }
  CHECK(found);
  // the twisted class is not modular: G2 appears at w^3
  auto tw = twisted_euler(make_chern_roots(1, 5, 2));
  for (const auto& cert : tw.certificate)
    if (cert.monomial == mono_unit(0, 3)) CHECK_FALSE(cert.modular);
}

TEST_CASE("factors are trivial on opposite roots") {
  ChernRoots r = make_chern_roots(2, 2, 3);
  auto f = anomaly_factors(r);
  // w1 = F, w2 = -F with F^2 = 0
  auto F = QMulti::variable({"F"}, 0, 1);
  auto one = QMulti::constant({"F"}, QSeries::constant(1, "q", 3), 1);
  CHECK(substitute(f.linear, {F, -F}) == one);
  CHECK(substitute(f.g2, {F, -F}) == one);
  auto tw = twisted_euler(r).element, co = mu6_corrected_euler(r).element;
  CHECK(substitute(tw, {F, -F}) == substitute(co, {F, -F}));
}

TEST_CASE("reduction modulo c1, c2") {
  std::vector<std::string> v{"w1", "w2"};
  auto c = QSeries::constant(1, "q", 2);
  auto w1 = QMulti::variable(v, 0, 4).mul_coeff(c), w2 = QMulti::variable(v, 1, 4).mul_coeff(c);
  CHECK(reduce_mod_c1c2(w1 + w2, 2).is_zero());
  CHECK_FALSE(reduce_mod_c1c2(w1, 2).is_zero());
  CHECK(reduce_mod_c1c2(w1 * w2, 2).is_zero());
  CHECK(reduce_mod_c1c2(reduce_mod_c1c2(w1 - w2, 2), 2) == reduce_mod_c1c2(w1 - w2, 2));
  std::vector<std::string> v3{"w1", "w2", "w3"};
  auto x = QMulti::variable(v3, 0, 4).mul_coeff(c), y = QMulti::variable(v3, 1, 4).mul_coeff(c);
  // rank 3: degree 2 quotient has dimension 6 - 3 - 1 = 2
  CHECK_FALSE(reduce_mod_c1c2(x * y, 3).is_zero());
}

TEST_CASE("whitney") {
  for (auto [a, b, D] : {std::tuple{1, 1, 4}, {2, 1, 5}, {1, 0, 3}, {0, 2, 4}}) {
    auto w = whitney_check(a, b, D, 2);
    CHECK(w.twisted);
    CHECK(w.corrected);
  }
  // direct expansion of (m=1)+(m=1) against m=2
  auto e1 = twisted_euler(make_chern_roots(1, 4, 2)).element;
  auto e2 = twisted_euler(make_chern_roots(2, 4, 2)).element;
  for (const auto& [m, c] : e2.terms()) {
    auto a = e1.coeff(mono_unit(0, mono_exp(m, 0))), b = e1.coeff(mono_unit(0, mono_exp(m, 1)));
    CHECK((a * b).truncated(2) == c);
  }
}
