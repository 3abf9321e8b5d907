#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "core/fermion.hpp"

using namespace ellforge;

namespace {

// Twisted plane waves on C / Lambda in coordinates w = s l1 + t l2, mixed by a
// random unitary; the operator d/dwbar + (pi/vol) X is applied by central
// differences and projected by grid quadrature, then diagonalized densely.
std::vector<Complex> operator_spectrum(const SectorDatum& d, int K, Rng& rng) {
  const auto& L = d.lattice;
  double a1 = d.alpha1[0], a2 = d.alpha2[0];
  std::vector<std::pair<int, int>> modes;
  for (int n = -K; n <= K; ++n)
    for (int m = -K; m <= K; ++m) modes.emplace_back(n, m);
  int dim = static_cast<int>(modes.size());

  auto wave = [&](int idx, Complex w) {
    double det = std::imag(std::conj(L.l2) * L.l1);
    // invert w = s l1 + t l2 over the reals
    double s = (w.real() * L.l2.imag() - w.imag() * L.l2.real()) / (L.l1.real() * L.l2.imag() - L.l1.imag() * L.l2.real());
    double t = (L.l1.real() * w.imag() - L.l1.imag() * w.real()) / (L.l1.real() * L.l2.imag() - L.l1.imag() * L.l2.real());
    (void)det;
    auto [n, m] = modes[idx];
    return std::exp(Complex(0, 2 * kPi) * (-(m + a1) * s + (n - a2) * t));
  };

  Eigen::MatrixXcd R(dim, dim);
  std::normal_distribution<double> g;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) R(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(R);
  Eigen::MatrixXcd U = qr.householderQ();

  int G = 4 * K + 4;
  double h = 1e-5;
  Complex shift = (kPi / L.vol()) * d.X[0];
  Eigen::MatrixXcd Psi(G * G, dim), DPsi(G * G, dim);
  for (int a = 0; a < G; ++a)
    for (int b = 0; b < G; ++b) {
      Complex w = (double(a) / G) * L.l1 + (double(b) / G) * L.l2;
      int row = a * G + b;
      for (int k = 0; k < dim; ++k) {
        Complex dx = (wave(k, w + h) - wave(k, w - h)) / (2 * h);
        Complex dy = (wave(k, w + Complex(0, h)) - wave(k, w - Complex(0, h))) / (2 * h);
        Psi(row, k) = wave(k, w);
        DPsi(row, k) = 0.5 * (dx + Complex(0, 1) * dy) + shift * wave(k, w);
      }
    }
  Eigen::MatrixXcd B = Psi * U, DB = DPsi * U;
  Eigen::MatrixXcd A = B.adjoint() * DB / double(G * G);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + dim);
  return out;
}

bool same_spectrum(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex p, Complex q) { return std::abs(p - x) < std::abs(q - x); });
    if (std::abs(*it - x) > tol) return false;
    b.erase(it);
  }
  return true;
}

double closed_ratio_error(const SectorDatum& a, const SectorDatum& b, int M, bool corrected) {
  Complex closed = *pf_closed(a).value / *pf_closed(b).value;
  if (corrected) closed *= window_anomaly(a, b);
  return std::abs(pf_truncated_ratio(a, b, M) - closed) / std::abs(closed);
}

}  // namespace

TEST_CASE("weight eigenvalues") {
  auto L = make_lattice(Complex(0, 2), 1.0);
  auto triv = make_sector(L, {0}, {0});
  CHECK(weight_eigenvalue(triv, 1, 0, 0) == Complex(0));
  auto half = make_sector(L, {0.5}, {0});
  CHECK(std::abs(weight_eigenvalue(half, 1, 0, 0) - (kPi / L.vol()) * L.l2 * 0.5) < 1e-15);
  CHECK_THROWS_AS(weight_eigenvalue(half, 2, 0, 0), Error);
  CHECK_THROWS_AS(make_sector(L, {0.1, 0.2}, {0.1}), Error);

  Rng rng(11);
  for (auto [l1, l2, x] : {std::tuple{Complex(0.3, 1.1), Complex(1, 0), Complex(0, 0)},
                           {Complex(-0.4, 1.7) * 0.8, Complex(0.8, 0), Complex(0.1, -0.2)},
                           {Complex(0.2, 1.3) * std::polar(1.1, 0.5), std::polar(1.1, 0.5), Complex(0.05, 0.07)}}) {
    auto d = make_sector(make_lattice(l1, l2), {0.31}, {0.17}, {x});
    std::vector<Complex> want;
    for (int n = -2; n <= 2; ++n)
      for (int m = -2; m <= 2; ++m) want.push_back(weight_eigenvalue(d, 1, n, m));
    CHECK(same_spectrum(operator_spectrum(d, 2, rng), want, 1e-6));
  }
}

TEST_CASE("integer shifts of alpha keep the commuting pair") {
  auto L = make_lattice(Complex(0.1, 1.2), 1.0);
  auto d = make_sector(L, {0.3}, {0.2});
  auto e = make_sector(L, {1.3}, {-0.8});
  for (double a : {d.alpha1[0], d.alpha2[0]}) {
    double b = a == d.alpha1[0] ? e.alpha1[0] : e.alpha2[0];
    CHECK(std::abs(std::exp(Complex(0, 2 * kPi * a)) - std::exp(Complex(0, 2 * kPi * b))) < 1e-14);
  }
  CHECK(std::abs(weight_eigenvalue(d, 1, 0, 0) - weight_eigenvalue(e, 1, 0, 0)) > 0.1);
  // the spectrum as a set is unchanged
  CHECK(std::abs(weight_eigenvalue(d, 1, 0, 0) - weight_eigenvalue(e, 1, -1, -1)) < 1e-14);
}

TEST_CASE("truncated ratio basics") {
  auto L = make_lattice(Complex(0, 2), 1.0);
  auto a = make_sector(L, {1.0 / 3}, {0}), b = make_sector(L, {0.25}, {0});
  for (int M : {0, 5, 50}) CHECK(pf_truncated_ratio(a, a, M) == Complex(1));
  Complex ab = pf_truncated_ratio(a, b, 60), ba = pf_truncated_ratio(b, a, 60);
  CHECK(std::abs(ab * ba - 1.0) < 1e-13);
  auto triv = make_sector(L, {0}, {0});
  try {
    pf_truncated_ratio(triv, b, 3);
    FAIL("expected a pole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kPole);
    CHECK(std::string(e.what()).find("(1,0,0)") != std::string::npos);
  }
}

TEST_CASE("truncated ratio against the closed form") {
  for (Complex tau : {Complex(0, 2), Complex(0, 1), Complex(0.3, 1.2)}) {
    auto L = make_lattice(tau, 1.0);
    auto a = make_sector(L, {1.0 / 3}, {0}), b = make_sector(L, {0.25}, {0});
    double prev = 1e300;
    for (int M : {100, 200, 400, 800}) {
      double raw = closed_ratio_error(a, b, M, false);
      double fixed = closed_ratio_error(a, b, M, true);
      CHECK(fixed < prev);
      prev = fixed;
      // the raw square-window product converges to a different limit
      CHECK(raw > 1e-2);
    }
    CHECK(prev < 1e-7);
  }
  // general twist with alpha2 and X
  auto L = make_lattice(Complex(0.2, 1.1) * 1.3, 1.3);
  auto a = make_sector(L, {0.21}, {0.37}, {Complex(0.05, 0.02)}), b = make_sector(L, {0.4}, {0.1});
  double e1 = closed_ratio_error(a, b, 200, true), e2 = closed_ratio_error(a, b, 400, true);
  CHECK(e2 < e1);
  CHECK(e2 < 1e-6);
}

TEST_CASE("X scale regenerates from the oracle") {
  auto L = make_lattice(Complex(0.15, 1.3), 1.0);
  auto b = make_sector(L, {0.4}, {0.1});
  double h = 1e-5;
  auto logr = [&](double da1, Complex dx) {
    auto a = make_sector(L, {0.2 + da1}, {0.3}, {dx});
    return std::log(pf_truncated_ratio(a, b, 400));
  };
  Complex dX = (logr(0, h) - logr(0, -h)) / (2 * h);
  Complex dA = (logr(h, 0) - logr(-h, 0)) / (2 * h);
  // X enters the spectrum as lambda2 alpha1 does, with weight kappa
  Complex kappa = dX * L.l2 / dA;
  CHECK(std::abs(kappa.imag()) < 1e-6);
  CHECK(std::lround(kappa.real()) == fermion_x_scale());
  CHECK(std::abs(kappa.real() - fermion_x_scale()) < 1e-6);
  // and the closed form carries it the same way
  auto pfl = [&](double da1, Complex dx) { return std::log(*pf_closed(make_sector(L, {0.2 + da1}, {0.3}, {dx})).value); };
  Complex cX = (pfl(0, h) - pfl(0, -h)) / (2 * h), cA = (pfl(h, 0) - pfl(-h, 0)) / (2 * h);
  CHECK(std::abs(cX * L.l2 / cA - fermion_x_scale()) < 1e-6);
}

TEST_CASE("closed form") {
  auto L = make_lattice(Complex(0, 2), 1.0);
  CHECK(*pf_closed(make_sector(L, {0}, {0})).value == Complex(0));
  auto d = make_sector(L, {1.0 / 3}, {0});
  Complex z = kTwoPiI / 3.0;
  Complex want = sigma_num(L, z, 60);
  CHECK(std::abs(*pf_closed(d).value - want) < 1e-10 * std::abs(want));

  auto L2 = make_lattice(Complex(0.1, 1.3) * 0.9, 0.9);
  auto p = make_sector(L2, {0.2}, {0.1}, {Complex(0.01, 0.03)}), r = make_sector(L2, {0.35}, {-0.2});
  auto pr = make_sector(L2, {0.2, 0.35}, {0.1, -0.2}, {Complex(0.01, 0.03), 0});
  Complex prod = *pf_closed(p).value * *pf_closed(r).value;
  CHECK(std::abs(*pf_closed(pr).value - prod) < 1e-13 * std::abs(prod));
  auto rp = make_sector(L2, {0.35, 0.2}, {-0.2, 0.1}, {0, Complex(0.01, 0.03)});
  CHECK(std::abs(*pf_closed(rp).value - prod) < 1e-13 * std::abs(prod));
}

TEST_CASE("formal and numeric modes agree") {
  auto L = make_lattice(Complex(0.1, 1.4), 1.2);
  auto d = make_sector(L, {0.03, -0.02}, {0.01, 0.015});
  auto f = pf_closed(d, PfMode::kFormal, 12, 16);
  REQUIRE(f.series.has_value());
  Complex q = L.q();
  Complex z1 = sector_z(d, 1), z2 = sector_z(d, 2);
  Complex acc = 0;
  for (const auto& [m, c] : f.series->terms())
    acc += evaluate(c, q) * std::pow(z1, mono_exp(m, 0)) * std::pow(z2, mono_exp(m, 1));
  acc *= std::pow(L.l2, f.lambda2_power);
  Complex want = *pf_closed(d).value;
  CHECK(std::abs(acc - want) < 1e-8 * std::abs(want));
}

TEST_CASE("vacuum character") {
  auto v1 = vacuum_character(1, 6, 8);
  CHECK(v1.lambda2_power == 1);
  auto c1 = v1.series.coeff(mono_unit(0));
  CHECK(c1.terms().size() == 1);
  CHECK(c1.coeff(0) == 1);
  Rational f = 1;
  for (int j = 1; j <= 8; ++j) {
    f /= j;
    CHECK(v1.series.coeff(mono_unit(0, j)).coeff(0) == (j % 2 ? f : Rational(-f)));
  }
  for (int n = 1; n <= 3; ++n) {
    auto v = vacuum_character(n, 4, 8);
    auto p = pf_closed(make_sector(make_lattice(Complex(0, 1), 1.0), std::vector<double>(n, 0.1),
                                   std::vector<double>(n, 0.0)),
                       PfMode::kFormal, 4, 8);
    CHECK(*p.series == v.series);
  }
  auto v3 = vacuum_character(3, 3, 7);
  CHECK(v3.series.permuted({1, 0, 2}) == v3.series);
  CHECK(v3.series.permuted({2, 0, 1}) == v3.series);
}

TEST_CASE("looijenga transformations") {
  auto L = make_lattice(Complex(0, 2), 1.0);
  auto d = make_sector(L, {0.23, 0.31}, {0.12, -0.07}, {Complex(0.01, 0), Complex(0, 0.02)});
  std::vector<CoweightShift> shifts{{{0, 0}, {0, 0}}, {{0, 0}, {1, 0}}, {{1, -2}, {0, 1}}, {{0, 0}, {-1, 2}}};
  Rng rng(3);
  auto r = looijenga_check(d, shifts, {SL2Z::T(), SL2Z::S()}, rng);
  CHECK(std::abs(r.shifts[0].measured - 1.0) < 1e-14);
  for (const auto& s : r.shifts) CHECK(s.rel_error < 1e-8);
  // direction-2 factor for a single alpha2 shift of the first weight
  Complex z = sector_z(d, 1);
  CHECK(std::abs(r.shifts[1].predicted - quasi_period_multiplier(L, z, 0, -1)) < 1e-14 * std::abs(r.shifts[1].predicted));
  REQUIRE(r.gammas.size() == 2);
  CHECK(r.gammas[0].alpha_independent);
  for (const auto& f : r.gammas[0].factors) CHECK(std::abs(f - 1.0) < 1e-8);
  CHECK_FALSE(r.gammas[1].alpha_independent);
  CHECK(r.passed);
  CHECK_THROWS_AS(looijenga_check(make_sector(L, {0}, {0}), shifts, {}, rng), Error);
}
