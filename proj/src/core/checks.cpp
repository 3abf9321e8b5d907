// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "core/equivderham.hpp"
#include "core/euler.hpp"
#include "core/fermion.hpp"
#include "core/sheafmodel.hpp"
#include "core/sigma.hpp"

namespace ellforge {

namespace {

struct Ctx {
  Rng rng;
  double tol = 0;
  CheckReport* report;

  CheckItem& add(std::string name, bool passed, Json measured = Json::object(), bool informational = false) {
    report->items.push_back({std::move(name), passed, informational, std::move(measured)});
    return report->items.back();
  }
};

Json num(double x) { return format_double(x); }
Json num(Complex z) { return Json::array({format_double(z.real()), format_double(z.imag())}); }

struct Suite {
  std::string name;
  std::string description;
  std::optional<double> tol;  // default primary tolerance
  std::function<void(Ctx&)> run;
};

QSeries random_qseries(Rng& rng, int n, bool unit_constant) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  QSeries s("z", n, 0);
  for (int e = 0; e <= n; ++e) s.set(e, ratio(num(rng), den(rng)));
  if (unit_constant) s.set(0, sgn(s.coeff(0)) == 0 ? Rational(1) : s.coeff(0));
  return s;
}

void series_ring(Ctx& c) {
  const int n = 10, samples = 20;
  c.report->params = {{"order", n}, {"samples", samples}};
  bool ring = true, explog = true, inv = true, rev = true;
  QSeries one = QSeries::constant(Rational(1), "z", n);
  QSeries z = QSeries::variable("z", n);
  for (int k = 0; k < samples; ++k) {
    QSeries a = random_qseries(c.rng, n, false), b = random_qseries(c.rng, n, false),
            d = random_qseries(c.rng, n, false);
    ring = ring && (a + b == b + a) && (a * b == b * a) && ((a * b) * d == a * (b * d)) &&
           (a * (b + d) == a * b + a * d) && (a - a).is_zero();
    QSeries t = a;
    t.set(0, Rational(0));
    explog = explog && (log(exp(t)) == t) && (exp(log(one + t)) == one + t);
    QSeries u = random_qseries(c.rng, n, true);
    inv = inv && (u * inverse(u) == one);
    QSeries r = t;
    r.set(1, sgn(r.coeff(1)) == 0 ? Rational(1) : r.coeff(1));
    QSeries g = reversion(r);
    rev = rev && (compose(r, g) == z) && (compose(g, r) == z);
  }
  c.add("ring axioms", ring);
  c.add("exp and log inverse", explog);
  c.add("multiplicative inverse", inv);
  c.add("reversion", rev);
}

void sigma_identity(Ctx& c) {
  const int nq = 8, nz = 12;
  c.report->params = {{"q_order", nq}, {"z_order", nz}};
  auto derived = derive_sigma_exp_constants(nz / 2, nq);
  bool frozen = derived.consistent && derived.constants.linear == sigma_linear_constant();
  for (std::size_t k = 0; k < derived.constants.c.size(); ++k)
    frozen = frozen && derived.constants.c[k] == sigma_exp_constant(static_cast<int>(k) + 1);
  Json m = Json::object();
  if (!derived.detail.empty()) m["detail"] = derived.detail;
  c.add("derived constants match frozen", frozen, m);
  bool equal = sigma_product(nq, nz).expansion == sigma_exponential(nq, nz).expansion;
  c.add("product equals exponential", equal);
  auto qp = quasi_period_exact_check(12);
  c.add("exact quasi-periods", qp.direction1 && qp.direction2,
        {{"direction1", qp.direction1}, {"direction2", qp.direction2}, {"q_order", qp.checked_q_order}});
}

void fgl_axioms(Ctx& c) {
  const int D = 10, nq = 6;
  c.report->params = {{"degree", D}, {"q_order", nq}};
  auto ax = check_fgl_axioms(named_fgl("sigma", D, nq));
  c.add("sigma unit", ax.unit);
  c.add("sigma commutative", ax.commutative);
  c.add("sigma associative", ax.associative);
  std::vector<std::string> xy{"x", "y"};
  auto X = QMulti::variable(xy, 0, D), Y = QMulti::variable(xy, 1, D);
  c.add("additive is x+y", named_fgl("additive", D, 0).F == X + Y);
  c.add("multiplicative is x+y+xy", named_fgl("multiplicative", D, 0).F == X + Y + X * Y);
}

void group_law(Ctx& c) {
  const int D = 10;
  Complex tau(0, 2);
  c.report->params = {{"tau", num(tau)}, {"degree", D}, {"points", Json::array({num(Complex(0.2, 0.1))})}};
  auto r = group_law_check(lattice_from_tau(tau), {{0.2, 0.1}}, D, c.tol);
  for (const auto& p : r.points) {
    Json slopes = Json::array();
    for (double s : p.slopes) slopes.push_back(num(s));
    c.add("residual", p.residual < c.tol, {{"residual", num(p.residual)}});
    double last = p.slopes.empty() ? 0 : p.slopes.back();
    c.add("halving slope", !p.slopes.empty() && std::abs(last - (D + 1)) < 0.5, {{"slopes", slopes}});
  }
}

void pfaffian_oracle(Ctx& c) {
  const std::vector<int> Ms{100, 200, 400, 800};
  const std::vector<Complex> taus{{0, 2}, {0, 1}, {0.3, 1.2}};
  Json jt = Json::array();
  for (auto t : taus) jt.push_back(num(t));
  c.report->params = {{"taus", jt}, {"M", Ms}, {"alpha_a", "1/3"}, {"alpha_b", "1/4"}};
  std::vector<std::vector<double>> raw(taus.size()), fixed(taus.size());
  parallel_for(static_cast<int>(taus.size()), [&](int i) {
    Lattice L = lattice_from_tau(taus[i]);
    auto a = make_sector(L, {1.0 / 3}, {0}), b = make_sector(L, {0.25}, {0});
    Complex closed = *pf_closed(a).value / *pf_closed(b).value;
    Complex anomaly = window_anomaly(a, b);
    for (int M : Ms) {
      Complex r = pf_truncated_ratio(a, b, M);
      raw[i].push_back(std::abs(r - closed) / std::abs(closed));
      fixed[i].push_back(std::abs(r - closed * anomaly) / std::abs(closed * anomaly));
    }
  });
  for (std::size_t i = 0; i < taus.size(); ++i) {
    auto errs = [&](const std::vector<double>& e, bool& mono) {
      Json j = Json::array();
      mono = true;
      for (std::size_t k = 0; k < e.size(); ++k) {
        j.push_back(num(e[k]));
        if (k && !(e[k] < e[k - 1])) mono = false;
      }
      return j;
    };
    bool mono_raw, mono_fixed;
    Json jr = errs(raw[i], mono_raw), jf = errs(fixed[i], mono_fixed);
    std::ostringstream tag;
    tag << "tau=" << taus[i].real() << "+" << taus[i].imag() << "i";
    c.add("truncated ratio " + tag.str(), mono_raw && raw[i].back() < c.tol, {{"errors", jr}});
    c.add("window-corrected ratio " + tag.str(), mono_fixed && fixed[i].back() < c.tol, {{"errors", jf}}, true);
  }
  Lattice L = lattice_from_tau(Complex(0.1, 1.3));
  auto d = make_sector(L, {0.2, 0.35}, {0.1, -0.15});
  Complex closed = *pf_closed(d).value;
  // independent 50-digit product, longer than the one behind pf_closed
  HighComplex q(HighFloat(L.q().real()), HighFloat(L.q().imag()));
  HighComplex l2(HighFloat(L.l2.real()), HighFloat(L.l2.imag()));
  HighComplex prod = l2 * l2;
  for (int j = 1; j <= 2; ++j) {
    Complex z = sector_z(d, j);
    prod *= sigma_reduced(q, HighComplex(HighFloat(z.real()), HighFloat(z.imag())), 80);
  }
  Complex p(static_cast<double>(prod.real()), static_cast<double>(prod.imag()));
  double err = std::abs(closed - p) / std::abs(p);
  c.add("closed form equals sigma product", err < 1e-10, {{"rel_error", num(err)}});
  Complex triv = *pf_closed(make_sector(L, {0}, {0})).value;
  c.add("trivial sector is zero", triv == Complex(0), {{"value", num(triv)}});
}

void vacuum(Ctx& c) {
  const int nq = 4, nz = 8;
  c.report->params = {{"ranks", {1, 2, 3}}, {"q_order", nq}, {"z_degree", nz}};
  Lattice L = lattice_from_tau(Complex(0, 1));
  for (int n = 1; n <= 3; ++n) {
    auto v = vacuum_character(n, nq, nz);
    auto p = pf_closed(make_sector(L, std::vector<double>(n, 0.1), std::vector<double>(n, 0.0)), PfMode::kFormal,
                       nq, nz);
    c.add("rank " + std::to_string(n) + " formal Pfaffian equals character",
          p.series && *p.series == v.series && p.lambda2_power == v.lambda2_power);
  }
  auto v3 = vacuum_character(3, 3, 7);
  bool weyl = v3.series.permuted({1, 0, 2}) == v3.series && v3.series.permuted({2, 0, 1}) == v3.series;
  c.add("Weyl invariance", weyl);
}

void looijenga(Ctx& c) {
  const int samples = 10;
  Lattice L = lattice_from_tau(Complex(0, 2));
  auto d = make_sector(L, {0.23, 0.31}, {0.12, -0.07}, {Complex(0.01, 0), Complex(0, 0.02)});
  c.report->params = {{"tau", num(L.tau())}, {"samples", samples}};
  std::uniform_int_distribution<long> k(-2, 2);
  std::vector<CoweightShift> shifts;
  for (int i = 0; i < samples; ++i) shifts.push_back({{k(c.rng), k(c.rng)}, {k(c.rng), k(c.rng)}});
  auto r = looijenga_check(d, shifts, {SL2Z::T(), SL2Z::S()}, c.rng);
  double worst = 0;
  for (const auto& s : r.shifts) worst = std::max(worst, s.rel_error);
  c.add("coweight shifts match quasi-periods", worst < c.tol, {{"max_rel_error", num(worst)}});
  c.add("T factor alpha-independent", r.gammas[0].alpha_independent, {{"spread", num(r.gammas[0].spread)}});
  c.add("S factor alpha-independent", r.gammas[1].alpha_independent, {{"spread", num(r.gammas[1].spread)}}, true);
}

void euler_anomaly(Ctx& c) {
  c.report->params = {{"m", 2}, {"D", 4}, {"q_order", 3}};
  auto r = euler_anomaly_check(make_chern_roots(2, 4, 3));
  c.add("twisted factors through corrected", r.factorization);
  c.add("corrected class G2-free", r.g2_free);
  c.add("equal modulo c1, c2", r.quotient_equal);
  c.add("anomaly factors trivial modulo c1, c2", r.factors_trivial_in_quotient);
  c.add("symmetric", r.symmetric);
  c.add("nilpotency bound sound", r.nilpotent_sound);
  auto w = whitney_check(1, 1, 4, 3);
  c.add("Whitney twisted", w.twisted);
  c.add("Whitney corrected", w.corrected);
}

void modularity(Ctx& c) {
  const int order = 40, count = 10;
  c.report->params = {{"q_order", order}, {"samples", count}};
  auto samples = random_weight_samples(c.rng, count);
  for (int k : {4, 6, 8}) {
    auto r = check_weight(eisenstein_q(k, order), samples, c.tol);
    c.add("G" + std::to_string(k) + " weight " + std::to_string(k), r.passed, {{"max_residual", num(r.max_residual)}});
  }
  auto g2 = check_weight(eisenstein_q(2, order), samples, c.tol);
  Json m{{"max_residual", num(g2.max_residual)}, {"anomaly_spread", num(g2.anomaly_spread)}};
  if (g2.anomaly_mean) m["anomaly_mean"] = num(*g2.anomaly_mean);
  c.add("G2 fails with affine anomaly", !g2.passed && g2.anomaly_mean && g2.anomaly_spread < c.tol, m);
  auto dl = check_weight(delta_q(order), samples, c.tol);
  c.add("Delta weight 12", dl.passed, {{"max_residual", num(dl.max_residual)}});
}

void derham(Ctx& c) {
  const int degree = 8;
  c.report->params = {{"degree", degree}};
  std::vector<std::pair<LieAlgebra, Representation>> cases{
      {lie_u1(), u1_weights({1, 2})}, {lie_su2(), realify(lie_su2())}, {lie_u2(), realify(lie_u2())}};
  std::vector<RelationsReport> rel(cases.size());
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < cases.size(); ++i) seeds.push_back(c.rng());
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    Rng rng(seeds[i]);
    rel[i] = derham_relations(cases[i].first, cases[i].second, degree, rng, 4);
  });
  for (const auto& r : rel)
    c.add(r.group + " relations", r.passed(),
          {{"weil_d2", r.weil_d2},
           {"forms_d2", r.forms_d2},
           {"model_d2", r.model_d2},
           {"cartan_relation", r.cartan_relation},
           {"iota_anticommute", r.iota_anticommute},
           {"lie_d_commute", r.lie_d_commute},
           {"cartan_d2", r.cartan_d2},
           {"bracket_sign", r.bracket_sign}});
  auto b4 = basic_subspace(weil_model(lie_su2()), 4);
  c.add("su2 degree-4 basic dimension 1", b4.size() == 1, {{"dim", b4.size()}});
  for (auto w : {std::vector<int>{1}, {1, 1}}) {
    auto r = cartan_cohomology(w, 6, 3);
    std::string name = "cohomology weights (";
    for (std::size_t i = 0; i < w.size(); ++i) name += (i ? "," : "") + std::to_string(w[i]);
    c.add(name + ") matches point", r.matches_point, {{"dims", r.dims}, {"point", r.point_dims}});
  }
  auto tr = torus_reduction_check(4, 2);
  c.add("torus reduction", tr.cohomology_agree && tr.injective,
        {{"cohomology_g", tr.cohomology_g}, {"cohomology_nt", tr.cohomology_nt}});
  auto u2 = lie_u2();
  auto F = forms_model(u2, Representation{3, {}});
  auto P = polynomial_model(u2);
  GElement tr1 = trace_polynomial(P, 1), tr2 = trace_polynomial(P, 2);
  Derivation d = differential(F);
  bool closed = true;
  for (int k = 0; k < 20; ++k) {
    std::vector<GElement> A;
    for (int a = 0; a < 4; ++a) A.push_back(random_element(F, 1, 3, c.rng, 5).component(1));
    closed = closed && apply(d, chern_weil(F, P, tr2, A)).is_zero() && apply(d, chern_weil(F, P, tr1 * tr1, A)).is_zero();
  }
  c.add("Chern-Weil forms closed", closed, {{"connections", 20}});
}

QMulti random_factor(Rng& rng, int D, int nq) {
  std::uniform_int_distribution<int> coef(-4, 4);
  QMulti f({"u", "A", "B"}, D);
  for (int a = 0; a <= D; ++a)
    for (int b = 0; a + b <= D; ++b)
      for (int e = 0; a + b + e <= D; ++e) {
        QSeries s("q", nq);
        for (int k = 0; k < nq; ++k) s.set(k, Rational(coef(rng)));
        f.set(make_monomial({a, b, e}), s);
      }
  return f;
}

void sheaf(Ctx& c) {
  auto N = make_space({2, 3});
  Anchor h0{0, 0}, h1{ratio(1, 2), 0}, h2{ratio(1, 2) + ratio(1, 7), ratio(1, 11)};
  c.report->params = {{"weights", N.weights}, {"chain", {to_string(h0), to_string(h1), to_string(h2)}}};
  auto base = local_sections(N, h0, 4);
  bool cocycle = true;
  int count = 0;
  for (int n : {0, 2, 4})
    for (const auto& z : base.cocycles[n]) {
      auto sec = make_section(base, z, random_factor(c.rng, 3, 2));
      auto two = transition(N, h2, transition(N, h1, sec));
      auto one = transition(N, h2, sec);
      cocycle = cocycle && two.cocycle == one.cocycle && two.factor == one.factor;
      ++count;
    }
  c.add("triple-chain cocycle condition", cocycle, {{"sections", count}});
  for (auto [a, b] : {std::pair{h0, h1}, {h1, h2}}) {
    auto r = localization_check(N, a, b, 8);
    // [degree, sweight, rank] over the nonzero blocks
    Json ranks = Json::array();
    for (const auto& blk : r.blocks)
      if (blk.dim_source || blk.dim_target) ranks.push_back({blk.n, blk.s, blk.rank});
    c.add("localized transition " + to_string(a) + " -> " + to_string(b), r.bijective, {{"ranks", ranks}});
  }
  ZSeries comp = completion_map(sigma_section(make_space({1}), 6, 8));
  bool eq = true;
  for (const auto& t : taylor_completion(6, false, 8)) eq = eq && (comp.coeff(t.power) - t.coeff).is_zero();
  c.add("sigma section completes to Taylor series", eq);
}

void sectors(Ctx& c) {
  c.report->params = {{"groups", {"Z/2", "S3"}}};
  auto z2 = finite_sectors(cyclic_group(2));
  int nontrivial_index = 0;
  for (const auto& k : z2.classes)
    if (k.representative != std::pair{0, 0}) nontrivial_index = k.stabilizer_index;
  c.add("Z/2 orbits and stabilizer", z2.commuting_pairs == 4 && z2.orbits == 2 && nontrivial_index == 3,
        {{"pairs", z2.commuting_pairs}, {"orbits", z2.orbits}, {"index", nontrivial_index}});
  auto s3 = finite_sectors(symmetric_group(3));
  c.add("S3 commuting pairs", s3.commuting_pairs == 18, {{"pairs", s3.commuting_pairs}});
  c.add("S3 Burnside", s3.burnside, {{"classes", s3.conjugacy_classes}});
  c.add("orbit-stabilizer", z2.orbit_stabilizer && s3.orbit_stabilizer, {{"S3_orbits", s3.orbits}});
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"series-ring", "truncated series ring axioms, exp/log, inverse, reversion", std::nullopt, series_ring},
      {"sigma-identity", "product and exponential forms of sigma agree exactly", std::nullopt, sigma_identity},
      {"fgl-axioms", "formal group law axioms and baselines", std::nullopt, fgl_axioms},
      {"group-law", "sigma addition through the formal group law", 1e-9, group_law},
      {"pfaffian-oracle", "truncated Pfaffian ratios against the closed form", 1e-4, pfaffian_oracle},
      {"vacuum-character", "formal Pfaffian equals the level-1 vacuum character", std::nullopt, vacuum},
      {"looijenga", "coweight shifts and SL2(Z) factors of the Pfaffian", 1e-8, looijenga},
      {"euler-anomaly", "twisted Euler class factorization and Whitney formula", std::nullopt, euler_anomaly},
      {"modularity", "weight checks for Eisenstein series and Delta", 1e-9, modularity},
      {"derham-relations", "Weil and Cartan model relations and cohomology", std::nullopt, derham},
      {"sheaf-model", "transitions, localization and completion", std::nullopt, sheaf},
      {"finite-sectors", "commuting pairs and SL2(Z) orbits", std::nullopt, sectors},
  };
  return all;
}

const Suite& find_suite(const std::string& name) {
  for (const auto& s : suites())
    if (s.name == name) return s;
  fail(ErrorKind::kInput, "unknown check suite: " + name);
}

}  // namespace

const std::vector<std::string>& check_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
  }();
  return names;
}

std::string check_description(const std::string& suite) { return find_suite(suite).description; }

CheckReport run_check(const std::string& suite, const CheckOptions& opts) {
  const Suite& s = find_suite(suite);
  CheckReport report;
  report.suite = s.name;
  report.seed = opts.seed;
  if (s.tol) report.tol = opts.tol ? *opts.tol : *s.tol;
  require(!report.tol || (std::isfinite(*report.tol) && *report.tol > 0), ErrorKind::kInput,
          "tolerance must be positive");
  Ctx ctx{Rng(opts.seed), report.tol.value_or(0), &report};
  auto start = std::chrono::steady_clock::now();
  s.run(ctx);
  report.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.passed = true;
  for (const auto& it : report.items)
    if (!it.informational && !it.passed) report.passed = false;
  return report;
}

Json to_json(const CheckReport& r, bool timing) {
  Json j;
  j["suite"] = r.suite;
  j["status"] = r.passed ? "pass" : "fail";
  j["seed"] = r.seed;
  j["rng"] = kRngName;
  j["tol"] = r.tol ? Json(format_double(*r.tol)) : Json(nullptr);
  j["params"] = r.params;
  Json items = Json::array();
  for (const auto& it : r.items) {
    Json x;
    x["name"] = it.name;
    x["status"] = it.passed ? "pass" : "fail";
    if (it.informational) x["informational"] = true;
    x["measured"] = it.measured;
    items.push_back(std::move(x));
  }
  j["checks"] = std::move(items);
  if (timing) j["runtime_s"] = format_double(r.runtime_s);
  return j;
}

std::string to_text(const CheckReport& r, bool timing) {
  std::ostringstream os;
  os << r.suite << ": " << (r.passed ? "PASS" : "FAIL") << "  seed=" << r.seed;
  if (r.tol) os << " tol=" << format_double(*r.tol);
  if (timing) os << " time=" << format_double(r.runtime_s) << "s";
  os << "\n";
  std::size_t width = 0;
  for (const auto& it : r.items) width = std::max(width, it.name.size());
  for (const auto& it : r.items) {
    std::string status = it.passed ? "pass" : "fail";
    if (it.informational) status += " (info)";
    os << "  " << it.name << std::string(width - it.name.size() + 2, ' ') << status;
    if (!it.measured.empty()) os << "  " << it.measured.dump();
    os << "\n";
  }
  return os.str();
}

}  // namespace ellforge
