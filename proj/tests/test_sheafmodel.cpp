#include <doctest.h>

#include <numeric>
#include <set>

#include "core/sheafmodel.hpp"

using namespace ellforge;

namespace {

const std::vector<std::string> kVars{"u", "A", "B"};

QMulti random_factor(Rng& rng, int D, int nq) {
  std::uniform_int_distribution<int> c(-4, 4);
  QMulti f(kVars, D);
  for (int a = 0; a <= D; ++a)
    for (int b = 0; a + b <= D; ++b)
      for (int e = 0; a + b + e <= D; ++e) {
        QSeries s("q", nq);
        for (int k = 0; k < nq; ++k) s.set(k, Rational(c(rng)));
        f.set(make_monomial({a, b, e}), s);
      }
  return f;
}

ZSeries random_z(Rng& rng, int D, int nq) {
  std::uniform_int_distribution<int> c(-3, 3);
  ZSeries z("z", D);
  for (int e = 0; e <= D; ++e) {
    QSeries s("q", nq);
    for (int k = 0; k < nq; ++k) s.set(k, Rational(c(rng)));
    z.set(e, s);
  }
  return z;
}

// Orbits of commuting pairs under conjugation, S and T, by union-find.
int brute_orbits(const FiniteGroupTable& G) {
  int n = G.order;
  std::vector<int> parent(n * n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  std::vector<int> inv(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.mul[a][b] == G.identity) inv[a] = b;
  std::set<int> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.mul[a][b] == G.mul[b][a]) {
        pairs.insert(a * n + b);
        unite(a * n + b, b * n + inv[a]);
        unite(a * n + b, a * n + G.mul[a][b]);
        for (int g = 0; g < n; ++g)
          unite(a * n + b, G.mul[G.mul[g][a]][inv[g]] * n + G.mul[G.mul[g][b]][inv[g]]);
      }
  std::set<int> roots;
  for (int p : pairs) roots.insert(find(p));
  return static_cast<int>(roots.size());
}

}  // namespace

TEST_CASE("fixed loci") {
  auto M = make_space({1, 2});
  CHECK(fixed_locus(M, {0, 0}) == std::vector<int>{0, 1});
  CHECK(fixed_locus(M, {ratio(1, 2), 0}) == std::vector<int>{1});
  CHECK(fixed_locus(M, {ratio(1, 7), ratio(3, 7)}).empty());
  CHECK(fixed_locus(make_space({0, 3}), {ratio(1, 7), ratio(3, 7)}) == std::vector<int>{0});
  CHECK(fixed_locus(M, {ratio(3, 2), 1}) == std::vector<int>{1});
  CHECK(parse_anchor("1/2,0") == Anchor{ratio(1, 2), 0});
  CHECK(same_point({ratio(3, 2), 1}, {ratio(1, 2), 0}));

  // neighbourhood monotonicity on refinements of the denominator
  Rng rng(2);
  std::uniform_int_distribution<int> num(-20, 20);
  for (auto w : {std::vector<int>{1, 2}, {2, 3, -1}, {4}}) {
    auto S = make_space(w);
    for (Anchor h : {Anchor{0, 0}, Anchor{ratio(1, 2), 0}, Anchor{ratio(1, 3), ratio(1, 2)}, Anchor{ratio(1, 4), 0}}) {
      Rational r = small_open_radius(S, h);
      auto fh = fixed_locus(S, h);
      for (int k = 0; k < 50; ++k) {
        Anchor h2{h.x + r * ratio(num(rng), 21), h.y + r * ratio(num(rng), 21)};
        REQUIRE(in_small_open(S, h, h2));
        for (int j : fixed_locus(S, h2)) CHECK(std::find(fh.begin(), fh.end(), j) != fh.end());
      }
    }
  }
}

TEST_CASE("local sections") {
  auto pt = local_sections(make_space({}), {0, 0}, 6);
  CHECK(pt.cohomology == std::vector<int>{1, 0, 1, 0, 1, 0, 1});
  for (int n = 0; n <= 6; ++n) CHECK(pt.cocycles[n].size() == (n % 2 ? 0u : 1u));
  auto M = make_space({1});
  auto gen = local_sections(M, {ratio(1, 5), ratio(2, 5)}, 4);
  CHECK(gen.fixed.empty());
  CHECK(gen.cohomology == std::vector<int>{1, 0, 1, 0, 1});
  auto origin = local_sections(M, {0, 0}, 4, 2);
  CHECK(origin.cohomology == cartan_cohomology({1}, 4, 2).dims);
  // in degree 0 only the constants are closed
  CHECK(origin.cocycles[0].size() == 1);
}

TEST_CASE("module action") {
  auto M = make_space({1, 2});
  Anchor h{ratio(1, 2), 0};
  auto at = local_sections(M, h, 2);
  Rng rng(9);
  auto s = make_section(at, at.model.gen(at.model.u[0]), random_factor(rng, 4, 3));
  CenteredSeries one{h, ZSeries::constant(QSeries::constant(1, "q", 3), "z", 4)};
  CHECK(module_action(one, s).factor == s.factor);
  CenteredSeries z{h, ZSeries::monomial("z", 1, QSeries::constant(1, "q", 3), 4)};
  CHECK(module_action(z, s).factor == (QMulti::variable(kVars, 0, 4) * s.factor).truncated(4));
  for (int k = 0; k < 5; ++k) {
    auto f = random_z(rng, 4, 3), g = random_z(rng, 4, 3);
    auto lhs = module_action({h, f * g}, s);
    auto rhs = module_action({h, f}, module_action({h, g}, s));
    CHECK(lhs.factor == rhs.factor);
  }
  try {
    module_action({Anchor{0, 0}, z.f}, s);
    FAIL("expected a recenter error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kRecenter);
  }
  // x^2 + y^2 is invariant but not d_C-closed
  auto c = local_sections(make_space({1}), {0, 0}, 0);
  GElement r2 = c.model.gen(c.model.x[0]) * c.model.gen(c.model.x[0]) + c.model.gen(c.model.x[1]) * c.model.gen(c.model.x[1]);
  CHECK_THROWS_AS(make_section(c, r2, lattice_unit(2, 2)), Error);
}

TEST_CASE("transitions") {
  auto M = make_space({1});
  auto at = local_sections(M, {0, 0}, 4);
  Rng rng(4);
  auto f = random_factor(rng, 3, 2);
  auto s = make_section(at, at.model.gen(at.model.u[0]), f);
  auto same = transition(M, {0, 0}, s);
  CHECK(same.cocycle == s.cocycle);
  CHECK(same.factor == s.factor);

  Anchor g{ratio(1, 5), 0};
  auto t = transition(M, g, s);
  CHECK(t.cocycle.str() == "(1)*u1");
  // u -> u - A / 5
  auto var = [&](int i) { return QMulti::variable(kVars, i, 3); };
  CHECK(t.factor == substitute(f, {var(0) - var(1).scaled(ratio(1, 5)), var(1), var(2)}));
  CHECK_THROWS_AS(transition(M, {0, 0}, t), Error);

  // restriction of a cocycle with a form part: d_C-closed elements that vanish at the origin
  for (const auto& z : at.cocycles[2]) {
    auto r = transition(M, g, make_section(at, z, lattice_unit(2, 2)));
    for (const auto& [m, c] : r.cocycle.terms()) CHECK(r.model.algebra()->sweight(m) == 0);
  }

  // cocycle condition on triples
  auto N = make_space({2, 3});
  Anchor h0{0, 0}, h1{ratio(1, 2), 0}, h2{ratio(1, 2) + ratio(1, 7), ratio(1, 11)};
  auto base = local_sections(N, h0, 4);
  for (int k = 0; k < 5; ++k) {
    for (int n : {0, 2, 4})
      for (const auto& z : base.cocycles[n]) {
        auto sec = make_section(base, z, random_factor(rng, 3, 2));
        auto two = transition(N, h2, transition(N, h1, sec));
        auto one = transition(N, h2, sec);
        CHECK(two.cocycle == one.cocycle);
        CHECK(two.factor == one.factor);
      }
  }
  CHECK(localization_check(N, h0, h1, 4).bijective);
  CHECK(localization_check(N, h1, h2, 4).bijective);
  CHECK(localization_check(M, h0, g, 5, 3).bijective);
}

TEST_CASE("completion") {
  auto M = make_space({1});
  auto at = local_sections(M, {0, 0}, 2);
  auto c = completion_map(make_section(at, at.model.scalar(3), lattice_unit(4, 2)));
  CHECK(c == ZSeries::constant(QSeries::constant(3, "q", 2), "z", 4));

  auto sig = sigma_section(M, 6, 8);
  ZSeries comp = completion_map(sig);
  auto taylor = taylor_completion(6, false, 8);
  for (const auto& t : taylor) CHECK((comp.coeff(t.power) - t.coeff).is_zero());

  Rng rng(12);
  auto s = make_section(at, at.model.gen(at.model.u[0]), random_factor(rng, 4, 3));
  for (int k = 0; k < 5; ++k) {
    auto f = random_z(rng, 4, 3);
    CHECK(completion_map(module_action({{0, 0}, f}, s)) == (f * completion_map(s)).truncated(4));
  }
  // u completes to z
  CHECK(completion_map(s).coeff(0).is_zero());
  CHECK_THROWS_AS(completion_map(transition(M, {ratio(1, 3), 0}, s)), Error);
}

TEST_CASE("finite sectors") {
  auto z2 = finite_sectors(cyclic_group(2));
  CHECK(z2.commuting_pairs == 4);
  CHECK(z2.orbits == 2);
  CHECK(z2.orbits == brute_orbits(cyclic_group(2)));
  for (const auto& c : z2.classes) {
    if (c.representative == std::pair{0, 0}) {
      CHECK(c.stabilizer_index == 1);
    } else {
      CHECK(c.stabilizer_index == 3);
    }
  }
  CHECK(z2.orbit_stabilizer);

  auto s3 = finite_sectors(symmetric_group(3));
  CHECK(s3.commuting_pairs == 18);
  CHECK(s3.conjugacy_classes == 3);
  CHECK(s3.burnside);
  CHECK(s3.orbits == brute_orbits(symmetric_group(3)));
  CHECK(s3.orbit_stabilizer);

  auto triv = finite_sectors(cyclic_group(1));
  CHECK(triv.commuting_pairs == 1);
  REQUIRE(triv.classes.size() == 1);
  CHECK(triv.classes[0].stabilizer_index == 1);
  CHECK(triv.classes[0].stabilizer_generators.size() == 2);

  for (int n : {3, 4, 6}) CHECK(finite_sectors(cyclic_group(n)).orbits == brute_orbits(cyclic_group(n)));
  auto s4 = symmetric_group(4);
  auto r4 = finite_sectors(s4);
  CHECK(r4.orbits == brute_orbits(s4));
  CHECK(r4.burnside);

  // relabeling invariance
  Rng rng(1);
  std::vector<int> perm(6);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  auto s3r = finite_sectors(relabeled(symmetric_group(3), perm));
  CHECK(s3r.orbits == s3.orbits);
  CHECK(s3r.pair_classes == s3.pair_classes);
  std::multiset<int> a, b;
  for (const auto& c : s3.classes) a.insert(c.stabilizer_index);
  for (const auto& c : s3r.classes) b.insert(c.stabilizer_index);
  CHECK(a == b);
}

TEST_CASE("group tables") {
  auto j = Json::parse(R"({"order": 2, "mul": [[0, 1], [1, 0]]})");
  CHECK(group_table_from_json(j).order == 2);
  auto bad = Json::parse(R"({"order": 3, "mul": [[0, 1, 2], [1, 0, 2], [2, 2, 0]]})");
  try {
    group_table_from_json(bad);
    FAIL("expected a load error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kLoad);
  }
  CHECK_THROWS_AS(group_table_from_json(Json::parse(R"({"order": 2})")), Error);
  CHECK_THROWS_AS(make_group_table({{0, 1}, {1, 1}}), Error);
}
