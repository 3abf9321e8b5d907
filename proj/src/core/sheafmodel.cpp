// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/sheafmodel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "core/linalg.hpp"

namespace ellforge {

namespace {

const std::vector<std::string> kFactorVars{"u", "A", "B"};

bool integral(const Rational& r) { return r.get_den() == 1; }

Rational frac_dist(const Rational& r) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  Rational f = r - Rational(fl);
  Rational g = 1 - f;
  return f < g ? f : g;
}

EquivModel fixed_model(const CircleActionSpace& M, const std::vector<int>& fixed) {
  std::vector<int> w;
  for (int j : fixed) w.push_back(M.weights[j]);
  return cartan_model(lie_u1(), u1_weights(w));
}

// Restriction from the model of fixed(h) to the model of fixed(h2).
Homomorphism restriction(const EquivModel& src, const std::vector<int>& fsrc, const EquivModel& tgt,
                         const std::vector<int>& ftgt) {
  Homomorphism r{src.algebra(), tgt.algebra(), std::vector<GElement>(src.algebra()->size(), GElement(tgt.algebra()))};
  for (std::size_t p = 0; p < fsrc.size(); ++p) {
    auto it = std::find(ftgt.begin(), ftgt.end(), fsrc[p]);
    if (it == ftgt.end()) continue;
    int q = static_cast<int>(it - ftgt.begin());
    for (int c = 0; c < 2; ++c) {
      r.images[src.x[2 * p + c]] = tgt.gen(tgt.x[2 * q + c]);
      r.images[src.dx[2 * p + c]] = tgt.gen(tgt.dx[2 * q + c]);
    }
  }
  r.images[src.u[0]] = tgt.gen(tgt.u[0]);
  return r;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

int span_rank(const std::vector<GElement>& xs, const std::vector<GMono>& basis) {
  std::vector<SparseVec> rows;
  for (const auto& x : xs) rows.push_back(to_coords(x, basis));
  return rank(rows, static_cast<int>(basis.size()));
}

}  // namespace

Anchor parse_anchor(const std::string& s) {
  auto comma = s.find(',');
  require(comma != std::string::npos, ErrorKind::kInput, "anchor must be 'x,y'");
  return Anchor{parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

std::string to_string(const Anchor& h) { return to_string(h.x) + "," + to_string(h.y); }

bool same_point(const Anchor& a, const Anchor& b) { return integral(a.x - b.x) && integral(a.y - b.y); }

CircleActionSpace make_space(std::vector<int> weights) {
  require(weights.size() <= 4, ErrorKind::kInput, "at most 4 weights are supported");
  return CircleActionSpace{std::move(weights)};
}

std::vector<int> fixed_locus(const CircleActionSpace& M, const Anchor& h) {
  std::vector<int> out;
  for (std::size_t j = 0; j < M.weights.size(); ++j) {
    Rational w = M.weights[j];
    if (integral(w * h.x) && integral(w * h.y)) out.push_back(static_cast<int>(j));
  }
  return out;
}

Rational small_open_radius(const CircleActionSpace& M, const Anchor& h) {
  Rational r = ratio(1, 2);
  for (std::size_t j = 0; j < M.weights.size(); ++j) {
    Rational w = M.weights[j];
    if (integral(w * h.x) && integral(w * h.y)) continue;
    Rational d = std::max(frac_dist(w * h.x), frac_dist(w * h.y)) / abs(w);
    r = std::min(r, d);
  }
  return r;
}

bool in_small_open(const CircleActionSpace& M, const Anchor& h, const Anchor& h2) {
  Rational r = small_open_radius(M, h);
  return abs(h2.x - h.x) < r && abs(h2.y - h.y) < r;
}

QMulti lattice_unit(int D, int nq) { return QMulti::constant(kFactorVars, QSeries::constant(1, "q", nq), D); }

LocalSections local_sections(const CircleActionSpace& M, const Anchor& h, int max_degree, int max_sweight) {
  require(max_degree >= 0 && max_degree <= 12 && max_sweight >= 0 && max_sweight <= 4, ErrorKind::kInput,
          "section truncation supports degree <= 12 and sweight <= 4");
  LocalSections out;
  out.anchor = h;
  out.fixed = fixed_locus(M, h);
  for (int j : out.fixed) out.fixed_weights.push_back(M.weights[j]);
  out.model = fixed_model(M, out.fixed);
  out.max_degree = max_degree;
  out.max_sweight = max_sweight;
  for (int n = 0; n <= max_degree; ++n) {
    std::vector<GElement> z;
    for (int s = 0; s <= max_sweight; ++s)
      for (auto& c : invariant_cocycles(out.model, n, s)) z.push_back(std::move(c));
    out.cocycles.push_back(std::move(z));
  }
  out.cohomology = invariant_cohomology(out.model, max_degree, max_sweight);
  return out;
}

LocalSection make_section(const LocalSections& at, const GElement& cocycle, const QMulti& factor) {
  const EquivModel& m = at.model;
  require(cocycle.algebra() == m.algebra() || cocycle.is_zero(), ErrorKind::kInput,
          "cocycle does not belong to this model");
  require(factor.vars() == kFactorVars, ErrorKind::kInput, "lattice factor must be a series in (u, A, B)");
  int deg = cocycle.is_zero() ? 0 : m.algebra()->degree(cocycle.terms().begin()->first);
  require(cocycle.component(deg) == cocycle, ErrorKind::kInput, "cocycle is not homogeneous");
  require(cartan_d(m, cocycle).is_zero(), ErrorKind::kInput, "not a cocycle");
  require(lie_derivative(m, {Rational(1)}, cocycle).is_zero(), ErrorKind::kInput, "cocycle is not invariant");
  LocalSection s{at.anchor, m, cocycle, factor, deg};
  if (s.cocycle.algebra() == nullptr) s.cocycle = GElement(m.algebra());
  return s;
}

LocalSection module_action(const CenteredSeries& f, const LocalSection& s) {
  require(same_point(f.center, s.anchor), ErrorKind::kRecenter,
          "series centered at " + to_string(f.center) + ", section anchored at " + to_string(s.anchor));
  require(f.f.is_zero() || f.f.valuation() >= 0, ErrorKind::kInput, "module action needs a power series");
  int D = std::min(s.factor.trunc(), f.f.trunc());
  QMulti g(kFactorVars, D);
  for (const auto& [e, c] : f.f.terms())
    if (e <= D) g.set(mono_unit(0, e), c);
  LocalSection out = s;
  out.factor = (g * s.factor).truncated(D);
  return out;
}

LocalSection transition(const CircleActionSpace& M, const Anchor& h2, const LocalSection& s) {
  auto fh = fixed_locus(M, s.anchor), fh2 = fixed_locus(M, h2);
  require(subset(fh2, fh), ErrorKind::kInput, "transition needs fixed(h') contained in fixed(h)");
  EquivModel tgt = fixed_model(M, fh2);
  Homomorphism r = restriction(s.model, fh, tgt, fh2);
  int D = s.factor.trunc();
  auto var = [&](int i) { return QMulti::variable(kFactorVars, i, D); };
  Rational ex = s.anchor.x - h2.x, ey = s.anchor.y - h2.y;
  QMulti shifted = var(0) + var(1).scaled(ex) + var(2).scaled(ey);
  LocalSection out;
  out.anchor = h2;
  out.model = tgt;
  out.cocycle = apply(r, s.cocycle);
  out.factor = D == 0 ? s.factor : substitute(s.factor, {shifted, var(1), var(2)});
  out.weight = s.weight;
  return out;
}

LocalizationReport localization_check(const CircleActionSpace& M, const Anchor& h, const Anchor& h2, int max_degree,
                                      int max_sweight) {
  auto fh = fixed_locus(M, h), fh2 = fixed_locus(M, h2);
  require(subset(fh2, fh), ErrorKind::kInput, "transition needs fixed(h') contained in fixed(h)");
  EquivModel src = fixed_model(M, fh), tgt = fixed_model(M, fh2);
  Homomorphism r = restriction(src, fh, tgt, fh2);
  LocalizationReport rep;
  rep.bijective = true;
  for (int n = 0; n <= max_degree; ++n)
    for (int s = 0; s <= max_sweight; ++s) {
      LocalizationBlock b;
      b.n = n;
      b.s = s;
      auto zs = invariant_cocycles(src, n, s), bs = invariant_coboundaries(src, n, s);
      auto zt = invariant_cocycles(tgt, n, s), bt = invariant_coboundaries(tgt, n, s);
      auto msrc = enumerate_monomials(*src.algebra(), n, s), mtgt = enumerate_monomials(*tgt.algebra(), n, s);
      b.dim_source = static_cast<int>(zs.size()) - span_rank(bs, msrc);
      int rbt = span_rank(bt, mtgt);
      b.dim_target = static_cast<int>(zt.size()) - rbt;
      std::vector<GElement> img = bt;
      for (const auto& z : zs) img.push_back(apply(r, z));
      b.rank = span_rank(img, mtgt) - rbt;
      rep.bijective = rep.bijective && b.rank == b.dim_source && b.rank == b.dim_target;
      rep.blocks.push_back(b);
    }
  return rep;
}

ZSeries completion_map(const LocalSection& s) {
  require(same_point(s.anchor, Anchor{0, 0}), ErrorKind::kInput, "completion is defined at the trivial anchor");
  const GAlgebra* alg = s.model.algebra();
  int D = s.factor.trunc();
  ZSeries p("z", kExactOrder);
  for (const auto& [m, c] : s.cocycle.terms()) {
    if (alg->sweight(m) != 0) continue;  // vanishes at the origin
    p.add_to(alg->degree(m) / 2, QSeries::constant(c));
  }
  ZSeries f("z", D);
  for (const auto& [m, c] : s.factor.terms())
    if (mono_exp(m, 1) == 0 && mono_exp(m, 2) == 0) f.set(mono_exp(m, 0), c);
  return (p * f).truncated(D);
}

LocalSection sigma_section(const CircleActionSpace& M, int nz, int nq) {
  require(nz >= 1 && nq >= 0, ErrorKind::kInput, "bad truncation");
  LocalSections at = local_sections(M, Anchor{0, 0}, 0, 0);
  ZSeries s = sigma_product(std::max(nq, 1), nz, true).expansion;
  QMulti f(kFactorVars, nz);
  for (const auto& [e, c] : s.terms())
    if (e <= nz) f.set(mono_unit(0, e), c.truncated(nq));
  return make_section(at, at.model.scalar(1), f);
}

// ---- finite groups ----

FiniteGroupTable make_group_table(std::vector<std::vector<int>> mul, std::vector<std::string> names) {
  int n = static_cast<int>(mul.size());
  require(n >= 1 && n <= 128, ErrorKind::kLoad, "group order must be in 1..128");
  for (const auto& row : mul) {
    require(static_cast<int>(row.size()) == n, ErrorKind::kLoad, "multiplication table is not square");
    for (int x : row) require(x >= 0 && x < n, ErrorKind::kLoad, "table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(mul[mul[a][b]][c] == mul[a][mul[b][c]], ErrorKind::kLoad, "multiplication is not associative");
  FiniteGroupTable G;
  G.order = n;
  G.identity = -1;
  for (int e = 0; e < n && G.identity < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = mul[e][g] == g && mul[g][e] == g;
    if (ok) G.identity = e;
  }
  require(G.identity >= 0, ErrorKind::kLoad, "no identity element");
  for (int g = 0; g < n; ++g) {
    int inv = -1;
    for (int h = 0; h < n && inv < 0; ++h)
      if (mul[g][h] == G.identity && mul[h][g] == G.identity) inv = h;
    require(inv >= 0, ErrorKind::kLoad, "element without inverse");
    G.inverse.push_back(inv);
  }
  if (names.empty())
    for (int g = 0; g < n; ++g) names.push_back("g" + std::to_string(g));
  require(static_cast<int>(names.size()) == n, ErrorKind::kLoad, "wrong number of element names");
  G.mul = std::move(mul);
  G.names = std::move(names);
  return G;
}

FiniteGroupTable group_table_from_json(const Json& j) {
  try {
    int n = j.at("order").get<int>();
    auto mul = j.at("mul").get<std::vector<std::vector<int>>>();
    require(static_cast<int>(mul.size()) == n, ErrorKind::kLoad, "order does not match the table");
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return make_group_table(std::move(mul), std::move(names));
  } catch (const Json::exception& e) {
    fail(ErrorKind::kLoad, std::string("bad group table: ") + e.what());
  }
}

FiniteGroupTable cyclic_group(int n) {
  require(n >= 1 && n <= 128, ErrorKind::kInput, "order must be in 1..128");
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  return make_group_table(std::move(mul));
}

FiniteGroupTable symmetric_group(int n) {
  require(n >= 1 && n <= 4, ErrorKind::kInput, "symmetric groups up to S4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    index[perms[i]] = static_cast<int>(i);
    std::string s;
    for (int x : perms[i]) s += std::to_string(x + 1);
    names.push_back(s);
  }
  int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> mul(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      mul[a][b] = index.at(c);
    }
  return make_group_table(std::move(mul), std::move(names));
}

FiniteGroupTable relabeled(const FiniteGroupTable& G, const std::vector<int>& perm) {
  int n = G.order;
  require(static_cast<int>(perm.size()) == n, ErrorKind::kInput, "relabeling has the wrong size");
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[perm[a]] = G.names[a];
    for (int b = 0; b < n; ++b) mul[perm[a]][perm[b]] = perm[G.mul[a][b]];
  }
  return make_group_table(std::move(mul), std::move(names));
}

namespace {

IntMatrix2 mat_mul(const IntMatrix2& a, const IntMatrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

IntMatrix2 mat_inv(const IntMatrix2& a) { return {a[3], -a[1], -a[2], a[0]}; }

int power(const FiniteGroupTable& G, int g, long k) {
  if (k < 0) {
    g = G.inverse[g];
    k = -k;
  }
  int r = G.identity;
  for (long i = 0; i < k % G.order; ++i) r = G.mul[r][g];
  return r;
}

// phi o gamma for phi(e1) = h1, phi(e2) = h2.
std::pair<int, int> act(const FiniteGroupTable& G, std::pair<int, int> h, const IntMatrix2& m) {
  auto ev = [&](long a, long c) { return G.mul[power(G, h.first, a)][power(G, h.second, c)]; };
  return {ev(m[0], m[2]), ev(m[1], m[3])};
}

}  // namespace

SectorReport finite_sectors(const FiniteGroupTable& G) {
  const int n = G.order;
  const IntMatrix2 S{0, -1, 1, 0}, T{1, 1, 0, 1}, I{1, 0, 0, 1};
  SectorReport rep;
  rep.order = n;

  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> pair_index;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.mul[a][b] == G.mul[b][a]) {
        pair_index[{a, b}] = static_cast<int>(pairs.size());
        pairs.emplace_back(a, b);
      }
  rep.commuting_pairs = static_cast<int>(pairs.size());

  auto conj = [&](int g, int x) { return G.mul[G.mul[g][x]][G.inverse[g]]; };
  std::set<std::set<int>> elem_classes;
  for (int x = 0; x < n; ++x) {
    std::set<int> c;
    for (int g = 0; g < n; ++g) c.insert(conj(g, x));
    elem_classes.insert(c);
  }
  rep.conjugacy_classes = static_cast<int>(elem_classes.size());
  rep.burnside = rep.commuting_pairs == n * rep.conjugacy_classes;

  // conjugacy classes of pairs
  std::vector<int> cls(pairs.size(), -1);
  std::vector<std::pair<int, int>> reps;
  std::vector<int> sizes;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (cls[i] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(pairs[i]);
    std::set<int> members;
    for (int g = 0; g < n; ++g)
      members.insert(pair_index.at({conj(g, pairs[i].first), conj(g, pairs[i].second)}));
    for (int k : members) cls[k] = id;
    sizes.push_back(static_cast<int>(members.size()));
  }
  int nc = static_cast<int>(reps.size());
  rep.pair_classes = nc;
  auto step = [&](int c, const IntMatrix2& m) { return cls[pair_index.at(act(G, reps[c], m))]; };

  std::vector<int> orbit_of(nc, -1);
  std::vector<IntMatrix2> coset(nc, I);  // reps[root] . coset[c] ~ reps[c]
  rep.classes.resize(nc);
  rep.orbit_stabilizer = true;
  int total = 0;
  for (int root = 0; root < nc; ++root) {
    if (orbit_of[root] >= 0) continue;
    int oid = rep.orbits++;
    std::vector<int> members{root};
    orbit_of[root] = oid;
    coset[root] = I;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      for (const auto& g : {S, T}) {
        int d = step(c, g);
        if (orbit_of[d] < 0) {
          orbit_of[d] = oid;
          coset[d] = mat_mul(coset[c], g);
          members.push_back(d);
          queue.push_back(d);
        }
      }
    }
    total += static_cast<int>(members.size());
    // Schreier generators of the stabilizer of root
    std::set<IntMatrix2> gens;
    for (int c : members)
      for (const auto& g : {S, T}) {
        IntMatrix2 s = mat_mul(mat_mul(coset[c], g), mat_inv(coset[step(c, g)]));
        if (s != I) gens.insert(s);
      }
    for (int c : members) {
      SectorClass& sc = rep.classes[c];
      sc.representative = reps[c];
      sc.size = sizes[c];
      sc.orbit = oid;
      sc.stabilizer_index = static_cast<int>(members.size());
      std::set<IntMatrix2> conj_gens;
      for (const auto& s : gens) conj_gens.insert(mat_mul(mat_mul(mat_inv(coset[c]), s), coset[c]));
      sc.stabilizer_generators.assign(conj_gens.begin(), conj_gens.end());
      for (const auto& s : sc.stabilizer_generators) rep.orbit_stabilizer = rep.orbit_stabilizer && step(c, s) == c;
    }
  }
  rep.orbit_stabilizer = rep.orbit_stabilizer && total == nc;
  return rep;
}

}  // namespace ellforge
