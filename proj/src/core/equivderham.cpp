// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/equivderham.hpp"

#include <map>

#include "core/linalg.hpp"

namespace ellforge {

namespace {

using F3 = std::vector<std::vector<std::vector<Rational>>>;

F3 zero_f(int n) { return F3(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n))); }

GMatrix gzero(int n) { return GMatrix(n, std::vector<GaussianRational>(n)); }

GMatrix gmul(const GMatrix& a, const GMatrix& b) {
  int n = static_cast<int>(a.size());
  GMatrix c = gzero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

GMatrix gcomm(const GMatrix& a, const GMatrix& b) {
  GMatrix ab = gmul(a, b), ba = gmul(b, a);
  for (std::size_t i = 0; i < ab.size(); ++i)
    for (std::size_t j = 0; j < ab.size(); ++j) ab[i][j] -= ba[i][j];
  return ab;
}

void check_dim(const LieAlgebra& g, const std::vector<Rational>& X) {
  require(static_cast<int>(X.size()) == g.dim, ErrorKind::kInput, "Lie algebra vector has the wrong dimension");
}

RMatrix rho_of(const EquivModel& m, const std::vector<Rational>& X) {
  int d = m.rep.dim;
  RMatrix r(d, std::vector<Rational>(d));
  for (int a = 0; a < m.lie.dim; ++a) {
    if (sgn(X[a]) == 0) continue;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) r[i][j] += X[a] * m.rep.rho[a][i][j];
  }
  return r;
}

// Kernel and rank of a stack of linear operators on span(src); targets are
// indexed on the fly.
struct Stack {
  int rank = 0;
  std::vector<SparseVec> rows;  // equations in src coordinates
};

Stack stack_ops(const GAlgebra* alg, const std::vector<GMono>& src,
                const std::vector<std::function<GElement(const GElement&)>>& ops) {
  std::map<std::pair<int, GMono>, int> row_of;
  std::vector<std::map<int, Rational>> rows;
  for (std::size_t j = 0; j < src.size(); ++j) {
    GElement x = GElement::mono(alg, src[j]);
    for (std::size_t k = 0; k < ops.size(); ++k) {
      GElement y = ops[k](x);
      for (const auto& [m, c] : y.terms()) {
        auto [it, fresh] = row_of.try_emplace({static_cast<int>(k), m}, static_cast<int>(rows.size()));
        if (fresh) rows.emplace_back();
        rows[it->second][static_cast<int>(j)] = c;
      }
    }
  }
  Stack s;
  for (auto& r : rows) s.rows.emplace_back(r.begin(), r.end());
  s.rank = rank(s.rows, static_cast<int>(src.size()));
  return s;
}

std::vector<GElement> kernel_elements(const GAlgebra* alg, const std::vector<GMono>& src,
                                      const std::vector<std::function<GElement(const GElement&)>>& ops) {
  Stack s = stack_ops(alg, src, ops);
  std::vector<GElement> out;
  for (const auto& v : nullspace(s.rows, static_cast<int>(src.size()))) out.push_back(from_coords(alg, src, v));
  return out;
}

std::vector<std::function<GElement(const GElement&)>> lie_ops(const EquivModel& m) {
  std::vector<std::function<GElement(const GElement&)>> ops;
  for (int a = 0; a < m.lie.dim; ++a) {
    Derivation L = lie_derivative_op(m, basis_vector(m.lie, a));
    ops.push_back([L](const GElement& x) { return apply(L, x); });
  }
  return ops;
}

EquivModel build_model(ModelTag tag, const LieAlgebra& g, const Representation& rep_in, bool literal) {
  EquivModel m;
  m.tag = tag;
  m.lie = g;
  m.rep = rep_in;
  m.literal_weil_sign = literal;
  if (m.rep.rho.empty() && m.rep.dim > 0)
    m.rep.rho.assign(g.dim, RMatrix(m.rep.dim, std::vector<Rational>(m.rep.dim)));
  if (m.rep.dim > 0)
    require(static_cast<int>(m.rep.rho.size()) == g.dim, ErrorKind::kInput,
            "representation needs one matrix per basis element");
  std::vector<Generator> gens;
  auto add = [&](std::vector<int>& where, const std::string& name, int deg, int sw) {
    where.push_back(static_cast<int>(gens.size()));
    gens.push_back({name, deg, sw});
  };
  for (int i = 1; i <= m.rep.dim; ++i) add(m.x, "x" + std::to_string(i), 0, 1);
  for (int i = 1; i <= m.rep.dim; ++i) add(m.dx, "dx" + std::to_string(i), 1, 1);
  if (tag == ModelTag::kWeil) {
    for (int a = 1; a <= g.dim; ++a) add(m.e, "e" + std::to_string(a), 2, 0);
    for (int a = 1; a <= g.dim; ++a) add(m.eps, "eps" + std::to_string(a), 1, 0);
  }
  if (tag == ModelTag::kCartan)
    for (int a = 1; a <= g.dim; ++a) add(m.u, "u" + std::to_string(a), 2, 0);
  m.alg = std::make_shared<GAlgebra>(std::move(gens));
  return m;
}

// V_i(x) = -sum_j rho(X)_ij x_j.
GElement vector_field(const EquivModel& m, const RMatrix& r, int i) {
  GElement v(m.algebra());
  for (int j = 0; j < m.rep.dim; ++j)
    if (sgn(r[i][j]) != 0) v += m.gen(m.x[j], -r[i][j]);
  return v;
}

Derivation de_rham(const EquivModel& m) {
  Derivation D = zero_derivation(m.algebra(), 1);
  for (int i = 0; i < m.rep.dim; ++i) D.images[m.x[i]] = m.gen(m.dx[i]);
  return D;
}

void require_tag(const EquivModel& m, ModelTag t) {
  require(m.tag == t, ErrorKind::kModel,
          "model tag mismatch: expected " + model_tag_name(t) + ", got " + model_tag_name(m.tag));
}

Rational random_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  int n = 0;
  while (n == 0) n = num(rng);
  return ratio(n, den(rng));
}

std::vector<Rational> random_vector(int n, Rng& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<Rational> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

std::string model_tag_name(ModelTag t) {
  switch (t) {
    case ModelTag::kForms:
      return "forms";
    case ModelTag::kWeil:
      return "weil";
    case ModelTag::kCartan:
      return "cartan";
  }
  return "?";
}

LieAlgebra make_lie_algebra(std::string name, int dim, F3 f, std::vector<GMatrix> basis) {
  require(dim >= 0 && dim <= 8, ErrorKind::kInput, "Lie algebra dimension must be in 0..8");
  require(static_cast<int>(f.size()) == dim, ErrorKind::kInput, "structure constants have the wrong shape");
  for (const auto& fa : f) {
    require(static_cast<int>(fa.size()) == dim, ErrorKind::kInput, "structure constants have the wrong shape");
    for (const auto& fab : fa)
      require(static_cast<int>(fab.size()) == dim, ErrorKind::kInput, "structure constants have the wrong shape");
  }
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        require(f[a][b][c] == -f[a][c][b], ErrorKind::kInput, "structure constants are not antisymmetric");
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int e = 0; e < dim; ++e) {
          Rational s = 0;
          for (int d = 0; d < dim; ++d)
            s += f[d][b][c] * f[a][d][e] + f[d][c][e] * f[a][d][b] + f[d][e][b] * f[a][d][c];
          require(sgn(s) == 0, ErrorKind::kInput, "structure constants violate the Jacobi identity");
        }
  return LieAlgebra{std::move(name), dim, std::move(f), std::move(basis)};
}

LieAlgebra lie_from_matrices(std::string name, std::vector<GMatrix> basis) {
  int dim = static_cast<int>(basis.size());
  require(dim > 0, ErrorKind::kInput, "empty basis");
  int n = static_cast<int>(basis[0].size());
  // equations: real and imaginary part of each matrix entry
  std::vector<SparseVec> rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int part = 0; part < 2; ++part) {
        SparseVec r;
        for (int a = 0; a < dim; ++a) {
          const Rational& v = part ? basis[a][i][j].im : basis[a][i][j].re;
          if (sgn(v) != 0) r.emplace_back(a, v);
        }
        rows.push_back(std::move(r));
      }
  require(rank(rows, dim) == dim, ErrorKind::kInput, "basis matrices are linearly dependent");
  F3 f = zero_f(dim);
  for (int b = 0; b < dim; ++b)
    for (int c = 0; c < dim; ++c) {
      GMatrix C = gcomm(basis[b], basis[c]);
      std::vector<Rational> rhs;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          rhs.push_back(C[i][j].re);
          rhs.push_back(C[i][j].im);
        }
      auto sol = solve(rows, rhs, dim);
      require(sol.has_value(), ErrorKind::kInput, "matrices do not span a Lie algebra");
      for (int a = 0; a < dim; ++a) f[a][b][c] = (*sol)[a];
    }
  return make_lie_algebra(std::move(name), dim, std::move(f), std::move(basis));
}

LieAlgebra lie_u1() { return lie_from_matrices("u1", {GMatrix{{GaussianRational(0, 1)}}}); }

LieAlgebra lie_su2() {
  Rational h = ratio(1, 2);
  GMatrix t1{{0, GaussianRational(0, -h)}, {GaussianRational(0, -h), 0}};
  GMatrix t2{{0, GaussianRational(-h)}, {GaussianRational(h), 0}};
  GMatrix t3{{GaussianRational(0, -h), 0}, {0, GaussianRational(0, h)}};
  return lie_from_matrices("su2", {t1, t2, t3});
}

LieAlgebra lie_u2() {
  GaussianRational i(0, 1);
  GMatrix t1{{i, 0}, {0, 0}}, t2{{0, 0}, {0, i}}, t3{{0, 1}, {-1, 0}}, t4{{0, i}, {i, 0}};
  return lie_from_matrices("u2", {t1, t2, t3, t4});
}

LieAlgebra lie_by_name(const std::string& name) {
  if (name == "u1") return lie_u1();
  if (name == "su2") return lie_su2();
  if (name == "u2") return lie_u2();
  fail(ErrorKind::kInput, "unknown group " + name + " (expected u1, su2 or u2)");
}

std::vector<Rational> basis_vector(const LieAlgebra& g, int a) {
  std::vector<Rational> v(g.dim);
  v[a] = 1;
  return v;
}

std::vector<Rational> bracket(const LieAlgebra& g, const std::vector<Rational>& X, const std::vector<Rational>& Y) {
  check_dim(g, X);
  check_dim(g, Y);
  std::vector<Rational> Z(g.dim);
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b)
      for (int c = 0; c < g.dim; ++c) Z[a] += g.f[a][b][c] * X[b] * Y[c];
  return Z;
}

Representation realify(const LieAlgebra& g) {
  require(!g.basis.empty(), ErrorKind::kInput, "Lie algebra has no defining matrices");
  int n = static_cast<int>(g.basis[0].size());
  Representation r;
  r.dim = 2 * n;
  for (const auto& T : g.basis) {
    RMatrix m(2 * n, std::vector<Rational>(2 * n));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        m[2 * j][2 * k] = T[j][k].re;
        m[2 * j][2 * k + 1] = -T[j][k].im;
        m[2 * j + 1][2 * k] = T[j][k].im;
        m[2 * j + 1][2 * k + 1] = T[j][k].re;
      }
    r.rho.push_back(std::move(m));
  }
  return r;
}

Representation u1_weights(const std::vector<int>& weights) {
  int k = static_cast<int>(weights.size());
  require(k <= 4, ErrorKind::kInput, "at most 4 weights are supported");
  Representation r;
  r.dim = 2 * k;
  RMatrix m(2 * k, std::vector<Rational>(2 * k));
  for (int j = 0; j < k; ++j) {
    m[2 * j][2 * j + 1] = -weights[j];
    m[2 * j + 1][2 * j] = weights[j];
  }
  r.rho.push_back(std::move(m));
  return r;
}

EquivModel forms_model(const LieAlgebra& g, const Representation& rep) {
  return build_model(ModelTag::kForms, g, rep, false);
}

EquivModel weil_model(const LieAlgebra& g, const Representation& rep, bool literal_weil_sign) {
  return build_model(ModelTag::kWeil, g, rep, literal_weil_sign);
}

EquivModel cartan_model(const LieAlgebra& g, const Representation& rep) {
  return build_model(ModelTag::kCartan, g, rep, false);
}

EquivModel polynomial_model(const LieAlgebra& g) { return cartan_model(g, {}); }

Derivation differential(const EquivModel& m) {
  Derivation D = de_rham(m);
  const auto& f = m.lie.f;
  if (m.tag == ModelTag::kWeil) {
    Rational esign = m.literal_weil_sign ? -1 : 1;
    for (int a = 0; a < m.lie.dim; ++a) {
      GElement de(m.algebra()), deps = m.gen(m.e[a]);
      for (int b = 0; b < m.lie.dim; ++b)
        for (int c = 0; c < m.lie.dim; ++c) {
          if (sgn(f[a][b][c]) == 0) continue;
          de += (m.gen(m.e[b]) * m.gen(m.eps[c])).scaled(esign * f[a][b][c]);
          deps -= (m.gen(m.eps[b]) * m.gen(m.eps[c])).scaled(f[a][b][c] / 2);
        }
      D.images[m.e[a]] = de;
      D.images[m.eps[a]] = deps;
    }
  }
  if (m.tag == ModelTag::kCartan) {
    for (int i = 0; i < m.rep.dim; ++i) {
      GElement img(m.algebra());
      for (int a = 0; a < m.lie.dim; ++a)
        for (int j = 0; j < m.rep.dim; ++j)
          if (sgn(m.rep.rho[a][i][j]) != 0) img += (m.gen(m.u[a]) * m.gen(m.x[j])).scaled(m.rep.rho[a][i][j]);
      D.images[m.dx[i]] = img;
    }
  }
  return D;
}

Derivation contraction(const EquivModel& m, const std::vector<Rational>& X) {
  check_dim(m.lie, X);
  Derivation D = zero_derivation(m.algebra(), 1);
  RMatrix r = rho_of(m, X);
  for (int i = 0; i < m.rep.dim; ++i) D.images[m.dx[i]] = vector_field(m, r, i);
  if (m.tag == ModelTag::kWeil)
    for (int a = 0; a < m.lie.dim; ++a) D.images[m.eps[a]] = m.scalar(X[a]);
  return D;
}

Derivation lie_derivative_op(const EquivModel& m, const std::vector<Rational>& X) {
  check_dim(m.lie, X);
  if (m.tag != ModelTag::kCartan) return commutator(differential(m), contraction(m, X));
  Derivation L = commutator(de_rham(m), contraction(m, X));
  for (int a = 0; a < m.lie.dim; ++a) {
    GElement img(m.algebra());
    for (int b = 0; b < m.lie.dim; ++b)
      for (int c = 0; c < m.lie.dim; ++c)
        if (sgn(m.lie.f[a][b][c]) != 0 && sgn(X[c]) != 0) img += m.gen(m.u[b], m.lie.f[a][b][c] * X[c]);
    L.images[m.u[a]] = img;
  }
  return L;
}

GElement weil_d(const EquivModel& m, const GElement& x) {
  require_tag(m, ModelTag::kWeil);
  return apply(differential(m), x);
}

GElement weil_contraction(const EquivModel& m, const std::vector<Rational>& X, const GElement& x) {
  require_tag(m, ModelTag::kWeil);
  return apply(contraction(m, X), x);
}

GElement lie_derivative(const EquivModel& m, const std::vector<Rational>& X, const GElement& x) {
  return apply(lie_derivative_op(m, X), x);
}

GElement cartan_d(const EquivModel& m, const GElement& x) {
  require_tag(m, ModelTag::kCartan);
  return apply(differential(m), x);
}

std::vector<GElement> basic_subspace(const EquivModel& m, int n, int smax) {
  require(m.tag != ModelTag::kCartan, ErrorKind::kModel, "basic subspace is defined for the forms and Weil models");
  require(n >= 0 && n <= 16 && smax >= 0, ErrorKind::kInput, "degree must be in 0..16");
  auto ops = lie_ops(m);
  for (int a = 0; a < m.lie.dim; ++a) {
    Derivation I = contraction(m, basis_vector(m.lie, a));
    ops.push_back([I](const GElement& x) { return apply(I, x); });
  }
  return kernel_elements(m.algebra(), enumerate_monomials(*m.algebra(), n, smax, false), ops);
}

std::vector<GElement> invariant_basis(const EquivModel& m, int n, int s) {
  return kernel_elements(m.algebra(), enumerate_monomials(*m.algebra(), n, s), lie_ops(m));
}

std::vector<GElement> invariant_cocycles(const EquivModel& m, int n, int s) {
  auto ops = lie_ops(m);
  Derivation D = differential(m);
  ops.push_back([D](const GElement& x) { return apply(D, x); });
  return kernel_elements(m.algebra(), enumerate_monomials(*m.algebra(), n, s), ops);
}

std::vector<GElement> invariant_coboundaries(const EquivModel& m, int n, int s) {
  std::vector<GElement> out;
  if (n == 0) return out;
  Derivation D = differential(m);
  for (const auto& x : invariant_basis(m, n - 1, s)) {
    GElement y = apply(D, x);
    if (!y.is_zero()) out.push_back(std::move(y));
  }
  return out;
}

std::vector<int> invariant_cohomology(const EquivModel& m, int max_degree, int smax,
                                      const std::vector<std::function<GElement(const GElement&)>>& extra) {
  require(max_degree >= 0 && smax >= 0, ErrorKind::kInput, "negative truncation");
  auto inv_ops = lie_ops(m);
  inv_ops.insert(inv_ops.end(), extra.begin(), extra.end());
  auto cyc_ops = inv_ops;
  Derivation D = differential(m);
  cyc_ops.push_back([D](const GElement& x) { return apply(D, x); });

  // inv[n][s], cyc[n][s] = dimensions of invariants and invariant cocycles
  std::vector<std::vector<int>> inv(max_degree + 1, std::vector<int>(smax + 1));
  auto cyc = inv;
  std::vector<std::pair<int, int>> blocks;
  for (int n = 0; n <= max_degree; ++n)
    for (int s = 0; s <= smax; ++s) blocks.emplace_back(n, s);
  parallel_for(static_cast<int>(blocks.size()), [&](int k) {
    auto [n, s] = blocks[k];
    auto src = enumerate_monomials(*m.algebra(), n, s);
    int size = static_cast<int>(src.size());
    inv[n][s] = size - stack_ops(m.algebra(), src, inv_ops).rank;
    cyc[n][s] = size - stack_ops(m.algebra(), src, cyc_ops).rank;
  });
  std::vector<int> h(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n)
    for (int s = 0; s <= smax; ++s) h[n] += cyc[n][s] - (n > 0 ? inv[n - 1][s] - cyc[n - 1][s] : 0);
  return h;
}

CohomologyReport cartan_cohomology(const std::vector<int>& weights, int max_degree, int max_sweight) {
  CohomologyReport rep;
  rep.weights = weights;
  rep.max_degree = max_degree;
  rep.max_sweight = max_sweight;
  for (int w : weights) rep.zero_weight = rep.zero_weight || w == 0;
  EquivModel m = cartan_model(lie_u1(), u1_weights(weights));
  rep.dims = invariant_cohomology(m, max_degree, max_sweight);
  rep.stable = invariant_cohomology(m, max_degree, max_sweight + 2) == rep.dims;
  for (int n = 0; n <= max_degree; ++n) rep.point_dims.push_back(n % 2 == 0 ? 1 : 0);
  rep.matches_point = rep.dims == rep.point_dims;
  return rep;
}

TorusRestriction u2_torus_restriction() {
  LieAlgebra g = lie_u2();
  LieAlgebra t = lie_from_matrices("t2", {g.basis[0], g.basis[1]});
  TorusRestriction r{cartan_model(g, realify(g)), cartan_model(t, realify(t)), {}, {}};
  const GAlgebra* src = r.g.algebra();
  const GAlgebra* tgt = r.t.algebra();
  r.restrict = Homomorphism{src, tgt, std::vector<GElement>(src->size(), GElement(tgt))};
  for (int i = 0; i < r.g.rep.dim; ++i) {
    r.restrict.images[r.g.x[i]] = r.t.gen(r.t.x[i]);
    r.restrict.images[r.g.dx[i]] = r.t.gen(r.t.dx[i]);
  }
  r.restrict.images[r.g.u[0]] = r.t.gen(r.t.u[0]);
  r.restrict.images[r.g.u[1]] = r.t.gen(r.t.u[1]);
  // Weyl element: (z1, z2) -> (z2, z1), u1 <-> u2
  r.weyl = Homomorphism{tgt, tgt, std::vector<GElement>(tgt->size(), GElement(tgt))};
  const int swap[4] = {2, 3, 0, 1};
  for (int i = 0; i < 4; ++i) {
    r.weyl.images[r.t.x[i]] = r.t.gen(r.t.x[swap[i]]);
    r.weyl.images[r.t.dx[i]] = r.t.gen(r.t.dx[swap[i]]);
  }
  r.weyl.images[r.t.u[0]] = r.t.gen(r.t.u[1]);
  r.weyl.images[r.t.u[1]] = r.t.gen(r.t.u[0]);
  return r;
}

TorusReductionReport torus_reduction_check(int max_degree, int max_sweight) {
  require(max_degree >= 0 && max_degree <= 8 && max_sweight >= 0 && max_sweight <= 4, ErrorKind::kInput,
          "torus reduction supports degree <= 8 and sweight <= 4");
  TorusReductionReport rep;
  rep.max_degree = max_degree;
  rep.max_sweight = max_sweight;
  TorusRestriction r = u2_torus_restriction();
  Homomorphism weyl = r.weyl;
  std::vector<std::function<GElement(const GElement&)>> weyl_op{
      [weyl](const GElement& x) { return apply(weyl, x) - x; }};
  rep.cohomology_g = invariant_cohomology(r.g, max_degree, max_sweight);
  rep.cohomology_nt = invariant_cohomology(r.t, max_degree, max_sweight, weyl_op);
  rep.cohomology_agree = rep.cohomology_g == rep.cohomology_nt;
  rep.s0_agree = true;
  rep.injective = true;
  auto nt_ops = lie_ops(r.t);
  nt_ops.push_back(weyl_op[0]);
  for (int n = 0; n <= max_degree; ++n)
    for (int s = 0; s <= max_sweight; ++s) {
      TorusBlock b;
      b.n = n;
      b.s = s;
      auto inv_g = invariant_basis(r.g, n, s);
      auto tgt = enumerate_monomials(*r.t.algebra(), n, s);
      b.dim_g = static_cast<int>(inv_g.size());
      b.dim_nt = static_cast<int>(tgt.size()) - stack_ops(r.t.algebra(), tgt, nt_ops).rank;
      std::vector<SparseVec> images;
      for (const auto& v : inv_g) images.push_back(to_coords(apply(r.restrict, v), tgt));
      b.injective = rank(images, static_cast<int>(tgt.size())) == b.dim_g;
      rep.injective = rep.injective && b.injective;
      if (s == 0) rep.s0_agree = rep.s0_agree && b.dim_g == b.dim_nt;
      rep.blocks.push_back(b);
    }
  rep.passed = rep.cohomology_agree && rep.s0_agree && rep.injective;
  return rep;
}

GElement trace_polynomial(const EquivModel& polys, int k) {
  require(polys.tag == ModelTag::kCartan && polys.rep.dim == 0, ErrorKind::kModel,
          "trace polynomial lives in the polynomial model");
  require(!polys.lie.basis.empty(), ErrorKind::kInput, "Lie algebra has no defining matrices");
  require(k >= 1 && k <= 8, ErrorKind::kInput, "trace power must be in 1..8");
  const GAlgebra* alg = polys.algebra();
  int n = static_cast<int>(polys.lie.basis[0].size());
  using Entry = std::pair<GElement, GElement>;  // real, imaginary
  using PMatrix = std::vector<std::vector<Entry>>;
  PMatrix X(n, std::vector<Entry>(n, Entry{GElement(alg), GElement(alg)}));
  for (int a = 0; a < polys.lie.dim; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        X[i][j].first += polys.gen(polys.u[a], polys.lie.basis[a][i][j].re);
        X[i][j].second += polys.gen(polys.u[a], polys.lie.basis[a][i][j].im);
      }
  PMatrix P = X;
  for (int p = 1; p < k; ++p) {
    PMatrix Q(n, std::vector<Entry>(n, Entry{GElement(alg), GElement(alg)}));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const auto& [ar, ai] = P[i][l];
          const auto& [br, bi] = X[l][j];
          Q[i][j].first += ar * br - ai * bi;
          Q[i][j].second += ar * bi + ai * br;
        }
    P = std::move(Q);
  }
  GElement re(alg), im(alg);
  for (int i = 0; i < n; ++i) {
    re += P[i][i].first;
    im += P[i][i].second;
  }
  if (k % 2 == 0) {
    require(im.is_zero(), ErrorKind::kInternal, "trace of an even power is not real");
    return re;
  }
  require(re.is_zero(), ErrorKind::kInternal, "trace of an odd power is not imaginary");
  return im;
}

bool is_invariant(const EquivModel& polys, const GElement& P) {
  for (const auto& op : lie_ops(polys))
    if (!op(P).is_zero()) return false;
  return true;
}

GElement chern_weil(const EquivModel& forms, const EquivModel& polys, const GElement& P,
                    const std::vector<GElement>& A) {
  require_tag(forms, ModelTag::kForms);
  require(polys.tag == ModelTag::kCartan && polys.rep.dim == 0, ErrorKind::kModel,
          "the polynomial must live in the polynomial model");
  require(polys.lie.dim == forms.lie.dim && polys.lie.f == forms.lie.f, ErrorKind::kInput,
          "Lie algebra mismatch between polynomial and connection");
  require(static_cast<int>(A.size()) == forms.lie.dim, ErrorKind::kInput, "connection needs one 1-form per basis element");
  for (const auto& a : A)
    for (const auto& [mono, c] : a.terms())
      require(forms.algebra()->degree(mono) == 1, ErrorKind::kInput, "connection components must be 1-forms");
  require(is_invariant(polys, P), ErrorKind::kInput, "polynomial is not invariant under the adjoint action");
  Derivation d = de_rham(forms);
  int n = forms.lie.dim;
  Homomorphism h{polys.algebra(), forms.algebra(), {}};
  for (int a = 0; a < n; ++a) {
    GElement F = apply(d, A[a]);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (sgn(forms.lie.f[a][b][c]) != 0) F += (A[b] * A[c]).scaled(forms.lie.f[a][b][c] / 2);
    h.images.push_back(F.scaled(Rational(-1)));
  }
  return apply(h, P);
}

GElement random_element(const EquivModel& m, int max_degree, int smax, Rng& rng, int terms) {
  std::vector<GMono> pool;
  for (int n = 0; n <= max_degree; ++n)
    for (const auto& mono : enumerate_monomials(*m.algebra(), n, smax, false)) pool.push_back(mono);
  GElement x(m.algebra());
  if (pool.empty()) return x;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int k = 0; k < terms; ++k) x.add_to(pool[pick(rng)], random_rational(rng));
  return x;
}

RelationsReport derham_relations(const LieAlgebra& g, const Representation& rep, int degree, Rng& rng,
                                 int samples) {
  require(degree >= 0 && degree <= 8, ErrorKind::kInput, "relation checks support degree <= 8");
  RelationsReport r;
  r.group = g.name;
  r.degree = degree;

  EquivModel W = weil_model(g);
  Derivation dW = differential(W);
  r.weil_d2 = true;
  for (int n = 0; n <= degree; ++n)
    for (const auto& mono : enumerate_monomials(*W.algebra(), n, 0, false))
      r.weil_d2 = r.weil_d2 && apply(dW, apply(dW, GElement::mono(W.algebra(), mono))).is_zero();

  EquivModel F = forms_model(g, rep);
  Derivation dF = differential(F);
  r.forms_d2 = true;
  for (int n = 0; n <= std::min(degree, rep.dim); ++n)
    for (const auto& mono : enumerate_monomials(*F.algebra(), n, n + 2, false))
      r.forms_d2 = r.forms_d2 && apply(dF, apply(dF, GElement::mono(F.algebra(), mono))).is_zero();

  EquivModel M = weil_model(g, rep);
  Derivation dM = differential(M);
  r.model_d2 = true;
  for (int n = 0; n <= degree; ++n)
    for (const auto& mono : enumerate_monomials(*M.algebra(), n, 2, false))
      r.model_d2 = r.model_d2 && apply(dM, apply(dM, GElement::mono(M.algebra(), mono))).is_zero();

  EquivModel C = cartan_model(g, rep);
  Derivation dC = differential(C);
  r.cartan_relation = r.iota_anticommute = r.lie_d_commute = true;
  bool plus = true, minus = true;
  for (int k = 0; k < samples; ++k) {
    auto X = random_vector(g.dim, rng), Y = random_vector(g.dim, rng);
    auto Z = bracket(g, X, Y);
    for (const EquivModel* mod : {&F, &M}) {
      Derivation d = differential(*mod), iX = contraction(*mod, X), iY = contraction(*mod, Y);
      Derivation LX = lie_derivative_op(*mod, X), LY = lie_derivative_op(*mod, Y), LZ = lie_derivative_op(*mod, Z);
      GElement x = random_element(*mod, degree, 2, rng);
      r.cartan_relation = r.cartan_relation && apply_commutator(d, iX, x) == apply(LX, x);
      r.iota_anticommute = r.iota_anticommute && apply_commutator(iX, iY, x).is_zero();
      r.lie_d_commute = r.lie_d_commute && apply_commutator(LX, d, x).is_zero();
      GElement lhs = apply_commutator(LX, LY, x), rhs = apply(LZ, x);
      plus = plus && lhs == rhs;
      minus = minus && lhs == rhs.scaled(Rational(-1));
    }
    GElement c = random_element(C, degree, 2, rng);
    r.lie_d_commute = r.lie_d_commute && apply_commutator(lie_derivative_op(C, X), dC, c).is_zero();
  }
  r.bracket_sign = plus ? 1 : (minus ? -1 : 0);

  r.cartan_d2 = true;
  std::uniform_int_distribution<int> pick_n(0, std::min(degree, 6)), pick_s(0, 2);
  for (int k = 0; k < samples; ++k) {
    auto basis = invariant_basis(C, pick_n(rng), pick_s(rng));
    GElement x(C.algebra());
    for (const auto& b : basis) x += b.scaled(random_rational(rng));
    r.cartan_d2 = r.cartan_d2 && apply(dC, apply(dC, x)).is_zero();
  }
  return r;
}

}  // namespace ellforge
