// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Polynomial differential forms on R^d, the Weil algebra, Weil and Cartan
// models for linear actions of small matrix groups, torus reduction and
// Chern-Weil forms.
//
// Conventions: [T_b, T_c] = f^a_{bc} T_a; the fundamental vector field of X
// is V_X = -rho(X) x; L_X = [d, iota_X].

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/graded.hpp"
#include "core/numeric.hpp"

namespace ellforge {

using RMatrix = std::vector<std::vector<Rational>>;
using GMatrix = std::vector<std::vector<GaussianRational>>;

struct LieAlgebra {
  std::string name;
  int dim = 0;
  std::vector<std::vector<std::vector<Rational>>> f;  // f[a][b][c]
  std::vector<GMatrix> basis;                          // defining matrices, if any
};

// Validates antisymmetry in (b, c) and the Jacobi identity.
LieAlgebra make_lie_algebra(std::string name, int dim, std::vector<std::vector<std::vector<Rational>>> f,
                            std::vector<GMatrix> basis = {});
// Structure constants computed exactly from commutators of the matrices.
LieAlgebra lie_from_matrices(std::string name, std::vector<GMatrix> basis);

LieAlgebra lie_u1();
LieAlgebra lie_su2();  // T_a = -(i/2) sigma_a, f = epsilon
LieAlgebra lie_u2();   // i E11, i E22, E12 - E21, i (E12 + E21)
LieAlgebra lie_by_name(const std::string& name);

std::vector<Rational> bracket(const LieAlgebra& g, const std::vector<Rational>& X, const std::vector<Rational>& Y);

struct Representation {
  int dim = 0;              // real dimension of M
  std::vector<RMatrix> rho;  // rho[a], one per basis element
};

// C^n with coordinates (x1, y1, x2, y2, ...), z_j = x_j + i y_j.
Representation realify(const LieAlgebra& g);
// U(1) acting on C^k with the given weights.
Representation u1_weights(const std::vector<int>& weights);

enum class ModelTag { kForms, kWeil, kCartan };
std::string model_tag_name(ModelTag t);

struct EquivModel {
  ModelTag tag = ModelTag::kForms;
  LieAlgebra lie;
  Representation rep;
  std::shared_ptr<GAlgebra> alg;
  std::vector<int> x, dx, e, eps, u;  // generator indices
  bool literal_weil_sign = false;

  const GAlgebra* algebra() const { return alg.get(); }
  GElement gen(int i, const Rational& c = 1) const { return GElement::gen(alg.get(), i, c); }
  GElement scalar(const Rational& c) const { return GElement::scalar(alg.get(), c); }
};

// Omega(R^d) with the action of g through rep (rep.dim = d).
EquivModel forms_model(const LieAlgebra& g, const Representation& rep);
// Omega(M) (x) W(g). literal_weil_sign uses d e^a = -f^a_{bc} e^b eps^c as
// printed, which fails d^2 = 0 for nonabelian g; the default is +f^a_{bc} e^b eps^c.
EquivModel weil_model(const LieAlgebra& g, const Representation& rep = {}, bool literal_weil_sign = false);
// Omega(M) (x) Poly(g) with generators u^a of degree 2.
EquivModel cartan_model(const LieAlgebra& g, const Representation& rep = {});

// d (forms), d + d_W (Weil), d_C = d - u^a iota_{V_a} (Cartan).
Derivation differential(const EquivModel& m);
// iota_{V_X} on forms, plus iota_X eps^a = X^a in the Weil model.
Derivation contraction(const EquivModel& m, const std::vector<Rational>& X);
// [d, iota_X] in the forms and Weil models; in the Cartan model the Lie
// derivative along V_X together with L_X u^a = f^a_{bc} u^b X^c.
Derivation lie_derivative_op(const EquivModel& m, const std::vector<Rational>& X);

GElement weil_d(const EquivModel& m, const GElement& x);
GElement weil_contraction(const EquivModel& m, const std::vector<Rational>& X, const GElement& x);
GElement lie_derivative(const EquivModel& m, const std::vector<Rational>& X, const GElement& x);
GElement cartan_d(const EquivModel& m, const GElement& x);

std::vector<Rational> basis_vector(const LieAlgebra& g, int a);

// Kernel of every iota_{T_a} and L_{T_a} in degree n (sweight <= smax).
std::vector<GElement> basic_subspace(const EquivModel& m, int n, int smax = 0);
// Kernel of every L_{T_a} in block (n, s).
std::vector<GElement> invariant_basis(const EquivModel& m, int n, int s);
// Invariant cocycles in block (n, s), and d of the invariants of block (n - 1, s).
std::vector<GElement> invariant_cocycles(const EquivModel& m, int n, int s);
std::vector<GElement> invariant_coboundaries(const EquivModel& m, int n, int s);

// dim H^n of the invariant complex summed over sweight blocks s <= smax.
// extra_invariance adds further operators whose kernel is intersected.
std::vector<int> invariant_cohomology(const EquivModel& m, int max_degree, int smax,
                                      const std::vector<std::function<GElement(const GElement&)>>& extra = {});

struct CohomologyReport {
  std::vector<int> weights;
  int max_degree = 0;
  int max_sweight = 0;
  std::vector<int> dims;
  bool zero_weight = false;  // positive-dimensional fixed locus
  std::vector<int> point_dims;
  bool matches_point = false;
  bool stable = false;  // same dims with sweight bound + 2
};
CohomologyReport cartan_cohomology(const std::vector<int>& weights, int max_degree, int max_sweight = 4);

struct TorusBlock {
  int n = 0, s = 0;
  int dim_g = 0;   // U(2)-invariant cochains
  int dim_nt = 0;  // N(T)-invariant cochains
  bool injective = false;
};

struct TorusReductionReport {
  int max_degree = 0, max_sweight = 0;
  std::vector<int> cohomology_g, cohomology_nt;
  std::vector<TorusBlock> blocks;
  bool cohomology_agree = false;
  bool s0_agree = false;  // invariant polynomials on the Lie algebras
  bool injective = false;
  bool passed = false;
};

// Restriction from the U(2) Cartan model of C^2 to the model of its diagonal
// torus, followed by Weyl invariants.
TorusReductionReport torus_reduction_check(int max_degree, int max_sweight = 2);

struct TorusRestriction {
  EquivModel g, t;
  Homomorphism restrict;
  Homomorphism weyl;  // swap of the two coordinates and of u1, u2 on the torus side
};
TorusRestriction u2_torus_restriction();

// Polynomials on g (Cartan model of a point).
EquivModel polynomial_model(const LieAlgebra& g);
// tr(X^k) for X = u^a T_a, divided by i when k is odd.
GElement trace_polynomial(const EquivModel& polys, int k);
bool is_invariant(const EquivModel& polys, const GElement& P);

// P(-F) with F^a = dA^a + 1/2 f^a_{bc} A^b A^c; A holds one 1-form per basis element.
GElement chern_weil(const EquivModel& forms, const EquivModel& polys, const GElement& P,
                    const std::vector<GElement>& A);

struct RelationsReport {
  std::string group;
  int degree = 0;
  bool weil_d2 = false;          // d_W^2 on every monomial of W(g)
  bool forms_d2 = false;         // d^2 on every monomial of Omega(R^d), poly degree <= 2
  bool model_d2 = false;         // total differential of the Weil model, random elements
  bool cartan_relation = false;  // d iota + iota d = L
  bool iota_anticommute = false;
  bool lie_d_commute = false;
  bool cartan_d2 = false;        // on random invariant Cartan elements
  int bracket_sign = 0;          // [L_X, L_Y] = sign L_[X,Y], 0 if neither
  bool passed() const {
    return weil_d2 && forms_d2 && model_d2 && cartan_relation && iota_anticommute && lie_d_commute && cartan_d2 &&
           bracket_sign != 0;
  }
};
RelationsReport derham_relations(const LieAlgebra& g, const Representation& rep, int degree, Rng& rng,
                                 int samples = 10);

GElement random_element(const EquivModel& m, int max_degree, int smax, Rng& rng, int terms = 6);

}  // namespace ellforge
