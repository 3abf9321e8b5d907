// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Local model for circle actions on C^k: fixed loci of pairs h in U(1)^2,
// local sections (Cartan cocycles on the fixed locus tensored with a lattice
// function), module structure, transitions and the completion map. Also
// sectors of finite groups under conjugation and SL2(Z).

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "core/equivderham.hpp"
#include "core/series_json.hpp"
#include "core/sigma.hpp"

namespace ellforge {

// Rational angle pair; kept exact (not reduced mod 1) so that twists compose.
struct Anchor {
  Rational x, y;
  friend bool operator==(const Anchor&, const Anchor&) = default;
};
Anchor parse_anchor(const std::string& s);  // "1/2,0"
std::string to_string(const Anchor& h);
bool same_point(const Anchor& a, const Anchor& b);  // equal mod Z^2

struct CircleActionSpace {
  std::vector<int> weights;
};
CircleActionSpace make_space(std::vector<int> weights);

// Coordinates j with w_j x and w_j y both integral.
std::vector<int> fixed_locus(const CircleActionSpace& M, const Anchor& h);
// Max-norm radius of the neighbourhood of h on which fixed loci only shrink.
Rational small_open_radius(const CircleActionSpace& M, const Anchor& h);
bool in_small_open(const CircleActionSpace& M, const Anchor& h, const Anchor& h2);

// Lattice-function factors are series in (u, A, B), A and B standing for the
// lattice generators 2 pi i and -2 pi i tau.
QMulti lattice_unit(int D, int nq);

struct LocalSections {
  Anchor anchor;
  std::vector<int> fixed;          // coordinate indices
  std::vector<int> fixed_weights;
  EquivModel model;                // U(1) Cartan model of the fixed locus
  int max_degree = 0, max_sweight = 0;
  std::vector<std::vector<GElement>> cocycles;  // by degree, all sweights <= max_sweight
  std::vector<int> cohomology;
  std::string lattice_slot = "O(Lat)";
};
LocalSections local_sections(const CircleActionSpace& M, const Anchor& h, int max_degree, int max_sweight = 2);

struct LocalSection {
  Anchor anchor;
  EquivModel model;
  GElement cocycle;
  QMulti factor;
  int weight = 0;  // degree of the cocycle
};
// Validates d_C c = 0, invariance and homogeneity.
LocalSection make_section(const LocalSections& at, const GElement& cocycle, const QMulti& factor);

// A function on the curve near a point, as a power series in the local coordinate.
struct CenteredSeries {
  Anchor center;
  ZSeries f;
};
LocalSection module_action(const CenteredSeries& f, const LocalSection& s);

// Restriction to fixed(h2) with u -> u + (h - h2)_x A + (h - h2)_y B on the factor.
LocalSection transition(const CircleActionSpace& M, const Anchor& h2, const LocalSection& s);

struct LocalizationBlock {
  int n = 0, s = 0;
  int dim_source = 0, dim_target = 0, rank = 0;
};
struct LocalizationReport {
  std::vector<LocalizationBlock> blocks;
  bool bijective = false;
};
LocalizationReport localization_check(const CircleActionSpace& M, const Anchor& h, const Anchor& h2, int max_degree,
                                      int max_sweight = 2);

// At the trivial anchor: the cocycle restricted to the origin (a polynomial
// in u) times the Taylor expansion of the factor, as a z-series.
ZSeries completion_map(const LocalSection& s);
// The section 1 (x) s(u) at the trivial anchor of the given space.
LocalSection sigma_section(const CircleActionSpace& M, int nz, int nq);

// ---- finite groups ----

struct FiniteGroupTable {
  int order = 0;
  std::vector<std::vector<int>> mul;
  std::vector<std::string> names;
  int identity = 0;
  std::vector<int> inverse;
};
// Validates closure, associativity, identity and inverses (load errors).
FiniteGroupTable make_group_table(std::vector<std::vector<int>> mul, std::vector<std::string> names = {});
FiniteGroupTable group_table_from_json(const Json& j);  // {"order": n, "mul": [[...]]}
FiniteGroupTable cyclic_group(int n);
FiniteGroupTable symmetric_group(int n);  // n <= 4
FiniteGroupTable relabeled(const FiniteGroupTable& G, const std::vector<int>& perm);

using IntMatrix2 = std::array<long, 4>;  // row-major

struct SectorClass {
  std::pair<int, int> representative;
  int size = 0;  // commuting pairs in the conjugacy class
  int orbit = 0;
  int stabilizer_index = 0;
  std::vector<IntMatrix2> stabilizer_generators;
};

struct SectorReport {
  int order = 0;
  int commuting_pairs = 0;
  int conjugacy_classes = 0;  // of elements
  bool burnside = false;      // pairs = |G| * classes
  int pair_classes = 0;
  int orbits = 0;
  bool orbit_stabilizer = false;
  std::vector<SectorClass> classes;
};
// SL2(Z) acts by precomposition: S (h1, h2) = (h2, h1^-1), T (h1, h2) = (h1, h1 h2).
SectorReport finite_sectors(const FiniteGroupTable& G);

}  // namespace ellforge
