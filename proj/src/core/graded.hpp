// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Free graded-commutative algebras over Q on up to 16 even and 32 odd
// generators, with derivations and homomorphisms given on generators.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "core/linalg.hpp"

namespace ellforge {

inline constexpr int kMaxEvenGens = 16;
inline constexpr int kMaxOddGens = 32;

struct GMono {
  std::array<std::uint8_t, kMaxEvenGens> even{};
  std::uint32_t odd = 0;
  auto operator<=>(const GMono&) const = default;
};

struct Generator {
  std::string name;
  int degree = 0;
  int sweight = 0;  // auxiliary grading preserved by the operators in use
};

class GAlgebra {
 public:
  GAlgebra() = default;
  explicit GAlgebra(std::vector<Generator> gens);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int i) const { return gens_[i]; }
  bool odd(int i) const { return gens_[i].degree % 2 != 0; }
  int slot(int i) const { return slot_[i]; }  // even slot or odd bit
  int index(const std::string& name) const;
  const std::vector<Generator>& gens() const { return gens_; }

  GMono unit(int i, int e = 1) const;
  int degree(const GMono& m) const;
  int sweight(const GMono& m) const;
  std::string format(const GMono& m) const;

 private:
  std::vector<Generator> gens_;
  std::vector<int> slot_;
  std::vector<int> even_gen_;  // slot -> generator
  std::vector<int> odd_gen_;
};

class GElement {
 public:
  GElement() = default;
  explicit GElement(const GAlgebra* alg) : alg_(alg) {}
  static GElement scalar(const GAlgebra* alg, const Rational& c);
  static GElement gen(const GAlgebra* alg, int i, const Rational& c = 1);
  static GElement mono(const GAlgebra* alg, const GMono& m, const Rational& c = 1);

  const GAlgebra* algebra() const { return alg_; }
  const std::map<GMono, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const GMono& m) const;
  void add_to(const GMono& m, const Rational& c);

  GElement scaled(const Rational& c) const;
  // Homogeneous component of the given degree.
  GElement component(int degree) const;
  std::string str() const;

  GElement& operator+=(const GElement& o);
  GElement& operator-=(const GElement& o);
  friend GElement operator+(GElement a, const GElement& b) { return a += b; }
  friend GElement operator-(GElement a, const GElement& b) { return a -= b; }
  friend GElement operator*(const GElement& a, const GElement& b);
  friend bool operator==(const GElement& a, const GElement& b) { return a.terms_ == b.terms_; }

 private:
  const GAlgebra* alg_ = nullptr;
  std::map<GMono, Rational> terms_;
};

// Product of monomials with its Koszul sign; sign 0 when odd factors repeat.
int gmono_mul(const GMono& a, const GMono& b, GMono& out);

// Graded derivation of the given parity determined by generator images.
struct Derivation {
  const GAlgebra* alg = nullptr;
  int parity = 0;
  std::vector<GElement> images;
};

Derivation zero_derivation(const GAlgebra* alg, int parity);
GElement apply(const Derivation& D, const GElement& x);
// [A, B] = AB - (-1)^{|A||B|} BA, again a derivation.
Derivation commutator(const Derivation& A, const Derivation& B);
// Applies AB - (-1)^{|A||B|} BA directly to x.
GElement apply_commutator(const Derivation& A, const Derivation& B, const GElement& x);

// Algebra homomorphism (degree-preserving) given by generator images in target.
struct Homomorphism {
  const GAlgebra* source = nullptr;
  const GAlgebra* target = nullptr;
  std::vector<GElement> images;
};
GElement apply(const Homomorphism& h, const GElement& x);

// Monomials of exact degree n with sweight <= smax (or == s when exact_s).
std::vector<GMono> enumerate_monomials(const GAlgebra& alg, int n, int s, bool exact_s = true);

// Matrix of a linear map from span(src) into the coordinates of tgt, one
// sparse column per source monomial. Terms outside tgt are an internal error.
std::vector<SparseVec> operator_columns(const std::vector<GMono>& src, const std::vector<GMono>& tgt,
                                        const std::function<GElement(const GElement&)>& op, const GAlgebra* alg);

// Converts between coordinates and elements.
GElement from_coords(const GAlgebra* alg, const std::vector<GMono>& basis, const SparseVec& v);
SparseVec to_coords(const GElement& x, const std::vector<GMono>& basis);

}  // namespace ellforge
