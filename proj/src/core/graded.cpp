// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/graded.hpp"

#include <bit>
#include <functional>

namespace ellforge {

GAlgebra::GAlgebra(std::vector<Generator> gens) : gens_(std::move(gens)) {
  for (const auto& g : gens_) {
    require(g.degree >= 0 && g.sweight >= 0, ErrorKind::kInput, "negative generator grading");
    require(g.degree > 0 || g.sweight > 0, ErrorKind::kInput,
            "generator " + g.name + " has no positive grading; enumeration would not terminate");
    if (g.degree % 2) {
      slot_.push_back(static_cast<int>(odd_gen_.size()));
      odd_gen_.push_back(static_cast<int>(slot_.size()) - 1);
    } else {
      slot_.push_back(static_cast<int>(even_gen_.size()));
      even_gen_.push_back(static_cast<int>(slot_.size()) - 1);
    }
  }
  require(even_gen_.size() <= kMaxEvenGens && odd_gen_.size() <= kMaxOddGens, ErrorKind::kInput,
          "too many generators");
}

int GAlgebra::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[i].name == name) return i;
  fail(ErrorKind::kInput, "unknown generator " + name);
}

GMono GAlgebra::unit(int i, int e) const {
  GMono m;
  if (odd(i)) {
    if (e == 1) m.odd = 1u << slot_[i];
    require(e <= 1, ErrorKind::kInput, "odd generator squared");
  } else {
    m.even[slot_[i]] = static_cast<std::uint8_t>(e);
  }
  return m;
}

int GAlgebra::degree(const GMono& m) const {
  int d = 0;
  for (std::size_t s = 0; s < even_gen_.size(); ++s) d += m.even[s] * gens_[even_gen_[s]].degree;
  for (std::size_t s = 0; s < odd_gen_.size(); ++s)
    if (m.odd >> s & 1u) d += gens_[odd_gen_[s]].degree;
  return d;
}

int GAlgebra::sweight(const GMono& m) const {
  int d = 0;
  for (std::size_t s = 0; s < even_gen_.size(); ++s) d += m.even[s] * gens_[even_gen_[s]].sweight;
  for (std::size_t s = 0; s < odd_gen_.size(); ++s)
    if (m.odd >> s & 1u) d += gens_[odd_gen_[s]].sweight;
  return d;
}

std::string GAlgebra::format(const GMono& m) const {
  std::string s;
  for (std::size_t k = 0; k < even_gen_.size(); ++k)
    if (m.even[k]) {
      if (!s.empty()) s += "*";
      s += gens_[even_gen_[k]].name;
      if (m.even[k] > 1) s += "^" + std::to_string(m.even[k]);
    }
  for (std::size_t k = 0; k < odd_gen_.size(); ++k)
    if (m.odd >> k & 1u) {
      if (!s.empty()) s += "*";
      s += gens_[odd_gen_[k]].name;
    }
  return s.empty() ? "1" : s;
}

int gmono_mul(const GMono& a, const GMono& b, GMono& out) {
  if (a.odd & b.odd) return 0;
  int swaps = 0;
  for (std::uint32_t rest = b.odd; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(a.odd >> j >> 1);
  }
  for (int s = 0; s < kMaxEvenGens; ++s) {
    int e = a.even[s] + b.even[s];
    require(e < 256, ErrorKind::kInput, "exponent overflow");
    out.even[s] = static_cast<std::uint8_t>(e);
  }
  out.odd = a.odd | b.odd;
  return swaps % 2 ? -1 : 1;
}

GElement GElement::scalar(const GAlgebra* alg, const Rational& c) { return mono(alg, GMono{}, c); }

GElement GElement::gen(const GAlgebra* alg, int i, const Rational& c) { return mono(alg, alg->unit(i), c); }

GElement GElement::mono(const GAlgebra* alg, const GMono& m, const Rational& c) {
  GElement x(alg);
  x.add_to(m, c);
  return x;
}

Rational GElement::coeff(const GMono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GElement::add_to(const GMono& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

GElement GElement::scaled(const Rational& c) const {
  GElement r(alg_);
  if (sgn(c) == 0) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, x * c);
  return r;
}

GElement GElement::component(int degree) const {
  GElement r(alg_);
  for (const auto& [m, x] : terms_)
    if (alg_->degree(m) == degree) r.terms_.emplace_hint(r.terms_.end(), m, x);
  return r;
}

std::string GElement::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, x] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(x) + ")*" + alg_->format(m);
  }
  return s;
}

GElement& GElement::operator+=(const GElement& o) {
  if (!alg_) alg_ = o.alg_;
  for (const auto& [m, x] : o.terms_) add_to(m, x);
  return *this;
}

GElement& GElement::operator-=(const GElement& o) {
  if (!alg_) alg_ = o.alg_;
  for (const auto& [m, x] : o.terms_) add_to(m, -x);
  return *this;
}

GElement operator*(const GElement& a, const GElement& b) {
  GElement r(a.alg_ ? a.alg_ : b.alg_);
  for (const auto& [ma, xa] : a.terms_)
    for (const auto& [mb, xb] : b.terms_) {
      GMono m;
      int s = gmono_mul(ma, mb, m);
      if (s == 0) continue;
      Rational c = xa * xb;
      r.add_to(m, s > 0 ? c : Rational(-c));
    }
  return r;
}

Derivation zero_derivation(const GAlgebra* alg, int parity) {
  return Derivation{alg, parity, std::vector<GElement>(alg->size(), GElement(alg))};
}

namespace {

GElement apply_mono(const Derivation& D, const GMono& m) {
  const GAlgebra* alg = D.alg;
  GElement out(alg);
  GMono odd_part;
  odd_part.odd = m.odd;
  GMono even_part = m;
  even_part.odd = 0;
  // even generators: E -> sum_g k (E / g) D(g), then times the odd part
  for (int i = 0; i < alg->size(); ++i) {
    if (alg->odd(i)) continue;
    int k = m.even[alg->slot(i)];
    if (k == 0 || D.images[i].is_zero()) continue;
    GMono rest = even_part;
    rest.even[alg->slot(i)] = static_cast<std::uint8_t>(k - 1);
    out += GElement::mono(alg, rest, k) * D.images[i] * GElement::mono(alg, odd_part);
  }
  // odd generators in increasing bit order
  int seen = 0;
  for (int i = 0; i < alg->size(); ++i) {
    if (!alg->odd(i)) continue;
    std::uint32_t bit = 1u << alg->slot(i);
    if (!(m.odd & bit)) continue;
    if (!D.images[i].is_zero()) {
      GMono before = even_part, after;
      before.odd = m.odd & (bit - 1);
      after.odd = m.odd & ~((bit << 1) - 1);
      GElement t = GElement::mono(alg, before) * D.images[i] * GElement::mono(alg, after);
      out += (D.parity && seen % 2) ? t.scaled(Rational(-1)) : t;
    }
    ++seen;
  }
  return out;
}

}  // namespace

GElement apply(const Derivation& D, const GElement& x) {
  GElement out(D.alg);
  for (const auto& [m, c] : x.terms()) out += apply_mono(D, m).scaled(c);
  return out;
}

GElement apply_commutator(const Derivation& A, const Derivation& B, const GElement& x) {
  GElement ab = apply(A, apply(B, x)), ba = apply(B, apply(A, x));
  return (A.parity && B.parity) ? ab + ba : ab - ba;
}

Derivation commutator(const Derivation& A, const Derivation& B) {
  Derivation C{A.alg, (A.parity + B.parity) % 2, {}};
  for (int i = 0; i < A.alg->size(); ++i) C.images.push_back(apply_commutator(A, B, GElement::gen(A.alg, i)));
  return C;
}

GElement apply(const Homomorphism& h, const GElement& x) {
  GElement out(h.target);
  const GAlgebra* src = h.source;
  for (const auto& [m, c] : x.terms()) {
    GElement t = GElement::scalar(h.target, c);
    for (int i = 0; i < src->size(); ++i) {
      if (src->odd(i)) {
        if (m.odd >> src->slot(i) & 1u) t = t * h.images[i];
      } else {
        for (int k = 0; k < m.even[src->slot(i)]; ++k) t = t * h.images[i];
      }
    }
    out += t;
  }
  return out;
}

std::vector<GMono> enumerate_monomials(const GAlgebra& alg, int n, int s, bool exact_s) {
  std::vector<GMono> out;
  GMono cur;
  std::function<void(int, int, int)> rec = [&](int i, int dleft, int sleft) {
    if (i == alg.size()) {
      if (dleft == 0 && (!exact_s || sleft == 0)) out.push_back(cur);
      return;
    }
    const auto& g = alg.gen(i);
    int cap = alg.odd(i) ? 1 : 255;
    for (int e = 0; e <= cap; ++e) {
      int dd = e * g.degree, ss = e * g.sweight;
      if (dd > dleft || ss > sleft) break;
      if (alg.odd(i)) {
        cur.odd = e ? (cur.odd | (1u << alg.slot(i))) : (cur.odd & ~(1u << alg.slot(i)));
      } else {
        cur.even[alg.slot(i)] = static_cast<std::uint8_t>(e);
      }
      rec(i + 1, dleft - dd, sleft - ss);
    }
    if (alg.odd(i)) {
      cur.odd &= ~(1u << alg.slot(i));
    } else {
      cur.even[alg.slot(i)] = 0;
    }
  };
  rec(0, n, s);
  return out;
}

std::vector<SparseVec> operator_columns(const std::vector<GMono>& src, const std::vector<GMono>& tgt,
                                        const std::function<GElement(const GElement&)>& op, const GAlgebra* alg) {
  std::map<GMono, int> index;
  for (std::size_t i = 0; i < tgt.size(); ++i) index[tgt[i]] = static_cast<int>(i);
  std::vector<SparseVec> cols;
  cols.reserve(src.size());
  for (const auto& m : src) {
    GElement y = op(GElement::mono(alg, m));
    std::map<int, Rational> v;
    for (const auto& [mm, c] : y.terms()) {
      auto it = index.find(mm);
      require(it != index.end(), ErrorKind::kInternal, "operator leaves its target block: " + alg->format(mm));
      v[it->second] = c;
    }
    cols.emplace_back(v.begin(), v.end());
  }
  return cols;
}

GElement from_coords(const GAlgebra* alg, const std::vector<GMono>& basis, const SparseVec& v) {
  GElement x(alg);
  for (const auto& [i, c] : v) x.add_to(basis[i], c);
  return x;
}

SparseVec to_coords(const GElement& x, const std::vector<GMono>& basis) {
  std::map<GMono, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
  std::map<int, Rational> v;
  for (const auto& [m, c] : x.terms()) {
    auto it = index.find(m);
    require(it != index.end(), ErrorKind::kInput, "element has terms outside the basis");
    v[it->second] = c;
  }
  return SparseVec(v.begin(), v.end());
}

}  // namespace ellforge
