// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Truncated formal power and Laurent series with exact coefficients.
//
// Series<R> is univariate: a sparse sorted list of (exponent, coefficient)
// pairs, a declared floor min_exponent() and a truncation order trunc().
// Coefficients above trunc() are unknown, not zero. kExactOrder marks a
// polynomial that is known exactly.
//
// MultiSeries<R> carries a total-degree truncation over up to eight
// variables with non-negative exponents.

#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/error.hpp"
#include "core/rational.hpp"

namespace ellforge {

inline constexpr int kExactOrder = INT_MAX;
inline constexpr int kLaurentFloor = -24;

template <class R>
class Series;
template <class R>
bool is_zero(const Series<R>& s);
template <class R>
bool is_one(const Series<R>& s);
template <class R>
Series<R> scale(const Series<R>& x, const Rational& s);

// Ring helpers for the coefficient types. Series<R> overloads follow the class.
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const GaussianRational& x) { return x.is_zero(); }
inline bool is_one(const Rational& x) { return x == 1; }
inline bool is_one(const GaussianRational& x) { return x.re == 1 && sgn(x.im) == 0; }
inline Rational ring_inverse(const Rational& x) {
  require(sgn(x) != 0, ErrorKind::kDomain, "division by zero");
  return Rational(1) / x;
}
inline GaussianRational ring_inverse(const GaussianRational& x) { return x.inverse(); }
inline Rational scale(const Rational& x, const Rational& s) { return x * s; }
inline GaussianRational scale(const GaussianRational& x, const Rational& s) { return x * s; }

template <class R>
struct RingTraits {
  static R zero() { return R(0); }
  static R one() { return R(1); }
};

// Saturating order arithmetic so that kExactOrder survives shifts.
inline int order_add(int a, int b) {
  if (a == kExactOrder || b == kExactOrder) return kExactOrder;
  return a + b;
}

template <class R>
class Series {
 public:
  using Coeff = R;
  using Term = std::pair<int, R>;

  // Exact zero with no variable bound yet.
  Series() = default;
  Series(std::string var, int trunc, int min_exponent = 0)
      : var_(std::move(var)), min_(min_exponent), trunc_(trunc) {
    check_floor(min_);
    require(trunc_ >= min_, ErrorKind::kInput, "truncation below minimum exponent");
  }

  static Series constant(const R& c, std::string var = "", int trunc = kExactOrder) {
    Series s(std::move(var), trunc, 0);
    s.set(0, c);
    return s;
  }
  static Series monomial(std::string var, int e, const R& c, int trunc = kExactOrder) {
    Series s(std::move(var), trunc, std::min(e, 0));
    if (e <= trunc) s.set(e, c);
    return s;
  }
  static Series variable(std::string var, int trunc = kExactOrder) {
    return monomial(std::move(var), 1, RingTraits<R>::one(), trunc);
  }

  const std::string& var() const { return var_; }
  int min_exponent() const { return min_; }
  int trunc() const { return trunc_; }
  bool exact() const { return trunc_ == kExactOrder; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Lowest exponent with a nonzero coefficient; kExactOrder for zero.
  int valuation() const { return terms_.empty() ? kExactOrder : terms_.front().first; }
  int degree() const { return terms_.empty() ? INT_MIN : terms_.back().first; }

  R coeff(int e) const {
    auto it = find(e);
    if (it != terms_.end() && it->first == e) return it->second;
    return RingTraits<R>::zero();
  }

  void set(int e, R c) {
    require(e >= min_ && e <= trunc_, ErrorKind::kInput,
            "exponent " + std::to_string(e) + " outside [min, trunc]");
    auto it = find(e);
    bool present = it != terms_.end() && it->first == e;
    if (ellforge::is_zero(c)) {
      if (present) terms_.erase(it);
    } else if (present) {
      it->second = std::move(c);
    } else {
      terms_.insert(it, Term(e, std::move(c)));
    }
  }

  void add_to(int e, const R& c) {
    if (e > trunc_) return;
    set(e, coeff(e) + c);
  }

  Series truncated(int n) const {
    Series r = *this;
    if (n >= trunc_) return r;
    require(n >= min_, ErrorKind::kInput, "truncation below minimum exponent");
    r.trunc_ = n;
    while (!r.terms_.empty() && r.terms_.back().first > n) r.terms_.pop_back();
    return r;
  }

  Series with_var(std::string v) const {
    Series r = *this;
    r.var_ = std::move(v);
    return r;
  }

  Series with_min(int m) const {
    Series r = *this;
    check_floor(m);
    require(m <= valuation(), ErrorKind::kInput, "floor above lowest stored exponent");
    r.min_ = m;
    return r;
  }

  template <class S>
  Series scaled(const S& s) const {
    Series r(var_, trunc_, min_);
    for (const auto& [e, c] : terms_) {
      R v = scale(c, s);
      if (!ellforge::is_zero(v)) r.terms_.emplace_back(e, std::move(v));
    }
    return r;
  }

  Series mul_coeff(const R& s) const {
    Series r(var_, trunc_, min_);
    for (const auto& [e, c] : terms_) {
      R v = c * s;
      if (!ellforge::is_zero(v)) r.terms_.emplace_back(e, std::move(v));
    }
    return r;
  }

  // Multiply by var^k, shifting floor and truncation.
  Series shifted(int k) const {
    Series r(var_, order_add(trunc_, k), min_ + k);
    for (const auto& [e, c] : terms_) r.terms_.emplace_back(e + k, c);
    return r;
  }

  Series derivative() const {
    int m = min_ > 0 ? min_ - 1 : (min_ == 0 ? 0 : min_ - 1);
    Series r(var_, trunc_ == kExactOrder ? kExactOrder : trunc_ - 1, m);
    for (const auto& [e, c] : terms_) {
      if (e == 0) continue;
      r.terms_.emplace_back(e - 1, scale(c, Rational(e)));
    }
    return r;
  }

  Series operator-() const { return scaled(Rational(-1)); }

  Series& operator+=(const Series& o) { return *this = add(*this, o, 1); }
  Series& operator-=(const Series& o) { return *this = add(*this, o, -1); }
  Series& operator*=(const Series& o) { return *this = mul(*this, o); }

  friend Series operator+(const Series& a, const Series& b) { return add(a, b, 1); }
  friend Series operator-(const Series& a, const Series& b) { return add(a, b, -1); }
  friend Series operator*(const Series& a, const Series& b) { return mul(a, b); }
  friend Series operator+(const Series& a, const R& c) { return add(a, constant(c, a.var_), 1); }
  friend Series operator*(const Series& a, const R& c) { return a.mul_coeff(c); }

  friend bool operator==(const Series& a, const Series& b) {
    if (a.trunc_ != b.trunc_ || a.terms_.size() != b.terms_.size()) return false;
    if (!a.var_.empty() && !b.var_.empty() && a.var_ != b.var_) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].first != b.terms_[i].first) return false;
      if (!(a.terms_[i].second == b.terms_[i].second)) return false;
    }
    return true;
  }
  friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

  static std::string merge_var(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty() || a == b) return a;
    fail(ErrorKind::kInput, "variable mismatch: '" + a + "' vs '" + b + "'");
  }

  // Truncation of a product; power series reduce to min(Na, Nb).
  static int product_trunc(const Series& a, const Series& b) {
    int ta = order_add(a.trunc_, std::min(0, b.min_));
    int tb = order_add(b.trunc_, std::min(0, a.min_));
    return std::min(ta, tb);
  }

 private:
  typename std::vector<Term>::iterator find(int e) {
    return std::lower_bound(terms_.begin(), terms_.end(), e,
                            [](const Term& t, int x) { return t.first < x; });
  }
  typename std::vector<Term>::const_iterator find(int e) const {
    return std::lower_bound(terms_.begin(), terms_.end(), e,
                            [](const Term& t, int x) { return t.first < x; });
  }

  static void check_floor(int m) {
    require(m >= kLaurentFloor, ErrorKind::kDomain,
            "Laurent floor " + std::to_string(m) + " below " + std::to_string(kLaurentFloor));
  }

  static Series add(const Series& a, const Series& b, int sign) {
    Series r(merge_var(a.var_, b.var_), std::min(a.trunc_, b.trunc_), std::min(a.min_, b.min_));
    auto i = a.terms_.begin(), j = b.terms_.begin();
    auto push = [&](int e, R c) {
      if (e <= r.trunc_ && !ellforge::is_zero(c)) r.terms_.emplace_back(e, std::move(c));
    };
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        push(i->first, i->second);
        ++i;
      } else if (i == a.terms_.end() || j->first < i->first) {
        push(j->first, sign > 0 ? j->second : scale(j->second, Rational(-1)));
        ++j;
      } else {
        if (sign > 0) {
          push(i->first, R(i->second + j->second));
        } else {
          push(i->first, R(i->second - j->second));
        }
        ++i;
        ++j;
      }
    }
    return r;
  }

  static Series mul(const Series& a, const Series& b) {
    std::string v = merge_var(a.var_, b.var_);
    int t = product_trunc(a, b);
    int lo = a.min_ + b.min_;
    Series r(v, std::max(t, lo), lo);
    r.trunc_ = t;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    int hi = std::min<long long>(t, (long long)a.degree() + b.degree());
    int start = a.valuation() + b.valuation();
    if (hi < start) return r;
    std::vector<R> acc(hi - start + 1, RingTraits<R>::zero());
    std::vector<bool> touched(acc.size(), false);
    for (const auto& [ea, ca] : a.terms_) {
      if (ea + b.terms_.front().first > hi) break;
      for (const auto& [eb, cb] : b.terms_) {
        int e = ea + eb;
        if (e > hi) break;
        if (touched[e - start]) {
          acc[e - start] += ca * cb;
        } else {
          acc[e - start] = ca * cb;
          touched[e - start] = true;
        }
      }
    }
    for (std::size_t k = 0; k < acc.size(); ++k)
      if (touched[k] && !ellforge::is_zero(acc[k]))
        r.terms_.emplace_back(start + static_cast<int>(k), std::move(acc[k]));
    return r;
  }

  std::string var_;
  int min_ = 0;
  int trunc_ = kExactOrder;
  std::vector<Term> terms_;
};

template <class R>
bool is_zero(const Series<R>& s) {
  return s.is_zero();
}
template <class R>
bool is_one(const Series<R>& s) {
  return s.terms().size() == 1 && s.terms()[0].first == 0 && is_one(s.terms()[0].second);
}
template <class R>
Series<R> scale(const Series<R>& x, const Rational& s) {
  return x.scaled(s);
}
template <class R>
struct RingTraits<Series<R>> {
  static Series<R> zero() { return Series<R>(); }
  static Series<R> one() { return Series<R>::constant(RingTraits<R>::one()); }
};

template <class R>
Series<R> inverse(const Series<R>& a);

template <class R>
Series<R> ring_inverse(const Series<R>& x) {
  return inverse(x);
}

namespace detail {
template <class R>
std::vector<R> dense(const Series<R>& a, int n) {
  std::vector<R> d(n + 1, RingTraits<R>::zero());
  for (const auto& [e, c] : a.terms()) {
    if (e > n) break;
    if (e >= 0) d[e] = c;
  }
  return d;
}
template <class R>
Series<R> from_dense(const std::string& var, int trunc, std::vector<R>& d) {
  Series<R> r(var, trunc, 0);
  for (int e = 0; e < static_cast<int>(d.size()); ++e)
    if (!is_zero(d[e])) r.set(e, std::move(d[e]));
  return r;
}
}  // namespace detail

template <class R>
Series<R> exp(const Series<R>& a) {
  require(a.min_exponent() >= 0 || a.valuation() >= 0, ErrorKind::kDomain,
          "exp of a Laurent series");
  require(is_zero(a.coeff(0)), ErrorKind::kDomain,
          "exp needs zero constant term (no transcendental constants in exact mode)");
  require(!a.exact() || a.is_zero(), ErrorKind::kDomain, "exp of an exact series needs a truncation");
  if (a.exact()) return Series<R>::constant(RingTraits<R>::one(), a.var());
  int n = a.trunc();
  auto ad = detail::dense(a, n);
  std::vector<R> e(n + 1, RingTraits<R>::zero());
  e[0] = RingTraits<R>::one();
  for (int k = 1; k <= n; ++k) {
    R acc = RingTraits<R>::zero();
    for (int j = 1; j <= k; ++j) {
      if (is_zero(ad[j]) || is_zero(e[k - j])) continue;
      acc += scale(ad[j] * e[k - j], Rational(j));
    }
    e[k] = scale(acc, Rational(1, k));
  }
  return detail::from_dense(a.var(), n, e);
}

template <class R>
Series<R> log(const Series<R>& a) {
  require(a.valuation() >= 0, ErrorKind::kDomain, "log of a Laurent series");
  require(is_one(a.coeff(0)), ErrorKind::kDomain,
          "log needs constant term 1 (no transcendental constants in exact mode)");
  require(!a.exact() || a.terms().size() == 1, ErrorKind::kDomain,
          "log of an exact series needs a truncation");
  if (a.exact()) return Series<R>(a.var(), kExactOrder, 0);
  int n = a.trunc();
  auto ad = detail::dense(a, n);
  std::vector<R> l(n + 1, RingTraits<R>::zero());
  for (int k = 1; k <= n; ++k) {
    R acc = scale(ad[k], Rational(k));
    for (int j = 1; j < k; ++j) {
      if (is_zero(l[j]) || is_zero(ad[k - j])) continue;
      acc -= scale(l[j] * ad[k - j], Rational(j));
    }
    l[k] = scale(acc, Rational(1, k));
  }
  return detail::from_dense(a.var(), n, l);
}

// Multiplicative inverse; a = z^v (c + ...) with c invertible.
template <class R>
Series<R> inverse(const Series<R>& a) {
  require(!a.is_zero(), ErrorKind::kDomain, "inverse of zero series");
  int v = a.valuation();
  if (a.exact()) {
    require(a.terms().size() == 1, ErrorKind::kDomain,
            "inverse of an exact non-monomial needs a truncation");
    return Series<R>::monomial(a.var(), -v, ring_inverse(a.terms()[0].second));
  }
  int n = a.trunc() - v;  // order of the unit part
  int out_trunc = a.trunc() - 2 * v;
  require(-v >= kLaurentFloor, ErrorKind::kDomain, "inverse exceeds Laurent floor");
  std::vector<R> b(n + 1, RingTraits<R>::zero());
  for (const auto& [e, c] : a.terms()) b[e - v] = c;
  R c0inv = ring_inverse(b[0]);
  int m = out_trunc + v;  // number of unit-part coefficients needed
  if (m < 0) return Series<R>(a.var(), out_trunc, std::min(-v, out_trunc));
  std::vector<R> r(m + 1, RingTraits<R>::zero());
  r[0] = c0inv;
  for (int k = 1; k <= m; ++k) {
    R acc = RingTraits<R>::zero();
    for (int j = 1; j <= k && j <= n; ++j) {
      if (is_zero(b[j]) || is_zero(r[k - j])) continue;
      acc += b[j] * r[k - j];
    }
    r[k] = scale(acc * c0inv, Rational(-1));
  }
  Series<R> out(a.var(), out_trunc, std::min(0, -v));
  for (int k = 0; k <= m; ++k)
    if (!is_zero(r[k])) out.set(k - v, std::move(r[k]));
  return out;
}

template <class R>
Series<R> pow(const Series<R>& a, int n) {
  require(n >= 0, ErrorKind::kInput, "negative power; use inverse");
  Series<R> result = Series<R>::constant(RingTraits<R>::one(), a.var());
  Series<R> base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

// a(b(z)); b must have zero constant term.
template <class R>
Series<R> compose(const Series<R>& a, const Series<R>& b) {
  require(a.valuation() >= 0 && a.min_exponent() >= 0, ErrorKind::kDomain,
          "compose needs a power series on the outside");
  require(b.valuation() >= 1, ErrorKind::kDomain, "compose needs zero constant term in the inner series");
  int t = std::min(a.trunc(), b.trunc());
  std::string v = b.var();
  Series<R> inner = b.truncated(t).with_min(0);
  Series<R> res(v, t, 0);
  if (a.is_zero()) return res;
  int top = std::min(a.degree(), t);
  for (int e = top; e >= 0; --e) {
    res = (res * inner).truncated(t);
    R c = a.coeff(e);
    if (!is_zero(c)) res.add_to(0, c);
  }
  return res;
}

// Compositional inverse of a = c1 z + O(z^2).
template <class R>
Series<R> reversion(const Series<R>& a) {
  require(a.valuation() >= 1, ErrorKind::kDomain, "reversion needs zero constant term");
  require(!is_zero(a.coeff(1)), ErrorKind::kDomain, "reversion needs invertible linear coefficient");
  require(!a.exact() || a.terms().size() == 1, ErrorKind::kDomain,
          "reversion of an exact series needs a truncation");
  R c1inv = ring_inverse(a.coeff(1));
  int n = a.trunc();
  if (a.exact()) return Series<R>::monomial(a.var(), 1, c1inv);
  Series<R> g(a.var(), n, 0);
  g.set(1, c1inv);
  for (int k = 2; k <= n; ++k) {
    Series<R> h = compose(a.truncated(k), g.truncated(k));
    R hk = h.coeff(k);
    if (!is_zero(hk)) g.set(k, scale(hk * c1inv, Rational(-1)));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Multivariate series with total-degree truncation.

inline constexpr int kMaxVars = 8;

using Monomial = std::uint64_t;  // 8 bits per exponent, variable 0 in the top byte

inline int mono_exp(Monomial m, int i) { return static_cast<int>((m >> (8 * (kMaxVars - 1 - i))) & 0xff); }
inline Monomial mono_unit(int i, int e = 1) {
  return static_cast<Monomial>(e) << (8 * (kMaxVars - 1 - i));
}
inline int mono_degree(Monomial m) {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += mono_exp(m, i);
  return d;
}
inline Monomial make_monomial(const std::vector<int>& e) {
  Monomial m = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    require(e[i] >= 0 && e[i] < 256, ErrorKind::kInput, "monomial exponent out of range");
    m |= mono_unit(static_cast<int>(i), e[i]);
  }
  return m;
}
inline std::vector<int> mono_exponents(Monomial m, int n) {
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = mono_exp(m, i);
  return e;
}

template <class R>
class MultiSeries {
 public:
  using Coeff = R;

  MultiSeries() = default;
  MultiSeries(std::vector<std::string> vars, int trunc) : vars_(std::move(vars)), trunc_(trunc) {
    require(vars_.size() <= kMaxVars, ErrorKind::kInput, "too many variables");
    require(trunc_ >= 0, ErrorKind::kInput, "negative total-degree truncation");
  }

  static MultiSeries constant(std::vector<std::string> vars, const R& c, int trunc = kExactOrder) {
    MultiSeries s(std::move(vars), trunc);
    s.set(0, c);
    return s;
  }
  static MultiSeries variable(std::vector<std::string> vars, int i, int trunc = kExactOrder) {
    MultiSeries s(std::move(vars), trunc);
    require(i >= 0 && i < s.nvars(), ErrorKind::kInput, "variable index out of range");
    if (trunc >= 1) s.set(mono_unit(i), RingTraits<R>::one());
    return s;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  int trunc() const { return trunc_; }
  const std::map<Monomial, R>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  R coeff(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RingTraits<R>::zero() : it->second;
  }
  R coeff(const std::vector<int>& e) const { return coeff(make_monomial(e)); }

  void set(Monomial m, R c) {
    require(mono_degree(m) <= trunc_, ErrorKind::kInput, "monomial beyond total-degree truncation");
    if (ellforge::is_zero(c)) {
      terms_.erase(m);
    } else {
      terms_[m] = std::move(c);
    }
  }
  void add_to(Monomial m, const R& c) {
    if (mono_degree(m) > trunc_ || ellforge::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (ellforge::is_zero(it->second)) terms_.erase(it);
    }
  }

  MultiSeries truncated(int d) const {
    MultiSeries r(vars_, std::min(trunc_, d));
    for (const auto& [m, c] : terms_)
      if (mono_degree(m) <= r.trunc_) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  // Homogeneous part of total degree d.
  MultiSeries homogeneous(int d) const {
    MultiSeries r(vars_, trunc_);
    for (const auto& [m, c] : terms_)
      if (mono_degree(m) == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  template <class S>
  MultiSeries scaled(const S& s) const {
    MultiSeries r(vars_, trunc_);
    for (const auto& [m, c] : terms_) {
      R v = scale(c, s);
      if (!ellforge::is_zero(v)) r.terms_.emplace_hint(r.terms_.end(), m, std::move(v));
    }
    return r;
  }
  MultiSeries mul_coeff(const R& s) const {
    MultiSeries r(vars_, trunc_);
    for (const auto& [m, c] : terms_) {
      R v = c * s;
      if (!ellforge::is_zero(v)) r.terms_.emplace_hint(r.terms_.end(), m, std::move(v));
    }
    return r;
  }
  // Apply f to every coefficient.
  template <class F>
  MultiSeries map_coeffs(F f) const {
    MultiSeries r(vars_, trunc_);
    for (const auto& [m, c] : terms_) {
      R v = f(c);
      if (!ellforge::is_zero(v)) r.terms_.emplace_hint(r.terms_.end(), m, std::move(v));
    }
    return r;
  }

  // Permute variables: new variable perm[i] receives old variable i.
  MultiSeries permuted(const std::vector<int>& perm) const {
    require(static_cast<int>(perm.size()) == nvars(), ErrorKind::kInput, "permutation size");
    MultiSeries r(vars_, trunc_);
    for (const auto& [m, c] : terms_) {
      Monomial p = 0;
      for (int i = 0; i < nvars(); ++i) p |= mono_unit(perm[i], mono_exp(m, i));
      r.terms_.emplace(p, c);
    }
    return r;
  }

  MultiSeries operator-() const { return scaled(Rational(-1)); }
  MultiSeries& operator+=(const MultiSeries& o) { return *this = add(*this, o, 1); }
  MultiSeries& operator-=(const MultiSeries& o) { return *this = add(*this, o, -1); }
  MultiSeries& operator*=(const MultiSeries& o) { return *this = mul(*this, o); }
  friend MultiSeries operator+(const MultiSeries& a, const MultiSeries& b) { return add(a, b, 1); }
  friend MultiSeries operator-(const MultiSeries& a, const MultiSeries& b) { return add(a, b, -1); }
  friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) { return mul(a, b); }

  friend bool operator==(const MultiSeries& a, const MultiSeries& b) {
    return a.trunc_ == b.trunc_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiSeries& a, const MultiSeries& b) { return !(a == b); }

 private:
  static void check_vars(const MultiSeries& a, const MultiSeries& b) {
    require(a.vars_ == b.vars_, ErrorKind::kInput, "variable-set mismatch");
  }
  static MultiSeries add(const MultiSeries& a, const MultiSeries& b, int sign) {
    check_vars(a, b);
    MultiSeries r = a.truncated(std::min(a.trunc_, b.trunc_));
    for (const auto& [m, c] : b.terms_)
      r.add_to(m, sign > 0 ? c : scale(c, Rational(-1)));
    return r;
  }
  static MultiSeries mul(const MultiSeries& a, const MultiSeries& b) {
    check_vars(a, b);
    MultiSeries r(a.vars_, std::min(a.trunc_, b.trunc_));
    std::vector<std::pair<Monomial, int>> bd;
    bd.reserve(b.terms_.size());
    for (const auto& [m, c] : b.terms_) bd.emplace_back(m, mono_degree(m));
    for (const auto& [ma, ca] : a.terms_) {
      int da = mono_degree(ma);
      if (da > r.trunc_) continue;
      std::size_t k = 0;
      for (const auto& [mb, cb] : b.terms_) {
        int db = bd[k++].second;
        if (da + db > r.trunc_) continue;
        r.add_to(ma + mb, ca * cb);
      }
    }
    return r;
  }

  std::vector<std::string> vars_;
  int trunc_ = kExactOrder;
  std::map<Monomial, R> terms_;
};

template <class R>
bool is_zero(const MultiSeries<R>& s) {
  return s.is_zero();
}
template <class R>
MultiSeries<R> scale(const MultiSeries<R>& x, const Rational& s) {
  return x.scaled(s);
}

// f(args[0], ..., args[n-1]) by nested Horner in the variables of f.
// Arguments must share a variable set; when f is truncated they need zero
// constant terms so the result truncation is well defined.
template <class R>
MultiSeries<R> substitute(const MultiSeries<R>& f, const std::vector<MultiSeries<R>>& args) {
  require(static_cast<int>(args.size()) == f.nvars(), ErrorKind::kInput, "substitute: argument count");
  require(!args.empty(), ErrorKind::kInput, "substitute: no arguments");
  int t = f.trunc();
  for (const auto& g : args) {
    require(g.vars() == args[0].vars(), ErrorKind::kInput, "substitute: argument variables differ");
    t = std::min(t, g.trunc());
    if (f.trunc() != kExactOrder)
      require(is_zero(g.coeff(Monomial(0))), ErrorKind::kDomain,
              "substitute: arguments need zero constant term");
  }
  const auto& out_vars = args[0].vars();
  int n = f.nvars();
  // Group terms of f by exponent of variable 0, recursing on the rest.
  std::function<MultiSeries<R>(const std::vector<std::pair<Monomial, R>>&, int)> rec;
  rec = [&](const std::vector<std::pair<Monomial, R>>& terms, int var) -> MultiSeries<R> {
    MultiSeries<R> res(out_vars, t);
    if (terms.empty()) return res;
    if (var == n) {
      res.add_to(Monomial(0), terms.front().second);
      return res;
    }
    std::map<int, std::vector<std::pair<Monomial, R>>, std::greater<int>> groups;
    for (const auto& tm : terms) groups[mono_exp(tm.first, var)].push_back(tm);
    int cur = groups.begin()->first;
    for (auto it = groups.begin(); it != groups.end(); ++it) {
      int e = it->first;
      for (; cur > e; --cur) res = res * args[var];
      res += rec(it->second, var + 1);
    }
    for (; cur > 0; --cur) res = res * args[var];
    return res;
  };
  std::vector<std::pair<Monomial, R>> all(f.terms().begin(), f.terms().end());
  return rec(all, 0).truncated(t);
}

}  // namespace ellforge
