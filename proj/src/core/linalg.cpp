// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/linalg.hpp"

namespace ellforge {

SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y) {
  SparseVec r;
  r.reserve(x.size() + y.size());
  auto i = x.begin(), j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      r.push_back(*i++);
    } else if (i == x.end() || j->first < i->first) {
      r.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Rational v = i->second + a * j->second;
      if (sgn(v) != 0) r.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec to_sparse(const std::vector<Rational>& dense) {
  SparseVec r;
  for (std::size_t k = 0; k < dense.size(); ++k)
    if (sgn(dense[k]) != 0) r.emplace_back(static_cast<int>(k), dense[k]);
  return r;
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    Rational a = -v[pos].second;
    v = sparse_axpy(v, a, it->second);
    // entries before pos are unchanged because pivot rows start at their pivot
  }
  return v;
}

bool EchelonBasis::insert(SparseVec v) {
  // Only the leading entry needs to be free of existing pivots.
  while (!v.empty()) {
    auto it = rows_.find(v.front().first);
    if (it == rows_.end()) break;
    Rational a = -v.front().second;
    v = sparse_axpy(v, a, it->second);
  }
  if (v.empty()) return false;
  Rational inv = Rational(1) / v.front().second;
  for (auto& [k, c] : v) c *= inv;
  int p = v.front().first;
  rows_.emplace(p, std::move(v));
  return true;
}

std::map<int, SparseVec> EchelonBasis::rref() const {
  std::map<int, SparseVec> out;
  // Highest pivots first so each row is reduced against already-final rows.
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    SparseVec row = it->second;
    std::size_t pos = 1;
    while (pos < row.size()) {
      auto f = out.find(row[pos].first);
      if (f == out.end()) {
        ++pos;
        continue;
      }
      Rational a = -row[pos].second;
      row = sparse_axpy(row, a, f->second);
    }
    out.emplace(it->first, std::move(row));
  }
  return out;
}

int rank(const std::vector<SparseVec>& rows, int ncols) {
  EchelonBasis b(ncols);
  for (const auto& r : rows) b.insert(r);
  return b.rank();
}

std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, int ncols) {
  EchelonBasis b(ncols);
  for (const auto& r : rows) b.insert(r);
  auto red = b.rref();
  std::vector<SparseVec> out;
  for (int f = 0; f < ncols; ++f) {
    if (red.count(f)) continue;
    std::vector<std::pair<int, Rational>> entries;
    entries.emplace_back(f, Rational(1));
    for (const auto& [p, row] : red) {
      for (const auto& [k, c] : row)
        if (k == f) entries.emplace_back(p, -c);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    out.push_back(std::move(entries));
  }
  return out;
}

std::optional<std::vector<Rational>> solve(const std::vector<SparseVec>& rows,
                                           const std::vector<Rational>& rhs, int ncols,
                                           bool* unique) {
  require(rows.size() == rhs.size(), ErrorKind::kInput, "solve: row/rhs size mismatch");
  EchelonBasis b(ncols + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseVec r = rows[i];
    if (sgn(rhs[i]) != 0) r.emplace_back(ncols, rhs[i]);
    b.insert(std::move(r));
  }
  auto red = b.rref();
  if (red.count(ncols)) return std::nullopt;
  if (unique) *unique = static_cast<int>(red.size()) == ncols;
  std::vector<Rational> x(ncols);
  for (const auto& [p, row] : red)
    for (const auto& [k, c] : row)
      if (k == ncols) x[p] = c;
  return x;
}

}  // namespace ellforge
