// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// Sparse exact linear algebra over Q.

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "core/rational.hpp"

namespace ellforge {

// Sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y);  // x + a*y
SparseVec to_sparse(const std::vector<Rational>& dense);

// Row echelon form built one row at a time. Each stored row has leading
// coefficient 1 at its pivot column.
class EchelonBasis {
 public:
  explicit EchelonBasis(int ncols) : ncols_(ncols) {}

  // Returns true when v is independent of the rows inserted so far.
  bool insert(SparseVec v);
  SparseVec reduce(SparseVec v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  // Fully reduced rows keyed by pivot column.
  std::map<int, SparseVec> rref() const;

 private:
  int ncols_;
  std::map<int, SparseVec> rows_;
};

int rank(const std::vector<SparseVec>& rows, int ncols);

// Basis of {x : rows * x = 0}.
std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, int ncols);

// One solution of rows * x = rhs, or nothing when inconsistent. unique is set
// when the solution is unique.
std::optional<std::vector<Rational>> solve(const std::vector<SparseVec>& rows,
                                           const std::vector<Rational>& rhs, int ncols,
                                           bool* unique = nullptr);

}  // namespace ellforge
