// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/rational.hpp"

#include <cctype>

namespace ellforge {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput: return "input error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kOrientation: return "orientation error";
    case ErrorKind::kNumerical: return "numerical error";
    case ErrorKind::kPole: return "pole error";
    case ErrorKind::kNearZero: return "near-zero error";
    case ErrorKind::kModel: return "model mismatch";
    case ErrorKind::kLoad: return "load error";
    case ErrorKind::kRecenter: return "recenter error";
    case ErrorKind::kInternal: return "internal consistency error";
  }
  return "error";
}

std::string to_string(const Rational& x) { return x.get_str(10); }

Rational parse_rational(std::string_view s) {
  auto bad = [&]() { fail(ErrorKind::kInput, "malformed rational '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  bool slash = false, digit = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    char c = s[k];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c == '/' && !slash && digit && k + 1 < s.size()) {
      slash = true;
      digit = false;
    } else {
      bad();
    }
  }
  if (!digit) bad();
  std::string str(s[0] == '+' ? s.substr(1) : s);
  Rational r;
  if (r.set_str(str, 10) != 0) bad();
  if (sgn(r.get_den()) == 0) fail(ErrorKind::kInput, "zero denominator in '" + str + "'");
  r.canonicalize();
  return r;
}

double to_double(const Rational& x) { return x.get_d(); }

GaussianRational GaussianRational::inverse() const {
  Rational n = norm();
  require(sgn(n) != 0, ErrorKind::kDomain, "inverse of zero Gaussian rational");
  return {re / n, -im / n};
}

GaussianRational i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

}  // namespace ellforge
