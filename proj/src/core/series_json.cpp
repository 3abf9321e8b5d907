// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/series_json.hpp"

namespace ellforge {

namespace {

void append_coeff(Json& entry, const Rational& c) { entry.push_back(to_string(c)); }
void append_coeff(Json& entry, const GaussianRational& c) {
  entry.push_back(to_string(c.re));
  entry.push_back(to_string(c.im));
}
void append_coeff(Json& entry, const QSeries& c) { entry.push_back(to_json(c)); }
void append_coeff(Json& entry, const Series<GaussianRational>& c) { entry.push_back(to_json(c)); }

Json trunc_json(int t) { return t == kExactOrder ? Json(nullptr) : Json(t); }

template <class R>
Json series_json(const Series<R>& s) {
  Json j;
  j["var"] = s.var();
  j["min"] = s.min_exponent();
  j["trunc"] = trunc_json(s.trunc());
  Json coeffs = Json::array();
  for (const auto& [e, c] : s.terms()) {
    Json entry = Json::array({e});
    append_coeff(entry, c);
    coeffs.push_back(std::move(entry));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

template <class R>
Json multi_json(const MultiSeries<R>& s) {
  Json j;
  j["vars"] = s.vars();
  j["trunc"] = trunc_json(s.trunc());
  Json coeffs = Json::array();
  for (const auto& [m, c] : s.terms()) {
    Json entry = Json::array({Json(mono_exponents(m, s.nvars()))});
    append_coeff(entry, c);
    coeffs.push_back(std::move(entry));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::kInput, "series JSON: " + what); }

int read_trunc(const Json& j) {
  if (!j.contains("trunc")) bad("missing trunc");
  if (j["trunc"].is_null()) return kExactOrder;
  if (!j["trunc"].is_number_integer()) bad("trunc must be an integer or null");
  return j["trunc"].get<int>();
}

Rational read_rational(const Json& j) {
  if (!j.is_string()) bad("coefficients must be decimal strings");
  return parse_rational(j.get<std::string>());
}

template <class R, class F>
Series<R> series_from(const Json& j, std::size_t width, F read_coeff) {
  if (!j.is_object()) bad("expected an object");
  for (const char* key : {"var", "min", "coeffs"})
    if (!j.contains(key)) bad(std::string("missing ") + key);
  if (!j["var"].is_string() || !j["min"].is_number_integer() || !j["coeffs"].is_array())
    bad("wrong field types");
  Series<R> s(j["var"].get<std::string>(), read_trunc(j), j["min"].get<int>());
  int last = INT_MIN;
  for (const auto& entry : j["coeffs"]) {
    if (!entry.is_array() || entry.size() != width || !entry[0].is_number_integer())
      bad("malformed coefficient entry");
    int e = entry[0].get<int>();
    if (e <= last) bad("exponents must be strictly increasing");
    last = e;
    R c = read_coeff(entry);
    if (is_zero(c)) bad("zero coefficients are not stored");
    s.set(e, std::move(c));
  }
  return s;
}

}  // namespace

Json to_json(const Series<Rational>& s) { return series_json(s); }
Json to_json(const Series<GaussianRational>& s) { return series_json(s); }
Json to_json(const Series<QSeries>& s) { return series_json(s); }
Json to_json(const MultiSeries<Rational>& s) { return multi_json(s); }
Json to_json(const MultiSeries<QSeries>& s) { return multi_json(s); }
Json to_json(const MultiSeries<GaussianRational>& s) { return multi_json(s); }
Json to_json(const MultiSeries<Series<GaussianRational>>& s) { return multi_json(s); }

Series<Rational> rational_series_from_json(const Json& j) {
  return series_from<Rational>(j, 2, [](const Json& e) { return read_rational(e[1]); });
}

Series<GaussianRational> gaussian_series_from_json(const Json& j) {
  return series_from<GaussianRational>(j, 3, [](const Json& e) {
    return GaussianRational(read_rational(e[1]), read_rational(e[2]));
  });
}

Series<QSeries> nested_series_from_json(const Json& j) {
  return series_from<QSeries>(j, 2, [](const Json& e) { return rational_series_from_json(e[1]); });
}

MultiSeries<QSeries> multi_qseries_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("coeffs")) bad("expected a multivariate object");
  auto vars = j["vars"].get<std::vector<std::string>>();
  MultiSeries<QSeries> s(vars, read_trunc(j));
  for (const auto& entry : j["coeffs"]) {
    if (!entry.is_array() || entry.size() != 2) bad("malformed coefficient entry");
    auto e = entry[0].get<std::vector<int>>();
    if (e.size() != vars.size()) bad("exponent vector length");
    s.set(make_monomial(e), rational_series_from_json(entry[1]));
  }
  return s;
}

bool json_is_gaussian_series(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array()) return false;
  for (const auto& e : j["coeffs"])
    if (e.is_array() && e.size() == 3) return true;
  return false;
}

std::string dump_canonical(const Json& j) { return j.dump(); }

}  // namespace ellforge
