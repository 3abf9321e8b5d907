// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/emit.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "core/equivderham.hpp"
#include "core/euler.hpp"
#include "core/fermion.hpp"
#include "core/modforms.hpp"
#include "core/sheafmodel.hpp"
#include "core/sigma.hpp"

namespace ellforge {

Json complex_to_json(Complex z) { return Json::array({format_double(z.real()), format_double(z.imag())}); }

Complex complex_from_json(const Json& j) {
  auto part = [](const Json& x) {
    if (x.is_number()) return x.get<double>();
    require(x.is_string(), ErrorKind::kInput, "complex parts must be numbers or decimal strings");
    const std::string s = x.get<std::string>();
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    require(!s.empty() && end == s.c_str() + s.size(), ErrorKind::kInput, "malformed decimal: " + s);
    return v;
  };
  if (j.is_number()) return {j.get<double>(), 0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  require(j.is_array() && j.size() == 2, ErrorKind::kInput, "complex value must be [re, im]");
  return {part(j[0]), part(j[1])};
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  require(!s.empty(), ErrorKind::kInput, "empty complex number");
  auto number = [&](const std::string& t, bool allow_empty) {
    if (allow_empty && (t.empty() || t == "+" || t == "-")) return t == "-" ? -1.0 : 1.0;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    require(!t.empty() && end == t.c_str() + t.size(), ErrorKind::kInput, "malformed complex number: " + text);
    return v;
  };
  if (s.back() != 'i') return {number(s, false), 0};
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not part of an exponent
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  if (cut == std::string::npos) return {0, number(body, true)};
  return {number(body.substr(0, cut), false), number(body.substr(cut), true)};
}

namespace {

// ---- argument access ----

const Json* field(const Json& a, const char* key) {
  auto it = a.find(key);
  return it == a.end() || it->is_null() ? nullptr : &*it;
}

bool has(const Json& a, const char* key) { return field(a, key) != nullptr; }

int get_int(const Json& a, const char* key, std::optional<int> dflt = std::nullopt) {
  const Json* v = field(a, key);
  if (!v) {
    require(dflt.has_value(), ErrorKind::kInput, std::string("missing argument: ") + key);
    return *dflt;
  }
  require(v->is_number_integer(), ErrorKind::kInput, std::string("argument must be an integer: ") + key);
  return v->get<int>();
}

bool get_bool(const Json& a, const char* key) {
  const Json* v = field(a, key);
  if (!v) return false;
  require(v->is_boolean(), ErrorKind::kInput, std::string("argument must be a boolean: ") + key);
  return v->get<bool>();
}

std::string get_string(const Json& a, const char* key, std::optional<std::string> dflt = std::nullopt) {
  const Json* v = field(a, key);
  if (!v) {
    require(dflt.has_value(), ErrorKind::kInput, std::string("missing argument: ") + key);
    return *dflt;
  }
  require(v->is_string(), ErrorKind::kInput, std::string("argument must be a string: ") + key);
  return v->get<std::string>();
}

std::vector<int> get_ints(const Json& a, const char* key, std::optional<std::vector<int>> dflt = std::nullopt) {
  const Json* v = field(a, key);
  if (!v) {
    require(dflt.has_value(), ErrorKind::kInput, std::string("missing argument: ") + key);
    return *dflt;
  }
  require(v->is_array(), ErrorKind::kInput, std::string("argument must be a list: ") + key);
  std::vector<int> out;
  for (const auto& x : *v) {
    require(x.is_number_integer(), ErrorKind::kInput, std::string("list entries must be integers: ") + key);
    out.push_back(x.get<int>());
  }
  return out;
}

std::vector<double> get_doubles(const Json& a, const char* key, std::optional<std::vector<double>> dflt = {}) {
  const Json* v = field(a, key);
  if (!v) {
    require(dflt.has_value(), ErrorKind::kInput, std::string("missing argument: ") + key);
    return *dflt;
  }
  require(v->is_array(), ErrorKind::kInput, std::string("argument must be a list: ") + key);
  std::vector<double> out;
  for (const auto& x : *v) {
    require(x.is_number(), ErrorKind::kInput, std::string("list entries must be numbers: ") + key);
    out.push_back(x.get<double>());
  }
  return out;
}

std::uint64_t get_seed(const Json& a) {
  const Json* v = field(a, "seed");
  if (!v) return 20260101;
  require(v->is_number_unsigned(), ErrorKind::kInput, "seed must be a non-negative integer");
  return v->get<std::uint64_t>();
}

std::optional<double> get_tol(const Json& a) {
  const Json* v = field(a, "tol");
  if (!v) return std::nullopt;
  require(v->is_number() && v->get<double>() > 0, ErrorKind::kInput, "tol must be positive");
  return v->get<double>();
}

void require_range(int v, int lo, int hi, const char* what) {
  require(v >= lo && v <= hi, ErrorKind::kInput,
          std::string(what) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

// ---- text tables ----

class Table {
 public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  std::string str() const {
    std::vector<std::size_t> w;
    for (const auto& r : rows_)
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (w.size() <= k) w.push_back(0);
        w[k] = std::max(w[k], r[k].size());
      }
    std::ostringstream os;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t k = 0; k < r.size(); ++k) {
        std::string pad(w[k] - r[k].size(), ' ');
        line += k == 0 ? r[k] + pad : "  " + pad + r[k];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << line << "\n";
    }
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string power(const std::string& var, int e) {
  if (e == 0) return "1";
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

std::string monomial_name(Monomial m, const std::vector<std::string>& vars) {
  std::string out;
  for (int i = 0; i < static_cast<int>(vars.size()); ++i) {
    int e = mono_exp(m, i);
    if (!e) continue;
    if (!out.empty()) out += "*";
    out += power(vars[i], e);
  }
  return out.empty() ? "1" : out;
}

std::string trunc_note(const std::string& var, int trunc) {
  return "O(" + power(var, trunc + 1) + ")";
}

// Highest q exponent kept across a set of coefficients.
template <class It>
int q_columns(It begin, It end) {
  int top = 0;
  for (auto it = begin; it != end; ++it) {
    const QSeries& s = *it;
    top = std::max(top, s.exact() ? (s.is_zero() ? 0 : s.degree()) : s.trunc());
  }
  return top;
}

std::vector<std::string> q_header(const std::string& first, int top) {
  std::vector<std::string> h{first};
  for (int k = 0; k <= top; ++k) h.push_back(power("q", k));
  return h;
}

std::vector<std::string> q_row(std::string label, const QSeries& s, int top) {
  std::vector<std::string> r{std::move(label)};
  for (int k = 0; k <= top; ++k) r.push_back(to_string(s.coeff(k)));
  return r;
}

std::string qseries_table(const QSeries& s) {
  Table t;
  t.row({"n", "coeff"});
  int top = s.exact() ? (s.is_zero() ? 0 : s.degree()) : s.trunc();
  for (int e = std::min(0, s.min_exponent()); e <= top; ++e) t.row({std::to_string(e), to_string(s.coeff(e))});
  std::string out = t.str();
  if (!s.exact()) out += trunc_note(s.var(), s.trunc()) + "\n";
  return out;
}

std::string zseries_table(const ZSeries& s) {
  std::vector<QSeries> cs;
  for (const auto& [e, c] : s.terms()) cs.push_back(c);
  int top = q_columns(cs.begin(), cs.end());
  Table t;
  t.row(q_header("term", top));
  int hi = s.exact() ? (s.is_zero() ? 0 : s.degree()) : s.trunc();
  for (int e = std::min(0, s.min_exponent()); e <= hi; ++e) t.row(q_row(power(s.var(), e), s.coeff(e), top));
  std::string out = t.str();
  if (!s.exact()) out += trunc_note(s.var(), s.trunc()) + "\n";
  return out;
}

std::string multi_table(const QMulti& f) {
  std::vector<QSeries> cs;
  std::vector<Monomial> monos;
  for (const auto& [m, c] : f.terms()) {
    cs.push_back(c);
    monos.push_back(m);
  }
  // by total degree, then lexicographically with the first variable leading
  std::sort(monos.begin(), monos.end(), [](Monomial a, Monomial b) {
    int da = mono_degree(a), db = mono_degree(b);
    return da != db ? da < db : a > b;
  });
  int top = q_columns(cs.begin(), cs.end());
  Table t;
  t.row(q_header("monomial", top));
  for (Monomial m : monos) t.row(q_row(monomial_name(m, f.vars()), f.coeff(m), top));
  std::string out = t.str();
  std::string vars;
  for (const auto& v : f.vars()) vars += (vars.empty() ? "" : ",") + v;
  out += "O(total degree " + std::to_string(f.trunc() + 1) + " in " + vars + ")\n";
  return out;
}

std::string dump(const Json& j) { return dump_canonical(j) + "\n"; }

std::string kv_lines(const std::vector<std::pair<std::string, std::string>>& kv) {
  Table t;
  for (const auto& [k, v] : kv) t.row({k + ":", v});
  return t.str();
}

std::string complex_text(Complex z) { return format_double(z.real()) + " " + format_double(z.imag()) + "i"; }

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

// ---- commands ----

Json weight_json(const ModularObject& f) {
  if (f.weight_twice % 2 == 0) return f.weight_twice / 2;
  return format_double(f.weight());
}

ModularObject modular_object(const Json& a) {
  int order = get_int(a, "order");
  require_range(order, 0, 2000, "order");
  if (get_bool(a, "delta")) return delta_q(order);
  return eisenstein_q(get_int(a, "eisenstein"), order);
}

EmitResult emit_modforms(const Json& a, bool json) {
  ModularObject f = modular_object(a);
  if (get_bool(a, "check_weight")) {
    int count = get_int(a, "samples", 10);
    require_range(count, 1, 1000, "samples");
    double tol = get_tol(a).value_or(1e-9);
    Rng rng(get_seed(a));
    auto samples = random_weight_samples(rng, count);
    auto r = check_weight(f, samples, tol);
    if (json) {
      Json rows = Json::array();
      for (const auto& s : r.results) {
        Json x{{"gamma", {s.sample.gamma.a, s.sample.gamma.b, s.sample.gamma.c, s.sample.gamma.d}},
               {"mu", complex_to_json(s.sample.mu)},
               {"tau", complex_to_json(s.sample.lattice.tau())},
               {"residual", format_double(s.residual)}};
        if (s.anomaly) x["anomaly"] = complex_to_json(*s.anomaly);
        rows.push_back(std::move(x));
      }
      Json out{{"object", f.name},
               {"weight", weight_json(f)},
               {"status", r.passed ? "pass" : "fail"},
               {"seed", get_seed(a)},
               {"tol", format_double(tol)},
               {"max_residual", format_double(r.max_residual)},
               {"samples", rows}};
      if (r.anomaly_mean) {
        out["anomaly_mean"] = complex_to_json(*r.anomaly_mean);
        out["anomaly_spread"] = format_double(r.anomaly_spread);
      }
      return {dump(out), r.passed};
    }
    Table t;
    t.row({"gamma", "tau", "residual"});
    for (const auto& s : r.results) t.row({s.sample.gamma.str(), complex_text(s.sample.lattice.tau()), format_double(s.residual)});
    std::string out = f.name + " weight " + format_double(f.weight()) + ": " + (r.passed ? "PASS" : "FAIL") +
                      "  seed=" + std::to_string(get_seed(a)) + " tol=" + format_double(tol) + "\n" + t.str();
    if (r.anomaly_mean)
      out += "anomaly: mean " + complex_text(*r.anomaly_mean) + ", spread " + format_double(r.anomaly_spread) + "\n";
    return {out, r.passed};
  }
  if (json) {
    Json out{{"object", f.name},
             {"weight", weight_json(f)},
             {"group", f.group},
             {"quasimodular", f.quasimodular},
             {"qexp", to_json(f.qexp)}};
    return {dump(out)};
  }
  std::string head = f.name + "  weight " + format_double(f.weight()) + "  " + f.group +
                     (f.quasimodular ? "  quasimodular" : "") + "\n";
  return {head + qseries_table(f.qexp)};
}

EmitResult emit_sigma(const Json& a, bool json) {
  std::vector<int> qz = get_ints(a, "qexp");
  require(qz.size() == 2, ErrorKind::kInput, "qexp takes Nq Nz");
  require_range(qz[0], 0, 60, "Nq");
  require_range(qz[1], 0, 60, "Nz");
  bool raw = get_bool(a, "raw");
  SigmaSeries s = sigma_product(qz[0], qz[1], !raw);
  if (json) {
    Json out{{"object", "sigma"},
             {"form", raw ? "raw" : "normalized"},
             {"lambda2_prefactor", s.lambda2_prefactor()},
             {"q_order", s.q_order},
             {"z_order", s.z_order},
             {"expansion", to_json(s.expansion)}};
    return {dump(out)};
  }
  std::string head = raw ? "raw sigma product\n" : "sigma / lambda2\n";
  return {head + zseries_table(s.expansion)};
}

EmitResult emit_fgl(const Json& a, bool json) {
  std::string kind = get_string(a, "coordinate");
  int D = get_int(a, "degree");
  require_range(D, 1, 24, "degree");
  int nq = get_int(a, "qorder", kind == "sigma" ? 6 : 0);
  require_range(nq, 0, 40, "qorder");
  FormalGroupLaw f = named_fgl(kind, D, nq);
  if (json) return {dump({{"object", "fgl"}, {"provenance", f.provenance}, {"degree", f.degree}, {"F", to_json(f.F)}})};
  return {"F(x,y), " + f.provenance + "\n" + multi_table(f.F)};
}

SectorDatum sector_from(const Json& a, const Lattice& L) {
  std::vector<double> a1 = get_doubles(a, "alpha1");
  std::vector<double> a2 = get_doubles(a, "alpha2", std::vector<double>(a1.size(), 0.0));
  std::vector<Complex> X;
  if (const Json* x = field(a, "X")) {
    require(x->is_array(), ErrorKind::kInput, "X must be a list");
    for (const auto& v : *x) X.push_back(complex_from_json(v));
  }
  return make_sector(L, a1, a2, X);
}

Lattice lattice_from(const Json& a) {
  Complex tau = complex_from_json(field(a, "tau") ? *field(a, "tau") : Json::array({0.0, 1.0}));
  Complex l2 = field(a, "lambda2") ? complex_from_json(*field(a, "lambda2")) : Complex(1.0);
  return make_lattice(tau * l2, l2);
}

EmitResult emit_fermion(const Json& a, bool json) {
  if (has(a, "character")) {
    int n = get_int(a, "character");
    require_range(n, 1, 6, "character rank");
    std::vector<int> order = get_ints(a, "order", std::vector<int>{4, 6});
    require(order.size() == 2, ErrorKind::kInput, "order takes Nq Nz");
    require_range(order[0], 0, 30, "Nq");
    require_range(order[1], 0, 16, "Nz");
    auto v = vacuum_character(n, order[0], order[1]);
    if (json)
      return {dump({{"object", "vacuum_character"}, {"rank", v.rank}, {"lambda2_power", v.lambda2_power},
                    {"series", to_json(v.series)}})};
    return {"LU(" + std::to_string(n) + ") level-1 vacuum character, lambda2^" + std::to_string(v.lambda2_power) +
            " times\n" + multi_table(v.series)};
  }
  Lattice L = lattice_from(a);
  SectorDatum d = sector_from(a, L);
  if (get_bool(a, "ratio")) {
    int M = get_int(a, "M", 400);
    require_range(M, 1, 5000, "M");
    std::vector<double> base1 = get_doubles(a, "base_alpha1", std::vector<double>(d.rank, 0.25));
    std::vector<double> base2 = get_doubles(a, "base_alpha2", std::vector<double>(d.rank, 0.0));
    SectorDatum b = make_sector(L, base1, base2);
    Complex trunc = pf_truncated_ratio(d, b, M);
    Complex closed = *pf_closed(d).value / *pf_closed(b).value;
    Complex anomaly = window_anomaly(d, b);
    double raw_err = std::abs(trunc - closed) / std::abs(closed);
    double cor_err = std::abs(trunc - closed * anomaly) / std::abs(closed * anomaly);
    if (json)
      return {dump({{"object", "pfaffian_ratio"},
                    {"tau", complex_to_json(L.tau())},
                    {"M", M},
                    {"truncated", complex_to_json(trunc)},
                    {"closed", complex_to_json(closed)},
                    {"window_anomaly", complex_to_json(anomaly)},
                    {"rel_error", format_double(raw_err)},
                    {"rel_error_window_corrected", format_double(cor_err)}})};
    return {kv_lines({{"M", std::to_string(M)},
                      {"truncated ratio", complex_text(trunc)},
                      {"closed ratio", complex_text(closed)},
                      {"window anomaly", complex_text(anomaly)},
                      {"relative error", format_double(raw_err)},
                      {"relative error, window-corrected", format_double(cor_err)}})};
  }
  require(get_bool(a, "closed"), ErrorKind::kInput, "fermion needs one of closed, ratio, character");
  PfaffianValue v = pf_closed(d);
  Json zs = Json::array();
  std::vector<std::pair<std::string, std::string>> kv{{"tau", complex_text(L.tau())}};
  for (int j = 1; j <= d.rank; ++j) {
    zs.push_back(complex_to_json(sector_z(d, j)));
    kv.push_back({"z" + std::to_string(j), complex_text(sector_z(d, j))});
  }
  kv.push_back({"pfaffian", complex_text(*v.value)});
  if (json)
    return {dump({{"object", "pfaffian"},
                  {"tau", complex_to_json(L.tau())},
                  {"z", zs},
                  {"normalization", v.normalization},
                  {"value", complex_to_json(*v.value)}})};
  return {kv_lines(kv)};
}

EmitResult emit_euler(const Json& a, bool json) {
  int m = get_int(a, "roots"), D = get_int(a, "nilpotency"), nq = get_int(a, "qorder");
  require_range(m, 1, kMaxVars, "roots");
  require_range(D, 0, 16, "nilpotency");
  require_range(nq, 0, 30, "qorder");
  ChernRoots r = make_chern_roots(m, D, nq);
  bool corrected = get_bool(a, "corrected");
  EulerCocycle e = corrected ? mu6_corrected_euler(r) : twisted_euler(r);
  if (json) {
    Json out{{"object", corrected ? "euler_corrected" : "euler_twisted"},
             {"roots", m},
             {"nilpotency", D},
             {"q_order", nq},
             {"lambda2_power", e.lambda2_power},
             {"element", to_json(e.element)}};
    if (corrected) {
      Json cert = Json::array();
      for (const auto& c : e.certificate)
        cert.push_back({{"monomial", mono_exponents(c.monomial, m)},
                        {"modular", c.modular},
                        {"g4g6", format_g4g6(c.decomposition)}});
      out["certificate"] = cert;
    }
    return {dump(out)};
  }
  std::string head = std::string(corrected ? "corrected" : "twisted") + " Euler class, lambda2^" +
                     std::to_string(e.lambda2_power) + " times\n";
  std::string out = head + multi_table(e.element);
  if (corrected) {
    Table t;
    t.row({"monomial", "G4,G6 form"});
    for (const auto& c : e.certificate)
      t.row({monomial_name(c.monomial, e.element.vars()), c.modular ? format_g4g6(c.decomposition) : "not modular"});
    out += t.str();
  }
  return {out};
}

EmitResult emit_derham(const Json& a, bool json) {
  if (get_bool(a, "cohomology")) {
    std::vector<int> w = get_ints(a, "weights");
    int D = get_int(a, "degree", 6), s = get_int(a, "sweight", 4);
    require_range(D, 0, 12, "degree");
    require_range(s, 0, 6, "sweight");
    auto r = cartan_cohomology(w, D, s);
    if (json)
      return {dump({{"object", "cartan_cohomology"},
                    {"weights", r.weights},
                    {"max_degree", r.max_degree},
                    {"max_sweight", r.max_sweight},
                    {"dims", r.dims},
                    {"point_dims", r.point_dims},
                    {"matches_point", r.matches_point},
                    {"zero_weight", r.zero_weight},
                    {"stable", r.stable}})};
    Table t;
    t.row({"degree", "dim", "point"});
    for (std::size_t n = 0; n < r.dims.size(); ++n)
      t.row({std::to_string(n), std::to_string(r.dims[n]), std::to_string(r.point_dims[n])});
    return {"U(1) weights " + join(w) + ", sweight <= " + std::to_string(s) + "\n" + t.str() +
            "matches point: " + (r.matches_point ? "yes" : "no") + ", stable: " + (r.stable ? "yes" : "no") + "\n"};
  }
  LieAlgebra g = lie_by_name(get_string(a, "group"));
  if (has(a, "basic")) {
    int n = get_int(a, "basic");
    EquivModel W = weil_model(g);
    auto basis = basic_subspace(W, n);
    Json jb = Json::array();
    std::string out = "basic subspace of W(" + g.name + ") in degree " + std::to_string(n) + ": dim " +
                      std::to_string(basis.size()) + "\n";
    for (const auto& b : basis) {
      jb.push_back(b.str());
      out += "  " + b.str() + "\n";
    }
    if (json) return {dump({{"object", "basic_subspace"}, {"group", g.name}, {"degree", n}, {"basis", jb}})};
    return {out};
  }
  require(get_bool(a, "check_relations"), ErrorKind::kInput, "derham needs check_relations, cohomology or basic");
  int D = get_int(a, "degree", 6);
  require_range(D, 0, 8, "degree");
  int samples = get_int(a, "samples", 4);
  require_range(samples, 1, 100, "samples");
  Representation rep = g.name == "u1" ? u1_weights(get_ints(a, "weights", std::vector<int>{1, 2})) : realify(g);
  Rng rng(get_seed(a));
  auto r = derham_relations(g, rep, D, rng, samples);
  std::vector<std::pair<std::string, bool>> flags{{"d_W^2 = 0", r.weil_d2},
                                                  {"d^2 = 0 on forms", r.forms_d2},
                                                  {"d^2 = 0 in the Weil model", r.model_d2},
                                                  {"[d, iota_X] = L_X", r.cartan_relation},
                                                  {"[iota_X, iota_Y] = 0", r.iota_anticommute},
                                                  {"[L_X, d] = 0", r.lie_d_commute},
                                                  {"d_C^2 = 0 on invariants", r.cartan_d2}};
  if (json) {
    Json checks = Json::object();
    for (const auto& [k, v] : flags) checks[k] = v;
    return {dump({{"object", "derham_relations"},
                  {"group", r.group},
                  {"degree", r.degree},
                  {"seed", get_seed(a)},
                  {"status", r.passed() ? "pass" : "fail"},
                  {"checks", checks},
                  {"bracket_sign", r.bracket_sign}}),
            r.passed()};
  }
  Table t;
  for (const auto& [k, v] : flags) t.row({k, v ? "pass" : "fail"});
  t.row({"[L_X, L_Y] = s L_[X,Y]", "s = " + std::to_string(r.bracket_sign)});
  return {r.group + " relations to degree " + std::to_string(D) + ": " + (r.passed() ? "PASS" : "FAIL") + "\n" + t.str(),
          r.passed()};
}

EmitResult emit_sheaf(const Json& a, bool json) {
  CircleActionSpace M = make_space(get_ints(a, "weights"));
  Anchor h = parse_anchor(get_string(a, "anchor", "0,0"));
  require(get_bool(a, "sections"), ErrorKind::kInput, "sheaf needs sections");
  int D = get_int(a, "degree", 6), s = get_int(a, "sweight", 2);
  require_range(D, 0, 12, "degree");
  require_range(s, 0, 4, "sweight");
  auto ls = local_sections(M, h, D, s);
  Rational radius = small_open_radius(M, h);
  if (json) {
    Json cocycles = Json::array();
    for (const auto& deg : ls.cocycles) {
      Json row = Json::array();
      for (const auto& c : deg) row.push_back(c.str());
      cocycles.push_back(row);
    }
    return {dump({{"object", "local_sections"},
                  {"weights", M.weights},
                  {"anchor", to_string(h)},
                  {"fixed", ls.fixed},
                  {"fixed_weights", ls.fixed_weights},
                  {"small_open_radius", to_string(radius)},
                  {"max_degree", ls.max_degree},
                  {"max_sweight", ls.max_sweight},
                  {"cohomology", ls.cohomology},
                  {"cocycles", cocycles},
                  {"lattice_slot", ls.lattice_slot}})};
  }
  std::string out = kv_lines({{"weights", join(M.weights)},
                              {"anchor", to_string(h)},
                              {"fixed coordinates", join(ls.fixed)},
                              {"fixed weights", join(ls.fixed_weights)},
                              {"small open radius", to_string(radius)},
                              {"lattice slot", ls.lattice_slot}});
  Table t;
  t.row({"degree", "dim", "cocycles"});
  for (std::size_t n = 0; n < ls.cocycles.size(); ++n) {
    std::string cs;
    for (const auto& c : ls.cocycles[n]) cs += (cs.empty() ? "" : "; ") + c.str();
    t.row({std::to_string(n), std::to_string(ls.cohomology[n]), cs});
  }
  return {out + t.str()};
}

std::string matrix_text(const IntMatrix2& m) {
  return "[" + std::to_string(m[0]) + " " + std::to_string(m[1]) + "; " + std::to_string(m[2]) + " " +
         std::to_string(m[3]) + "]";
}

EmitResult emit_sectors(const Json& a, bool json) {
  FiniteGroupTable G;
  if (const Json* t = field(a, "group_table")) {
    G = group_table_from_json(*t);
  } else {
    std::string name = get_string(a, "group");
    if (name.size() > 1 && name[0] == 'S') {
      G = symmetric_group(std::atoi(name.c_str() + 1));
    } else if (name.rfind("Z/", 0) == 0) {
      G = cyclic_group(std::atoi(name.c_str() + 2));
    } else {
      fail(ErrorKind::kInput, "unknown group: " + name);
    }
  }
  auto r = finite_sectors(G);
  auto pair_name = [&](std::pair<int, int> p) { return "(" + G.names[p.first] + "," + G.names[p.second] + ")"; };
  if (json) {
    Json cls = Json::array();
    for (const auto& c : r.classes) {
      Json gens = Json::array();
      for (const auto& m : c.stabilizer_generators) gens.push_back(m);
      cls.push_back({{"representative", {G.names[c.representative.first], G.names[c.representative.second]}},
                     {"size", c.size},
                     {"orbit", c.orbit},
                     {"stabilizer_index", c.stabilizer_index},
                     {"stabilizer_generators", gens}});
    }
    return {dump({{"object", "sectors"},
                  {"order", r.order},
                  {"commuting_pairs", r.commuting_pairs},
                  {"conjugacy_classes", r.conjugacy_classes},
                  {"burnside", r.burnside},
                  {"pair_classes", r.pair_classes},
                  {"orbits", r.orbits},
                  {"orbit_stabilizer", r.orbit_stabilizer},
                  {"classes", cls}})};
  }
  std::string out = kv_lines({{"order", std::to_string(r.order)},
                              {"commuting pairs", std::to_string(r.commuting_pairs)},
                              {"conjugacy classes", std::to_string(r.conjugacy_classes)},
                              {"Burnside", r.burnside ? "yes" : "no"},
                              {"pair classes", std::to_string(r.pair_classes)},
                              {"SL2(Z) orbits", std::to_string(r.orbits)},
                              {"orbit-stabilizer", r.orbit_stabilizer ? "yes" : "no"}});
  Table t;
  t.row({"class", "size", "orbit", "index", "stabilizer generators"});
  for (const auto& c : r.classes) {
    std::string gens;
    for (const auto& m : c.stabilizer_generators) gens += (gens.empty() ? "" : " ") + matrix_text(m);
    t.row({pair_name(c.representative), std::to_string(c.size), std::to_string(c.orbit),
           std::to_string(c.stabilizer_index), gens});
  }
  return {out + t.str()};
}

const std::map<std::string, std::function<EmitResult(const Json&, bool)>>& table() {
  static const std::map<std::string, std::function<EmitResult(const Json&, bool)>> t{
      {"modforms", emit_modforms}, {"sigma", emit_sigma}, {"fgl", emit_fgl},   {"fermion", emit_fermion},
      {"euler", emit_euler},       {"derham", emit_derham}, {"sheaf", emit_sheaf}, {"sectors", emit_sectors},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& emit_commands() {
  static const std::vector<std::string> names{"modforms", "sigma", "fgl",   "fermion",
                                              "euler",    "derham", "sheaf", "sectors"};
  return names;
}

EmitResult emit(const std::string& command, const Json& args, bool json) {
  auto it = table().find(command);
  require(it != table().end(), ErrorKind::kInput, "unknown command: " + command);
  require(args.is_object(), ErrorKind::kInput, "arguments must be a JSON object");
  return it->second(args, json);
}

}  // namespace ellforge
