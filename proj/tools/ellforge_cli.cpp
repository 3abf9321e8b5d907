// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

// ellforge command-line tool. Exit codes: 0 success or passing check,
// 1 failing check, 2 usage or input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ellforge.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  bool json = false;
  bool timing = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

// Owns a library-allocated string.
struct LibString {
  char* p = nullptr;
  ~LibString() { ef_string_free(p); }
};

int report_error(ef_status s) {
  std::cerr << "ellforge: " << ef_status_name(s) << ": " << ef_last_error() << "\n";
  return kExitUsage;
}

void add_common(Json& args, const Globals& g) {
  if (g.seed) args["seed"] = *g.seed;
  if (g.tol) args["tol"] = *g.tol;
}

int run_emit(const std::string& command, const Json& args, const Globals& g) {
  LibString out;
  int passed = 1;
  ef_status s = ef_emit(command.c_str(), args.dump().c_str(), g.json ? 1 : 0, &out.p, &passed);
  if (s != EF_OK) return report_error(s);
  std::cout << out.p;
  return passed ? 0 : kExitFail;
}

template <class T>
void set_if(Json& args, const char* key, const std::optional<T>& v) {
  if (v) args[key] = *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ellforge: equivariant elliptic cohomology formulas", "ellforge"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--timing", g.timing, "include runtimes in check reports");
  app.add_option("--seed", g.seed, "64-bit seed for sampled checks");
  app.add_option("--tol", g.tol, "override the primary tolerance")->check(CLI::PositiveNumber);

  std::function<int()> action;

  // modforms
  auto* mf = app.add_subcommand("modforms", "Eisenstein series and the discriminant");
  std::optional<int> mf_k, mf_samples;
  int mf_order = 20;
  bool mf_delta = false, mf_check = false;
  auto* mf_e = mf->add_option("--eisenstein", mf_k, "weight k of G_k");
  auto* mf_d = mf->add_flag("--delta", mf_delta, "the discriminant");
  mf_e->excludes(mf_d);
  mf->add_option("--order", mf_order, "q-order")->capture_default_str();
  mf->add_flag("--check-weight", mf_check, "sample the SL2(Z) x C^* action; exit 0/1");
  mf->add_option("--samples", mf_samples, "number of samples");
  mf->callback([&] {
    action = [&] {
      if (!mf_k && !mf_delta) throw CLI::ValidationError("modforms", "needs --eisenstein k or --delta");
      Json a{{"order", mf_order}};
      set_if(a, "eisenstein", mf_k);
      if (mf_delta) a["delta"] = true;
      if (mf_check) a["check_weight"] = true;
      set_if(a, "samples", mf_samples);
      add_common(a, g);
      return run_emit("modforms", a, g);
    };
  });

  // sigma
  auto* sg = app.add_subcommand("sigma", "q-expansion of the sigma function");
  std::vector<int> sg_qexp;
  bool sg_raw = false;
  sg->add_option("--qexp", sg_qexp, "Nq Nz")->expected(2)->required();
  sg->add_flag("--raw", sg_raw, "raw product without normalization");
  sg->callback([&] {
    action = [&] {
      Json a{{"qexp", sg_qexp}};
      if (sg_raw) a["raw"] = true;
      return run_emit("sigma", a, g);
    };
  });

  // fgl
  auto* fg = app.add_subcommand("fgl", "formal group law of a coordinate");
  std::string fg_coord;
  int fg_degree = 0;
  std::optional<int> fg_q;
  fg->add_option("--coordinate", fg_coord, "additive | multiplicative | sigma")
      ->required()
      ->check(CLI::IsMember({"additive", "multiplicative", "sigma"}));
  fg->add_option("--degree", fg_degree, "total degree D")->required();
  fg->add_option("--qorder", fg_q, "q-order of the coefficients");
  fg->callback([&] {
    action = [&] {
      Json a{{"coordinate", fg_coord}, {"degree", fg_degree}};
      set_if(a, "qorder", fg_q);
      return run_emit("fgl", a, g);
    };
  });

  // fermion
  auto* fe = app.add_subcommand("fermion", "free-fermion Pfaffians and the vacuum character");
  bool fe_closed = false, fe_ratio = false;
  std::optional<int> fe_char, fe_M;
  std::vector<double> fe_a1, fe_a2, fe_b1, fe_b2;
  std::vector<std::string> fe_X;
  std::vector<int> fe_order;
  std::string fe_tau = "i";
  std::optional<std::string> fe_l2;
  auto* o_closed = fe->add_flag("--closed", fe_closed, "closed form prod lambda2 s(z_j)");
  auto* o_ratio = fe->add_flag("--ratio", fe_ratio, "truncated eigenvalue ratio against the closed form");
  auto* o_char = fe->add_option("--character", fe_char, "rank n of the vacuum character");
  o_closed->excludes(o_ratio)->excludes(o_char);
  o_ratio->excludes(o_char);
  fe->add_option("--alpha1", fe_a1, "holonomies alpha1_j")->delimiter(',');
  fe->add_option("--alpha2", fe_a2, "holonomies alpha2_j")->delimiter(',');
  fe->add_option("--X", fe_X, "Lie algebra parameters X_j as a+bi")->delimiter(',');
  fe->add_option("--base-alpha1", fe_b1, "reference sector for --ratio")->delimiter(',');
  fe->add_option("--base-alpha2", fe_b2, "reference sector for --ratio")->delimiter(',');
  fe->add_option("--tau", fe_tau, "tau as a+bi")->capture_default_str();
  fe->add_option("--lambda2", fe_l2, "lambda2 as a+bi (default 1)");
  fe->add_option("--M", fe_M, "truncation of the eigenvalue product");
  fe->add_option("--order", fe_order, "Nq Nz for --character")->expected(2);
  fe->callback([&] {
    action = [&] {
      Json a = Json::object();
      if (fe_char) {
        a["character"] = *fe_char;
        if (!fe_order.empty()) a["order"] = fe_order;
        return run_emit("fermion", a, g);
      }
      if (!fe_closed && !fe_ratio) throw CLI::ValidationError("fermion", "needs --closed, --ratio or --character");
      a[fe_closed ? "closed" : "ratio"] = true;
      a["tau"] = fe_tau;
      set_if(a, "lambda2", fe_l2);
      a["alpha1"] = fe_a1;
      if (!fe_a2.empty()) a["alpha2"] = fe_a2;
      if (!fe_X.empty()) a["X"] = fe_X;
      if (!fe_b1.empty()) a["base_alpha1"] = fe_b1;
      if (!fe_b2.empty()) a["base_alpha2"] = fe_b2;
      set_if(a, "M", fe_M);
      return run_emit("fermion", a, g);
    };
  });

  // euler
  auto* eu = app.add_subcommand("euler", "elliptic Euler class in nilpotent Chern roots");
  int eu_m = 0, eu_D = 0, eu_q = 0;
  bool eu_corr = false;
  eu->add_option("--roots", eu_m, "number of Chern roots")->required();
  eu->add_option("--nilpotency", eu_D, "total-degree bound")->required();
  eu->add_option("--qorder", eu_q, "q-order")->required();
  eu->add_flag("--corrected", eu_corr, "remove the two anomaly factors");
  eu->callback([&] {
    action = [&] {
      Json a{{"roots", eu_m}, {"nilpotency", eu_D}, {"qorder", eu_q}};
      if (eu_corr) a["corrected"] = true;
      return run_emit("euler", a, g);
    };
  });

  // derham
  auto* dr = app.add_subcommand("derham", "Weil and Cartan models");
  std::optional<std::string> dr_group;
  bool dr_rel = false, dr_coh = false;
  std::optional<int> dr_degree, dr_sweight, dr_basic, dr_samples;
  std::vector<int> dr_weights;
  dr->add_option("--group", dr_group, "u1 | su2 | u2")->check(CLI::IsMember({"u1", "su2", "u2"}));
  auto* o_rel = dr->add_flag("--check-relations", dr_rel, "check the model relations; exit 0/1");
  auto* o_coh = dr->add_flag("--cohomology", dr_coh, "U(1)-equivariant cohomology of C^k");
  auto* o_basic = dr->add_option("--basic", dr_basic, "basis of the basic subspace of W(g) in this degree");
  o_rel->excludes(o_coh)->excludes(o_basic);
  o_coh->excludes(o_basic);
  dr->add_option("--weights", dr_weights, "U(1) weights")->delimiter(',');
  dr->add_option("--degree", dr_degree, "maximal degree");
  dr->add_option("--sweight", dr_sweight, "bound on the polynomial degree of forms");
  dr->add_option("--samples", dr_samples, "random elements per relation");
  dr->callback([&] {
    action = [&] {
      Json a = Json::object();
      if (dr_coh) {
        a["cohomology"] = true;
        a["weights"] = dr_weights;
      } else {
        if (!dr_group) throw CLI::ValidationError("derham", "needs --group");
        a["group"] = *dr_group;
        if (dr_basic) {
          a["basic"] = *dr_basic;
        } else if (dr_rel) {
          a["check_relations"] = true;
          if (!dr_weights.empty()) a["weights"] = dr_weights;
        } else {
          throw CLI::ValidationError("derham", "needs --check-relations, --cohomology or --basic");
        }
      }
      set_if(a, "degree", dr_degree);
      set_if(a, "sweight", dr_sweight);
      set_if(a, "samples", dr_samples);
      add_common(a, g);
      return run_emit("derham", a, g);
    };
  });

  // sheaf
  auto* sh = app.add_subcommand("sheaf", "local sections of the circle-action model");
  std::vector<int> sh_weights;
  std::string sh_anchor = "0,0";
  bool sh_sections = false;
  std::optional<int> sh_degree, sh_sweight;
  sh->add_option("--weights", sh_weights, "weights of C^k")->delimiter(',')->required();
  sh->add_option("--anchor", sh_anchor, "h as x,y with rational entries")->capture_default_str();
  sh->add_flag("--sections", sh_sections, "local sections at the anchor")->required();
  sh->add_option("--degree", sh_degree, "maximal cocycle degree");
  sh->add_option("--sweight", sh_sweight, "bound on the polynomial degree of forms");
  sh->callback([&] {
    action = [&] {
      Json a{{"weights", sh_weights}, {"anchor", sh_anchor}, {"sections", sh_sections}};
      set_if(a, "degree", sh_degree);
      set_if(a, "sweight", sh_sweight);
      return run_emit("sheaf", a, g);
    };
  });

  // sectors
  auto* se = app.add_subcommand("sectors", "commuting pairs of a finite group");
  std::optional<std::string> se_file, se_group;
  auto* o_file = se->add_option("--group-table", se_file, "JSON {\"order\": n, \"mul\": [[...]]}");
  auto* o_group = se->add_option("--group", se_group, "built-in group: Z/n or Sn (n <= 4)");
  o_file->excludes(o_group);
  se->callback([&] {
    action = [&] {
      Json a = Json::object();
      if (se_file) {
        std::ifstream in(*se_file);
        if (!in) {
          std::cerr << "ellforge: load error: cannot read " << *se_file << "\n";
          return kExitUsage;
        }
        Json table = Json::parse(in, nullptr, false);
        if (table.is_discarded()) {
          std::cerr << "ellforge: load error: " << *se_file << " is not valid JSON\n";
          return kExitUsage;
        }
        a["group_table"] = table;
      } else if (se_group) {
        a["group"] = *se_group;
      } else {
        throw CLI::ValidationError("sectors", "needs --group-table or --group");
      }
      return run_emit("sectors", a, g);
    };
  });

  // check
  auto* ck = app.add_subcommand("check", "run a named check suite");
  std::optional<std::string> ck_suite;
  bool ck_list = false;
  ck->add_option("suite", ck_suite, "suite name");
  ck->add_flag("--list", ck_list, "list the suites");
  ck->callback([&] {
    action = [&] {
      if (ck_list) {
        LibString out;
        ef_status s = ef_check_list(&out.p);
        if (s != EF_OK) return report_error(s);
        std::string text = out.p;
        if (g.json) {
          Json names = Json::array();
          std::istringstream is(text);
          for (std::string line; std::getline(is, line);) names.push_back(line.substr(0, line.find('\t')));
          std::cout << names.dump() << "\n";
        } else {
          std::cout << text;
        }
        return 0;
      }
      if (!ck_suite) throw CLI::ValidationError("check", "needs a suite name or --list");
      LibString out;
      int passed = 0;
      ef_status s = ef_check_run(ck_suite->c_str(), g.seed.value_or(20260101), g.tol.value_or(0), g.json ? 1 : 0,
                                 g.timing ? 1 : 0, &passed, &out.p);
      if (s != EF_OK) return report_error(s);
      std::cout << out.p;
      return passed ? 0 : kExitFail;
    };
  });

  try {
    app.parse(argc, argv);
    return action ? action() : kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kExitUsage;
  }
}
