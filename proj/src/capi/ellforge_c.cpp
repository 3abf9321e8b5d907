// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "ellforge.h"

#include <cstring>
#include <sstream>
#include <string>

#include "core/checks.hpp"
#include "core/emit.hpp"
#include "core/modforms.hpp"
#include "core/sigma.hpp"

struct ef_series {
  ellforge::QSeries s;
};

struct ef_lattice {
  ellforge::Lattice lat;
};

namespace {

thread_local std::string last_error;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs body, translating exceptions into status codes.
template <class F>
ef_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return EF_OK;
  } catch (const ellforge::Error& e) {
    last_error = e.what();
    return static_cast<ef_status>(static_cast<int>(e.kind()));
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return EF_ERR_INPUT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return EF_ERR_UNKNOWN;
  } catch (...) {
    last_error = "unknown failure";
    return EF_ERR_UNKNOWN;
  }
}

void need(const void* p, const char* what) {
  ellforge::require(p != nullptr, ellforge::ErrorKind::kInput, std::string("null argument: ") + what);
}

}  // namespace

extern "C" {

const char* ef_version(void) { return "0.1.0"; }

const char* ef_status_name(ef_status s) {
  switch (s) {
    case EF_OK:
      return "ok";
    case EF_ERR_UNKNOWN:
      return "unknown";
    default:
      if (s >= EF_ERR_INPUT && s <= EF_ERR_INTERNAL)
        return ellforge::error_kind_name(static_cast<ellforge::ErrorKind>(static_cast<int>(s)));
      return "invalid status";
  }
}

const char* ef_last_error(void) { return last_error.c_str(); }

void ef_string_free(char* s) { std::free(s); }

ef_status ef_series_eisenstein(int k, int order, ef_series** out) {
  return guard([&] {
    need(out, "out");
    *out = new ef_series{ellforge::eisenstein_q(k, order).qexp};
  });
}

ef_status ef_series_delta(int order, ef_series** out) {
  return guard([&] {
    need(out, "out");
    *out = new ef_series{ellforge::delta_q(order).qexp};
  });
}

ef_status ef_series_from_json(const char* json, ef_series** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new ef_series{ellforge::rational_series_from_json(ellforge::Json::parse(json))};
  });
}

ef_status ef_series_to_json(const ef_series* s, char** out) {
  return guard([&] {
    need(s, "series");
    need(out, "out");
    *out = copy_string(ellforge::dump_canonical(ellforge::to_json(s->s)));
  });
}

ef_status ef_series_coeff(const ef_series* s, int e, char** out) {
  return guard([&] {
    need(s, "series");
    need(out, "out");
    ellforge::require(s->s.exact() || e <= s->s.trunc(), ellforge::ErrorKind::kDomain,
                      "exponent beyond the truncation");
    *out = copy_string(ellforge::to_string(s->s.coeff(e)));
  });
}

ef_status ef_series_mul(const ef_series* a, const ef_series* b, ef_series** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = new ef_series{a->s * b->s};
  });
}

void ef_series_free(ef_series* s) { delete s; }

ef_status ef_lattice_from_tau(double tau_re, double tau_im, ef_lattice** out) {
  return guard([&] {
    need(out, "out");
    *out = new ef_lattice{ellforge::lattice_from_tau({tau_re, tau_im})};
  });
}

ef_status ef_lattice_new(double l1_re, double l1_im, double l2_re, double l2_im, ef_lattice** out) {
  return guard([&] {
    need(out, "out");
    *out = new ef_lattice{ellforge::make_lattice({l1_re, l1_im}, {l2_re, l2_im})};
  });
}

ef_status ef_lattice_eisenstein(const ef_lattice* lat, int k, int order, double* re, double* im) {
  return guard([&] {
    need(lat, "lattice");
    need(re, "re");
    need(im, "im");
    ellforge::Complex v = ellforge::eisenstein_q(k, order).evaluate(lat->lat);
    *re = v.real();
    *im = v.imag();
  });
}

ef_status ef_lattice_sigma(const ef_lattice* lat, double z_re, double z_im, double* re, double* im) {
  return guard([&] {
    need(lat, "lattice");
    need(re, "re");
    need(im, "im");
    int M = ellforge::sigma_product_length(std::abs(lat->lat.q()), 17);
    ellforge::Complex v = ellforge::sigma_num(lat->lat, {z_re, z_im}, M);
    *re = v.real();
    *im = v.imag();
  });
}

void ef_lattice_free(ef_lattice* lat) { delete lat; }

ef_status ef_emit(const char* command, const char* args_json, int json, char** out, int* passed) {
  return guard([&] {
    need(command, "command");
    need(out, "out");
    ellforge::Json args = args_json ? ellforge::Json::parse(args_json) : ellforge::Json::object();
    auto r = ellforge::emit(command, args, json != 0);
    if (passed) *passed = r.passed ? 1 : 0;
    *out = copy_string(r.out);
  });
}

ef_status ef_check_list(char** out) {
  return guard([&] {
    need(out, "out");
    std::ostringstream os;
    for (const auto& s : ellforge::check_suites()) os << s << "\t" << ellforge::check_description(s) << "\n";
    *out = copy_string(os.str());
  });
}

ef_status ef_check_run(const char* suite, uint64_t seed, double tol, int json, int timing, int* passed,
                       char** report) {
  return guard([&] {
    need(suite, "suite");
    need(report, "report");
    ellforge::CheckOptions opts;
    opts.seed = seed;
    if (tol > 0) opts.tol = tol;
    auto r = ellforge::run_check(suite, opts);
    if (passed) *passed = r.passed ? 1 : 0;
    *report = copy_string(json ? ellforge::dump_canonical(ellforge::to_json(r, timing != 0)) + "\n"
                               : ellforge::to_text(r, timing != 0));
  });
}

}  // extern "C"
