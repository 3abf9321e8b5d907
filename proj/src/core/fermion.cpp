// Copyright 2026 The ellforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/fermion.hpp"

#include <cmath>

namespace ellforge {

namespace {

constexpr double kFermionXScale = 1.0;

void check_index(const SectorDatum& d, int j) {
  require(j >= 1 && j <= d.rank, ErrorKind::kInput,
          "weight index " + std::to_string(j) + " outside 1.." + std::to_string(d.rank));
}

// Product length for s(z) at |q| with |Re z| growth absorbed.
int product_length(Complex q, Complex z) {
  double lq = -std::log(std::abs(q));
  return sigma_product_length(std::abs(q), 17) + static_cast<int>(std::ceil(std::abs(z.real()) / lq)) + 2;
}

Complex pf_numeric(const SectorDatum& d) {
  Complex q = d.lattice.q();
  require(std::abs(q) < 1, ErrorKind::kDomain, "|q| >= 1");
  Complex v = 1;
  for (int j = 1; j <= d.rank; ++j) {
    Complex z = sector_z(d, j);
    v *= d.lattice.l2 * sigma_reduced(q, z, product_length(q, z));
  }
  return v;
}

std::vector<std::string> z_vars(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("z" + std::to_string(i));
  return v;
}

QMulti pf_formal(int n, int nq, int nz) {
  require(n >= 1 && n <= kMaxVars, ErrorKind::kInput, "rank must be in 1..8");
  require(nz >= n, ErrorKind::kInput, "total degree below the rank");
  require(nq >= 0, ErrorKind::kInput, "negative q-order");
  auto vars = z_vars(n);
  int t = nz - n;
  // sum_i E(z_i), E(z) = linear z - sum_k c_k G_2k z^2k
  QMulti S(vars, t);
  for (int i = 0; i < n; ++i) {
    if (t >= 1) S.add_to(mono_unit(i), QSeries::constant(sigma_linear_constant(), "q", nq));
    for (int k = 1; 2 * k <= t; ++k)
      S.add_to(mono_unit(i, 2 * k), eisenstein_q(2 * k, nq).qexp.scaled(Rational(-sigma_exp_constant(k))));
  }
  QMulti e = exp_series(S, nq);
  Monomial lead = 0;
  for (int i = 0; i < n; ++i) lead += mono_unit(i);
  QMulti out(vars, nz);
  for (const auto& [m, c] : e.terms())
    if (mono_degree(m) + n <= nz) out.set(m + lead, c);
  return out;
}

}  // namespace

SectorDatum make_sector(const Lattice& lat, std::vector<double> alpha1, std::vector<double> alpha2,
                        std::vector<Complex> X) {
  require(!alpha1.empty(), ErrorKind::kInput, "sector rank must be >= 1");
  require(alpha1.size() == alpha2.size(), ErrorKind::kInput, "alpha1 and alpha2 differ in length");
  if (X.empty()) X.assign(alpha1.size(), Complex(0));
  require(X.size() == alpha1.size(), ErrorKind::kInput, "X has the wrong length");
  for (std::size_t i = 0; i < alpha1.size(); ++i)
    require(std::isfinite(alpha1[i]) && std::isfinite(alpha2[i]) && std::isfinite(std::abs(X[i])),
            ErrorKind::kInput, "sector data must be finite");
  SectorDatum d;
  d.rank = static_cast<int>(alpha1.size());
  d.alpha1 = std::move(alpha1);
  d.alpha2 = std::move(alpha2);
  d.X = std::move(X);
  d.lattice = lat;
  return d;
}

double fermion_x_scale() { return kFermionXScale; }

Complex sector_u(const SectorDatum& d, int j) {
  check_index(d, j);
  const auto& L = d.lattice;
  return L.l2 * d.alpha1[j - 1] - L.l1 * d.alpha2[j - 1] + kFermionXScale * d.X[j - 1];
}

Complex sector_z(const SectorDatum& d, int j) { return kTwoPiI * sector_u(d, j) / d.lattice.l2; }

Complex weight_eigenvalue(const SectorDatum& d, int j, long n, long m) {
  check_index(d, j);
  const auto& L = d.lattice;
  Complex w = (double(n) - d.alpha2[j - 1]) * L.l1 + (double(m) + d.alpha1[j - 1]) * L.l2 +
              kFermionXScale * d.X[j - 1];
  return (kPi / L.vol()) * w;
}

Complex pf_truncated_ratio(const SectorDatum& a, const SectorDatum& b, int M) {
  require(a.rank == b.rank, ErrorKind::kInput, "sector ranks differ");
  require(a.lattice.l1 == b.lattice.l1 && a.lattice.l2 == b.lattice.l2, ErrorKind::kInput,
          "sector data live on different lattices");
  require(M >= 0, ErrorKind::kInput, "negative window");
  const auto& L = a.lattice;
  double eps = 1e-12 * (std::abs(L.l1) + std::abs(L.l2));
  int rows = 2 * M + 1;
  Complex total = 0;
  for (int j = 1; j <= a.rank; ++j) {
    Complex ua = sector_u(a, j), ub = sector_u(b, j);
    std::vector<Complex> row_log(rows);
    std::vector<std::string> poles(rows);
    parallel_for(rows, [&](int r) {
      long n = r - M;
      Complex acc = 0, comp = 0;
      for (long m = -M; m <= M; ++m) {
        Complex w = double(n) * L.l1 + double(m) * L.l2;
        Complex ea = w + ua, eb = w + ub;
        if (std::abs(ea) < eps || std::abs(eb) < eps) {
          poles[r] = "zero eigenvalue in window at (j,n,m) = (" + std::to_string(j) + "," + std::to_string(n) +
                     "," + std::to_string(m) + ") of datum " + (std::abs(ea) < eps ? "a" : "b");
          return;
        }
        if (ea == eb) continue;
        Complex y = std::log(ea / eb) - comp;
        Complex t = acc + y;
        comp = (t - acc) - y;
        acc = t;
      }
      row_log[r] = acc;
    });
    for (int r = 0; r < rows; ++r) {
      if (!poles[r].empty()) fail(ErrorKind::kPole, poles[r]);
      total += row_log[r];
    }
  }
  return std::exp(total);
}

Complex window_anomaly(const SectorDatum& a, const SectorDatum& b) {
  require(a.rank == b.rank, ErrorKind::kInput, "sector ranks differ");
  const auto& L = a.lattice;
  Complex tau = L.tau();
  Complex W = 4.0 * std::atanh(tau) / (L.l2 * L.l2 * tau);
  Complex e = 0;
  for (int j = 1; j <= a.rank; ++j) {
    Complex ua = sector_u(a, j), ub = sector_u(b, j);
    e += (sector_z(a, j) - sector_z(b, j)) / 2.0 + W * (ua * ua - ub * ub) / 2.0;
  }
  return std::exp(e);
}

PfaffianValue pf_closed(const SectorDatum& d, PfMode mode, int nq, int nz) {
  PfaffianValue v;
  v.mode = mode;
  v.lambda2_power = d.rank;
  if (mode == PfMode::kNumeric) {
    v.value = pf_numeric(d);
    v.normalization = "Z = (pi/vol)^dim V, cancelled against the eigenvalue normalization; value = prod lambda2 s(z_j)";
  } else {
    v.series = pf_formal(d.rank, nq, nz);
    v.normalization = "lambda2^" + std::to_string(d.rank) + " prod s(z_j), symbolic z_j";
  }
  return v;
}

VacuumCharacter vacuum_character(int n, int nq, int nz) {
  require(n >= 1 && n <= kMaxVars, ErrorKind::kInput, "rank must be in 1..8");
  require(nz >= n, ErrorKind::kInput, "total degree below the rank");
  ZSeries s = sigma_product(std::max(nq, 1), nz).expansion;
  auto vars = z_vars(n);
  QMulti chi = QMulti::constant(vars, QSeries::constant(1, "q", nq), nz);
  for (int i = 0; i < n; ++i) {
    QMulti f(vars, nz);
    for (const auto& [e, c] : s.terms()) f.set(mono_unit(i, e), c.truncated(nq));
    chi = chi * f;
  }
  return VacuumCharacter{n, n, chi};
}

SectorDatum act(const SL2Z& g, const SectorDatum& d) {
  SectorDatum out = d;
  out.lattice = act(g, 1.0, d.lattice);
  for (int j = 0; j < d.rank; ++j) {
    out.alpha1[j] = double(g.a) * d.alpha1[j] + double(g.b) * d.alpha2[j];
    out.alpha2[j] = double(g.c) * d.alpha1[j] + double(g.d) * d.alpha2[j];
  }
  return out;
}

LooijengaReport looijenga_check(const SectorDatum& d, const std::vector<CoweightShift>& shifts,
                                const std::vector<SL2Z>& gammas, Rng& rng, int alpha_samples) {
  LooijengaReport rep;
  Complex base = pf_numeric(d);
  require(std::abs(base) >= 1e-10, ErrorKind::kNearZero, "Pfaffian value below 1e-10");
  for (const auto& s : shifts) {
    require(static_cast<int>(s.k1.size()) == d.rank && static_cast<int>(s.k2.size()) == d.rank,
            ErrorKind::kInput, "coweight shift has the wrong length");
    SectorDatum sh = d;
    Complex predicted = 1;
    for (int j = 0; j < d.rank; ++j) {
      sh.alpha1[j] += double(s.k1[j]);
      sh.alpha2[j] += double(s.k2[j]);
      // alpha1 + k1 moves z by 2 pi i k1, alpha2 + k2 by -2 pi i k2 tau
      predicted *= quasi_period_multiplier(d.lattice, sector_z(d, j + 1), s.k1[j], -s.k2[j]);
    }
    Complex measured = pf_numeric(sh) / base;
    rep.shifts.push_back({s, measured, predicted, std::abs(measured - predicted) / std::abs(predicted)});
  }
  std::uniform_real_distribution<double> al(0.05, 0.45);
  std::vector<SectorDatum> samples;
  for (int i = 0; i < alpha_samples; ++i) {
    SectorDatum s = d;
    for (int j = 0; j < d.rank; ++j) {
      s.alpha1[j] = al(rng);
      s.alpha2[j] = al(rng);
    }
    samples.push_back(s);
  }
  for (const auto& g : gammas) {
    GammaResult gr{g, {}, 0, false};
    Complex mean = 0;
    for (const auto& s : samples) {
      Complex v = pf_numeric(s);
      require(std::abs(v) >= 1e-10, ErrorKind::kNearZero, "Pfaffian value below 1e-10");
      gr.factors.push_back(pf_numeric(act(g, s)) / v);
      mean += gr.factors.back();
    }
    if (!gr.factors.empty()) {
      mean /= double(gr.factors.size());
      for (const auto& f : gr.factors) gr.spread = std::max(gr.spread, std::abs(f - mean) / std::abs(mean));
    }
    gr.alpha_independent = gr.spread < rep.spread_tol;
    rep.gammas.push_back(gr);
  }
  rep.passed = true;
  for (const auto& s : rep.shifts)
    if (!(s.rel_error <= rep.shift_tol)) rep.passed = false;
  for (const auto& g : rep.gammas)
    if (g.gamma.c == 0 && !g.alpha_independent) rep.passed = false;
  return rep;
}

}  // namespace ellforge
