#!/usr/bin/env python3
# Copyright 2026 The ellforge Authors
# SPDX-License-Identifier: Apache-2.0

"""Independent generator for the oracle-backed golden files.

Recomputes each expansion from its defining formula in exact rational
arithmetic (fractions) and renders it in the CLI's output format, without
using the library. Usage: golden_oracle.py OUTDIR
"""

import json
import math
import sys
from fractions import Fraction
from pathlib import Path


def frac(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def power(var, e):
    return "1" if e == 0 else var if e == 1 else f"{var}^{e}"


def table(rows):
    widths = [0] * max(len(r) for r in rows)
    for r in rows:
        for k, c in enumerate(r):
            widths[k] = max(widths[k], len(c))
    out = []
    for r in rows:
        line = ""
        for k, c in enumerate(r):
            line += c.ljust(widths[k]) if k == 0 else "  " + c.rjust(widths[k])
        out.append(line.rstrip() + "\n")
    return "".join(out)


# Bivariate truncated series: {(z_exponent, q_exponent): Fraction}.
def mul(a, b, Z, Q):
    out = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            if i + k <= Z and j + l <= Q:
                out[(i + k, j + l)] = out.get((i + k, j + l), 0) + x * y
    return {k: v for k, v in out.items() if v}


def exp_z(sign, Z):
    return {(k, 0): Fraction(sign**k, math.factorial(k)) for k in range(Z + 1)}


def sigma_reduced(Z, Q):
    """(1 - e^-z) prod_n (1 - q^n e^-z)(1 - q^n e^z) / (1 - q^n)^2."""
    one = {(0, 0): Fraction(1)}
    s = {k: -v for k, v in exp_z(-1, Z).items()}
    s[(0, 0)] = s.get((0, 0), 0) + 1
    s = {k: v for k, v in s.items() if v}
    for n in range(1, Q + 1):
        for sign in (-1, 1):
            f = dict(one)
            for (k, _), v in exp_z(sign, Z).items():
                f[(k, n)] = f.get((k, n), 0) - v
            s = mul(s, f, Z, Q)
        # 1 / (1 - q^n)^2 = sum (m + 1) q^{nm}
        g = {(0, n * m): Fraction(m + 1) for m in range(Q // n + 1)}
        s = mul(s, g, Z, Q)
    return s


def sigma_table(Q, Z):
    s = sigma_reduced(Z, Q)
    rows = [["term"] + [power("q", k) for k in range(Q + 1)]]
    for e in range(Z + 1):
        rows.append([power("z", e)] + [frac(s.get((e, k), 0)) for k in range(Q + 1)])
    return "sigma / lambda2\n" + table(rows) + f"O({power('z', Z + 1)})\n"


def euler_table(m, D, Q):
    s = sigma_reduced(D, Q)
    # prod_j s(w_j) as {exponent tuple: {q: coeff}}
    terms = {(): {0: Fraction(1)}}
    for _ in range(m):
        nxt = {}
        for mono, c in terms.items():
            for (e, j), v in s.items():
                if sum(mono) + e > D:
                    continue
                key = mono + (e,)
                bucket = nxt.setdefault(key, {})
                for qe, cv in c.items():
                    if qe + j <= Q:
                        bucket[qe + j] = bucket.get(qe + j, 0) + cv * v
        terms = {k: {q: v for q, v in c.items() if v} for k, c in nxt.items()}
        terms = {k: c for k, c in terms.items() if c}
    names = [f"w{j + 1}" for j in range(m)]

    def name(mono):
        parts = [power(names[i], e) for i, e in enumerate(mono) if e]
        return "*".join(parts) if parts else "1"

    order = sorted(terms, key=lambda mono: (sum(mono), tuple(-e for e in mono)))
    rows = [["monomial"] + [power("q", k) for k in range(Q + 1)]]
    for mono in order:
        rows.append([name(mono)] + [frac(terms[mono].get(k, 0)) for k in range(Q + 1)])
    head = f"twisted Euler class, lambda2^{m} times\n"
    return head + table(rows) + f"O(total degree {D + 1} in {','.join(names)})\n"


def bernoulli(n):
    B = [Fraction(1)]
    for k in range(1, n + 1):
        B.append(-sum(math.comb(k + 1, j) * B[j] for j in range(k)) / (k + 1))
    return B[n]


def eisenstein_json(k, order):
    coeffs = [[0, frac(-bernoulli(k) / (2 * k))]]
    for n in range(1, order + 1):
        coeffs.append([n, frac(sum(d ** (k - 1) for d in range(1, n + 1) if n % d == 0))])
    obj = {
        "object": f"G{k}",
        "weight": k,
        "group": "SL2(Z)",
        "quasimodular": k == 2,
        "qexp": {"var": "q", "min": 0, "trunc": order, "coeffs": coeffs},
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


def additive_fgl_json(D):
    one = {"var": "q", "min": 0, "trunc": None, "coeffs": [[0, "1"]]}
    # monomials ascending with the first variable's exponent most significant
    F = {"vars": ["x", "y"], "trunc": D, "coeffs": [[[0, 1], one], [[1, 0], one]]}
    obj = {"object": "fgl", "provenance": "additive", "degree": D, "F": F}
    return json.dumps(obj, separators=(",", ":")) + "\n"


def main():
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "euler_roots2_nil4_q2.txt": euler_table(2, 4, 2),
        "sigma_qexp_3_5.txt": sigma_table(3, 5),
        "modforms_g4_order10.json": eisenstein_json(4, 10),
        "fgl_additive_d3.json": additive_fgl_json(3),
    }
    for name, text in files.items():
        (out / name).write_text(text)


if __name__ == "__main__":
    main()
