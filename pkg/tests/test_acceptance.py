"""Acceptance criteria, one test each, with their time limits.

Every test prints a ``[PASS]`` or ``[FAIL]`` line; the lines are repeated in
the terminal summary.  Run on its own with ``pytest tests/test_acceptance.py -s``
or ``python3 tests/test_acceptance.py``.
"""

import sys
import time
from contextlib import contextmanager

import pytest

import conftest
import oracles
from fquad.functors import functor_K, functor_kd_m, functor_L, functor_layer, functor_m, iso_alpha
from fquad.quadspace import hyperbolic_power, parse_space
from fquad.verify import (
    DEFAULT_ROSTER,
    SMALL_ROSTER,
    check_category_laws,
    check_decomposition,
    check_KL_ses,
    check_layers,
    check_mu_complex,
    check_s2_ses,
    check_simplicity_evidence,
    layer_witness,
    witt_exhaustive,
)

ROSTER = list(DEFAULT_ROSTER)


@contextmanager
def criterion(number, text, limit_s):
    state = {"ok": False}
    t0 = time.perf_counter()
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - t0
        in_time = elapsed < limit_s
        ok = state["ok"] and in_time
        note = "" if in_time else f", over the {limit_s:g} s limit"
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text} ({elapsed:.2f} s{note})"
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
    assert in_time, line


def failed_rows(*reports):
    return [(r.check, row) for r in reports for row in r.rows if not row["ok"]]


def test_criterion_01_embedding_counts():
    with criterion(1, "dim iso_a(W) equals the count of q=a nonzero vectors", 1) as c:
        for name in ROSTER:
            W = parse_space(name)
            for a in (0, 1):
                assert iso_alpha(a).dim(W) == oracles.count_q(W, a), (name, a)
        H0, H1, H00 = (parse_space(s) for s in ("H0", "H1", "H0+H0"))
        got = [iso_alpha(1).dim(H0), iso_alpha(0).dim(H0), iso_alpha(1).dim(H1),
               iso_alpha(0).dim(H1), iso_alpha(0).dim(H00), iso_alpha(1).dim(H00)]
        assert got == [1, 2, 3, 0, 9, 6]
        c["ok"] = True


def test_criterion_02_decomposition():
    with criterion(2, "sum over eta of dim Mix equals dim P (x) iso_D", 5) as c:
        reports = [check_decomposition(D, ROSTER) for D in ("x0", "x1")]
        assert not failed_rows(*reports)
        at_H0 = reports[1].rows[0]
        assert at_H0["object"] == "H0" and at_H0["dims_mix"] == [2, 2] and at_H0["dim_P_iso"] == 4
        for rep, D in zip(reports, ("x0", "x1")):
            for row in rep.rows:
                W = parse_space(row["object"])
                if W.dim <= 4:
                    brute = [oracles.mix_general_count(W, parse_space(D), e) for e in (0, 1)]
                    assert row["dims_mix"] == brute, (D, row)
        c["ok"] = True


def test_criterion_03_s2_sequence():
    with criterion(3, "swap is free on Mix_{a,1} and dim Mix = 2 dim m", 5) as c:
        reports = [check_s2_ses(a, ROSTER) for a in (0, 1)]
        assert not failed_rows(*reports)
        for rep, a in zip(reports, (0, 1)):
            for row in rep.rows:
                W = parse_space(row["object"])
                assert row["tau_free"]
                assert row["dim_mix"] == 2 * row["dim_m"] == oracles.mix_ab_count(W, a, 1)
        c["ok"] = True


def test_criterion_04_mu_complex_exact():
    with criterion(4, "rank mu_n = dim ker mu_{n+1} for n <= 3", 60) as c:
        reports = [check_mu_complex(a, 3, ROSTER) for a in (0, 1)]
        assert not failed_rows(*reports)
        rows = [row for r in reports for row in r.rows if isinstance(row["n"], int)]
        assert len(rows) == 2 * len(ROSTER) * 4
        assert all(row["rank_mu_n"] == row["dim_ker_mu_n+1"] and row["composite_zero"] for row in rows)
        c["ok"] = True


def test_criterion_05_sigma_K1_iso():
    with criterion(5, "sigma: K^1 -> iso is bijective and natural", 30) as c:
        reports = [check_KL_ses(a, 1, ROSTER) for a in (0, 1)]
        rows = [row for r in reports for row in r.rows if row["n"] == "sigma"]
        assert len(rows) == 2 * len(ROSTER)
        assert all(row["bijective"] and row["natural"] for row in rows)
        c["ok"] = True


def test_criterion_06_K_L_sequences():
    with criterion(6, "K/L dimension identities, nu~ onto, dual spans agree, n <= 3", 120) as c:
        reports = [check_KL_ses(a, 3, ROSTER, naturality=False) for a in (0, 1)]
        assert not failed_rows(*reports)
        for rep, a in zip(reports, (0, 1)):
            for row in rep.rows:
                if not isinstance(row["n"], int):
                    continue
                W, n = parse_space(row["object"]), row["n"]
                assert row["dim_K_n"] == oracles.dim_K(W, a, n)
                assert row["dim_K_n+1"] == oracles.dim_K(W, a, n + 1)
                assert row["dim_L_n"] == oracles.dim_L(W, a, n)
                assert row["dim_L_n+1"] == oracles.dim_L(W, a, n + 1)
                assert row["dim_lambda_iso"] == row["dim_K_n"] + row["dim_K_n+1"]
                assert row["dim_K_n+1"] == row["dim_L_n+1"] + row["dim_L_n"]
                assert row["nu_tilde_onto"] and row["K_kernel_eq_span"] and row["L_kernel_eq_span"]
        c["ok"] = True


def test_criterion_07_layers_and_head():
    with criterion(7, "layers k_d m / k_{d+1} m match L^{d+1} for d <= 2, head is iso", 120) as c:
        reports = [check_layers(a, 2, ROSTER) for a in (0, 1)]
        assert not failed_rows(*reports)
        for rep, a in zip(reports, (0, 1)):
            for row in rep.rows:
                if isinstance(row["d"], int):
                    W = parse_space(row["object"])
                    assert row["layer"] == oracles.dim_L(W, a, row["d"] + 1)
        H0 = parse_space("H0")
        assert functor_kd_m(1, 1).dim(H0) == 0
        assert functor_L(1, 2).dim(H0) == 0
        assert functor_m(1).dim(H0) - functor_kd_m(1, 1).dim(H0) == 1
        c["ok"] = True


def test_criterion_08_layers_never_vanish():
    with criterion(8, "k_d m_a(H0^(d+1)) is nonzero for d <= 2 via the explicit witness", 60) as c:
        for a in (0, 1):
            for d in range(3):
                row = layer_witness(a, d)
                assert row["ok"], row
                W = hyperbolic_power(d + 1)
                assert functor_kd_m(a, d).dim(W) > 0 and functor_layer(a, d).dim(W) > 0
        c["ok"] = True


def test_criterion_09_witt_exhaustive():
    with criterion(9, "Witt extension succeeds for every subspace isometry, dim V <= 4", 120) as c:
        spaces = [parse_space(s) for s in ("H0", "H1", "H0+H0", "H0+H1", "H1+H1")]
        rows = witt_exhaustive(spaces, max_dim=4)
        assert len(rows) == len(spaces)
        assert all(row["failures"] == 0 and row["triples"] > 0 for row in rows), rows
        c["ok"] = True


def test_criterion_10_category_laws():
    with criterion(10, "composition, unit, associativity, relation moves over 100 samples", 120) as c:
        rep = check_category_laws(samples=100, roster=SMALL_ROSTER, witt=False)
        assert rep.params["samples"] >= 100
        assert not failed_rows(rep)
        c["ok"] = True


def test_criterion_11_simplicity_evidence():
    with criterion(11, "sampled vectors of L^n_a generate, n <= 2, dim <= 4 (evidence at budget 6)",
                   300) as c:
        reports = [check_simplicity_evidence(a, n, SMALL_ROSTER, budget=6)
                   for a in (0, 1) for n in (1, 2)]
        assert all(r.label == "evidence at budget 6" for r in reports)
        assert not failed_rows(*reports)
        for r in reports:
            for row in r.rows:
                if "control" not in row and row["dim"]:
                    assert row["sampled"] > 0 and row["min_span"] == row["dim"]
        c["ok"] = True


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:warnings", *sys.argv[1:]]))
