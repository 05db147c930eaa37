import csv
import io
import json

import pytest

import oracles
from fquad.quadspace import hyperbolic_power, parse_space
from fquad.verify import (
    CHECKS,
    CheckReport,
    check_category_laws,
    check_decomposition,
    check_KL_ses,
    check_layers,
    check_mu_complex,
    check_pairwise_noniso,
    check_s2_ses,
    check_simplicity_evidence,
    generating_family,
    layer_witness,
    run_check,
    witt_exhaustive,
)

TINY = ["H0", "H1"]


def strip_runtime(report):
    data = report.to_json()
    data.pop("runtime_ms")
    return data


def test_decomposition_rows_match_brute_force():
    rep = check_decomposition("x1", ["H0", "H1", "H0+H0"])
    assert rep.passed
    for row in rep.rows:
        W = parse_space(row["object"])
        assert row["dims_mix"] == [oracles.mix_general_count(W, parse_space("x1"), e) for e in (0, 1)]
    assert rep.rows[0]["dims_mix"] == [2, 2] and rep.rows[0]["dim_P_iso"] == 4


@pytest.mark.parametrize("alpha", [0, 1])
def test_s2_rows(alpha):
    rep = check_s2_ses(alpha, ["H0", "H1", "H0+H0"])
    assert rep.passed
    for row in rep.rows:
        W = parse_space(row["object"])
        assert row["dim_mix"] == 2 * row["dim_m"] == oracles.mix_ab_count(W, alpha, 1)
        assert row["tau_free"]


def test_mu_complex_exact():
    rep = check_mu_complex(1, 3, ["H0", "H0+H0"])
    assert rep.passed
    rows = [r for r in rep.rows if isinstance(r["n"], int)]
    assert all(r["rank_mu_n"] == r["dim_ker_mu_n+1"] for r in rows)


def test_KL_rows_use_closed_forms():
    rep = check_KL_ses(0, 2, ["H0", "H0+H0"], naturality=False)
    assert rep.passed
    for row in rep.rows:
        if isinstance(row["n"], int):
            W, n = parse_space(row["object"]), row["n"]
            assert row["dim_K_n"] == oracles.dim_K(W, 0, n)
            assert row["dim_L_n+1"] == oracles.dim_L(W, 0, n + 1)


def test_layers_hand_instance():
    rep = check_layers(1, 1, ["H0"])
    assert rep.passed
    head = rep.rows[0]
    assert head["d"] == "head" and head["dim_m"] - head["dim_k1m"] == head["dim_iso"] == 1
    d1 = next(r for r in rep.rows if r["d"] == 1 and r["object"] == "H0")
    assert d1["dim_k_d"] == 0 and d1["dim_L"] == 0
    assert next(r for r in rep.rows if r["d"] == 0)["summary"] == "d=0: 1−0=1"


@pytest.mark.parametrize("alpha", [0, 1])
@pytest.mark.parametrize("d", [0, 1, 2])
def test_layer_witness(alpha, d):
    row = layer_witness(alpha, d)
    assert row["ok"] and row["image_nonzero"]
    assert row["object"] == hyperbolic_power(d + 1).label()


def test_simplicity_is_labelled_evidence():
    rep = check_simplicity_evidence(1, 1, TINY)
    assert rep.passed and rep.label == "evidence at budget 6"
    assert "evidence at budget 6" in rep.summary()
    control = rep.rows[-1]
    assert control["expected_failure"] and control["min_span"] < control["dim"]


def test_generating_family_respects_budget():
    V = parse_space("H0+H0")
    fam = generating_family(V, budget=2, seed=1)
    assert fam and all(T.apex.dim <= V.dim + 2 for T in fam)
    assert all(T.source == V and T.target == V for T in fam)


def test_pairwise_table():
    rep = check_pairwise_noniso(2)
    assert rep.passed
    dn = {r["pair"]: r["d(n)"] for r in rep.rows if "d(n)" in r}
    assert dn["L^1_1"] == 1 and dn["L^2_1"] == 2


def test_category_laws_small():
    rep = check_category_laws(seed=3, samples=10, roster=TINY, witt=False)
    assert rep.passed
    assert {r["law"] for r in rep.rows} == {"composition", "units", "associativity",
                                            "relation_moves", "epsilon", "lift"}


def test_witt_exhaustive_small():
    rows = witt_exhaustive([parse_space("H0"), parse_space("H1"), parse_space("x0")])
    assert [r["object"] for r in rows] == ["H0", "H1"]
    assert all(r["failures"] == 0 and r["triples"] > 0 for r in rows)


def test_report_json_schema():
    rep = check_s2_ses(1, TINY)
    data = json.loads(json.dumps(rep.to_json()))
    assert {"check", "roster", "rows", "passed", "seed", "runtime_ms"} <= set(data)
    assert data["check"] == "check_s2_ses" and data["roster"] == TINY
    assert all("object" in r and "ok" in r for r in data["rows"])
    assert isinstance(data["runtime_ms"], int)


def test_report_csv_roundtrip():
    rep = check_decomposition("x0", TINY)
    rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
    assert len(rows) == len(rep.rows)
    assert rows[0]["check"] == "check_decomposition" and rows[0]["object"] == "H0"
    assert json.loads(rows[0]["dims_mix"]) == rep.rows[0]["dims_mix"]


def test_failed_row_fails_report():
    rep = CheckReport("x", ["H0"])
    rep.add({"object": "H0", "ok": True})
    assert rep.passed
    rep.add({"object": "H0", "ok": False})
    assert not rep.passed and "FAIL" in rep.summary()


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_reruns_are_deterministic(name):
    kw = {"roster": ["H0"], "alpha": 1, "n_max": 1, "d_max": 1, "seed": 11}
    if name == "check_category_laws":
        a = [check_category_laws(seed=11, samples=5, roster=["H0"], witt=False)]
        b = [check_category_laws(seed=11, samples=5, roster=["H0"], witt=False)]
    else:
        a, b = run_check(name, **kw), run_check(name, **kw)
    assert [strip_runtime(r) for r in a] == [strip_runtime(r) for r in b]
    assert all(r.passed for r in a)


def test_unknown_check():
    with pytest.raises(KeyError):
        run_check("bogus_check")
