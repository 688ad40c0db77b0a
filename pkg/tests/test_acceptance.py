"""Acceptance criteria, one test each.

Every test prints a ``[PASS]``/``[FAIL]`` line with the measured metrics; the
lines are repeated in the terminal summary. Tolerances are pinned below.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from hexflip.checks import run_check

RELATION_TOL = 1e-8
PAIR_PRODUCT_TOL = 1e-10
RELATION_SECONDS = 60.0
EQUALITY_TOL = 1e-9
CONTRACTION = 23 / 24
SKH_DRIFT_TOL = 1e-10
REDUCE_EPS = 1e-3
REDUCE_FINAL = 2e-3
REDUCE_SECONDS = 600.0
EUCLID_MAX_STEPS = 40
Q_ROUTE_TOL = 1e-12
LAGRANGIAN_TOL = 1e-10
SP_TOL = 1e-9
F_SLOPE, PHI_SLOPE = 1.8, 2.8
TRACE_CONSTANT, TRACE_REL = 8.0, 0.05
SYMPLECTIC_CONSTANT, SYMPLECTIC_TOL = 0.5, 1e-4
FLOW_TOL, FLOW_RESIDUAL = 1e-9, 1e-10


def _run(number, **kw):
    result = run_check(number, **kw)
    print(result.line())
    ACCEPTANCE_LINES.append((number, result.line()))
    return result.metrics


@pytest.mark.slow
def test_01_relation_preservation():
    m = _run(1, n_pairs=100_000, max_len=64)
    assert m["max_pair_product_change"] < PAIR_PRODUCT_TOL
    assert m["violations"] == 0, f"{m['violations']} words broke the relation beyond {RELATION_TOL}"
    assert m["runtime_s"] < RELATION_SECONDS


def test_02_tri_par_contraction():
    m = _run(2, n_tri=500, n_par=200)
    assert m["max|B'-A|"] < EQUALITY_TOL
    assert m["max A'-23/24A"] <= EQUALITY_TOL
    assert m["max A'/A"] <= CONTRACTION + EQUALITY_TOL


def test_03_skew_hexagon_decrement():
    m = _run(3, n_wide=250, n_small=250)
    assert m["min decrement - bound"] >= -EQUALITY_TOL
    assert m["max drift"] < SKH_DRIFT_TOL
    assert m["gated cases"] == 0 or m["min gated slack"] >= 0.0


@pytest.mark.slow
def test_04_reduction_driver():
    m = _run(4, n=1000, eps=REDUCE_EPS)
    assert m["verdicts"] == {"Reduced": 1000}
    assert m["max|normalized final|"] <= REDUCE_FINAL
    assert m["runtime_s"] < REDUCE_SECONDS


def test_05_euclid_degenerate():
    m = _run(5)
    assert m["golden status"] == "small"
    assert m["golden steps"] <= EUCLID_MAX_STEPS
    assert m["ratio 2"] == "PinchedCertificate"


def test_06_q_routes_signature():
    m = _run(6, n=10_000)
    assert m["max route gap"] < Q_ROUTE_TOL
    assert m["signature"] == (2, 2)


def test_07_cohomology_identities():
    m = _run(7, n=10_000)
    assert m["max q identity"] < Q_ROUTE_TOL
    assert m["max cup formula"] < Q_ROUTE_TOL
    assert m["kernel image"] < Q_ROUTE_TOL


def test_08_lagrangian_criterion():
    m = _run(8, n=10_000)
    assert m["max |q| of Lagrangian preimage"] < LAGRANGIAN_TOL
    assert m["max plane mismatch"] < LAGRANGIAN_TOL
    assert m["orientation flips"] == 0
    rejected, total = m["off-cone rejected"].split("/")
    assert rejected == total
    assert m["max round trip"] < LAGRANGIAN_TOL
    assert m["max Sp mismatch"] < SP_TOL


def test_09_morse_expansions():
    m = _run(9, n=100)
    assert m["min F slope"] >= F_SLOPE
    assert m["min phi slope"] >= PHI_SLOPE


def test_10_trace_constant():
    m = _run(10, n=50)
    assert m["sign constant per curve"]
    assert m["max | |F|/(8|q|) - 1 |"] <= TRACE_REL, (
        f"measured F/q in [{m['measured F/q min']:.4g}, {m['measured F/q max']:.4g}], "
        f"expected magnitude {TRACE_CONSTANT}")


def test_11_distribution_ranks():
    m = _run(11, n=100)
    assert m["ranks"] == {((5, 7), (4, 6)): 100}


def test_12_symplectic_constant():
    m = _run(12, n=20)
    assert abs(m["chart ratio"] - SYMPLECTIC_CONSTANT) < 1e-6
    assert m["max |ratio - 1/2| random"] < SYMPLECTIC_TOL
    assert m["max fit dev random"] < SYMPLECTIC_TOL


def test_13_twist_flows():
    m = _run(13, n=200)
    assert m["max periodicity"] < FLOW_TOL
    assert m["max half-twist gap"] < FLOW_TOL
    assert m["max flow residual"] < FLOW_RESIDUAL
