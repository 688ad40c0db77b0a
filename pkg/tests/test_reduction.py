import json
import math

import numpy as np
import pytest
from hypothesis import given, settings

from hexflip import reduction as red
from hexflip.checks import euclid_quadruple
from hexflip.hyperbolic_core import distance
from hexflip.sextuple import (
    ConfigTag,
    Sextuple,
    apply_word,
    classify_config,
    sample_random,
    size_A,
    size_B,
    validate,
)
from strategies import seeds

GOLDEN = (1 + math.sqrt(5)) / 2


def _hyp_gap(z1, z2):
    return max(distance(p, q) for p, q in zip(z1.x, z2.x))


def test_golden_ratio_euclid_takes_sixteen_steps():
    status, steps, _ = red.euclid_steps(red._Run(euclid_quadruple(1.0, GOLDEN)), 1e-3, 1e-9)
    assert (status, steps) == ("small", 16)


def test_rational_ratio_pinches():
    res = red.op_degenerate_euclid(euclid_quadruple(1.0, 2.0))
    assert isinstance(res, red.PinchedCertificate)
    z = res.z
    assert distance(z[1], z[2]) < 1e-8 and distance(z[3], z[4]) < 1e-8 and distance(z[5], z[6]) < 1e-8


def test_singular_verdict():
    _, verdict = red.reduce(Sextuple.of([0.2j] * 6))
    assert verdict.tag == "Singular"
    assert json.loads(verdict.to_json()) == {"verdict": "Singular"}


def test_tri_step_contracts():
    z = sample_random(7)
    assert classify_config(z).tag is ConfigTag.TRI
    z1, w = red.op_tri(z)
    assert len(w) > 0
    assert size_A(z1) <= 23 / 24 * size_A(z)


def test_power_cap():
    run = red._Run(sample_random(7))
    with pytest.raises(red.WrongClass):
        run.power(1, red.N_MAX_CAP + 1)


def test_reduce_frozen_seed():
    trace, verdict = red.reduce(sample_random(7))
    assert verdict.tag == "Reduced"
    assert size_A(trace.final) + size_B(trace.final) <= 2e-3
    assert _hyp_gap(red.replay(trace), trace.final) < 1e-9
    lines = trace.to_csv().splitlines()
    assert lines[0] == "step,op,|word|,A,B,F,class"
    assert len(lines) == len(trace.steps) + 1


def test_near_parallel_seed_reduces():
    # a nearly collapsed pair once produced a slide power of order 1e7
    trace, verdict = red.reduce(sample_random(995))
    assert verdict.tag == "Reduced"
    assert max(len(s.word) for s in trace.steps) <= red.N_MAX_CAP


def test_discreteness_report():
    rep = red.discreteness_report(sample_random(7))
    assert rep.outcome == "NonDiscrete"
    assert json.loads(rep.to_json())["verdict"]["verdict"] == "Reduced"


@settings(max_examples=12)
@given(seeds)
def test_reduce_replay_and_final_state(seed):
    z = sample_random(seed)
    trace, verdict = red.reduce(z, max_steps=2000)
    assert verdict.tag in {"Reduced", "Pinched", "Stalled"}
    assert _hyp_gap(red.replay(trace), trace.final) < 1e-8
    assert validate(trace.final, 1e-6)[0]
    if verdict.tag == "Reduced":
        assert size_A(trace.final) + size_B(trace.final) <= 2e-3
    if classify_config(z).tag is ConfigTag.HEX:
        assert verdict.tag == "Stalled"


def test_descent_returns_a_lowering_word():
    z = sample_random(7)
    nxt, w = red.op_descent(z, depth=2)
    if len(w):
        assert size_A(nxt) + size_B(nxt) < size_A(z) + size_B(z)
        assert np.abs(apply_word(z, w).array() - nxt.array()).max() < 1e-12
