import math

import numpy as np
import pytest
from hypothesis import assume, given, settings

from conftest import CONST2, CONST3, G2A, G2B, G3A, G3B, G3C, ROOT_HI, ROOT_LO, games2, games3, unit
from entangled_ess import closed_form as cf
from entangled_ess.equilibrium import (
    Condition1,
    Condition2,
    EssStatus,
    Kind,
    classical_ess2,
    classify_ess,
    classify_ess2,
    classify_ess3,
    find_symmetric_ne,
    stability_transitions,
)

GRID = np.linspace(0, 1, 101)


def _kinds(cands):
    return [c.kind for c in cands]


def test_g2b_has_three_ne():
    cands = find_symmetric_ne(G2B, 0.4)
    assert _kinds(cands) == [Kind.PURE0, Kind.MIXED, Kind.PURE1]
    assert all(c.is_ne for c in cands)
    assert cands[1].p == pytest.approx(0.6)


def test_g3c_pure0_ne_at_07():
    cands = find_symmetric_ne(G3C, 0.7)
    assert cands[0].kind is Kind.PURE0 and cands[0].is_ne


@pytest.mark.parametrize("game", [CONST2, CONST3])
def test_constant_game_is_continuum(game):
    cands = find_symmetric_ne(game, 0.3)
    assert cands
    assert all(c.continuum and c.is_ne and c.is_ess is EssStatus.TIE for c in cands)


def test_classify_ess2_examples():
    v = classify_ess2(G2B, 0, 1)
    assert (v.condition1, v.condition2, v.is_ess) == (Condition1.TIE, Condition2.FAIL, EssStatus.NO)
    assert 0.5 in v.witnesses
    v = classify_ess2(G2B, 0.5, 0)
    assert (v.condition1, v.is_ess) == (Condition1.STRICT, EssStatus.YES)
    assert v.condition2 is Condition2.VACUOUS
    v = classify_ess2(G2A, 0.5, 0.5)
    assert (v.condition1, v.condition2, v.is_ess) == (Condition1.TIE, Condition2.PASS, EssStatus.YES)
    assert v.margin_ratio == pytest.approx(1.0)


def test_classify_ess2_range():
    with pytest.raises(ValueError):
        classify_ess2(G2A, 0.5, 1.5)


def test_classify_ess3_g3c_b2_one():
    v = classify_ess3(G3C, 1.0, 0.0)
    assert v.condition1 is Condition1.TIE
    assert v.condition2 is Condition2.FAIL
    assert v.is_ess is EssStatus.NO
    # -eta q^2 (|a|^2 - |b|^2) = -q^2
    assert v.margin_ratio == pytest.approx(-1.0)


def test_classify_ess3_g3a():
    v = classify_ess3(G3A, 0.5, ROOT_HI)
    assert v.is_ess is EssStatus.TIE
    assert v.is_ess is not EssStatus.YES
    v = classify_ess3(G3A, 0.0, ROOT_HI)
    assert v.is_ess is EssStatus.YES
    assert v.margin_ratio == pytest.approx(math.sqrt(3), abs=1e-9)
    assert classify_ess3(G3A, 0.0, ROOT_LO).is_ess is EssStatus.NO


def test_classical_ess2_examples():
    assert classical_ess2(G2B, 1).is_ess is EssStatus.NO
    assert classical_ess2(G2B, 0).is_ess is EssStatus.YES
    assert classical_ess2(G2A, 0).is_ess == classify_ess2(G2A, 0, 0).is_ess


@settings(max_examples=30, deadline=None)
@given(games2)
def test_classical_agrees_with_quantum_at_b2_zero(g):
    # inside the tie band the two routes normalize differently, so keep gaps clear of it
    values = (g.alpha, g.beta, g.gamma, g.delta)
    assume(all(a == b or abs(a - b) >= 1e-6 for a in values for b in values))
    assume(g.sigma_sum == 0 or abs(g.sigma_sum) >= 1e-6)
    for p in np.linspace(0, 1, 21):
        a, b = classical_ess2(g, p), classify_ess2(g, 0.0, p)
        assert (a.condition1, a.is_ess) == (b.condition1, b.is_ess)
    pstar = cf.mixed_ne2(g, 0.0)
    if pstar is not None:
        assert classical_ess2(g, pstar).is_ess == classify_ess2(g, 0.0, pstar).is_ess


@settings(max_examples=40, deadline=None)
@given(games3, unit)
def test_ess_implies_ne_three_players(g, b2):
    for c in find_symmetric_ne(g, b2):
        if c.is_ess is EssStatus.YES:
            assert c.is_ne


@settings(max_examples=40, deadline=None)
@given(games2, unit)
def test_ess_implies_ne_two_players(g, b2):
    for c in find_symmetric_ne(g, b2):
        assert c.is_ne
        if c.is_ess is EssStatus.YES:
            assert c.is_ne


@settings(max_examples=60, deadline=None)
@given(games3, unit)
def test_pure0_strictness_matches_inequality(g, b2):
    c = g.coefficients
    gap = c.sigma * b2 - c.omega * (1 - b2)
    if abs(gap) < 1e-7:
        return
    strict = classify_ess3(g, b2, 0.0).condition1 is Condition1.STRICT
    assert strict == (gap > 1e-9)


@settings(max_examples=60, deadline=None)
@given(games3, unit)
def test_at_most_one_mixed_ess(g, b2):
    verdicts = [classify_ess3(g, b2, r).is_ess for r in cf.mixed_ne3(g, b2) if 0 < r < 1]
    assert verdicts.count(EssStatus.YES) <= 1


def test_double_root_is_never_ess():
    # eta^2 = sigma * omega at b2 = 0 leaves a single mixed NE
    g = cf.SymmetricGame3(4, 0, 0, 1, 2, 0)  # sigma=4, eta=-2, omega=1
    assert cf.discriminant3(g, 0.0) == 0
    (root,) = cf.mixed_ne3(g, 0.0)
    assert root == pytest.approx(1 / 3)
    assert classify_ess3(g, 0.0, root).is_ess is EssStatus.TIE


def test_mixed_two_player_verdict_b2_independent():
    # G2A mixed root is interior for b2 in (1/3, 2/3]
    verdicts = {classify_ess2(G2A, b2, cf.mixed_ne2(G2A, b2)).is_ess for b2 in (0.4, 0.5, 0.6)}
    assert verdicts == {EssStatus.YES}


def test_classify_dispatch():
    assert classify_ess(G3A, 0.0, ROOT_HI) == classify_ess3(G3A, 0.0, ROOT_HI)
    with pytest.raises(TypeError):
        classify_ess2(G3A, 0.1, 0.5)


def test_transitions_g2b():
    events = stability_transitions(G2B, GRID)
    pure1 = [e for e in events if e.candidate == "pure-1"]
    pure0 = [e for e in events if e.candidate == "pure-0"]
    assert [(e.b2_lo, e.b2_hi, e.event) for e in pure1] == [(0.0, 0.01, "is_ess no -> yes")]
    assert [(e.b2_lo, e.b2_hi, e.event) for e in pure0] == [(0.99, 1.0, "is_ess yes -> no")]


def test_transitions_g3a():
    events = stability_transitions(G3A, GRID)
    mixed = [e for e in events if e.candidate.startswith("mixed")]
    assert not any(e.event in ("appears", "vanishes") for e in mixed)
    # the root that starts as the ESS loses it on the interval touching 0.5
    losing = [e for e in mixed if e.event == "is_ess yes -> degenerate-tie"]
    assert len(losing) == 1
    assert (losing[0].b2_lo, losing[0].b2_hi) == (0.49, 0.5)
    assert losing[0].p_lo == pytest.approx(ROOT_HI)
    assert all(e.b2_lo in (0.49, 0.5) for e in mixed)


def test_transitions_constant_game():
    assert stability_transitions(CONST2, np.linspace(0, 1, 11)) == []
    assert stability_transitions(CONST3, np.linspace(0, 1, 11)) == []


def test_transitions_validation():
    with pytest.raises(ValueError):
        stability_transitions(G2A, [])
    with pytest.raises(ValueError):
        stability_transitions(G2A, [0.5, 0.2])
