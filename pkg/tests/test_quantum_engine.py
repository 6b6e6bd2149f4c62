import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import G2A, G2B, G3A, G3C, games3, unit
from entangled_ess.closed_form import classical_payoff_enumerated
from entangled_ess.game_model import PayoffTable3, SymmetricGame2, expand_symmetric3
from entangled_ess.quantum_engine import (
    DensityMatrix,
    DimensionError,
    EntanglementParam,
    MoveProfile,
    apply_move_profile,
    expected_payoff,
    flip_conjugate,
    make_payoff_operator2,
    make_payoff_operator3,
    oracle_payoff,
    prepare_initial_state,
)


def test_unentangled_two_player_state():
    rho = prepare_initial_state(0.0, 2).data
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    np.testing.assert_array_equal(rho, expected)


def test_all_s2_three_player_state():
    rho = prepare_initial_state(1.0, 3).data
    expected = np.zeros((8, 8))
    expected[7, 7] = 1
    np.testing.assert_allclose(rho, expected, atol=1e-15)


def test_maximally_entangled_corners():
    rho = prepare_initial_state(0.5, 2).data
    for i, j in itertools.product((0, 3), repeat=2):
        assert rho[i, j] == pytest.approx(0.5)
    assert np.count_nonzero(np.abs(rho) > 1e-15) == 4


@pytest.mark.parametrize("b2", [-0.1, 1.1])
def test_entanglement_out_of_range(b2):
    with pytest.raises(ValueError):
        EntanglementParam(b2)


def test_identity_profile_is_noop():
    for n in (2, 3):
        rho = prepare_initial_state(0.3, n)
        out = apply_move_profile(rho, [1.0] * n)
        np.testing.assert_allclose(out.data, rho.data, atol=1e-15)


@pytest.mark.parametrize("n", [2, 3])
def test_all_flip_swaps_populations(n):
    out = apply_move_profile(prepare_initial_state(0.3, n), [0.0] * n)
    np.testing.assert_allclose(out.data, prepare_initial_state(0.7, n).data, atol=1e-15)


def test_half_half_product_state_is_uniform():
    out = apply_move_profile(prepare_initial_state(0.0, 2), (0.5, 0.5))
    np.testing.assert_allclose(out.data, np.eye(4) / 4, atol=1e-15)


def test_profile_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply_move_profile(prepare_initial_state(0.2, 2), (0.5, 0.5, 0.5))


def test_density_matrix_rejects_bad_trace():
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(4))


def test_payoff_operators_two_player():
    assert make_payoff_operator2(G2A, "A").diagonal == (3, 0, 5, 1)
    assert make_payoff_operator2(G2A, "B").diagonal == (3, 5, 0, 1)
    c = SymmetricGame2(2, 2, 2, 2)
    assert make_payoff_operator2(c, "A").diagonal == make_payoff_operator2(c, "B").diagonal == (2,) * 4


def test_payoff_operators_three_player():
    t = expand_symmetric3(G3A)
    assert make_payoff_operator3(t, "A").diagonal == (0, 1, 2, 2, 0, 0, 0, 1)
    assert make_payoff_operator3(t, "B").diagonal == (0, 2, 1, 2, 0, 0, 0, 1)
    const = PayoffTable3((7,) * 8, (7,) * 8, (7,) * 8)
    assert make_payoff_operator3(const, "C").diagonal == (7,) * 8


def test_expected_payoff_examples():
    rho = apply_move_profile(prepare_initial_state(0.0, 2), (1, 1))
    assert expected_payoff(rho, make_payoff_operator2(G2A, "A")) == 3
    rho = apply_move_profile(prepare_initial_state(0.0, 3), (0, 0, 0))
    assert expected_payoff(rho, make_payoff_operator3(expand_symmetric3(G3A), "A")) == pytest.approx(1)
    rho = apply_move_profile(prepare_initial_state(0.5, 2), (1, 1))
    assert expected_payoff(rho, make_payoff_operator2(G2A, "A")) == pytest.approx(2.0, abs=1e-12)


def test_expected_payoff_dimension_mismatch():
    with pytest.raises(DimensionError):
        expected_payoff(prepare_initial_state(0.2, 3), make_payoff_operator2(G2A, "A"))


def test_oracle_examples():
    assert oracle_payoff(G2A, 0.0, (1, 1), "A") == pytest.approx(3, abs=1e-15)
    assert oracle_payoff(G2A, 0.5, (1, 1), "A") == pytest.approx(2.0, abs=1e-12)
    assert oracle_payoff(G3C, 1.0, (0, 0, 0), "A") == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), unit, st.lists(unit, min_size=3, max_size=3))
def test_final_state_is_density_matrix(n, b2, probs):
    # DensityMatrix validates Hermiticity, unit trace and PSD on construction
    out = apply_move_profile(prepare_initial_state(b2, n), probs[:n])
    assert out.dim == 2**n


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), unit, st.lists(unit, min_size=3, max_size=3), st.integers(0, 2))
def test_affine_in_each_probability(n, b2, probs, player):
    player %= n
    probs = probs[:n]
    rho = prepare_initial_state(b2, n)

    def at(x):
        pr = list(probs)
        pr[player] = x
        return apply_move_profile(rho, pr).data

    x = probs[player]
    np.testing.assert_allclose(at(x), x * at(1.0) + (1 - x) * at(0.0), atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), unit, st.lists(unit, min_size=3, max_size=3))
def test_global_flip_covariance(n, b2, probs):
    rho = prepare_initial_state(b2, n)
    lhs = apply_move_profile(rho, [1 - p for p in probs[:n]])
    rhs = apply_move_profile(flip_conjugate(rho), probs[:n])
    np.testing.assert_allclose(lhs.data, rhs.data, atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(games3, unit, st.lists(unit, min_size=3, max_size=3), st.integers(0, 2))
def test_oracle_multilinear(g, b2, probs, player):
    def at(x):
        pr = list(probs)
        pr[player] = x
        return oracle_payoff(g, b2, pr, "A")

    assert at(0.5) == pytest.approx(0.5 * at(0.0) + 0.5 * at(1.0), abs=1e-11)


@settings(max_examples=40, deadline=None)
@given(games3, st.lists(unit, min_size=3, max_size=3))
def test_classical_limit(g, probs):
    assert oracle_payoff(g, 0.0, probs, "A") == pytest.approx(classical_payoff_enumerated(g, probs), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(games3, unit, unit, unit, unit)
def test_player_symmetry(g, b2, x, y, z):
    pa = oracle_payoff(g, b2, (x, y, z), "A")
    assert oracle_payoff(g, b2, (x, z, y), "A") == pytest.approx(pa, abs=1e-11)
    assert oracle_payoff(g, b2, (y, x, z), "B") == pytest.approx(pa, abs=1e-11)
    assert oracle_payoff(g, b2, (z, x, y), "B") == pytest.approx(pa, abs=1e-11)
    assert oracle_payoff(g, b2, (y, z, x), "C") == pytest.approx(pa, abs=1e-11)
    assert oracle_payoff(g, b2, (z, y, x), "C") == pytest.approx(pa, abs=1e-11)


def test_two_player_symmetry():
    for p, q in [(0.2, 0.9), (0.0, 0.5)]:
        assert oracle_payoff(G2B, 0.3, (p, q), "A") == pytest.approx(oracle_payoff(G2B, 0.3, (q, p), "B"))


def test_move_profile_validation():
    with pytest.raises(ValueError):
        MoveProfile((0.5, 1.5))
    with pytest.raises(ValueError):
        MoveProfile((0.5,))
