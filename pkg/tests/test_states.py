import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import excitation_ket, ket
from udaugs.locality import nn_chain, same_marginals
from udaugs.states import (
    NON_NN_PAIRS_6,
    dbar6,
    generalized_w,
    ghz,
    ghz_minus,
    parse_state,
    psi6,
    random_gw_coefficients,
    slocc_apply,
    w_state,
    zero_state,
)
from udaugs.symmetry import cyclic_shift, permutation_unitary, reflection

seeds = st.integers(0, 2**32 - 1)


def test_w_state():
    assert np.allclose(w_state(2), (ket((1, 0)) + ket((0, 1))) / np.sqrt(2))
    w3 = w_state(3)
    assert np.allclose(w3[[1, 2, 4]], 1 / np.sqrt(3))
    assert abs(np.linalg.norm(w_state(5)) - 1) < 1e-14
    with pytest.raises(ValueError):
        w_state(1)


def test_generalized_w_special_case():
    n = 4
    c = np.r_[0.0, np.full(n, 1 / np.sqrt(n))]
    g = generalized_w(c)
    assert np.allclose(g.ket, w_state(n))
    assert abs(np.vdot(zero_state(n), g.wbar)) < 1e-15


@given(seeds, st.integers(2, 6))
def test_generalized_w_split(seed, n):
    c = random_gw_coefficients(n, np.random.default_rng(seed))
    g = generalized_w(c)
    assert abs(np.linalg.norm(g.ket) - 1) < 1e-12
    assert abs(np.linalg.norm(g.wbar) - 1) < 1e-12
    assert abs(np.vdot(zero_state(n), g.wbar)) < 1e-15
    assert np.allclose(g.ket, g.c0 * zero_state(n) + np.sqrt(1 - g.c0**2) * g.wbar)


@pytest.mark.parametrize(
    "c",
    [[0.5, 0.5, 0.5], [-0.1, 0.7, 0.7], [0.6, 0.8, 0.0], [0.6, 0.6, 0.6]],
)
def test_generalized_w_rejects(c):
    with pytest.raises(ValueError):
        generalized_w(c)


def test_dbar6_and_psi6():
    d = dbar6()
    support = {tuple(i + 1 for i in range(6) if (k >> (5 - i)) & 1) for k in np.flatnonzero(d)}
    assert support == set(NON_NN_PAIRS_6)
    assert abs(np.vdot(zero_state(6), d)) == 0
    p = psi6()
    assert abs(p[0] - 1 / np.sqrt(2)) < 1e-15
    for pair in NON_NN_PAIRS_6:
        assert abs(np.vdot(excitation_ket(pair, 6), p) - 1 / (3 * np.sqrt(2))) < 1e-15
    assert abs(np.linalg.norm(p) - 1) < 1e-14


def test_psi6_symmetric():
    p = psi6()
    for perm in (cyclic_shift(6), reflection(6)):
        assert np.allclose(permutation_unitary(perm, 6) @ p, p)


def test_ghz_pair():
    assert abs(np.vdot(ghz(3), ghz_minus(3))) < 1e-15
    assert same_marginals(ghz(3), ghz_minus(3), nn_chain(3), 3)
    assert abs(np.linalg.norm(ghz(5)) - 1) < 1e-14


def test_slocc():
    a = np.array([[1, 0.3], [0, 2]], dtype=complex)
    out = slocc_apply(w_state(3), [a, np.eye(2), a])
    assert abs(np.linalg.norm(out) - 1) < 1e-14
    with pytest.raises(ValueError):
        slocc_apply(w_state(3), [a, a, np.zeros((2, 2))])
    with pytest.raises(ValueError):
        slocc_apply(w_state(3), [a, a])


def test_parse_state_grammar():
    assert np.allclose(parse_state("w:3"), w_state(3))
    assert np.allclose(parse_state("ghz:4"), ghz(4))
    assert np.allclose(parse_state("psi6"), psi6())
    assert np.allclose(parse_state("basis:3:1,3"), excitation_ket((1, 3), 3))
    assert np.allclose(parse_state("zero:2"), zero_state(2))
    gw = parse_state("gw:2:0.6,0.64,0.48")
    assert np.allclose(gw, generalized_w([0.6, 0.64, 0.48]).ket)
    assert np.allclose(parse_state("[1, 0, 0, [0, 1]]"), np.array([1, 0, 0, 1j]) / np.sqrt(2))
    for bad in ("w", "w:x", "gw:2:0.6,0.8", "[1,2,3]", "[0,0]", "foo", "[1,"):
        with pytest.raises(ValueError):
            parse_state(bad)
