import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import (
    PSI6_DQLS_DIM,
    PSI6_DQLS_EXCITATIONS,
    excitation_ket,
    haar_ket,
    intersection_dim_oracle,
    partial_trace_loops,
    random_density,
    random_nontrivial_ns,
)
from udaugs.dqls import (
    MarginalMismatch,
    dqls_subspace,
    joining_support_check,
    nn_equivalence_check,
    nn_equivalence_check_psi6,
    rank_bound,
)
from udaugs.locality import NeighborhoodStructure, all_k_body, nn_chain
from udaugs.states import generalized_w, ghz, ghz_minus, psi6, random_gw_coefficients, slocc_apply, w_state, zero_state
from udaugs.tensor import Subspace, embed, support

seeds = st.integers(0, 2**32 - 1)


def _ns(nbs, n):
    return NeighborhoodStructure(tuple(map(tuple, nbs)), n)


def test_product_state_is_one_dimensional():
    assert dqls_subspace(zero_state(4), nn_chain(4)).dim == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_w_dimension_two(n):
    for ns in (nn_chain(n), nn_chain(n, periodic=True), all_k_body(2, n)):
        space = dqls_subspace(w_state(n), ns)
        assert space.dim == 2
        assert space.contains(np.c_[zero_state(n), w_state(n)])


def test_psi6_matches_explicit_list():
    space = dqls_subspace(psi6(), all_k_body(2, 6))
    assert space.dim == PSI6_DQLS_DIM
    ref = Subspace(np.array([excitation_ket(e, 6) for e in PSI6_DQLS_EXCITATIONS]).T, space.profile)
    assert space.distance(ref) < 1e-8
    # canonical basis comes out as the computational kets themselves
    assert np.allclose(np.sort(np.abs(space.basis).max(axis=0)), 1)


def test_nn_equivalence():
    assert nn_equivalence_check_psi6()
    assert nn_equivalence_check(w_state(6))


def test_ghz_contains_ghz_minus():
    space = dqls_subspace(ghz(3), nn_chain(3))
    assert space.contains(ghz_minus(3))
    assert space.dim == 2


def test_rejects_trivial_structure():
    with pytest.raises(ValueError):
        dqls_subspace(zero_state(4), _ns([(1, 2), (3, 4)], 4))
    with pytest.raises(ValueError):
        dqls_subspace(zero_state(3), nn_chain(4))


def test_qutrit_profile():
    v = np.zeros(12, dtype=complex)
    v[0] = v[5] = 1 / np.sqrt(2)
    space = dqls_subspace(v, nn_chain(3), dims=(2, 3, 2))
    assert space.contains(v)
    with pytest.raises(ValueError):
        dqls_subspace(np.ones(12) / np.sqrt(12), nn_chain(3))


def _oracle_dim(rho, nbs, n):
    projs = []
    for nb in nbs:
        red = partial_trace_loops(rho, nb, [2] * n)
        w, v = np.linalg.eigh(red)
        keep = v[:, w > 1e-9 * w.max()]
        projs.append(embed(keep @ keep.conj().T, nb, n))
    return intersection_dim_oracle(projs)


@given(seeds)
def test_support_inside_dqls(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 5))
    nbs = random_nontrivial_ns(n, rng)
    ns = _ns(nbs, n)
    # low-rank states built from few product-like kets give non-trivial subspaces
    k = int(rng.integers(1, 3))
    kets = []
    for _ in range(k):
        v = np.zeros(2**n, dtype=complex)
        idx = rng.choice(2**n, size=int(rng.integers(1, 4)), replace=False)
        v[idx] = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
        kets.append(v / np.linalg.norm(v))
    p = rng.dirichlet(np.ones(k))
    rho = sum(pi * np.outer(v, v.conj()) for pi, v in zip(p, kets))
    space = dqls_subspace(rho, ns)
    assert space.contains(support(rho, n).basis)
    assert space.dim == _oracle_dim(rho, nbs, n)


@given(seeds)
def test_eigenvalue_perturbation_invariance(seed):
    rng = np.random.default_rng(seed)
    n = 4
    ns = nn_chain(4)
    kets = [excitation_ket(e, n) for e in ([], [1], [2, 4])]
    w1, w2 = rng.dirichlet(np.ones(3)), rng.dirichlet(np.ones(3))
    rho1 = sum(w * np.outer(v, v) for w, v in zip(w1, kets))
    rho2 = sum(w * np.outer(v, v) for w, v in zip(w2, kets))
    assert dqls_subspace(rho1, ns).distance(dqls_subspace(rho2, ns)) < 1e-8


@given(seeds, st.integers(3, 5))
def test_slocc_dimension_invariance(seed, n):
    rng = np.random.default_rng(seed)
    ns = _ns(random_nontrivial_ns(n, rng), n)
    gw = generalized_w(random_gw_coefficients(n, rng)).ket
    assert dqls_subspace(gw, ns).dim == dqls_subspace(w_state(n), ns).dim == 2
    # invertible diagonal local maps keep the excitation structure, hence the dimension
    ops = [np.diag([1.0, rng.uniform(0.3, 3.0)]) for _ in range(n)]
    assert dqls_subspace(slocc_apply(w_state(n), ops), ns).dim == 2


@given(seeds)
def test_refinement_monotone(seed):
    rng = np.random.default_rng(seed)
    n = 4
    ns = _ns(random_nontrivial_ns(n, rng), n)
    psi = haar_ket(n, rng) if rng.integers(0, 2) else generalized_w(random_gw_coefficients(n, rng)).ket
    extra = tuple(sorted(rng.choice(np.arange(1, n + 1), size=2, replace=False).tolist()))
    assert dqls_subspace(psi, ns.with_neighborhood(extra)).dim <= dqls_subspace(psi, ns).dim


def test_joining_support_check():
    ns = nn_chain(3)
    assert joining_support_check(ghz_minus(3), ghz(3), ns)
    mix = 0.5 * (np.outer(ghz(3), ghz(3)) + np.outer(ghz_minus(3), ghz_minus(3)))
    assert joining_support_check(mix, ghz(3), ns)
    with pytest.raises(MarginalMismatch):
        joining_support_check(w_state(3), ghz(3), ns)


def test_rank_bound(rng):
    assert rank_bound(w_state(4), nn_chain(4)) == 2
    assert rank_bound(psi6(), all_k_body(2, 6)) == 18
    rho = random_density(8, rng)
    assert rank_bound(rho, nn_chain(3)) == 8
