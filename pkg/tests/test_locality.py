import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import (
    N2_6_QL_REAL_STRINGS,
    N2_6_QL_STRINGS,
    N2_6_TREE,
    haar_ket,
    partial_trace_loops,
    ql_project_pauli,
    random_density,
    random_hermitian,
    random_nontrivial_ns,
)
from udaugs.locality import (
    NeighborhoodStructure,
    QLHamiltonian,
    all_k_body,
    assemble,
    decompose,
    gell_mann_basis,
    is_nontrivial,
    nn_chain,
    parse_structure,
    ql_basis,
    ql_project,
    random_ql_hamiltonian,
    rdm_list,
    same_marginals,
    tree_reduce,
)
from udaugs.states import ghz, ghz_minus
from udaugs.tensor import DimensionProfile, embed

seeds = st.integers(0, 2**32 - 1)


def test_structures():
    assert nn_chain(4).neighborhoods == ((1, 2), (2, 3), (3, 4))
    assert nn_chain(4, periodic=True).neighborhoods[-1] == (1, 4)
    assert len(all_k_body(2, 6)) == 15
    with pytest.raises(ValueError):
        NeighborhoodStructure(((1, 2, 3),), 3)  # not a proper subset
    with pytest.raises(ValueError):
        NeighborhoodStructure(((0, 1),), 3)
    with pytest.raises(ValueError):
        all_k_body(3, 3)


def test_parse_structure():
    assert parse_structure("nn:5") == nn_chain(5)
    assert parse_structure("nn:5:periodic") == nn_chain(5, periodic=True)
    assert parse_structure("all2:4") == all_k_body(2, 4)
    assert parse_structure("[[1,2],[2,3]]").n_sites == 3
    for bad in ("nn", "ring:4", "[[1,2]", "nn:4:open", "[1,2]"):
        with pytest.raises(ValueError):
            parse_structure(bad)


def test_nontriviality():
    assert is_nontrivial(nn_chain(3))
    assert not is_nontrivial(NeighborhoodStructure(((1, 2), (3, 4)), 4))
    assert not is_nontrivial(NeighborhoodStructure(((1, 2), (2, 3)), 4))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_gell_mann_orthonormal(d):
    B = gell_mann_basis(d)
    assert len(B) == d * d
    gram = np.array([[np.trace(a.conj().T @ b) for b in B] for a in B])
    assert np.allclose(gram, np.eye(d * d))
    assert all(np.allclose(b, b.conj().T) for b in B)
    assert all(abs(np.trace(b)) < 1e-12 for b in B[1:])


def test_ql_basis_counts():
    b = ql_basis(all_k_body(2, 6), 6)
    assert len(b) == N2_6_QL_STRINGS
    assert int(b.real_mask.sum()) == N2_6_QL_REAL_STRINGS
    # shared strings counted once: identity + 3 per site + 9 per pair
    assert len(ql_basis(nn_chain(3), 3)) == 1 + 9 + 2 * 9


def test_ql_project_known_cases():
    ns = nn_chain(3)
    Z = np.diag([1.0, -1.0])
    Z1Z3 = embed(np.kron(Z, Z), [1, 3], 3)
    assert np.allclose(ql_project(Z1Z3, ns, 3), 0)
    Z1Z2 = embed(np.kron(Z, Z), [1, 2], 3)
    assert np.allclose(ql_project(Z1Z2, ns, 3), Z1Z2)
    assert np.allclose(ql_project(np.eye(8), ns, 3), np.eye(8))


@given(seeds)
def test_ql_project_matches_pauli_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 5))
    nbs = random_nontrivial_ns(n, rng)
    ns = NeighborhoodStructure(tuple(map(tuple, nbs)), n)
    X = random_hermitian(2**n, rng) + 1j * random_hermitian(2**n, rng)
    assert np.allclose(ql_project(X, ns, n), ql_project_pauli(X, nbs, n), atol=1e-10)


@given(seeds)
def test_ql_project_properties(seed):
    rng = np.random.default_rng(seed)
    dims = [(2, 2, 2), (2, 3, 2), (2, 2, 2, 2)][int(rng.integers(0, 3))]
    n = len(dims)
    ns = nn_chain(n, periodic=bool(rng.integers(0, 2)))
    D = int(np.prod(dims))
    A = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
    B = rng.normal(size=(D, D)) + 1j * rng.normal(size=(D, D))
    PA, PB = ql_project(A, ns, dims), ql_project(B, ns, dims)
    # idempotent, HS self-adjoint, trace preserving
    assert np.allclose(ql_project(PA, ns, dims), PA, atol=1e-10)
    assert abs(np.trace(A.conj().T @ PB) - np.trace(PA.conj().T @ B)) < 1e-9
    assert abs(np.trace(PA) - np.trace(A)) < 1e-9


@given(seeds)
def test_same_marginals_iff_equal_rdms(seed):
    rng = np.random.default_rng(seed)
    n = 3
    ns = nn_chain(n)
    rho = random_density(8, rng)
    # sigma: either a marginal-preserving perturbation or a random state
    if rng.integers(0, 2):
        X = random_hermitian(8, rng)
        X = X - ql_project(X, ns, n)
        sigma = rho + 1e-2 * X / np.linalg.norm(X, 2)
    else:
        sigma = random_density(8, rng)
    rdm_equal = all(np.allclose(a, b, atol=1e-9) for a, b in zip(rdm_list(rho, ns, n), rdm_list(sigma, ns, n)))
    assert same_marginals(rho, sigma, ns, n) == rdm_equal


def test_rdm_list_matches_loops(rng):
    rho = random_density(16, rng)
    ns = nn_chain(4)
    for nb, r in zip(ns.neighborhoods, rdm_list(rho, ns, 4)):
        assert np.allclose(r, partial_trace_loops(rho, nb, [2, 2, 2, 2]))



def test_qlhamiltonian_checks():
    prof = DimensionProfile.qubits(3)
    Z = np.diag([1.0, -1.0])
    H = QLHamiltonian((((1, 2), np.kron(Z, Z)), ((3,), Z)), prof)
    assert H.is_ql(nn_chain(3))
    assert not QLHamiltonian((((1, 3), np.kron(Z, Z)),), prof).is_ql(nn_chain(3))
    with pytest.raises(ValueError):
        assemble(QLHamiltonian((((1, 3), np.kron(Z, Z)),), prof), nn_chain(3))
    with pytest.raises(ValueError):
        QLHamiltonian((((1,), np.array([[0, 1], [0, 0]])),), prof)
    with pytest.raises(ValueError):
        QLHamiltonian((((1, 2), Z),), prof)
    assert np.allclose(H.scaled(2).assemble(), 2 * H.assemble())


@given(seeds)
def test_decompose_round_trip(seed):
    rng = np.random.default_rng(seed)
    dims = [(2, 2, 2, 2), (2, 3, 2)][int(rng.integers(0, 2))]
    ns = nn_chain(len(dims))
    H = random_ql_hamiltonian(ns, dims, int(rng.integers(0, 1000))).assemble()
    back = decompose(H, ns, dims)
    assert back.is_ql(ns)
    assert np.allclose(back.assemble(), H, atol=1e-10)


def test_decompose_rejects_nonlocal():
    Z = np.diag([1.0, -1.0])
    with pytest.raises(ValueError):
        decompose(embed(np.kron(Z, Z), [1, 3], 3), nn_chain(3), 3)


def test_tree_reduce_examples():
    assert tree_reduce(all_k_body(2, 6)).neighborhoods == N2_6_TREE
    assert tree_reduce(nn_chain(5)).neighborhoods == nn_chain(5).neighborhoods
    with pytest.raises(ValueError):
        tree_reduce(NeighborhoodStructure(((1, 2), (3, 4)), 4))


@given(seeds)
def test_tree_reduce_spanning(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 7))
    ns = NeighborhoodStructure(tuple(map(tuple, random_nontrivial_ns(n, rng))), n)
    tree = tree_reduce(ns)
    assert len(tree) == n - 1
    seen, frontier = {1}, [1]
    while frontier:
        a = frontier.pop()
        for e in tree.neighborhoods:
            if a in e:
                b = e[0] if e[1] == a else e[1]
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
    assert seen == set(range(1, n + 1))
    # every tree edge sits inside an original neighborhood
    assert all(ns.covers(e) for e in tree.neighborhoods)


@given(seeds)
def test_tree_disagreement_propagates(seed):
    rng = np.random.default_rng(seed)
    n = 4
    ns = NeighborhoodStructure(tuple(map(tuple, random_nontrivial_ns(n, rng))), n)
    tree = tree_reduce(ns)
    a, b = haar_ket(n, rng), haar_ket(n, rng)
    if not same_marginals(a, b, tree, n):
        assert not same_marginals(a, b, ns, n)


def test_random_ql_hamiltonian_deterministic():
    ns = nn_chain(4)
    h1 = random_ql_hamiltonian(ns, 4, 7).assemble()
    h2 = random_ql_hamiltonian(ns, 4, 7).assemble()
    assert np.array_equal(h1, h2)
    assert np.allclose(h1, h1.conj().T)
    assert np.allclose(ql_project(h1, ns, 4), h1)


def test_ghz_pair_shares_marginals():
    assert same_marginals(ghz(3), ghz_minus(3), nn_chain(3), 3)
    assert same_marginals(ghz(4), ghz_minus(4), all_k_body(3, 4), 4)
