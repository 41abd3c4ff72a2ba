"""Neighborhood structures, the quasi-local projector and QL Hamiltonians."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .tensor import DimensionProfile, as_profile, embed, partial_trace

__all__ = [
    "NeighborhoodStructure",
    "QLHamiltonian",
    "nn_chain",
    "all_k_body",
    "parse_structure",
    "is_nontrivial",
    "gell_mann_basis",
    "local_operator_basis",
    "QLBasis",
    "ql_basis",
    "ql_project",
    "rdm_list",
    "same_marginals",
    "assemble",
    "decompose",
    "tree_reduce",
    "random_ql_hamiltonian",
]


@dataclass(frozen=True)
class NeighborhoodStructure:
    """A list of neighborhoods (sorted tuples of 1-based sites) on ``n_sites`` sites."""

    neighborhoods: tuple[tuple[int, ...], ...]
    n_sites: int

    def __post_init__(self):
        cleaned = []
        for nb in self.neighborhoods:
            sites = tuple(sorted(int(s) for s in nb))
            if not sites:
                raise ValueError("empty neighborhood")
            if len(set(sites)) != len(sites):
                raise ValueError(f"duplicate site in neighborhood {sites}")
            if sites[0] < 1 or sites[-1] > self.n_sites:
                raise ValueError(f"neighborhood {sites} outside 1..{self.n_sites}")
            if len(sites) == self.n_sites:
                raise ValueError(f"neighborhood {sites} is not a proper subset")
            cleaned.append(sites)
        object.__setattr__(self, "neighborhoods", tuple(cleaned))

    def __len__(self) -> int:
        return len(self.neighborhoods)

    def __iter__(self):
        return iter(self.neighborhoods)

    def covers(self, sites: Iterable[int]) -> bool:
        """True when ``sites`` fit inside a single neighborhood."""
        s = set(sites)
        return any(s <= set(nb) for nb in self.neighborhoods)

    def with_neighborhood(self, sites: Iterable[int]) -> "NeighborhoodStructure":
        return NeighborhoodStructure(self.neighborhoods + (tuple(sites),), self.n_sites)

    def to_list(self) -> list[list[int]]:
        return [list(nb) for nb in self.neighborhoods]


def nn_chain(n: int, periodic: bool = False) -> NeighborhoodStructure:
    """Two-body nearest-neighbour chain; ``periodic`` adds the (1, n) bond."""
    nbs = [(i, i + 1) for i in range(1, n)]
    if periodic and n > 2:
        nbs.append((1, n))
    return NeighborhoodStructure(tuple(nbs), n)


def all_k_body(k: int, n: int) -> NeighborhoodStructure:
    """All k-site subsets of n sites."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    return NeighborhoodStructure(tuple(itertools.combinations(range(1, n + 1), k)), n)


def parse_structure(text: str, n_sites: int | None = None) -> NeighborhoodStructure:
    """Parse ``nn:<N>[:periodic]``, ``all<k>:<N>`` or a JSON list of index lists."""
    text = text.strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad neighborhood JSON at position {exc.pos}: {exc.msg}") from exc
        if not isinstance(data, list) or not all(isinstance(nb, list) for nb in data):
            raise ValueError("neighborhood JSON must be a list of index lists")
        n = n_sites if n_sites is not None else max(max(nb) for nb in data if nb)
        return NeighborhoodStructure(tuple(tuple(nb) for nb in data), n)
    parts = text.split(":")
    head = parts[0]
    try:
        if head == "nn":
            if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "periodic"):
                raise ValueError(f"expected nn:<N>[:periodic], got {text!r}")
            return nn_chain(int(parts[1]), periodic=len(parts) == 3)
        if head.startswith("all") and len(parts) == 2:
            return all_k_body(int(head[3:]), int(parts[1]))
    except ValueError as exc:
        raise ValueError(f"cannot parse neighborhood structure {text!r}: {exc}") from exc
    raise ValueError(f"cannot parse neighborhood structure {text!r} (position 0)")


def is_nontrivial(ns: NeighborhoodStructure) -> bool:
    """Every site is covered and every neighborhood overlaps another one."""
    covered = set().union(*map(set, ns.neighborhoods)) if ns.neighborhoods else set()
    if covered != set(range(1, ns.n_sites + 1)):
        return False
    sets = [set(nb) for nb in ns.neighborhoods]
    for i, a in enumerate(sets):
        if not any(a & b for j, b in enumerate(sets) if j != i):
            return False
    return True


@lru_cache(maxsize=None)
def gell_mann_basis(d: int) -> tuple[np.ndarray, ...]:
    """Hilbert-Schmidt orthonormal Hermitian basis of d x d matrices.

    The first element is ``I / sqrt(d)``; for d = 2 this is the normalised
    Pauli basis ``(I, X, Y, Z) / sqrt(2)``.
    """
    if d == 2:
        return tuple(
            np.array(m, dtype=complex) / np.sqrt(2)
            for m in ([[1, 0], [0, 1]], [[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]])
        )
    out = [np.eye(d, dtype=complex) / np.sqrt(d)]
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[j, k] = s[k, j] = 1 / np.sqrt(2)
            a = np.zeros((d, d), dtype=complex)
            a[j, k] = -1j / np.sqrt(2)
            a[k, j] = 1j / np.sqrt(2)
            out += [s, a]
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1
        diag[l] = -l
        out.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(complex))
    return tuple(out)


def local_operator_basis(dims) -> list[np.ndarray]:
    """Product operator basis for a block of sites with the given dimensions.

    An integer is treated as a single site of that dimension.
    """
    if isinstance(dims, (int, np.integer)):
        return list(gell_mann_basis(int(dims)))
    out = [np.ones((1, 1), dtype=complex)]
    for d in dims:
        out = [np.kron(a, b) for a in out for b in gell_mann_basis(int(d))]
    return out


@dataclass(frozen=True, eq=False)
class QLBasis:
    """The deduplicated union of product-basis strings supported in some neighborhood.

    ``labels[i]`` gives the per-site local basis index (0 = identity) of
    element ``i``; ``matrices[i]`` is the corresponding global operator.
    """

    labels: tuple[tuple[int, ...], ...]
    matrices: np.ndarray = field(repr=False)
    profile: DimensionProfile

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def real_mask(self) -> np.ndarray:
        """Elements whose matrix is real (the rest are purely imaginary)."""
        return np.array([np.abs(m.imag).max() < 1e-14 for m in self.matrices])

    def coefficients(self, op: np.ndarray) -> np.ndarray:
        """Hilbert-Schmidt coordinates ``tr(X_i op)``."""
        return np.einsum("kji,ij->k", self.matrices, op)

    def combine(self, coeffs: np.ndarray) -> np.ndarray:
        return np.tensordot(coeffs, self.matrices, axes=(0, 0))


@lru_cache(maxsize=64)
def _ql_basis_cached(neighborhoods, dims) -> QLBasis:
    profile = DimensionProfile(dims)
    locals_ = [gell_mann_basis(d) for d in dims]
    labels = set()
    for nb in neighborhoods:
        ranges = [range(d * d) if s in nb else range(1) for s, d in zip(range(1, len(dims) + 1), dims)]
        labels.update(itertools.product(*ranges))
    labels = tuple(sorted(labels, key=lambda lab: (sum(1 for x in lab if x), lab)))
    mats = np.empty((len(labels), profile.total_dim, profile.total_dim), dtype=complex)
    for i, lab in enumerate(labels):
        m = np.ones((1, 1), dtype=complex)
        for d_loc, idx in zip(locals_, lab):
            m = np.kron(m, d_loc[idx])
        mats[i] = m
    mats.setflags(write=False)
    return QLBasis(labels, mats, profile)


def ql_basis(ns: NeighborhoodStructure, dims) -> QLBasis:
    profile = as_profile(dims)
    if profile.n_sites != ns.n_sites:
        raise ValueError("profile and neighborhood structure disagree on the number of sites")
    return _ql_basis_cached(ns.neighborhoods, profile.local_dims)


def ql_project(op: np.ndarray, ns: NeighborhoodStructure, dims) -> np.ndarray:
    """Orthogonal projection onto operators that are sums of neighborhood terms."""
    basis = ql_basis(ns, dims)
    return basis.combine(basis.coefficients(np.asarray(op)))


def rdm_list(rho: np.ndarray, ns: NeighborhoodStructure, dims) -> list[np.ndarray]:
    return [partial_trace(rho, nb, dims) for nb in ns.neighborhoods]


def same_marginals(rho, sigma, ns: NeighborhoodStructure, dims, tol: float = 1e-9) -> bool:
    """Compare QL projections, which is equivalent to comparing all neighborhood RDMs."""
    from .tensor import ket_to_density

    diff = ql_project(ket_to_density(rho) - ket_to_density(sigma), ns, dims)
    return bool(np.abs(diff).max() <= tol)


@dataclass(frozen=True, eq=False)
class QLHamiltonian:
    """Sum of local Hermitian terms, each attached to a set of sites."""

    terms: tuple[tuple[tuple[int, ...], np.ndarray], ...]
    profile: DimensionProfile

    def __post_init__(self):
        profile = as_profile(self.profile)
        terms = []
        for sites, mat in self.terms:
            sites = profile.check_sites(sites)
            mat = np.asarray(mat, dtype=complex)
            k = profile.sub_dim(sites)
            if mat.shape != (k, k):
                raise ValueError(f"term on {sites} has shape {mat.shape}, expected {(k, k)}")
            if np.abs(mat - mat.conj().T).max() > 1e-12 * max(1.0, np.abs(mat).max()):
                raise ValueError(f"term on {sites} is not Hermitian")
            terms.append((sites, mat))
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "terms", tuple(terms))

    def is_ql(self, ns: NeighborhoodStructure) -> bool:
        return all(ns.covers(sites) for sites, _ in self.terms)

    def assemble(self, ns: NeighborhoodStructure | None = None) -> np.ndarray:
        return assemble(self, ns)

    def scaled(self, factor: float) -> "QLHamiltonian":
        return QLHamiltonian(tuple((s, factor * m) for s, m in self.terms), self.profile)


def assemble(H: QLHamiltonian, ns: NeighborhoodStructure | None = None) -> np.ndarray:
    """Global matrix of a QL Hamiltonian; checks locality when ``ns`` is given."""
    if ns is not None and not H.is_ql(ns):
        bad = [s for s, _ in H.terms if not ns.covers(s)]
        raise ValueError(f"terms on {bad} are not inside any neighborhood")
    D = H.profile.total_dim
    out = np.zeros((D, D), dtype=complex)
    for sites, mat in H.terms:
        out += embed(mat, sites, H.profile)
    return out


def decompose(op: np.ndarray, ns: NeighborhoodStructure, dims, tol: float = 1e-10) -> QLHamiltonian:
    """Write a QL Hermitian operator as a sum of neighborhood terms.

    Each product-basis string goes to the first neighborhood containing its
    support. Raises if ``op`` has weight outside the QL span.
    """
    profile = as_profile(dims)
    op = np.asarray(op, dtype=complex)
    basis = ql_basis(ns, profile)
    coeffs = basis.coefficients(op)
    resid = op - basis.combine(coeffs)
    if np.linalg.norm(resid) > tol * max(1.0, np.linalg.norm(op)):
        raise ValueError("operator is not quasi-local relative to the structure")
    locals_ = [gell_mann_basis(d) for d in profile.local_dims]
    terms: dict[tuple[int, ...], np.ndarray] = {}
    for lab, coef in zip(basis.labels, coeffs):
        if abs(coef) <= tol * 1e-3:
            continue
        supp = {i + 1 for i, x in enumerate(lab) if x}
        nb = next(nb for nb in ns.neighborhoods if supp <= set(nb))
        mat = np.ones((1, 1), dtype=complex)
        for s in nb:
            mat = np.kron(mat, locals_[s - 1][lab[s - 1]])
        # identity factors outside nb carry 1/sqrt(d) each in the global string
        outside = np.prod([np.sqrt(d) for i, d in enumerate(profile.local_dims, 1) if i not in nb])
        term = coef.real * mat / outside
        terms[nb] = terms.get(nb, 0) + term
    return QLHamiltonian(tuple((nb, 0.5 * (m + m.conj().T)) for nb, m in terms.items()), profile)


def tree_reduce(ns: NeighborhoodStructure) -> NeighborhoodStructure:
    """Lexicographically smallest spanning tree of the site co-occurrence graph."""
    edges = sorted({e for nb in ns.neighborhoods for e in itertools.combinations(nb, 2)})
    parent = list(range(ns.n_sites + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree = []
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            tree.append((a, b))
    if len(tree) != ns.n_sites - 1:
        raise ValueError("site graph of the neighborhood structure is disconnected")
    return NeighborhoodStructure(tuple(tree), ns.n_sites)


def random_ql_hamiltonian(ns: NeighborhoodStructure, dims, seed: int) -> QLHamiltonian:
    """One Gaussian Hermitian term per neighborhood, each with unit HS norm."""
    profile = as_profile(dims)
    rng = np.random.default_rng(seed)
    terms = []
    for nb in ns.neighborhoods:
        k = profile.sub_dim(nb)
        a = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        h = a + a.conj().T
        terms.append((nb, h / np.linalg.norm(h)))
    return QLHamiltonian(tuple(terms), profile)
