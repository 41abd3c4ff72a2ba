"""Dense linear algebra on tensor-product Hilbert spaces.

Sites are labelled 1..N. Site 1 is the leftmost (most significant) Kronecker
factor, so the computational basis index of an N-qubit product state is the
big-endian bit string of its excitations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

__all__ = [
    "DimensionProfile",
    "Subspace",
    "as_profile",
    "basis_ket",
    "ket_to_density",
    "partial_trace",
    "embed",
    "hermitian_eig",
    "support",
    "kernel",
    "subspace_intersection",
    "pauli",
    "PAULI",
    "projector_distance",
]

DEFAULT_SUPPORT_TOL = 1e-9
INTERSECTION_CUTOFF = 1e-9

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    # excitation convention: sigma^+ |0> = |1>
    "+": np.array([[0, 0], [1, 0]], dtype=complex),
    "-": np.array([[0, 1], [0, 0]], dtype=complex),
}


@dataclass(frozen=True)
class DimensionProfile:
    """Local dimensions of an N-partite system."""

    local_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.local_dims)
        if not dims:
            raise ValueError("a profile needs at least one subsystem")
        if any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "local_dims", dims)

    @classmethod
    def qubits(cls, n: int) -> "DimensionProfile":
        return cls((2,) * n)

    @property
    def n_sites(self) -> int:
        return len(self.local_dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.local_dims))

    def sub_dim(self, sites: Iterable[int]) -> int:
        return int(np.prod([self.local_dims[s - 1] for s in sites]))

    @property
    def is_qubits(self) -> bool:
        return all(d == 2 for d in self.local_dims)

    def check_sites(self, sites: Iterable[int]) -> tuple[int, ...]:
        sites = tuple(sites)
        if len(set(sites)) != len(sites):
            raise ValueError(f"duplicate site index in {sites}")
        for s in sites:
            if not 1 <= s <= self.n_sites:
                raise ValueError(f"site {s} out of range 1..{self.n_sites}")
        return tuple(sorted(sites))


def as_profile(dims) -> DimensionProfile:
    """Accept a profile, a sequence of local dimensions, or a qubit count."""
    if isinstance(dims, DimensionProfile):
        return dims
    if isinstance(dims, (int, np.integer)):
        return DimensionProfile.qubits(int(dims))
    return DimensionProfile(tuple(dims))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of the global Hilbert space stored as an isometry (D x r)."""

    basis: np.ndarray
    profile: DimensionProfile

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=complex)
        if basis.ndim != 2 or basis.shape[0] != self.profile.total_dim:
            raise ValueError(
                f"basis shape {basis.shape} incompatible with dimension {self.profile.total_dim}"
            )
        gram = basis.conj().T @ basis
        if basis.shape[1] and np.abs(gram - np.eye(basis.shape[1])).max() > 1e-10:
            raise ValueError("subspace basis columns are not orthonormal")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def contains(self, vectors: np.ndarray, tol: float = 1e-8) -> bool:
        """True when every column of ``vectors`` lies in the subspace."""
        v = np.asarray(vectors, dtype=complex)
        if v.ndim == 1:
            v = v[:, None]
        if v.size == 0:
            return True
        resid = v - self.basis @ (self.basis.conj().T @ v)
        scale = max(1.0, np.abs(v).max())
        return bool(np.linalg.norm(resid) <= tol * scale)

    def coordinates(self, ket: np.ndarray) -> np.ndarray:
        return self.basis.conj().T @ np.asarray(ket)

    def distance(self, other: "Subspace") -> float:
        return projector_distance(self, other)

    @classmethod
    def full(cls, profile) -> "Subspace":
        profile = as_profile(profile)
        return cls(np.eye(profile.total_dim, dtype=complex), profile)

    @classmethod
    def span(cls, vectors, profile, tol: float = 1e-10) -> "Subspace":
        """Orthonormal basis for the span of the given column vectors."""
        profile = as_profile(profile)
        v = np.asarray(vectors, dtype=complex)
        if v.ndim == 1:
            v = v[:, None]
        if v.shape[1] == 0:
            return cls(np.zeros((profile.total_dim, 0), dtype=complex), profile)
        u, s, _ = np.linalg.svd(v, full_matrices=False)
        r = int(np.sum(s > tol * max(s.max(), 1e-300)))
        return cls(u[:, :r], profile)


def projector_distance(a: Subspace, b: Subspace) -> float:
    """Frobenius distance between the orthogonal projectors of two subspaces."""
    return float(np.linalg.norm(a.projector() - b.projector()))


def basis_ket(excitations: Sequence[int], n_qubits: int) -> np.ndarray:
    """Computational basis ket with ``|1>`` on the listed (1-based) sites.

    >>> np.flatnonzero(basis_ket([1, 3], 4))
    array([10])
    """
    profile = DimensionProfile.qubits(n_qubits)
    sites = profile.check_sites(excitations)
    idx = sum(1 << (n_qubits - s) for s in sites)
    v = np.zeros(2**n_qubits, dtype=complex)
    v[idx] = 1.0
    return v


def ket_to_density(state: np.ndarray) -> np.ndarray:
    """Return a density matrix; kets are turned into projectors."""
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        return np.outer(state, state.conj())
    return state


def _check_square(op: np.ndarray, profile: DimensionProfile) -> np.ndarray:
    op = np.asarray(op)
    D = profile.total_dim
    if op.shape != (D, D):
        raise ValueError(f"operator shape {op.shape} does not match dimension {D}")
    return op


def partial_trace(op: np.ndarray, keep: Iterable[int], dims) -> np.ndarray:
    """Trace out every site not in ``keep``.

    The returned operator acts on the kept sites in ascending order.
    """
    profile = as_profile(dims)
    keep = profile.check_sites(keep)
    if not keep:
        raise ValueError("keep set must be non-empty")
    op = _check_square(op, profile)
    n = profile.n_sites
    d = profile.local_dims
    t = op.reshape(d + d)
    traced = [s for s in range(1, n + 1) if s not in keep]
    # einsum labels: row index i_k, column j_k; traced sites share a label
    row = list(range(n))
    col = list(range(n, 2 * n))
    for s in traced:
        col[s - 1] = row[s - 1]
    out = [row[s - 1] for s in keep] + [col[s - 1] for s in keep]
    res = np.einsum(t, row + col, out)
    k = profile.sub_dim(keep)
    return res.reshape(k, k)


def embed(local: np.ndarray, sites: Iterable[int], dims) -> np.ndarray:
    """Embed an operator on ``sites`` (ascending order) into the full space."""
    profile = as_profile(dims)
    sites = profile.check_sites(sites)
    local = np.asarray(local)
    k = profile.sub_dim(sites)
    if local.shape != (k, k):
        raise ValueError(f"local operator shape {local.shape} does not match sites {sites}")
    n = profile.n_sites
    d = profile.local_dims
    rest = [s for s in range(1, n + 1) if s not in sites]
    rest_dim = profile.sub_dim(rest)
    full = np.kron(local, np.eye(rest_dim, dtype=local.dtype))
    order = list(sites) + rest
    shape = [d[s - 1] for s in order]
    t = full.reshape(shape + shape)
    # axis p of t belongs to site order[p]; move it back to position order[p]-1
    perm = np.argsort([s - 1 for s in order])
    t = t.transpose(list(perm) + [n + p for p in perm])
    D = profile.total_dim
    return t.reshape(D, D)


def _is_hermitian(op: np.ndarray, rtol: float = 1e-12) -> bool:
    scale = np.abs(op).max() if op.size else 0.0
    return bool(np.abs(op - op.conj().T).max() <= rtol * scale + 1e-14)


def hermitian_eig(op: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition with ascending eigenvalues and a fixed phase gauge.

    Each eigenvector is rotated so that its largest-magnitude amplitude is real
    and positive (ties broken by the lowest index).
    """
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError("expected a square matrix")
    if not _is_hermitian(op):
        raise ValueError("operator is not Hermitian")
    herm = 0.5 * (op + op.conj().T)
    evals, evecs = np.linalg.eigh(herm)
    evecs = evecs.astype(complex)
    mags = np.abs(evecs)
    # lowest index within round-off of the maximum, so the gauge is stable
    lead = np.argmax(mags >= mags.max(axis=0) * (1 - 1e-9), axis=0)
    phases = evecs[lead, np.arange(evecs.shape[1])]
    evecs = evecs * (np.abs(phases) / phases)
    return evals, evecs


def _psd_split(op: np.ndarray, tol: float):
    evals, evecs = hermitian_eig(op)
    scale = np.abs(evals).max() if evals.size else 0.0
    if evals.size and evals[0] < -tol * max(scale, 1e-300) and evals[0] < -1e-12:
        raise ValueError(f"operator is not positive semidefinite (min eigenvalue {evals[0]:.3e})")
    cut = tol * evals[-1] if evals[-1] > 0 else 1e-12
    cut = max(cut, 1e-12)
    return evals > cut, evecs


def support(op: np.ndarray, dims, tol: float = DEFAULT_SUPPORT_TOL) -> Subspace:
    """Span of eigenvectors with eigenvalue above ``tol * lambda_max``."""
    profile = _profile_for(op, dims)
    mask, evecs = _psd_split(op, tol)
    return Subspace(evecs[:, mask], profile)


def kernel(op: np.ndarray, dims, tol: float = DEFAULT_SUPPORT_TOL) -> Subspace:
    """Orthogonal complement of :func:`support`."""
    profile = _profile_for(op, dims)
    mask, evecs = _psd_split(op, tol)
    return Subspace(evecs[:, ~mask], profile)


def _profile_for(op, dims) -> DimensionProfile:
    profile = as_profile(dims)
    _check_square(op, profile)
    return profile


def canonical_basis(projector: np.ndarray, rank: int) -> np.ndarray:
    """Gauge-fixed orthonormal basis for the range of an orthogonal projector.

    Columns of the projector are chosen by pivoted QR, so a subspace spanned by
    computational basis kets comes back as exactly those kets.
    """
    D = projector.shape[0]
    if rank == 0:
        return np.zeros((D, 0), dtype=complex)
    q, _, piv = scipy.linalg.qr(projector, pivoting=True, mode="economic")
    cols = np.sort(piv[:rank])
    basis = projector[:, cols]
    # Gram-Schmidt in pivot order keeps each vector anchored to its pivot column
    q, _ = np.linalg.qr(basis)
    q = q.astype(complex)
    mags = np.abs(q)
    lead = np.argmax(mags >= mags.max(axis=0) * (1 - 1e-9), axis=0)
    phases = q[lead, np.arange(rank)]
    q = q * (np.abs(phases) / phases)
    q[np.abs(q) < 1e-14] = 0.0
    return q


def subspace_intersection(subspaces: Sequence[Subspace]) -> Subspace:
    """Intersection as the kernel of the summed projector deficits."""
    subspaces = list(subspaces)
    if not subspaces:
        raise ValueError("need at least one subspace")
    profile = subspaces[0].profile
    for s in subspaces[1:]:
        if s.profile != profile:
            raise ValueError("subspaces live on different profiles")
    D = profile.total_dim
    deficit = reduce(
        lambda acc, s: acc + (np.eye(D) - s.projector()), subspaces, np.zeros((D, D), dtype=complex)
    )
    evals, evecs = np.linalg.eigh(0.5 * (deficit + deficit.conj().T))
    mask = evals < INTERSECTION_CUTOFF
    kern = evecs[:, mask]
    proj = kern @ kern.conj().T
    return Subspace(canonical_basis(proj, int(mask.sum())), profile)


def pauli(symbol: str, site: int, dims) -> np.ndarray:
    """Single-site Pauli or ladder operator embedded at ``site``."""
    profile = as_profile(dims)
    if symbol not in PAULI:
        raise ValueError(f"unknown Pauli symbol {symbol!r}")
    (site,) = profile.check_sites([site])
    if profile.local_dims[site - 1] != 2:
        raise ValueError(f"site {site} is not a qubit")
    return embed(PAULI[symbol], [site], profile)
