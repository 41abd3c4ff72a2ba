"""UDA witnesses: compression onto a DQLS subspace and certification.

A QL Hermitian operator certifies that a pure state is UDA when, restricted to
the state's DQLS subspace, its extremal eigenvalue is simple and belongs to the
state itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dqls import dqls_subspace, infer_profile
from .locality import NeighborhoodStructure, QLHamiltonian, ql_project
from .states import NON_NN_PAIRS_6
from .tensor import PAULI, DimensionProfile, Subspace

__all__ = [
    "WitnessCertificate",
    "compress",
    "certify_witness",
    "gw_witness",
    "gw_bloch_operator",
    "w6_witness",
    "DEGENERACY_TOL",
]

DEGENERACY_TOL = 1e-7


def compress(W, V) -> np.ndarray:
    """Return ``V^dagger W V`` for a Subspace or isometry ``V``."""
    basis = V.basis if isinstance(V, Subspace) else np.asarray(V)
    W = W.assemble() if isinstance(W, QLHamiltonian) else np.asarray(W)
    if W.shape != (basis.shape[0], basis.shape[0]):
        raise ValueError(f"operator shape {W.shape} does not match isometry rows {basis.shape[0]}")
    out = basis.conj().T @ W @ basis
    return 0.5 * (out + out.conj().T)


@dataclass(frozen=True)
class WitnessCertificate:
    """Outcome of :func:`certify_witness`.

    Attributes
    ----------
    certified : bool
        Extremum simple (gap above tolerance) and attained by the target state.
    extremum : float
        Extremal compressed eigenvalue for the chosen convention.
    second : float
        Next eigenvalue inward, or ``nan`` for a one-dimensional subspace.
    gap : float
        ``|extremum - second|``; infinite for a one-dimensional subspace.
    overlap : float
        ``|<psi|v_ext>|^2``.
    convention : str
        ``"max"`` or ``"min"``.
    dqls_dim : int
        Dimension of the DQLS subspace used for the compression.
    """

    certified: bool
    extremum: float
    second: float
    gap: float
    overlap: float
    convention: str
    dqls_dim: int


def _pure_ket(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim == 2:
        evals, evecs = np.linalg.eigh(0.5 * (psi + psi.conj().T))
        if np.sum(evals > 1e-9 * max(evals.max(), 1e-300)) != 1:
            raise ValueError("witnesses cannot certify mixed states")
        psi = evecs[:, -1]
    if abs(np.linalg.norm(psi) - 1) > 1e-10:
        raise ValueError("state is not normalised")
    return psi


def certify_witness(
    W,
    psi,
    ns: NeighborhoodStructure,
    convention: str = "max",
    tol: float = DEGENERACY_TOL,
    dims=None,
) -> WitnessCertificate:
    """Check that ``W`` is a UDA witness for ``psi``.

    Parameters
    ----------
    W : QLHamiltonian or ndarray
        Candidate witness; must be QL relative to ``ns``.
    psi : ndarray
        Normalised ket (rank-one density matrices are accepted, mixed ones
        rejected).
    ns : NeighborhoodStructure
    convention : {"max", "min"}
        Whether ``psi`` should be the unique maximiser or minimiser.
    tol : float
        Absolute gap threshold and overlap slack.
    """
    if convention not in ("max", "min"):
        raise ValueError(f"convention must be 'max' or 'min', got {convention!r}")
    psi = _pure_ket(psi)
    profile = infer_profile(psi, dims)
    if isinstance(W, QLHamiltonian):
        if not W.is_ql(ns):
            raise ValueError("witness is not quasi-local relative to the neighborhood structure")
        mat = W.assemble()
    else:
        mat = np.asarray(W, dtype=complex)
        if np.abs(ql_project(mat, ns, profile) - mat).max() > 1e-10 * max(1.0, np.abs(mat).max()):
            raise ValueError("witness is not quasi-local relative to the neighborhood structure")
    space = dqls_subspace(psi, ns, profile)
    if not space.contains(psi):
        raise RuntimeError("state does not lie in its own DQLS subspace")
    evals, evecs = np.linalg.eigh(compress(mat, space))
    pick, inner = (-1, -2) if convention == "max" else (0, 1)
    extremum = float(evals[pick])
    if space.dim > 1:
        second = float(evals[inner])
        gap = abs(extremum - second)
    else:
        second, gap = float("nan"), float("inf")
    vec = space.basis @ evecs[:, pick]
    overlap = float(abs(np.vdot(psi, vec)) ** 2)
    certified = bool(gap > tol and overlap > 1 - tol)
    return WitnessCertificate(certified, extremum, second, gap, overlap, convention, space.dim)


def _check_gw_pair(c0: float, c1: float) -> None:
    if not 0 <= c0 < 1:
        raise ValueError(f"c0 must lie in [0, 1), got {c0}")
    if c1 <= 0 or c1**2 >= 1 - c0**2:
        raise ValueError("need 0 < c1 < sqrt(1 - c0^2) for an admissible coefficient vector")


def gw_bloch_operator(c0: float) -> np.ndarray:
    """``cos(t) Z + sin(t) X`` with ``t = 2 arccos(c0)``, maximised by ``c0|0> + sqrt(1-c0^2)|1>``."""
    s = np.sqrt(1 - c0**2)
    return (2 * c0**2 - 1) * PAULI["Z"] + 2 * c0 * s * PAULI["X"]


def gw_witness(c0: float, c1: float, n: int, literal: bool = False) -> QLHamiltonian:
    """Strictly local witness on qubit 1 for the generalized W state.

    Parameters
    ----------
    c0, c1 : float
        Vacuum and first-site amplitudes of the target state.
    n : int
        Number of qubits.
    literal : bool
        Use ``1 - 2 c0^2`` as the Z weight instead of ``2 c0^2 - 1``. That sign
        does not match the Bloch angle ``2 arccos(c0)`` and the resulting
        operator is not maximised by the target; kept for comparison only.
    """
    _check_gw_pair(c0, c1)
    if n < 2:
        raise ValueError("need at least two qubits")
    s = np.sqrt(1 - c0**2)
    d1 = c1 / s
    zw = (1 - 2 * c0**2) if literal else (2 * c0**2 - 1)
    term = zw / d1**2 * ((d1**2 - 1) * PAULI["I"] + PAULI["Z"]) + 2 * c0 / d1 * s * PAULI["X"]
    return QLHamiltonian((((1,), term),), DimensionProfile.qubits(n))


def w6_witness() -> QLHamiltonian:
    """Pair raising plus pair lowering on the nine non-adjacent pairs of a six-ring."""
    pp = np.kron(PAULI["+"], PAULI["+"])
    term = pp + pp.conj().T
    return QLHamiltonian(tuple((pair, term) for pair in NON_NN_PAIRS_6), DimensionProfile.qubits(6))
