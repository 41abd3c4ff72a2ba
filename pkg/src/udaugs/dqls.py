"""DQLS subspaces and the support constraints they impose on joining sets.

The DQLS subspace of a state is the intersection, over all neighborhoods, of
the supports of its reduced density matrices tensored with the identity on the
complement. Every state sharing those marginals is supported inside it.
"""

from __future__ import annotations

import numpy as np

from .locality import NeighborhoodStructure, is_nontrivial, nn_chain, all_k_body, same_marginals
from .tensor import (
    DEFAULT_SUPPORT_TOL,
    DimensionProfile,
    Subspace,
    as_profile,
    embed,
    ket_to_density,
    partial_trace,
    projector_distance,
    subspace_intersection,
    support,
)

__all__ = [
    "MarginalMismatch",
    "infer_profile",
    "dqls_subspace",
    "joining_support_check",
    "rank_bound",
    "nn_equivalence_check",
    "nn_equivalence_check_psi6",
]

CONTAINMENT_TOL = 1e-8


class MarginalMismatch(ValueError):
    """The two states do not share their neighborhood marginals."""


def infer_profile(state: np.ndarray, dims=None) -> DimensionProfile:
    """Profile from ``dims`` or, when omitted, an all-qubit profile sized to ``state``."""
    if dims is not None:
        return as_profile(dims)
    D = np.asarray(state).shape[0]
    n = int(round(np.log2(D)))
    if 2**n != D:
        raise ValueError(f"dimension {D} is not a power of two; pass dims explicitly")
    return DimensionProfile.qubits(n)


def _embedded_support(rho: np.ndarray, sites, profile: DimensionProfile, tol: float) -> Subspace:
    sub = [profile.local_dims[s - 1] for s in sites]
    local = support(partial_trace(rho, sites, profile), sub, tol)
    proj = embed(local.projector(), sites, profile)
    evals, evecs = np.linalg.eigh(proj)
    return Subspace(evecs[:, evals > 0.5], profile)


def dqls_subspace(
    state: np.ndarray,
    ns: NeighborhoodStructure,
    dims=None,
    tol: float = DEFAULT_SUPPORT_TOL,
) -> Subspace:
    """Intersection of the embedded neighborhood-RDM supports of ``state``.

    Parameters
    ----------
    state : ndarray
        Ket of length D or density matrix of shape (D, D).
    ns : NeighborhoodStructure
        Must be non-trivial.
    dims : optional
        Local dimensions; defaults to qubits.
    tol : float
        Relative eigenvalue cutoff for RDM supports.

    Returns
    -------
    Subspace
        Canonically ordered orthonormal basis.
    """
    if not is_nontrivial(ns):
        raise ValueError("neighborhood structure is trivial (uncovered site or isolated neighborhood)")
    profile = infer_profile(state, dims)
    if profile.n_sites != ns.n_sites:
        raise ValueError("state and neighborhood structure disagree on the number of sites")
    rho = ket_to_density(state)
    parts = [_embedded_support(rho, nb, profile, tol) for nb in ns.neighborhoods]
    return subspace_intersection(parts)


def joining_support_check(sigma, rho, ns: NeighborhoodStructure, dims=None, tol: float = CONTAINMENT_TOL) -> bool:
    """Whether ``supp(sigma)`` lies in the DQLS subspace of ``rho``.

    Raises :class:`MarginalMismatch` if the two states have different
    neighborhood marginals, since containment is then not guaranteed.
    """
    profile = infer_profile(rho, dims)
    if not same_marginals(rho, sigma, ns, profile, tol=tol):
        raise MarginalMismatch("sigma and rho have different neighborhood marginals")
    space = dqls_subspace(rho, ns, profile)
    supp = support(ket_to_density(sigma), profile)
    resid = supp.projector() - space.projector() @ supp.projector()
    return bool(np.linalg.norm(resid) <= tol)


def rank_bound(state, ns: NeighborhoodStructure, dims=None) -> int:
    """Upper bound on the rank of any state with the same marginals."""
    return dqls_subspace(state, ns, dims).dim


def nn_equivalence_check(state, n: int = 6, tol: float = CONTAINMENT_TOL) -> bool:
    """Compare DQLS subspaces under all pairs and under the periodic NN chain."""
    a = dqls_subspace(state, all_k_body(2, n))
    b = dqls_subspace(state, nn_chain(n, periodic=True))
    return projector_distance(a, b) <= tol


def nn_equivalence_check_psi6() -> bool:
    from .states import psi6

    return nn_equivalence_check(psi6(), 6)
