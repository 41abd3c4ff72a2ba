"""Unique determination of pure states by quasi-local marginals.

Tools to decide whether a multipartite pure state is fixed by its
neighborhood reduced density matrices (UDA), and whether it is the unique
ground state (UGS) of a quasi-local Hamiltonian.
"""

from .dqls import dqls_subspace, joining_support_check, nn_equivalence_check_psi6, rank_bound
from .locality import (
    NeighborhoodStructure,
    QLHamiltonian,
    all_k_body,
    assemble,
    is_nontrivial,
    nn_chain,
    parse_structure,
    ql_project,
    same_marginals,
)
from .sdp import SdpOptions, solve_sdp, uda_dual, uda_primal, ugs_feasibility
from .states import generalized_w, ghz, ghz_minus, parse_state, psi6, w_state
from .symmetry import dihedral_group, symmetrize, theorem4_matrices, verify_not_ugs_symmetric
from .tensor import DimensionProfile, Subspace, basis_ket, embed, partial_trace
from .witness import certify_witness, compress, gw_witness, w6_witness

__all__ = [
    "dqls_subspace",
    "joining_support_check",
    "nn_equivalence_check_psi6",
    "rank_bound",
    "NeighborhoodStructure",
    "QLHamiltonian",
    "all_k_body",
    "assemble",
    "is_nontrivial",
    "nn_chain",
    "parse_structure",
    "ql_project",
    "same_marginals",
    "SdpOptions",
    "solve_sdp",
    "uda_dual",
    "uda_primal",
    "ugs_feasibility",
    "generalized_w",
    "ghz",
    "ghz_minus",
    "parse_state",
    "psi6",
    "w_state",
    "dihedral_group",
    "symmetrize",
    "theorem4_matrices",
    "verify_not_ugs_symmetric",
    "DimensionProfile",
    "Subspace",
    "basis_ket",
    "embed",
    "partial_trace",
    "certify_witness",
    "compress",
    "gw_witness",
    "w6_witness",
]

__version__ = "0.1.0"
