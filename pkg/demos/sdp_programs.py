"""The three semidefinite programs: UDA primal, norm-bounded UDA dual, UGS gap.

Run with ``python demos/sdp_programs.py`` (about a minute).
"""

import numpy as np

from udaugs import SdpOptions, all_k_body, ghz, ghz_minus, nn_chain, psi6, uda_dual, uda_primal, ugs_feasibility, w_state
from udaugs.states import zero_state


def main():
    # GHZ shares all nearest-neighbour marginals with GHZ-, so alpha = 0.
    g = uda_primal(ghz(3), nn_chain(3))
    gm = ghz_minus(3)
    print(f"GHZ3: alpha = {g.alpha:.2e}, optimiser overlap with GHZ- = {np.vdot(gm, g.sigma_star @ gm).real:.6f}")

    # Psi6 is determined among all states by its two-body marginals.
    p = uda_primal(psi6(), all_k_body(2, 6))
    print(f"Psi6: alpha = {p.alpha:.9f} (DQLS dimension {p.dqls_dim})")

    # The dual approaches 1 only as the norm bound grows: the optimum is not attained.
    d = uda_dual(psi6(), all_k_body(2, 6), SdpOptions(max_iter=20_000), primal=p)
    for t in d.norm_trajectory:
        print(f"  bound {t['bound']:>6g}: dual value {t['objective']:.6f}, optimiser norm {t['norm']:.1f}")
    print("  attained:", d.attained)

    # A unique ground state needs a gapped QL parent Hamiltonian.
    for name, psi, ns in [("W3", w_state(3), nn_chain(3)), ("zero4", zero_state(4), nn_chain(4)), ("Psi6", psi6(), all_k_body(2, 6))]:
        u = ugs_feasibility(psi, ns)
        print(f"{name}: gamma* = {u.gamma_star:.4f}, UGS = {u.is_ugs}")


if __name__ == "__main__":
    main()
