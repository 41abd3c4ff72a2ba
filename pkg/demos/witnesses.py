"""UDA witnesses: QL operators whose compression singles out the target state.

Run with ``python demos/witnesses.py``.
"""

import numpy as np

from udaugs import all_k_body, certify_witness, compress, dqls_subspace, generalized_w, gw_witness, nn_chain, psi6, w6_witness
from udaugs.witness import gw_bloch_operator


def main():
    # Six-qubit witness: nine non-adjacent pair flips, compressed onto the 18-dim subspace.
    space = dqls_subspace(psi6(), all_k_body(2, 6))
    evals = np.linalg.eigvalsh(compress(w6_witness(), space))
    print("W6 compressed spectrum:", np.round(evals, 6))
    cert = certify_witness(w6_witness(), psi6(), all_k_body(2, 6))
    print(f"certified={cert.certified} extremum={cert.extremum:.6f} second={cert.second:.6f} overlap={cert.overlap:.12f}")
    W = w6_witness().assemble()
    print("Psi6 is not an eigenvector of the full witness; residual", np.linalg.norm(W @ psi6() - 3 * psi6()))

    # Generalized W state: a single-qubit witness acts as a Bloch operator on span{|0>, |Wbar>}.
    gw = generalized_w([0.6, 0.5, 0.4, np.sqrt(1 - 0.36 - 0.25 - 0.16)])
    Wg = gw_witness(gw.c0, gw.coefficients[1], gw.n)
    V = np.array([np.eye(2**gw.n)[0], gw.wbar]).T
    print("\ncompression onto span{|0>, |Wbar>}:\n", np.round(compress(Wg, V).real, 6))
    print("expected Bloch operator:\n", np.round(gw_bloch_operator(gw.c0).real, 6))
    print("certified:", certify_witness(Wg, gw.ket, nn_chain(gw.n)).certified)


if __name__ == "__main__":
    main()
