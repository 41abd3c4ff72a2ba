"""No ring-symmetric two-body Hamiltonian has Psi6 as its unique ground state.

Run with ``python demos/symmetric_no_go.py``.
"""

import json

import numpy as np

from udaugs import theorem4_matrices, verify_not_ugs_symmetric


def main():
    A, B = theorem4_matrices()
    print("|det A| =", abs(np.linalg.det(A)))
    null = np.linalg.svd(B)[2][-1]
    print("B-nullspace direction:", np.round(null / null[1], 9))
    rep = verify_not_ugs_symmetric()
    for step in rep.steps:
        print(json.dumps(step, default=float))
    print("degeneracy lower bound:", rep.degeneracy_lower_bound, "| symmetric parent exists:", rep.is_ugs_symmetric)


if __name__ == "__main__":
    main()
