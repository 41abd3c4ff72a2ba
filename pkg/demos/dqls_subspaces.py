"""DQLS subspaces: which global states can share a pure state's local marginals.

Run with ``python demos/dqls_subspaces.py``.
"""

import numpy as np

from udaugs import all_k_body, dqls_subspace, nn_chain, psi6, w_state
from udaugs.dqls import nn_equivalence_check_psi6


def main():
    # The W state: only |0...0> and the W state itself survive every two-body support.
    for n in (3, 4, 5, 6):
        dims = [dqls_subspace(w_state(n), ns).dim for ns in (nn_chain(n), nn_chain(n, periodic=True), all_k_body(2, n))]
        print(f"W_{n}: DQLS dimension under open NN / periodic NN / all pairs = {dims}")

    # The six-qubit counterexample state has an 18-dimensional DQLS subspace.
    space = dqls_subspace(psi6(), all_k_body(2, 6))
    print(f"\nPsi6 under all pairs: dimension {space.dim}")
    # every basis vector is a computational ket; name it by its excited sites
    labels = []
    for col in space.basis.T:
        idx = int(np.argmax(np.abs(col)))
        labels.append("".join(str(i + 1) for i in range(6) if idx >> (5 - i) & 1) or "0")
    print("basis kets (excited sites):", ", ".join(labels))
    print("periodic NN chain gives the same subspace:", nn_equivalence_check_psi6())


if __name__ == "__main__":
    main()
