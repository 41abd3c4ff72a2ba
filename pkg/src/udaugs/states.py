"""Named pure states: W, generalized W, GHZ and the six-qubit counterexample."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .tensor import basis_ket

__all__ = [
    "w_state",
    "GeneralizedW",
    "generalized_w",
    "random_gw_coefficients",
    "ghz",
    "ghz_minus",
    "zero_state",
    "NON_NN_PAIRS_6",
    "dbar6",
    "psi6",
    "slocc_apply",
    "parse_state",
]

ADMISSIBILITY_TOL = 1e-12

# (i, j) with j - i > 1 on a six-site ring, i.e. excluding (1, 6)
NON_NN_PAIRS_6 = ((1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 6))


def zero_state(n: int) -> np.ndarray:
    return basis_ket([], n)


def w_state(n: int) -> np.ndarray:
    """Uniform superposition of the n single-excitation kets."""
    if n < 2:
        raise ValueError("W state needs at least two qubits")
    return sum(basis_ket([k], n) for k in range(1, n + 1)) / np.sqrt(n)


@dataclass(frozen=True, eq=False)
class GeneralizedW:
    """``c0 |0> + sum_k c_k |k>`` together with its split ``c0|0> + sqrt(1-c0^2)|Wbar>``."""

    coefficients: np.ndarray
    ket: np.ndarray
    wbar: np.ndarray

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    @property
    def c0(self) -> float:
        return float(self.coefficients[0])


def _check_gw(c: np.ndarray) -> None:
    if c.ndim != 1 or len(c) < 3:
        raise ValueError("need coefficients c0..cN with N >= 2")
    if c[0] < 0:
        raise ValueError("c0 must be non-negative")
    if np.any(c[1:] <= 0):
        raise ValueError("c_k must be strictly positive for k >= 1")
    if abs(np.sum(c**2) - 1) > ADMISSIBILITY_TOL:
        raise ValueError(f"coefficients not normalised: sum c_k^2 = {np.sum(c ** 2)!r}")


def generalized_w(c: Sequence[float]) -> GeneralizedW:
    c = np.asarray(c, dtype=float)
    _check_gw(c)
    n = len(c) - 1
    ket = c[0] * basis_ket([], n) + sum(c[k] * basis_ket([k], n) for k in range(1, n + 1))
    rest = ket - c[0] * basis_ket([], n)
    wbar = rest / np.linalg.norm(rest)
    return GeneralizedW(c, ket, wbar)


def random_gw_coefficients(n: int, rng: np.random.Generator) -> np.ndarray:
    """Admissible generalized-W coefficients with c0 uniform in [0, 0.95)."""
    c0 = rng.uniform(0, 0.95)
    ck = rng.uniform(0.05, 1.0, size=n)
    ck *= np.sqrt(1 - c0**2) / np.linalg.norm(ck)
    return np.concatenate([[c0], ck])


def ghz(n: int) -> np.ndarray:
    if n < 2:
        raise ValueError("GHZ state needs at least two qubits")
    return (basis_ket([], n) + basis_ket(range(1, n + 1), n)) / np.sqrt(2)


def ghz_minus(n: int) -> np.ndarray:
    if n < 2:
        raise ValueError("GHZ state needs at least two qubits")
    return (basis_ket([], n) - basis_ket(range(1, n + 1), n)) / np.sqrt(2)


def dbar6() -> np.ndarray:
    """Two-excitation Dicke-like state on six qubits with the ring-adjacent pairs removed."""
    return sum(basis_ket(p, 6) for p in NON_NN_PAIRS_6) / 3


def psi6() -> np.ndarray:
    return (basis_ket([], 6) + dbar6()) / np.sqrt(2)


def slocc_apply(psi: np.ndarray, local_ops: Sequence[np.ndarray]) -> np.ndarray:
    """Apply an invertible local operator on every qubit and renormalise."""
    ops = [np.asarray(a, dtype=complex) for a in local_ops]
    n = int(round(np.log2(len(psi))))
    if len(ops) != n or any(a.shape != (2, 2) for a in ops):
        raise ValueError(f"need {n} local 2x2 factors")
    for a in ops:
        if abs(np.linalg.det(a)) < 1e-12 * max(1.0, np.abs(a).max() ** 2):
            raise ValueError("local factor is singular")
    out = reduce(np.kron, ops) @ psi
    return out / np.linalg.norm(out)


def parse_state(text: str) -> np.ndarray:
    """Parse ``w:<N>``, ``gw:<N>:<c0,...,cN>``, ``ghz:<N>``, ``psi6``,
    ``basis:<N>:<i,j,...>`` or a JSON amplitude vector.

    JSON entries may be numbers or ``[re, im]`` pairs.
    """
    text = text.strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad amplitude JSON at position {exc.pos}: {exc.msg}") from exc
        amps = np.array([complex(a[0], a[1]) if isinstance(a, list) else a for a in data], dtype=complex)
        n = np.log2(len(amps))
        if len(amps) < 2 or n != int(n):
            raise ValueError("amplitude vector length must be a power of two")
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("amplitude vector is zero")
        return amps / norm
    parts = text.split(":")
    kind = parts[0]
    try:
        if kind == "psi6" and len(parts) == 1:
            return psi6()
        if kind == "w" and len(parts) == 2:
            return w_state(int(parts[1]))
        if kind == "ghz" and len(parts) == 2:
            return ghz(int(parts[1]))
        if kind == "zero" and len(parts) == 2:
            return zero_state(int(parts[1]))
        if kind == "gw" and len(parts) == 3:
            n = int(parts[1])
            c = [float(x) for x in parts[2].split(",")]
            if len(c) != n + 1:
                raise ValueError(f"expected {n + 1} coefficients, got {len(c)}")
            return generalized_w(c).ket
        if kind == "basis" and len(parts) in (2, 3):
            n = int(parts[1])
            ex = [int(x) for x in parts[2].split(",") if x] if len(parts) == 3 else []
            return basis_ket(ex, n)
    except ValueError as exc:
        raise ValueError(f"cannot parse state {text!r}: {exc}") from exc
    raise ValueError(f"cannot parse state {text!r} (unknown form at position 0)")
