"""Semidefinite programs for UDA and UGS, and the splitting solver behind them.

Problem form
------------
All three programs are cast as

    minimise    c . x
    subject to  E x = f
                sum_i x_i F[j][i] + F0[j]  is PSD  for every block j

with a real vector ``x``. Equalities are eliminated once (``x = x0 + N y``
with an SVD null-space basis ``N``), after which ADMM alternates an exact
least-squares step in ``y`` (a cached inverse of the Cholesky-factored Gram
matrix) with eigenvalue clipping on each block. Over-relaxation and normalised residual balancing are used; the
scaled dual iterate gives the cone multipliers ``Y_j`` and a duality gap.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg

from .dqls import dqls_subspace, infer_profile
from .locality import (
    NeighborhoodStructure,
    QLHamiltonian,
    decompose,
    is_nontrivial,
    ql_basis,
    random_ql_hamiltonian,
)

__all__ = [
    "SdpOptions",
    "SdpProblem",
    "SdpResult",
    "solve_sdp",
    "PrimalReport",
    "DualReport",
    "UgsReport",
    "SuiteSummary",
    "uda_primal",
    "uda_dual",
    "ugs_feasibility",
    "ugs_implies_uda_suite",
]


@dataclass(frozen=True)
class SdpOptions:
    """Solver settings shared by all programs.

    Attributes
    ----------
    tol_abs : float
        Relative duality-gap and dual-residual tolerance.
    tol_feas : float
        Relative primal (cone) residual tolerance.
    max_iter : int
        Iteration cap per solve.
    penalty : float
        Initial ADMM penalty; adapted during the run.
    norm_bounds : tuple of float
        Operator-norm bounds probed by :func:`uda_dual`.
    seed : int
        Seed for randomised suites.
    tol_gap : float
        Threshold on the UGS gap ``gamma``.
    """

    tol_abs: float = 1e-7
    tol_feas: float = 1e-8
    max_iter: int = 200_000
    penalty: float = 1.0
    norm_bounds: tuple[float, ...] = (10.0, 100.0, 1000.0)
    seed: int = 0
    tol_gap: float = 1e-5

    def __post_init__(self):
        if min(self.tol_abs, self.tol_feas, self.tol_gap, self.penalty) <= 0:
            raise ValueError("tolerances and penalty must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        bounds = tuple(float(b) for b in self.norm_bounds)
        if not bounds or any(b <= 0 for b in bounds) or any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
            raise ValueError("norm_bounds must be positive and strictly ascending")
        object.__setattr__(self, "norm_bounds", bounds)

    def to_dict(self) -> dict:
        return {
            "tol_abs": self.tol_abs,
            "tol_feas": self.tol_feas,
            "max_iter": self.max_iter,
            "penalty": self.penalty,
            "norm_bounds": list(self.norm_bounds),
            "seed": self.seed,
            "tol_gap": self.tol_gap,
        }


# ---------------------------------------------------------------------------
# generic engine


@dataclass
class SdpProblem:
    """``min c.x`` s.t. ``E x = f`` and ``sum_i x_i F[i] + F0`` PSD per block.

    ``blocks`` holds pairs ``(F, F0)`` with ``F`` of shape (m, n, n). Matrices
    may be real symmetric or complex Hermitian.
    """

    c: np.ndarray
    blocks: list[tuple[np.ndarray, np.ndarray]]
    eq: tuple[np.ndarray, np.ndarray] | None = None

    def add_norm_bound(self, F: np.ndarray, F0: np.ndarray, bound: float) -> None:
        """Constrain ``-bound <= sum_i x_i F[i] + F0 <= bound`` in operator order."""
        eye = np.eye(F0.shape[0])
        self.blocks.append((-F, bound * eye - F0))
        self.blocks.append((F, bound * eye + F0))


@dataclass
class SdpResult:
    """Outcome of :func:`solve_sdp`.

    ``status`` is ``"optimal"``, ``"max_iter"`` or ``"infeasible"``. The
    residuals are the last measured relative values.
    """

    value: float
    x: np.ndarray
    status: str
    iterations: int
    primal_residual: float
    dual_residual: float
    gap: float
    dual_value: float
    multipliers: list[np.ndarray] = field(repr=False)

    @property
    def converged(self) -> bool:
        return self.status == "optimal"


def _psd_part(M: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(M)
    w = np.maximum(w, 0.0)
    return (v * w) @ v.conj().T


class _Reduced:
    """Equality-free form ``x = x0 + N y`` with flattened block operators."""

    def __init__(self, prob: SdpProblem):
        c = np.asarray(prob.c, dtype=float)
        m = c.size
        if prob.eq is not None:
            E, f = (np.asarray(a, dtype=float) for a in prob.eq)
            if E.shape != (len(f), m):
                raise ValueError("equality matrix shape does not match the variable count")
            u, s, vt = np.linalg.svd(E)
            rank = int(np.sum(s > 1e-10 * s.max())) if s.size and s.max() > 0 else 0
            self.x0 = vt[:rank].T @ ((u[:, :rank].T @ f) / s[:rank])
            if np.linalg.norm(E @ self.x0 - f) > 1e-8 * max(1.0, np.linalg.norm(f)):
                raise ValueError("equality constraints are inconsistent")
            self.N = vt[rank:].T
        else:
            self.x0 = np.zeros(m)
            self.N = np.eye(m)
        self.c = c
        self.ct = self.N.T @ c
        self.shapes, self.G, self.g = [], [], []
        for F, F0 in prob.blocks:
            F = np.asarray(F)
            F0 = np.asarray(F0)
            if F.shape[0] != m or F.shape[1:] != F0.shape:
                raise ValueError("block shapes are inconsistent")
            n = F0.shape[0]
            Fm = F.reshape(m, n * n)
            self.shapes.append(n)
            self.G.append(self.N.T @ Fm)
            self.g.append(self.x0 @ Fm + F0.ravel())
        self.Gc = [G.conj() for G in self.G]
        gram = sum((Gc @ G.T).real for Gc, G in zip(self.Gc, self.G))
        k = gram.shape[0]
        # the Gram matrix is small and fixed, so its inverse is applied by one matvec per iteration
        cho = scipy.linalg.cho_factor(gram + 1e-12 * np.trace(gram) / max(k, 1) * np.eye(k)) if k else None
        self.gram_inv = scipy.linalg.cho_solve(cho, np.eye(k)) if k else np.zeros((0, 0))

    def fwd(self, y):
        return [y @ G + g for G, g in zip(self.G, self.g)]

    def adj(self, Ms):
        return sum((Gc @ M).real for Gc, M in zip(self.Gc, Ms))


def solve_sdp(prob: SdpProblem, opts: SdpOptions | None = None) -> SdpResult:
    """Solve an SDP in the form of :class:`SdpProblem` by ADMM.

    Deterministic for fixed inputs. Never raises on non-convergence; the
    returned ``status`` tells.
    """
    opts = opts or SdpOptions()
    R = _Reduced(prob)
    if R.N.shape[1] == 0:
        # fully determined by the equalities
        x = R.x0
        mins = [np.linalg.eigvalsh(g.reshape(n, n)).min() for g, n in zip(R.g, R.shapes)]
        status = "optimal" if min(mins, default=0.0) >= -opts.tol_feas else "infeasible"
        val = float(R.c @ x)
        return SdpResult(val, x, status, 0, max(0.0, -min(mins, default=0.0)), 0.0, 0.0, val, [])
    rho = opts.penalty
    alpha = 1.6
    z = [np.zeros_like(g) for g in R.g]
    u = [np.zeros_like(g) for g in R.g]
    cnorm = np.linalg.norm(R.ct)
    y = np.zeros(R.N.shape[1])
    status = "max_iter"
    rp = rd = gap = np.inf
    pobj = dobj = np.nan
    it = 0
    Y_prev = None
    for it in range(1, opts.max_iter + 1):
        rhs = -R.ct / rho - R.adj([g - zz + uu for g, zz, uu in zip(R.g, z, u)])
        y = R.gram_inv @ rhs
        Ay = R.fwd(y)
        h = [alpha * a + (1 - alpha) * zz for a, zz in zip(Ay, z)]
        z = [_psd_part((hh + uu).reshape(n, n)).ravel() for hh, uu, n in zip(h, u, R.shapes)]
        u = [uu + hh - zz for uu, hh, zz in zip(u, h, z)]
        if it % 10 and it != opts.max_iter:
            continue
        nA = np.sqrt(sum(np.linalg.norm(a) ** 2 for a in Ay))
        nz = np.sqrt(sum(np.linalg.norm(a) ** 2 for a in z))
        rp_abs = np.sqrt(sum(np.linalg.norm(a - zz) ** 2 for a, zz in zip(Ay, z)))
        Y = [-rho * uu for uu in u]
        aty = R.adj(Y)
        rd_abs = np.linalg.norm(aty - R.ct)
        pobj = float(R.c @ (R.x0 + R.N @ y))
        dobj = float(R.c @ R.x0 - sum(np.vdot(YY, g).real for YY, g in zip(Y, R.g)))
        rp = rp_abs / (1 + max(nA, nz))
        rd = rd_abs / (1 + cnorm)
        gap = abs(pobj - dobj) / (1 + abs(pobj) + abs(dobj))
        if rp <= opts.tol_feas and rd <= opts.tol_abs and gap <= opts.tol_abs:
            status = "optimal"
            break
        if it % 200 == 0:
            # diverging multipliers along a direction with A^T dY ~ 0 and <dY, g> < 0
            if Y_prev is not None and rp > 1e-3:
                dY = [a - b for a, b in zip(Y, Y_prev)]
                size = np.sqrt(sum(np.linalg.norm(d) ** 2 for d in dY))
                if size > 0:
                    lhs = np.linalg.norm(R.adj(dY)) / size
                    dg = sum(np.vdot(d, g).real for d, g in zip(dY, R.g)) / size
                    if lhs < 1e-6 and dg < -1e-6:
                        status = "infeasible"
                        break
            Y_prev = [a.copy() for a in Y]
        if it % 20 == 0:
            rpn = rp_abs / max(nA, nz, 1e-12)
            rdn = rd_abs / max(cnorm, np.linalg.norm(aty), 1e-12)
            ratio = np.sqrt(rpn / max(rdn, 1e-300))
            if ratio > 3 or ratio < 1 / 3:
                step = min(max(ratio, 0.2), 5.0)
                rho *= step
                u = [uu / step for uu in u]
    x = R.x0 + R.N @ y
    mult = [(-rho * uu).reshape(n, n) for uu, n in zip(u, R.shapes)]
    return SdpResult(float(R.c @ x), x, status, it, float(rp), float(rd), float(gap), dobj, mult)


# ---------------------------------------------------------------------------
# helpers shared by the named programs


def _hermitian_basis(r: int, real: bool) -> np.ndarray:
    """HS-orthonormal basis of real symmetric (or Hermitian) r x r matrices."""
    mats = []
    for a in range(r):
        m = np.zeros((r, r), dtype=complex)
        m[a, a] = 1
        mats.append(m)
    for a in range(r):
        for b in range(a + 1, r):
            m = np.zeros((r, r), dtype=complex)
            m[a, b] = m[b, a] = 1 / np.sqrt(2)
            mats.append(m)
            if not real:
                m = np.zeros((r, r), dtype=complex)
                m[a, b], m[b, a] = -1j / np.sqrt(2), 1j / np.sqrt(2)
                mats.append(m)
    out = np.array(mats)
    return out.real.copy() if real else out


def _is_real(*arrays, tol: float = 1e-12) -> bool:
    return all(np.abs(np.imag(a)).max(initial=0.0) <= tol for a in arrays)


def _prepare(psi, ns: NeighborhoodStructure, dims):
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError("expected a ket")
    if abs(np.linalg.norm(psi) - 1) > 1e-10:
        raise ValueError("state is not normalised")
    if not is_nontrivial(ns):
        raise ValueError("neighborhood structure is trivial")
    profile = infer_profile(psi, dims)
    if profile.n_sites != ns.n_sites:
        raise ValueError("state and neighborhood structure disagree on the number of sites")
    return psi, profile


def _ql_ops(ns, profile, real: bool) -> np.ndarray:
    basis = ql_basis(ns, profile)
    mats = basis.matrices
    if real:
        return mats[basis.real_mask].real.copy()
    return mats


# ---------------------------------------------------------------------------
# primal

DIRECT_BUDGET = 5_000


@dataclass
class PrimalReport:
    """Result of the UDA primal program.

    ``alpha`` is the minimal overlap ``<psi|sigma|psi>`` over states sharing
    the marginals of ``psi``; ``alpha = 1`` means ``psi`` is UDA.
    """

    alpha: float
    sigma_star: np.ndarray = field(repr=False)
    is_uda: bool
    feas_residual: float
    iterations: int
    converged: bool
    dqls_dim: int
    restricted: bool
    raw_value: float
    method: str = "direct"

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "is_uda": self.is_uda,
            "feas_residual": self.feas_residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "dqls_dim": self.dqls_dim,
            "restricted": self.restricted,
            "raw_value": self.raw_value,
            "method": self.method,
        }


def uda_primal(
    psi,
    ns: NeighborhoodStructure,
    opts: SdpOptions | None = None,
    dims=None,
    restrict: bool = True,
    method: str = "auto",
) -> PrimalReport:
    """Minimise ``tr(rho sigma)`` over states with the marginals of ``psi``.

    With ``restrict`` the variable is ``sigma = V S V^dagger`` with ``V`` an
    isometry onto the DQLS subspace, which contains every feasible state.
    Real states use a real symmetric ``S``.

    ``method`` selects how ``S`` is obtained:

    * ``"direct"`` runs ADMM on the primal program itself. It slows down
      badly when the feasible set has empty interior, e.g. a single point.
    * ``"multiplier"`` solves the dual at the largest norm bound and reads
      ``S`` off the multiplier of its ``H + rho >= 0`` block. That multiplier
      is PSD by construction and is primal feasible whenever the multiplier
      of the norm-bound block vanishes.
    * ``"auto"`` tries a short direct run, then the multiplier route when its
      bound block is inactive and ``S`` meets the marginals, and otherwise
      falls back to a full direct run.

    ``feas_residual`` is always measured on the returned ``sigma``.
    """
    opts = opts or SdpOptions()
    psi, profile = _prepare(psi, ns, dims)
    D = profile.total_dim
    rho = np.outer(psi, psi.conj())
    V = dqls_subspace(psi, ns, profile).basis if restrict else np.eye(D, dtype=complex)
    r = V.shape[1]
    real = _is_real(psi, V)
    if r == 1:
        sigma = V @ V.conj().T
        alpha = float(np.real(psi.conj() @ sigma @ psi))
        return PrimalReport(alpha, sigma, alpha > 1 - 10 * opts.tol_abs, 0.0, 0, True, 1, restrict, alpha, "exact")
    if real:
        V = V.real
    if method not in ("auto", "direct", "multiplier"):
        raise ValueError(f"unknown primal method {method!r}")
    ops = _ql_ops(ns, profile, real)
    comp = np.einsum("da,kde,eb->kab", V.conj(), ops, V)
    f = np.einsum("kab,ba->k", ops, rho).real
    pr = V.conj().T @ psi

    def report(S, res, used):
        S = 0.5 * (S + S.conj().T)
        sigma = V @ S @ V.conj().T
        mismatch = np.einsum("kab,ba->k", ops, sigma).real - f
        psd_violation = max(0.0, -float(np.linalg.eigvalsh(S).min()))
        feas = float(max(np.abs(mismatch).max(), abs(np.trace(sigma).real - 1), psd_violation))
        raw = float(np.real(psi.conj() @ sigma @ psi))
        alpha = float(np.clip(raw, 0.0, 1.0))
        return PrimalReport(
            alpha, sigma, alpha > 1 - 10 * opts.tol_abs, feas, res.iterations, res.converged, r, restrict, raw, used
        )

    def direct(max_iter):
        Fs = _hermitian_basis(r, real)
        E = np.einsum("kab,iba->ki", comp, Fs).real
        c = np.einsum("a,iab,b->i", pr.conj(), Fs, pr).real
        res = solve_sdp(SdpProblem(c, [(Fs, np.zeros((r, r)))], (E, f)), replace(opts, max_iter=max_iter))
        return report(np.tensordot(res.x, Fs, axes=(0, 0)), res, "direct")

    if method == "direct":
        return direct(opts.max_iter)
    if method == "auto":
        quick = direct(min(opts.max_iter, DIRECT_BUDGET))
        if quick.converged:
            return quick
    # sigma as the PSD multiplier of the bounded dual on the DQLS subspace;
    # valid when the bound block is inactive (its multiplier vanishes)
    bound = max(opts.norm_bounds)
    rho_r = np.outer(pr, pr.conj())
    if real:
        rho_r = rho_r.real
    res = solve_sdp(SdpProblem(f, [(comp, rho_r), (-comp, bound * np.eye(r))]), opts)
    S, W = res.multipliers
    rep = report(S, res, "multiplier")
    inactive = abs(np.trace(W)) <= opts.tol_feas * max(1.0, bound)
    if method == "multiplier" or (res.converged and inactive and rep.feas_residual <= 10 * opts.tol_abs):
        return rep
    return direct(opts.max_iter)


# ---------------------------------------------------------------------------
# dual


@dataclass
class DualReport:
    """Result of the norm-bounded UDA dual probes.

    ``norm_trajectory`` has one entry per bound with the optimiser norm, the
    certified objective and the convergence flag. ``attained`` is a heuristic:
    some bound level has an optimiser well inside the bound (below half of it)
    while matching the primal value.
    """

    beta: float
    h_star: QLHamiltonian = field(repr=False)
    attained: bool
    norm_trajectory: list[dict]
    gap: float
    alpha: float
    converged: bool

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "attained": self.attained,
            "attainment_rule": "heuristic: some bound level has |alpha - beta| <= 10 * tol_abs and an optimiser "
            "(or a loosely solved smallest-norm near-optimiser) of norm < 0.5 * bound",
            "norm_trajectory": self.norm_trajectory,
            "gap": self.gap,
            "alpha": self.alpha,
            "converged": self.converged,
        }


PROBE_SLACK = 1e-3


def _certify(H, rho):
    """Shift by a multiple of the identity (always QL) so that ``H + rho`` is PSD."""
    H = 0.5 * (H + H.conj().T)
    shift = max(0.0, -float(np.linalg.eigvalsh(H + rho).min()))
    H = H + shift * np.eye(rho.shape[0])
    return H, float(-np.real(np.trace(H @ rho)))


def _dual_at_bound(rho, ops, bound, opts):
    D = rho.shape[0]
    c = np.einsum("kab,ba->k", ops, rho).real
    prob = SdpProblem(c, [(ops, rho.copy()), (-ops, bound * np.eye(D))])
    res = solve_sdp(prob, opts)
    H, beta = _certify(np.tensordot(res.x, ops, axes=(0, 0)), rho)
    return H, beta, res


def _min_norm_optimizer(rho, ops, level, opts):
    """Smallest ``t`` with ``H + rho >= 0``, ``H <= t I`` and ``-tr(H rho) >= level``.

    ``H >= -rho`` already gives ``H >= -I``, so ``t`` bounds the operator norm
    once it exceeds one.
    """
    D = rho.shape[0]
    m = len(ops)
    c = np.einsum("kab,ba->k", ops, rho).real
    cvec = np.zeros(m + 1)
    cvec[-1] = 1.0
    zero = np.zeros((1, D, D), dtype=ops.dtype)
    blocks = [
        (np.concatenate([ops, zero]), rho.copy()),
        (np.concatenate([-ops, np.eye(D, dtype=ops.dtype)[None]]), np.zeros((D, D))),
        (np.concatenate([-c, [0.0]])[:, None, None], np.array([[-level]])),
    ]
    res = solve_sdp(SdpProblem(cvec, blocks), opts)
    H, beta = _certify(np.tensordot(res.x[:m], ops, axes=(0, 0)), rho)
    return H, beta, res


def uda_dual(
    psi,
    ns: NeighborhoodStructure,
    opts: SdpOptions | None = None,
    dims=None,
    primal: PrimalReport | None = None,
) -> DualReport:
    """Maximise ``-tr(H rho)`` over QL ``H`` with ``H + rho`` PSD, per norm bound.

    Each bound level is solved on the full space. The optimiser is shifted by
    a multiple of the identity so that the reported objective is feasible, and
    hence a certified lower bound on the unbounded dual value. A paired primal
    run (computed unless supplied) provides ``alpha`` and the gap.

    When a level already matches ``alpha`` but its optimiser sits near the
    bound, a second, loosely solved program estimates the smallest norm of
    an optimiser (objective within ``PROBE_SLACK``), since the optimal set can
    be unbounded even when the optimum is attained. ``beta`` and ``h_star``
    always come from the bounded solves.
    """
    opts = opts or SdpOptions()
    psi, profile = _prepare(psi, ns, dims)
    rho = np.outer(psi, psi.conj())
    real = _is_real(psi)
    if real:
        rho = rho.real
    ops = _ql_ops(ns, profile, real)
    if primal is None:
        primal = uda_primal(psi, ns, opts, profile)
    probe_opts = SdpOptions(tol_abs=1e-4, tol_feas=1e-5, max_iter=min(opts.max_iter, 20_000), penalty=opts.penalty)
    traj = []
    best = None
    attained = False
    all_conv = True
    for bound in opts.norm_bounds:
        H, beta, res = _dual_at_bound(rho, ops, bound, opts)
        norm = float(np.abs(np.linalg.eigvalsh(H)).max())
        entry = {
            "bound": bound,
            "norm": norm,
            "objective": beta,
            "converged": res.converged,
            "iterations": res.iterations,
            "min_norm": None,
            "min_norm_objective": None,
        }
        matched = abs(primal.alpha - beta) <= 10 * opts.tol_abs
        size = norm
        if matched and norm >= 0.5 * bound and not attained:
            # the optimal set can be unbounded even when the optimum is
            # attained; estimate the norm of its smallest member
            Hm, beta_m, _ = _min_norm_optimizer(rho, ops, beta, probe_opts)
            norm_m = float(np.abs(np.linalg.eigvalsh(Hm)).max())
            entry["min_norm"], entry["min_norm_objective"] = norm_m, beta_m
            if beta_m >= beta - PROBE_SLACK:
                size = min(size, norm_m)
        traj.append(entry)
        all_conv &= res.converged
        if best is None or beta > best[1]:
            best = (H, beta)
        if matched and size < 0.5 * bound:
            attained = True
    H, beta = best
    return DualReport(
        beta,
        decompose(H, ns, profile, tol=1e-8),
        attained,
        traj,
        abs(primal.alpha - beta),
        primal.alpha,
        all_conv,
    )


# ---------------------------------------------------------------------------
# UGS feasibility


@dataclass
class UgsReport:
    """Largest spectral gap ``gamma_star`` above a zero-energy ``psi`` among
    QL Hamiltonians of operator norm at most one."""

    gamma_star: float
    h_star: QLHamiltonian = field(repr=False)
    is_ugs: bool
    iterations: int
    converged: bool

    def to_dict(self) -> dict:
        return {
            "gamma_star": self.gamma_star,
            "is_ugs": self.is_ugs,
            "iterations": self.iterations,
            "converged": self.converged,
        }


def ugs_feasibility(
    psi,
    ns: NeighborhoodStructure,
    opts: SdpOptions | None = None,
    dims=None,
) -> UgsReport:
    """Maximise ``gamma`` s.t. ``H psi = 0``, ``H >= gamma (I - |psi><psi|)``, ``||H|| <= 1``.

    With ``Q`` an orthonormal basis of the complement of ``psi`` and
    ``H psi = 0``, the conic constraints read ``gamma I <= Q^dagger H Q <= I``;
    the lower norm bound is implied whenever ``gamma >= 0``, which holds at
    the optimum because ``H = 0`` is feasible.
    """
    opts = opts or SdpOptions()
    psi, profile = _prepare(psi, ns, dims)
    real = _is_real(psi)
    ops = _ql_ops(ns, profile, real)
    Q = scipy.linalg.null_space(psi.conj()[None, :])
    if real:
        Q = Q.real
        psi_r = psi.real
    else:
        psi_r = psi
    m = len(ops)
    k = Q.shape[1]
    comp = np.einsum("da,mde,eb->mab", Q.conj(), ops, Q)
    # variables: (x_1..x_m, gamma)
    c = np.zeros(m + 1)
    c[-1] = -1.0
    act = np.einsum("mde,e->md", ops, psi_r)
    E = np.hstack([act.real, act.imag]).T if not real else act.real.T
    E = np.hstack([E, np.zeros((E.shape[0], 1))])
    f = np.zeros(E.shape[0])
    eye = np.eye(k)
    F1 = np.concatenate([comp, -eye[None]], axis=0)
    F2 = np.concatenate([-comp, np.zeros((1, k, k))], axis=0)
    prob = SdpProblem(c, [(F1, np.zeros((k, k))), (F2, eye)], (E, f))
    res = solve_sdp(prob, opts)
    H = np.tensordot(res.x[:m], ops, axes=(0, 0))
    H = 0.5 * (H + H.conj().T)
    # certified gap of the returned operator, rescaled to unit norm
    norm = float(np.abs(np.linalg.eigvalsh(H)).max())
    if norm > 1:
        H = H / norm
    Qh = Q.conj().T @ H @ Q
    gamma = float(np.linalg.eigvalsh(0.5 * (Qh + Qh.conj().T)).min()) if k else 0.0
    gamma = max(gamma, 0.0)
    return UgsReport(gamma, decompose(H, ns, profile, tol=1e-8), gamma > opts.tol_gap, res.iterations, res.converged)


# ---------------------------------------------------------------------------
# suite


@dataclass
class SuiteSummary:
    trials: int
    evaluated: int
    skipped: int
    violations: int
    alphas: list[float]
    gaps: list[float]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "evaluated": self.evaluated,
            "skipped": self.skipped,
            "violations": self.violations,
            "alphas": self.alphas,
            "gaps": self.gaps,
        }


def ugs_implies_uda_suite(
    seed: int,
    trials: int,
    ns: NeighborhoodStructure,
    opts: SdpOptions | None = None,
    min_gap: float = 1e-4,
) -> SuiteSummary:
    """Ground states of random QL Hamiltonians must come out UDA.

    Draws with a spectral gap below ``min_gap`` are skipped.
    """
    opts = opts or SdpOptions()
    alphas, gaps = [], []
    skipped = violations = 0
    for t in range(trials):
        H = random_ql_hamiltonian(ns, ns.n_sites, seed + t).assemble()
        evals, evecs = np.linalg.eigh(H)
        if evals[1] - evals[0] <= min_gap:
            skipped += 1
            continue
        rep = uda_primal(evecs[:, 0], ns, opts)
        alphas.append(rep.alpha)
        gaps.append(float(evals[1] - evals[0]))
        if not rep.is_uda:
            violations += 1
    return SuiteSummary(trials, len(alphas), skipped, violations, alphas, gaps)
