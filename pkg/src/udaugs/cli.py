"""Command-line front end.

Every command prints one JSON document (sorted keys, reals to 12 significant
digits) to stdout or ``--out`` and a short human summary to stderr. Exit codes:
0 when a verdict was computed, 2 for unparsable input, 3 when a solver did not
converge, 4 when the counterexample pipeline contradicts an expected verdict.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .dqls import dqls_subspace
from .locality import all_k_body, parse_structure, ql_project, random_ql_hamiltonian
from .sdp import SdpOptions, uda_dual, uda_primal, ugs_feasibility, ugs_implies_uda_suite
from .states import parse_state, psi6
from .symmetry import dihedral_group, symmetrize, verify_not_ugs_symmetric
from .witness import certify_witness, gw_witness, w6_witness

__all__ = ["RunConfig", "run", "main", "to_json"]

COMMANDS = ("dqls", "uda", "dual", "ugs", "witness", "symmetrize", "counterexample", "suite")
EXIT_OK, EXIT_PARSE, EXIT_SOLVER, EXIT_CONTRADICTION = 0, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    state_spec: str = "psi6"
    ns_spec: str = "all2:6"
    options: dict = field(default_factory=dict)
    output_path: str | None = None
    convention: str = "max"
    witness: str = "auto"
    trials: int = 20


class SolverFailure(RuntimeError):
    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


def _clean(obj):
    """Round reals to 12 significant digits and make the tree JSON-safe."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.12g}")
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(obj.real), _clean(obj.imag)]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    return obj


def to_json(report: dict) -> str:
    return json.dumps(_clean(report), sort_keys=True, indent=2)


def _options(cfg: RunConfig) -> SdpOptions:
    return SdpOptions(**cfg.options)


def _inputs(cfg: RunConfig) -> dict:
    return {"command": cfg.command, "state": cfg.state_spec, "ns": cfg.ns_spec}


def _state_ns(cfg: RunConfig):
    psi = parse_state(cfg.state_spec)
    n = int(round(np.log2(len(psi))))
    ns = parse_structure(cfg.ns_spec, n_sites=n)
    if ns.n_sites != n:
        raise ValueError(f"structure {cfg.ns_spec!r} has {ns.n_sites} sites but the state has {n}")
    return psi, ns


def _basis_json(basis: np.ndarray):
    if np.abs(basis.imag).max(initial=0.0) < 1e-14:
        return basis.real.T
    return [[[z.real, z.imag] for z in col] for col in basis.T]


def _cmd_dqls(cfg):
    psi, ns = _state_ns(cfg)
    space = dqls_subspace(psi, ns)
    return {"dimension": space.dim, "rank_bound": space.dim, "basis": _basis_json(space.basis)}, (
        f"DQLS dimension {space.dim}"
    )


def _cmd_uda(cfg):
    psi, ns = _state_ns(cfg)
    rep = uda_primal(psi, ns, _options(cfg))
    out = rep.to_dict()
    if not rep.converged:
        raise SolverFailure("primal solver did not converge", out)
    return out, f"alpha = {rep.alpha:.9f}, UDA: {rep.is_uda}"


def _cmd_dual(cfg):
    psi, ns = _state_ns(cfg)
    rep = uda_dual(psi, ns, _options(cfg))
    out = rep.to_dict()
    if not rep.converged:
        raise SolverFailure("dual solver did not converge at every norm bound", out)
    return out, f"beta = {rep.beta:.9f}, attained (heuristic): {rep.attained}"


def _cmd_ugs(cfg):
    psi, ns = _state_ns(cfg)
    rep = ugs_feasibility(psi, ns, _options(cfg))
    out = rep.to_dict()
    if not rep.converged:
        raise SolverFailure("UGS solver did not converge", out)
    return out, f"gamma* = {rep.gamma_star:.3e}, UGS: {rep.is_ugs}"


def _pick_witness(cfg, psi, n):
    kind = cfg.witness
    if kind == "auto":
        kind = "w6" if n == 6 and np.allclose(psi, psi6()) else "gw"
    if kind == "w6":
        return w6_witness(), "w6"
    if kind == "gw":
        amps = np.asarray(psi)
        c0 = amps[0].real
        c1 = amps[1 << (n - 1)].real
        return gw_witness(c0, c1, n), "gw"
    raise ValueError(f"unknown witness {cfg.witness!r}")


def _cmd_witness(cfg):
    psi, ns = _state_ns(cfg)
    n = ns.n_sites
    W, kind = _pick_witness(cfg, psi, n)
    cert = certify_witness(W, psi, ns, convention=cfg.convention)
    out = {
        "witness": kind,
        "certified": cert.certified,
        "extremum": cert.extremum,
        "second": cert.second,
        "gap": cert.gap,
        "overlap": cert.overlap,
        "convention": cert.convention,
        "dqls_dim": cert.dqls_dim,
    }
    return out, f"witness {kind} certified: {cert.certified} (extremum {cert.extremum:.6f})"


def _cmd_symmetrize(cfg):
    ns = parse_structure(cfg.ns_spec)
    n = ns.n_sites
    seed = _options(cfg).seed
    H = random_ql_hamiltonian(ns, n, seed).assemble()
    G = dihedral_group(n)
    Hs = symmetrize(H, G, n)
    comm = max(float(np.linalg.norm(U @ Hs - Hs @ U)) for U in G.unitaries(n))
    ql_resid = float(np.linalg.norm(ql_project(Hs, ns, n) - Hs))
    out = {
        "group_order": len(G),
        "max_commutator_norm": comm,
        "ql_residual": ql_resid,
        "spectrum_before": np.linalg.eigvalsh(H),
        "spectrum_after": np.linalg.eigvalsh(Hs),
    }
    return out, f"symmetrized over {len(G)} elements, max commutator {comm:.2e}"


def _cmd_counterexample(cfg):
    opts = _options(cfg)
    psi = psi6()
    ns = all_k_body(2, 6)
    space = dqls_subspace(psi, ns)
    cert = certify_witness(w6_witness(), psi, ns, "max")
    primal = uda_primal(psi, ns, opts)
    ugs = ugs_feasibility(psi, ns, opts)
    thm = verify_not_ugs_symmetric()
    verdicts = {
        "dqls_dim_is_18": space.dim == 18,
        "witness_certified": cert.certified,
        "uda": primal.is_uda,
        "not_ugs": not ugs.is_ugs,
        "no_symmetric_parent": not thm.is_ugs_symmetric,
    }
    out = {
        "dqls_dim": space.dim,
        "witness": {"extremum": cert.extremum, "second": cert.second, "overlap": cert.overlap},
        "primal": primal.to_dict(),
        "ugs": ugs.to_dict(),
        "symmetric_no_go": thm.to_dict(),
        "verdicts": verdicts,
    }
    if not (primal.converged and ugs.converged):
        raise SolverFailure("a solver did not converge", out)
    if not all(verdicts.values()):
        bad = [k for k, v in verdicts.items() if not v]
        raise SolverFailure(f"unexpected verdicts: {bad}", out)
    return out, "six-qubit state: UDA (witness and primal), not UGS, no symmetric parent"


def _cmd_suite(cfg):
    ns = parse_structure(cfg.ns_spec)
    opts = _options(cfg)
    summary = ugs_implies_uda_suite(opts.seed, cfg.trials, ns, opts)
    return summary.to_dict(), (
        f"{summary.evaluated} gapped draws, {summary.skipped} skipped, {summary.violations} violations"
    )


_DISPATCH = {
    "dqls": _cmd_dqls,
    "uda": _cmd_uda,
    "dual": _cmd_dual,
    "ugs": _cmd_ugs,
    "witness": _cmd_witness,
    "symmetrize": _cmd_symmetrize,
    "counterexample": _cmd_counterexample,
    "suite": _cmd_suite,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns the exit code and the report."""
    if cfg.command not in _DISPATCH:
        return EXIT_PARSE, {"inputs": _inputs(cfg), "error": f"unknown command {cfg.command!r}"}
    t0 = time.perf_counter()
    report = {"inputs": _inputs(cfg)}
    try:
        report["tolerances"] = _options(cfg).to_dict()
        body, summary = _DISPATCH[cfg.command](cfg)
        code = EXIT_OK
    except SolverFailure as exc:
        body, summary = exc.report, f"error: {exc}"
        body["error"] = str(exc)
        code = EXIT_CONTRADICTION if cfg.command == "counterexample" and "verdicts" in str(exc) else EXIT_SOLVER
    except ValueError as exc:
        body, summary = {"error": str(exc)}, f"error: {exc}"
        code = EXIT_PARSE
    report.update(body)
    report["wall_time_s"] = time.perf_counter() - t0
    report["summary"] = summary
    return code, report


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="udaugs", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--state", default="psi6", help="w:N, gw:N:c0,..,cN, ghz:N, zero:N, psi6, basis:N:i,j or JSON")
    p.add_argument("--ns", default=None, help="nn:N[:periodic], allk:N or a JSON list of site lists")
    p.add_argument("--tol", type=float, default=None, help="tol_abs of the SDP solver")
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--convention", choices=("min", "max"), default="max")
    p.add_argument("--witness", choices=("auto", "w6", "gw"), default="auto")
    p.add_argument("--trials", type=int, default=20)
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    opts = {}
    if args.tol is not None:
        opts["tol_abs"] = args.tol
    if args.max_iter is not None:
        opts["max_iter"] = args.max_iter
    if args.seed is not None:
        opts["seed"] = args.seed
    ns_spec = args.ns
    if ns_spec is None:
        ns_spec = "all2:6" if args.state == "psi6" else _default_ns(args.state)
    cfg = RunConfig(args.command, args.state, ns_spec, opts, args.out, args.convention, args.witness, args.trials)
    code, report = run(cfg)
    text = to_json(report)
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(report["summary"], file=sys.stderr)
    return code


def _default_ns(state_spec: str) -> str:
    """Open NN chain sized to the state when ``--ns`` is omitted."""
    try:
        n = int(round(np.log2(len(parse_state(state_spec)))))
    except ValueError:
        return "nn:2"
    return f"nn:{n}"


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
