"""Command-line front end.

Commands: rank, williamson, recur, evolve, chain. Every command writes a
machine-readable JSON report (stdout by default, ``--out`` to a file) with
the effective tolerances echoed, and follows one exit-code contract:

* 0 - success / affirmative analysis,
* 1 - analysis negative or a precondition failed (reported in the output),
* 2 - usage or document errors.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from .chain import ChainSpec, TripleParams, controllability_report, verify_bracket_identities
from .closure import closure, full_dimension, passivity_check, rank_criterion
from .documents import (
    DocumentError,
    ModelDocument,
    ScheduleDocument,
    data_digest,
    file_digest,
    write_report,
)
from .evolution import CovarianceState, audit_symplecticity, evolve_covariance, propagate
from .hamiltonians import generator
from .recurrence import RecurrenceQuery, find_recurrence
from .williamson import (
    DefinitenessError,
    spectrum_certificate,
    symplectic_eigenvalues,
    williamson_decompose,
)


def _matrix(M) -> list:
    return [[float(x) for x in row] for row in np.asarray(M)]


def _complex_pairs(values) -> list:
    return [[float(v.real), float(v.imag)] for v in values]


def _finish(report: dict, started: float, out_path) -> None:
    report["wall_time_s"] = time.perf_counter() - started
    write_report(report, out_path)


def _base_report(command: str, digest: str, tolerances: dict, echo: dict) -> dict:
    return {
        "command": command,
        "input_digest": digest,
        "tool_version": __version__,
        "tolerances": tolerances,
        "inputs": echo,
        "results": {},
    }


def cmd_rank(args) -> int:
    started = time.perf_counter()
    model_doc = ModelDocument.from_path(args.model)
    model = model_doc.control_model()
    seeds = [generator(model.drift)] + [generator(c) for c in model.controls]
    max_rounds = args.max_rounds if args.max_rounds is not None else 2 * full_dimension(model.n)
    sub = closure(seeds, tol=args.tol, max_rounds=max_rounds)
    rank = rank_criterion(sub)
    report = _base_report(
        "rank",
        file_digest(args.model),
        {"tol": args.tol, "max_rounds": max_rounds},
        {"model": str(args.model), "drift": model_doc.drift, "controls": list(model_doc.controls)},
    )
    results = {
        "dimension": rank.dimension_found,
        "dimension_full": rank.dimension_full,
        "rank_criterion_met": rank.rank_criterion_met,
        "closed": sub.closed,
        "bracket_depth": sub.bracket_depth_reached,
        "residual_spectrum": list(rank.residual_spectrum),
    }
    if not rank.rank_criterion_met:
        results["passive"] = passivity_check(sub, tol=args.tol)
    report["results"] = results
    _finish(report, started, args.out)
    return 0 if rank.rank_criterion_met else 1


def cmd_williamson(args) -> int:
    started = time.perf_counter()
    model_doc = ModelDocument.from_path(args.model)
    name = args.hamiltonian or model_doc.drift
    H = model_doc.hamiltonian(name)
    report = _base_report(
        "williamson",
        file_digest(args.model),
        {"residual_tol": args.tol},
        {"model": str(args.model), "hamiltonian": name},
    )
    cert = spectrum_certificate(H)
    report["results"]["spectrum_certificate"] = {
        "eigenvalues_re_im": _complex_pairs(cert.eigenvalues),
        "max_real_part": cert.max_real_part,
        "diagonalizable": cert.diagonalizable,
        "diagonalizer_condition": cert.diagonalizer_condition
        if np.isfinite(cert.diagonalizer_condition)
        else None,
    }
    try:
        dec = williamson_decompose(H, tol=args.tol)
    except DefinitenessError as exc:
        report["results"]["error"] = {
            "kind": "definiteness",
            "message": str(exc),
            "smallest_eigenvalue": exc.smallest_eigenvalue,
        }
        _finish(report, started, args.out)
        return 1
    report["results"].update(
        {
            "nu": [float(v) for v in dec.nu],
            "V": _matrix(dec.V),
            "residual": dec.residual,
        }
    )
    _finish(report, started, args.out)
    return 0


def cmd_recur(args) -> int:
    started = time.perf_counter()
    model_doc = ModelDocument.from_path(args.model)
    name = args.hamiltonian or model_doc.drift
    H = model_doc.hamiltonian(name)
    report = _base_report(
        "recur",
        file_digest(args.model),
        {"epsilon": args.epsilon, "grid_points_per_period": args.grid_points},
        {
            "model": str(args.model),
            "hamiltonian": name,
            "min_time": args.after,
            "max_time": args.t_max,
        },
    )
    try:
        query = RecurrenceQuery(
            hamiltonian=H,
            epsilon=args.epsilon,
            min_time=args.after,
            max_time=args.t_max,
            grid_points_per_period=args.grid_points,
        )
        result = find_recurrence(query)
    except DefinitenessError as exc:
        report["results"]["error"] = {
            "kind": "definiteness",
            "message": str(exc),
            "smallest_eigenvalue": exc.smallest_eigenvalue,
        }
        _finish(report, started, args.out)
        return 1
    except ValueError as exc:
        raise DocumentError(f"recurrence query: {exc}") from exc
    report["results"] = {
        "found": result.found,
        "tau": result.tau,
        "achieved_distance": result.achieved_distance,
        "mode_distance_at_tau": result.mode_distance_at_tau,
        "K": result.conditioning,
        "best_distance_seen": result.best_distance_seen,
        "nu": [float(v) for v in symplectic_eigenvalues(H)],
    }
    _finish(report, started, args.out)
    return 0  # horizon exhaustion is an honest negative, still exit 0


def cmd_evolve(args) -> int:
    started = time.perf_counter()
    model_doc = ModelDocument.from_path(args.model)
    schedule_doc = ScheduleDocument.from_path(args.schedule)
    model = model_doc.control_model()
    for i, seg in enumerate(schedule_doc.schedule.segments):
        if len(seg.values) != model.num_controls:
            raise DocumentError(
                f"segments[{i}].controls: expected {model.num_controls} values "
                f"(model controls: {list(model_doc.controls)}), got {len(seg.values)}"
            )
    sigma = schedule_doc.initial_covariance
    if sigma is not None and sigma.shape != (2 * model.n, 2 * model.n):
        raise DocumentError(
            f"initial_covariance: expected shape ({2*model.n}, {2*model.n}), got {sigma.shape}"
        )
    S = propagate(model, schedule_doc.schedule)
    report = _base_report(
        "evolve",
        file_digest(args.model),
        {"covariance_symplectic_tol": 1e-8},
        {
            "model": str(args.model),
            "schedule": str(args.schedule),
            "schedule_digest": file_digest(args.schedule),
            "segments": len(schedule_doc.schedule.segments),
        },
    )
    report["results"] = {
        "S": _matrix(S),
        "symplecticity_audit": audit_symplecticity(S),
        "total_duration": schedule_doc.schedule.total_duration,
    }
    if sigma is not None:
        state = evolve_covariance(CovarianceState(sigma), S)
        report["results"]["final_covariance"] = _matrix(state.sigma)
    _finish(report, started, args.out)
    return 0


def cmd_chain(args) -> int:
    started = time.perf_counter()
    spec = ChainSpec(
        n=args.n, omega=args.omega, g1=args.g1, g2=args.g2,
        omega1=args.omega1, chi=args.chi,
    )
    params = TripleParams(alpha=args.alpha, beta=args.beta, delta=args.delta)
    identities_possible = spec.n >= 3 and spec.g1 == spec.g2 and not args.h1_only
    if args.identities == "require" and not identities_possible:
        reasons = []
        if spec.n < 3:
            reasons.append(f"identities need n >= 3 (got n = {spec.n})")
        if spec.g1 != spec.g2:
            reasons.append(f"identities need g1 == g2 (got {spec.g1:g} and {spec.g2:g})")
        if args.h1_only:
            reasons.append("identities need the squeeze control (--h1-only excludes it)")
        print(f"error: {'; '.join(reasons)}", file=sys.stderr)
        return 2

    echo = {
        "n": spec.n, "omega": spec.omega, "g1": spec.g1, "g2": spec.g2,
        "omega1": spec.omega1, "chi": spec.chi,
        "alpha": params.alpha, "beta": params.beta, "delta": params.delta,
        "h1_only": bool(args.h1_only),
    }
    report = _base_report(
        "chain",
        data_digest(echo),
        {"closure_tol": args.tol, "identity_tol": args.identity_tol},
        echo,
    )
    rep = controllability_report(
        spec, params, tol=args.tol, include_squeeze_control=not args.h1_only
    )
    results = {
        "verdict": rep.verdict,
        "dimension": rep.dimension,
        "dimension_full": rep.dimension_full,
        "rank_criterion_met": rep.rank_met,
        "closed": rep.closed,
        "bracket_depth": rep.bracket_depth,
        "positivity": {
            "sufficient": rep.positivity.sufficient,
            "actual": rep.positivity.actual,
            "min_eigenvalue": rep.positivity.min_eigenvalue,
        },
        "triple": {
            "ok": rep.triple_ok,
            "closure_dimension": rep.triple_dimension,
            "message": rep.triple_message,
        },
        "passive": rep.passive,
    }
    identities_ok = True
    if identities_possible and args.identities != "skip":
        id_report = verify_bracket_identities(spec, tol=args.identity_tol)
        identities_ok = id_report.all_pass
        results["identities"] = {
            "all_pass": id_report.all_pass,
            "max_residual": id_report.max_residual,
            "records": [
                {"name": r.name, "residual": r.residual} for r in id_report.records
            ],
        }
    report["results"] = results
    _finish(report, started, args.out)
    return 0 if rep.verdict == "CONTROLLABLE" and identities_ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscontrol",
        description="Controllability analysis for coupled harmonic oscillators",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="Lie algebra closure and rank criterion")
    p.add_argument("--model", required=True, help="model document (JSON)")
    p.add_argument("--tol", type=float, default=1e-9, help="relative independence tolerance")
    p.add_argument("--max-rounds", type=int, default=None, help="bracket round budget")
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("williamson", help="Williamson normal form and spectrum certificate")
    p.add_argument("--model", required=True)
    p.add_argument("--hamiltonian", default=None, help="name in the model (default: drift)")
    p.add_argument("--tol", type=float, default=1e-8, help="relative reconstruction tolerance")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_williamson)

    p = sub.add_parser("recur", help="search for a recurrence time of exp(-A Omega t)")
    p.add_argument("--model", required=True)
    p.add_argument("--hamiltonian", default=None)
    p.add_argument("--epsilon", type=float, required=True, help="target distance to identity")
    p.add_argument("--after", type=float, default=0.0, help="search only tau > this time")
    p.add_argument("--t-max", type=float, default=None, help="search horizon")
    p.add_argument("--grid-points", type=int, default=16, help="grid points per shortest period")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_recur)

    p = sub.add_parser("evolve", help="propagate a piecewise-constant control schedule")
    p.add_argument("--model", required=True)
    p.add_argument("--schedule", required=True, help="schedule document (JSON)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("chain", help="end-to-end chain controllability report")
    p.add_argument("--n", type=int, required=True, help="number of chain sites")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--g1", type=float, default=0.2)
    p.add_argument("--g2", type=float, default=0.2)
    p.add_argument("--omega1", type=float, default=1.0)
    p.add_argument("--chi", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--identity-tol", type=float, default=1e-12)
    p.add_argument(
        "--identities", choices=("auto", "require", "skip"), default="auto",
        help="bracket-identity suite: run when applicable, insist, or skip",
    )
    p.add_argument(
        "--h1-only", action="store_true",
        help="restrict controls to the local phase rotation (passive regime)",
    )
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_chain)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
