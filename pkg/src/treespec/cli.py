"""Command-line interface.

Subcommands:
  solve        classification, closed-form constants, iterates, optional eval
  plot-data    CSV samples (j, value, is_pole) of the continuous extension
  locate       eigenvalue counts of a tree matrix relative to a shift
  radius       spectral radius by inertia bisection
  eigen        k-th smallest eigenvalue by inertia bisection
  mlas         alternating-sign report rows for (n, r)
  broom        eigenvalue split of a double broom at the average degree
  limit        convergence table of starlike spectral radii toward the limit
  random-tree  edge list of a seeded uniform random labeled tree

Exit codes: 0 success, 2 usage error, 3 domain error.  Diagnostics go to
stderr, data to stdout.  Identical argv produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import limits, oracle, recurrence, signs, treediag
from .errors import TreespecError
from .recurrence import Pole, RecurrenceParams
from .signs import DoubleBroom, PendantConfig
from .treediag import MatrixKind

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _fmt(value) -> str:
    """Shortest round-trip decimal for floats; plain str otherwise."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json(obj) -> str:
    return json.dumps(obj, default=str)


def _parse_rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text.strip()):
        raise TreespecError(
            f"--exact requires a rational shift written as 'p/q' or an integer, got {text!r}"
        )
    return Fraction(text)


def _matrix_kind(name: str) -> str:
    return {
        "adjacency": MatrixKind.ADJACENCY,
        "laplacian": MatrixKind.LAPLACIAN,
        "normalized": MatrixKind.NORMALIZED_LAPLACIAN,
    }[name]


def _load_matrix(args) -> treediag.SymmetricTreeMatrix:
    try:
        text = open(args.tree, "r", encoding="utf-8").read()
    except OSError as exc:
        raise _UsageError(f"cannot read tree file {args.tree!r}: {exc}") from exc
    tree = treediag.parse_tree_file(text, root=getattr(args, "root", None))
    return treediag.build_matrix(tree, _matrix_kind(args.matrix))


class _UsageError(Exception):
    pass


def _solution_payload(sol) -> dict:
    if isinstance(sol, recurrence.ConstantSolution):
        return {"variant": "constant", "theta": sol.theta}
    if isinstance(sol, recurrence.Type1Solution):
        return {"variant": "type1", "theta": sol.theta, "beta": sol.beta}
    if isinstance(sol, recurrence.Type2Solution):
        return {
            "variant": "type2",
            "theta": sol.theta,
            "theta_prime": sol.theta_prime,
            "beta": sol.beta,
        }
    if isinstance(sol, recurrence.Type3Solution):
        return {
            "variant": "type3",
            "rho": sol.rho,
            "phi": sol.phi_angle,
            "omega": sol.omega,
        }
    return {"variant": "alternating", "x1": sol.x1, "gamma": sol.gamma}


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(_json(payload))
    else:
        for key, value in payload.items():
            print(f"{key}: {_fmt(value) if not isinstance(value, dict) else _json(value)}")


def _cmd_solve(args) -> int:
    params = RecurrenceParams(args.alpha, args.gamma)
    cls = recurrence.classify(params)
    sol = recurrence.solve(params, args.x1)
    payload = {
        "alpha": args.alpha,
        "gamma": args.gamma,
        "x1": args.x1,
        "delta": float(cls.delta),
        "kind": cls.kind.value,
        "fixed_points": recurrence.fixed_points(params),
        "solution": _solution_payload(sol),
    }
    orbit = None
    if args.count is not None:
        orbit = recurrence.iterate(params, args.x1, args.count)
        payload["orbit"] = [float(v) for v in orbit.values]
    if args.eval_j is not None:
        value = sol.eval(args.eval_j)
        payload["eval"] = {
            "j": args.eval_j,
            "value": None if isinstance(value, Pole) else value,
            "is_pole": isinstance(value, Pole),
        }
    if orbit is not None and not orbit.completed:
        payload["hit_zero_step"] = orbit.hit_zero_step
        _emit(payload, args.format or "json")
        print(f"error: orbit hit zero at step {orbit.hit_zero_step}", file=sys.stderr)
        return 3
    _emit(payload, args.format or "json")
    return 0


def _cmd_plot_data(args) -> int:
    if args.step <= 0:
        raise _UsageError("--step must be positive")
    params = RecurrenceParams(args.alpha, args.gamma)
    sol = recurrence.solve(params, args.x1)
    print("j,value,is_pole")
    count = int((args.j_to - args.j_from) / args.step + 1e-9)
    for i in range(count + 1):
        j = args.j_from + i * args.step
        if j > args.j_to + 1e-12:
            break
        value = sol.eval(j)
        if isinstance(value, Pole):
            print(f"{_fmt(j)},,1")
        else:
            print(f"{_fmt(j)},{_fmt(value)},0")
    return 0


def _cmd_locate(args) -> int:
    matrix = _load_matrix(args)
    if args.exact:
        alpha = _parse_rational(args.alpha)
        triple = treediag.locate(matrix, alpha, exact=True)
        alpha_out: object = str(alpha)
    else:
        alpha = float(Fraction(args.alpha)) if _RATIONAL_RE.match(args.alpha) else float(args.alpha)
        triple = treediag.locate(matrix, alpha)
        alpha_out = alpha
    _emit(
        {
            "n": matrix.n,
            "matrix": args.matrix,
            "alpha": alpha_out,
            "exact": bool(args.exact),
            "below": triple.below,
            "equal": triple.equal,
            "above": triple.above,
        },
        args.format or "json",
    )
    return 0


def _cmd_radius(args) -> int:
    matrix = _load_matrix(args)
    value = treediag.spectral_radius(matrix, args.tol)
    _emit(
        {"n": matrix.n, "matrix": args.matrix, "tol": args.tol, "radius": value},
        args.format or "json",
    )
    return 0


def _cmd_eigen(args) -> int:
    matrix = _load_matrix(args)
    value = treediag.kth_eigenvalue(matrix, args.k, args.tol)
    _emit(
        {"n": matrix.n, "matrix": args.matrix, "k": args.k, "tol": args.tol, "eigenvalue": value},
        args.format or "json",
    )
    return 0


_MLAS_FIELDS = (
    "n", "r", "period", "phi", "omega_r", "j_star", "k0", "mlas",
    "lower_bound", "b_2k0_2", "b_2k0_3",
)


def _mlas_row(cfg: PendantConfig, direct: bool) -> dict:
    report = signs.build_report(cfg)
    row = {
        "n": report.n,
        "r": report.r,
        "period": report.period,
        "phi": report.phi_angle,
        "omega_r": report.omega_r,
        "j_star": report.j_star,
        "k0": report.k0,
        "mlas": report.mlas,
        "lower_bound": report.lower_bound,
        "b_2k0_2": float(signs.b_at(cfg, 2 * report.k0 + 2)),
        "b_2k0_3": float(signs.b_at(cfg, 2 * report.k0 + 3)),
    }
    if direct:
        row["mlas_direct"] = signs.mlas_direct(cfg)
    return row


def _cmd_mlas(args) -> int:
    if args.table is not None:
        if args.table < 1 or args.table > args.n // 4:
            raise _UsageError(f"--table must lie in 1..floor(n/4) = {args.n // 4}")
        rows = [_mlas_row(PendantConfig(args.n, r), args.direct) for r in range(1, args.table + 1)]
    else:
        rows = [_mlas_row(PendantConfig(args.n, args.r), args.direct)]
    fmt = args.format or "json"
    if fmt == "csv":
        fields = list(_MLAS_FIELDS) + (["mlas_direct"] if args.direct else [])
        print(",".join(fields))
        for row in rows:
            print(",".join(_fmt(row[f]) for f in fields))
    else:
        for row in rows:
            print(_json(row))
    return 0


def _cmd_broom(args) -> int:
    broom = DoubleBroom(r=args.r, q=args.q, p=args.p, R=args.rr)
    result = signs.double_broom_sigma(broom)
    _emit(
        {
            "r": broom.r,
            "q": broom.q,
            "p": broom.p,
            "R": broom.R,
            "n": broom.n,
            "sigma": result.sigma,
            "root_sign": result.root_sign.value,
            "hypotheses_met": result.hypotheses_met,
            "cross_check": "ok" if result.hypotheses_met else "fallback-locate",
            "below": result.inertia.below,
            "equal": result.inertia.equal,
            "above": result.inertia.above,
        },
        args.format or "json",
    )
    return 0


def _cmd_limit(args) -> int:
    if args.n_max < 1:
        raise _UsageError("--n-max must be >= 1")
    if args.family == "adjacency":
        target = limits.shearer_constant()
        tol = args.tol if args.tol is not None else 1e-10
        gap = limits.adjacency_limit_gap
    else:
        target = limits.guo_constant()
        tol = args.tol if args.tol is not None else 1e-9
        gap = limits.laplacian_limit_gap
    rows = []
    for n_arm in range(1, args.n_max + 1):
        g = gap(n_arm, tol)
        rows.append((n_arm, target - g, g))
    if (args.format or "csv") == "json":
        for n_arm, radius, g in rows:
            print(_json({"n_arm": n_arm, "radius": radius, "gap": g}))
    else:
        print("n_arm,radius,gap")
        for n_arm, radius, g in rows:
            print(f"{n_arm},{_fmt(radius)},{_fmt(g)}")
    return 0


def _cmd_random_tree(args) -> int:
    tree = oracle.random_tree(args.n, args.seed)
    for child, parent in tree.edges():
        print(f"{child} {parent}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treespec",
        description="Rational recurrence closed forms and tree eigenvalue location.",
    )
    parser.add_argument("--format", choices=("json", "csv", "text"), default=None,
                        help="output format (default depends on the subcommand)")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker cap for table commands (execution is sequential)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="closed form and orbit of x_{j+1} = a + g/x_j")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--x1", type=float, required=True)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--eval", dest="eval_j", type=float, default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("plot-data", help="sample the continuous extension")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--x1", type=float, required=True)
    p.add_argument("--from", dest="j_from", type=float, required=True)
    p.add_argument("--to", dest="j_to", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.set_defaults(func=_cmd_plot_data)

    for name, fn, extra in (
        ("locate", _cmd_locate, "alpha"),
        ("radius", _cmd_radius, "tol"),
        ("eigen", _cmd_eigen, "k"),
    ):
        p = sub.add_parser(name, help=f"{name} on a tree matrix")
        p.add_argument("--tree", required=True, help="edge-list file, one 'u v' per line")
        p.add_argument("--matrix", choices=("adjacency", "laplacian", "normalized"),
                       required=True)
        p.add_argument("--root", type=int, default=None,
                       help="override the root vertex (default: file root line or n)")
        if extra == "alpha":
            p.add_argument("--alpha", required=True, help="shift; 'p/q' allowed with --exact")
            p.add_argument("--exact", action="store_true",
                           help="exact rational sweep (rational matrices only)")
        if extra in ("tol", "k"):
            p.add_argument("--tol", type=float, default=1e-10)
        if extra == "k":
            p.add_argument("--k", type=int, required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("mlas", help="alternating-sign report for (n, r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--direct", action="store_true",
                   help="also run the exact sign-scan certificate")
    p.add_argument("--table", type=int, default=None, metavar="RMAX",
                   help="emit rows for r = 1..RMAX")
    p.set_defaults(func=_cmd_mlas)

    p = sub.add_parser("broom", help="double-broom eigenvalue split")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--rr", type=int, required=True, help="pendant count R of the right star")
    p.set_defaults(func=_cmd_broom)

    p = sub.add_parser("limit", help="starlike spectral radius convergence table")
    p.add_argument("--family", choices=("adjacency", "laplacian"), required=True)
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("random-tree", help="seeded uniform random labeled tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_random_tree)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TreespecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    console_main()
