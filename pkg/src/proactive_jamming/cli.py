"""Command-line front end.

Subcommands: ``solve``, ``sweep-q``, ``sweep-gain`` and ``mc-validate``.
Exit codes: 0 on success, 1 when the Monte-Carlo suite finds a mismatch,
2 on usage or parameter errors. Output goes to stdout unless ``--out`` is
given; identical flags always produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import closed_form, experiments, monte_carlo
from .errors import InvalidParam
from .params import CANONICAL, SystemParams, db_to_linear, linear_to_db

EXIT_OK, EXIT_VALIDATION_FAILED, EXIT_USAGE = 0, 1, 2

_FLAG_FOR_FIELD = {
    "p_tx": "--p/--p-db",
    "q_max": "--qmax/--qmax-db",
    "delta": "--delta",
    "lambda0": "--lambda0",
    "lambda1": "--lambda1",
    "lambda2": "--lambda2",
    "sigma0_sq": "--sigma0-sq",
    "sigma1_sq": "--sigma1-sq",
}


class UsageError(Exception):
    pass


def _param_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    g = parent.add_argument_group("scenario (defaults: reference scenario)")
    p = g.add_mutually_exclusive_group()
    p.add_argument("--p", type=float, help="suspicious transmit power, linear")
    p.add_argument("--p-db", type=float, help="suspicious transmit power, dB (default 20)")
    qm = g.add_mutually_exclusive_group()
    qm.add_argument("--qmax", type=float, help="maximum jamming power, linear")
    qm.add_argument("--qmax-db", type=float, help="maximum jamming power, dB (default 30)")
    g.add_argument("--delta", type=float, help="target outage probability (default 0.05)")
    for i, default in enumerate((1, 10, 10)):
        g.add_argument(f"--lambda{i}", type=float, help=f"rate of g{i} (default {default})")
    g.add_argument("--sigma0-sq", type=float, help="receiver noise power (default 1)")
    g.add_argument("--sigma1-sq", type=float, help="monitor noise power (default 1)")
    o = parent.add_argument_group("output")
    o.add_argument("--out", help="write to this file instead of stdout")
    o.add_argument("--format", choices=("csv", "json"))
    return parent


def build_parser() -> argparse.ArgumentParser:
    parent = _param_parser()
    parser = argparse.ArgumentParser(
        prog="proactive-jamming",
        description="Optimal jamming power for proactive eavesdropping over Rayleigh fading.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("solve", parents=[parent], help="closed-form optimum (default json)")

    sq = sub.add_parser("sweep-q", parents=[parent], help="rate and average rate versus jamming power")
    sq.add_argument("--grid", type=int, default=200, help="log-spaced points (plus q = 0)")
    sq.add_argument("--min-db", type=float, default=-20.0)
    sq.add_argument("--max-db", type=float, default=30.0)

    sg = sub.add_parser("sweep-gain", parents=[parent],
                        help="average rate of each scheme versus eavesdropping/jamming gain")
    sg.add_argument("--grid", type=int, default=101)
    sg.add_argument("--min-db", type=float, default=-20.0)
    sg.add_argument("--max-db", type=float, default=0.0)
    sg.add_argument("--schemes", default="optimal,passive,constant",
                    help="comma-separated subset of optimal,passive,constant")

    mc = sub.add_parser("mc-validate", parents=[parent], help="Monte-Carlo check of every closed form")
    mc.add_argument("--samples", type=int, default=10**6)
    mc.add_argument("--seed", type=int, default=42)
    mc.add_argument("--points", type=int, default=20, help="random operating points")
    mc.add_argument("--workers", type=int, default=1)
    return parser


def params_from_args(args: argparse.Namespace) -> SystemParams:
    values = CANONICAL.as_dict()
    if args.p is not None:
        values["p_tx"] = args.p
    elif args.p_db is not None:
        values["p_tx"] = db_to_linear(args.p_db)
    if args.qmax is not None:
        values["q_max"] = args.qmax
    elif args.qmax_db is not None:
        values["q_max"] = db_to_linear(args.qmax_db)
    for name in ("delta", "lambda0", "lambda1", "lambda2", "sigma0_sq", "sigma1_sq"):
        if getattr(args, name) is not None:
            values[name] = getattr(args, name)
    return SystemParams(**values)


def _db(x: float) -> float | None:
    return linear_to_db(x) if x > 0 else None


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else format(v, ".17g") if isinstance(v, float) else v
                    for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def cmd_solve(params: SystemParams, fmt: str) -> tuple[str, int]:
    sol = closed_form.solve_optimal(params)
    record = {
        "regime": sol.regime.value,
        "r_star": sol.r_star,
        "r_opt": sol.r_opt,
        "q_opt": sol.q_opt,
        "q_opt_db": _db(sol.q_opt),
        "r_zero_jam": sol.r_zero_jam,
        "r_max_jam": sol.r_max_jam,
        "avg_rate_opt": sol.avg_rate_opt,
        "q_max": params.q_max,
        "q_max_db": _db(params.q_max),
    }
    if fmt == "csv":
        return _csv(record.keys(), [record.values()]), EXIT_OK
    return _json(record), EXIT_OK


def _table_text(table: experiments.SweepTable, fmt: str) -> str:
    return table.to_csv() if fmt == "csv" else _json(table.to_records())


def _db_grid(args) -> list[float]:
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    if not args.min_db < args.max_db:
        raise UsageError("--min-db must be below --max-db")
    return [args.min_db, args.max_db]


def cmd_sweep_q(params: SystemParams, args, fmt: str) -> tuple[str, int]:
    lo, hi = _db_grid(args)
    table = experiments.sweep_q(params, experiments.default_q_grid(args.grid, lo, hi))
    return _table_text(table, fmt), EXIT_OK


def cmd_sweep_gain(params: SystemParams, args, fmt: str) -> tuple[str, int]:
    lo, hi = _db_grid(args)
    try:
        schemes = [experiments.Scheme(s.strip()) for s in args.schemes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"--schemes: unknown scheme in {args.schemes!r}") from None
    if not schemes:
        raise UsageError("--schemes: at least one scheme is required")
    table = experiments.sweep_gain(params, experiments.default_gain_grid(args.grid, lo, hi), schemes)
    return _table_text(table, fmt), EXIT_OK


MC_COLUMNS = ("quantity", "point", "closed_form", "mc_mean", "std_error", "pass")


def cmd_mc_validate(params: SystemParams, args, fmt: str) -> tuple[str, int]:
    if args.samples < 1000:
        raise UsageError("--samples must be >= 1000")
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    rows = monte_carlo.validation_suite(params, args.samples, args.seed, args.points,
                                        max(args.workers, 1))
    n_pass = sum(r.passed for r in rows)
    print(f"mc-validate: {n_pass}/{len(rows)} within {monte_carlo.N_SIGMA:g} standard errors",
          file=sys.stderr)
    code = EXIT_OK if n_pass == len(rows) else EXIT_VALIDATION_FAILED
    values = [(r.quantity, r.point, float(r.closed_form), float(r.mc_mean), float(r.std_error),
               "pass" if r.passed else "FAIL") for r in rows]
    if fmt == "json":
        return _json([dict(zip(MC_COLUMNS, v)) for v in values]), code
    return _csv(MC_COLUMNS, values), code


_DEFAULT_FORMAT = {"solve": "json", "sweep-q": "csv", "sweep-gain": "csv", "mc-validate": "csv"}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or _DEFAULT_FORMAT[args.command]
    try:
        params = params_from_args(args)
        if args.command == "solve":
            text, code = cmd_solve(params, fmt)
        elif args.command == "sweep-q":
            text, code = cmd_sweep_q(params, args, fmt)
        elif args.command == "sweep-gain":
            text, code = cmd_sweep_gain(params, args, fmt)
        else:
            text, code = cmd_mc_validate(params, args, fmt)
    except InvalidParam as e:
        flag = _FLAG_FOR_FIELD.get(e.field, e.field)
        print(f"error: {flag}: {e.field}={e.value!r} violates {e.constraint}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", newline="\n", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
