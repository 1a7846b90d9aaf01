"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 bad input, 3 a verification
suite reported violations.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from .catalog import closed_form_E, example31_points, example31_space, load_space, regular_polygon_space
from .config import DEFAULT_TOL, Tolerances
from .derivatives import rho, rho_numeric
from .errors import CapabilityError, InputError
from .orthogonality import additivity_report, eps_min, orthogonality_report
from .suites import SUITES
from .support import diam_support, smoothness_report, space_constants

EXIT_OK, EXIT_COMPUTE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _default_seed() -> int:
    raw = os.environ.get("NORMLAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"NORMLAB_SEED: expected an integer, got {raw!r}") from None


def _vector(flag: str, text: str | None) -> np.ndarray:
    if text is None:
        raise InputError(f"{flag}: required")
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{flag}: invalid JSON ({exc.msg})") from None
    if (not isinstance(value, list) or not value
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        raise InputError(f"{flag}: expected a non-empty JSON array of numbers")
    return np.asarray(value, dtype=float)


def _tolerances(args) -> Tolerances:
    if args.tol is None:
        return DEFAULT_TOL
    try:
        return Tolerances.uniform(args.tol)
    except ValueError as exc:
        raise InputError(f"--tol: {exc}") from None


def _space(args):
    if not args.space:
        raise InputError("--space: required")
    return load_space(args.space)


def _with_name(flag: str, fn, *a):
    # attach the flag name to dimension/zero-vector errors from the library
    try:
        return fn(*a)
    except InputError as exc:
        msg = str(exc)
        raise InputError(msg if msg.startswith("--") else f"{flag}: {msg}") from None


# -- subcommands ---------------------------------------------------------------

def cmd_smoothness(args):
    space, tol = _space(args), _tolerances(args)
    x = _vector("--x", args.x)
    return _with_name("--x", smoothness_report, space, x, tol).to_dict()


def cmd_constants(args):
    return space_constants(_space(args), _tolerances(args)).to_dict()


def cmd_derivative(args):
    space, tol = _space(args), _tolerances(args)
    x, y = _vector("--x", args.x), _vector("--y", args.y)
    out = _with_name("--x/--y", rho, space, x, y, tol).to_dict()
    if args.check:
        plus = rho_numeric(space, x, y, args.lam)
        minus = rho_numeric(space, x, y, -args.lam)
        out.update(
            lam=args.lam,
            rho_plus_numeric=plus,
            rho_minus_numeric=minus,
            abs_err_plus=abs(plus - out["rho_plus"]),
            abs_err_minus=abs(minus - out["rho_minus"]),
        )
    return out


def cmd_ortho(args):
    space, tol = _space(args), _tolerances(args)
    x, y = _vector("--x", args.x), _vector("--y", args.y)
    return _with_name("--x/--y", orthogonality_report, space, x, y, tol).to_dict()


def cmd_additivity(args):
    space, tol = _space(args), _tolerances(args)
    x, y1, y2 = _vector("--x", args.x), _vector("--y1", args.y1), _vector("--y2", args.y2)
    return _with_name("--x/--y1/--y2", additivity_report, space, x, y1, y2, tol).to_dict()


def _grid(args, integer: bool) -> list:
    if (args.range is None) == (args.values is None):
        raise InputError("--range/--values: give exactly one")
    try:
        if args.values is not None:
            vals = [float(v) for v in args.values.split(",") if v.strip()]
        else:
            parts = [float(v) for v in args.range.split(":")]
            if integer:
                if len(parts) not in (2, 3):
                    raise ValueError
                step = int(parts[2]) if len(parts) == 3 else 1
                vals = list(range(int(parts[0]), int(parts[1]) + 1, step))
            else:
                if len(parts) != 3:
                    raise ValueError
                vals = [float(v) for v in np.linspace(parts[0], parts[1], int(parts[2]))]
    except ValueError:
        form = "start:stop[:step]" if integer else "start:stop:count"
        raise InputError(f"--range/--values: cannot parse (expected {form} or a comma list)") from None
    if not vals:
        raise InputError("--range/--values: empty grid")
    if integer:
        if any(v != int(v) or v < 2 for v in vals):
            raise InputError("--range/--values: n must be integers >= 2")
        vals = [int(v) for v in vals]
    elif any(not v > 0 or not math.isfinite(v) for v in vals):
        raise InputError("--range/--values: delta must be positive")
    return sorted(vals)


def cmd_sweep(args):
    tol = _tolerances(args)
    rows = []
    if args.space_family == "regular_polygon":
        if args.param != "n":
            raise InputError("--param: regular_polygon sweeps over n")
        for n in _grid(args, integer=True):
            e = space_constants(regular_polygon_space(n).space, tol).E
            cf = closed_form_E(n)
            rows.append({"n": n, "E_computed": e, "E_closed_form": cf, "abs_diff": abs(e - cf)})
    else:
        if args.param != "delta":
            raise InputError("--param: example_3_1 sweeps over delta")
        for d in _grid(args, integer=False):
            space = example31_space(d)
            pts = example31_points(d)
            diam = diam_support(space, pts["P"], tol)
            cf = 2.0 * d / (1.0 + d)
            rows.append({
                "delta": d,
                "diam_J_P": diam,
                "closed_form": cf,
                "abs_diff": abs(diam - cf),
                "eps_min_R1_plus_R2": eps_min(space, pts["P"], pts["R1"] + pts["R2"], tol),
            })
    return rows


def cmd_verify(args):
    names = args.suite or list(SUITES)
    results = []
    for name in names:
        kwargs = {"seed": args.seed, "tol": _tolerances(args)}
        if args.trials is not None:
            kwargs["trials"] = args.trials
        results.append(SUITES[name](**kwargs).to_dict())
    return {"passed": all(r["passed"] for r in results), "suites": results}


# -- output ----------------------------------------------------------------

def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v).lower() if isinstance(v, bool) else str(v)


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(rows[0]))
    for row in rows:
        writer.writerow([_cell(v) for v in row.values()])
    return buf.getvalue()


def render(command: str, report, fmt: str, header: bool) -> str:
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if fmt == "json":
        doc = {"command": command, "report": report}
        if header:
            doc = {"generated_at": stamp, **doc}
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    if command == "verify":
        rows = [{k: v for k, v in r.items() if k != "failures"} for r in report["suites"]]
    elif isinstance(report, list):
        rows = report
    else:
        rows = [report]
    text = _csv(rows)
    return (f"# generated_at={stamp}\n" + text) if header else text


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--space", help="space description: inline JSON or a path to a JSON file")
    common.add_argument("--tol", type=float, help="set every tolerance to this value")
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $NORMLAB_SEED or 0)")
    common.add_argument("--format", choices=("json", "csv"), help="default: csv for sweep, json otherwise")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--no-header", action="store_true", help="omit the timestamp")

    parser = _Parser(prog="normlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("smoothness", parents=[common], help="J(x), its diameter and smoothness flags")
    p.add_argument("--x")
    p.set_defaults(func=cmd_smoothness)

    p = sub.add_parser("constants", parents=[common], help="E, S and R of a polytopal space")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("derivative", parents=[common], help="one-sided norm derivatives")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--check", action="store_true", help="add difference-quotient columns")
    p.add_argument("--lam", type=float, default=1e-6, help="step for --check (default 1e-6)")
    p.set_defaults(func=cmd_derivative)

    p = sub.add_parser("ortho", parents=[common], help="BJ orthogonality and eps_min")
    p.add_argument("--x")
    p.add_argument("--y")
    p.set_defaults(func=cmd_ortho)

    p = sub.add_parser("additivity", parents=[common], help="right-additivity verdicts")
    p.add_argument("--x")
    p.add_argument("--y1")
    p.add_argument("--y2")
    p.set_defaults(func=cmd_additivity)

    p = sub.add_parser("sweep", parents=[common], help="CSV over a family parameter")
    p.add_argument("--space-family", choices=("regular_polygon", "example_3_1"), required=True)
    p.add_argument("--param", choices=("n", "delta"), required=True)
    p.add_argument("--range", help="n: start:stop[:step] inclusive; delta: start:stop:count")
    p.add_argument("--values", help="comma-separated parameter values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="run randomized oracle suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="repeatable; default all")
    p.add_argument("--trials", type=int, help="override each suite's trial count")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _default_seed()
        if args.format is None:
            args.format = "csv" if args.command == "sweep" else "json"
        report = args.func(args)
        text = render(args.command, report, args.format, not args.no_header)
    except InputError as exc:
        print(f"normlab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapabilityError as exc:
        print(f"normlab: unsupported: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"normlab: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not report["passed"]:
        return EXIT_VERIFY
    return EXIT_OK
