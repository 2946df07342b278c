"""Command line: replay, shade, detect, oblique, scan and atlas.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from .blowup import BlowupScript, BlowupStep, FormError, InseparableForm, ResolutionState, replay
from .fpoly import INFINITY, DivisionError, ParseError, PolyError, format_factored, is_prime, parse
from .harness import (
    MohBounds,
    default_workers,
    fact_campaign,
    kangaroo_scan,
    moh_trial,
    zwickel_sweep,
)
from .kangaroo import MohViolation, NecessityViolation, classify_history, detect_kangaroo
from .oblique import atlas, hybrid_oblique, integral_oblique, jet_construction
from .shade import shade

OK, FAILED, USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument helpers

def prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not a prime")
    return p


def natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"{n} is negative")
    return n


def positive(text: str) -> int:
    n = natural(text)
    if n == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def csv_naturals(text: str) -> tuple[int, ...]:
    try:
        return tuple(natural(part) for part in text.split(",") if part.strip())
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad list {text!r}: {exc}") from None


def assignments(text: str) -> dict[str, int]:
    """``y=1,w=0`` -> {"y": 1, "w": 0}."""
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, value = part.partition("=")
        if not sep or not name.strip():
            raise argparse.ArgumentTypeError(f"expected name=value, got {part!r}")
        try:
            out[name.strip()] = int(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"value of {name.strip()!r} is not an integer") from None
    return out


def _yvars(text: str, x: str, given: str | None) -> tuple[str, ...]:
    if given:
        return tuple(v.strip() for v in given.split(",") if v.strip())
    names = {v for v in parse(text, 2).vars} if text else set()
    return tuple(sorted(names - {x}))


def _fmt(v) -> str:
    return "inf" if v == INFINITY else str(v)


# ---------------------------------------------------------------------------
# replay

BUNDLED = ("kangaroo_p2.json",)


def read_script(path: str) -> BlowupScript:
    p = Path(path)
    if p.exists():
        data = json.loads(p.read_text())
    elif p.name in BUNDLED:
        data = json.loads(resources.files("kangaroolab").joinpath("data", p.name).read_text())
    else:
        raise UsageError(f"no such script: {path}")
    try:
        return BlowupScript.from_json(data)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def trace_lines(state: ResolutionState) -> list[str]:
    tags = classify_history(state)
    rows = [("step", "point", "order", "shade", "r", "witness", "tags", "F")]
    for snap, tag in zip(state.history, tags.summary()):
        rows.append((
            str(snap.index),
            "-" if snap.step is None else str(snap.step),
            str(snap.order),
            _fmt(snap.shade.shade),
            ",".join(map(str, snap.r)),
            "-" if snap.shade.bold_regular or snap.shade.witness.is_zero() else str(snap.shade.witness),
            tag,
            format_factored(snap.form.F),
        ))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]) - 1)]
    out = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)) + "  " + row[-1] for row in rows]
    out = [line.rstrip() for line in out]
    if state.status != "active":
        out.append(f"ORDER DROPPED at {state.dropped_step}: {state.dropped}")
    for t in tags.triples:
        out.append(f"KANGAROO at step {t.kangaroo}: shade {_fmt(t.shade_antelope)} -> {_fmt(t.shade_kangaroo)}")
    return out


def cmd_replay(args) -> int:
    script = read_script(args.script)
    state = replay(script)
    print("\n".join(trace_lines(state)))
    return OK


# ---------------------------------------------------------------------------
# shade and detect

def cmd_shade(args) -> int:
    c = args.p ** args.e
    yvars = _yvars(args.poly, args.x, args.vars)
    F = parse(args.poly, args.p, yvars)
    r = args.r if args.r is not None else (0,) * len(yvars)
    form = InseparableForm(F, r, c, args.x)
    res = shade(form)
    if res.bold_regular:
        print("shade=inf bold-regular")
    else:
        print(f"shade={res.shade} witness={res.witness}")
    return OK


def cmd_detect(args) -> int:
    names = parse(args.form, args.p).vars
    yvars = _yvars(args.form, args.x, args.vars)
    if args.x not in names:
        raise UsageError(f"the form must contain {args.x}^c")
    form = InseparableForm.parse(args.form, args.p, args.r, args.x, yvars)
    if args.chart not in form.yvars:
        raise UsageError(f"--chart must be one of {','.join(form.yvars)}")
    unknown = set(args.t) - set(form.yvars)
    if unknown or args.chart in args.t:
        raise UsageError(f"--t assigns to {','.join(sorted(unknown or {args.chart}))}, "
                         f"expected non-chart variables among {','.join(form.yvars)}")
    state = ResolutionState.start(form)
    step = BlowupStep(args.chart, args.t)
    try:
        det = detect_kangaroo(state, step)
    except (NecessityViolation, MohViolation) as exc:
        print(f"VIOLATION {type(exc).__name__}: {exc}")
        return FAILED
    print(f"point {step}")
    print(det.line())
    if det.state.status == "active":
        print(f"transform {det.state.current}")
        print(f"r {','.join(map(str, det.state.last.r))}")
    return OK


# ---------------------------------------------------------------------------
# oblique constructions

def cmd_oblique(args) -> int:
    p = args.p
    if args.mode in ("hybrid", "integral"):
        missing = [f for f in ("r", "s", "k") if getattr(args, f) is None]
        if missing:
            raise UsageError(f"--mode {args.mode} needs " + ", ".join("-" + f for f in missing))
        t = 1 if args.t is None else args.t
        if t % p == 0:
            raise UsageError("-t must be nonzero modulo p")
        if args.mode == "hybrid":
            P = hybrid_oblique(args.r, args.s, args.k, t, p)
        else:
            P = integral_oblique(args.s, args.r, args.k, t, p)
    else:
        if args.s is None or args.k is None or args.v is None:
            raise UsageError("--mode jet needs -s, -k and --v")
        s = args.s_list
        zvars = tuple(f"y{i}" for i in range(len(s), 0, -1))
        v = parse(args.v, p, zvars)
        P = jet_construction(s, args.k, v, p, args.r or 0)
    print("0" if P.is_zero() else format_factored(P))
    return OK


# ---------------------------------------------------------------------------
# scans

def cmd_scan(args) -> int:
    workers = args.workers if args.workers is not None else default_workers()
    if args.what == "kangaroo":
        report = kangaroo_scan(args.p or 2, args.rmax, args.kmax, workers)
        lines = report.lines()
    elif args.what == "moh":
        bounds = MohBounds(rmax=args.rmax, extra=args.extra, density=args.density)
        report = moh_trial(args.p or 2, args.e, args.trials, args.seed, workers, bounds)
        lines = report.lines()
    elif args.what == "fact":
        report = fact_campaign(args.p or 2, args.rmax, args.kmax, args.seed, args.prefixes, workers=workers)
        lines = report.lines()
    else:
        report = zwickel_sweep(args.mmax, args.cmax, args.degmax, args.p or 2, args.seed, args.exact, workers)
        lines = report.lines(verbose=args.verbose)
    print("\n".join(lines))
    print(f"summary {args.what} {'PASS' if report.ok else 'FAIL'}")
    return OK if report.ok else FAILED


def cmd_atlas(args) -> int:
    for rec in atlas(args.p, args.rmax, args.kmax):
        print(rec.line())
    return OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kangaroolab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("replay", help="replay a blowup script and print the trace")
    rp.add_argument("script")
    rp.set_defaults(fn=cmd_replay)

    sp = sub.add_parser("shade", help="shade and stripping witness of F")
    sp.add_argument("-p", type=prime, required=True)
    sp.add_argument("-e", type=positive, default=1)
    sp.add_argument("-r", type=csv_naturals)
    sp.add_argument("--x", default="x")
    sp.add_argument("--vars", help="comma-separated y-variables (default: sorted names in the polynomial)")
    sp.add_argument("poly")
    sp.set_defaults(fn=cmd_shade)

    dp = sub.add_parser("detect", help="blow up towards one point and classify it")
    dp.add_argument("-p", type=prime, required=True)
    dp.add_argument("-r", type=csv_naturals)
    dp.add_argument("--x", default="x")
    dp.add_argument("--vars")
    dp.add_argument("--chart", required=True)
    dp.add_argument("--t", type=assignments, default={})
    dp.add_argument("form")
    dp.set_defaults(fn=cmd_detect)

    op = sub.add_parser("oblique", help="closed-form oblique polynomials")
    op.add_argument("--mode", choices=("hybrid", "integral", "jet"), required=True)
    op.add_argument("-p", type=prime, required=True)
    op.add_argument("-r", type=natural)
    op.add_argument("-s", type=str)
    op.add_argument("-k", type=natural)
    op.add_argument("-t", type=int)
    op.add_argument("--v", help="jet mode: polynomial v in y_l..y_1")
    op.set_defaults(fn=cmd_oblique)

    sc = sub.add_parser("scan", help="verification campaigns")
    sc.add_argument("what", choices=("kangaroo", "moh", "fact", "zwickel"))
    sc.add_argument("-p", type=prime)
    sc.add_argument("-e", type=positive, default=1)
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--workers", type=positive)
    sc.add_argument("--trials", type=positive, default=10_000)
    sc.add_argument("--rmax", type=natural, default=None)
    sc.add_argument("--kmax", type=natural, default=4)
    sc.add_argument("--extra", type=natural, default=3)
    sc.add_argument("--density", type=float, default=0.4)
    sc.add_argument("--prefixes", type=natural, default=16)
    sc.add_argument("--mmax", type=positive, default=3)
    sc.add_argument("--cmax", type=positive, default=4)
    sc.add_argument("--degmax", type=positive, default=12)
    sc.add_argument("--exact", action="store_true", help="zwickel: also run exact determinants")
    sc.add_argument("--verbose", action="store_true", help="zwickel: one line per context")
    sc.set_defaults(fn=cmd_scan)

    at = sub.add_parser("atlas", help="oblique classes per (p, r, k)")
    at.add_argument("-p", type=prime, required=True)
    at.add_argument("--rmax", type=natural, required=True)
    at.add_argument("--kmax", type=natural, required=True)
    at.set_defaults(fn=cmd_atlas)
    return ap


def _finish_args(args) -> None:
    if args.command == "oblique" and args.s is not None:
        try:
            args.s_list = csv_naturals(args.s)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from None
        if args.mode != "jet":
            if len(args.s_list) != 1:
                raise UsageError("-s is a single integer for hybrid and integral modes")
            args.s = args.s_list[0]
    if args.command == "scan":
        if args.rmax is None:
            args.rmax = 5 if args.what in ("kangaroo", "fact") else 4
        if not 0 < args.density <= 1:
            raise UsageError("--density must lie in (0, 1]")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        _finish_args(args)
        return args.fn(args)
    except UsageError as exc:
        print(f"kangaroolab: error: {exc}", file=sys.stderr)
        return USAGE
    except (ParseError, PolyError, FormError, DivisionError, ValueError) as exc:
        print(f"kangaroolab: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
