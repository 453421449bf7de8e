"""Command-line front end.

Subcommands: ``entry``, ``power``, ``inverse``, ``verify``, ``bench``,
``parse``.  Exit status is 0 on success, 1 when a verification fails and 2 on
usage or specification errors.

Options may also come from ``--config FILE``, a ``key = value`` text file
using the long option names without dashes (``order = 8``, ``s-range =
-2..2``); explicit flags win.  Negative ranges must be written with ``=``,
e.g. ``--s-range=-4..4``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from .errors import TripowError
from .expr import dump, parse_series_expr, series_from_text
from .matrix import MatrixSpec, TriMatrix, Weights, power_closed, power_oracle, random_spec
from .presets import PresetId, preset_series
from .suites import SUITES, run_suite

MAX_ORDER = 64
MAX_ABS_S = 64

DEFAULTS = {
    "phi": None,
    "g": "1",
    "h": "1",
    "preset_phi": None,
    "weights": "ones",
    "order": 6,
    "s": None,
    "s_range": None,
    "k": None,
    "n": None,
    "seed": 0,
    "reps": None,
    "format": "table",
    "suite": "all",
}


class UsageError(TripowError):
    pass


def fmt_rational(q: Fraction) -> str:
    return str(q)


def parse_s_range(text: str) -> tuple[int, ...]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad s-range {text!r}; expected A..B") from None
    if lo > hi:
        raise UsageError(f"empty s-range {text!r}")
    for s in (lo, hi):
        _check_s(s)
    return tuple(range(lo, hi + 1))


def _check_s(s: int):
    if abs(s) > MAX_ABS_S:
        raise UsageError(f"|s| must be at most {MAX_ABS_S}")


def parse_weights(text: str, order: int) -> Weights:
    if text == "ones":
        return Weights.ones(order)
    if text == "factorial":
        return Weights.factorial(order)
    try:
        values = [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad weights {text!r}") from None
    if len(values) < order:
        raise UsageError(f"need {order} weights, got {len(values)}")
    return Weights(tuple(values[:order]))


def read_config(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (x.strip() for x in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults < config file < flags into one plain config dict."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    for key in ("order", "s", "k", "n", "seed", "reps"):
        if cfg[key] is not None:
            try:
                cfg[key] = int(cfg[key])
            except (TypeError, ValueError):
                raise UsageError(f"{key} must be an integer") from None
    if not 1 <= cfg["order"] <= MAX_ORDER:
        raise UsageError(f"order must be in 1..{MAX_ORDER}")
    if cfg["s"] is not None:
        _check_s(cfg["s"])
    if cfg["format"] not in ("table", "csv", "json"):
        raise UsageError(f"unknown format {cfg['format']!r}")
    return cfg


def build_spec(cfg: dict) -> MatrixSpec:
    N = cfg["order"]
    if cfg["preset_phi"] is not None:
        phi = preset_series(PresetId.parse(cfg["preset_phi"]), N)
    else:
        phi = series_from_text(cfg["phi"] or "t", N)
    g = series_from_text(cfg["g"], N)
    h = series_from_text(cfg["h"], N)
    return MatrixSpec(phi, g, h, parse_weights(cfg["weights"], N))


# --- rendering ----------------------------------------------------------

def render_matrix(A: TriMatrix, s: int, fmt: str) -> str:
    if fmt == "json":
        entries = [{"k": k, "n": n, "value": fmt_rational(v)} for k, n, v in A.entries()]
        return json.dumps({"order": A.order, "s": s, "entries": entries})
    if fmt == "csv":
        lines = ["k,n,value"]
        lines += [f"{k},{n},{fmt_rational(v)}" for k, n, v in A.entries()]
        return "\n".join(lines)
    cells = [[fmt_rational(A[k, n]) for n in range(1, A.order + 1)] for k in range(1, A.order + 1)]
    width = max(len(c) for row in cells for c in row)
    label = max(len(str(A.order)), 1)
    header = " " * label + " " + " ".join(str(n).rjust(width) for n in range(1, A.order + 1))
    body = [str(k).rjust(label) + " " + " ".join(c.rjust(width) for c in row)
            for k, row in enumerate(cells, start=1)]
    return "\n".join([f"A^{s} (order {A.order})", header, *body])


def render_reports(reports, fmt: str) -> str:
    if fmt == "json":
        out = []
        for r in reports:
            first = r.first_counterexample
            out.append({
                "suite": r.suite,
                "passed": r.passed,
                "checks": r.checked,
                "failures": len(r.failures),
                "fingerprint": r.fingerprint,
                "s_range": list(r.s_range),
                "first_counterexample": None if first is None else {
                    "k": first.k, "n": first.n, "s": first.s,
                    "expected": fmt_rational(first.expected), "actual": fmt_rational(first.actual),
                },
            })
        return json.dumps(out)
    if fmt == "csv":
        lines = ["suite,passed,checks,failures"]
        lines += [f"{r.suite},{int(r.passed)},{r.checked},{len(r.failures)}" for r in reports]
        return "\n".join(lines)
    lines = [r.summary() for r in reports]
    ok = all(r.passed for r in reports)
    lines.append(f"{'ALL PASS' if ok else 'FAILED'}: {sum(r.passed for r in reports)}/{len(reports)} suites")
    return "\n".join(lines)


# --- commands -----------------------------------------------------------

def cmd_entry(cfg, out) -> int:
    spec = build_spec(cfg)
    k, n = cfg["k"], cfg["n"]
    if k is None or n is None:
        raise UsageError("entry needs --k and --n")
    N = spec.order
    if not (1 <= k <= N and 1 <= n <= N):
        raise UsageError(f"k and n must lie in 1..{N}")
    s = 1 if cfg["s"] is None else cfg["s"]
    print(fmt_rational(power_closed(spec, s)[k, n]), file=out)
    return 0


def cmd_power(cfg, out, s_default=1) -> int:
    spec = build_spec(cfg)
    s = s_default if cfg["s"] is None else cfg["s"]
    print(render_matrix(power_closed(spec, s), s, cfg["format"]), file=out)
    return 0


def cmd_verify(cfg, out) -> int:
    suite = cfg["suite"]
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}, all")
    s_range = parse_s_range(cfg["s_range"]) if cfg["s_range"] else None
    reports = run_suite(suite, cfg["order"], cfg["seed"], cfg["reps"], s_range)
    print(render_reports(reports, cfg["format"]), file=out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_bench(cfg, out) -> int:
    reps = cfg["reps"] or 10
    s_range = parse_s_range(cfg["s_range"]) if cfg["s_range"] else tuple(range(-4, 5))
    rng = random.Random(f"{cfg['seed']}:bench")
    specs = [random_spec(rng, cfg["order"]) for _ in range(reps)]
    timings = {}
    results = {}
    for name, fn in (("closed", power_closed), ("oracle", power_oracle)):
        start = time.perf_counter()
        results[name] = [fn(spec, s) for spec in specs for s in s_range]
        timings[name] = time.perf_counter() - start
    agree = results["closed"] == results["oracle"]
    if cfg["format"] == "json":
        print(json.dumps({"order": cfg["order"], "reps": reps, "s_range": list(s_range),
                          "closed_seconds": timings["closed"], "oracle_seconds": timings["oracle"],
                          "agree": agree}), file=out)
    else:
        print(f"order {cfg['order']}, {reps} specs, s in [{s_range[0]}, {s_range[-1]}]", file=out)
        for name in ("closed", "oracle"):
            print(f"{name:>6}: {timings[name]:.3f} s", file=out)
        print(f"agree: {'yes' if agree else 'NO'}", file=out)
    return 0 if agree else 1


def cmd_parse(args, cfg, out) -> int:
    ast = parse_series_expr(args.expr)
    print(dump(ast), file=out)
    if args.order is not None:
        series = series_from_text(args.expr, cfg["order"])
        print(" ".join(fmt_rational(c) for c in series), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE")
    common.add_argument("--phi", metavar="EXPR")
    common.add_argument("--g", metavar="EXPR")
    common.add_argument("--h", metavar="EXPR")
    common.add_argument("--preset-phi", dest="preset_phi", metavar="NAME")
    common.add_argument("--weights", metavar="ones|factorial|LIST")
    common.add_argument("--order", metavar="N")
    common.add_argument("--s", metavar="INT")
    common.add_argument("--s-range", dest="s_range", metavar="A..B")
    common.add_argument("--k", metavar="INT")
    common.add_argument("--n", metavar="INT")
    common.add_argument("--seed", metavar="U64")
    common.add_argument("--reps", metavar="INT")
    common.add_argument("--format", choices=("table", "csv", "json"))
    common.add_argument("--suite", metavar="NAME")

    parser = argparse.ArgumentParser(
        prog="tripow",
        description="Exact powers and inverses of weighted triangular matrices built from series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("entry", parents=[common], help="one entry of A^s (default s=1)")
    sub.add_parser("power", parents=[common], help="the matrix A^s by closed form")
    sub.add_parser("inverse", parents=[common], help="alias for power --s -1")
    sub.add_parser("verify", parents=[common], help="run verification suites")
    sub.add_parser("bench", parents=[common], help="time closed form against the oracle")
    p = sub.add_parser("parse", parents=[common], help="dump the syntax tree of an expression")
    p.add_argument("expr")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve(args)
        if args.command == "entry":
            return cmd_entry(cfg, out)
        if args.command == "power":
            return cmd_power(cfg, out)
        if args.command == "inverse":
            if cfg["s"] is not None:
                raise UsageError("inverse takes no --s; use power")
            return cmd_power(cfg, out, s_default=-1)
        if args.command == "verify":
            return cmd_verify(cfg, out)
        if args.command == "bench":
            return cmd_bench(cfg, out)
        return cmd_parse(args, cfg, out)
    except TripowError as exc:
        print(f"tripow: error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"tripow: error: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
