"""Command-line front end.

Usage:
    amalgam-ft norm --kind seq --spec '{"gen": "single-spike", "n": 4}'
    amalgam-ft norm --kind fun --spec chi01.json --tol 1e-10
    amalgam-ft transform --kind t --spec chi01.json --at 0.8
    amalgam-ft transform --kind cos --spec hat.json --grid 0.1:10:50
    amalgam-ft decompose --spec hat.json --gamma 1 --grid 0.1:100:200 --l1-window 0.01:1000
    amalgam-ft verify --suite all --seed 42 --corpus-size 20 --out reports.json
    amalgam-ft sample --spec hat.json --grid 0:1:11

Exit codes: 0 success, 1 verification or computation failure, 2 usage or
parse error, 3 theorem precondition violated.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .amalgam import CoefficientSequence, function_amalgam_norm, sequence_amalgam_norm, wiener_amalgam_norm
from .asymptotics import decompose_grid, remainder_l1
from .errors import ConvergenceError, DomainError, ModelError, PreconditionError
from .model import FunctionModel
from .transforms import fourier_transform, hilbert_transform, t_transform
from .verify import SUITES, default_workers, run_suites

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    """Bad flag values or unparseable input."""


def _load_json(text: str):
    """Inline JSON if it looks like an object or array, otherwise a file path."""
    src = text.strip()
    try:
        if not src.startswith(("{", "[")):
            src = Path(text).read_text(encoding="utf-8")
        return json.loads(src)
    except OSError as exc:
        raise UsageError(f"cannot read {text!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON in {text!r}: {exc}") from exc


def _function(spec: str) -> FunctionModel:
    data = _load_json(spec)
    if not isinstance(data, dict):
        raise UsageError("function spec must be a JSON object")
    return FunctionModel.from_dict(data)


def _sequence(spec: str) -> CoefficientSequence:
    data = _load_json(spec)
    if isinstance(data, list):
        data = {"entries": data}
    return CoefficientSequence.from_dict(data)


def _grid(text: str, positive: bool) -> np.ndarray:
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError as exc:
        raise UsageError(f"grid must look like lo:hi:n, got {text!r}") from exc
    if n < 1 or hi < lo:
        raise UsageError(f"grid needs n >= 1 and lo <= hi, got {text!r}")
    if positive and lo <= 0:
        raise UsageError("x must be positive")
    return np.linspace(lo, hi, n)


def _window(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"window must look like lo:hi, got {text!r}") from exc
    if not 0 < lo < hi:
        raise UsageError("window needs 0 < lo < hi")
    return lo, hi


def _positive(name: str, value: float) -> float:
    if not value > 0:
        raise UsageError(f"{name} must be positive, got {value!r}")
    return value


def _emit_json(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_csv(header: Sequence[str], rows, out: str | None = None) -> None:
    fh = open(out, "w", newline="", encoding="utf-8") if out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v) + 0.0) for v in row])  # no "-0.0"
    finally:
        if out:
            fh.close()


# -- subcommands ------------------------------------------------------------


def cmd_norm(args) -> int:
    tol = _positive("--tol", args.tol)
    if args.kind == "seq":
        seq = _sequence(args.spec)
        result = {"kind": "seq", "value": sequence_amalgam_norm(seq), "tail_bound": 0.0}
    elif args.kind == "fun":
        result = {"kind": "fun", **function_amalgam_norm(_function(args.spec), tol=tol).to_dict()}
    else:
        result = {"kind": "wiener", "value": wiener_amalgam_norm(_function(args.spec)), "tail_bound": 0.0}
    _emit_json(result, args.out)
    return EXIT_OK


def _transform_values(g: FunctionModel, kind: str, xs: np.ndarray, extension: str, strict: bool) -> list[float]:
    if kind in ("cos", "sin"):
        return list(fourier_transform(g, 0 if kind == "cos" else 1, xs))
    out = []
    for x in xs:
        try:
            out.append(t_transform(g, x) if kind == "t" else hilbert_transform(g, x, extension))
        except DomainError:
            if strict:
                raise
            out.append(float("nan"))
    return out


def cmd_transform(args) -> int:
    if (args.at is None) == (args.grid is None):
        raise UsageError("give exactly one of --at or --grid")
    g = _function(args.spec)
    if args.at is not None:
        x = _positive("x", args.at)
        value = _transform_values(g, args.kind, np.array([x]), args.extension, strict=True)[0]
        _emit_json({"kind": args.kind, "x": x, "value": float(value)}, args.out)
        return EXIT_OK
    xs = _grid(args.grid, positive=True)
    values = _transform_values(g, args.kind, xs, args.extension, strict=False)
    head = "x" if args.kind in ("cos", "sin") else "t"
    _emit_csv([head, "value"], zip(xs, values), args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _function(args.spec)
    xs = _grid(args.grid, positive=True)
    rows = decompose_grid(g, args.gamma, xs)
    _emit_csv(["x", "transform", "main", "remainder"], (r.to_row() for r in rows), args.out)
    if args.l1_window:
        lo, hi = _window(args.l1_window)
        est = remainder_l1(g, args.gamma, lo, hi, tol=_positive("--tol", args.tol))
        text = json.dumps(est.to_dict(), indent=2) + "\n"
        if args.report:
            Path(args.report).write_text(text, encoding="utf-8")
        else:
            sys.stderr.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.suite or ["all"]
    if "all" in names:
        names = "all"
    else:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite {unknown[0]!r}; choose from all, {', '.join(SUITES)}")
    if args.corpus_size < 1:
        raise UsageError("--corpus-size must be positive")
    workers = args.workers if args.workers is not None else default_workers()
    reports = run_suites(names, seed=args.seed, corpus_size=args.corpus_size, workers=max(1, workers))
    _emit_json([r.to_dict() for r in reports], args.out)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        sys.stderr.write(f"FAILED {r.claim_id} [{r.case}]: {r.ratio_or_defect!r} vs tolerance {r.tolerance!r}\n")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_sample(args) -> int:
    g = _function(args.spec)
    ts = _grid(args.grid, positive=False)
    _emit_csv(["t", "f"], zip(ts, g.evaluate(ts)), args.out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="amalgam-ft", description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", help="JSON file of defaults, one object per subcommand")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = subs["norm"] = sub.add_parser("norm", help="a_{1,2}, A_{1,2} or W(L^1, l^2) norm as JSON")
    p.add_argument("--kind", choices=["seq", "fun", "wiener"], default="fun")
    p.add_argument("--spec", required=True, help="inline JSON or path")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_norm)

    p = subs["transform"] = sub.add_parser("transform", help="cosine, sine, T or Hilbert transform")
    p.add_argument("--kind", choices=["cos", "sin", "t", "hilbert"], required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--at", type=float)
    p.add_argument("--grid", help="lo:hi:n, evenly spaced")
    p.add_argument("--extension", choices=["zero", "odd"], default="zero", help="Hilbert extension to the line")
    p.add_argument("--out")
    p.set_defaults(func=cmd_transform)

    p = subs["decompose"] = sub.add_parser("decompose", help="main term / remainder table")
    p.add_argument("--spec", required=True)
    p.add_argument("--gamma", type=int, choices=[0, 1], required=True)
    p.add_argument("--grid", default="0.1:100:200")
    p.add_argument("--l1-window", help="lo:hi for the remainder integral")
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--report", help="file for the remainder JSON (default: stderr)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = subs["verify"] = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", help="claim id or 'all' (repeatable)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--corpus-size", type=int, default=20)
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = subs["sample"] = sub.add_parser("sample", help="CSV of (t, f(t))")
    p.add_argument("--spec", required=True)
    p.add_argument("--grid", required=True, help="lo:hi:n")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)
    return parser, subs


def _apply_config(argv: Sequence[str], subs: dict[str, argparse.ArgumentParser]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = _load_json(known.config)
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    for name, section in cfg.items():
        if name not in subs or not isinstance(section, dict):
            raise UsageError(f"unknown config section {name!r}")
        values = {k.replace("-", "_"): v for k, v in section.items()}
        subs[name].set_defaults(**values)
        for action in subs[name]._actions:
            if action.dest in values:
                action.required = False  # satisfied by the config file


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        _apply_config(argv, subs)
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
    except (UsageError, ModelError, ValueError, KeyError) as exc:
        if isinstance(exc, (PreconditionError, DomainError)):
            sys.stderr.write(f"precondition violated: {exc}\n")
            return EXIT_PRECONDITION
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ConvergenceError as exc:
        sys.stderr.write(f"computation failed: {exc}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
