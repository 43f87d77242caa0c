"""Command-line interface: ``clifspin <command> [options]``.

Exit codes are 0 on success, 1 when a check fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .checks import SUITES, SuiteConfig, run_suite
from .core import (
    Multivector,
    Signature,
    Tolerance,
    blade_name,
    cayley_table,
    from_json,
    from_text,
    to_json_obj,
    to_text,
)
from .errors import CliffordError
from .groups import twisted_adjoint
from .isometry import component_of, factor_into_reflections, format_component, polar_decompose
from .structure import classify, classify_complex

EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_INPUT = 0, 1, 2


class BadInput(Exception):
    pass


def _load_json_arg(text: str):
    """A literal JSON value, ``-`` for stdin, or a path to a JSON file."""
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        source = stripped
    elif stripped == "-":
        source = sys.stdin.read()
    else:
        try:
            source = Path(text).read_text()
        except OSError as exc:
            raise BadInput(f"cannot read {text}: {exc.strerror}") from exc
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise BadInput(f"invalid JSON: {exc}") from exc


def _load_matrix(text: str) -> np.ndarray:
    data = _load_json_arg(text)
    try:
        mat = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise BadInput("matrix must be a JSON array of numeric rows") from exc
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise BadInput(f"expected a square matrix, got shape {mat.shape}")
    return mat


def _matrix_sig(args, mat: np.ndarray) -> Signature:
    sig = args.sig if args.sig is not None else Signature(0, mat.shape[0])
    if sig.n != mat.shape[0]:
        raise BadInput(f"signature {sig} does not match a {mat.shape[0]}x{mat.shape[0]} matrix")
    return sig


def _load_multivector(text: str, sig: Signature | None) -> Multivector:
    stripped = text.strip()
    if stripped.startswith("{") or stripped == "-" or Path(stripped).is_file():
        return from_json(json.dumps(_load_json_arg(text)), sig)
    if sig is None:
        raise BadInput("a text multivector needs --sig")
    return from_text(sig, text)


def _load_vector(text: str) -> np.ndarray:
    stripped = text.strip()
    try:
        if stripped.startswith("["):
            values = json.loads(stripped)
        else:
            values = [float(s) for s in stripped.split(",") if s.strip()]
        return np.array(values, dtype=float).reshape(-1)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read vector {text!r}") from exc


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _matrix_lines(mat: np.ndarray) -> list[str]:
    return ["  [" + ", ".join(_fmt(v) for v in row) + "]" for row in mat]


def _emit(args, payload: dict, human: list[str]):
    if args.json:
        print(json.dumps(payload))
    else:
        print("\n".join(human))


# ---------------------------------------------------------------------------
# commands


def cmd_table(args) -> int:
    sig = args.sig if args.sig is not None else Signature(0)
    table = cayley_table(sig)
    dim = sig.dim
    names = [blade_name(b) for b in range(dim)]
    rows = [[{"blade": names[a ^ b], "sign": int(table[a, b])} for b in range(dim)]
            for a in range(dim)]

    def cell(entry):
        if entry["sign"] == 0:
            return "0"
        return ("-" if entry["sign"] < 0 else "") + entry["blade"]

    width = max(len(cell(e)) for row in rows for e in row)
    width = max(width, max(len(n) for n in names))
    human = [f"Cl{sig}: product of row blade by column blade",
             " " * (width + 2) + " ".join(n.rjust(width) for n in names)]
    for a, row in enumerate(rows):
        human.append(names[a].rjust(width) + "  " + " ".join(cell(e).rjust(width) for e in row))
    _emit(args, {"sig": {"p": sig.p, "q": sig.q, "r": sig.r}, "blades": names, "table": rows}, human)
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.complex is not None:
        if args.p is not None or args.q is not None:
            raise BadInput("give either p q or --complex n")
        if args.complex < 0:
            raise BadInput("n must be nonnegative")
        klass, label = classify_complex(args.complex), f"Cl({args.complex},C)"
    else:
        if args.p is None or args.q is None:
            raise BadInput("classify needs p and q, or --complex n")
        if args.p < 0 or args.q < 0:
            raise BadInput("p and q must be nonnegative")
        klass, label = classify(args.p, args.q), f"Cl_{{{args.p},{args.q}}}"
    payload = {"algebra": label, "class": str(klass), "field": klass.field,
               "size": klass.size, "summands": klass.summands}
    _emit(args, payload, [str(klass)])
    return EXIT_OK


def cmd_lift(args) -> int:
    mat = _load_matrix(args.matrix)
    sig = _matrix_sig(args, mat)
    fac = factor_into_reflections(mat, sig)
    x = fac.versor()
    kind = "spin" if len(fac) % 2 == 0 else "pin"
    text = to_text(x)
    shown = f"±{text}" if len(x.support()) == 1 else f"±({text})"
    payload = {"element": to_json_obj(x), "text": text, "kind": kind,
               "reflections": [w.tolist() for w in fac.vectors]}
    human = [f"lift in {kind.capitalize()}{sig}: {shown}", f"reflections: {len(fac)}"]
    human += ["  " + ", ".join(_fmt(v) for v in w) for w in fac.vectors]
    _emit(args, payload, human)
    return EXIT_OK


def cmd_act(args) -> int:
    x = _load_multivector(args.rotor, args.sig)
    v = _load_vector(args.vector)
    if v.shape != (x.sig.n,):
        raise BadInput(f"vector has {v.size} entries, {x.sig} needs {x.sig.n}")
    out = twisted_adjoint(x, v, Tolerance(args.tol))
    _emit(args, {"vector": out.tolist()}, [", ".join(_fmt(c) for c in out)])
    return EXIT_OK


def cmd_polar(args) -> int:
    mat = _load_matrix(args.matrix)
    sig = _matrix_sig(args, mat)
    u, h = polar_decompose(mat, sig)
    comp = format_component(component_of(mat, sig))
    payload = {"U": u.tolist(), "H": h.tolist(), "component": comp}
    human = ["U ="] + _matrix_lines(u) + ["H ="] + _matrix_lines(h) + [f"component {comp}"]
    _emit(args, payload, human)
    return EXIT_OK


def cmd_check(args) -> int:
    seed = args.seed
    if args.trials < 1:
        raise BadInput("--trials must be positive")
    results = run_suite(args.suite, SuiteConfig(trials=args.trials, seed=seed,
                                                 tol=Tolerance(args.tol)))
    passed = all(r.passed for r in results)
    payload = {"suite": args.suite, "seed": seed, "trials": args.trials, "passed": passed,
               "results": [{"check": f"{r.suite}.{r.name}", "passed": r.passed,
                            "detail": r.detail} for r in results]}
    human = [f"suite={args.suite} seed={seed} trials={args.trials}"]
    human += [r.line() for r in results]
    human.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    _emit(args, payload, human)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser


def _signature(text: str) -> Signature:
    try:
        return Signature.parse(text)
    except (ValueError, CliffordError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _global_options(suppress: bool) -> argparse.ArgumentParser:
    """Global flags, accepted both before and after the subcommand."""
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--sig", type=_signature, default=default(None),
                        help="signature p,q[,r]")
    parent.add_argument("--tol", type=float, default=default(1e-9), help="tolerance eps")
    parent.add_argument("--seed", type=int, default=default(0), help="random seed")
    parent.add_argument("--json", action="store_true", default=default(False),
                        help="machine-readable output")
    return parent


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clifspin", parents=[_global_options(False)],
                     description="Clifford algebras, Pin and Spin groups.")
    common = [_global_options(True)]
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table", parents=common, help="multiplication table of the basis blades")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("classify", parents=common, help="matrix-algebra class of Cl_{p,q}")
    p.add_argument("p", type=int, nargs="?")
    p.add_argument("q", type=int, nargs="?")
    p.add_argument("--complex", type=int, metavar="N", help="classify Cl(N, C) instead")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lift", parents=common, help="lift a pseudo-orthogonal matrix to Pin")
    p.add_argument("matrix", help="JSON matrix literal, file path, or - for stdin")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("act", parents=common, help="twisted adjoint action on a vector")
    p.add_argument("rotor", help="multivector JSON (literal or file) or text with --sig")
    p.add_argument("vector", help="comma-separated entries or a JSON array")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("polar", parents=common, help="polar decomposition M = U exp(H)")
    p.add_argument("matrix", help="JSON matrix literal, file path, or - for stdin")
    p.set_defaults(func=cmd_polar)

    p = sub.add_parser("check", parents=common, help="run the seeded invariant suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol < 0:
        print("clifspin: error: --tol must be nonnegative", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.func(args)
    except (BadInput, CliffordError) as exc:
        name = type(exc).__name__ if isinstance(exc, CliffordError) else "BadInput"
        print(f"clifspin: {name}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
