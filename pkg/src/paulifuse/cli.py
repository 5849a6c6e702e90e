"""Command-line front end: generate benchmarks, compile, verify, report.

Machine-readable results (metrics, verification reports) go to stdout as
JSON; human-oriented progress lines go to stderr.  Exit codes: 0 success,
1 usage or configuration error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .circuit_ir import CostModel, emit, metrics, program_from_dict
from .hamlib import HEISENBERG, ISING, LatticeSpec, generate, load_terms, save_terms
from .oracle import OracleCapExceeded, qubit_cap, verify_program
from .pauli import PauliTerm
from .pipeline import DEFAULT_WINDOWS, MODES, compile_terms

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2


class UsageError(Exception):
    pass


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"bad --dims {text!r}; expected AxB or AxBxC") from None
    if len(dims) not in (2, 3) or any(d < 1 for d in dims):
        raise UsageError(f"bad --dims {text!r}; expected 2 or 3 positive sizes")
    return dims


def _load_input(args: argparse.Namespace) -> list[PauliTerm]:
    if args.input and args.model:
        raise UsageError("give either --input or --model/--dims, not both")
    if args.input:
        return load_terms(args.input, dt=args.dt)
    if args.model:
        if not args.dims:
            raise UsageError("--model requires --dims")
        spec = LatticeSpec(_parse_dims(args.dims), args.model, dt=args.dt)
        return generate(spec)
    raise UsageError("no input: give --input FILE or --model with --dims")


def _info(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_gen(args: argparse.Namespace) -> int:
    if not args.model or not args.dims:
        raise UsageError("gen requires --model and --dims")
    spec = LatticeSpec(_parse_dims(args.dims), args.model, dt=args.dt)
    terms = generate(spec)
    if args.out:
        save_terms(terms, args.out, dt=args.dt)
        _info(f"wrote {len(terms)} terms on {spec.n_qubits} qubits to {args.out}")
    else:
        for t in terms:
            coeff = t.sign * t.angle / (2.0 * args.dt)
            sys.stdout.write(f"{coeff!r} {t.label()}\n")
    print(len(terms), file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_compile(args: argparse.Namespace) -> int:
    terms = _load_input(args)
    t0 = time.monotonic()
    program = compile_terms(terms, args.mode, window=args.window)
    elapsed = time.monotonic() - t0
    model = CostModel(eps_base=args.eps)
    report = metrics(program, model, max(len(terms), 1)) if terms else metrics(program, model, 1)
    payload = report.to_dict()
    payload.update(
        {
            "mode": args.mode,
            "window": program.window,
            "qubits": program.n,
            "n_terms": len(terms),
            "segments": len(program.segments),
        }
    )
    if args.emit:
        text = emit(program, args.format)
        with open(args.emit, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        _info(f"emitted {args.format} program to {args.emit}")
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    _info(
        f"{args.mode}: {len(terms)} terms -> {report.unitary_count} unitaries in "
        f"{len(program.segments)} segments ({elapsed:.2f}s)"
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    terms = _load_input(args)
    n = terms[0].n if terms else 0
    cap = qubit_cap()
    limit = min(args.max_qubits, cap)
    if n > limit:
        raise UsageError(
            f"input acts on {n} qubits; verification is capped at {limit} "
            f"(--max-qubits {args.max_qubits}, oracle cap {cap})"
        )
    if args.program:
        with open(args.program, encoding="utf-8") as fh:
            program = program_from_dict(json.load(fh))
        _info(f"verifying emitted program {args.program}")
    else:
        program = compile_terms(terms, args.mode, window=args.window)
    report = verify_program(program, terms, tol=args.tol)
    payload = report.to_dict()
    payload.update({"mode": program.mode, "qubits": program.n, "n_terms": len(terms)})
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    if report.ok:
        _info(f"verification passed (max deviation {report.max_deviation:.3e})")
        return EXIT_OK
    _info(f"verification FAILED in segments {list(report.failed_segments)}")
    return EXIT_VERIFY


def cmd_report(args: argparse.Namespace) -> int:
    from .report import run_report

    paths = run_report(
        out_dir=args.out_dir,
        eps=args.eps,
        dt=args.dt,
        suite=args.suite,
        window_1q=args.window or DEFAULT_WINDOWS["ncf1q"],
        window_2q=args.window or DEFAULT_WINDOWS["ncf2q"],
    )
    json.dump({"outputs": paths}, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paulifuse",
        description="Fuse Pauli rotations into 1- or 2-qubit blocks behind Clifford frames.",
    )
    parser.add_argument("--version", action="version", version=f"paulifuse {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", help="term file (<coefficient> <letters> per line)")
        p.add_argument("--model", choices=[ISING, HEISENBERG], help="built-in lattice model")
        p.add_argument("--dims", help="lattice sizes AxB or AxBxC")
        p.add_argument("--dt", type=float, default=1.0, help="Trotter timestep (default 1.0)")
        p.add_argument("--seed", type=int, default=0,
                       help="accepted for reproducible harnesses; compilation is deterministic")

    gen = sub.add_parser("gen", help="write a benchmark term file")
    add_common(gen)
    gen.add_argument("--out", help="output path (stdout when omitted)")
    gen.set_defaults(func=cmd_gen)

    comp = sub.add_parser("compile", help="compile terms and print metrics JSON")
    add_common(comp)
    comp.add_argument("--mode", choices=list(MODES), default="ncf1q")
    comp.add_argument("--window", type=int, default=None,
                      help="sliding window size (defaults: 4 for ncf1q, 128 for ncf2q)")
    comp.add_argument("--eps", type=float, default=0.001, help="base synthesis error budget")
    comp.add_argument("--emit", help="also write the compiled program to this path")
    comp.add_argument("--format", choices=["qasm", "json"], default="qasm")
    comp.set_defaults(func=cmd_compile)

    ver = sub.add_parser("verify", help="check a compilation against the dense oracle")
    add_common(ver)
    ver.add_argument("--mode", choices=list(MODES), default="ncf1q")
    ver.add_argument("--window", type=int, default=None)
    ver.add_argument("--max-qubits", type=int, default=10,
                     help="refuse inputs larger than this (also capped by NCF_ORACLE_CAP)")
    ver.add_argument("--tol", type=float, default=1e-8)
    ver.add_argument("--program", help="verify a previously emitted JSON program instead of recompiling")
    ver.set_defaults(func=cmd_verify)

    rep = sub.add_parser("report", help="run the benchmark suite; write CSV and figures")
    rep.add_argument("--out-dir", default="reports")
    rep.add_argument("--eps", type=float, default=0.001)
    rep.add_argument("--dt", type=float, default=1.0)
    rep.add_argument("--window", type=int, default=None)
    rep.add_argument("--suite", choices=["paper", "small"], default="paper",
                     help="paper: the 8 built-in lattice sizes; small: quick smoke sizes")
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OracleCapExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
