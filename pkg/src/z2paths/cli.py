"""Command-line front end.

Bitstrings are written wire 1 first: ``-a 001`` sets wire 3 to 1, matching
the notation <b|U|a>.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import counting
from .circuit import parse_circuit, raise_grid, render_grid
from .counting import (
    Amplitude,
    bitstrings,
    count_paths,
    format_amplitude,
    full_matrix,
    system_amplitude,
)
from .errors import Z2PathsError
from .groebner import MonomialOrder, buchberger, field_polynomials
from .pathsum import EXPORT_FORMATS, bind_system, export_system, extract_system
from .simulator import oracle_matrix

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    input: str
    output: str | None
    format: str
    backend: str
    h_cap: int
    wire_cap: int
    workers: int
    verbose: bool
    a: str | None = None
    b: str | None = None
    phase: int = 0


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="z2paths",
        description="Compile Hadamard/Toffoli circuits to Z2 polynomial systems and evaluate "
                    "amplitudes exactly by counting roots.",
        epilog="Bitstrings list wire 1 first (big-endian): in '-a 001' only wire 3 is set.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="circuit file in the z2paths DSL ('-' for stdin)")
    common.add_argument("-o", "--output", help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="show unnormalized amplitudes")
    common.add_argument("--backend", choices=counting.BACKENDS, default="brute",
                        help="root counting backend (default: brute)")
    common.add_argument("--h-cap", type=int, default=counting.DEFAULT_H_CAP,
                        help="maximum path variables for brute-force enumeration (default: %(default)s)")
    common.add_argument("--wire-cap", type=int, default=counting.DEFAULT_WIRE_CAP,
                        help="maximum wires for full-matrix commands (default: %(default)s)")
    common.add_argument("--workers", type=int, default=1,
                        help="threads for brute-force enumeration (default: 1)")

    bits = argparse.ArgumentParser(add_help=False)
    bits.add_argument("-a", required=True, help="input bitstring, wire 1 first")
    bits.add_argument("-b", required=True, help="output bitstring, wire 1 first")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("compile", parents=[common], help="parse, lower and validate; print the grid")
    p = sub.add_parser("polys", parents=[common], help="print the polynomial system")
    p.add_argument("--format", choices=EXPORT_FORMATS, default="plain")
    sub.add_parser("amplitude", parents=[common, bits], help="exact <b|U|a>")
    sub.add_parser("matrix", parents=[common], help="full 2^n x 2^n matrix")
    sub.add_parser("count", parents=[common, bits], help="root counts N0 and N1")
    sub.add_parser("verify", parents=[common], help="compare every amplitude against the statevector oracle")
    p = sub.add_parser("groebner", parents=[common, bits], help="reduced lex Groebner basis of F0 or F1 with field polynomials")
    p.add_argument("--phase", type=int, choices=(0, 1), default=0, help="0 for F0, 1 for F1")
    return parser


def parse_config(argv) -> CliConfig:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(
        command=args.command,
        input=args.input,
        output=args.output,
        format=getattr(args, "format", "plain"),
        backend=args.backend,
        h_cap=args.h_cap,
        wire_cap=args.wire_cap,
        workers=args.workers,
        verbose=args.verbose,
        a=getattr(args, "a", None),
        b=getattr(args, "b", None),
        phase=getattr(args, "phase", 0),
    )
    if cfg.h_cap < 0 or cfg.wire_cap < 1 or cfg.workers < 1:
        raise _UsageError("--h-cap must be >= 0, --wire-cap and --workers >= 1")
    return cfg


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _count_kwargs(cfg):
    return {"h_cap": cfg.h_cap, "workers": cfg.workers} if cfg.backend == "brute" else {}


def _cmd_compile(cfg, grid):
    return render_grid(grid) + "\n", EXIT_OK


def _cmd_polys(cfg, grid):
    return export_system(extract_system(grid), cfg.format), EXIT_OK


def _cmd_amplitude(cfg, grid):
    sys_ = extract_system(grid)
    counts = count_paths(bind_system(sys_, cfg.a, cfg.b), cfg.backend, **_count_kwargs(cfg))
    amp = Amplitude(counts.difference, sys_.hadamards)
    raw = (counts.difference, sys_.hadamards) if cfg.verbose else None
    return format_amplitude(amp, raw) + "\n", EXIT_OK


def _cmd_count(cfg, grid):
    sys_ = extract_system(grid)
    counts = count_paths(bind_system(sys_, cfg.a, cfg.b), cfg.backend, **_count_kwargs(cfg))
    return f"N0 = {counts.n0}\nN1 = {counts.n1}\nh = {sys_.hadamards}\n", EXIT_OK


def _cmd_matrix(cfg, grid):
    matrix = full_matrix(grid, cfg.backend, wire_cap=cfg.wire_cap, **_count_kwargs(cfg))
    labels = bitstrings(grid.wires)
    exact = [[f"{e.m}/sqrt(2^{e.h})" for e in row] for row in matrix]
    decimal = [[repr(e.value) for e in row] for row in matrix]
    lines = ["# entry [b][a] = <b|U|a>; rows: output b, columns: input a"]
    for title, table in (("exact", exact), ("decimal", decimal)):
        width = max(len(c) for row in table for c in row + labels)
        lines.append(f"# {title}")
        lines.append(" " * (grid.wires + 2) + " ".join(lab.rjust(width) for lab in labels))
        for lab, row in zip(labels, table):
            lines.append(f"{lab}: " + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_verify(cfg, grid):
    gates = raise_grid(grid)
    if gates is None:
        raise Z2PathsError("verify needs a gate-list circuit, or a grid whose every column "
                           "is a single H, TOF or CNOT")
    n = grid.wires
    if n > cfg.wire_cap:
        raise Z2PathsError(f"{n} wires exceeds the matrix cap of {cfg.wire_cap}; raise --wire-cap")
    expected = oracle_matrix(gates, n)
    sys_ = extract_system(grid)
    labels = bitstrings(n)
    mismatches = []
    for bi, b_bits in enumerate(labels):
        for ai, a_bits in enumerate(labels):
            got = system_amplitude(sys_, a_bits, b_bits, cfg.backend, **_count_kwargs(cfg))
            if got != expected[bi][ai]:
                mismatches.append(f"<{b_bits}|U|{a_bits}>: path-sum {got}, oracle {expected[bi][ai]}")
    total = len(labels) ** 2
    lines = mismatches + [f"{total - len(mismatches)}/{total} amplitudes match"]
    return "\n".join(lines) + "\n", EXIT_DOMAIN if mismatches else EXIT_OK


def _cmd_groebner(cfg, grid):
    bound = bind_system(extract_system(grid), cfg.a, cfg.b)
    polys = bound.f1 if cfg.phase else bound.f0
    gb = buchberger([*polys, *field_polynomials(bound.hadamards)], MonomialOrder.path(bound.hadamards))
    return gb.dump(), EXIT_OK


_COMMANDS = {
    "compile": _cmd_compile,
    "polys": _cmd_polys,
    "amplitude": _cmd_amplitude,
    "matrix": _cmd_matrix,
    "count": _cmd_count,
    "verify": _cmd_verify,
    "groebner": _cmd_groebner,
}


def run(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse already printed usage
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except _UsageError as exc:
        print(f"z2paths: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        grid = parse_circuit(_read(cfg.input))
        text, code = _COMMANDS[cfg.command](cfg, grid)
    except OSError as exc:
        print(f"z2paths: cannot read {cfg.input}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (Z2PathsError, ValueError) as exc:
        print(f"z2paths: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
