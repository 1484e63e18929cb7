"""Symbolic execution of a grid into the sum-over-paths polynomial system.

Every wire starts as its input bit ``a_j``. Columns are executed left to
right; a Hadamard cell replaces its wire by a fresh path variable ``x_k``
and contributes ``input * x_k`` to the phase. After the last column the
output constraint for wire ``j`` is ``f_j = (wire polynomial) + b_j``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .circuit import CircuitGrid, ElementaryGate, validate_grid
from .errors import BitstringError, CircuitValidationError, PolynomialSyntaxError
from .gf2poly import (
    Polynomial,
    Variable,
    a,
    b,
    boolean_reduce,
    format_polynomial,
    parse_polynomial,
    poly_add,
    poly_mul,
    substitute,
    x,
)

__all__ = [
    "PolynomialSystem",
    "BoundSystem",
    "extract_system",
    "bind_system",
    "export_system",
    "parse_system",
    "parse_bits",
    "EXPORT_FORMATS",
]

E = ElementaryGate


@dataclass(frozen=True)
class PolynomialSystem:
    wires: int
    hadamards: int
    output_polys: tuple[Polynomial, ...]
    phase: Polynomial

    def path_variables(self) -> list[Variable]:
        return [x(k) for k in range(1, self.hadamards + 1)]

    def ranking(self) -> list[Variable]:
        n = self.wires
        return self.path_variables() + [a(i) for i in range(1, n + 1)] + [b(j) for j in range(1, n + 1)]


@dataclass(frozen=True)
class BoundSystem:
    """F0/F1 pair after fixing input and output bits; only path variables remain."""

    constraints: tuple[Polynomial, ...]
    phase_bound: Polynomial
    hadamards: int

    @property
    def f0(self) -> list[Polynomial]:
        return [*self.constraints, self.phase_bound]

    @property
    def f1(self) -> list[Polynomial]:
        return [*self.constraints, poly_add(self.phase_bound, Polynomial.one())]


def _run_column(column, wires, counter, phase):
    """Execute one column; returns (new wire polynomials, next path index, new phase)."""
    n = len(column)
    out = list(wires)

    carried = None
    for r in range(n):
        gate = column[r]
        if gate is E.IDENTITY_DOWN:
            carried = wires[r]
        elif gate is E.MUL_DOWN:
            carried = poly_mul(carried, wires[r])
        elif gate is E.ADD_DOWN:
            out[r] = poly_add(wires[r], carried)
            carried = None
        elif gate is not E.CROSS:
            carried = None

    carried = None
    for r in reversed(range(n)):
        gate = column[r]
        if gate is E.IDENTITY_UP:
            carried = wires[r]
        elif gate is E.MUL_UP:
            carried = poly_mul(carried, wires[r])
        elif gate is E.ADD_UP:
            out[r] = poly_add(wires[r], carried)
            carried = None
        elif gate is not E.CROSS:
            carried = None

    for r in range(n):
        if column[r] is E.HADAMARD:
            fresh = Polynomial.var(x(counter))
            counter += 1
            phase = boolean_reduce(poly_add(phase, poly_mul(wires[r], fresh)))
            out[r] = fresh
    return [boolean_reduce(p) for p in out], counter, phase


def extract_system(grid: CircuitGrid) -> PolynomialSystem:
    problems = validate_grid(grid)
    if problems:
        raise CircuitValidationError(problems)
    wires = [Polynomial.var(a(j)) for j in range(1, grid.wires + 1)]
    phase = Polynomial.zero()
    counter = 1
    for column in grid.iter_columns():
        wires, counter, phase = _run_column(column, wires, counter, phase)
    outputs = tuple(poly_add(p, Polynomial.var(b(j))) for j, p in enumerate(wires, start=1))
    return PolynomialSystem(grid.wires, counter - 1, outputs, phase)


def parse_bits(bits: str | Sequence[int], n: int, name: str = "bitstring") -> tuple[int, ...]:
    """Turn ``"001"`` (character i = wire i) into a tuple of ints, checking the length."""
    if isinstance(bits, str):
        if any(ch not in "01" for ch in bits):
            raise BitstringError(f"{name} {bits!r} must contain only 0 and 1")
        values = tuple(int(ch) for ch in bits)
    else:
        values = tuple(int(v) for v in bits)
        if any(v not in (0, 1) for v in values):
            raise BitstringError(f"{name} must contain only 0 and 1")
    if len(values) != n:
        raise BitstringError(f"{name} has length {len(values)}, circuit has {n} wires")
    return values


def bind_system(sys: PolynomialSystem, a_bits, b_bits) -> BoundSystem:
    n = sys.wires
    av = parse_bits(a_bits, n, "input bitstring")
    bv = parse_bits(b_bits, n, "output bitstring")
    binding = [(a(i), av[i - 1]) for i in range(1, n + 1)] + [(b(j), bv[j - 1]) for j in range(1, n + 1)]

    def bind(p):
        for var, bit in binding:
            if var in p.variables():
                p = substitute(p, var, Polynomial.constant(bit))
        return p

    return BoundSystem(tuple(bind(f) for f in sys.output_polys), bind(sys.phase), sys.hadamards)


EXPORT_FORMATS = ("plain", "maple", "mathematica", "structured")


def export_system(sys: PolynomialSystem, format: str = "plain") -> str:
    ranking = sys.ranking()
    if format == "plain":
        lines = [f"f{j} = {format_polynomial(p, '*', ranking)}" for j, p in enumerate(sys.output_polys, start=1)]
        lines.append(f"phi = {format_polynomial(sys.phase, '*', ranking)}")
        return "\n".join(lines) + "\n"
    if format == "maple":
        items = [format_polynomial(p, "*", ranking) for p in (*sys.output_polys, sys.phase)]
        return f"F := [{', '.join(items)}]:\n"
    if format == "mathematica":
        items = [format_polynomial(p, " ", ranking) for p in (*sys.output_polys, sys.phase)]
        return "{" + ", ".join(items) + "}\n"
    if format == "structured":
        doc = {
            "format": "z2paths-system",
            "version": 1,
            "wires": sys.wires,
            "hadamards": sys.hadamards,
            "outputs": {str(j): format_polynomial(p, "*", ranking) for j, p in enumerate(sys.output_polys, start=1)},
            "phase": format_polynomial(sys.phase, "*", ranking),
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown export format {format!r}; choose one of {', '.join(EXPORT_FORMATS)}")


def parse_system(text: str, hadamards: int | None = None) -> PolynomialSystem:
    """Read back the plain or structured export.

    The plain format does not record the Hadamard count; unless
    ``hadamards`` is given it is taken as the largest path-variable index.
    """
    stripped = text.strip()
    if stripped.startswith("{") and '"format"' in stripped:
        doc = json.loads(stripped)
        n = int(doc["wires"])
        outputs = tuple(parse_polynomial(doc["outputs"][str(j)]) for j in range(1, n + 1))
        return PolynomialSystem(n, int(doc["hadamards"]), outputs, parse_polynomial(doc["phase"]))

    outputs: dict[int, Polynomial] = {}
    phase = None
    for line in stripped.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        lhs, sep, rhs = line.partition("=")
        if not sep:
            raise PolynomialSyntaxError(f"expected '<name> = <poly>', got {line!r}")
        lhs = lhs.strip()
        if lhs == "phi":
            phase = parse_polynomial(rhs)
        elif lhs.startswith("f") and lhs[1:].isdigit():
            outputs[int(lhs[1:])] = parse_polynomial(rhs)
        else:
            raise PolynomialSyntaxError(f"unknown left-hand side {lhs!r}")
    n = len(outputs)
    if phase is None or sorted(outputs) != list(range(1, n + 1)):
        raise PolynomialSyntaxError("system needs f1..fn and phi")
    polys = [outputs[j] for j in range(1, n + 1)] + [phase]
    path = [v.index for p in polys for v in p.variables() if v.kind.value == "x"]
    h = max(path, default=0) if hadamards is None else hadamards
    return PolynomialSystem(n, h, tuple(polys[:-1]), phase)
