"""Circuit DSL, elementary-gate grid and lowering of H / Toffoli / CNOT.

A circuit is an ``n x m`` table of elementary gates: one row per wire, one
column per circuit step. Each cell maps a horizontal input to a horizontal
output; some cells also talk to their vertical neighbours within the same
column:

========  =====  ===========================================================
token     gate   behaviour
========  =====  ===========================================================
``I``     I      copy horizontal input
``X``     I+     copy horizontal input; pass vertical values through
``ID``    I∨     copy horizontal input; emit it downward
``IU``    I∧     copy horizontal input; emit it upward
``MD``    M∨     copy horizontal input; emit (arriving value * input) downward
``MU``    M∧     same, upward
``AD``    A∨     horizontal output = input + arriving downward value
``AU``    A∧     same, value arriving from below
``H``     H      output a fresh path variable
========  =====  ===========================================================

Two DSL forms are accepted::

    wires 3            grid 3 2
    H 1                H  ID
    TOF 1 2 3          I  MD
                       I  AD
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CircuitSyntaxError, CircuitValidationError

__all__ = [
    "ElementaryGate",
    "H",
    "Toffoli",
    "CNOT",
    "HighGate",
    "CircuitGrid",
    "PlacementError",
    "parse_circuit",
    "lower_gate",
    "lower_to_grid",
    "validate_grid",
    "render_grid",
    "raise_grid",
]


class ElementaryGate(enum.Enum):
    IDENTITY = "I"
    CROSS = "X"
    IDENTITY_UP = "IU"
    IDENTITY_DOWN = "ID"
    MUL_UP = "MU"
    MUL_DOWN = "MD"
    ADD_UP = "AU"
    ADD_DOWN = "AD"
    HADAMARD = "H"

    @property
    def token(self) -> str:
        return self.value


_DOWN_EMITTERS = {ElementaryGate.IDENTITY_DOWN, ElementaryGate.MUL_DOWN}
_DOWN_CONSUMERS = {ElementaryGate.MUL_DOWN, ElementaryGate.ADD_DOWN}
_UP_EMITTERS = {ElementaryGate.IDENTITY_UP, ElementaryGate.MUL_UP}
_UP_CONSUMERS = {ElementaryGate.MUL_UP, ElementaryGate.ADD_UP}


@dataclass(frozen=True)
class H:
    wire: int

    @property
    def wires(self):
        return (self.wire,)

    def __str__(self):
        return f"H {self.wire}"


@dataclass(frozen=True)
class Toffoli:
    control1: int
    control2: int
    target: int

    @property
    def wires(self):
        return (self.control1, self.control2, self.target)

    @property
    def controls(self):
        return (self.control1, self.control2)

    def __str__(self):
        return f"TOF {self.control1} {self.control2} {self.target}"


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int

    @property
    def wires(self):
        return (self.control, self.target)

    @property
    def controls(self):
        return (self.control,)

    def __str__(self):
        return f"CNOT {self.control} {self.target}"


HighGate = H | Toffoli | CNOT


@dataclass(frozen=True)
class CircuitGrid:
    """Rectangular table of elementary gates.

    ``cells[r][c]`` is the gate on wire ``r + 1`` in column ``c + 1``.
    ``source`` keeps the high-level gate list the grid was lowered from,
    when there was one.
    """

    wires: int
    cells: tuple[tuple[ElementaryGate, ...], ...]
    source: tuple[HighGate, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.wires < 1:
            raise ValueError("a circuit needs at least one wire")
        if len(self.cells) != self.wires:
            raise ValueError(f"expected {self.wires} rows, got {len(self.cells)}")
        widths = {len(row) for row in self.cells}
        if len(widths) > 1:
            raise ValueError("rows have different lengths")

    @classmethod
    def empty(cls, wires: int) -> CircuitGrid:
        return cls(wires, tuple(() for _ in range(wires)), source=())

    @classmethod
    def from_columns(cls, wires: int, columns: Sequence[Sequence[ElementaryGate]], source=None) -> CircuitGrid:
        rows = tuple(tuple(col[r] for col in columns) for r in range(wires))
        return cls(wires, rows, None if source is None else tuple(source))

    @property
    def columns(self) -> int:
        return len(self.cells[0])

    def column(self, c: int) -> tuple[ElementaryGate, ...]:
        return tuple(row[c] for row in self.cells)

    def iter_columns(self):
        for c in range(self.columns):
            yield self.column(c)

    def hadamard_count(self) -> int:
        return sum(g is ElementaryGate.HADAMARD for row in self.cells for g in row)


@dataclass(frozen=True)
class PlacementError:
    row: int
    column: int
    reason: str

    def __str__(self):
        return f"({self.row},{self.column}): {self.reason}"


def _check_gate(gate: HighGate, n: int) -> None:
    wires = gate.wires
    for w in wires:
        if not 1 <= w <= n:
            raise CircuitSyntaxError(f"wire {w} out of range 1..{n} in '{gate}'")
    if len(set(wires)) != len(wires):
        raise CircuitSyntaxError(f"duplicate wires in '{gate}'")


def lower_gate(gate: HighGate, n: int) -> tuple[ElementaryGate, ...]:
    """Lower one high-level gate to a single grid column."""
    _check_gate(gate, n)
    col = [ElementaryGate.IDENTITY] * n
    if isinstance(gate, H):
        col[gate.wire - 1] = ElementaryGate.HADAMARD
        return tuple(col)

    controls = sorted(gate.controls)
    t = gate.target
    if controls[0] < t < controls[-1]:
        raise CircuitSyntaxError(f"target between controls unsupported in '{gate}'")
    if t > controls[-1]:
        first, chain, last = ElementaryGate.IDENTITY_DOWN, ElementaryGate.MUL_DOWN, ElementaryGate.ADD_DOWN
        ordered = controls
    else:
        first, chain, last = ElementaryGate.IDENTITY_UP, ElementaryGate.MUL_UP, ElementaryGate.ADD_UP
        ordered = controls[::-1]
    lo, hi = min(controls[0], t), max(controls[-1], t)
    for r in range(lo + 1, hi):
        col[r - 1] = ElementaryGate.CROSS
    col[ordered[0] - 1] = first
    for c in ordered[1:]:
        col[c - 1] = chain
    col[t - 1] = last
    return tuple(col)


def lower_to_grid(gates: Sequence[HighGate], n: int) -> CircuitGrid:
    columns = [lower_gate(g, n) for g in gates]
    return CircuitGrid.from_columns(n, columns, source=gates)


def _scan_channel(column, c, emitters, consumers, direction):
    """Check one vertical channel of a column; ``column`` is already in scan order."""
    problems = []
    arriving = None  # row that emitted the value currently travelling
    for r, gate in column:
        if gate is ElementaryGate.CROSS:
            continue
        if gate in consumers:
            if arriving is None:
                verb = "multiplication" if gate in emitters else "addition"
                problems.append(PlacementError(r, c, f"dangling {verb}: no {direction} value arrives"))
        elif arriving is not None:
            problems.append(PlacementError(arriving, c, f"unconsumed {direction} emission"))
        arriving = r if gate in emitters else None
    if arriving is not None:
        problems.append(PlacementError(arriving, c, f"{direction} emission out of bounds"))
    return problems


def validate_grid(grid: CircuitGrid) -> list[PlacementError]:
    """Return every vertical-dataflow violation; an empty list means the grid is valid.

    Rows and columns in the reported errors are 1-indexed.
    """
    problems = []
    for c, col in enumerate(grid.iter_columns(), start=1):
        rows = list(enumerate(col, start=1))
        problems += _scan_channel(rows, c, _DOWN_EMITTERS, _DOWN_CONSUMERS, "downward")
        problems += _scan_channel(rows[::-1], c, _UP_EMITTERS, _UP_CONSUMERS, "upward")
    problems.sort(key=lambda p: (p.column, p.row))
    return problems


def render_grid(grid: CircuitGrid) -> str:
    """Render the grid-block DSL form (no trailing newline)."""
    lines = [f"grid {grid.wires} {grid.columns}"]
    width = max((len(g.token) for row in grid.cells for g in row), default=1)
    for row in grid.cells:
        lines.append(" ".join(g.token.ljust(width) for g in row).rstrip())
    return "\n".join(lines)


_TOKENS = {g.token: g for g in ElementaryGate}


def _ints(parts, lineno, count, what):
    if len(parts) != count:
        raise CircuitSyntaxError(f"'{what}' expects {count} integer argument(s)", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise CircuitSyntaxError(f"non-integer argument in '{what}'", lineno) from None


def parse_circuit(text: str) -> CircuitGrid:
    """Parse either DSL form into a validated grid."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        lines.append((lineno, content))
    body = [(n, s) for n, s in lines if s]
    if not body:
        raise CircuitSyntaxError("empty circuit description: expected 'wires <n>' or 'grid <n> <m>'")

    lineno, header = body[0]
    parts = header.split()
    keyword = parts[0].lower()
    if keyword == "wires":
        (n,) = _ints(parts[1:], lineno, 1, "wires")
        if n < 1:
            raise CircuitSyntaxError("wire count must be at least 1", lineno)
        grid = _parse_gate_list(body[1:], n)
    elif keyword == "grid":
        n, m = _ints(parts[1:], lineno, 2, "grid")
        if n < 1 or m < 0:
            raise CircuitSyntaxError("grid needs n >= 1 wires and m >= 0 columns", lineno)
        grid = _parse_grid_block(body[1:], n, m, lineno)
    else:
        raise CircuitSyntaxError(f"expected 'wires' or 'grid', got {parts[0]!r}", lineno)

    problems = validate_grid(grid)
    if problems:
        raise CircuitValidationError(problems)
    return grid


def _parse_gate_list(body, n):
    gates = []
    columns = []
    for lineno, line in body:
        parts = line.split()
        op = parts[0].upper()
        if op == "H":
            gate = H(*_ints(parts[1:], lineno, 1, "H"))
        elif op in ("TOF", "TOFFOLI", "CCX"):
            gate = Toffoli(*_ints(parts[1:], lineno, 3, "TOF"))
        elif op in ("CNOT", "CX"):
            gate = CNOT(*_ints(parts[1:], lineno, 2, "CNOT"))
        else:
            raise CircuitSyntaxError(f"unknown gate {parts[0]!r}", lineno)
        try:
            columns.append(lower_gate(gate, n))
        except CircuitSyntaxError as exc:
            raise CircuitSyntaxError(str(exc), lineno) from None
        gates.append(gate)
    return CircuitGrid.from_columns(n, columns, source=gates)


def _parse_grid_block(body, n, m, header_line):
    if m == 0:
        if body:
            raise CircuitSyntaxError("grid with 0 columns must have no rows", body[0][0])
        return CircuitGrid.empty(n)
    if len(body) != n:
        where = body[n][0] if len(body) > n else header_line
        raise CircuitSyntaxError(f"grid dimension mismatch: expected {n} rows, got {len(body)}", where)
    rows = []
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) != m:
            raise CircuitSyntaxError(f"grid dimension mismatch: expected {m} cells, got {len(tokens)}", lineno)
        try:
            rows.append(tuple(_TOKENS[t.upper()] for t in tokens))
        except KeyError as exc:
            raise CircuitSyntaxError(f"unknown grid token {exc.args[0]!r}", lineno) from None
    return CircuitGrid(n, tuple(rows))


def raise_grid(grid: CircuitGrid) -> list[HighGate] | None:
    """Recover a high-level gate list from a grid, one gate per column.

    Returns ``grid.source`` when present. Otherwise each column must be
    exactly the lowering of one H, Toffoli or CNOT; ``None`` if any column
    is not.
    """
    if grid.source is not None:
        return list(grid.source)
    n = grid.wires
    gates = []
    for col in grid.iter_columns():
        gate = _raise_column(col, n)
        if gate is None:
            return None
        gates.append(gate)
    return gates


def _raise_column(col, n):
    rows = {g: [r + 1 for r, cell in enumerate(col) if cell is g] for g in ElementaryGate}
    E = ElementaryGate
    candidate = None
    if rows[E.HADAMARD] and len(rows[E.HADAMARD]) == 1:
        candidate = H(rows[E.HADAMARD][0])
    elif len(rows[E.ADD_DOWN]) == 1 and len(rows[E.IDENTITY_DOWN]) == 1:
        controls = rows[E.IDENTITY_DOWN] + rows[E.MUL_DOWN]
        candidate = _controlled(controls, rows[E.ADD_DOWN][0])
    elif len(rows[E.ADD_UP]) == 1 and len(rows[E.IDENTITY_UP]) == 1:
        controls = rows[E.IDENTITY_UP] + rows[E.MUL_UP]
        candidate = _controlled(controls, rows[E.ADD_UP][0])
    if candidate is None:
        return None
    try:
        lowered = lower_gate(candidate, n)
    except CircuitSyntaxError:
        return None
    return candidate if lowered == tuple(col) else None


def _controlled(controls, target):
    controls = sorted(controls)
    if len(controls) == 1:
        return CNOT(controls[0], target)
    if len(controls) == 2:
        return Toffoli(controls[0], controls[1], target)
    return None
