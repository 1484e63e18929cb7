"""Exact statevector oracle for H / Toffoli / CNOT circuits.

Amplitudes are kept as Python integers with one global scale: the state is
``sum(entries[i] * 2**(-scale_h/2) |i>)``. Basis index ``i`` is big-endian
in wire order, so wire 1 is the most significant bit.

This module works from the high-level gate list and never looks at the
elementary-gate grid, so it stays independent of the lowering it checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuit import CNOT, H, HighGate, Toffoli
from .counting import Amplitude
from .errors import ResourceCapError, Z2PathsError
from .pathsum import parse_bits

__all__ = ["ExactState", "DEFAULT_SIM_WIRE_CAP", "basis_state", "apply_high_gate", "run", "oracle_amplitude",
           "oracle_matrix"]

DEFAULT_SIM_WIRE_CAP = 12


@dataclass(frozen=True)
class ExactState:
    wires: int
    entries: tuple[int, ...]
    scale_h: int = 0

    def norm_squared(self) -> int:
        return sum(e * e for e in self.entries)

    def amplitude(self, index: int) -> Amplitude:
        return Amplitude(self.entries[index], self.scale_h)


def _index(bits: Sequence[int]) -> int:
    i = 0
    for bit in bits:
        i = (i << 1) | bit
    return i


def basis_state(n: int, a_bits, wire_cap: int = DEFAULT_SIM_WIRE_CAP) -> ExactState:
    if n > wire_cap:
        raise ResourceCapError(f"{n} wires exceeds the simulator cap of {wire_cap}")
    bits = parse_bits(a_bits, n, "input bitstring")
    entries = [0] * (1 << n)
    entries[_index(bits)] = 1
    return ExactState(n, tuple(entries), 0)


def _bit(n, wire):
    return 1 << (n - wire)


def apply_high_gate(state: ExactState, gate: HighGate) -> ExactState:
    n = state.wires
    for w in gate.wires:
        if not 1 <= w <= n:
            raise Z2PathsError(f"wire {w} out of range 1..{n} in '{gate}'")
    old = state.entries
    if isinstance(gate, H):
        mask = _bit(n, gate.wire)
        new = list(old)
        for i0 in range(len(old)):
            if i0 & mask:
                continue
            i1 = i0 | mask
            new[i0] = old[i0] + old[i1]
            new[i1] = old[i0] - old[i1]
        return ExactState(n, tuple(new), state.scale_h + 1)
    if isinstance(gate, (Toffoli, CNOT)):
        ctrl = 0
        for c in gate.controls:
            ctrl |= _bit(n, c)
        flip = _bit(n, gate.target)
        new = list(old)
        for i in range(len(old)):
            if i & ctrl == ctrl:
                new[i ^ flip] = old[i]
        return ExactState(n, tuple(new), state.scale_h)
    raise TypeError(f"unsupported gate {gate!r}")


def run(gates: Sequence[HighGate], n: int, a_bits, wire_cap: int = DEFAULT_SIM_WIRE_CAP) -> ExactState:
    state = basis_state(n, a_bits, wire_cap)
    for g in gates:
        state = apply_high_gate(state, g)
    return state


def oracle_amplitude(gates: Sequence[HighGate], n: int, a_bits, b_bits,
                     wire_cap: int = DEFAULT_SIM_WIRE_CAP) -> Amplitude:
    """``<b|U|a>`` by direct state evolution."""
    state = run(gates, n, a_bits, wire_cap)
    return state.amplitude(_index(parse_bits(b_bits, n, "output bitstring")))


def oracle_matrix(gates: Sequence[HighGate], n: int, wire_cap: int = DEFAULT_SIM_WIRE_CAP) -> list[list[Amplitude]]:
    """Entry ``[b][a]``; one state evolution per input column."""
    size = 1 << n
    cols = []
    for ai in range(size):
        bits = [(ai >> (n - 1 - k)) & 1 for k in range(n)]
        cols.append(run(gates, n, bits, wire_cap))
    return [[cols[ai].amplitude(bi) for ai in range(size)] for bi in range(size)]
