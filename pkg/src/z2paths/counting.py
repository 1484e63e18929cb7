"""Root counting and exact amplitudes.

An amplitude of a Hadamard/Toffoli circuit is always ``m / sqrt(2^h)`` with
integer ``m``; :class:`Amplitude` keeps that pair exactly.
"""
from __future__ import annotations

import math
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import _accel
from .circuit import CircuitGrid
from .errors import ResourceCapError, Z2PathsError
from .gf2poly import Polynomial, VarKind, boolean_reduce
from .pathsum import BoundSystem, PolynomialSystem, bind_system, extract_system

__all__ = [
    "SolutionCounts",
    "Amplitude",
    "DEFAULT_H_CAP",
    "DEFAULT_WIRE_CAP",
    "BACKENDS",
    "encode",
    "brute_force_count",
    "count_paths",
    "amplitude",
    "system_amplitude",
    "full_matrix",
    "amplitude_value",
    "format_amplitude",
    "bitstrings",
]

DEFAULT_H_CAP = 24
DEFAULT_WIRE_CAP = 6
BACKENDS = ("brute", "groebner")


@dataclass(frozen=True)
class SolutionCounts:
    n0: int
    n1: int

    @property
    def total(self) -> int:
        return self.n0 + self.n1

    @property
    def difference(self) -> int:
        return self.n0 - self.n1


@dataclass(frozen=True)
class Amplitude:
    """Exact value ``m * 2**(-h/2)``, always stored in normalized form."""

    m: int
    h: int = 0

    def __post_init__(self):
        if self.h < 0:
            raise ValueError("scale exponent must be nonnegative")
        m, h = self.m, self.h
        if m == 0:
            h = 0
        while m % 2 == 0 and h >= 2 and m:
            m //= 2
            h -= 2
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "h", h)

    @property
    def value(self) -> float:
        return amplitude_value(self)

    def __str__(self):
        return format_amplitude(self)


def amplitude_value(amp: Amplitude) -> float:
    if amp.h % 2 == 0:
        return math.ldexp(amp.m, -(amp.h // 2))
    return math.ldexp(amp.m, -(amp.h // 2)) / math.sqrt(2)


def format_amplitude(amp: Amplitude, raw: tuple[int, int] | None = None) -> str:
    """``m/sqrt(2^h) = decimal``; ``raw`` prepends the unnormalized pair (verbose mode)."""
    text = f"{amp.m}/sqrt(2^{amp.h}) = {amplitude_value(amp)!r}"
    if raw is not None and raw != (amp.m, amp.h):
        text = f"{raw[0]}/sqrt(2^{raw[1]}) = {text}"
    return text


def _path_masks(p: Polynomial, h: int) -> list[int]:
    masks = []
    for mono in boolean_reduce(p).monomials:
        mask = 0
        for v, _ in mono.items():
            if v.kind is not VarKind.PATH or v.index > h:
                raise Z2PathsError(f"variable {v} is not a path variable among x1..x{h}")
            mask |= 1 << (v.index - 1)
        masks.append(mask)
    return masks


def encode(polys: Sequence[Polynomial], h: int):
    """CSR bitmask encoding consumed by the kernels: ``(masks, offsets)``."""
    masks = array("Q")
    offsets = array("q", [0])
    for p in polys:
        masks.extend(_path_masks(p, h))
        offsets.append(len(masks))
    return masks, offsets


def _check_h_cap(h: int, h_cap: int) -> None:
    if h > h_cap:
        raise ResourceCapError(
            f"h = {h} path variables exceeds the enumeration cap of {h_cap}; "
            "raise the cap or use the groebner backend"
        )


def _split_count(constraints, phase, h, workers=1, kernel=None):
    k = _accel.get(kernel)
    masks, offsets = encode(constraints, h)
    phase_masks, _ = encode([phase], h)
    total = 1 << h
    if workers <= 1 or total < 1 << 12:
        return k.count_split(masks, offsets, phase_masks, 0, total)
    bounds = [total * i // workers for i in range(workers + 1)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            lambda lo_hi: k.count_split(masks, offsets, phase_masks, *lo_hi),
            zip(bounds[:-1], bounds[1:]),
        )
        parts = list(parts)
    return sum(p[0] for p in parts), sum(p[1] for p in parts)


def brute_force_count(polys: Sequence[Polynomial], h: int, h_cap: int = DEFAULT_H_CAP,
                      workers: int = 1, kernel: str | None = None) -> int:
    """Number of points of Z2^h where every polynomial vanishes, by enumeration."""
    _check_h_cap(h, h_cap)
    n0, _ = _split_count(polys, Polynomial.zero(), h, workers, kernel)
    return n0


def count_paths(bound: BoundSystem, backend: str = "brute", h_cap: int = DEFAULT_H_CAP,
                workers: int = 1, kernel: str | None = None, budget=None) -> SolutionCounts:
    h = bound.hadamards
    if backend == "brute":
        _check_h_cap(h, h_cap)
        n0, n1 = _split_count(bound.constraints, bound.phase_bound, h, workers, kernel)
        return SolutionCounts(n0, n1)
    if backend == "groebner":
        from .groebner import count_points

        kwargs = {} if budget is None else {"budget": budget}
        return SolutionCounts(count_points(bound.f0, h, **kwargs), count_points(bound.f1, h, **kwargs))
    raise ValueError(f"unknown backend {backend!r}; choose one of {', '.join(BACKENDS)}")


def system_amplitude(sys: PolynomialSystem, a_bits, b_bits, backend: str = "brute", **kwargs) -> Amplitude:
    counts = count_paths(bind_system(sys, a_bits, b_bits), backend, **kwargs)
    return Amplitude(counts.difference, sys.hadamards)


def amplitude(grid: CircuitGrid, a_bits, b_bits, backend: str = "brute", **kwargs) -> Amplitude:
    """``<b|U|a>`` of the circuit, exactly."""
    return system_amplitude(extract_system(grid), a_bits, b_bits, backend, **kwargs)


def bitstrings(n: int) -> list[str]:
    """All n-bit strings in big-endian index order (wire 1 is the most significant bit)."""
    return ["".join(bits) for bits in product("01", repeat=n)]


def full_matrix(grid: CircuitGrid, backend: str = "brute", wire_cap: int = DEFAULT_WIRE_CAP,
                **kwargs) -> list[list[Amplitude]]:
    """Matrix with entry ``[b][a] = <b|U|a>``, rows and columns in big-endian order."""
    n = grid.wires
    if n > wire_cap:
        raise ResourceCapError(f"{n} wires exceeds the matrix cap of {wire_cap}; raise the cap to proceed")
    sys = extract_system(grid)
    labels = bitstrings(n)
    return [[system_amplitude(sys, a_bits, b_bits, backend, **kwargs) for a_bits in labels] for b_bits in labels]
