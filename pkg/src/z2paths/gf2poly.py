"""Sparse multivariate polynomials over the two-element field.

A polynomial is a set of monomials: with coefficients in Z2 a monomial is
either present (coefficient 1) or absent, and adding a monomial twice
cancels it. Monomials carry general exponents so that field polynomials
``x^2 + x`` can live in the free ring; :func:`boolean_reduce` maps back to
the multilinear representatives that agree on every 0/1 point.

Variables come in three kinds: input bits ``a_i``, output bits ``b_j`` and
path variables ``x_k``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Mapping, Sequence

from .errors import MissingAssignmentError, PolynomialSyntaxError, UnrankedVariableError

__all__ = [
    "VarKind",
    "Variable",
    "Monomial",
    "Polynomial",
    "a",
    "b",
    "x",
    "poly_add",
    "poly_mul",
    "boolean_reduce",
    "substitute",
    "evaluate",
    "lex_compare",
    "default_ranking",
    "parse_polynomial",
    "format_polynomial",
]


class VarKind(enum.Enum):
    INPUT = "a"
    OUTPUT = "b"
    PATH = "x"


# Position of each kind in the default lex ranking: x's first, then a's, then b's.
_KIND_RANK = {VarKind.PATH: 0, VarKind.INPUT: 1, VarKind.OUTPUT: 2}


@total_ordering
@dataclass(frozen=True)
class Variable:
    kind: VarKind
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"variable index must be a positive integer, got {self.index!r}")

    @property
    def name(self) -> str:
        return f"{self.kind.value}{self.index}"

    def rank_key(self):
        """Sort key realising x1 > x2 > ... > a1 > ... > b1 > ... (smaller key = more significant)."""
        return (_KIND_RANK[self.kind], self.index)

    def __lt__(self, other):
        if not isinstance(other, Variable):
            return NotImplemented
        return (self.kind.value, self.index) < (other.kind.value, other.index)

    def __str__(self):
        return self.name

    def __repr__(self):
        return self.name


def a(i: int) -> Variable:
    return Variable(VarKind.INPUT, i)


def b(j: int) -> Variable:
    return Variable(VarKind.OUTPUT, j)


def x(k: int) -> Variable:
    return Variable(VarKind.PATH, k)


class Monomial:
    """Product of variables with positive exponents; the empty product is 1."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[Variable, int] | Iterable[tuple[Variable, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        merged: dict[Variable, int] = {}
        for var, e in items:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                merged[var] = merged.get(var, 0) + e
        self._items = tuple(sorted(merged.items()))
        self._hash = hash(self._items)

    @classmethod
    def one(cls) -> Monomial:
        return cls()

    @classmethod
    def of(cls, *variables: Variable) -> Monomial:
        return cls((v, 1) for v in variables)

    @property
    def exponents(self) -> dict[Variable, int]:
        return dict(self._items)

    @property
    def variables(self) -> tuple[Variable, ...]:
        return tuple(v for v, _ in self._items)

    def items(self):
        return self._items

    def degree(self) -> int:
        return sum(e for _, e in self._items)

    def is_one(self) -> bool:
        return not self._items

    def is_multilinear(self) -> bool:
        return all(e == 1 for _, e in self._items)

    def exponent(self, var: Variable) -> int:
        for v, e in self._items:
            if v == var:
                return e
        return 0

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self._items + other._items)

    def divides(self, other: Monomial) -> bool:
        theirs = dict(other._items)
        return all(theirs.get(v, 0) >= e for v, e in self._items)

    def __truediv__(self, other: Monomial) -> Monomial:
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        mine = dict(self._items)
        for v, e in other._items:
            mine[v] -= e
        return Monomial(mine)

    def lcm(self, other: Monomial) -> Monomial:
        merged = dict(self._items)
        for v, e in other._items:
            merged[v] = max(merged.get(v, 0), e)
        return Monomial(merged)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __str__(self):
        return _format_monomial(self, "*")

    def __repr__(self):
        return f"Monomial({self})"


class Polynomial:
    """Immutable element of Z2[variables], stored as a frozenset of monomials."""

    __slots__ = ("monomials",)

    def __init__(self, monomials: Iterable[Monomial] = ()):
        acc: set[Monomial] = set()
        for m in monomials:
            acc ^= {m}
        self.monomials = frozenset(acc)

    @classmethod
    def _from_set(cls, monomials: frozenset) -> Polynomial:
        p = cls.__new__(cls)
        p.monomials = monomials
        return p

    @classmethod
    def zero(cls) -> Polynomial:
        return cls._from_set(frozenset())

    @classmethod
    def one(cls) -> Polynomial:
        return cls._from_set(frozenset({Monomial()}))

    @classmethod
    def constant(cls, bit: int) -> Polynomial:
        return cls.one() if bit & 1 else cls.zero()

    @classmethod
    def var(cls, v: Variable) -> Polynomial:
        return cls._from_set(frozenset({Monomial.of(v)}))

    def is_zero(self) -> bool:
        return not self.monomials

    def is_one(self) -> bool:
        return self.monomials == {Monomial()}

    def is_multilinear(self) -> bool:
        return all(m.is_multilinear() for m in self.monomials)

    def variables(self) -> frozenset[Variable]:
        return frozenset(v for m in self.monomials for v in m.variables)

    def degree(self) -> int:
        return max((m.degree() for m in self.monomials), default=-1)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.monomials == other.monomials

    def __hash__(self):
        return hash(self.monomials)

    def __bool__(self):
        return bool(self.monomials)

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _coerce(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, Variable):
        return Polynomial.var(value)
    if isinstance(value, Monomial):
        return Polynomial([value])
    if isinstance(value, int):
        return Polynomial.constant(value)
    return NotImplemented


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return Polynomial._from_set(p.monomials ^ q.monomials)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    acc: set[Monomial] = set()
    for u in p.monomials:
        for v in q.monomials:
            acc ^= {u * v}
    return Polynomial._from_set(frozenset(acc))


def _clamp(m: Monomial) -> Monomial:
    if m.is_multilinear():
        return m
    return Monomial((v, 1) for v, _ in m.items())


def boolean_reduce(p: Polynomial) -> Polynomial:
    """Clamp every exponent to 1; equal clamped monomials cancel in pairs."""
    if p.is_multilinear():
        return p
    return Polynomial(_clamp(m) for m in p.monomials)


def substitute(p: Polynomial, v: Variable, r: Polynomial) -> Polynomial:
    r = _coerce(r)
    acc = Polynomial.zero()
    powers = {0: Polynomial.one()}
    for m in p.monomials:
        e = m.exponent(v)
        if e == 0:
            acc = poly_add(acc, Polynomial([m]))
            continue
        if e not in powers:
            powers[e] = boolean_reduce(_power(r, e))
        rest = Monomial((w, k) for w, k in m.items() if w != v)
        acc = poly_add(acc, poly_mul(Polynomial([rest]), powers[e]))
    return boolean_reduce(acc)


def _power(r: Polynomial, e: int) -> Polynomial:
    out = Polynomial.one()
    for _ in range(e):
        out = poly_mul(out, r)
    return out


def evaluate(p: Polynomial, assignment: Mapping[Variable, int]) -> int:
    total = 0
    for m in p.monomials:
        term = 1
        for v, _ in m.items():
            try:
                bit = assignment[v]
            except KeyError:
                raise MissingAssignmentError(f"no value assigned to variable {v}") from None
            if not bit & 1:
                term = 0
        total ^= term
    return total


def default_ranking(variables: Iterable[Variable]) -> list[Variable]:
    """Rank variables as x1 > ... > x_h > a1 > ... > a_n > b1 > ... > b_n."""
    return sorted(set(variables), key=Variable.rank_key)


def _exponent_vector(m: Monomial, position: Mapping[Variable, int], size: int) -> tuple[int, ...]:
    vec = [0] * size
    for v, e in m.items():
        try:
            vec[position[v]] = e
        except KeyError:
            raise UnrankedVariableError(f"variable {v} is not in the ranking") from None
    return tuple(vec)


def lex_compare(u: Monomial, v: Monomial, ranking: Sequence[Variable]) -> int:
    """Pure lexicographic comparison; returns -1, 0 or 1 for u <, ==, > v."""
    position = {var: i for i, var in enumerate(ranking)}
    eu = _exponent_vector(u, position, len(ranking))
    ev = _exponent_vector(v, position, len(ranking))
    return (eu > ev) - (eu < ev)


def sorted_monomials(p: Polynomial, ranking: Sequence[Variable] | None = None) -> list[Monomial]:
    """Monomials of ``p`` in descending lex order (default ranking if none given)."""
    if ranking is None:
        ranking = default_ranking(p.variables())
    position = {var: i for i, var in enumerate(ranking)}
    size = len(ranking)
    return sorted(p.monomials, key=lambda m: _exponent_vector(m, position, size), reverse=True)


def _format_monomial(m: Monomial, sep: str) -> str:
    if m.is_one():
        return "1"
    parts = []
    for v, e in m.items():
        parts.append(v.name if e == 1 else f"{v.name}^{e}")
    return sep.join(parts)


def format_polynomial(p: Polynomial, sep: str = "*", ranking: Sequence[Variable] | None = None) -> str:
    if p.is_zero():
        return "0"
    return " + ".join(_format_monomial(m, sep) for m in sorted_monomials(p, ranking))


_FACTOR = re.compile(r"^([abx])([1-9][0-9]*)(?:\^([0-9]+))?$")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the plain rendering: ``x2*x4 + x3 + b1``, ``x1^2 + x1``, ``1``, ``0``."""
    text = text.strip()
    if not text:
        raise PolynomialSyntaxError("empty polynomial")
    monomials = []
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise PolynomialSyntaxError(f"empty term in {text!r}")
        if term in ("0", "1"):
            if term == "1":
                monomials.append(Monomial())
            continue
        exps = []
        for factor in term.split("*"):
            factor = factor.strip()
            if factor == "1":
                continue
            match = _FACTOR.match(factor)
            if match is None:
                raise PolynomialSyntaxError(f"bad factor {factor!r} in {text!r}")
            kind, idx, power = match.groups()
            exps.append((Variable(VarKind(kind), int(idx)), int(power) if power else 1))
        monomials.append(Monomial(exps))
    return Polynomial(monomials)
