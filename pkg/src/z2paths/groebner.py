"""Buchberger's algorithm over GF(2) with pure lexicographic order.

Internally a monomial is its exponent vector in ranking order, so lex
comparison is plain tuple comparison, and a polynomial is a frozenset of
such vectors. Public functions take and return
:class:`~z2paths.gf2poly.Polynomial`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ResourceCapError, UnrankedVariableError, Z2PathsError
from .gf2poly import Monomial, Polynomial, Variable, default_ranking, format_polynomial, x

__all__ = [
    "MonomialOrder",
    "GroebnerBudget",
    "GroebnerBasis",
    "leading_monomial",
    "normal_form",
    "s_polynomial",
    "buchberger",
    "field_polynomials",
    "count_points",
    "count_standard_monomials",
]


@dataclass(frozen=True)
class MonomialOrder:
    """Pure lex order; ``ranking[0]`` is the most significant variable."""

    ranking: tuple[Variable, ...]
    _position: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))
        object.__setattr__(self, "_position", {v: i for i, v in enumerate(self.ranking)})
        if len(self._position) != len(self.ranking):
            raise ValueError("ranking lists a variable twice")

    @classmethod
    def default(cls, polys: Iterable[Polynomial]) -> MonomialOrder:
        variables = set()
        for p in polys:
            variables |= p.variables()
        return cls(tuple(default_ranking(variables)))

    @classmethod
    def path(cls, h: int) -> MonomialOrder:
        return cls(tuple(x(k) for k in range(1, h + 1)))

    def vector(self, m: Monomial) -> tuple[int, ...]:
        vec = [0] * len(self.ranking)
        for v, e in m.items():
            try:
                vec[self._position[v]] = e
            except KeyError:
                raise UnrankedVariableError(f"variable {v} is not in the ranking") from None
        return tuple(vec)

    def monomial(self, vec: Sequence[int]) -> Monomial:
        return Monomial((v, e) for v, e in zip(self.ranking, vec) if e)

    def internal(self, p: Polynomial) -> frozenset:
        return frozenset(self.vector(m) for m in p.monomials)

    def external(self, f: Iterable[tuple[int, ...]]) -> Polynomial:
        return Polynomial(self.monomial(vec) for vec in f)

    def __str__(self):
        return " > ".join(v.name for v in self.ranking)


@dataclass(frozen=True)
class GroebnerBudget:
    max_basis: int = 10_000
    max_pairs: int = 10_000


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple[Polynomial, ...]
    order: MonomialOrder

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def leading_monomials(self) -> list[Monomial]:
        return [leading_monomial(g, self.order) for g in self.polys]

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_one()

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.polys, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def dump(self) -> str:
        lines = [f"# order: {self.order}"]
        lines += [format_polynomial(g, "*", self.order.ranking) for g in self.polys]
        return "\n".join(lines) + "\n"


# exponent-vector helpers ---------------------------------------------------

def _divides(u, v):
    return all(a <= b for a, b in zip(u, v))


def _mul(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _quo(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _lcm(u, v):
    return tuple(max(a, b) for a, b in zip(u, v))


def _coprime(u, v):
    return not any(a and b for a, b in zip(u, v))


def _shift(f, q):
    # multiplying by a monomial is injective, so no terms cancel here
    return {_mul(t, q) for t in f}


def _nf(f, basis):
    """Full reduction of ``f`` by ``basis``, a list of (leading vector, poly) pairs."""
    p = set(f)
    rem = set()
    while p:
        m = max(p)
        for lm, g in basis:
            if _divides(lm, m):
                p ^= _shift(g, _quo(m, lm))
                break
        else:
            p.discard(m)
            rem.add(m)
    return frozenset(rem)


def _spoly(f, g):
    lf, lg = max(f), max(g)
    l = _lcm(lf, lg)
    return frozenset(_shift(f, _quo(l, lf)) ^ _shift(g, _quo(l, lg)))


# public API ----------------------------------------------------------------

def leading_monomial(p: Polynomial, order: MonomialOrder) -> Monomial:
    if p.is_zero():
        raise Z2PathsError("the zero polynomial has no leading monomial")
    return order.monomial(max(order.internal(p)))


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    basis = []
    for g in G:
        if g.is_zero():
            raise Z2PathsError("cannot divide by the zero polynomial")
        gi = order.internal(g)
        basis.append((max(gi), gi))
    return order.external(_nf(order.internal(f), basis))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise Z2PathsError("S-polynomial of a zero polynomial is undefined")
    return order.external(_spoly(order.internal(f), order.internal(g)))


def _select(pairs, lms):
    # normal strategy: smallest lcm degree, ties by lex-smallest lcm, then indices
    def key(pair):
        i, j = pair
        l = _lcm(lms[i], lms[j])
        return (sum(l), l, i, j)

    best = min(pairs, key=key)
    pairs.remove(best)
    return best


def _buchberger(polys, nvars, budget):
    one = (0,) * nvars
    G = []
    seen = set()
    for f in polys:
        if f and f not in seen:
            seen.add(f)
            G.append(f)
    if any(f == frozenset({one}) for f in G):
        return [frozenset({one})]
    lms = [max(g) for g in G]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    processed = 0
    while pairs:
        i, j = _select(pairs, lms)
        if _coprime(lms[i], lms[j]):
            continue
        processed += 1
        if processed > budget.max_pairs:
            raise ResourceCapError(f"Groebner pair budget of {budget.max_pairs} exceeded")
        r = _nf(_spoly(G[i], G[j]), list(zip(lms, G)))
        if not r:
            continue
        if r == frozenset({one}):
            return [r]
        G.append(r)
        lms.append(max(r))
        if len(G) > budget.max_basis:
            raise ResourceCapError(f"Groebner basis size budget of {budget.max_basis} exceeded")
        k = len(G) - 1
        pairs |= {(i, k) for i in range(k)}
    return _reduce_basis(G)


def _reduce_basis(G):
    G = sorted(G, key=max)
    minimal = []
    for g in G:
        lm = max(g)
        if not any(_divides(max(h), lm) for h in minimal):
            minimal = [h for h in minimal if not _divides(lm, max(h))]
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = [(max(h), h) for idx, h in enumerate(minimal) if idx != k]
        lm = max(g)
        reduced.append(frozenset({lm}) | _nf(g - {lm}, others))
    reduced.sort(key=max, reverse=True)
    return reduced


def _sort_key_desc(f):
    return sorted(f, reverse=True)


def buchberger(F: Sequence[Polynomial], order: MonomialOrder | None = None,
               budget: GroebnerBudget | None = None) -> GroebnerBasis:
    """Reduced lex Groebner basis of the ideal generated by ``F``.

    Zero inputs are dropped; the zero ideal gives an empty basis.
    """
    order = order or MonomialOrder.default(F)
    budget = budget or GroebnerBudget()
    internal = sorted((order.internal(f) for f in F), key=_sort_key_desc, reverse=True)
    basis = _buchberger(internal, len(order.ranking), budget)
    return GroebnerBasis(tuple(order.external(g) for g in basis), order)


def field_polynomials(h: int) -> list[Polynomial]:
    """``x_k^2 + x_k`` for k = 1..h."""
    return [Polynomial([Monomial({x(k): 2}), Monomial.of(x(k))]) for k in range(1, h + 1)]


def count_standard_monomials(leading: Iterable[Monomial], order: MonomialOrder) -> int:
    """Multilinear monomials in the order's variables divisible by no leading monomial.

    Only meaningful when every squared variable lies in the ideal, which
    forces every standard monomial to be multilinear.
    """
    nvars = len(order.ranking)
    masks = set()
    for m in leading:
        vec = order.vector(m)
        if any(e > 1 for e in vec):
            continue  # cannot divide a multilinear monomial
        masks.add(sum(1 << i for i, e in enumerate(vec) if e))
    cache = {}

    def avoiding(ms, i):
        if 0 in ms:
            return 0
        if not ms:
            return 1 << (nvars - i)
        if (ms, i) not in cache:
            bit = 1 << i
            absent = frozenset(m for m in ms if not m & bit)
            present = frozenset(m & ~bit for m in ms)
            cache[ms, i] = avoiding(absent, i + 1) + avoiding(present, i + 1)
        return cache[ms, i]

    return avoiding(frozenset(masks), 0)


def count_points(F: Sequence[Polynomial], h: int, budget: GroebnerBudget | None = None) -> int:
    """Number of points of Z2^h where every polynomial in ``F`` vanishes."""
    order = MonomialOrder.path(h)
    gb = buchberger([*F, *field_polynomials(h)], order, budget)
    if gb.is_unit():
        return 0
    return count_standard_monomials(gb.leading_monomials(), order)
