"""Exact algebra of Y-monomials, t-Laurent coefficients and (q,t)-characters.

A monomial in the variables ``Y_{i,j}`` (node ``i``, spectral parameter ``j``)
is stored as a sorted tuple of ``((i, j), exponent)`` pairs with no zero
exponents, so equal monomials compare and hash equal.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


class NotADescendant(ValueError):
    """Raised when a monomial is not ``m_plus`` times a product of ``A^{-1}``."""


def _canonical(exps: Mapping[tuple[int, int], int]) -> tuple:
    return tuple(sorted((key, e) for key, e in exps.items() if e != 0))


@dataclass(frozen=True, slots=True)
class YMonomial:
    items: tuple = ()

    @classmethod
    def from_dict(cls, exps: Mapping[tuple[int, int], int]) -> "YMonomial":
        for (i, _j) in exps:
            if i < 1:
                raise ValueError(f"node index must be >= 1, got {i}")
        return cls(_canonical(exps))

    @classmethod
    def y(cls, i: int, j: int, e: int = 1) -> "YMonomial":
        return cls.from_dict({(i, j): e})

    @classmethod
    def one(cls) -> "YMonomial":
        return cls(())

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.items)

    def exponent(self, i: int, j: int) -> int:
        for key, e in self.items:
            if key == (i, j):
                return e
        return 0

    def __mul__(self, other: "YMonomial") -> "YMonomial":
        if not isinstance(other, YMonomial):
            return NotImplemented
        if not other.items:
            return self
        if not self.items:
            return other
        acc = dict(self.items)
        for key, e in other.items:
            acc[key] = acc.get(key, 0) + e
        return YMonomial(_canonical(acc))

    def __pow__(self, n: int) -> "YMonomial":
        return YMonomial(tuple((key, e * n) for key, e in self.items) if n else ())

    def inverse(self) -> "YMonomial":
        return self ** -1

    def __truediv__(self, other: "YMonomial") -> "YMonomial":
        return self * other.inverse()

    def __bool__(self) -> bool:
        # the empty monomial is the unit, still a valid monomial
        return True

    def is_one(self) -> bool:
        return not self.items

    def is_dominant(self) -> bool:
        return all(e > 0 for _, e in self.items)

    def spectral_range(self) -> tuple[int, int] | None:
        if not self.items:
            return None
        js = [j for (_, j), _ in self.items]
        return min(js), max(js)

    def max_node(self) -> int:
        return max((i for (i, _), _ in self.items), default=0)

    def to_json(self) -> list[list[int]]:
        return [[i, j, e] for (i, j), e in self.items]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> "YMonomial":
        return cls.from_dict({(int(i), int(j)): int(e) for i, j, e in data})

    def __str__(self) -> str:
        if not self.items:
            return "1"
        parts = []
        for (i, j), e in self.items:
            parts.append(f"Y[{i},{j}]" if e == 1 else f"Y[{i},{j}]^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"YMonomial({self})"


def monomial_mul(m1: YMonomial, m2: YMonomial) -> YMonomial:
    return m1 * m2


def a_monomial(i: int, j: int, r: int) -> YMonomial:
    """``A_{i,j} = Y_{i,j-1} Y_{i,j+1} Y_{i-1,j}^{-1} Y_{i+1,j}^{-1}``, with ``Y_{i',.} = 1`` off the diagram."""
    if not 1 <= i <= r:
        raise ValueError(f"node {i} outside 1..{r}")
    exps = {(i, j - 1): 1, (i, j + 1): 1}
    if i - 1 >= 1:
        exps[(i - 1, j)] = -1
    if i + 1 <= r:
        exps[(i + 1, j)] = -1
    return YMonomial.from_dict(exps)


def u_exponents(m: YMonomial) -> dict[tuple[int, int], int]:
    return m.as_dict()


def a_product(v: Mapping[tuple[int, int], int], r: int) -> YMonomial:
    """``prod A_{i,j}^{v_{i,j}}``."""
    acc: dict[tuple[int, int], int] = defaultdict(int)
    for (i, j), n in v.items():
        if n == 0:
            continue
        for key, e in a_monomial(i, j, r).items:
            acc[key] += n * e
    return YMonomial.from_dict(acc)


def descendant_v(m: YMonomial, m_plus: YMonomial, r: int) -> dict[tuple[int, int], int]:
    """Solve ``m = m_plus * prod A_{i,j}^{-v_{i,j}}`` for a finite ``v >= 0``.

    The exponent of ``Y_{i,j}`` in ``prod A^v`` is
    ``v_{i,j-1} + v_{i,j+1} - v_{i-1,j} - v_{i+1,j}``, so ``v`` is determined
    row by row in ascending ``j``, starting from zero below the joint support.
    """
    if not m_plus.is_dominant():
        raise ValueError(f"{m_plus} is not dominant")
    if max(m.max_node(), m_plus.max_node()) > r:
        raise NotADescendant(f"node index exceeds rank {r}")
    w = (m_plus / m).as_dict()
    if not w:
        return {}
    js = [j for _, j in w]
    j_lo, j_hi = min(js), max(js)

    v: dict[tuple[int, int], int] = {}

    def get(i: int, j: int) -> int:
        if i < 1 or i > r:
            return 0
        return v.get((i, j), 0)

    # a nonzero v_{i,j} forces w at j-1 and j+1, so v lives strictly inside (j_lo, j_hi)
    for j in range(j_lo, j_hi - 1):
        for i in range(1, r + 1):
            val = w.get((i, j), 0) - get(i, j - 1) + get(i - 1, j) + get(i + 1, j)
            if val < 0:
                raise NotADescendant(f"{m} is not a descendant of {m_plus}: v[{i},{j + 1}] = {val}")
            if val:
                v[(i, j + 1)] = val
    if m_plus * a_product(v, r).inverse() != m:
        raise NotADescendant(f"{m} is not a descendant of {m_plus}")
    return v


@dataclass(frozen=True, slots=True)
class TLaurent:
    """Laurent polynomial in ``t`` with integer coefficients."""

    items: tuple = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> "TLaurent":
        return cls(tuple(sorted((e, c) for e, c in coeffs.items() if c != 0)))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "TLaurent":
        return cls.from_dict({e: c})

    @classmethod
    def one(cls) -> "TLaurent":
        return cls(((0, 1),))

    @classmethod
    def zero(cls) -> "TLaurent":
        return cls(())

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    def is_zero(self) -> bool:
        return not self.items

    def __add__(self, other: "TLaurent") -> "TLaurent":
        acc = dict(self.items)
        for e, c in other.items:
            acc[e] = acc.get(e, 0) + c
        return TLaurent.from_dict(acc)

    def __neg__(self) -> "TLaurent":
        return TLaurent(tuple((e, -c) for e, c in self.items))

    def __sub__(self, other: "TLaurent") -> "TLaurent":
        return self + (-other)

    def __mul__(self, other: "TLaurent | int") -> "TLaurent":
        if isinstance(other, int):
            return TLaurent.from_dict({e: c * other for e, c in self.items})
        acc: dict[int, int] = defaultdict(int)
        for e1, c1 in self.items:
            for e2, c2 in other.items:
                acc[e1 + e2] += c1 * c2
        return TLaurent.from_dict(acc)

    __rmul__ = __mul__

    def shift(self, n: int) -> "TLaurent":
        """Multiply by ``t^n``."""
        return TLaurent(tuple((e + n, c) for e, c in self.items))

    def single_exponent(self) -> int | None:
        """``n`` if this is exactly ``t^n``, else None."""
        if len(self.items) == 1 and self.items[0][1] == 1:
            return self.items[0][0]
        return None

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.items]

    @classmethod
    def from_json(cls, data) -> "TLaurent":
        return cls.from_dict({int(e): int(c) for e, c in data})

    def __str__(self) -> str:
        if not self.items:
            return "0"
        parts = []
        for e, c in self.items:
            if e == 0:
                parts.append(str(c))
            else:
                pw = "t" if e == 1 else f"t^{e}"
                parts.append(pw if c == 1 else f"-{pw}" if c == -1 else f"{c}*{pw}")
        return " + ".join(parts)


@dataclass(frozen=True)
class QtCharacter:
    """Finite sum ``sum_m c_m(t) m`` with a designated dominant monomial.

    ``rank`` is the number of nodes; it is needed to solve for the
    ``A^{-1}``-exponents of the terms.
    """

    dominant: YMonomial
    terms: tuple
    rank: int
    _v_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    @classmethod
    def build(cls, dominant: YMonomial, terms: Mapping[YMonomial, TLaurent] | Iterable, rank: int) -> "QtCharacter":
        acc: dict[YMonomial, TLaurent] = {}
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in pairs:
            acc[m] = acc[m] + c if m in acc else c
        items = tuple(sorted(((m, c) for m, c in acc.items() if not c.is_zero()), key=lambda mc: mc[0].items))
        return cls(dominant, items, rank)

    @classmethod
    def one(cls, rank: int) -> "QtCharacter":
        return cls.build(YMonomial.one(), {YMonomial.one(): TLaurent.one()}, rank)

    def as_dict(self) -> dict[YMonomial, TLaurent]:
        return dict(self.terms)

    def coefficient(self, m: YMonomial) -> TLaurent:
        for mm, c in self.terms:
            if mm == m:
                return c
        return TLaurent.zero()

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[YMonomial, TLaurent]]:
        return iter(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QtCharacter):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def v(self, m: YMonomial) -> dict[tuple[int, int], int]:
        """``v(m, dominant)``, memoised per term."""
        if m not in self._v_cache:
            self._v_cache[m] = descendant_v(m, self.dominant, self.rank)
        return self._v_cache[m]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "dominant": self.dominant.to_json(),
            "terms": [[m.to_json(), c.to_json()] for m, c in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QtCharacter":
        return cls.build(
            YMonomial.from_json(data["dominant"]),
            [(YMonomial.from_json(m), TLaurent.from_json(c)) for m, c in data["terms"]],
            int(data["rank"]),
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.terms:
            if c == TLaurent.one():
                out.append(str(m))
            elif m.is_one():
                out.append(f"({c})")
            else:
                out.append(f"({c})*{m}")
        return " + ".join(out)


def character_add(chi1: QtCharacter, chi2: QtCharacter) -> QtCharacter:
    """Coefficientwise sum; keeps the dominant monomial of the left operand."""
    acc = chi1.as_dict()
    for m, c in chi2.terms:
        acc[m] = acc[m] + c if m in acc else c
    return QtCharacter.build(chi1.dominant, acc, max(chi1.rank, chi2.rank))


def character_scale(chi: QtCharacter, tau: TLaurent) -> QtCharacter:
    return QtCharacter.build(chi.dominant, {m: c * tau for m, c in chi.terms}, chi.rank)
