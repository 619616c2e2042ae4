"""KR-tableaux of type A_r and the maps from tableaux to Y-monomials.

A column tableau of shape ``(i, j)`` occupies indices ``head .. head+i-1``
with ``head = (1-i-j)/2``.  Reading outside the column gives ``BELOW`` (0)
above the head and ``ABOVE`` (infinity) past the tail, so every comparison
between two columns is total.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .ylattice import QtCharacter, TLaurent, YMonomial

BELOW = 0
ABOVE = math.inf


def _check_parity(i: int, j: int) -> None:
    if (1 - i - j) % 2:
        raise ValueError(f"shape (i={i}, j={j}) has 1-i-j odd")


@dataclass(frozen=True, slots=True)
class ColumnTableau:
    length: int
    j: int
    values: tuple[int, ...]

    def __post_init__(self):
        _check_parity(self.length, self.j)
        if len(self.values) != self.length:
            raise ValueError("number of values must equal the column length")

    @property
    def head(self) -> int:
        return (1 - self.length - self.j) // 2

    @property
    def tail(self) -> int:
        return self.head + self.length - 1

    def support(self) -> range:
        return range(self.head, self.tail + 1)

    def __getitem__(self, p: int):
        if p < self.head:
            return BELOW
        if p > self.tail:
            return ABOVE
        return self.values[p - self.head]

    def is_strict(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    def with_values(self, values) -> "ColumnTableau":
        return ColumnTableau(self.length, self.j, tuple(values))

    def boxes(self):
        """Pairs ``(p, value)`` over the support."""
        return zip(self.support(), self.values)

    @classmethod
    def dominant(cls, length: int, j: int) -> "ColumnTableau":
        return cls(length, j, tuple(range(1, length + 1)))

    def is_dominant(self) -> bool:
        return self.values == tuple(range(1, self.length + 1))


@dataclass(frozen=True, slots=True)
class GeneralTableau:
    columns: tuple[ColumnTableau, ...]

    @property
    def width(self) -> int:
        return len(self.columns)

    def __iter__(self):
        return iter(self.columns)

    def __getitem__(self, l: int) -> ColumnTableau:
        return self.columns[l]

    def shape(self) -> tuple[int, int, int] | None:
        """``(i, j, k)`` when the tableau sits on a staircase diagram."""
        if not self.columns:
            return None
        first = self.columns[0]
        return (first.length, first.j, len(self.columns))

    def is_staircase(self) -> bool:
        if not self.columns:
            return True
        i, j, _ = self.shape()
        return all(c.length == i and c.j == j + 2 * l for l, c in enumerate(self.columns))

    def is_kr(self, r: int) -> bool:
        """Strict columns, entries in ``1..r+1``, and ``T_l[p] <= T_{l+1}[p-1]``."""
        for c in self.columns:
            if not c.is_strict() or any(v < 1 or v > r + 1 for v in c.values):
                return False
        for left, right in zip(self.columns, self.columns[1:]):
            for p in left.support():
                if left[p] > right[p - 1]:
                    return False
        return True

    def to_json(self) -> dict:
        shape = self.shape()
        return {
            "shape": list(shape) if shape else [0, 0, 0],
            "columns": [list(c.values) for c in self.columns],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GeneralTableau":
        i, j, k = data["shape"]
        cols = data["columns"]
        if len(cols) != k:
            raise ValueError("column count does not match shape")
        return cls(tuple(ColumnTableau(i, j + 2 * l, tuple(vs)) for l, vs in enumerate(cols)))


@dataclass(frozen=True, slots=True)
class KrLabel:
    r: int
    i: int
    j: int
    k: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("rank must be positive")
        if not 1 <= self.i <= self.r:
            raise ValueError(f"node {self.i} outside 1..{self.r}")
        if self.k < 0:
            raise ValueError("width must be non-negative")
        _check_parity(self.i, self.j)


def kr_dominant_monomial(i: int, j: int, k: int, r: int) -> YMonomial:
    """``Y_{i,j} Y_{i,j+2} ... Y_{i,j+2k-2}``; the unit when k = 0 or i is off the diagram."""
    if k <= 0 or not 1 <= i <= r:
        return YMonomial.one()
    return YMonomial.from_dict({(i, j + 2 * l): 1 for l in range(k)})


def staircase_dominant(label: KrLabel) -> GeneralTableau:
    return GeneralTableau(tuple(ColumnTableau.dominant(label.i, label.j + 2 * l) for l in range(label.k)))


def dominant_tableau(diagram) -> GeneralTableau | ColumnTableau:
    """Fill every column with ``1, 2, ...`` from the top.

    Accepts a ``KrLabel`` (staircase), a ``ColumnTableau`` or a
    ``GeneralTableau`` (only the shapes are used).
    """
    if isinstance(diagram, KrLabel):
        return staircase_dominant(diagram)
    if isinstance(diagram, ColumnTableau):
        return ColumnTableau.dominant(diagram.length, diagram.j)
    return GeneralTableau(tuple(ColumnTableau.dominant(c.length, c.j) for c in diagram))


def enumerate_kr_tableaux(label: KrLabel) -> list[GeneralTableau]:
    """All KR-tableaux on the staircase ``(i, j, k)``, in lexicographic order.

    On a staircase the diagonal condition compares boxes in the same row of
    consecutive columns, so this is a left-to-right backtrack over strictly
    increasing columns that dominate the previous one rowwise.
    """
    r, i, j, k = label.r, label.i, label.j, label.k
    if k == 0:
        return [GeneralTableau(())]
    cols = list(itertools.combinations(range(1, r + 2), i))
    out: list[GeneralTableau] = []

    def extend(prefix: list[tuple[int, ...]]):
        if len(prefix) == k:
            out.append(GeneralTableau(tuple(ColumnTableau(i, j + 2 * l, vs) for l, vs in enumerate(prefix))))
            return
        prev = prefix[-1] if prefix else None
        for vs in cols:
            if prev is None or all(a <= b for a, b in zip(prev, vs)):
                prefix.append(vs)
                extend(prefix)
                prefix.pop()

    extend([])
    return out


def column_monomial(c: ColumnTableau, r: int) -> YMonomial:
    exps: dict[tuple[int, int], int] = {}
    for p, v in c.boxes():
        if v <= r:
            key = (v, v - 2 * p - 1)
            exps[key] = exps.get(key, 0) + 1
        if v >= 2:
            key = (v - 1, v - 2 * p)
            exps[key] = exps.get(key, 0) - 1
    return YMonomial.from_dict(exps)


def tableau_monomial(T: GeneralTableau | ColumnTableau, r: int) -> YMonomial:
    """``prod_p prod_i Y_{i,i-2p-1}^{#(T[p]=i) - #(T[p+1]=i+1)}``."""
    if isinstance(T, ColumnTableau):
        return column_monomial(T, r)
    m = YMonomial.one()
    for c in T:
        m = m * column_monomial(c, r)
    return m


def column_v_closed_form(c: ColumnTableau) -> dict[tuple[int, int], int]:
    v: dict[tuple[int, int], int] = {}
    for p, val in c.boxes():
        dom = p - c.head + 1
        for i in range(dom, val):
            v[(i, i - 2 * p)] = v.get((i, i - 2 * p), 0) + 1
    return v


def tableau_v_closed_form(T: GeneralTableau | ColumnTableau, r: int | None = None) -> dict[tuple[int, int], int]:
    """``v`` of ``m_T`` over ``m_{T_dom}``, read off the boxes.

    Box ``p`` of a column holding ``val`` contributes ``A_{i,i-2p}^{-1}`` for
    each ``i`` from its dominant value up to ``val - 1``.
    """
    if isinstance(T, ColumnTableau):
        return column_v_closed_form(T)
    v: dict[tuple[int, int], int] = {}
    for c in T:
        for key, n in column_v_closed_form(c).items():
            v[key] = v.get(key, 0) + n
    return v


@lru_cache(maxsize=None)
def _q_character(label: KrLabel) -> QtCharacter:
    dom = kr_dominant_monomial(label.i, label.j, label.k, label.r)
    terms: dict[YMonomial, TLaurent] = {}
    for T in enumerate_kr_tableaux(label):
        m = tableau_monomial(T, label.r)
        terms[m] = terms[m] + TLaurent.one() if m in terms else TLaurent.one()
    return QtCharacter.build(dom, terms, label.r)


def q_character(label: KrLabel) -> QtCharacter:
    return _q_character(label)


def collapse(T: GeneralTableau | ColumnTableau, r: int) -> dict[int, int]:
    """Classical weight ``prod_i y_i^{#i - #(i+1)}`` as a map ``i -> exponent``."""
    cols = [T] if isinstance(T, ColumnTableau) else list(T)
    count: dict[int, int] = {}
    for c in cols:
        for v in c.values:
            count[v] = count.get(v, 0) + 1
    out = {i: count.get(i, 0) - count.get(i + 1, 0) for i in range(1, r + 1)}
    return {i: e for i, e in out.items() if e}


def collapse_monomial(m: YMonomial) -> dict[int, int]:
    """The specialisation ``Y_{i,j} -> y_i``."""
    out: dict[int, int] = {}
    for (i, _j), e in m.items:
        out[i] = out.get(i, 0) + e
    return {i: e for i, e in out.items() if e}


def cluster_j(i: int, k: int) -> int:
    return -k + (i + k + 1) % 2


def fundamental_cluster(r: int, k_max: int) -> list[KrLabel]:
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    return [KrLabel(r, i, cluster_j(i, k), k) for i in range(1, r + 1) for k in range(1, k_max + 1)]
