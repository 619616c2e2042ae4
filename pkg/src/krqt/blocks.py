"""Blocks of a pair of column tableaux and the closed form for gamma."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .tableaux import ColumnTableau, column_monomial, dominant_tableau
from .twist import gamma


class BlockLetter(str, Enum):
    L_PLUS = "L+"
    L_MINUS = "L-"
    N_PLUS = "N+"
    N_MINUS = "N-"
    U = "U"

    @property
    def is_l(self) -> bool:
        return self in (BlockLetter.L_PLUS, BlockLetter.L_MINUS)

    @property
    def is_n(self) -> bool:
        return self in (BlockLetter.N_PLUS, BlockLetter.N_MINUS)

    @property
    def sign(self) -> int:
        return {"L+": 1, "N+": 1, "L-": -1, "N-": -1, "U": 0}[self.value]


class PairType(str, Enum):
    FUNDAMENTAL = "fundamental"
    ANTI_FUNDAMENTAL = "anti-fundamental"
    REGULAR = "regular"
    ANTI_REGULAR = "anti-regular"


def block_predicates(C: ColumnTableau, T: ColumnTableau, p: int) -> dict[BlockLetter, bool]:
    return {
        BlockLetter.L_PLUS: C[p - 1] < T[p] < C[p],
        BlockLetter.L_MINUS: T[p - 1] < C[p] < T[p],
        BlockLetter.N_PLUS: C[p] <= T[p - 1],
        BlockLetter.N_MINUS: T[p] <= C[p - 1],
        BlockLetter.U: C[p] == T[p],
    }


def classify_block(C: ColumnTableau, T: ColumnTableau, p: int) -> BlockLetter:
    hits = [letter for letter, ok in block_predicates(C, T, p).items() if ok]
    if len(hits) != 1:
        raise ValueError(f"block at p={p} is not well defined: {hits}")
    return hits[0]


def l_value(C: ColumnTableau, T: ColumnTableau, p: int) -> int:
    if C[p - 1] < T[p] < C[p]:
        return 1
    if T[p - 1] < C[p] < T[p]:
        return -1
    return 0


def n_value(C: ColumnTableau, T: ColumnTableau, p: int) -> int:
    if C[p] <= T[p - 1]:
        return 1
    if T[p] <= C[p - 1]:
        return -1
    return 0


def overlap(C: ColumnTableau, T: ColumnTableau) -> tuple[int, int]:
    """``(h, t)`` with ``h = max`` of heads and ``t = min`` of tails; ``h > t`` when disjoint."""
    return max(C.head, T.head), min(C.tail, T.tail)


@dataclass(frozen=True)
class BlockTableau:
    h: int
    t: int
    letters: tuple[BlockLetter, ...]  # indices h .. t+1

    def __getitem__(self, p: int) -> BlockLetter:
        return self.letters[p - self.h]

    def indices(self) -> range:
        return range(self.h, self.t + 2)

    def pretty(self) -> str:
        return "\n".join(f"{p:>4} {letter.value}" for p, letter in zip(self.indices(), self.letters))


def block_tableau(C: ColumnTableau, T: ColumnTableau) -> BlockTableau:
    h, t = overlap(C, T)
    if h > t + 1:
        raise ValueError("supports are neither overlapping nor adjacent")
    return BlockTableau(h, t, tuple(classify_block(C, T, p) for p in range(h, t + 2)))


def pair_type(C: ColumnTableau, T: ColumnTableau) -> PairType:
    hC, tC, hT, tT = C.head, C.tail, T.head, T.tail
    if hC >= hT and tC <= tT:
        return PairType.FUNDAMENTAL
    if hC <= hT and tC >= tT:
        return PairType.ANTI_FUNDAMENTAL
    if hC > hT and tC > tT:
        return PairType.REGULAR
    return PairType.ANTI_REGULAR


def gamma_block_formula(C: ColumnTableau, T: ColumnTableau) -> int | None:
    """Sum of ``L_p`` over the overlap plus a boundary term at ``t+1``.

    The boundary is ``N_{t+1}`` for (anti-)fundamental pairs and ``L_{t+1}``
    otherwise.  Adjacent supports give an empty sum; supports further apart
    return None and the caller should use the definition.
    """
    h, t = overlap(C, T)
    if h > t + 1:
        return None
    total = sum(l_value(C, T, p) for p in range(h, t + 1))
    if pair_type(C, T) in (PairType.FUNDAMENTAL, PairType.ANTI_FUNDAMENTAL):
        return total + n_value(C, T, t + 1)
    return total + l_value(C, T, t + 1)


def gamma_columns(C: ColumnTableau, T: ColumnTableau, r: int) -> int:
    """``gamma`` of the column monomials relative to their dominant columns."""
    return gamma(
        column_monomial(C, r),
        column_monomial(dominant_tableau(C), r),
        column_monomial(T, r),
        column_monomial(dominant_tableau(T), r),
        r,
    )


def gamma_dual(C: ColumnTableau, T: ColumnTableau, r: int) -> tuple[int, int | None]:
    """Both the definitional value and the block-formula value (None if not applicable)."""
    return gamma_columns(C, T, r), gamma_block_formula(C, T)
