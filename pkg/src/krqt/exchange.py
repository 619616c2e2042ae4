"""L-strips, compatibility and the exchange involution on pairs of KR-tableaux."""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field

from .blocks import classify_block, overlap
from .cluster import CheckReport
from .tableaux import (
    ABOVE,
    BELOW,
    ColumnTableau,
    GeneralTableau,
    KrLabel,
    dominant_tableau,
    enumerate_kr_tableaux,
    tableau_monomial,
)
from .twist import gamma
from .ylattice import YMonomial

DEFAULT_BUDGET = 16


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class LStrip:
    """Strip ``[p0, p1]`` in the column pair ``(C_l, T_m)``; ``m`` defaults to ``l``."""

    l: int
    p0: int
    p1: int
    sign: int
    m: int | None = None

    def __post_init__(self):
        if self.m is None:
            object.__setattr__(self, "m", self.l)

    def indices(self) -> range:
        return range(self.p0, self.p1 + 1)

    def boxes(self) -> set[tuple[str, int, int]]:
        return {("C", self.l, p) for p in self.indices()} | {("T", self.m, p) for p in self.indices()}

    def to_json(self) -> dict:
        return {"l": self.l, "m": self.m, "p0": self.p0, "p1": self.p1, "sign": "+" if self.sign > 0 else "-"}


def find_l_strips(C: ColumnTableau, T: ColumnTableau, l: int = 0, m: int | None = None) -> list[LStrip]:
    """Maximal L-strips inside the common support, ordered by ``p0``.

    A strip starts at an L-block and absorbs the N-blocks right after it.
    """
    h, t = overlap(C, T)
    strips: list[LStrip] = []
    p = h
    while p <= t:
        letter = classify_block(C, T, p)
        if not letter.is_l:
            p += 1
            continue
        end = p
        while end + 1 <= t and classify_block(C, T, end + 1).is_n:
            end += 1
        strips.append(LStrip(l, p, end, letter.sign, m))
        p = end + 1
    return strips


def swap_columns(C: ColumnTableau, T: ColumnTableau, indices) -> tuple[ColumnTableau, ColumnTableau]:
    cv, tv = list(C.values), list(T.values)
    for p in indices:
        cv[p - C.head], tv[p - T.head] = T[p], C[p]
    return C.with_values(cv), T.with_values(tv)


def column_compatible(C: ColumnTableau, T: ColumnTableau, strip: LStrip) -> bool:
    Cn, Tn = swap_columns(C, T, strip.indices())
    return Cn.is_strict() and Tn.is_strict()


def _diag_ok(left: ColumnTableau, right: ColumnTableau, rows) -> bool:
    """``left[p] <= right[p-1]`` for the given rows of ``left`` where both boxes exist."""
    for p in rows:
        a, b = left[p], right[p - 1]
        if a in (BELOW, ABOVE) or b in (BELOW, ABOVE):
            continue
        if a > b:
            return False
    return True


def left_conditions(
    C: ColumnTableau, T: ColumnTableau, strip: LStrip,
    C_left: ColumnTableau | None = None, T_left: ColumnTableau | None = None,
) -> dict[str, bool]:
    Cn, Tn = swap_columns(C, T, strip.indices())
    rows = [p + 1 for p in strip.indices()]
    return {
        "lC": C_left is None or _diag_ok(C_left, Cn, rows),
        "lT": T_left is None or _diag_ok(T_left, Tn, rows),
    }


def right_conditions(
    C: ColumnTableau, T: ColumnTableau, strip: LStrip,
    C_right: ColumnTableau | None = None, T_right: ColumnTableau | None = None,
) -> dict[str, bool]:
    Cn, Tn = swap_columns(C, T, strip.indices())
    rows = list(strip.indices())
    return {
        "rC": C_right is None or _diag_ok(Cn, C_right, rows),
        "rT": T_right is None or _diag_ok(Tn, T_right, rows),
    }


def left_compatible(C, T, strip, C_left=None, T_left=None) -> bool:
    return all(left_conditions(C, T, strip, C_left, T_left).values())


def right_compatible(C, T, strip, C_right=None, T_right=None) -> bool:
    return all(right_conditions(C, T, strip, C_right, T_right).values())


def _neighbour(G: GeneralTableau, l: int) -> ColumnTableau | None:
    return G[l] if 0 <= l < G.width else None


def strip_compatibility(C: GeneralTableau, T: GeneralTableau, strip: LStrip) -> dict[str, bool]:
    """Column, left and right compatibility of one strip inside a pair of tableaux."""
    l, m = strip.l, strip.m
    out = {"column": column_compatible(C[l], T[m], strip)}
    out.update(left_conditions(C[l], T[m], strip, _neighbour(C, l - 1), _neighbour(T, m - 1)))
    out.update(right_conditions(C[l], T[m], strip, _neighbour(C, l + 1), _neighbour(T, m + 1)))
    return out


def all_l_strips(C: GeneralTableau, T: GeneralTableau, aligned: bool = False) -> list[LStrip]:
    """L-strips of every column pair ``(C_l, T_m)``, or only ``l = m`` when ``aligned``."""
    out: list[LStrip] = []
    for l in range(C.width):
        for m in range(T.width):
            if aligned and l != m:
                continue
            out.extend(find_l_strips(C[l], T[m], l, m))
    return out


def _disjoint(strips) -> bool:
    seen: set = set()
    for s in strips:
        b = s.boxes()
        if seen & b:
            return False
        seen |= b
    return True


def exchange(C: GeneralTableau, T: GeneralTableau, strips) -> tuple[GeneralTableau, GeneralTableau]:
    """Swap the boxes of pairwise disjoint strips between ``C`` and ``T``."""
    if not _disjoint(strips):
        raise ValueError("strips share a box")
    cc, tt = list(C.columns), list(T.columns)
    for s in strips:
        cc[s.l], tt[s.m] = swap_columns(cc[s.l], tt[s.m], s.indices())
    return GeneralTableau(tuple(cc)), GeneralTableau(tuple(tt))


def is_valid_tableau(G: GeneralTableau) -> bool:
    """Strict columns and weakly increasing diagonals (entry range is preserved by exchange)."""
    if not all(c.is_strict() for c in G):
        return False
    return all(_diag_ok(a, b, a.support()) for a, b in zip(G.columns, G.columns[1:]))


@dataclass(frozen=True)
class ExchangeSequence:
    strips: tuple[LStrip, ...]

    def key(self) -> tuple:
        return tuple((s.l, s.m, s.p0) for s in self.strips)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.strips]


def find_exchangeable_sequences(
    C: GeneralTableau,
    T: GeneralTableau,
    budget: int = DEFAULT_BUDGET,
    kind: str = "minimal",
    aligned: bool = False,
) -> list[ExchangeSequence]:
    """Brute force over box-disjoint subsets of L-strips.

    ``kind`` is ``"minimal"`` (no exchangeable proper subset), ``"maximal"``
    (no exchangeable proper superset) or ``"all"``.  Sequences come back in
    canonical order: by columns, then ``p0``.
    """
    if kind not in ("minimal", "maximal", "all"):
        raise ValueError(f"unknown kind {kind!r}")
    strips = all_l_strips(C, T, aligned)
    if len(strips) > budget:
        raise SearchBudgetExceeded(f"{len(strips)} L-strips exceed the budget of {budget}")
    found: list[int] = []
    for size in range(1, len(strips) + 1):
        for combo in itertools.combinations(range(len(strips)), size):
            mask = sum(1 << b for b in combo)
            if kind == "minimal" and any(f & mask == f for f in found):
                continue
            chosen = [strips[b] for b in combo]
            if not _disjoint(chosen):
                continue
            Cn, Tn = exchange(C, T, chosen)
            if is_valid_tableau(Cn) and is_valid_tableau(Tn):
                found.append(mask)
    if kind == "maximal":
        found = [f for f in found if not any(g != f and g & f == f for g in found)]
    result = [ExchangeSequence(tuple(s for b, s in enumerate(strips) if f >> b & 1)) for f in found]
    result.sort(key=ExchangeSequence.key)
    return result


def pair_gamma(C: GeneralTableau, T: GeneralTableau, r: int) -> int:
    return gamma(
        tableau_monomial(C, r),
        tableau_monomial(dominant_tableau(C), r),
        tableau_monomial(T, r),
        tableau_monomial(dominant_tableau(T), r),
        r,
    )


def pair_monomial(C: GeneralTableau, T: GeneralTableau, r: int) -> YMonomial:
    return tableau_monomial(C, r) * tableau_monomial(T, r)


@dataclass
class PairingFailure:
    pair: int
    partner: int
    reason: str

    def to_json(self) -> dict:
        return {"pair": self.pair, "partner": self.partner, "reason": self.reason}


@dataclass
class SigmaPartition:
    label1: KrLabel
    label2: KrLabel
    pairs: list[tuple[GeneralTableau, GeneralTableau]]
    gammas: list[int]
    policy: str = "maximal"
    p0: list[int] = field(default_factory=list)
    p1: list[int] = field(default_factory=list)
    p_minus1: list[int] = field(default_factory=list)
    sigma: dict[int, int] = field(default_factory=dict)
    failures: list[PairingFailure] = field(default_factory=list)
    p0_gamma_violations: list[int] = field(default_factory=list)
    monomial_violations: list[tuple[int, int]] = field(default_factory=list)
    sign_violations: list[tuple[int, int]] = field(default_factory=list)
    gamma_symmetric: bool = True

    @property
    def passed(self) -> bool:
        """Structural checks only; greedy pairing failures are reported separately."""
        return not (self.p0_gamma_violations or self.monomial_violations or self.sign_violations) and self.gamma_symmetric

    def to_json(self) -> dict:
        lab = lambda x: [x.r, x.i, x.j, x.k]
        return {
            "label1": lab(self.label1),
            "label2": lab(self.label2),
            "policy": self.policy,
            "pairs": len(self.pairs),
            "P0": len(self.p0),
            "P1": len(self.p1),
            "P-1": len(self.p_minus1),
            "pairing_failures": [f.to_json() for f in self.failures],
            "p0_gamma_violations": self.p0_gamma_violations,
            "monomial_violations": [list(v) for v in self.monomial_violations],
            "sign_violations": [list(v) for v in self.sign_violations],
            "gamma_symmetric": self.gamma_symmetric,
            "passed": self.passed,
        }


def _gamma_symmetric(monomials: list[YMonomial], gammas: list[int]) -> bool:
    """Each product monomial's t-polynomial is invariant under ``t -> 1/t``."""
    table: dict[YMonomial, dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for m, g in zip(monomials, gammas):
        table[m][g] += 1
    return all(all(c == poly.get(-g, 0) for g, c in poly.items()) for poly in table.values())


def sigma_partition(
    label1: KrLabel, label2: KrLabel, budget: int = DEFAULT_BUDGET, policy: str = "maximal",
) -> SigmaPartition:
    """Split ``B x B'`` into P0 and pairs matched by exchanging one sequence.

    Each unmatched pair with an exchangeable sequence is sent to the pair
    obtained by exchanging its canonically least sequence of the given
    ``policy`` (``"maximal"`` or ``"minimal"``).  The structural checks are
    recorded on the result rather than raised.
    """
    if label1.r != label2.r:
        raise ValueError("labels must share the rank")
    r = label1.r
    pairs = list(itertools.product(enumerate_kr_tableaux(label1), enumerate_kr_tableaux(label2)))
    position = {pair: n for n, pair in enumerate(pairs)}
    gammas = [pair_gamma(C, T, r) for C, T in pairs]
    monomials = [pair_monomial(C, T, r) for C, T in pairs]
    seqs = [find_exchangeable_sequences(C, T, budget, kind=policy) for C, T in pairs]
    part = SigmaPartition(label1, label2, pairs, gammas, policy=policy)

    for n, s in enumerate(seqs):
        if not s:
            part.p0.append(n)
            if gammas[n] != 0:
                part.p0_gamma_violations.append(n)

    for n, s in enumerate(seqs):
        if not s or n in part.sigma:
            continue
        C, T = pairs[n]
        m = position[exchange(C, T, s[0].strips)]
        if m == n or m in part.sigma or not seqs[m]:
            part.failures.append(PairingFailure(n, m, "partner unavailable"))
            continue
        part.sigma[n], part.sigma[m] = m, n
        part.p1.append(n)
        part.p_minus1.append(m)
        if monomials[n] != monomials[m]:
            part.monomial_violations.append((n, m))
        if gammas[m] != -gammas[n]:
            part.sign_violations.append((n, m))

    part.gamma_symmetric = _gamma_symmetric(monomials, gammas)
    return part


def verify_exchange_pairing(label1: KrLabel, label2: KrLabel, policy: str = "maximal", budget: int = DEFAULT_BUDGET):
    """P0 has zero gamma, and every executed exchange keeps the monomial and flips gamma."""
    part = sigma_partition(label1, label2, budget, policy)
    witness = part.to_json()
    params = {
        "r": label1.r,
        "a": [label1.i, label1.j, label1.k],
        "b": [label2.i, label2.j, label2.k],
        "policy": policy,
    }
    for key in ("label1", "label2", "policy", "passed"):
        witness.pop(key)
    return CheckReport("thm31", params, part.passed, witness)
