"""The pairing epsilon, the twist exponent gamma and the twisted products.

``epsilon`` is computed from the K-inverse exponents ``u~`` by a recurrence
in ``j``; ``epsilon_series`` computes the same number with the operator D and
serves as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .series import (  # noqa: F401  (re-exported toolkit)
    InsufficientWindow,
    SeriesOperator,
    VecSeries,
    apply_K,
    epsilon_symmetric_form,
    epsilon_series,
    inner,
    operator_D,
    s_number,
    u_series,
    u_series_label,
)
from .ylattice import QtCharacter, TLaurent, YMonomial, descendant_v


@dataclass(frozen=True)
class UTildeTable:
    """``u~_{i,j}`` for all ``j <= ceiling`` (zero below the support of u)."""

    r: int
    values: dict
    floor: int
    ceiling: int

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if j > self.ceiling:
            raise KeyError(f"u~ requested at j={j} above ceiling {self.ceiling}")
        if i < 1 or i > self.r:
            return 0
        return self.values.get((i, j), 0)


def tilde_u(m: YMonomial, r: int, j_ceiling: int) -> UTildeTable:
    """Solve ``u_{i,j} = u~_{i,j-1} + u~_{i,j+1} - u~_{i-1,j} - u~_{i+1,j}`` upward in j."""
    rng = m.spectral_range()
    if rng is None:
        return UTildeTable(r, {}, j_ceiling, j_ceiling)
    lo = rng[0]
    u = m.as_dict()
    vals: dict = {}

    def get(i, j):
        return vals.get((i, j), 0) if 1 <= i <= r else 0

    for j in range(lo, j_ceiling):
        for i in range(1, r + 1):
            x = u.get((i, j), 0) - get(i, j - 1) + get(i - 1, j) + get(i + 1, j)
            if x:
                vals[(i, j + 1)] = x
    return UTildeTable(r, vals, lo, j_ceiling)


def _check_dominant(m: YMonomial) -> None:
    if not m.is_dominant():
        raise ValueError(f"epsilon is defined on dominant monomials only, got {m}")


def epsilon(m1: YMonomial, m2: YMonomial, r: int) -> int:
    """``-sum u_{i,j+1}(m1) u~_{i,j}(m2) + sum u_{i,j+1}(m2) u~_{i,j}(m1)``."""
    _check_dominant(m1)
    _check_dominant(m2)
    tops = [rng[1] for rng in (m1.spectral_range(), m2.spectral_range()) if rng]
    if not tops:
        return 0
    ceiling = max(tops) + 1
    t1, t2 = tilde_u(m1, r, ceiling), tilde_u(m2, r, ceiling)
    total = 0
    for (i, j), e in m1.items:
        total -= e * t2[(i, j - 1)]
    for (i, j), e in m2.items:
        total += e * t1[(i, j - 1)]
    return total


def d_value(
    v1: dict, u1_plus: dict, u2: dict, v2: dict
) -> int:
    """``sum v1_{i,j+1} u2_{i,j} + sum u1+_{i,j+1} v2_{i,j}`` on precomputed exponent maps."""
    total = 0
    for (i, j), n in v1.items():
        total += n * u2.get((i, j - 1), 0)
    for (i, j), n in v2.items():
        total += n * u1_plus.get((i, j + 1), 0)
    return total


def d_monomials(m1: YMonomial, m1_plus: YMonomial, m2: YMonomial, m2_plus: YMonomial, r: int) -> int:
    return d_value(descendant_v(m1, m1_plus, r), m1_plus.as_dict(), m2.as_dict(), descendant_v(m2, m2_plus, r))


def gamma(m1: YMonomial, m1_plus: YMonomial, m2: YMonomial, m2_plus: YMonomial, r: int) -> int:
    """``d(1;2) - d(2;1)``."""
    return d_monomials(m1, m1_plus, m2, m2_plus, r) - d_monomials(m2, m2_plus, m1, m1_plus, r)


class Mode(str, Enum):
    STAR = "star"
    STAR_GAMMA = "star_gamma"


def _term_data(chi: QtCharacter):
    up = chi.dominant.as_dict()
    return [(m, c, chi.v(m), m.as_dict()) for m, c in chi.terms], up


def twisted_mul(chi1: QtCharacter, chi2: QtCharacter, mode: Mode | str = Mode.STAR_GAMMA) -> QtCharacter:
    """Bilinear extension of ``m1 * m2 = t^{gamma (+ epsilon)} m1 m2``."""
    mode = Mode(mode)
    r = max(chi1.rank, chi2.rank)
    shift = epsilon(chi1.dominant, chi2.dominant, r) if mode is Mode.STAR else 0
    terms1, up1 = _term_data(chi1)
    terms2, up2 = _term_data(chi2)
    acc: dict[YMonomial, dict[int, int]] = {}
    for m1, c1, v1, u1 in terms1:
        for m2, c2, v2, u2 in terms2:
            g = d_value(v1, up1, u2, v2) - d_value(v2, up2, u1, v1)
            prod = m1 * m2
            slot = acc.setdefault(prod, {})
            for e1, a1 in c1.items:
                for e2, a2 in c2.items:
                    e = e1 + e2 + g + shift
                    slot[e] = slot.get(e, 0) + a1 * a2
    terms = {m: TLaurent.from_dict(c) for m, c in acc.items()}
    return QtCharacter.build(chi1.dominant * chi2.dominant, terms, r)


def star(chi1: QtCharacter, chi2: QtCharacter) -> QtCharacter:
    return twisted_mul(chi1, chi2, Mode.STAR)


def star_gamma(chi1: QtCharacter, chi2: QtCharacter) -> QtCharacter:
    return twisted_mul(chi1, chi2, Mode.STAR_GAMMA)


def t_commutation_exponent(chi1: QtCharacter, chi2: QtCharacter) -> int | None:
    """The ``alpha`` with ``chi1 * chi2 = t^alpha chi2 * chi1``, or None."""
    p = star(chi1, chi2)
    q = star(chi2, chi1)
    return proportionality_exponent(p, q)


def proportionality_exponent(p: QtCharacter, q: QtCharacter) -> int | None:
    """The ``alpha`` with ``p = t^alpha q`` termwise, or None."""
    pd, qd = p.as_dict(), q.as_dict()
    if set(pd) != set(qd):
        return None
    if not pd:
        return 0
    alpha = None
    for m, c in pd.items():
        d = qd[m]
        cand = c.items[0][0] - d.items[0][0]
        if alpha is None:
            alpha = cand
        if cand != alpha or c != d.shift(alpha):
            return None
    return alpha
