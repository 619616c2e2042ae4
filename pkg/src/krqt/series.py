"""Truncated vector-valued Laurent series in ``s`` and the operators K and D.

A ``VecSeries`` is an element of ``Z^r (x) Z[[s]][s^-1]`` known exactly for
every exponent up to ``prec``; ``prec = None`` means the series is a
polynomial and is known everywhere.  Coefficients are never read past
``prec``; operations that would need to do so raise ``InsufficientWindow``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ylattice import YMonomial


class InsufficientWindow(ArithmeticError):
    pass


@dataclass(frozen=True)
class VecSeries:
    r: int
    coeffs: tuple  # sorted ((i, n), c) with c != 0, i in 1..r
    prec: int | None = None

    @classmethod
    def from_dict(cls, r: int, coeffs: dict, prec: int | None = None) -> "VecSeries":
        items = [((i, n), c) for (i, n), c in coeffs.items() if c != 0 and (prec is None or n <= prec)]
        for (i, _), _ in items:
            if not 1 <= i <= r:
                raise ValueError(f"component {i} outside 1..{r}")
        return cls(r, tuple(sorted(items)), prec)

    @classmethod
    def zero(cls, r: int) -> "VecSeries":
        return cls(r, ())

    @property
    def exact(self) -> bool:
        return self.prec is None

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def low(self) -> int | None:
        return min((n for (_, n), _ in self.coeffs), default=None)

    def high(self) -> int | None:
        return max((n for (_, n), _ in self.coeffs), default=None)

    def _prec_value(self) -> float:
        return math.inf if self.prec is None else self.prec

    def __add__(self, other: "VecSeries") -> "VecSeries":
        acc = self.as_dict()
        for key, c in other.coeffs:
            acc[key] = acc.get(key, 0) + c
        return VecSeries.from_dict(self.r, acc, _min_prec(self.prec, other.prec))

    def __neg__(self) -> "VecSeries":
        return VecSeries(self.r, tuple((k, -c) for k, c in self.coeffs), self.prec)

    def __sub__(self, other: "VecSeries") -> "VecSeries":
        return self + (-other)

    def scale(self, a: int) -> "VecSeries":
        return VecSeries.from_dict(self.r, {k: a * c for k, c in self.coeffs}, self.prec)

    def shift(self, k: int) -> "VecSeries":
        """Multiply by ``1 (x) s^k``."""
        prec = None if self.prec is None else self.prec + k
        return VecSeries(self.r, tuple(((i, n + k), c) for (i, n), c in self.coeffs), prec)

    def apply_matrix(self, M) -> "VecSeries":
        """Apply a constant ``r x r`` integer matrix ``M (x) 1``."""
        acc: dict = {}
        for (i, n), c in self.coeffs:
            for a in range(self.r):
                e = int(M[a][i - 1])
                if e:
                    acc[(a + 1, n)] = acc.get((a + 1, n), 0) + e * c
        return VecSeries.from_dict(self.r, acc, self.prec)


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def s_number(k: int) -> dict[int, int]:
    """``[k]_s = s^{k-1} + s^{k-3} + ... + s^{1-k}``, with ``[0]_s = 0``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return {k - 1 - 2 * a: 1 for a in range(k)}


def u_series(m: YMonomial, r: int) -> VecSeries:
    """``u(m)(s) = sum e_i (x) u_{i,j}(m) s^j``."""
    return VecSeries.from_dict(r, m.as_dict())


def u_series_label(r: int, i: int, k: int) -> VecSeries:
    """``e_i (x) s^{-1+(i+k+1) mod 2} [k]_s`` for the fundamental-cluster label ``(i, k)``."""
    off = -1 + (i + k + 1) % 2
    return VecSeries.from_dict(r, {(i, n + off): c for n, c in s_number(k).items()})


def a_matrix(r: int) -> np.ndarray:
    """``A = C - 2I`` for the Cartan matrix ``C`` of type ``A_r``."""
    A = np.zeros((r, r), dtype=np.int64)
    for a in range(r - 1):
        A[a, a + 1] = A[a + 1, a] = -1
    return A


@lru_cache(maxsize=None)
def _d_coefficients(r: int, depth: int) -> tuple:
    A = a_matrix(r)
    N = [np.eye(r, dtype=np.int64)]
    if depth > 1:
        N.append(-A)
    while len(N) < depth:
        N.append(-A @ N[-1] - N[-2])
    for M in N:
        M.setflags(write=False)
    return tuple(N)


@dataclass(frozen=True)
class SeriesOperator:
    """``sum_{n>=0} M_n s^n`` with ``M_n`` known for ``n <= depth``."""

    r: int
    coeffs: tuple  # M_0 .. M_depth
    depth: int

    def coefficient(self, n: int) -> np.ndarray:
        if n < 0:
            return np.zeros((self.r, self.r), dtype=np.int64)
        if n > self.depth:
            raise InsufficientWindow(f"operator coefficient s^{n} beyond depth {self.depth}")
        return self.coeffs[n]

    def __call__(self, f: VecSeries) -> VecSeries:
        lf = f.low()
        if lf is None:
            return VecSeries(self.r, (), f.prec)
        # coefficient N of the product needs M_n for n <= N - lf and f up to N - (first n with M_n != 0)
        first = next((n for n in range(self.depth + 1) if self.coeffs[n].any()), self.depth + 1)
        prec = self.depth + lf
        if not f.exact:
            prec = min(prec, f.prec + first)
        acc: dict = {}
        fd = f.as_dict()
        for (i, n), c in fd.items():
            for d in range(first, prec - n + 1):
                col = self.coeffs[d][:, i - 1]
                for a in range(self.r):
                    if col[a]:
                        key = (a + 1, n + d)
                        acc[key] = acc.get(key, 0) + int(col[a]) * c
        return VecSeries.from_dict(self.r, acc, prec)


def operator_D(r: int, depth: int) -> SeriesOperator:
    """``D = (1 + A s + s^2)^{-1} s`` expanded at ``s = 0`` to order ``s^depth``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    N = _d_coefficients(r, depth)
    coeffs = (np.zeros((r, r), dtype=np.int64),) + N
    return SeriesOperator(r, coeffs, depth)


def apply_K(f: VecSeries) -> VecSeries:
    """``K = 1 (x) s^-1 + A (x) 1 + 1 (x) s``."""
    return f.shift(-1) + f.apply_matrix(a_matrix(f.r)) + f.shift(1)


def inner(x: VecSeries, y: VecSeries) -> int:
    """``sum_i [x_i(s^-1) y_i(s)]_0``, the sum of products of matching coefficients."""
    if x.r != y.r:
        raise ValueError("rank mismatch")
    if not x.exact and not y.exact:
        raise InsufficientWindow("inner product needs one polynomial operand")
    if not x.exact:
        x, y = y, x
    top = x.high()
    if top is not None and not y.exact and top > y.prec:
        raise InsufficientWindow(f"need coefficients up to s^{top}, known up to s^{y.prec}")
    yd = y.as_dict()
    return sum(c * yd.get(key, 0) for key, c in x.coeffs)


def _widening(fn, depth: int, max_depth: int) -> int:
    while True:
        try:
            return fn(depth)
        except InsufficientWindow:
            if depth >= max_depth:
                raise
            depth *= 2


def epsilon_series(m1: YMonomial, m2: YMonomial, r: int, depth: int = 8, max_depth: int = 1 << 14) -> int:
    """``u(m2) . (1 (x) s) D u(m1) - u(m1) . (1 (x) s) D u(m2)``.

    The operator D replaces the ``u~`` recurrence; the window doubles until
    both pairings are determined.
    """
    u1, u2 = u_series(m1, r), u_series(m2, r)

    def attempt(d: int) -> int:
        D = operator_D(r, d)
        return inner(u2, D(u1).shift(1)) - inner(u1, D(u2).shift(1))

    return _widening(attempt, depth, max_depth)


def epsilon_symmetric_form(m1: YMonomial, m2: YMonomial, r: int, depth: int = 8, max_depth: int = 1 << 14) -> int:
    """``((1 (x) s - 1 (x) s^-1) D u(m1)) . u(m2)`` taken literally.

    This moves D across the pairing as if it were self-adjoint, which fails
    for the expansion at ``s = 0``; it agrees with ``epsilon`` only on part
    of the cluster and is kept for comparison.
    """
    u1, u2 = u_series(m1, r), u_series(m2, r)

    def attempt(d: int) -> int:
        Du = operator_D(r, d)(u1)
        return inner(Du.shift(1) - Du.shift(-1), u2)

    return _widening(attempt, depth, max_depth)
