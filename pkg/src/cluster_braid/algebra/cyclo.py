"""Exact arithmetic in the real cyclotomic rings Z[2cos(pi/L)].

An element is stored as a coefficient vector in powers of theta = 2cos(pi/L),
reduced modulo the minimal polynomial of theta.  Signs are decided exactly by
interval evaluation at rational enclosures of theta, refined on demand.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "CycloReal",
    "LevelMismatch",
    "cyclotomic_polynomial",
    "minimal_polynomial",
    "cos_embedding",
]


class LevelMismatch(ValueError):
    """Raised when combining elements of different rings Z[2cos(pi/L)]."""


# Polynomials are tuples of integer coefficients, lowest degree first.


def _poly_trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    lead = den[-1]
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, cyclotomic_polynomial(d))
    return tuple(p)


@lru_cache(maxsize=None)
def minimal_polynomial(level: int) -> tuple[int, ...]:
    """Monic minimal polynomial of 2cos(pi/level) over Q, lowest degree first.

    Obtained from the palindromic cyclotomic polynomial Phi_{2L}(x) = x^d psi(x + 1/x).
    """
    if level < 1:
        raise ValueError("level must be a positive integer")
    if level == 1:
        return (2, 1)  # 2cos(pi) = -2
    phi = list(cyclotomic_polynomial(2 * level))
    d = (len(phi) - 1) // 2
    psi = [0] * (d + 1)
    for k in range(d, -1, -1):
        c = phi[d + k]
        psi[k] = c
        if c:
            # subtract c * x^(d-k) * (x^2 + 1)^k
            for i in range(k + 1):
                phi[d - k + 2 * i] -= c * math.comb(k, i)
    if any(phi):
        raise ArithmeticError("cyclotomic polynomial is not palindromic")
    return tuple(psi)


def _eval_interval(poly: Sequence, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of poly(t) for t in [lo, hi] by interval Horner evaluation."""
    a = b = Fraction(poly[-1])
    for c in reversed(poly[:-1]):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a = min(prods) + c
        b = max(prods) + c
    return a, b


def _poly_eval(poly: Sequence, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * t + c
    return acc


class _RootEnclosure:
    """Shrinking rational interval around 2cos(pi/L), shared per level."""

    def __init__(self, level: int):
        self.poly = minimal_polynomial(level)
        approx = 2 * math.cos(math.pi / level)
        if len(self.poly) == 2:
            exact = Fraction(-self.poly[0])
            self.lo = self.hi = exact
            return
        eps = Fraction(1, 10**12)
        lo = Fraction(approx) - eps
        hi = Fraction(approx) + eps
        if _poly_eval(self.poly, lo) * _poly_eval(self.poly, hi) >= 0:
            raise ArithmeticError(f"failed to isolate 2cos(pi/{level})")
        self.lo, self.hi = lo, hi
        self.refine(60)

    def refine(self, steps: int = 30) -> None:
        if self.lo == self.hi:
            return
        flo = _poly_eval(self.poly, self.lo)
        for _ in range(steps):
            mid = (self.lo + self.hi) / 2
            fm = _poly_eval(self.poly, mid)
            if fm == 0:
                self.lo = self.hi = mid
                return
            if (fm > 0) == (flo > 0):
                self.lo, flo = mid, fm
            else:
                self.hi = mid


@lru_cache(maxsize=None)
def _enclosure(level: int) -> _RootEnclosure:
    return _RootEnclosure(level)


def _reduce(coeffs: Iterable, level: int) -> tuple[Fraction, ...]:
    mu = minimal_polynomial(level)
    d = len(mu) - 1
    c = [Fraction(x) for x in coeffs]
    for k in range(len(c) - 1, d - 1, -1):
        lead = c[k]
        if lead:
            for i in range(d):
                c[k - d + i] -= lead * mu[i]
            c[k] = Fraction(0)
    c = c[:d] + [Fraction(0)] * (d - len(c))
    return tuple(c)


class CycloReal:
    """Element of Z[2cos(pi/L)] (coefficients kept rational)."""

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, level: int, coeffs: Iterable = (0,)):
        self.level = level
        self.coeffs = _reduce(coeffs, level)
        self._hash = None

    @classmethod
    def _raw(cls, level: int, coeffs: tuple[Fraction, ...]) -> CycloReal:
        obj = cls.__new__(cls)
        obj.level = level
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def theta(cls, level: int) -> CycloReal:
        return cls(level, (0, 1))

    @classmethod
    def from_int(cls, level: int, value) -> CycloReal:
        return cls(level, (value,))

    def _check(self, other) -> CycloReal:
        if not isinstance(other, CycloReal):
            return CycloReal.from_int(self.level, other)
        if other.level != self.level:
            raise LevelMismatch(f"levels {self.level} and {other.level} differ")
        return other

    def __add__(self, other) -> CycloReal:
        other = self._check(other)
        return CycloReal._raw(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other) -> CycloReal:
        other = self._check(other)
        return CycloReal._raw(self.level, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other) -> CycloReal:
        return self._check(other) - self

    def __neg__(self) -> CycloReal:
        return CycloReal._raw(self.level, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> CycloReal:
        other = self._check(other)
        if len(self.coeffs) == 1:
            return CycloReal._raw(self.level, (self.coeffs[0] * other.coeffs[0],))
        return CycloReal._raw(self.level, _reduce(_poly_mul(self.coeffs, other.coeffs), self.level))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloReal):
            if isinstance(other, (int, Fraction)):
                other = CycloReal.from_int(self.level, other)
            else:
                return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.level, self.coeffs))
        return self._hash

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def sign(self) -> int:
        """Sign under the real embedding theta -> 2cos(pi/L)."""
        if self.is_zero():
            return 0
        if len(self.coeffs) == 1:
            return 1 if self.coeffs[0] > 0 else -1
        enc = _enclosure(self.level)
        poly = _poly_trim(list(self.coeffs))
        for _ in range(200):
            a, b = _eval_interval(poly, enc.lo, enc.hi)
            if a > 0:
                return 1
            if b < 0:
                return -1
            enc.refine()
        raise ArithmeticError("sign determination did not converge")

    def __float__(self) -> float:
        t = 2 * math.cos(math.pi / self.level)
        return float(sum(float(c) * t**k for k, c in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*t^{k}" if k > 1 else f"{c}*t")
        body = " + ".join(terms) if terms else "0"
        return f"CycloReal[L={self.level}]({body})"


def cos_embedding(m: int, level: int) -> CycloReal:
    """2cos(pi/m) as an element of Z[2cos(pi/level)]; requires m | level.

    Uses 2cos(k x) = D_k(2cos x) with D_0 = 2, D_1 = x, D_{k+1} = x D_k - D_{k-1}.
    """
    if level % m:
        raise ValueError(f"{m} does not divide {level}")
    k = level // m
    x = CycloReal.theta(level)
    prev, cur = CycloReal.from_int(level, 2), x
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, x * cur - prev
    return cur
