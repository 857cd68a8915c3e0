"""3jm, 6-j and 9-j symbols with exact surd values.

Angular momenta travel through this module as doubled integers (``2j``), so
half-integers never touch floating point.  Public functions accept anything
:func:`twice` understands: :class:`HalfInt`, ``int``, ``Fraction``, half-valued
floats such as ``3.5`` or strings like ``"7/2"``.
"""
from __future__ import annotations

import itertools
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from .exact import ONE, ZERO, Surd, SurdSum, factorial, factorial_ratio, surd_mul

__all__ = [
    "HalfInt",
    "WignerDomainError",
    "SelectionRuleError",
    "twice",
    "triangle_ok",
    "delta",
    "wigner3jm",
    "wigner6j",
    "wigner9j",
]


class WignerDomainError(ValueError):
    """Structurally impossible symbol arguments (not a legal zero)."""


class SelectionRuleError(AssertionError):
    """A phase exponent came out half-integer; indicates a summation-bound bug."""


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of Z/2 stored as its double."""

    twice: int

    @classmethod
    def of(cls, value) -> "HalfInt":
        return value if isinstance(value, HalfInt) else cls(twice(value))

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2

    def __str__(self) -> str:
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"


def twice(value) -> int:
    """Return ``2*value`` as an int, rejecting anything not in Z/2."""
    if isinstance(value, HalfInt):
        return value.twice
    if isinstance(value, bool):
        raise WignerDomainError(f"not an angular momentum: {value!r}")
    if isinstance(value, int):
        return 2 * value
    if isinstance(value, numbers.Rational):
        if value.denominator in (1, 2):
            return 2 * int(value.numerator) // int(value.denominator)
    elif isinstance(value, float):
        if (2 * value).is_integer():
            return int(2 * value)
    elif isinstance(value, str):
        try:
            return twice(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            pass
    raise WignerDomainError(f"not a multiple of 1/2: {value!r}")


def phase(twice_exponent: int) -> int:
    """``(-1)**e`` given ``2e``; ``e`` must be an integer."""
    if twice_exponent % 2:
        raise SelectionRuleError(f"half-integer phase exponent {twice_exponent}/2")
    return -1 if twice_exponent % 4 else 1


def _tri(a: int, b: int, c: int) -> bool:
    # doubled arguments
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


def triangle_ok(a, b, c) -> bool:
    """True iff ``a, b, c`` can couple: ``|a-b| <= c <= a+b`` with integer perimeter."""
    return _tri(twice(a), twice(b), twice(c))


def span(pairs: Iterable[Tuple[int, int]]) -> range:
    """Doubled values of ``x`` forming a triangle with every ``(a, b)`` pair."""
    lo, hi, par = 0, None, None
    for a, b in pairs:
        p = (a + b) % 2
        if par is None:
            par = p
        elif p != par:
            return range(0)
        lo = max(lo, abs(a - b))
        hi = a + b if hi is None else min(hi, a + b)
    if hi is None:
        raise ValueError("span needs at least one pair")
    return range(lo, hi + 1, 2)


def _delta_sq(a: int, b: int, c: int):
    return factorial_ratio(
        ((a + b - c) // 2, (a - b + c) // 2, (b + c - a) // 2), ((a + b + c) // 2 + 1,)
    )


def delta(a, b, c) -> Surd:
    """Triangle coefficient: square root of a factorial ratio."""
    a, b, c = twice(a), twice(b), twice(c)
    if min(a, b, c) < 0 or not _tri(a, b, c):
        raise WignerDomainError(f"delta outside triangle: {a}/2 {b}/2 {c}/2")
    return Surd.sqrt_of(_delta_sq(a, b, c))


# ---------------------------------------------------------------------------
# 3jm

def wigner3jm(j1, j2, j, m1, m2, m) -> Surd:
    j1, j2, j, m1, m2, m = (twice(v) for v in (j1, j2, j, m1, m2, m))
    if min(j1, j2, j) < 0:
        raise WignerDomainError("negative angular momentum")
    if (j1 - m1) % 2 or (j2 - m2) % 2 or (j - m) % 2:
        raise WignerDomainError("projection not offset from its momentum by an integer")
    return _threejm(j1, j2, j, m1, m2, m)


def _threejm(j1: int, j2: int, j: int, m1: int, m2: int, m: int) -> Surd:
    if m1 + m2 + m != 0:
        return ZERO
    if abs(m1) > j1 or abs(m2) > j2 or abs(m) > j or not _tri(j1, j2, j):
        return ZERO
    h = lambda v: v // 2  # noqa: E731  all arguments below are even
    radicand = factorial_ratio(
        (h(j + j1 - j2), h(j - j1 + j2), h(j1 + j2 - j),
         h(j + m), h(j - m), h(j1 - m1), h(j1 + m1), h(j2 - m2), h(j2 + m2)),
        (h(j1 + j2 + j) + 1,),
    )
    kmin = max(0, h(j2 - m1 - j), h(j1 + m2 - j))
    kmax = min(h(j1 + j2 - j), h(j1 - m1), h(j2 + m2))
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (factorial(k) * factorial(h(j1 + j2 - j) - k) * factorial(h(j1 - m1) - k)
               * factorial(h(j2 + m2) - k) * factorial(h(j - j2 + m1) + k)
               * factorial(h(j - j1 - m2) + k))
        total += Fraction(-1 if k % 2 else 1, den)
    if total == 0:
        return ZERO
    return Surd.sqrt_of(radicand, phase(j1 - j2 - m) * total)


# ---------------------------------------------------------------------------
# 6-j

def wigner6j(j1, j2, j3, l1, l2, l3) -> Surd:
    args = tuple(twice(v) for v in (j1, j2, j3, l1, l2, l3))
    if min(args) < 0:
        raise WignerDomainError("negative angular momentum")
    return sixj(*args)


_FLIPS = ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))


def canonical_6j(a: int, b: int, c: int, d: int, e: int, f: int) -> Tuple[int, ...]:
    """Smallest representative under the 24 classical 6-j symmetries."""
    cols = ((a, d), (b, e), (c, f))
    best = None
    for flip in _FLIPS:
        fc = [col[::-1] if s else col for col, s in zip(cols, flip)]
        for p in itertools.permutations(fc):
            key = (p[0][0], p[1][0], p[2][0], p[0][1], p[1][1], p[2][1])
            if best is None or key < best:
                best = key
    return best


def sixj(a: int, b: int, c: int, d: int, e: int, f: int) -> Surd:
    """6-j symbol from doubled nonnegative arguments."""
    if not (_tri(a, b, c) and _tri(a, e, f) and _tri(d, b, f) and _tri(d, e, c)):
        return ZERO
    return _sixj_cached(*canonical_6j(a, b, c, d, e, f))


@lru_cache(maxsize=None)
def _sixj_cached(a: int, b: int, c: int, d: int, e: int, f: int) -> Surd:
    return _sixj_racah(a, b, c, d, e, f)


def _sixj_racah(j1: int, j2: int, j3: int, l1: int, l2: int, l3: int) -> Surd:
    triads = ((j1, j2, j3), (j1, l2, l3), (l1, j2, l3), (l1, l2, j3))
    radicand = None
    for t in triads:
        sq = _delta_sq(*t)
        radicand = sq if radicand is None else radicand * sq
    alphas = [sum(t) // 2 for t in triads]
    betas = [(j1 + j2 + l1 + l2) // 2, (j1 + j3 + l1 + l3) // 2, (j2 + j3 + l2 + l3) // 2]
    zmin, zmax = max(alphas), min(betas)
    total = Fraction(0)
    for z in range(zmin, zmax + 1):
        den = 1
        for al in alphas:
            den *= factorial(z - al)
        for be in betas:
            den *= factorial(be - z)
        total += Fraction(-factorial(z + 1) if z % 2 else factorial(z + 1), den)
    if total == 0:
        return ZERO
    return Surd.sqrt_of(radicand, total)


def sixj_cache_info():
    return _sixj_cached.cache_info()


def clear_caches() -> None:
    _sixj_cached.cache_clear()


# ---------------------------------------------------------------------------
# 9-j

def wigner9j(j1, j2, j3, l1, l2, l3, k1, k2, k3):
    args = tuple(twice(v) for v in (j1, j2, j3, l1, l2, l3, k1, k2, k3))
    if min(args) < 0:
        raise WignerDomainError("negative angular momentum")
    return ninej(*args)


def ninej(j1, j2, j3, l1, l2, l3, k1, k2, k3):
    """9-j symbol from doubled arguments as a sum over products of three 6-j."""
    acc = SurdSum()
    for x in span(((j1, k3), (l3, j2), (l1, k2))):
        a = sixj(j1, j2, j3, l3, k3, x)
        if not a:
            continue
        b = sixj(l1, l2, l3, j2, x, k2)
        if not b:
            continue
        c = sixj(k1, k2, k3, x, j1, l1)
        if not c:
            continue
        # (-1)^{2x}: doubled exponent 2*x_doubled is always even
        acc.add(surd_mul(surd_mul(a, b), c), (x + 1) * phase(2 * x))
    return acc.result()


def product(factors: Sequence) -> Surd:
    """Product of surds, short-circuiting on zero; tolerates SurdVec factors."""
    out = ONE
    for f in factors:
        if not f:
            return ZERO
        if isinstance(out, Surd) and isinstance(f, Surd):
            out = surd_mul(out, f)
        else:
            out = f * out
    return out
