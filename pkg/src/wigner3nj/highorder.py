"""12-j, 15-j and 18-j symbols as sums over products of 6-j and 9-j symbols.

Argument order follows the printed layout of each symbol, read row by row::

    12j1 / 15j1 / 18j1  (first kind, n = 4, 5, 6)      12j2 (second kind)
        j1    j2    ...   jn                            [ j1 j2 j3 j4 ]
           l1    l2   ...    ln                         [ l1 l2 l3 l4 ]
        k1    k2    ...   kn                            [ k1 k2 k3 k4 ]

    15j2 / 18j2 (second kind, n = 5, 6): same staggered layout, square brackets.

    15j3                                    15j4
        k1  k1'  k  k'  k2  k2'                 j1   k1  s1  k1'  j1'
           p1      p      p2                 p    l     s     l'   p'
        j1  j1'  j  j'  j2  j2'                 j2   k2  s2  k2'  j2'

    15j5
        k1  k1'  j1  l1  l1'
        k2  k2'  j2  l2  l2'
        k3  k3'  j3  l3  l3'

Internally every momentum is a doubled integer and every summation variable
steps by 2 between bounds taken from the triangle conditions it enters.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Tuple

from .coupling import (
    HalfInt,
    WignerDomainError,
    ninej,
    phase,
    product,
    sixj,
    span,
    twice,
    wigner3jm,
    wigner6j,
    wigner9j,
)
from .exact import SurdSum

__all__ = [
    "Kind",
    "SymbolSpec",
    "wigner12j_first",
    "wigner12j_second",
    "chain_3nj_first",
    "chain_3nj_second",
    "wigner15j_third",
    "wigner15j_fourth",
    "wigner15j_fifth",
    "evaluate",
]


def _doubled(*groups: Sequence, n: int = None) -> Tuple[Tuple[int, ...], ...]:
    out = []
    for g in groups:
        g = tuple(twice(v) for v in g)
        if n is not None and len(g) != n:
            raise WignerDomainError(f"expected {n} momenta per row, got {len(g)}")
        if any(v < 0 for v in g):
            raise WignerDomainError("negative angular momentum")
        out.append(g)
    return tuple(out)


# ---------------------------------------------------------------------------
# 12-j

def wigner12j_first(j: Sequence, l: Sequence, k: Sequence):
    j, l, k = _doubled(j, l, k, n=4)
    return _chain_first(j, l, k)


def wigner12j_second(j: Sequence, l: Sequence, k: Sequence):
    (j1, j2, j3, j4), (l1, l2, l3, l4), (k1, k2, k3, k4) = _doubled(j, l, k, n=4)
    acc = SurdSum()
    pairs = ((k1, k2), (j3, j1), (k3, k4), (j4, j2))
    for x in span(pairs):
        term = product((
            sixj(k1, k2, x, j3, j1, l1),
            sixj(k3, k4, x, j3, j1, l2),
            sixj(k1, k2, x, j4, j2, l3),
            sixj(k3, k4, x, j4, j2, l4),
        ))
        acc.add(term, x + 1)
    return _signed(acc.result(), l1 - l2 - l3 + l4)


def _signed(value, twice_exponent: int):
    # prefactor phase; only integer-valued once the sum is known to be nonzero
    if not value:
        return value
    return -value if phase(twice_exponent) == -1 else value


# ---------------------------------------------------------------------------
# 3n-j chains

def chain_3nj_first(j: Sequence, l: Sequence, k: Sequence):
    """First-kind 3n-j symbol for n = len(j) in {4, 5, 6}."""
    n = len(j)
    if n not in (4, 5, 6):
        raise WignerDomainError(f"chain length {n} not in 4..6")
    j, l, k = _doubled(j, l, k, n=n)
    return _chain_first(j, l, k)


def chain_3nj_second(j: Sequence, l: Sequence, k: Sequence):
    """Second-kind 3n-j symbol for n = len(j) in {5, 6}."""
    n = len(j)
    if n not in (5, 6):
        raise WignerDomainError(f"chain length {n} not in 5..6")
    j, l, k = _doubled(j, l, k, n=n)
    return _chain_second(j, l, k)


def _chain_links(j, l, k):
    n = len(j)
    return [(j[i], k[i], k[i + 1], j[i + 1], l[i]) for i in range(n - 1)]


def _chain_first(j, l, k):
    n = len(j)
    R2 = sum(j) + sum(l) + sum(k)
    links = _chain_links(j, l, k)
    pairs = [(j[-1], k[-1]), (j[0], k[0])] + [(a, b) for a, b, _, _, _ in links] + [
        (c, d) for _, _, c, d, _ in links
    ]
    acc = SurdSum()
    for x in span(pairs):
        factors = [sixj(j[-1], k[-1], x, j[0], k[0], l[-1])]
        factors += [sixj(a, b, x, c, d, li) for a, b, c, d, li in links]
        term = product(factors)
        if term:
            acc.add(term, (x + 1) * phase(R2 + (n - 1) * x))
    return acc.result()


def _chain_second(j, l, k):
    n = len(j)
    R2 = sum(j) + sum(l) + sum(k)
    links = _chain_links(j, l, k)
    pairs = [(j[-1], k[-1]), (k[0], j[0])] + [(a, b) for a, b, _, _, _ in links] + [
        (c, d) for _, _, c, d, _ in links
    ]
    acc = SurdSum()
    for x in span(pairs):
        factors = [sixj(j[-1], k[-1], x, k[0], j[0], l[-1])]
        factors += [sixj(a, b, x, c, d, li) for a, b, c, d, li in links]
        term = product(factors)
        if term:
            acc.add(term, (x + 1) * phase(R2 + n * x))
    return acc.result()


# ---------------------------------------------------------------------------
# 15-j, kinds three to five

def wigner15j_third(k1, k1p, k, kp, k2, k2p, p1, p, p2, j1, j1p, j, jp, j2, j2p):
    (k1, k1p, k, kp, k2, k2p, p1, p, p2, j1, j1p, j, jp, j2, j2p), = _doubled(
        (k1, k1p, k, kp, k2, k2p, p1, p, p2, j1, j1p, j, jp, j2, j2p)
    )
    acc = SurdSum()
    for x in span(((k, j), (jp, kp), (p1, p2))):
        term = product((
            sixj(k, j, x, jp, kp, p),
            ninej(k, j, x, k1, j1, p1, k2, j2, p2),
            ninej(kp, jp, x, k1p, j1p, p1, k2p, j2p, p2),
        ))
        if term:
            acc.add(term, (x + 1) * phase(x + p - j - kp))
    return acc.result()


def wigner15j_fourth(j1, k1, s1, k1p, j1p, p, l, s, lp, pp, j2, k2, s2, k2p, j2p):
    (j1, k1, s1, k1p, j1p, p, l, s, lp, pp, j2, k2, s2, k2p, j2p), = _doubled(
        (j1, k1, s1, k1p, j1p, p, l, s, lp, pp, j2, k2, s2, k2p, j2p)
    )
    acc = SurdSum()
    for x in span(((j1, j2p), (j2, j1p), (k2p, k1), (k1p, k2))):
        term = product((
            sixj(j1, j2p, x, k2p, k1, p),
            sixj(j2, j1p, x, k1p, k2, pp),
            sixj(k1, k2p, x, k2, k1p, s),
            ninej(j1, j2p, x, l, s2, j2, s1, lp, j1p),
        ))
        if term:
            acc.add(term, x + 1)
    return _signed(acc.result(), k1 + k2 - s1 - s2 + p + pp + 2 * lp)


def wigner15j_fifth(k: Sequence, kp: Sequence, j: Sequence, l: Sequence, lp: Sequence):
    """Fifth kind; each argument is one printed column (three momenta)."""
    (k1, k2, k3), (k1p, k2p, k3p), (j1, j2, j3), (l1, l2, l3), (l1p, l2p, l3p) = _doubled(
        k, kp, j, l, lp, n=3
    )
    acc = SurdSum()
    fixed = j1 + j2 + k1 + k1p - k2 + k2p - l2p + l3
    for x1 in span(((l2, l3p), (k2p, k3p))):
        a = sixj(l2, l3p, x1, k2p, k3p, k1)
        if not a:
            continue
        for x2 in span(((l2p, l3), (k2, k3), (x1, j1))):
            term = product((
                a,
                sixj(l2p, l3, x2, k2, k3, k1p),
                ninej(l2, l3p, x1, l2p, l3, x2, j2, j3, j1),
                ninej(k2p, k3p, x1, k3, k2, x2, l1, l1p, j1),
            ))
            if term:
                acc.add(term, (x1 + 1) * (x2 + 1) * phase(fixed + x2))
    return acc.result()


# ---------------------------------------------------------------------------
# uniform dispatch

class Kind(enum.Enum):
    THREE_JM = ("3jm", 6)
    SIX_J = ("6j", 6)
    NINE_J = ("9j", 9)
    TWELVE_J1 = ("12j1", 12)
    TWELVE_J2 = ("12j2", 12)
    FIFTEEN_J1 = ("15j1", 15)
    FIFTEEN_J2 = ("15j2", 15)
    FIFTEEN_J3 = ("15j3", 15)
    FIFTEEN_J4 = ("15j4", 15)
    FIFTEEN_J5 = ("15j5", 15)
    EIGHTEEN_J1 = ("18j1", 18)
    EIGHTEEN_J2 = ("18j2", 18)

    def __init__(self, label: str, arity: int):
        self.label = label
        self.arity = arity

    @classmethod
    def from_label(cls, label: str) -> "Kind":
        for kind in cls:
            if kind.label == label:
                return kind
        raise WignerDomainError(f"unknown symbol kind {label!r}")


@dataclass(frozen=True)
class SymbolSpec:
    """One symbol evaluation: a kind plus its momenta in printed row-major order."""

    kind: Kind
    args: Tuple[HalfInt, ...]

    def __post_init__(self):
        args = tuple(HalfInt.of(a) for a in self.args)
        object.__setattr__(self, "args", args)
        if len(args) != self.kind.arity:
            raise WignerDomainError(
                f"{self.kind.label} takes {self.kind.arity} arguments, got {len(args)}"
            )
        if self.kind is not Kind.THREE_JM and any(a.twice < 0 for a in args):
            raise WignerDomainError("negative angular momentum")


def _rows(args, n):
    return args[:n], args[n:2 * n], args[2 * n:]


def evaluate(spec: SymbolSpec):
    a = spec.args
    kind = spec.kind
    if kind is Kind.THREE_JM:
        return wigner3jm(*a)
    if kind is Kind.SIX_J:
        return wigner6j(*a)
    if kind is Kind.NINE_J:
        return wigner9j(*a)
    if kind is Kind.TWELVE_J1:
        return wigner12j_first(*_rows(a, 4))
    if kind is Kind.TWELVE_J2:
        return wigner12j_second(*_rows(a, 4))
    if kind is Kind.FIFTEEN_J1:
        return chain_3nj_first(*_rows(a, 5))
    if kind is Kind.FIFTEEN_J2:
        return chain_3nj_second(*_rows(a, 5))
    if kind is Kind.EIGHTEEN_J1:
        return chain_3nj_first(*_rows(a, 6))
    if kind is Kind.EIGHTEEN_J2:
        return chain_3nj_second(*_rows(a, 6))
    if kind is Kind.FIFTEEN_J3:
        return wigner15j_third(*a)
    if kind is Kind.FIFTEEN_J4:
        return wigner15j_fourth(*a)
    if kind is Kind.FIFTEEN_J5:
        # printed rows -> columns k, k', j, l, l'
        return wigner15j_fifth(a[0::5], a[1::5], a[2::5], a[3::5], a[4::5])
    raise WignerDomainError(f"unhandled kind {kind}")  # pragma: no cover
