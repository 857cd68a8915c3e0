"""Exact number system for recoupling coefficients.

Everything a Wigner symbol evaluates to is a rational multiple of the square
root of a positive rational.  This module provides that closed type
(:class:`Surd`), a fallback sum of surds over different radicands
(:class:`SurdVec`), and the factored-factorial bookkeeping that lets radicands
built from factorial ratios be made square-free by exponent parity alone.

Rationals are :class:`fractions.Fraction`, which already keeps lowest terms
with a positive denominator.
"""
from __future__ import annotations

import bisect
import math
import threading
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

BigRational = Fraction

__all__ = [
    "BigRational",
    "FactoredPositive",
    "Surd",
    "SurdVec",
    "ExactDomainError",
    "factorial_factored",
    "sqrt_split",
    "surd_mul",
    "surd_div",
    "surd_add",
    "to_decimal",
    "format_exact",
    "parse_exact",
    "escalation_count",
    "reset_escalation_count",
]


class ExactDomainError(ValueError):
    """Argument outside the mathematical domain of an exact operation."""


# ---------------------------------------------------------------------------
# primes and factorials

_lock = threading.RLock()
_primes: List[int] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
_prime_limit = 50
_fact_factored: List["FactoredPositive"] = []
_fact_int: List[int] = [1]


def _primes_upto(n: int) -> List[int]:
    global _primes, _prime_limit
    if n >= _prime_limit:
        with _lock:
            if n >= _prime_limit:
                limit = max(n + 1, 2 * _prime_limit)
                sieve = bytearray([1]) * limit
                sieve[0:2] = b"\x00\x00"
                for p in range(2, math.isqrt(limit - 1) + 1):
                    if sieve[p]:
                        sieve[p * p::p] = bytearray(len(range(p * p, limit, p)))
                # publish the list before the limit so readers never see a short list
                _primes = [i for i in range(limit) if sieve[i]]
                _prime_limit = limit
    primes = _primes
    return primes[:bisect.bisect_right(primes, n)]


def _legendre(p: int, n: int) -> int:
    e = 0
    q = n // p
    while q:
        e += q
        q //= p
    return e


def factorial_factored(n: int) -> "FactoredPositive":
    """Prime factorization of ``n!`` (cached, grows on demand)."""
    if n < 0:
        raise ExactDomainError(f"factorial of negative integer {n}")
    cache = _fact_factored
    if n < len(cache):
        return cache[n]
    with _lock:
        while len(cache) <= n:
            m = len(cache)
            cache.append(FactoredPositive._trusted({p: _legendre(p, m) for p in _primes_upto(m)}))
    return cache[n]


def factorial(n: int) -> int:
    """``n!`` as a plain integer, cached."""
    if n < 0:
        raise ExactDomainError(f"factorial of negative integer {n}")
    cache = _fact_int
    if n < len(cache):
        return cache[n]
    with _lock:
        while len(cache) <= n:
            cache.append(cache[-1] * len(cache))
    return cache[n]


class FactoredPositive:
    """A positive rational held as ``{prime: exponent}``.

    Exponents may be negative; zero exponents are never stored.
    """

    __slots__ = ("_exp",)

    def __init__(self, exponents: Mapping[int, int] = ()):
        exps = dict(exponents)
        for p, e in exps.items():
            if p < 2 or not _is_small_prime(p):
                raise ExactDomainError(f"{p} is not a prime")
        self._exp = {p: e for p, e in exps.items() if e}

    @classmethod
    def _trusted(cls, exps: Dict[int, int]) -> "FactoredPositive":
        obj = object.__new__(cls)
        obj._exp = {p: e for p, e in exps.items() if e}
        return obj

    @classmethod
    def of_int(cls, n: int) -> "FactoredPositive":
        """Factor a small positive integer by trial division."""
        if n < 1:
            raise ExactDomainError(f"cannot factor {n}")
        exps: Dict[int, int] = {}
        d = 2
        while d * d <= n:
            while n % d == 0:
                exps[d] = exps.get(d, 0) + 1
                n //= d
            d += 1 if d == 2 else 2
        if n > 1:
            exps[n] = exps.get(n, 0) + 1
        return cls._trusted(exps)

    @classmethod
    def of_fraction(cls, q: Fraction) -> "FactoredPositive":
        q = Fraction(q)
        if q <= 0:
            raise ExactDomainError(f"not a positive rational: {q}")
        return cls.of_int(q.numerator) / cls.of_int(q.denominator)

    @property
    def exponents(self) -> Dict[int, int]:
        return dict(self._exp)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._exp.items()))

    def __mul__(self, other: "FactoredPositive") -> "FactoredPositive":
        exps = dict(self._exp)
        for p, e in other._exp.items():
            exps[p] = exps.get(p, 0) + e
        return FactoredPositive._trusted(exps)

    def __truediv__(self, other: "FactoredPositive") -> "FactoredPositive":
        exps = dict(self._exp)
        for p, e in other._exp.items():
            exps[p] = exps.get(p, 0) - e
        return FactoredPositive._trusted(exps)

    def __pow__(self, k: int) -> "FactoredPositive":
        return FactoredPositive._trusted({p: e * k for p, e in self._exp.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactoredPositive):
            return NotImplemented
        return self._exp == other._exp

    def __hash__(self) -> int:
        return hash(frozenset(self._exp.items()))

    def value(self) -> Fraction:
        num = den = 1
        for p, e in self._exp.items():
            if e > 0:
                num *= p ** e
            else:
                den *= p ** -e
        return Fraction(num, den)

    def __repr__(self) -> str:
        return f"FactoredPositive({dict(sorted(self._exp.items()))})"


def _is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def factorial_ratio(num: Iterable[int], den: Iterable[int]) -> FactoredPositive:
    """``prod(n! for n in num) / prod(n! for n in den)`` in factored form."""
    exps: Dict[int, int] = {}
    for n in num:
        for p, e in factorial_factored(n)._exp.items():
            exps[p] = exps.get(p, 0) + e
    for n in den:
        for p, e in factorial_factored(n)._exp.items():
            exps[p] = exps.get(p, 0) - e
    return FactoredPositive._trusted(exps)


def sqrt_split(q: FactoredPositive) -> Tuple[Fraction, Fraction]:
    """Split ``q`` as ``outside**2 * inside`` with ``inside`` square-free.

    Odd exponents keep their sign inside the root, so ``3**-3`` splits as
    ``(1/3)**2 * (1/3)``; this is the form the reference values use.
    """
    on = od = in_ = id_ = 1
    for p, e in q._exp.items():
        if e > 0:
            half, odd = divmod(e, 2)
            on *= p ** half
            if odd:
                in_ *= p
        else:
            half, odd = divmod(-e, 2)
            od *= p ** half
            if odd:
                id_ *= p
    return Fraction(on, od), Fraction(in_, id_)


def _canon(coeff: Fraction, n: int, d: int) -> Tuple[Fraction, Fraction]:
    """Canonical ``(coeff, n/d)`` for square-free coprime ``n``, ``d``.

    A radicand prime sits in the numerator iff its exponent in value**2 is
    positive, i.e. iff it does not divide the coefficient's denominator.
    """
    if coeff == 0:
        return Fraction(0), Fraction(1)
    g = math.gcd(n, coeff.denominator)
    h = math.gcd(d, coeff.numerator)
    if g != 1 or h != 1:
        n = n // g * h
        d = d // h * g
        coeff = coeff * g / h
    return coeff, Fraction(n, d)


# ---------------------------------------------------------------------------
# surds

class Surd:
    """``coeff * sqrt(radicand)`` in canonical form.

    The radicand is a positive rational whose numerator and denominator are
    square-free (they are coprime by lowest terms).  Zero is ``Surd(0, 1)``.
    """

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff=0, radicand=1):
        coeff = Fraction(coeff)
        radicand = Fraction(radicand)
        if radicand < 0:
            raise ExactDomainError(f"negative radicand {radicand}")
        if coeff == 0 or radicand == 0:
            coeff, radicand = Fraction(0), Fraction(1)
        else:
            out, radicand = sqrt_split(FactoredPositive.of_fraction(radicand))
            coeff, radicand = _canon(coeff * out, radicand.numerator, radicand.denominator)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "radicand", radicand)

    @classmethod
    def _make(cls, coeff: Fraction, radicand: Fraction) -> "Surd":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        if coeff == 0:
            radicand = Fraction(1)
        object.__setattr__(obj, "coeff", coeff)
        object.__setattr__(obj, "radicand", radicand)
        return obj

    @classmethod
    def sqrt_of(cls, q: FactoredPositive, scale=1) -> "Surd":
        """``scale * sqrt(q)`` for a factored positive rational."""
        out, inside = sqrt_split(q)
        return cls._make(*_canon(Fraction(scale) * out, inside.numerator, inside.denominator))

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    def __reduce__(self):
        return (Surd._make, (self.coeff, self.radicand))

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __bool__(self) -> bool:
        return self.coeff != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Surd):
            return self.coeff == other.coeff and self.radicand == other.radicand
        if isinstance(other, SurdVec):
            return other == self
        if isinstance(other, (int, Fraction)):
            return self.radicand == 1 and self.coeff == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeff, self.radicand))

    def __neg__(self) -> "Surd":
        return Surd._make(-self.coeff, self.radicand)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = self.radicand
            return Surd._make(*_canon(self.coeff * other, r.numerator, r.denominator))
        if isinstance(other, Surd):
            return surd_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("Surd division by zero")
            r = self.radicand
            return Surd._make(*_canon(self.coeff / other, r.numerator, r.denominator))
        if isinstance(other, Surd):
            return surd_div(self, other)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Surd._make(Fraction(other), Fraction(1))
        if isinstance(other, Surd):
            return surd_add(self, other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Surd._make(Fraction(other), Fraction(1))
        if isinstance(other, Surd):
            return surd_add(self, -other)
        return NotImplemented

    def square(self) -> Fraction:
        """Exact value**2."""
        return self.coeff * self.coeff * self.radicand

    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def __float__(self) -> float:
        return float(to_decimal(self, 17))

    def to_decimal(self, digits: int = 12) -> str:
        return to_decimal(self, digits)

    def __str__(self) -> str:
        return format_exact(self)

    def __repr__(self) -> str:
        return f"Surd({self.coeff!s}, {self.radicand!s})"


ZERO = Surd._make(Fraction(0), Fraction(1))
ONE = Surd._make(Fraction(1), Fraction(1))


def _squarefree_product(a: int, b: int) -> Tuple[int, int]:
    """For square-free ``a``, ``b``: ``a*b = g**2 * r`` with ``r`` square-free."""
    g = math.gcd(a, b)
    return g, (a // g) * (b // g)


def surd_mul(a: Surd, b: Surd) -> Surd:
    if a.coeff == 0 or b.coeff == 0:
        return ZERO
    ra, rb = a.radicand, b.radicand
    gn, n = _squarefree_product(ra.numerator, rb.numerator)
    gd, d = _squarefree_product(ra.denominator, rb.denominator)
    # n, d square-free; a common factor h gives sqrt(n/d) = sqrt((n/h)/(d/h))
    h = math.gcd(n, d)
    return Surd._make(*_canon(a.coeff * b.coeff * Fraction(gn, gd), n // h, d // h))


def surd_div(a: Surd, b: Surd) -> Surd:
    if b.coeff == 0:
        raise ZeroDivisionError("Surd division by zero")
    r = b.radicand
    inv = Surd._make(*_canon(1 / b.coeff, r.denominator, r.numerator))
    return surd_mul(a, inv)


def _field(s: Surd) -> Tuple[int, Fraction]:
    """``(K, c)`` with ``s = c*sqrt(K)`` and ``K`` a square-free integer."""
    r = s.radicand
    return r.numerator * r.denominator, s.coeff / r.denominator


def _from_field(k: int, c: Fraction) -> Surd:
    return Surd._make(*_canon(Fraction(c), k, 1))


def surd_add(a: Surd, b: Surd) -> Union[Surd, "SurdVec"]:
    """Sum of two surds; a :class:`SurdVec` when they lie in different quadratic fields."""
    if b.coeff == 0:
        return a
    if a.coeff == 0:
        return b
    ka, ca = _field(a)
    kb, cb = _field(b)
    if ka == kb:
        return _from_field(ka, ca + cb)
    return SurdVec([a, b])


class SurdVec:
    """Exact sum of surds lying in pairwise distinct quadratic fields.

    Terms are kept sorted by field so equal values compare equal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Surd] = ()):
        acc = SurdSum()
        for t in terms:
            acc.add(t)
        self.terms: Tuple[Surd, ...] = acc.terms()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other):
        if isinstance(other, Surd):
            return SurdVec(self.terms + (other,))
        if isinstance(other, SurdVec):
            return SurdVec(self.terms + other.terms)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "SurdVec":
        return SurdVec(-t for t in self.terms)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Surd, int, Fraction)):
            return SurdVec(t * other for t in self.terms)
        if isinstance(other, SurdVec):
            return SurdVec(s * t for s in self.terms for t in other.terms)
        return NotImplemented

    __rmul__ = __mul__

    def simplify(self) -> Union[Surd, "SurdVec"]:
        """Collapse to a :class:`Surd` when at most one term remains."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1:
            return self.terms[0]
        return self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SurdVec):
            return self.terms == other.terms
        if isinstance(other, Surd):
            s = self.simplify()
            return isinstance(s, Surd) and s.coeff == other.coeff and s.radicand == other.radicand
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.terms)

    def __float__(self) -> float:
        return math.fsum(float(t) for t in self.terms)

    def __repr__(self) -> str:
        return f"SurdVec({list(self.terms)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = format_exact(self.terms[0])
        for t in self.terms[1:]:
            s = format_exact(t)
            out += s if s.startswith("-") else "+" + s
        return out


# Symbol sums that leave a single quadratic field are counted here.
_escalations = 0
_esc_lock = threading.Lock()


def escalation_count() -> int:
    return _escalations


def reset_escalation_count() -> None:
    global _escalations
    with _esc_lock:
        _escalations = 0


class SurdSum:
    """Accumulator for sums of surds, keyed by quadratic field."""

    __slots__ = ("_acc",)

    def __init__(self):
        self._acc: Dict[int, Fraction] = {}

    def add(self, s, weight=1) -> None:
        if isinstance(s, SurdVec):
            for t in s.terms:
                self.add(t, weight)
        elif s.coeff:
            k, c = _field(s)
            acc = self._acc
            acc[k] = acc.get(k, 0) + weight * c

    def terms(self) -> Tuple[Surd, ...]:
        return tuple(_from_field(k, c) for k, c in sorted(self._acc.items()) if c)

    def result(self) -> Union[Surd, SurdVec]:
        """The sum; a SurdVec (counted as an escalation) if it spans several fields."""
        global _escalations
        terms = self.terms()
        if not terms:
            return ZERO
        if len(terms) == 1:
            return terms[0]
        with _esc_lock:
            _escalations += 1
        vec = object.__new__(SurdVec)
        vec.terms = terms
        return vec


# ---------------------------------------------------------------------------
# decimal output

def _round_sqrt_scaled(num: int, den: int, shift: int) -> int:
    """Round ``sqrt(num/den) * 10**shift`` to the nearest integer (ties to even)."""
    if shift >= 0:
        n, d = num * 10 ** (2 * shift), den
    else:
        n, d = num, den * 10 ** (-2 * shift)
    fl = math.isqrt(n // d)
    # exact comparison against fl + 1/2: 4 n >= (2 fl + 1)^2 d
    lhs, rhs = 4 * n, (2 * fl + 1) ** 2 * d
    if lhs > rhs or (lhs == rhs and fl % 2):
        fl += 1
    return fl


def _decimal_digits(sq_num: int, sq_den: int, digits: int) -> Tuple[int, int]:
    """Significand ``N`` (``digits`` digits) and exponent ``E`` with |v| ~ N * 10**(E-digits+1)."""
    # E = floor(log10 v) where v**2 = sq_num/sq_den
    est = (len(str(sq_num)) - len(str(sq_den))) // 2
    E = est
    while True:
        # v >= 10**E  <=>  sq_num >= sq_den * 10**(2E)
        if _ge_pow10(sq_num, sq_den, 2 * E):
            if _ge_pow10(sq_num, sq_den, 2 * E + 2):
                E += 1
                continue
            break
        E -= 1
    N = _round_sqrt_scaled(sq_num, sq_den, digits - 1 - E)
    if N >= 10 ** digits:
        E += 1
        N = _round_sqrt_scaled(sq_num, sq_den, digits - 1 - E)
    return N, E


def _ge_pow10(num: int, den: int, k: int) -> bool:
    if k >= 0:
        return num >= den * 10 ** k
    return num * 10 ** (-k) >= den


def _format_g(negative: bool, N: int, E: int, digits: int) -> str:
    s = str(N).rjust(digits, "0")
    sign = "-" if negative else ""
    if -4 <= E < digits:
        if E >= 0:
            ip, fp = s[: E + 1], s[E + 1:]
        else:
            ip, fp = "0", "0" * (-E - 1) + s
        fp = fp.rstrip("0")
        return sign + ip + ("." + fp if fp else "")
    mant = s[0]
    rest = s[1:].rstrip("0")
    if rest:
        mant += "." + rest
    exp = f"{'-' if E < 0 else '+'}{abs(E):02d}"
    return f"{sign}{mant}e{exp}"


def to_decimal(x: Union[Surd, SurdVec], digits: int = 12) -> str:
    """Correctly rounded decimal string with ``digits`` significant digits.

    Follows printf ``%g`` conventions: trailing zeros dropped, scientific
    notation below 1e-4 or at/above ``10**digits``.
    """
    if digits < 1:
        raise ExactDomainError("digits must be >= 1")
    if isinstance(x, SurdVec):
        return _vec_to_decimal(x, digits)
    if x.coeff == 0:
        return "0"
    c, r = x.coeff, x.radicand
    sq_num = c.numerator ** 2 * r.numerator
    sq_den = c.denominator ** 2 * r.denominator
    N, E = _decimal_digits(sq_num, sq_den, digits)
    return _format_g(c < 0, N, E, digits)


def _vec_to_decimal(x: SurdVec, digits: int) -> str:
    from decimal import Decimal, localcontext

    if not x.terms:
        return "0"
    guard = digits + 30
    with localcontext() as ctx:
        ctx.prec = guard
        total = Decimal(0)
        for t in x.terms:
            total += Decimal(t.coeff.numerator) / Decimal(t.coeff.denominator) * (
                Decimal(t.radicand.numerator) / Decimal(t.radicand.denominator)
            ).sqrt()
    if total == 0:
        return "0"
    q = Fraction(total)
    N, E = _decimal_digits(q.numerator ** 2, q.denominator ** 2, digits)
    return _format_g(q < 0, N, E, digits)


# ---------------------------------------------------------------------------
# exact text form

def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_exact(x: Surd, blank_zero: bool = False) -> str:
    """Render as ``p/q*(r/s)^(1/2)``; zero is ``0`` (or ``""`` with ``blank_zero=True``)."""
    if isinstance(x, SurdVec):
        s = x.simplify()
        if isinstance(s, SurdVec):
            return str(s)
        x = s
    if x.coeff == 0:
        return "" if blank_zero else "0"
    head = _frac_str(x.coeff)
    if x.radicand == 1:
        return head
    return f"{head}*({_frac_str(x.radicand)})^(1/2)"


def parse_exact(text: str) -> Surd:
    """Inverse of :func:`format_exact` for canonical surds."""
    t = text.strip()
    if t == "":
        return ZERO
    if "*" in t:
        head, _, tail = t.partition("*")
        if not (tail.startswith("(") and tail.endswith(")^(1/2)")):
            raise ValueError(f"malformed surd: {text!r}")
        rad = Fraction(tail[1:-len(")^(1/2)")])
    else:
        head, rad = t, Fraction(1)
    return Surd(Fraction(head), rad)
