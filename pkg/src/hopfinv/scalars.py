"""Exact scalars: rationals and elements of cyclotomic fields Q(zeta_r).

Rationals are plain :class:`fractions.Fraction` values.  Cyclotomic
elements are stored in the power basis ``1, z, ..., z^(deg - 1)`` of
``Q[x] / Phi_r(x)``.  Any rational promotes into any cyclotomic field;
elements of two different cyclotomic fields never mix.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence, Union

__all__ = [
    "Cyclotomic",
    "Scalar",
    "as_scalar",
    "cyclotomic_polynomial",
    "format_scalar",
    "is_zero",
    "parse_scalar",
    "scalar_arith",
    "zeta",
]


# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficient lists lowest degree first

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod(a, b):
    """Quotient and remainder of ``a`` by nonzero ``b`` (exact over Q)."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> tuple:
    """Integer coefficients of Phi_r, lowest degree first.

    Computed as (x^r - 1) divided by the product of Phi_d over the proper
    divisors d of r.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"conductor must be a positive integer, got {r!r}")
    num = [-1] + [0] * (r - 1) + [1]
    den = [1]
    for d in _divisors(r)[:-1]:
        den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    q, rem = _poly_divmod(num, den)
    assert not rem, "cyclotomic division left a remainder"
    assert all(c.denominator == 1 for c in q)
    return tuple(int(c) for c in q)


@lru_cache(maxsize=None)
def _reduction_table(r):
    """Power-basis coordinates of x^k mod Phi_r for deg <= k < 2*deg - 1."""
    phi = cyclotomic_polynomial(r)
    deg = len(phi) - 1
    table = []
    # x^deg = -(phi_0 + ... + phi_{deg-1} x^{deg-1})
    cur = [-c for c in phi[:-1]]
    for _ in range(max(deg - 1, 1)):
        table.append(tuple(cur))
        # multiply by x
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(table)


class Cyclotomic:
    """An element of Q(zeta_r) in the power basis of zeta_r."""

    __slots__ = ("r", "coeffs", "_hash")

    def __init__(self, r: int, coeffs: Sequence = ()):
        phi = cyclotomic_polynomial(r)
        deg = len(phi) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            _, cs = _poly_divmod(cs, list(phi))
        cs = list(cs) + [Fraction(0)] * (deg - len(cs))
        self.r = r
        self.coeffs = tuple(cs)
        self._hash = None

    # -- construction helpers --------------------------------------------

    @classmethod
    def _raw(cls, r, coeffs):
        obj = cls.__new__(cls)
        obj.r = r
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_part(self) -> Fraction:
        return self.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.r != self.r:
                raise ValueError(
                    f"cannot mix elements of Q(zeta_{self.r}) and Q(zeta_{other.r})")
            return other.coeffs
        if isinstance(other, (int, Rational)):
            return (Fraction(other),) + (Fraction(0),) * (self.degree - 1)
        return None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.r, tuple(a + b for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.r, tuple(a - b for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic._raw(self.r, tuple(b - a for a, b in zip(self.coeffs, o)))

    def __neg__(self):
        return Cyclotomic._raw(self.r, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            c = Fraction(other)
            return Cyclotomic._raw(self.r, tuple(a * c for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        deg = self.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o):
                if b:
                    prod[i + j] += a * b
        out = prod[:deg]
        table = _reduction_table(self.r)
        for k in range(deg, 2 * deg - 1):
            c = prod[k]
            if c:
                row = table[k - deg]
                for i in range(deg):
                    out[i] += c * row[i]
        return Cyclotomic._raw(self.r, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self.r)
        # extended Euclid: find u with u * self == 1 mod Phi_r
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.r)]
        r0, r1 = phi, _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        return Cyclotomic(self.r, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Cyclotomic):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            c = Fraction(other)
            return Cyclotomic._raw(self.r, tuple(a / c for a in self.coeffs))
        if isinstance(other, Cyclotomic):
            self._coerce(other)
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.inverse() * Fraction(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Cyclotomic(self.r, [1])
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.r != self.r:
                # only rational values can coincide across fields
                return self.is_rational() and other.is_rational() and \
                    self.coeffs[0] == other.coeffs[0]
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.r, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Cyclotomic({self.r}, {format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, Cyclotomic]


def zeta(r: int, k: int = 1) -> Scalar:
    """The primitive root exp(2*pi*i*k/r) as a scalar.

    For r <= 2 the result is the rational +1 or -1.
    """
    if r <= 2:
        return Fraction((-1) ** (k % r)) if r == 2 else Fraction(1)
    k %= r
    return Cyclotomic(r, [0] * k + [1])


def as_scalar(x) -> Scalar:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def is_zero(x) -> bool:
    return x == 0


def scalar_arith(a, b, op: str) -> Scalar:
    """Apply ``op`` (add, sub, mul, div) to two scalars."""
    a = as_scalar(a)
    b = as_scalar(b)
    if isinstance(a, Cyclotomic) and isinstance(b, Cyclotomic) and a.r != b.r:
        raise ValueError(f"incompatible conductors {a.r} and {b.r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# text form

def _format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """``a/b`` for rationals, ``[c0,c1,...]@r`` for cyclotomic elements."""
    if isinstance(x, Cyclotomic):
        return "[" + ",".join(_format_rational(c) for c in x.coeffs) + f"]@{x.r}"
    return _format_rational(Fraction(x))


_RAT = r"-?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_CYC_RE = re.compile(rf"^\[({_RAT}(?:,{_RAT})*)\]@(\d+)$")


def _parse_rational(s: str) -> Fraction:
    if not _RAT_RE.match(s):
        raise ValueError(f"malformed rational {s!r}")
    q = Fraction(s)
    return q


def parse_scalar(text: str) -> Scalar:
    s = text.strip()
    m = _CYC_RE.match(s)
    if m:
        r = int(m.group(2))
        if r < 1:
            raise ValueError(f"bad conductor in {text!r}")
        coeffs = [_parse_rational(c) for c in m.group(1).split(",")]
        deg = len(cyclotomic_polynomial(r)) - 1
        if len(coeffs) != deg:
            raise ValueError(
                f"Q(zeta_{r}) elements need {deg} coefficients, got {len(coeffs)}")
        return Cyclotomic(r, coeffs)
    return _parse_rational(s)
