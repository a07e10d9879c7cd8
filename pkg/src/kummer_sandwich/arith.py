"""Exact scalars and prime-field arithmetic.

Three scalar worlds are used throughout the package:

* :class:`fractions.Fraction` for exact rationals (aliased as ``Rational``),
* :class:`QuadExt` for elements ``a + b*sqrt(d)`` of a quadratic extension of Q,
* :class:`Fp` for elements of a prime field, produced by a :class:`PrimeField`.

All three support ``+ - * /``, ``**`` with integer exponents and comparison to 0,
so the polynomial and surface code can stay agnostic of the field it runs over.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Optional, Union

Rational = Fraction
Scalar = Union[int, Fraction, "QuadExt", "Fp"]


class BadReduction(ValueError):
    """A rational value cannot be reduced modulo p (p divides its denominator)."""


# --------------------------------------------------------------------------
# Rationals
# --------------------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    """Parse ``"n/d"`` or ``"n"`` into a Fraction.

    >>> parse_rational("-10/4")
    Fraction(-5, 2)
    """
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    num, sep, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(q) -> str:
    """Inverse of :func:`parse_rational`: ``"n/d"``, or ``"n"`` when d = 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_sqrt(q) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None if it is not a square."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def is_zero(x) -> bool:
    return x == 0


# --------------------------------------------------------------------------
# Quadratic extension Q(sqrt d)
# --------------------------------------------------------------------------

class QuadExt:
    """An element ``a + b*sqrt(d)`` with rational a, b and a fixed non-square d.

    Construct values through :func:`quad`, which collapses to a Fraction when
    d is a rational square or b = 0.  Mixing elements with different d raises.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = Fraction(d)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) with Q(sqrt {other.d})")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def _make(self, a, b):
        return quad(a, b, self.d)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return self._make(self.a + c[0], self.b + c[1])

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return self._make(self.a - c[0], self.b - c[1])

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        return self._make(c[0] - self.a, c[1] - self.b)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        a2, b2 = c
        return self._make(self.a * a2 + self.b * b2 * self.d, self.a * b2 + self.b * a2)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic extension")
        return self._make(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in quadratic extension")
            return self._make(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        if self.d < 0:
            raise TypeError("complex value has no float")
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadExt({format_rational(self.a)}, {format_rational(self.b)}, d={format_rational(self.d)})"

    def __str__(self):
        return f"{format_rational(self.a)} + {format_rational(self.b)}*sqrt({format_rational(self.d)})"


def quad(a, b, d):
    """Build ``a + b*sqrt(d)``, collapsing to a Fraction whenever that is exact."""
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    if b == 0:
        return a
    r = rational_sqrt(d)
    if r is not None:
        return a + b * r
    return QuadExt(a, b, d)


def sqrt_exact(q):
    """Square root of a rational: a Fraction if q is a square, else the QuadExt ``sqrt(q)``."""
    q = Fraction(q)
    r = rational_sqrt(q)
    if r is not None:
        return r
    return QuadExt(0, 1, q)


# --------------------------------------------------------------------------
# Prime fields
# --------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24; plenty for this package."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Fp:
    """An element of the prime field of a :class:`PrimeField`."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _val(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return reduce_mod_p(other, self.p)
        return None

    def __add__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else Fp(o, self.p) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"


def reduce_mod_p(q, p: int) -> int:
    """Reduce an int or Fraction into [0, p); raises BadReduction if p divides the denominator."""
    if isinstance(q, int):
        return q % p
    q = Fraction(q)
    if q.denominator % p == 0:
        raise BadReduction(f"{format_rational(q)} has no reduction mod {p}")
    return q.numerator * pow(q.denominator, -1, p) % p


class PrimeField:
    """Context object for arithmetic modulo an odd prime p.

    Factorial tables are built lazily on first use, so large primes used only for
    sampling (p = 2**31 - 1) never allocate them.
    """

    def __init__(self, p: int, *, check: bool = True):
        if check and (p < 3 or not is_prime(p)):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.half = (p - 1) // 2

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            return x
        return Fp(reduce_mod_p(x, self.p), self.p)

    def reduce(self, q) -> int:
        return reduce_mod_p(q, self.p)

    def elements(self) -> Iterator[Fp]:
        for v in range(self.p):
            yield Fp(v, self.p)

    @cached_property
    def factorials(self) -> list[int]:
        p = self.p
        table = [1] * p
        for k in range(1, p):
            table[k] = table[k - 1] * k % p
        return table

    @cached_property
    def inverse_factorials(self) -> list[int]:
        p = self.p
        table = [1] * p
        table[p - 1] = pow(self.factorials[p - 1], -1, p)
        for k in range(p - 1, 0, -1):
            table[k - 1] = table[k] * k % p
        return table

    @cached_property
    def residue_table(self) -> list[int]:
        """``table[a]`` is the Legendre symbol of a, as an int in {-1, 0, 1}."""
        p = self.p
        table = [-1] * p
        table[0] = 0
        for r in range(1, self.half + 1):
            table[r * r % p] = 1
        return table

    @cached_property
    def smallest_nonresidue(self) -> int:
        return next(n for n in range(2, self.p) if self.residue_table[n] == -1)


def fp_pow(base: int, exp: int, ctx: PrimeField) -> int:
    """Square-and-multiply ``base**exp mod p``."""
    if exp < 0:
        raise ValueError("negative exponent")
    p = ctx.p
    result, b = 1 % p, base % p
    while exp:
        if exp & 1:
            result = result * b % p
        b = b * b % p
        exp >>= 1
    return result


def legendre_symbol(a: int, ctx: PrimeField) -> int:
    """Euler's criterion, returned as -1, 0 or 1."""
    r = fp_pow(a % ctx.p, ctx.half, ctx)
    return -1 if r == ctx.p - 1 else r


def sqrt_mod_p(a: int, ctx: PrimeField) -> Optional[int]:
    """Tonelli-Shanks square root; returns the smaller of the two roots, or None."""
    p = ctx.p
    a %= p
    if a == 0:
        return 0
    if legendre_symbol(a, ctx) != 1:
        return None
    if p % 4 == 3:
        r = fp_pow(a, (p + 1) // 4, ctx)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, ctx) != -1:
        z += 1
    m, c, t, r = s, fp_pow(z, q, ctx), fp_pow(a, q, ctx), fp_pow(a, (q + 1) // 2, ctx)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = fp_pow(c, 1 << (m - i - 1), ctx)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def binomials_mod_p(m: int, ctx: PrimeField) -> list[int]:
    """Row ``C(m, k) mod p`` for 0 <= k <= m, from the factorial tables."""
    if not 0 <= m < ctx.p:
        raise ValueError(f"binomial row m={m} needs 0 <= m < p={ctx.p}")
    p = ctx.p
    f, inv = ctx.factorials, ctx.inverse_factorials
    return [f[m] * inv[k] % p * inv[m - k] % p for k in range(m + 1)]
