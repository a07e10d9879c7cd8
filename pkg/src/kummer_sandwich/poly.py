"""Dense univariate and sparse bivariate polynomials over any commutative ring.

Coefficients are duck-typed: Fractions, QuadExt, Fp, or even UniPoly instances
(used for polynomials whose coefficients depend on an extra parameter).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence


def _zero_like(c):
    return c * 0


class UniPoly:
    """Dense polynomial, coefficients in ascending degree order.

    The zero polynomial has ``degree == -1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c=1) -> "UniPoly":
        return cls([0] * n + [c])

    @classmethod
    def gen(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence, lead=1) -> "UniPoly":
        out = cls([lead])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    # -- basic protocol -----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    # -- arithmetic -----------------------------------------------------------
    @staticmethod
    def _lift(other) -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [_zero_like(self.coeffs[0])] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def __rmul__(self, other):
        return UniPoly(other * c for c in self.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UniPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "UniPoly":
        return UniPoly(a * c for a in self.coeffs)

    def shift(self, n: int) -> "UniPoly":
        """Multiply by ``u**n``; negative n divides and requires exact divisibility."""
        if n >= 0:
            return UniPoly([0] * n + list(self.coeffs))
        if any(self[k] for k in range(-n)):
            raise ValueError(f"polynomial not divisible by u^{-n}")
        return UniPoly(self.coeffs[-n:])

    def map_coeffs(self, fn: Callable) -> "UniPoly":
        return UniPoly(fn(c) for c in self.coeffs)

    def __call__(self, x):
        """Horner evaluation; x may be any ring element compatible with the coefficients."""
        if not self.coeffs:
            return x * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * self.coeffs[k] for k in range(1, len(self.coeffs)))

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reversed(self, n: int) -> "UniPoly":
        """``u**n * f(1/u)``; requires n >= degree."""
        if n < self.degree:
            raise ValueError(f"cannot reverse degree {self.degree} polynomial at weight {n}")
        padded = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return UniPoly(padded[::-1])

    # -- field operations ---------------------------------------------------
    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [0] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return UniPoly(quo), UniPoly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def monic(self) -> "UniPoly":
        return self.scale(1 / self.leading) if self.coeffs else self

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def valuation(self, g: "UniPoly") -> int:
        """Largest n with g**n dividing self; the zero polynomial has infinite order."""
        if not self:
            return INFINITE_ORDER
        if g.degree < 1:
            raise ValueError("valuation needs a non-constant divisor")
        n, f = 0, self
        while True:
            q, r = f.divmod(g)
            if r:
                return n
            f, n = q, n + 1

    def order_at_infinity(self, weight: int) -> int:
        """Order at u = oo of a section of weight ``weight``: ``weight - degree``."""
        if not self:
            return INFINITE_ORDER
        return weight - self.degree


INFINITE_ORDER = 10**9


def u() -> UniPoly:
    return UniPoly.gen()


# ------------------------------------------------------------------------------
# Bivariate
# ------------------------------------------------------------------------------

class BiPoly:
    """Sparse polynomial in two variables (x, w), stored as ``{(i, j): coeff}`` for x**i w**j."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def w(cls) -> "BiPoly":
        return cls({(0, 1): Fraction(1)})

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @staticmethod
    def _lift(other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.constant(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out[k] + a * b if k in out else a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BiPoly.constant(Fraction(1))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"BiPoly({self.terms!r})"

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def degree_w(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def __call__(self, x, w):
        acc = x * 0
        for (i, j), c in self.terms.items():
            acc = acc + c * x**i * w**j
        return acc

    def map_coeffs(self, fn: Callable) -> "BiPoly":
        return BiPoly({k: fn(c) for k, c in self.terms.items()})

    def coefficient_matrix(self) -> list[list]:
        """``m[i][j]`` = coefficient of x**i w**j (dense, zeros filled with 0)."""
        dx, dw = self.degree_x, self.degree_w
        m = [[0] * (dw + 1) for _ in range(dx + 1)]
        for (i, j), c in self.terms.items():
            m[i][j] = c
        return m
