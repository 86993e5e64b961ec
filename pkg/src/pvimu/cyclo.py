"""Exact arithmetic in the real cyclotomic fields Q(zeta), zeta = 2cos(pi/n).

The minimal polynomial of 2cos(pi/n) is extracted from the cyclotomic
polynomial Phi_{2n}: for n >= 2 it is palindromic of even degree 2d, and
x^{-d} Phi_{2n}(x) rewrites through x^k + x^{-k} = P_k(z), z = x + 1/x,
giving a monic integer polynomial of degree d = phi(2n)/2 with 2cos(pi/n)
as a root. P_k follows the recurrence P_0 = 2, P_1 = z,
P_k = z P_{k-1} - P_{k-2}.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from . import polys


class IncompatibleField(ValueError):
    """Requested cosine denominator does not divide the context order."""


class ContextMismatch(ValueError):
    """Operands belong to different field contexts."""


def _psi(n):
    """Minimal polynomial of 2cos(pi/n), integer coefficient list."""
    if n == 1:
        return [2, 1]
    phi = polys.cyclotomic(2 * n)
    d = (len(phi) - 1) // 2
    acc = [phi[d]]
    pk_prev = [2]
    pk = [0, 1]
    for k in range(1, d + 1):
        acc = polys.add(acc, polys.scale(pk, phi[d + k]))
        pk_prev, pk = pk, polys.sub(polys.mul([0, 1], pk), pk_prev)
    return [int(c) for c in acc]


class FieldContext:
    """The field Q(2cos(pi/n)); immutable, shareable."""

    _cache: dict[int, "FieldContext"] = {}

    def __new__(cls, n: int):
        if n < 1:
            raise ValueError("n must be a positive integer")
        if n in cls._cache:
            return cls._cache[n]
        self = super().__new__(cls)
        self.n = n
        self.minimal_polynomial = _psi(n)
        self.degree = len(self.minimal_polynomial) - 1
        self._zeta_cache = {}
        cls._cache[n] = self
        return self

    def __repr__(self):
        return f"FieldContext(n={self.n}, degree={self.degree})"

    def element(self, coeffs) -> "FieldElement":
        cs = [Fraction(c) for c in coeffs]
        cs = polys.mod(cs, self.minimal_polynomial)
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def zeta(self):
        """The generator 2cos(pi/n)."""
        return self.element([0, 1])

    def from_rational(self, q):
        return self.element([Fraction(q)])

    def from_cos(self, p: int, q: int) -> "FieldElement":
        """The element -2cos(pi p / q); q must divide n."""
        if q < 1 or self.n % q != 0:
            raise IncompatibleField(f"denominator {q} does not divide n={self.n}")
        k = abs(p) * (self.n // q)
        # P_k(zeta) = 2cos(k pi / n), reduced mod the minimal polynomial
        m = self.minimal_polynomial
        pk_prev, pk = [Fraction(2)], polys.mod([Fraction(0), Fraction(1)], m)
        if k == 0:
            res = pk_prev
        elif k == 1:
            res = pk
        else:
            for _ in range(k - 1):
                pk_prev, pk = pk, polys.mod(
                    polys.sub(polys.mul([0, 1], pk), pk_prev), m)
            res = pk
        return self.element(polys.neg(res))

    def zeta_real(self, dps: int):
        """High-precision value of 2cos(pi/n)."""
        if dps not in self._zeta_cache:
            with mpmath.workdps(dps + 10):
                self._zeta_cache[dps] = 2 * mpmath.cos(mpmath.pi / self.n)
        return self._zeta_cache[dps]


class FieldElement:
    """Element of a FieldContext: reduced coefficient vector over Q."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ContextMismatch(
                    f"contexts n={self.ctx.n} and n={other.ctx.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self.ctx.element(polys.add(list(self.coeffs), list(o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return self.ctx.element([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self.ctx.element(polys.sub(list(self.coeffs), list(o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self.ctx.element(polys.mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        m = self.ctx.minimal_polynomial
        gcd, u = polys.ext_euclid(list(self.coeffs), m)
        # minimal polynomial is irreducible, so gcd is a nonzero constant
        c = gcd[0]
        return self.ctx.element([ui / c for ui in u])

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return (self.coeffs[0] == other
                    and all(c == 0 for c in self.coeffs[1:]))
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.n, self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        return f"FieldElement(n={self.ctx.n}, {list(self.coeffs)})"

    def embed(self, dps: int = 30):
        """Real embedding at zeta = 2cos(pi/n), accurate to ~dps digits."""
        z = self.ctx.zeta_real(dps)
        with mpmath.workdps(dps + 10):
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def __float__(self):
        return float(self.embed(30))

    def to_json(self):
        return {"n": self.ctx.n,
                "coeffs": [[str(c.numerator), str(c.denominator)]
                           for c in self.coeffs]}

    @staticmethod
    def from_json(obj):
        ctx = FieldContext(int(obj["n"]))
        cs = [Fraction(int(num), int(den)) for num, den in obj["coeffs"]]
        return ctx.element(cs)


def field_new(n: int) -> FieldContext:
    return FieldContext(n)


def elem_from_cos(p: int, q: int, ctx: FieldContext) -> FieldElement:
    return ctx.from_cos(p, q)


def embed_real(e: FieldElement, precision: int = 30):
    return e.embed(precision)


def lift(e: FieldElement, ctx: FieldContext) -> FieldElement:
    """Reinterpret e inside a larger context whose n is a multiple."""
    if ctx.n % e.ctx.n != 0:
        raise IncompatibleField(
            f"cannot lift from n={e.ctx.n} into n={ctx.n}")
    k = ctx.n // e.ctx.n
    zk = -ctx.from_cos(k, ctx.n)  # P_k(zeta_big) = 2cos(k pi / n_big)
    acc = ctx.zero()
    for c in reversed(e.coeffs):
        acc = acc * zk + ctx.from_rational(c)
    return acc


def common_context(*ns: int) -> FieldContext:
    """Context whose order is the lcm of the given orders."""
    n = 1
    for m in ns:
        n = n * m // math.gcd(n, m)
    return FieldContext(n)
