"""Exact univariate polynomial arithmetic on coefficient lists.

A polynomial is a list of Fractions (or ints), index = power, no trailing
zeros after normalize(). The zero polynomial is the empty list.
"""
from __future__ import annotations

from fractions import Fraction


def normalize(p):
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return list(p[:n])


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    res = list(a)
    for i, c in enumerate(b):
        res[i] += c
    return normalize(res)


def neg(a):
    return [-c for c in a]


def sub(a, b):
    return add(a, neg(b))


def mul(a, b):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            res[i + j] += ca * cb
    return normalize(res)


def scale(a, c):
    if c == 0:
        return []
    return [ca * c for ca in a]


def divmod_exact(a, b):
    """Quotient and remainder over the rationals. b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        d = len(a) - len(b)
        q[d] = c
        for i, cb in enumerate(b):
            a[d + i] -= c * cb
        a = normalize(a)
    return normalize(q), a


def div_exact_int(a, b):
    """Exact division of integer polynomials; remainder must vanish."""
    q, r = divmod_exact(a, b)
    if r:
        raise ValueError("division not exact")
    out = []
    for c in q:
        if c.denominator != 1:
            raise ValueError("quotient not integral")
        out.append(int(c))
    return out


def mod(a, b):
    return divmod_exact(a, b)[1]


def deriv(a):
    return normalize([i * c for i, c in enumerate(a)][1:])


def eval_at(a, x):
    """Horner evaluation; works for Fractions, floats, mpmath, complex."""
    acc = 0 * x if a else 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def monic(a):
    if not a:
        return a
    lead = a[-1]
    return [Fraction(c, 1) / lead for c in a]


def poly_gcd(a, b):
    """Monic gcd over the rationals."""
    a, b = normalize(a), normalize(b)
    while b:
        a, b = b, mod(a, b)
    return monic(a)


def ext_euclid(a, m):
    """Find u with u*a = gcd(a, m) mod m. Used for inverses mod m."""
    r0, r1 = normalize([Fraction(c) for c in m]), normalize([Fraction(c) for c in a])
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r2 = divmod_exact(r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, sub(s0, mul(q, s1))
    return r0, s0


def cyclotomic(m, _cache={1: [-1, 1]}):
    """The m-th cyclotomic polynomial, integer coefficients."""
    if m in _cache:
        return list(_cache[m])
    num = [0] * m + [1]
    num[0] = -1
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            den = mul(den, cyclotomic(d))
    res = div_exact_int(num, den)
    _cache[m] = res
    return list(res)
