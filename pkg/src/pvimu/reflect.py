"""Rank-3 reflection realization of a triple: Gram form, reflections,
braid action on generator systems, and group closure.

All matrix work is exact over one cyclotomic context; closure never falls
back to floats, since drift would corrupt group orders.
"""
from __future__ import annotations

import math
from fractions import Fraction

from . import triples as tr
from .cyclo import FieldContext, common_context, lift


class CapExceeded(RuntimeError):
    """Closure grew past the element cap (infinite or very large group)."""

    def __init__(self, cap):
        super().__init__(f"group closure exceeded {cap} elements")
        self.cap = cap


def _ctx_of(t: tr.Triple) -> FieldContext:
    if t.backing != "exact":
        raise ValueError("reflection machinery requires an exact triple")
    t = tr._common_field(t)
    return t.coords[0].ctx, t


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def _mat_transpose(a):
    return tuple(zip(*a))


def _mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


class GramMatrix:
    """Symmetric form with diagonal 2 and off-diagonal (x1, x2, x3)."""

    __slots__ = ("m", "det")

    def __init__(self, t: tr.Triple):
        ctx, t = _ctx_of(t)
        x1, x2, x3 = t.coords
        two = ctx.one() * 2
        self.m = ((two, x1, x3),
                  (x1, two, x2),
                  (x3, x2, two))
        q = tr.quadratic_invariant(t)
        self.det = (ctx.one() * 8) - q * 2

    @property
    def degenerate(self) -> bool:
        return self.det.is_zero()

    def leading_minors(self):
        m = self.m
        return (m[0][0],
                m[0][0] * m[1][1] - m[0][1] * m[1][0],
                self.det)

    def __eq__(self, other):
        return isinstance(other, GramMatrix) and _mat_eq(self.m, other.m)

    def __repr__(self):
        return f"GramMatrix({self.m[0][1]}, {self.m[1][2]}, {self.m[0][2]})"


def gram(t: tr.Triple) -> GramMatrix:
    return GramMatrix(t)


def is_positive_definite(g: GramMatrix) -> bool:
    """Sylvester criterion on the exact leading minors."""
    for minor in g.leading_minors():
        if minor.is_zero():
            return False
        if float(minor) <= 0:
            return False
    return True


def _mat_vec(a, v):
    return tuple(sum(a[i][k] * v[k] for k in range(len(v)))
                 for i in range(len(a)))


class ReflectionSystem:
    """Generators (R1, R2, R3), their root vectors, and the space form.

    Matrices stay written in the original basis, so braided systems
    generate literally the same closure set; the Gram of a system is the
    pairing matrix of its roots under the invariant space form."""

    __slots__ = ("r1", "r2", "r3", "roots", "space")

    def __init__(self, r1, r2, r3, roots, space):
        self.r1 = r1
        self.r2 = r2
        self.r3 = r3
        self.roots = roots
        self.space = space

    @property
    def generators(self):
        return (self.r1, self.r2, self.r3)

    def _pair(self, u, v):
        g = self.space.m
        return sum(u[i] * g[i][j] * v[j] for i in range(3) for j in range(3))

    @property
    def gram(self) -> GramMatrix:
        f1, f2, f3 = self.roots
        return GramMatrix(tr.Triple(
            (self._pair(f1, f2), self._pair(f2, f3), self._pair(f1, f3)),
            check=False))

    def check_orthogonal(self) -> bool:
        g = self.space.m
        for r in self.generators:
            if not _mat_eq(_mat_mul(_mat_mul(_mat_transpose(r), g), r), g):
                return False
        return True


def reflections(t: tr.Triple) -> ReflectionSystem:
    """R_i(x) = x - (e_i, x) e_i in the basis (e1, e2, e3)."""
    ctx, t = _ctx_of(t)
    x1, x2, x3 = t.coords
    one, zero = ctx.one(), ctx.zero()
    r1 = ((-one, -x1, -x3),
          (zero, one, zero),
          (zero, zero, one))
    r2 = ((one, zero, zero),
          (-x1, -one, -x2),
          (zero, zero, one))
    r3 = ((one, zero, zero),
          (zero, one, zero),
          (-x3, -x2, -one))
    roots = ((one, zero, zero), (zero, one, zero), (zero, zero, one))
    return ReflectionSystem(r1, r2, r3, roots, GramMatrix(t))


def braid_on_generators(w: tr.BraidWord, rs: ReflectionSystem) -> ReflectionSystem:
    """Letter 1: (R1,R2,R3) -> (R2, R2 R1 R2, R3); letter 2:
    (R1,R2,R3) -> (R1, R3, R3 R2 R3); negative letters invert.
    Roots move along: R2 R1 R2 is the reflection in R2(f1)."""
    r1, r2, r3 = rs.generators
    f1, f2, f3 = rs.roots
    for letter in w.letters:
        if letter == 1:
            r1, r2, r3 = r2, _mat_mul(_mat_mul(r2, r1), r2), r3
            f1, f2, f3 = f2, _mat_vec(r1, f1), f3
        elif letter == -1:
            r1, r2, r3 = _mat_mul(_mat_mul(r1, r2), r1), r1, r3
            f1, f2, f3 = _mat_vec(r2, f2), f1, f3
        elif letter == 2:
            r1, r2, r3 = r1, r3, _mat_mul(_mat_mul(r3, r2), r3)
            f1, f2, f3 = f1, f3, _mat_vec(r2, f2)
        elif letter == -2:
            r1, r2, r3 = r1, _mat_mul(_mat_mul(r2, r3), r2), r2
            f1, f2, f3 = f1, _mat_vec(r3, f3), f2
        else:
            raise ValueError(f"bad letter {letter}")
    return ReflectionSystem(r1, r2, r3, (f1, f2, f3), rs.space)


def _freeze(mat):
    return tuple(tuple(e.coeffs for e in row) for row in mat)


def group_closure(rs: ReflectionSystem, cap: int = 20000) -> dict:
    """BFS closure of the generated group; exact element equality.

    Returns {"order": n, "coxeter_type": tag} with coxeter_type one of
    A3/B3/H3 for orders 24/48/120 and None otherwise."""
    gens = rs.generators
    ctx = gens[0][0][0].ctx
    one, zero = ctx.one(), ctx.zero()
    ident = tuple(tuple(one if i == j else zero for j in range(3))
                  for i in range(3))
    seen = {_freeze(ident)}
    frontier = [ident]
    elements = 1
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = _mat_mul(m, g)
                key = _freeze(prod)
                if key not in seen:
                    seen.add(key)
                    elements += 1
                    if elements > cap:
                        raise CapExceeded(cap)
                    nxt.append(prod)
        frontier = nxt
    tag = {24: "A3", 48: "B3", 120: "H3"}.get(elements)
    return {"order": elements, "coxeter_type": tag}


def rotation_order(x, max_den: int = 200):
    """Order of R_i R_j read off from x = -2 cos(pi m / n): the product is a
    rotation by 2 pi m / n, so the order is n. None when x is not minus twice
    the cosine of a rational angle (within max_den)."""
    v = float(x) / -2.0
    if abs(v) > 1:
        return None
    r = Fraction(math.acos(v) / math.pi).limit_denominator(max_den)
    if abs(math.cos(math.pi * r) + float(x) / 2) > 1e-9:
        return None
    ctx = x.ctx
    big = common_context(ctx.n, r.denominator)
    if big.from_cos(r.numerator, r.denominator) != lift(x, big):
        return None
    return r.denominator


def coxeter_relations(t: tr.Triple) -> dict:
    """Exponents n_ij with (R_i R_j)^{n_ij} = identity, keyed by the pair."""
    ctx, t = _ctx_of(t)
    x1, x2, x3 = t.coords
    return {"n12": rotation_order(x1),
            "n23": rotation_order(x2),
            "n13": rotation_order(x3)}
