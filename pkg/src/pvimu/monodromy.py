"""Canonical 2x2 monodromy matrices of a triple and the trace identities.

The three matrices are unipotent (det 1, trace 2); their pairwise product
traces encode the squared coordinates, and the full product trace carries
the invariant Q. Recovery inverts that: signs come out only up to the
two-sign equivalence, which is exactly why TripleClass exists.
"""
from __future__ import annotations

import cmath
import math

from . import triples as tr


class ZeroPivot(ValueError):
    """x1 = 0 makes the canonical form break down (Tr(M1 M2) = 2)."""


class Inconsistent(ValueError):
    """No sign assignment reproduces the third matrix."""


def _cx(e):
    if isinstance(e, complex):
        return e
    if isinstance(e, (int, float)):
        return complex(e)
    return complex(float(e))


class Matrix2C:
    """2x2 matrix; entries are exact field elements or python numbers."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    @property
    def entries(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, other):
        return Matrix2C(self.a * other.a + self.b * other.c,
                        self.a * other.b + self.b * other.d,
                        self.c * other.a + self.d * other.c,
                        self.c * other.b + self.d * other.d)

    @property
    def trace(self):
        return self.a + self.d

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self):
        dt = self.det
        return Matrix2C(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def to_complex(self) -> "Matrix2C":
        return Matrix2C(_cx(self.a), _cx(self.b), _cx(self.c), _cx(self.d))

    def approx_eq(self, other, tol: float = 1e-10) -> bool:
        s, o = self.to_complex(), other.to_complex()
        scale = max([1.0] + [abs(x) for row in s.entries for x in row])
        return all(abs(x - y) <= tol * scale
                   for rs, ro in zip(s.entries, o.entries)
                   for x, y in zip(rs, ro))

    def __eq__(self, other):
        return (isinstance(other, Matrix2C)
                and (self.a, self.b, self.c, self.d)
                == (other.a, other.b, other.c, other.d))

    __hash__ = None

    def to_json(self):
        c = self.to_complex()
        return [[[z.real, z.imag] for z in row] for row in c.entries]

    def __repr__(self):
        return f"Matrix2C({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


class CanonicalMatrices:
    """(M1, M2, M3) plus the bookkeeping of any pre-applied braid.

    Unpacks like the plain 3-tuple. `permutation` maps output slot to the
    source slot its coordinate came from ((1, 2, 3) when untouched);
    `braid` is the word that was applied; `triple` is the triple the
    matrices were actually read off from.
    """

    __slots__ = ("m1", "m2", "m3", "permutation", "braid", "triple")

    def __init__(self, m1, m2, m3, permutation, braid, triple):
        self.m1, self.m2, self.m3 = m1, m2, m3
        self.permutation = permutation
        self.braid = braid
        self.triple = triple

    @property
    def matrices(self):
        return (self.m1, self.m2, self.m3)

    def __iter__(self):
        return iter((self.m1, self.m2, self.m3))


def canonical_matrices(t: tr.Triple, permute: bool = False) -> CanonicalMatrices:
    """M1 = [[1,-x1],[0,1]], M2 = [[1,0],[x1,1]], M3 from the remaining
    coordinates; requires x1 != 0.

    With permute=True a zero x1 is moved out of the pivot slot by the braid
    (x1, x2, x3) -> (x3, -x2, x1), recorded in the result; admissibility
    guarantees the incoming x3 is nonzero. Without it: ZeroPivot.
    """
    if t.backing == "exact":
        t0 = tr._common_field(t)
        ctx = t0.coords[0].ctx
        zero, one = ctx.zero(), ctx.one()
        pivot_zero = t0.coords[0].is_zero()
    else:
        t0 = t
        zero, one = 0.0, 1.0
        pivot_zero = abs(t0.coords[0]) < 1e-12
    perm = (1, 2, 3)
    braid = tr.BraidWord(())
    if pivot_zero:
        if not permute:
            raise ZeroPivot("x1 = 0; pass permute=True to shift the pivot")
        braid = tr.B2_INV
        t0 = tr.braid_apply(braid, t0)
        perm = (3, 2, 1)
    x1, x2, x3 = t0.coords
    m1 = Matrix2C(one, -x1, zero, one)
    m2 = Matrix2C(one, zero, x1, one)
    m3 = Matrix2C(one + x2 * x3 / x1, -(x2 * x2) / x1,
                  (x3 * x3) / x1, one - x2 * x3 / x1)
    return CanonicalMatrices(m1, m2, m3, perm, braid, t0)


def triple_from_matrices(m1: Matrix2C, m2: Matrix2C, m3: Matrix2C,
                         tol: float = 1e-10) -> tr.TripleClass:
    """Invert canonical_matrices up to the two-sign equivalence.

    x1 is read directly off M1; the squares of x2, x3 come from the product
    traces and their relative sign from the corner entry of M3.
    """
    c1, c2, c3 = (m.to_complex() for m in (m1, m2, m3))
    for m in (c1, c2, c3):
        if abs(m.det - 1) > tol or abs(m.trace - 2) > tol:
            raise Inconsistent("matrices are not unipotent with det 1")
    x1 = -c1.b
    scale = max(1.0, abs(x1))
    if (abs(c2.c - x1) > tol * scale or abs(c1.c) > tol or abs(c2.b) > tol
            or abs(c1.a - 1) > tol or abs(c2.a - 1) > tol):
        raise Inconsistent("M1, M2 are not in canonical shape")
    if abs(x1) <= tol:
        raise Inconsistent("Tr(M1 M2) = 2: signs cannot be resolved")
    x2sq = 2 - (c3 @ c2).trace
    x3sq = 2 - (c1 @ c3).trace
    x2x3 = (c3.a - 1) * x1
    if (abs(c3.b * x1 + x2sq) > tol * max(1.0, abs(x2sq))
            or abs(c3.c * x1 - x3sq) > tol * max(1.0, abs(x3sq))
            or abs(x2sq * x3sq - x2x3 * x2x3)
            > tol * max(1.0, abs(x2x3) ** 2)):
        raise Inconsistent("M3 entries disagree with the trace data")
    x2 = cmath.sqrt(x2sq)
    x3 = x2x3 / x2 if abs(x2) > tol else cmath.sqrt(x3sq)
    coords = []
    for z in (x1, x2, x3):
        if abs(z.imag) > tol * max(1.0, abs(z)):
            raise Inconsistent(f"non-real coordinate {z}")
        coords.append(z.real)
    try:
        t = tr.Triple(tuple(coords), backing="float")
    except tr.InadmissibleTriple as exc:
        raise Inconsistent(str(exc)) from exc
    return tr.TripleClass(t)


class MInfinityReport:
    """Outcome of the M-infinity consistency check; truthy when it holds."""

    __slots__ = ("ok", "trace", "expected_trace",
                 "eigenvalues", "expected_eigenvalues")

    def __init__(self, ok, trace, expected_trace, eigenvalues, expected):
        self.ok = ok
        self.trace = trace
        self.expected_trace = expected_trace
        self.eigenvalues = eigenvalues
        self.expected_eigenvalues = expected

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return (f"MInfinityReport(ok={self.ok}, trace={self.trace:.6g}, "
                f"expected={self.expected_trace:.6g})")


def m_infinity_check(m1: Matrix2C, m2: Matrix2C, m3: Matrix2C, mu,
                     tol: float = 1e-10) -> MInfinityReport:
    """Verify (M3 M2 M1)^{-1} has trace 2cos(2 pi mu) and eigenvalues
    exp(+-2 pi i mu)."""
    if isinstance(mu, tr.MuClass):
        mu = mu.representative_mu
    mu_f = float(mu)
    minf = (m3 @ m2 @ m1).to_complex().inverse()
    t = minf.trace
    expected_trace = 2 * math.cos(2 * math.pi * mu_f)
    disc = cmath.sqrt(t * t - 4)
    eig = ((t + disc) / 2, (t - disc) / 2)
    exp_eig = (cmath.exp(2j * math.pi * mu_f), cmath.exp(-2j * math.pi * mu_f))
    direct = max(abs(eig[0] - exp_eig[0]), abs(eig[1] - exp_eig[1]))
    swapped = max(abs(eig[0] - exp_eig[1]), abs(eig[1] - exp_eig[0]))
    ok = (abs(t - expected_trace) <= tol * max(1.0, abs(expected_trace))
          and min(direct, swapped) <= tol)
    return MInfinityReport(ok, t, expected_trace, eig, exp_eig)
