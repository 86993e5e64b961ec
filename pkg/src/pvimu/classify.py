"""Finite-orbit classification: the four-cosine equation, family matching,
and identification of a triple among the five classified orbits.

The search for rational solutions of

    cos 2 pi f1 + cos 2 pi f2 + cos 2 pi f3 + cos 2 pi f4 = 0

normalizes each angle to [0, 1/2] (cos 2 pi f is even about f = 1/2), pairs
partial sums in high precision, and then proves every candidate: either by
a rational cancellation pattern (an exact identity) or by exact summation
in the cyclotomic field of the lcm denominator.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction

import mpmath

from . import triples as tr
from .cyclo import FieldContext


class NotASolution(ValueError):
    """Quadruple does not satisfy the four-cosine equation."""


class ResourceLimit(RuntimeError):
    """Exact verification would need a field beyond the degree cap."""


class OutOfRange(ValueError):
    """cos of the stepped angle falls outside [-1, 1]."""


class Irrational(ValueError):
    """Stepped angle is not recognized as rational."""

    def __init__(self, msg, orbit_finite=None):
        super().__init__(msg)
        self.orbit_finite = orbit_finite


def _norm_angle(f) -> Fraction:
    """Map to [0, 1/2] using cos 2 pi f = cos 2 pi (1 - f)."""
    f = Fraction(f) % 1
    return f if f <= Fraction(1, 2) else 1 - f


class CosQuadruple:
    """Sorted normalized solution of the four-cosine equation."""

    __slots__ = ("phis",)

    def __init__(self, phis, verify=False, degree_cap=600):
        phis = tuple(sorted(_norm_angle(p) for p in phis))
        if len(phis) != 4:
            raise ValueError("need four angles")
        self.phis = phis
        if verify and not _prove_quadruple(phis, degree_cap):
            raise NotASolution(str(phis))

    def __eq__(self, other):
        return isinstance(other, CosQuadruple) and self.phis == other.phis

    def __hash__(self):
        return hash(self.phis)

    def __repr__(self):
        return "CosQuadruple({})".format(", ".join(str(p) for p in self.phis))

    def to_json(self):
        return [[p.numerator, p.denominator] for p in self.phis]


def _cancel_pairing(phis):
    """True if the four split into two pairs with p + q = 1/2 each
    (each pair's cosines cancel exactly)."""
    a, b, c, d = phis
    half = Fraction(1, 2)
    return ((a + b == half and c + d == half)
            or (a + c == half and b + d == half)
            or (a + d == half and b + c == half))


def _trident_pattern(phis):
    """True if some angle phi pairs with the fold of phi+1/3 and phi+2/3
    (the three cosines at mutual angle 2 pi/3 sum to zero), and the fourth
    angle is 1/4 or matches the remaining structure."""
    lst = list(phis)
    for i in range(4):
        phi = lst[i]
        rest = lst[:i] + lst[i + 1:]
        want = sorted((_norm_angle(phi + Fraction(1, 3)),
                       _norm_angle(phi + Fraction(2, 3))))
        for j in range(3):
            fourth = rest[j]
            pair = sorted(rest[:j] + rest[j + 1:])
            if pair == want and fourth == Fraction(1, 4):
                return True
    return False


def _prove_quadruple(phis, degree_cap=600):
    """Exact proof that the normalized quadruple satisfies the equation."""
    if _cancel_pairing(phis):
        return True
    if _trident_pattern(phis):
        return True
    dens = [p.denominator for p in phis]
    L = 1
    for d in dens:
        L = L * d // math.gcd(L, d)
    ctx = FieldContext(L)
    if ctx.degree > degree_cap:
        raise ResourceLimit(
            f"field degree {ctx.degree} over cap {degree_cap} for lcm {L}")
    total = ctx.zero()
    for p in phis:
        # cos 2 pi (a/b) = -(1/2) * (-2 cos(pi * 2a / b))
        total = total - ctx.from_cos(2 * p.numerator, p.denominator) \
            * Fraction(1, 2)
    return total.is_zero()


def trig_quadruple_search(max_denominator: int, degree_cap: int = 600):
    """All solutions with denominators <= max_denominator, deduplicated
    modulo permutations and f -> 1 - f. Exhaustive and exactly verified."""
    if max_denominator < 2:
        raise ValueError("max_denominator must be at least 2")
    values = set()
    for q in range(1, max_denominator + 1):
        for p in range(0, q // 2 + 1):
            f = Fraction(p, q)
            if f <= Fraction(1, 2):
                values.add(f)
    values = sorted(values)
    dps = 60
    with mpmath.workdps(dps):
        cosv = {f: mpmath.cos(2 * mpmath.pi * f.numerator / f.denominator)
                for f in values}
        scale_exp = 38
        scale = mpmath.mpf(10) ** scale_exp
        pairs = []
        buckets = {}
        n = len(values)
        for i in range(n):
            for j in range(i, n):
                s = cosv[values[i]] + cosv[values[j]]
                key = int(mpmath.floor(s * scale))
                idx = len(pairs)
                pairs.append((values[i], values[j], s))
                buckets.setdefault(key, []).append(idx)
        found = set()
        for idx, (f1, f2, s) in enumerate(pairs):
            target = -s
            base = int(mpmath.floor(target * scale))
            for key in (base - 1, base, base + 1):
                for jdx in buckets.get(key, ()):
                    if jdx < idx:
                        continue
                    f3, f4, s2 = pairs[jdx]
                    if abs(s + s2) < mpmath.mpf(10) ** -30:
                        found.add(tuple(sorted((f1, f2, f3, f4))))
    out = []
    for phis in sorted(found):
        if _prove_quadruple(phis, degree_cap):
            out.append(CosQuadruple(phis))
    return out


SPORADIC = {
    "a": CosQuadruple((Fraction(1, 30), Fraction(11, 30),
                       Fraction(2, 5), Fraction(1, 6))),
    "b": CosQuadruple((Fraction(7, 30), Fraction(17, 30),
                       Fraction(1, 5), Fraction(1, 6))),
    "c": CosQuadruple((Fraction(1, 7), Fraction(2, 7),
                       Fraction(3, 7), Fraction(1, 6))),
}


def shift_variant(q: CosQuadruple) -> CosQuadruple:
    """The quadruple with every angle shifted by 1/2 (all cosines negated).

    The solution set is closed under this shift, but the classical taxonomy
    lists representatives only up to permutations and f -> 1 - f, so the
    shifted partner of a listed solution can surface as a separate
    normalized tuple. Matching canonicalizes over the shift."""
    return CosQuadruple(tuple(p + Fraction(1, 2) for p in q.phis))


def match_quadruple_family(q: CosQuadruple) -> str:
    """Family tag per the trivial-solution taxonomy; sporadics a, b, c;
    'none' when nothing applies. The half-shift partner of a quadruple
    receives the same tag as the listed representative."""
    tag = _match_direct(q)
    if tag == "none":
        tag = _match_direct(shift_variant(q))
    return tag


def _match_direct(q: CosQuadruple) -> str:
    phis = q.phis
    if not _prove_quadruple(phis):
        raise NotASolution(str(phis))
    quarter = Fraction(1, 4)
    zero = Fraction(0)

    if quarter in phis:
        rest = list(phis)
        rest.remove(quarter)
        rest_sorted = sorted(rest)
        if rest_sorted == sorted((Fraction(1, 3), Fraction(1, 10),
                                  Fraction(3, 10))):
            return "d1"
        for phi in rest:
            others = list(rest)
            others.remove(phi)
            want = sorted((_norm_angle(phi + Fraction(1, 3)),
                           _norm_angle(phi + Fraction(2, 3))))
            if sorted(others) == want:
                return "d2"
        if quarter in rest:
            others = list(rest)
            others.remove(quarter)
            if others[0] + others[1] == Fraction(1, 2):
                return "d3"
    if zero in phis:
        rest = list(phis)
        rest.remove(zero)
        rest_sorted = sorted(rest)
        if rest_sorted == sorted((Fraction(1, 3), Fraction(1, 4),
                                  Fraction(1, 3))):
            return "e1"
        if Fraction(1, 2) in rest:
            others = list(rest)
            others.remove(Fraction(1, 2))
            if others[0] + others[1] == Fraction(1, 2):
                return "e2"
        if rest_sorted == sorted((Fraction(1, 3), Fraction(1, 5),
                                  Fraction(2, 5))):
            return "e3"
    if _cancel_pairing(phis):
        return "f"
    for tag, sq in SPORADIC.items():
        if q == sq:
            return tag
    return "none"


# ------------------------------------------------------------ angle steps

class AngleTriple:
    """Rational angles (r1, r2, r3) with x_i = -2 cos(pi r_i)."""

    __slots__ = ("r",)

    def __init__(self, r1, r2, r3):
        self.r = (Fraction(r1), Fraction(r2), Fraction(r3))
        if not all(0 <= ri <= 1 for ri in self.r):
            raise ValueError("angles must lie in [0, 1]")

    def to_triple(self) -> tr.Triple:
        return tr.Triple.from_cos(tuple((ri.numerator, ri.denominator)
                                        for ri in self.r))

    def __repr__(self):
        return f"AngleTriple{self.r}"


def braid_angle_step(angles: AngleTriple, which=(1, 2, 3),
                     max_den: int = 120) -> AngleTriple:
    """One angle-space braid step: cos(pi r'_k) = cos(pi r_k)
    + 2 cos(pi r_i) cos(pi r_j); returns (1 - r_i, r_j, r'_k).

    which is a permutation (i, j, k) of (1, 2, 3) naming the roles."""
    if sorted(which) != [1, 2, 3]:
        raise ValueError("which must be a permutation of (1, 2, 3)")
    i, j, k = (w - 1 for w in which)
    ri, rj, rk = angles.r[i], angles.r[j], angles.r[k]
    val = (math.cos(math.pi * rk)
           + 2 * math.cos(math.pi * ri) * math.cos(math.pi * rj))
    if abs(val) > 1 + 1e-12:
        raise OutOfRange(f"cos(pi r') = {val}")
    val = max(-1.0, min(1.0, val))
    rp = math.acos(val) / math.pi
    guess = Fraction(rp).limit_denominator(max_den)
    if abs(math.cos(math.pi * guess) - val) < 1e-12:
        # confirm exactly: with X = -2 cos(pi r) the step reads
        # X' = X_k - X_i X_j
        L = 1
        for d in (ri.denominator, rj.denominator, rk.denominator,
                  guess.denominator):
            L = L * d // math.gcd(L, d)
        ctx = FieldContext(L)
        xp = ctx.from_cos(guess.numerator, guess.denominator)
        xk = ctx.from_cos(rk.numerator, rk.denominator)
        xi = ctx.from_cos(ri.numerator, ri.denominator)
        xj = ctx.from_cos(rj.numerator, rj.denominator)
        if xp == xk - xi * xj:
            return AngleTriple(1 - ri, rj, guess)
    try:
        tr.orbit_enumerate(angles.to_triple(), "full_B3", budget=2000)
        finite = True
    except tr.BudgetExceeded:
        finite = False
    raise Irrational(f"r' = {rp} not recognized with denominator <= {max_den}",
                     orbit_finite=finite)


# ------------------------------------------------------- orbit identification

class OrbitKind(enum.Enum):
    TETRAHEDRON = "Tetrahedron"
    CUBE = "Cube"
    ICOSAHEDRON = "Icosahedron"
    GREAT_ICOSAHEDRON = "GreatIcosahedron"
    GREAT_DODECAHEDRON = "GreatDodecahedron"
    INFINITE = "Infinite"
    RESONANT = "Resonant"


class OrbitInfo:
    def __init__(self, kind, seed_angles, mu, b3_size, p3_size, coxeter):
        self.kind = kind
        self.seed_angles = seed_angles
        self.mu = mu
        self.b3_size = b3_size
        self.p3_size = p3_size
        self.coxeter = coxeter

    @property
    def seed(self) -> tr.Triple:
        return tr.Triple.from_cos(self.seed_angles)

    def b3_orbit(self):
        return tr.orbit_enumerate(self.seed, "full_B3")


ORBITS = {
    OrbitKind.TETRAHEDRON: OrbitInfo(
        OrbitKind.TETRAHEDRON, ((1, 2), (1, 3), (1, 3)),
        Fraction(-1, 4), 4, 4, "A3"),
    OrbitKind.CUBE: OrbitInfo(
        OrbitKind.CUBE, ((1, 3), (1, 2), (1, 4)),
        Fraction(-1, 3), 9, 3, "B3"),
    OrbitKind.ICOSAHEDRON: OrbitInfo(
        OrbitKind.ICOSAHEDRON, ((1, 2), (1, 3), (1, 5)),
        Fraction(-2, 5), 10, 10, "H3"),
    OrbitKind.GREAT_ICOSAHEDRON: OrbitInfo(
        OrbitKind.GREAT_ICOSAHEDRON, ((1, 2), (1, 3), (2, 5)),
        Fraction(-1, 5), 10, 10, "H3"),
    OrbitKind.GREAT_DODECAHEDRON: OrbitInfo(
        OrbitKind.GREAT_DODECAHEDRON, ((1, 2), (1, 5), (2, 5)),
        Fraction(-1, 3), 18, 18, "H3"),
}

_SIGNATURES = None


def _orbit_signature(orbit):
    return tuple(sorted(tuple(round(v, 9) for v in cls.representative.embed())
                        for cls in orbit))


def _known_signatures():
    global _SIGNATURES
    if _SIGNATURES is None:
        _SIGNATURES = {}
        for kind, info in ORBITS.items():
            _SIGNATURES[_orbit_signature(info.b3_orbit())] = kind
    return _SIGNATURES


def classify_triple(t: tr.Triple, budget: int = 2000) -> OrbitKind:
    """Resonant, one of the five finite orbits, or Infinite."""
    q = tr.quadratic_invariant(t)
    if isinstance(q, float):
        if abs(q) < 1e-9 or abs(q - 4) < 1e-9:
            return OrbitKind.RESONANT
        raise ValueError("classification requires exact backing")
    if q == 0 or q == 4:
        return OrbitKind.RESONANT
    try:
        orbit = tr.orbit_enumerate(t, "full_B3", budget=budget)
    except tr.BudgetExceeded:
        return OrbitKind.INFINITE
    sig = _orbit_signature(orbit)
    kind = _known_signatures().get(sig)
    if kind is None:
        raise RuntimeError(
            f"finite orbit of size {len(orbit)} does not match any of the "
            "five classified orbits")
    return kind
