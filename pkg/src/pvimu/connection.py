"""Dictionary between monodromy triples and local behaviour of branches.

A branch at a critical point is pinned down by an exponent sigma and a
leading coefficient a: near 0 and 1 the branch looks like a * t**(1-sigma)
in the local variable t, near infinity like a * x**sigma. This module
computes those local data from a triple (coefficient_at), rebuilds the
2x2 monodromy matrices from the data at the origin
(monodromy_from_asymptotics), and inverts the data back to a triple class
(triple_from_asymptotics). Internals run at 40 working digits; results
come back as machine floats and complexes.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from . import triples as tr
from .classify import OutOfRange
from .monodromy import Matrix2C

_DPS = 40
_J = mpmath.mpc(0, 1)

# numeric guards, all on machine-float inputs
_ZERO_SIGMA = 1e-12
_WALL = 1e-12
_DATA_TOL = 1e-8
_SNAP = 1e-6


class DegenerateTriple(ValueError):
    """Both coordinates that would fix the coefficient vanish, or the
    exponent collides with a pole of the gamma factors."""


class SingularC(ValueError):
    """The diagonalizing frame stayed singular after a gauge retry."""


class InconsistentData(ValueError):
    """Local data do not come from any admissible real triple."""


# -------------------------------------------------------------- data types

def _normalize_point(point):
    if isinstance(point, str):
        p = point.strip().lower()
        if p in ("0", "1"):
            return p
        if p in ("inf", "infty", "infinity", "oo"):
            return "inf"
    elif isinstance(point, (int, float)) and not isinstance(point, bool):
        if point == 0:
            return "0"
        if point == 1:
            return "1"
        if math.isinf(point):
            return "inf"
    raise ValueError(f"critical point must be 0, 1 or inf, got {point!r}")


class AsymptoticDatum:
    """Leading behaviour of a branch at one critical point.

    index_l = 1 - sigma is the branching index: the cycle length of the
    branch under analytic continuation around the point is the denominator
    of index_l. At 0 and 1 the branch exponent is index_l itself; at
    infinity it is sigma.
    """

    __slots__ = ("point", "sigma", "index_l", "a")

    def __init__(self, point, sigma, a):
        point = _normalize_point(point)
        sigma = float(sigma)
        a = complex(a)
        if not 0 <= sigma < 1:
            raise OutOfRange(f"sigma = {sigma} outside [0, 1)")
        if a == 0:
            raise ValueError("leading coefficient must be nonzero")
        if sigma == 0 and point == "0" and a == 1:
            raise ValueError("a = 1 with sigma = 0 at the origin leaves no branch")
        self.point = point
        self.sigma = sigma
        self.index_l = 1.0 - sigma
        self.a = a

    def __repr__(self):
        return (f"AsymptoticDatum(point={self.point!r}, sigma={self.sigma:.6g}, "
                f"a={self.a:.6g})")

    def to_json(self):
        return {"point": self.point, "sigma": self.sigma,
                "l": self.index_l, "a": [self.a.real, self.a.imag]}


class ThetaParams:
    """Gauge data of the matrix family: theta_inf = 2 mu fixes the diagonal
    monodromy at infinity, s scales the off-diagonal entries, r is the
    leftover diagonal gauge freedom."""

    __slots__ = ("theta_inf", "s", "r")

    def __init__(self, theta_inf, s, r=1.0):
        if r == 0:
            raise ValueError("gauge parameter r must be nonzero")
        self.theta_inf = float(theta_inf)
        self.s = complex(s)
        self.r = complex(r)

    def __repr__(self):
        return (f"ThetaParams(theta_inf={self.theta_inf:.6g}, "
                f"s={self.s:.6g}, r={self.r:.6g})")


# -------------------------------------------------------- scalar helpers

def index_from_angle(r) -> Fraction:
    """Branching index l in (0, 1] of a local exponent angle r in (0, 1).

    Only cos(pi r) matters, so r and 1 - r give the same index:
    l = 2r for r <= 1/2 and l = 2 - 2r above. Exact over rationals.
    """
    rq = Fraction(r)
    if not 0 < rq < 1:
        raise OutOfRange(f"angle {r} outside (0, 1)")
    return 2 * rq if rq <= Fraction(1, 2) else 2 - 2 * rq


def sigma_from_x0(x0) -> float:
    """Exponent at the origin from the coordinate: |x0| = 2 sin(pi sigma / 2)."""
    ax = abs(float(x0))
    if ax > 2:
        raise OutOfRange(f"|x0| = {ax} exceeds 2, no real exponent")
    return (2 / math.pi) * math.asin(ax / 2)


def _to_mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _check_nonresonant(mu):
    tw = 2 * float(mu)
    if abs(tw - round(tw)) < 1e-9:
        raise tr.ResonantMu(f"2 mu = {tw} is an integer")


def _gamma_ratio(sig, mu):
    """Ratio of gamma factors carrying the connection constant.

    Poles of the mu-dependent factors mark resonances between the local
    exponent and the parameter; they surface as DegenerateTriple.
    """
    g = mpmath.gamma
    try:
        return (g(1 + sig) ** 2 * g(1 - sig / 2) ** 2
                * g(1 + mu - sig / 2) * g(1 - mu - sig / 2)
                / (g(1 - sig) ** 2 * g(1 + sig / 2) ** 2
                   * g(1 + mu + sig / 2) * g(1 - mu + sig / 2)))
    except ValueError:
        raise DegenerateTriple(
            f"gamma factor pole at sigma = {sig}, mu = {mu}") from None


def _phase(x0, x1, xi):
    """Unit complex number e^(i pi phi) entering the coefficient at the
    origin. Invariant under two-sign changes of the triple."""
    num = (x0 * x0 * x1 * x1 - 2 * x1 * x1 - 2 * x0 * x1 * xi + 2 * xi * xi
           + _J * x1 * mpmath.sign(x0) * mpmath.sqrt(4 - x0 * x0)
           * (2 * xi - x0 * x1))
    den = 2 * (x1 * x1 - x0 * x1 * xi + xi * xi)
    if den == 0:
        raise DegenerateTriple("coefficient undefined: x1 = xinf = 0")
    return num / den


def _s_value(sig, mu, a0, r):
    if abs(2 * mu - sig) < _WALL or abs(2 * mu + sig) < _WALL:
        raise DegenerateTriple(f"sigma = {sig} resonates with 2 mu = {2 * mu}")
    pref = (2 * mu + sig) / (2 * mu - sig)
    return r * _gamma_ratio(sig, mu) * pref / (4 * a0)


# ------------------------------------------------- triple -> coefficient

def _coerce_coords(triple):
    if isinstance(triple, tr.TripleClass):
        triple = triple.representative
    if isinstance(triple, tr.Triple):
        return triple.embed()
    # no admissibility gate here: a doubly vanishing pair surfaces as
    # DegenerateTriple below, which names the actual failure
    return tr.Triple(tuple(float(c) for c in triple), check=False).coords


def coefficient_at(point, triple, mu) -> AsymptoticDatum:
    """Local datum of the branch attached to a triple at one critical point.

    The coordinate sitting at the chosen point fixes sigma; the other two
    fix the coefficient, through the phase and gamma-factor formula when
    sigma > 0 and through c^2 / (b^2 + c^2) when sigma = 0. The points
    0, 1, inf read the coordinates as (x0, x1, xinf), (x1, x0, xinf) and
    (xinf, -x1, x0 - x1 xinf).
    """
    pt = _normalize_point(point)
    x0, x1, xi = _coerce_coords(triple)
    _check_nonresonant(mu)
    for c in (x0, x1, xi):
        if abs(c) >= 2:
            raise OutOfRange(f"coordinate {c} outside (-2, 2)")
    if pt == "0":
        w = (x0, x1, xi)
    elif pt == "1":
        w = (x1, x0, xi)
    else:
        w = (xi, -x1, x0 - x1 * xi)
    with mpmath.workdps(_DPS):
        mum = _to_mp(mu)
        w0, w1, w2 = (mpmath.mpf(c) for c in w)
        if abs(w[0]) < _ZERO_SIGMA:
            den = w1 * w1 + w2 * w2
            if den == 0:
                raise DegenerateTriple("coefficient undefined: both "
                                       "remaining coordinates vanish")
            sig = 0.0
            a = w2 * w2 / den
            if a == 0 or a == 1:
                raise DegenerateTriple(
                    "a remaining coordinate vanishes with sigma = 0: "
                    "no usable leading coefficient")
        else:
            sig = 2 / mpmath.pi * mpmath.asin(abs(w0) / 2)
            if abs(2 * mum - sig) < _WALL or abs(2 * mum + sig) < _WALL:
                raise DegenerateTriple(
                    f"sigma = {float(sig)} resonates with 2 mu = {2 * float(mu)}")
            pref = (2 * mum + sig) / (2 * mum - sig)
            a = pref * _gamma_ratio(sig, mum) / (4 * _phase(w0, w1, w2))
        return AsymptoticDatum(pt, float(sig), complex(a))


# ------------------------------------------------ coefficient -> matrices

def _family(sig0, mu, a0, r):
    """Monodromy matrices (M0, Mx, M1) as mpmath matrices, M at infinity
    diagonal. Caller is inside a workdps block and has validated inputs."""
    th = 2 * mu
    if sig0 < _ZERO_SIGMA:
        # confluent family: s is the coefficient itself
        s = a0
        cth = mpmath.cos(mpmath.pi * th / 2)
        ep = mpmath.exp(_J * mpmath.pi * th / 2)
        sn2 = mpmath.sin(mpmath.pi * th / 2) ** 2
        m1 = (1 / cth) * mpmath.matrix(
            [[1 / ep, _J * mpmath.pi / ep * r],
             [-_J / mpmath.pi * sn2 * ep / r, ep]])

        def off(c):
            return mpmath.matrix(
                [[1 - _J * c * mpmath.tan(mpmath.pi * th / 2),
                  -_J * c * mpmath.pi * ep / cth * r],
                 [_J / mpmath.pi * c * sn2 / (ep * cth) / r,
                  1 + _J * c * mpmath.tan(mpmath.pi * th / 2)]])

        return off(s), off(1 - s), m1
    s = _s_value(sig0, mu, a0, r)
    sp = mpmath.sin(mpmath.pi * (th + sig0) / 2)
    sm = mpmath.sin(mpmath.pi * (th - sig0) / 2)
    ept = mpmath.exp(_J * mpmath.pi * th)
    m1 = (-_J / mpmath.sin(mpmath.pi * th)) * mpmath.matrix(
        [[mpmath.cos(mpmath.pi * sig0) - 1 / ept, -2 / ept * sp * sm * r],
         [2 * ept * sp * sm / r, -mpmath.cos(mpmath.pi * sig0) + ept]])
    e = mpmath.exp(_J * mpmath.pi * sig0)
    h = mpmath.sin(mpmath.pi * sig0 / 2) ** 2
    pre = -_J / mpmath.sin(mpmath.pi * sig0)
    mt = pre * mpmath.matrix([[e - 1, 2 * s * e * h],
                              [-(2 / s) / e * h, 1 - 1 / e]])
    m0 = pre * mpmath.matrix([[e - 1, -2 * s * h],
                              [(2 / s) * h, 1 - 1 / e]])
    c = mpmath.matrix([[sm, r * sp], [sp / r, sm]])
    det = sm * sm - sp * sp
    if abs(det) < _WALL * (1 + abs(sm) ** 2 + abs(sp) ** 2):
        raise SingularC(f"frame determinant {complex(det)} vanishes")
    ci = c ** -1
    return ci * m0 * c, ci * mt * c, m1


def _validate_local(sigma0, mu, a0):
    _check_nonresonant(mu)
    if not 0 <= float(sigma0) < 1:
        raise OutOfRange(f"sigma0 = {sigma0} outside [0, 1)")
    if a0 == 0:
        raise ValueError("leading coefficient must be nonzero")
    if float(sigma0) < _ZERO_SIGMA and a0 == 1:
        raise ValueError("a0 = 1 with sigma0 = 0 leaves no branch")


def theta_params(sigma0, mu, a0, r_free=1.0) -> ThetaParams:
    """Gauge data (theta_inf, s, r) of the matrix family for a local datum."""
    _validate_local(sigma0, mu, a0)
    if r_free == 0:
        raise ValueError("gauge parameter r must be nonzero")
    with mpmath.workdps(_DPS):
        if float(sigma0) < _ZERO_SIGMA:
            s = mpmath.mpmathify(a0)
        else:
            s = _s_value(_to_mp(sigma0), _to_mp(mu),
                         mpmath.mpmathify(a0), mpmath.mpmathify(r_free))
        return ThetaParams(2 * float(mu), complex(s), r_free)


def _to_matrix2c(m):
    # every matrix of the family has trace 2 identically; taking the
    # second diagonal entry as the complement of the first keeps that
    # exact through the rounding to machine complexes
    a = complex(m[0, 0])
    return Matrix2C(a, complex(m[0, 1]), complex(m[1, 0]), 2 - a)


def monodromy_from_asymptotics(sigma0, mu, a0, r_free=1.0):
    """Monodromy matrices (M0, Mx, M1) rebuilt from the datum at the origin.

    All three come out unipotent (det 1, trace 2) with the product
    M1 Mx M0 inverse to the diagonal matrix diag(e^{2 pi i mu},
    e^{-2 pi i mu}) at infinity. Pair traces return the squared triple
    coordinates: Tr(M0 Mx) = 2 - x0^2 and cyclically. r_free picks the
    diagonal gauge; a singular frame triggers one retry at a different
    gauge before SingularC escapes (the determinant does not depend on
    the gauge, so the retry is purely defensive).
    """
    _validate_local(sigma0, mu, a0)
    if r_free == 0:
        raise ValueError("gauge parameter r must be nonzero")
    last = None
    for rv in (r_free, 2 * r_free):
        try:
            with mpmath.workdps(_DPS):
                trio = _family(_to_mp(sigma0), _to_mp(mu),
                               mpmath.mpmathify(a0), mpmath.mpmathify(rv))
                return tuple(_to_matrix2c(m) for m in trio)
        except SingularC as exc:
            last = exc
    raise last


# ------------------------------------------------ coefficient -> triple

def _mtrace(m):
    return m[0, 0] + m[1, 1]


def triple_from_asymptotics(a0, sigma0, mu) -> tr.TripleClass:
    """Triple class whose branch at the origin carries the given datum.

    With sigma0 > 0 the matrices of monodromy_from_asymptotics give the
    squared coordinates through their pair traces and the sign pattern
    through the product coordinate x0 x1 xinf = sum of squares minus the
    quadratic invariant. With sigma0 = 0 the closed form
    x1 = -2 |sin(pi mu)| sqrt(1 - a0), xinf = -2 |sin(pi mu)| sqrt(a0)
    applies. Data that fail to produce a real admissible triple with
    quadratic invariant 4 sin^2(pi mu) (tolerance 1e-8) raise
    InconsistentData.
    """
    _validate_local(sigma0, mu, a0)
    muf = float(mu)
    with mpmath.workdps(_DPS):
        if float(sigma0) < _ZERO_SIGMA:
            av = mpmath.mpmathify(a0)
            if abs(mpmath.im(av)) > _DATA_TOL:
                raise InconsistentData(
                    "coefficient must be real when sigma0 = 0")
            ar = mpmath.re(av)
            if not 0 < ar < 1:
                raise InconsistentData(
                    f"coefficient {float(ar)} outside (0, 1)")
            amp = 2 * abs(mpmath.sin(mpmath.pi * _to_mp(mu)))
            coords = (0.0, float(-amp * mpmath.sqrt(1 - ar)),
                      float(-amp * mpmath.sqrt(ar)))
        else:
            m0, mx, m1 = _family(_to_mp(sigma0), _to_mp(mu),
                                 mpmath.mpmathify(a0), mpmath.mpf(1))
            raw = (2 - _mtrace(m0 * mx), 2 - _mtrace(mx * m1),
                   2 - _mtrace(m0 * m1), 2 - _mtrace(m1 * mx * m0))
            reals = []
            for v in raw:
                if abs(mpmath.im(v)) > _DATA_TOL:
                    raise InconsistentData(
                        "trace data are not real: no real triple")
                reals.append(mpmath.re(v))
            x0sq, x1sq, xisq, q = reals
            coords = []
            for v in (x0sq, x1sq, xisq):
                if v < -_DATA_TOL:
                    raise InconsistentData(f"negative squared coordinate {float(v)}")
                c = float(mpmath.sqrt(max(v, 0)))
                coords.append(0.0 if c < _SNAP else c)
            prod = float(x0sq + x1sq + xisq - q)
            x0f, x1f, xif = coords
            if x0f and x1f and xif:
                if prod < 0:
                    xif = -xif
                if abs(x0f * x1f * xif - prod) > _SNAP * (1 + abs(prod)):
                    raise InconsistentData(
                        f"no sign pattern matches product {prod}")
            elif abs(prod) > _SNAP:
                raise InconsistentData(
                    f"zero coordinate contradicts product {prod}")
            coords = (x0f, x1f, xif)
    qfinal = (coords[0] ** 2 + coords[1] ** 2 + coords[2] ** 2
              - coords[0] * coords[1] * coords[2])
    target = 4 * math.sin(math.pi * muf) ** 2
    if abs(qfinal - target) > _DATA_TOL:
        raise InconsistentData(
            f"invariant {qfinal} misses 4 sin^2(pi mu) = {target}")
    try:
        t = tr.Triple(coords)
    except tr.InadmissibleTriple as exc:
        raise InconsistentData(f"recovered triple inadmissible: {exc}") from None
    return tr.TripleClass(t)
