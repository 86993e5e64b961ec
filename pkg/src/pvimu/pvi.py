"""Continuation of PVImu transcendents along paths in the x plane.

The second-order equation is integrated as the equivalent first-order
system in Okamoto coordinates

    q = y,      p = (x(x-1) y' - y(y-1)) / (2 (y-x) y (y-1)),

whose right-hand sides are polynomial in (q, p), so the flow is mild
wherever y stays away from infinity.  Movable poles of y are crossed in
the reciprocal chart w = 1/y, where a meromorphic solution has a simple
zero; the integrator switches charts when |y| exceeds a threshold and
switches back once the pole is behind, recording the event.

Trajectories are seeded near x = 0 from the leading behaviour

    y(x) ~ a0 * x**(1 - sigma0),    0 <= sigma0 < 1,  a0 != 0,

which pins down the transcendent uniquely when 2 mu is not an integer.
The default path is the real segment [x_start, x_end]; when two movable
poles crowd together on the real axis the path is re-routed through a
semicircular detour in the upper half plane, which is legitimate because
solutions are single-valued in x away from 0, 1 and infinity.

fit_asymptotics recovers (sigma, a) at 0, 1 or infinity from the tail of
a trajectory by least squares on the log-transformed samples.
"""

import cmath
import math

import mpmath

from .connection import AsymptoticDatum
from .triples import ResonantMu


class SingularPoint(ValueError):
    """Evaluation at a point where the equation or a chart degenerates."""


class StepCollapse(RuntimeError):
    """The adaptive step shrank below the minimum allowed size."""


class PathThroughSingularity(ValueError):
    """The requested path passes through x = 0 or x = 1."""


class PoorFit(ValueError):
    """The trajectory tail does not support an asymptotic fit."""


_FIXED_POINTS = (0.0, 1.0)
_PATH_CLEARANCE = 1e-9


def _resonant(mu):
    two = 2.0 * float(mu)
    return abs(two - round(two)) < 1e-12


def _kappa(mu):
    m = float(mu)
    return (2.0 * m - 1.0) ** 2


# ----------------------------------------------------------- right sides

def pvi_rhs(x, y, y_x, mu):
    """Second derivative y'' prescribed by PVImu at (x, y, y').

    The parameter enters only through kappa = (2 mu - 1)**2, so at
    mu = 1/2 the inhomogeneous kappa term drops out.  No resonance
    check is applied here; the formula is plain algebra.
    """
    x = complex(x)
    y = complex(y)
    y_x = complex(y_x)
    if x == 0 or x == 1:
        raise SingularPoint(f"x = {x} is a fixed singular point")
    if y == 0 or y == 1 or y == x:
        raise SingularPoint(f"y = {y} lies on the singular locus at x = {x}")
    kappa = _kappa(mu)
    a = 0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - x))
    b = 1.0 / x + 1.0 / (x - 1.0) + 1.0 / (y - x)
    c = (y * (y - 1.0) * (y - x) / (2.0 * x * x * (x - 1.0) ** 2)
         * (kappa + x * (x - 1.0) / (y - x) ** 2))
    return a * y_x * y_x - b * y_x + c


def hamiltonian_rhs(x, q, p, mu, check_resonance=True):
    """Right sides (q_dot, p_dot) of the polynomial (q, p) system.

    Eliminating p reproduces PVImu for y = q.  The system is only
    equivalent to the equation for non-resonant mu, hence the guard;
    pass check_resonance=False for purely algebraic probing.
    """
    if check_resonance and _resonant(mu):
        raise ResonantMu(f"2 mu = {2 * mu} is an integer")
    x = complex(x)
    q = complex(q)
    p = complex(p)
    if x == 0 or x == 1:
        raise SingularPoint(f"x = {x} is a fixed singular point")
    m = float(mu)
    den = (x - 1.0) * x
    q_dot = ((q - 1.0) * q + 2.0 * p * (q - 1.0) * q * (q - x)) / den
    p_dot = (-(p * p) * (x - 2.0 * q - 2.0 * x * q + 3.0 * q * q)
             - p * (2.0 * q - 1.0) - (1.0 - m) * m) / den
    return q_dot, p_dot


def _w_second(x, w, wp, kappa):
    """w'' for the reciprocal chart w = 1/y.

    Direct substitution leaves two terms of size O(1/w) that cancel to
    O(w) on solutions; they are grouped into a single difference here so
    the cancellation costs at most the rounding of the brace, which is
    negligible during the narrow pole transit where the chart is active.
    """
    if w == 0:
        raise SingularPoint("w = 0 inside the reciprocal chart")
    one_w = 1.0 - w
    one_xw = 1.0 - x * w
    if one_w == 0 or one_xw == 0:
        raise SingularPoint("reciprocal chart hit y = 1 or y = x")
    xx1 = x * (x - 1.0)
    r1 = (1.0 - 2.0 * (1.0 + x) * w + 3.0 * x * w * w) / (one_w * one_xw)
    r2 = one_w * one_xw / (xx1 * xx1)
    brace = wp * wp * r1 - kappa * r2
    b = 1.0 / x + 1.0 / (x - 1.0) + w / one_xw
    return brace / (2.0 * w) - b * wp - w * one_w / (2.0 * one_xw * xx1)


def _v_second(x, v, u, kappa):
    """v'' for the difference chart v = y - x, u = v' = y' - 1.

    Solutions may touch the y = x locus, always with a double zero of v
    (so u vanishes simultaneously); p in the Okamoto chart then has a
    simple pole while (v, u) stays regular.  The only delicate term is
    the quotient u**2 / (2v), which is a ratio of two vanishing
    quantities rather than a difference, so it loses no precision.
    """
    y = v + x
    if v == 0:
        raise SingularPoint("v = 0 inside the difference chart")
    if y == 0 or y == 1:
        raise SingularPoint("difference chart hit y = 0 or y = 1")
    xx1 = x * (x - 1.0)
    yp = u + 1.0
    return (u * u / (2.0 * v)
            + (y + x - 1.0) / (2.0 * xx1)
            + 0.5 * (1.0 / y + 1.0 / (y - 1.0)) * yp * yp
            - (1.0 / x + 1.0 / (x - 1.0)) * yp
            + kappa * y * (y - 1.0) * v / (2.0 * xx1 * xx1))


# ------------------------------------------------------------ state types

class OdeState:
    """One sample of a trajectory: position x, value y, derivative y_x."""

    __slots__ = ("x", "y", "y_x")

    def __init__(self, x, y, y_x):
        self.x = complex(x)
        self.y = complex(y)
        self.y_x = complex(y_x)

    def to_qp(self):
        """Okamoto coordinates (q, p); singular when y is 0, 1 or x."""
        x, y = self.x, self.y
        den = 2.0 * (y - x) * y * (y - 1.0)
        if den == 0:
            raise SingularPoint(
                f"p is undefined at y = {y}, x = {x} (y on the singular locus)")
        return y, (x * (x - 1.0) * self.y_x - y * (y - 1.0)) / den

    @classmethod
    def from_qp(cls, x, q, p):
        x = complex(x)
        q = complex(q)
        p = complex(p)
        if x == 0 or x == 1:
            raise SingularPoint(f"x = {x} is a fixed singular point")
        y_x = ((q - 1.0) * q + 2.0 * p * (q - 1.0) * q * (q - x)) / ((x - 1.0) * x)
        return cls(x, q, y_x)

    def __repr__(self):
        return f"OdeState(x={self.x:.6g}, y={self.y:.6g}, y_x={self.y_x:.6g})"


class Trajectory:
    """Ordered samples of one integration run.

    ts holds the path parameter (arclength from the start) of each
    sample and is strictly increasing.  pole_events lists the x
    locations where |y| or 1/|y - x| crossed the pole threshold;
    detours lists (center, radius) of semicircular re-routings taken.
    """

    __slots__ = ("mu", "tol", "samples", "ts", "pole_events", "detours",
                 "steps", "rejected", "chart_switches")

    def __init__(self, mu, tol, samples, ts, pole_events=(), detours=(),
                 steps=0, rejected=0, chart_switches=0):
        samples = tuple(samples)
        ts = tuple(float(t) for t in ts)
        if len(samples) != len(ts):
            raise ValueError("samples and ts must have equal length")
        for a, b in zip(ts, ts[1:]):
            if not b > a:
                raise ValueError("path parameter must be strictly increasing")
        self.mu = float(mu)
        self.tol = float(tol)
        self.samples = samples
        self.ts = ts
        self.pole_events = tuple(pole_events)
        self.detours = tuple(detours)
        self.steps = int(steps)
        self.rejected = int(rejected)
        self.chart_switches = int(chart_switches)

    @property
    def final(self):
        return self.samples[-1]

    def __len__(self):
        return len(self.samples)

    def to_rows(self):
        """(path_param, x_re, x_im, y_re, y_im, yx_re, yx_im) per sample."""
        return [(t, s.x.real, s.x.imag, s.y.real, s.y.imag,
                 s.y_x.real, s.y_x.imag)
                for t, s in zip(self.ts, self.samples)]

    def __repr__(self):
        return (f"Trajectory({len(self.samples)} samples, mu={self.mu:.6g}, "
                f"poles={len(self.pole_events)}, detours={len(self.detours)})")


# ------------------------------------------------------------------ paths

class _Line:
    __slots__ = ("z0", "z1", "length")

    def __init__(self, z0, z1):
        self.z0 = complex(z0)
        self.z1 = complex(z1)
        self.length = abs(self.z1 - self.z0)

    def point(self, s):
        return self.z0 + (self.z1 - self.z0) * (s / self.length)

    def tangent(self, s):
        return (self.z1 - self.z0) / self.length

    @property
    def real(self):
        return self.z0.imag == 0 and self.z1.imag == 0

    def reversed(self):
        return _Line(self.z1, self.z0)

    def clearance(self, pt):
        d = self.z1 - self.z0
        t = ((pt - self.z0).real * d.real + (pt - self.z0).imag * d.imag)
        t = min(max(t / (self.length * self.length), 0.0), 1.0)
        return abs(self.z0 + t * d - pt)


class _Arc:
    __slots__ = ("center", "r", "th0", "th1", "length")

    def __init__(self, center, r, th0, th1):
        self.center = complex(center)
        self.r = float(r)
        self.th0 = float(th0)
        self.th1 = float(th1)
        self.length = self.r * abs(th1 - th0)

    def _theta(self, s):
        return self.th0 + (self.th1 - self.th0) * (s / self.length)

    def point(self, s):
        return self.center + self.r * cmath.exp(1j * self._theta(s))

    def tangent(self, s):
        sign = 1.0 if self.th1 > self.th0 else -1.0
        return 1j * sign * cmath.exp(1j * self._theta(s))

    @property
    def real(self):
        return False

    def reversed(self):
        return _Arc(self.center, self.r, self.th1, self.th0)

    def clearance(self, pt):
        v = pt - self.center
        if v == 0:
            return self.r
        ang = cmath.phase(v)
        lo, hi = min(self.th0, self.th1), max(self.th0, self.th1)
        if lo <= ang <= hi:
            return abs(abs(v) - self.r)
        return min(abs(pt - self.point(0.0)), abs(pt - self.point(self.length)))


def _segments_from_points(points):
    segs = []
    pts = [complex(z) for z in points]
    if len(pts) < 2:
        raise ValueError("a path needs at least two points")
    for z0, z1 in zip(pts, pts[1:]):
        if abs(z1 - z0) > 1e-15:
            segs.append(_Line(z0, z1))
    if not segs:
        raise ValueError("path has zero length")
    return segs


def _validate_path(segments):
    for seg in segments:
        for s in _FIXED_POINTS:
            if seg.clearance(complex(s)) < _PATH_CLEARANCE:
                raise PathThroughSingularity(
                    f"path passes within {_PATH_CLEARANCE:g} of x = {s:g}")


def _detoured_segments(x0, x1, detours):
    """Real segment [x0, x1] re-routed over upper semicircles."""
    direction = 1.0 if x1 > x0 else -1.0
    lo, hi = min(x0, x1), max(x0, x1)
    centers = sorted(((c, r) for c, r in detours), key=lambda cr: cr[0],
                     reverse=direction < 0)
    segs = []
    cur = x0
    for c, r in centers:
        if not (lo + r < c < hi - r):
            raise StepCollapse(
                f"pole cluster at x = {c:g} too close to a path endpoint")
        enter = c - direction * r
        if abs(enter - cur) > 1e-15:
            segs.append(_Line(cur, enter))
        if direction > 0:
            segs.append(_Arc(c, r, math.pi, 0.0))
        else:
            segs.append(_Arc(c, r, 0.0, math.pi))
        cur = c + direction * r
    if abs(x1 - cur) > 1e-15:
        segs.append(_Line(cur, x1))
    return segs


# -------------------------------------------------------------- stepping

_RK_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_RK_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_RK_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200,
         22 / 525, -1 / 40)


class _NeedDetour(Exception):
    def __init__(self, center):
        self.center = center


def _chart_rhs(chart, x, u0, u1, mu, kappa):
    if chart == "qp":
        den = (x - 1.0) * x
        m = mu
        q_dot = ((u0 - 1.0) * u0 + 2.0 * u1 * (u0 - 1.0) * u0 * (u0 - x)) / den
        p_dot = (-(u1 * u1) * (x - 2.0 * u0 - 2.0 * x * u0 + 3.0 * u0 * u0)
                 - u1 * (2.0 * u0 - 1.0) - (1.0 - m) * m) / den
        return q_dot, p_dot
    if chart == "w":
        return u1, _w_second(x, u0, u1, kappa)
    return u1, _v_second(x, u0, u1, kappa)


def _state_from_chart(chart, x, u0, u1):
    if chart == "qp":
        return OdeState.from_qp(x, u0, u1)
    if chart == "w":
        return OdeState(x, complex(1.0 / u0), complex(-u1 / (u0 * u0)))
    return OdeState(x, complex(u0 + x), complex(u1 + 1.0))


def _qp_from_chart(chart, x, u0, u1):
    """(q, p) on leaving an escape chart, computed before rounding.

    The Okamoto p has a simple pole where y = x, so it is reconstructed
    from the still-exact chart variables (y - x is u0 itself in the
    difference chart) rather than from the rounded state, and only then
    cast down to a complex double.
    """
    if chart == "w":
        y = 1.0 / u0
        y_x = -u1 * y * y
        ymx = y - x
    else:
        y = u0 + x
        y_x = u1 + 1.0
        ymx = u0
    den = 2.0 * ymx * y * (y - 1.0)
    if den == 0:
        raise SingularPoint("Okamoto chart degenerates at the exit point")
    p = (x * (x - 1.0) * y_x - y * (y - 1.0)) / den
    return complex(y), complex(p)


def _chart_from_state(chart, state):
    if chart == "qp":
        return state.to_qp()
    if chart == "w":
        w = 1.0 / state.y
        return w, -state.y_x * w * w
    return state.y - state.x, state.y_x - 1.0


class _Run:
    """Mutable bookkeeping of one integration attempt."""

    __slots__ = ("samples", "ts", "pole_events", "steps", "rejected",
                 "chart_switches", "tau")

    def __init__(self, state0):
        self.samples = [state0]
        self.ts = [0.0]
        self.pole_events = []
        self.steps = 0
        self.rejected = 0
        self.chart_switches = 0
        self.tau = 0.0


def _integrate_segments(state0, mu, segments, tol, pole_threshold,
                        min_step, max_steps, detour_radius, watch_detours):
    with mpmath.workdps(_TRANSIT_DPS):
        return _stepper(state0, mu, segments, tol, pole_threshold,
                        min_step, max_steps, detour_radius, watch_detours)


# Escape-chart transits run at elevated precision.  Near a y = x touch
# the variational modes of  v'' = u**2/(2v) + ...  behave like t and
# t**2 in the distance t to the touch, so an absolute error injected by
# a step of size h at the bottom is amplified by roughly t_exit / h on
# the way out; double precision cannot win that game, a few digits of
# headroom win it outright.
_TRANSIT_DPS = 40
_TRANSIT_TOL = 1e-16


def _stepper(state0, mu, segments, tol, pole_threshold,
             min_step, max_steps, detour_radius, watch_detours):
    mu = float(mu)
    kappa = (2.0 * mu - 1.0) ** 2
    run = _Run(state0)
    floor = 1.0 / pole_threshold
    if abs(state0.y) > pole_threshold:
        chart = "w"
    elif abs(state0.y - state0.x) < floor:
        chart = "v"
    else:
        chart = "qp"
    u0, u1 = _chart_from_state(chart, state0)
    if chart != "qp":
        u0, u1 = mpmath.mpc(u0), mpmath.mpc(u1)
    tol_eff = tol if chart == "qp" else min(tol, _TRANSIT_TOL)
    transit_min = abs(u0)
    x_at_min = state0.x
    total = sum(seg.length for seg in segments)
    h = min(segments[0].length, max(1e-4 * total, 10.0 * min_step))

    for seg in segments:
        s = 0.0
        while s < seg.length:
            h = min(h, seg.length - s)
            if h < min_step:
                raise StepCollapse(
                    f"step fell below {min_step:g} near x = {seg.point(s):.6g}")
            if run.steps + run.rejected > max_steps:
                raise StepCollapse("step budget exhausted")
            k = []
            failed = False
            n0 = n1 = 0.0
            for j in range(7):
                a0 = a1 = 0.0
                for m, amj in enumerate(_RK_A[j]):
                    if amj != 0.0:
                        a0 += amj * k[m][0]
                        a1 += amj * k[m][1]
                v0 = u0 + h * a0
                v1 = u1 + h * a1
                if j == 6:
                    n0, n1 = v0, v1
                sj = s + _RK_C[j] * h
                try:
                    xj = seg.point(sj)
                    f0, f1 = _chart_rhs(chart, xj, v0, v1, mu, kappa)
                    zd = seg.tangent(sj)
                    k.append((f0 * zd, f1 * zd))
                except (SingularPoint, ZeroDivisionError, OverflowError):
                    failed = True
                    break
            if failed:
                run.rejected += 1
                h *= 0.3
                continue
            e0 = e1 = 0.0
            for m in range(7):
                em = _RK_E[m]
                if em != 0.0:
                    e0 += em * k[m][0]
                    e1 += em * k[m][1]
            e0 *= h
            e1 *= h
            sc0 = tol_eff + tol_eff * max(abs(u0), abs(n0))
            sc1 = tol_eff + tol_eff * max(abs(u1), abs(n1))
            err = float(max(abs(e0) / sc0, abs(e1) / sc1))
            if not math.isfinite(err):
                run.rejected += 1
                h *= 0.3
                continue
            if err > 1.0:
                run.rejected += 1
                h *= max(0.2, 0.9 * err ** -0.2)
                continue

            s += h
            run.tau += h
            run.steps += 1
            u0, u1 = n0, n1
            x_now = seg.point(s)
            state = _state_from_chart(chart, x_now, u0, u1)
            run.samples.append(state)
            run.ts.append(run.tau)

            if chart == "qp":
                enter = None
                if abs(u0) > pole_threshold:
                    enter = "w"
                elif abs(state.y - x_now) < floor:
                    enter = "v"
                if enter is not None:
                    chart = enter
                    u0, u1 = _chart_from_state(chart, state)
                    u0, u1 = mpmath.mpc(u0), mpmath.mpc(u1)
                    tol_eff = min(tol, _TRANSIT_TOL)
                    run.chart_switches += 1
                    transit_min = abs(u0)
                    x_at_min = x_now
            else:
                if abs(u0) < transit_min:
                    transit_min = abs(u0)
                    x_at_min = x_now
                if abs(u0) > 2.0 * floor:
                    u0, u1 = _qp_from_chart(chart, x_now, u0, u1)
                    chart = "qp"
                    tol_eff = tol
                    run.chart_switches += 1
                    prev = run.pole_events[-1] if run.pole_events else None
                    run.pole_events.append(x_at_min)
                    if (watch_detours and seg.real and prev is not None
                            and abs(x_at_min - prev) < detour_radius
                            and abs(x_at_min.imag) < 1e-9
                            and abs(prev.imag) < 1e-9):
                        raise _NeedDetour(0.5 * (x_at_min.real + prev.real))

            if err == 0.0:
                h *= 5.0
            else:
                h *= min(5.0, max(0.2, 0.9 * err ** -0.2))
    return run, chart, (u0, u1)


def _assemble(run, mu, tol, detours):
    return Trajectory(mu, tol, run.samples, run.ts,
                      pole_events=run.pole_events, detours=detours,
                      steps=run.steps, rejected=run.rejected,
                      chart_switches=run.chart_switches)


def integrate_from(state, mu, path, tol=1e-10, pole_threshold=1e8,
                   detour_radius=1e-2, min_step_frac=1e-14,
                   max_steps=400000):
    """Continue from an explicit OdeState along a path of waypoints.

    No automatic detours are taken on explicit paths; pole transits are
    handled by the reciprocal chart and recorded.
    """
    if _resonant(mu):
        raise ResonantMu(f"2 mu = {2 * mu} is an integer")
    segments = _segments_from_points(path)
    _validate_path(segments)
    if abs(complex(path[0]) - state.x) > 1e-12:
        raise ValueError("path must start at the state's x")
    total = sum(seg.length for seg in segments)
    run, _, _ = _integrate_segments(
        state, mu, segments, tol, pole_threshold,
        min_step_frac * total, max_steps, detour_radius, False)
    return _assemble(run, mu, tol, ())


def integrate(seed, mu, x_end=1.0 - 1e-3, tol=1e-10, x_start=1e-3,
              path=None, pole_threshold=1e8, detour_radius=1e-2,
              min_step_frac=1e-14, max_steps=400000):
    """Integrate the transcendent with leading datum `seed` at x = 0.

    seed is an AsymptoticDatum at the point 0 (its constructor already
    rejects a vanishing coefficient).  The trajectory starts from the
    seeded leading term at x_start and follows either the real segment
    to x_end or the explicit waypoint path when one is given.  Movable
    poles on the default real path trigger, on a second event within
    detour_radius of the first, a restart with a semicircular detour in
    the upper half plane.
    """
    if not isinstance(seed, AsymptoticDatum):
        raise ValueError("seed must be an AsymptoticDatum")
    if seed.point != "0":
        raise ValueError("integration is seeded at the point 0")
    if _resonant(mu):
        raise ResonantMu(f"2 mu = {2 * mu} is an integer")
    if path is not None:
        waypoints = [complex(z) for z in path]
    else:
        waypoints = [complex(x_start), complex(x_end)]
    x0 = waypoints[0]
    if not 0 < abs(x0) <= 0.1:
        raise ValueError(
            f"seeding at |x| = {abs(x0):g}; the leading term is only "
            "trustworthy within |x| <= 0.1")
    ell = seed.index_l
    a0 = seed.a
    y0 = a0 * x0 ** ell
    yx0 = a0 * ell * x0 ** (ell - 1.0)
    state0 = OdeState(x0, y0, yx0)

    auto = path is None
    detours = []
    for _ in range(6):
        if auto and detours:
            segments = _detoured_segments(x0.real, waypoints[1].real,
                                          detours)
        else:
            segments = _segments_from_points(waypoints)
        _validate_path(segments)
        total = sum(seg.length for seg in segments)
        try:
            run, _, _ = _integrate_segments(
                state0, mu, segments, tol, pole_threshold,
                min_step_frac * total, max_steps, detour_radius, auto)
        except _NeedDetour as d:
            detours.append((d.center, detour_radius))
            continue
        return _assemble(run, mu, tol, tuple(detours))
    raise StepCollapse("persistent pole clustering despite detours")


# ------------------------------------------------------------ asymptotics

class FittedDatum(AsymptoticDatum):
    """AsymptoticDatum recovered by fitting, with the fit diagnostics."""

    __slots__ = ("stderr", "residual")

    def __init__(self, point, sigma, a, stderr, residual):
        super().__init__(point, sigma, a)
        self.stderr = float(stderr)
        self.residual = float(residual)

    def __repr__(self):
        return (f"FittedDatum(point={self.point!r}, sigma={self.sigma:.6g}, "
                f"a={self.a:.6g}, stderr={self.stderr:.2g})")


_POINTS = {"0": "0", "1": "1", "inf": "inf", 0: "0", 1: "1"}


def fit_asymptotics(traj, point):
    """Fit the leading behaviour of a trajectory at 0, 1 or infinity.

    The fit runs over the samples whose distance to the point lies in
    the last decade reached, regressing log|v| on log|t| where v is y,
    1 - y or y and t is x, 1 - x or x for the three points.  Raises
    PoorFit when the tail is too short, does not vanish (points 0 and
    1), or leaves a relative residual above 1e-3.
    """
    try:
        pt = _POINTS[point]
    except (KeyError, TypeError):
        raise ValueError(f"unknown point {point!r}") from None
    if pt == "0":
        pairs = [(s.x, s.y) for s in traj.samples]
    elif pt == "1":
        pairs = [(1.0 - s.x, 1.0 - s.y) for s in traj.samples]
    else:
        pairs = [(s.x, s.y) for s in traj.samples]
    dists = [abs(t) for t, _ in pairs]
    if pt == "inf":
        d_hi = max(dists)
        if d_hi < 1e2:
            raise PoorFit("trajectory never approaches infinity")
        window = [(t, v) for (t, v), d in zip(pairs, dists)
                  if d_hi / 10.0 <= d <= d_hi]
    else:
        d_lo = min(dists)
        if d_lo > 1e-2:
            raise PoorFit(f"trajectory never approaches the point {pt}")
        window = [(t, v) for (t, v), d in zip(pairs, dists)
                  if d_lo <= d <= 10.0 * d_lo]
    window = [(t, v) for t, v in window if v != 0 and t != 0]
    n = len(window)
    if n < 8:
        raise PoorFit(f"only {n} usable samples in the fitting decade")

    ts = [math.log(abs(t)) for t, _ in window]
    ls = [math.log(abs(v)) for _, v in window]
    st = sum(ts)
    sl = sum(ls)
    stt = sum(t * t for t in ts)
    stl = sum(t * l for t, l in zip(ts, ls))
    denom = n * stt - st * st
    if abs(denom) < 1e-30:
        raise PoorFit("samples do not spread in distance")
    slope = (n * stl - st * sl) / denom
    intercept = (sl - slope * st) / n

    ratio = sum(v / t ** slope for t, v in window) / n
    if ratio == 0:
        raise PoorFit("leading coefficient averaged to zero")
    a = math.exp(intercept) * cmath.exp(1j * cmath.phase(ratio))
    residual = math.sqrt(sum(abs(v / (a * t ** slope) - 1.0) ** 2
                             for t, v in window) / n)
    if residual > 1e-3:
        raise PoorFit(f"relative fit residual {residual:.2e}")
    tbar = st / n
    spread = sum((t - tbar) ** 2 for t in ts)
    rss = sum((l - intercept - slope * t) ** 2 for t, l in zip(ts, ls))
    stderr = math.sqrt(max(rss, 0.0) / (n - 2) / spread)

    if pt == "inf":
        sigma = slope
    else:
        if slope < 1e-6:
            raise PoorFit("leading term does not vanish at the point")
        sigma = 1.0 - slope
    if -1e-3 < sigma < 0.0:
        sigma = 0.0
    if not 0.0 <= sigma < 1.0:
        raise PoorFit(f"fitted exponent gives sigma = {sigma:.4g} "
                      "outside [0, 1)")
    return FittedDatum(pt, sigma, a, stderr, residual)
