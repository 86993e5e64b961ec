"""Monodromy triples, braid-group dynamics, equivalence classes, orbits.

Coordinates live either in an exact real-cyclotomic field (authoritative)
or as floats (for quick numeric work). The braid generators act by

    b1: (x1, x2, x3) -> (-x1, x3 - x1 x2, x2)
    b2: (x1, x2, x3) -> (x3, -x2, x1 - x2 x3)

and preserve the quadratic invariant Q = x1^2 + x2^2 + x3^2 - x1 x2 x3.
Two triples are equivalent when they differ by a sign change of exactly
two coordinates; the dynamics descends to these classes.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .cyclo import FieldContext, FieldElement, common_context, lift


class ResonantMu(ValueError):
    """Q in {0, 4} puts 2*mu on the integers, outside the family."""


class BudgetExceeded(RuntimeError):
    def __init__(self, partial_count):
        super().__init__(f"orbit exceeded budget at {partial_count} classes")
        self.partial_count = partial_count


class NotApplicable(ValueError):
    """Escape procedure requires Q > 4."""


class InadmissibleTriple(ValueError):
    """More than one coordinate vanishes."""


class Triple:
    """Ordered monodromy coordinates (x1, x2, x3)."""

    __slots__ = ("coords", "backing")

    def __init__(self, coords, backing=None, check=True):
        coords = tuple(coords)
        if len(coords) != 3:
            raise ValueError("a triple needs exactly three coordinates")
        if backing is None:
            backing = "exact" if isinstance(coords[0], FieldElement) else "float"
        if backing == "float":
            coords = tuple(float(c) for c in coords)
        self.coords = coords
        self.backing = backing
        if check and sum(1 for c in coords if _is_zero(c)) > 1:
            raise InadmissibleTriple(f"{self}")

    @staticmethod
    def from_cos(angles) -> "Triple":
        """Exact triple with x_i = -2cos(pi p_i / q_i); angles = three (p, q)."""
        ctx = common_context(*(q for _, q in angles))
        return Triple(tuple(ctx.from_cos(p, q) for p, q in angles))

    @staticmethod
    def exact_rational(values) -> "Triple":
        ctx = FieldContext(1)
        return Triple(tuple(ctx.from_rational(Fraction(v)) for v in values))

    def embed(self):
        if self.backing == "float":
            return self.coords
        return tuple(float(c) for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, Triple)
                and self.backing == other.backing
                and self.coords == other.coords)

    def __hash__(self):
        if self.backing == "exact":
            return hash(tuple(c.coeffs for c in self.coords))
        return hash(tuple(round(c, 9) for c in self.coords))

    def __repr__(self):
        if self.backing == "float":
            return f"Triple({self.coords[0]:.6g}, {self.coords[1]:.6g}, {self.coords[2]:.6g})"
        return f"Triple{self.coords}"

    def to_json(self):
        if self.backing == "exact":
            return {"backing": "exact",
                    "coords": [c.to_json() for c in self.coords]}
        return {"backing": "float", "coords": list(self.coords)}

    @staticmethod
    def from_json(obj):
        if obj.get("backing", "float") == "exact":
            return Triple(tuple(FieldElement.from_json(c) for c in obj["coords"]))
        return Triple(tuple(float(c) for c in obj["coords"]))


def _is_zero(c):
    if isinstance(c, FieldElement):
        return c.is_zero()
    return abs(c) < 1e-12


def _common_field(t: Triple) -> Triple:
    """Put all three exact coordinates into one context."""
    ns = {c.ctx.n for c in t.coords}
    if len(ns) == 1:
        return t
    ctx = common_context(*ns)
    return Triple(tuple(lift(c, ctx) for c in t.coords), check=False)


# ---------------------------------------------------------------- braids

class BraidWord:
    """Word in the generators; letters 1, -1, 2, -2 (negative = inverse).

    Letters act left to right: the first letter is applied first.
    """

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        letters = tuple(int(k) for k in letters)
        for k in letters:
            if k not in (1, -1, 2, -2):
                raise ValueError(f"bad braid letter {k}")
        self.letters = letters

    def __mul__(self, other):
        return BraidWord(self.letters + other.letters)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return BraidWord(self.letters * n)

    def inverse(self):
        return BraidWord(tuple(-k for k in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, BraidWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        names = {1: "b1", -1: "b1'", 2: "b2", -2: "b2'"}
        return " ".join(names[k] for k in self.letters) or "e"

    @staticmethod
    def parse(text: str) -> "BraidWord":
        """Accepts tokens like "b1 b2' b1" or comma/space separated ints."""
        tokens = text.replace(",", " ").split()
        letters = []
        names = {"b1": 1, "b1'": -1, "b2": 2, "b2'": -2,
                 "B1": -1, "B2": -2}
        for tok in tokens:
            if tok in names:
                letters.append(names[tok])
            else:
                letters.append(int(tok))
        return BraidWord(letters)


B1 = BraidWord((1,))
B2 = BraidWord((2,))
B1_INV = BraidWord((-1,))
B2_INV = BraidWord((-2,))

# standard generating set of the pure subgroup P3
PURE_GENERATORS = (B1 * B1, B2 * B2, B2_INV * B1 * B1 * B2)


def _step(letter, c):
    x1, x2, x3 = c
    if letter == 1:
        return (-x1, x3 - x1 * x2, x2)
    if letter == -1:
        return (-x1, x3, x2 - x1 * x3)
    if letter == 2:
        return (x3, -x2, x1 - x2 * x3)
    if letter == -2:
        return (x3 - x1 * x2, -x2, x1)
    raise ValueError(letter)


def braid_apply(w: BraidWord, t: Triple) -> Triple:
    if t.backing == "exact":
        t = _common_field(t)
    c = t.coords
    for k in w.letters:
        c = _step(k, c)
    return Triple(c, backing=t.backing, check=False)


def symmetry_apply(kind: str, t: Triple) -> Triple:
    if t.backing == "exact":
        t = _common_field(t)
    x1, x2, x3 = t.coords
    if kind == "i1":
        c = (x3 - x1 * x2, -x2, x1)
    elif kind == "i2":
        c = (-x2, -x1, x1 * x2 - x3)
    else:
        raise ValueError(f"unknown symmetry {kind!r}")
    return Triple(c, backing=t.backing, check=False)


def quadratic_invariant(t: Triple):
    if t.backing == "exact":
        t = _common_field(t)
    x1, x2, x3 = t.coords
    return x1 * x1 + x2 * x2 + x3 * x3 - x1 * x2 * x3


# ---------------------------------------------------------- equivalence

_SIGN_PATTERNS = ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))


def _variants(t: Triple):
    out = []
    for s1, s2, s3 in _SIGN_PATTERNS:
        c = (t.coords[0] if s1 > 0 else -t.coords[0],
             t.coords[1] if s2 > 0 else -t.coords[1],
             t.coords[2] if s3 > 0 else -t.coords[2])
        out.append(Triple(c, backing=t.backing, check=False))
    return out


class TripleClass:
    """Equivalence class under changing the signs of exactly two coordinates.

    The canonical representative is the sign variant whose embedded
    coordinate vector is lexicographically greatest (exact coefficient
    comparison breaks embedding ties).
    """

    __slots__ = ("representative",)

    def __init__(self, t: Triple):
        if t.backing == "exact":
            t = _common_field(t)
        best = None
        best_key = None
        for v in _variants(t):
            key = v.embed()
            if t.backing == "exact":
                key = (key, tuple(c.coeffs for c in v.coords))
            if best is None or key > best_key:
                best, best_key = v, key
        self.representative = best

    def variants(self):
        return _variants(self.representative)

    def __eq__(self, other):
        return (isinstance(other, TripleClass)
                and self.representative == other.representative)

    def __hash__(self):
        return hash(self.representative)

    def __repr__(self):
        return f"TripleClass[{self.representative!r}]"


# ------------------------------------------------------------------- mu

class MuClass:
    """The value sin^2(pi mu) = Q/4 and, when recognizable, a rational
    representative mu in [0, 1/2]. mu is only defined up to mu -> -mu + n."""

    __slots__ = ("sin_sq_pi_mu", "representative_mu")

    def __init__(self, sin_sq, representative):
        self.sin_sq_pi_mu = sin_sq
        self.representative_mu = representative

    def __repr__(self):
        return f"MuClass(sin^2={self.sin_sq_pi_mu!r}, mu~{self.representative_mu})"


def mu_from_triple(t: Triple, max_den: int = 200) -> MuClass:
    q = quadratic_invariant(t)
    qv = float(q) if not isinstance(q, float) else q
    if isinstance(q, FieldElement):
        if q == 0 or q == 4:
            raise ResonantMu(f"Q = {q!r}")
    elif abs(qv) < 1e-9 or abs(qv - 4) < 1e-9:
        raise ResonantMu(f"Q = {qv}")
    rep = None
    if 0 <= qv <= 4:
        mu = math.asin(math.sqrt(qv / 4)) / math.pi
        guess = Fraction(mu).limit_denominator(max_den)
        if abs(math.sin(math.pi * guess) ** 2 - qv / 4) < 1e-12:
            rep = guess
        else:
            rep = mu
    sin_sq = q * Fraction(1, 4) if isinstance(q, FieldElement) else qv / 4
    return MuClass(sin_sq, rep)


# ---------------------------------------------------------------- orbits

def orbit_enumerate(seed: Triple, group: str = "full_B3",
                    budget: int = 100000):
    """Breadth-first closure of the seed's class under the braid action.

    group "full_B3" uses b1, b2 and inverses; "pure_P3" uses the standard
    pure-braid generators b1^2, b2^2, b2' b1^2 b2 and inverses. Returns a
    frozenset of TripleClass. Raises BudgetExceeded past the budget.
    """
    if seed.backing != "exact":
        raise ValueError("orbit enumeration requires exact backing")
    if group == "full_B3":
        gens = [B1, B2, B1_INV, B2_INV]
    elif group == "pure_P3":
        gens = list(PURE_GENERATORS) + [g.inverse() for g in PURE_GENERATORS]
    else:
        raise ValueError(f"unknown group {group!r}")
    seed = _common_field(seed)
    start = TripleClass(seed)
    seen = {start}
    frontier = [start]
    while frontier:
        new_frontier = []
        for cls in frontier:
            for g in gens:
                img = TripleClass(braid_apply(g, cls.representative))
                if img not in seen:
                    seen.add(img)
                    if len(seen) > budget:
                        raise BudgetExceeded(len(seen))
                    new_frontier.append(img)
        frontier = new_frontier
    return frozenset(seen)


# ---------------------------------------------------------------- escape

def escape_braid(t: Triple, max_iter: int = None) -> BraidWord:
    """Braid word driving some coordinate modulus above 2.

    Requires Q = 4 + c^2 with c > 0. Uses the smallest-coordinate rule:
    the move is chosen by which coordinate currently has the least
    absolute value, after first clearing a zero coordinate if present.
    """
    qv = quadratic_invariant(t)
    qf = float(qv) if not isinstance(qv, float) else qv
    if qf <= 4 + 1e-12:
        raise NotApplicable(f"Q = {qf} <= 4")
    c = math.sqrt(qf - 4)
    coords = list(t.embed())
    word = BraidWord()
    if max(abs(v) for v in coords) > 2:
        return word

    moves = {
        0: BraidWord((2,)),           # smallest is x1
        1: BraidWord((2, 1, -2)),     # smallest is x2 (conjugated generator)
        2: BraidWord((1,)),           # smallest is x3
    }
    # note: letters act left to right, so b2' b1 b2 is written (2, 1, -2)

    def apply_floats(w, cs):
        cur = tuple(cs)
        for k in w.letters:
            cur = _step(k, cur)
        return list(cur)

    if max_iter is None:
        xmin = min(abs(v) for v in coords if abs(v) > 1e-12) if any(
            abs(v) > 1e-12 for v in coords) else 0.0
        delta = min(xmin * xmin, 2 * c) if xmin else 2 * c
        max_iter = math.ceil((12 - sum(abs(v) for v in coords))
                             / max(delta, 1e-9)) + 16

    zero_clear = {2: BraidWord((1,)), 0: BraidWord((2,)), 1: BraidWord((-1,))}
    for i, v in enumerate(coords):
        if abs(v) < 1e-12:
            w = zero_clear[i]
            coords = apply_floats(w, coords)
            word = word * w
            break

    for _ in range(max_iter):
        if max(abs(v) for v in coords) > 2:
            return word
        idx = min(range(3), key=lambda i: abs(coords[i]))
        w = moves[idx]
        coords = apply_floats(w, coords)
        word = word * w
    raise RuntimeError("escape iteration bound exceeded; Q growth stalled")
