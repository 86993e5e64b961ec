"""Braid dynamics on monodromy triples: action, invariant, classes, orbits, escape."""
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pvimu.cyclo import FieldContext, field_new
from pvimu.triples import (
    B1,
    B2,
    B1_INV,
    B2_INV,
    BraidWord,
    BudgetExceeded,
    InadmissibleTriple,
    MuClass,
    NotApplicable,
    ResonantMu,
    Triple,
    TripleClass,
    braid_apply,
    escape_braid,
    mu_from_triple,
    orbit_enumerate,
    quadratic_invariant,
    symmetry_apply,
)

TETRA = Triple.from_cos(((1, 2), (1, 3), (1, 3)))          # (0, -1, -1)
CUBE = Triple.from_cos(((1, 3), (1, 2), (1, 4)))           # (-1, 0, -sqrt2)
ICOSA = Triple.from_cos(((1, 2), (1, 3), (1, 5)))          # (0, -1, -golden)
GREAT_ICOSA = Triple.from_cos(((1, 2), (1, 3), (2, 5)))    # (0, -1, -2cos(2pi/5))
GREAT_DODECA = Triple.from_cos(((1, 2), (1, 5), (2, 5)))   # (0, -phi, -(phi-1))


def exact(values):
    return Triple.exact_rational(values)


# ------------------------------------------------------------ basic action

def test_braid_fixed_point_of_b1():
    t = exact([0, 1, 1])
    assert braid_apply(B1, t).coords == t.coords


def test_braid_on_cube_seed_matches_hand_evaluation():
    img1 = braid_apply(B1, CUBE).embed()
    assert img1 == pytest.approx((1.0, -math.sqrt(2), 0.0), abs=1e-12)
    img2 = braid_apply(B2, CUBE).embed()
    assert img2 == pytest.approx((-math.sqrt(2), 0.0, -1.0), abs=1e-12)


def test_symmetries_match_hand_evaluation():
    assert symmetry_apply("i1", exact([1, 1, 1])).embed() == (0.0, -1.0, 1.0)
    assert symmetry_apply("i2", exact([0, 1, 1])).embed() == (-1.0, 0.0, -1.0)
    t = Triple((0.0, 0.0, 0.7), check=False)
    assert symmetry_apply("i2", t).coords == (0.0, 0.0, -0.7)


def test_braid_word_algebra():
    w = BraidWord.parse("b1 b2' b1")
    assert w.letters == (1, -2, 1)
    assert (w * w.inverse()).letters == (1, -2, 1, -1, 2, -1)
    assert BraidWord.parse("1 -2").letters == (1, -2)
    assert (B1 ** 3).letters == (1, 1, 1)
    with pytest.raises(ValueError):
        BraidWord((3,))


def test_quadratic_invariant_examples():
    assert quadratic_invariant(exact([0, 1, 1])) == 2
    assert quadratic_invariant(Triple((0, 0, 0), check=False)) == 0
    assert quadratic_invariant(CUBE) == 3


def test_admissibility_guard():
    with pytest.raises(InadmissibleTriple):
        Triple((0.0, 0.0, 1.0))
    Triple((0.0, 0.0, 1.0), check=False)  # internal escape hatch


# ------------------------------------------------------------------- classes

def test_class_canonical_rep_stable_across_variants():
    cls = TripleClass(CUBE)
    for v in cls.variants():
        assert TripleClass(v) == cls


def test_class_equivalence_is_two_sign_flips():
    t = exact([1, 2, 3])
    assert TripleClass(exact([-1, -2, 3])) == TripleClass(t)
    assert TripleClass(exact([-1, 2, -3])) == TripleClass(t)
    assert TripleClass(exact([1, -2, -3])) == TripleClass(t)
    assert TripleClass(exact([-1, 2, 3])) != TripleClass(t)


# ------------------------------------------------------------------------ mu

def test_mu_tetrahedron():
    m = mu_from_triple(TETRA)
    assert m.sin_sq_pi_mu == Fraction(1, 2)
    assert m.representative_mu == Fraction(1, 4)


def test_mu_icosahedron():
    m = mu_from_triple(ICOSA)
    assert m.representative_mu == Fraction(2, 5)
    assert abs(float(m.sin_sq_pi_mu) - (10 + 2 * math.sqrt(5)) / 16) < 1e-12


def test_mu_resonant_rejected():
    with pytest.raises(ResonantMu):
        mu_from_triple(Triple((0, 0, 0), check=False))
    ctx = FieldContext(1)
    degenerate = Triple(tuple(ctx.from_rational(v) for v in (2, 0, 0)),
                        check=False)
    with pytest.raises(ResonantMu):
        mu_from_triple(degenerate)


# --------------------------------------------------------------------- orbits

def test_tetrahedron_orbit_classes():
    orbit = orbit_enumerate(exact([0, 1, 1]), "full_B3")
    assert len(orbit) == 4
    expected = {TripleClass(exact(v))
                for v in ([0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1])}
    assert orbit == expected


def test_cube_orbit_size():
    assert len(orbit_enumerate(CUBE, "full_B3")) == 9


def test_orbit_budget_exceeded_for_non_cosine_rational():
    with pytest.raises(BudgetExceeded) as exc:
        orbit_enumerate(exact([Fraction(1, 2)] * 3), "full_B3", budget=2000)
    assert exc.value.partial_count > 2000


def test_pure_braid_orbit_of_cube_seed():
    orbit = orbit_enumerate(CUBE, "pure_P3")
    assert len(orbit) == 3


# --------------------------------------------------------------------- escape

def test_escape_from_symmetric_large_invariant():
    t = Triple((-1.9, -1.9, -1.9))
    w = escape_braid(t)
    out = braid_apply(w, t)
    assert max(abs(c) for c in out.coords) > 2


def test_escape_not_applicable_below_threshold():
    with pytest.raises(NotApplicable):
        escape_braid(exact([0, 1, 1]))


def test_escape_already_escaped_is_empty_word():
    t = Triple((2.5, 0.3, 0.4))
    assert len(escape_braid(t)) == 0


def test_escape_with_zero_coordinate():
    t = Triple((0.0, 1.3, 1.7))
    q = quadratic_invariant(t)
    if q > 4:
        w = escape_braid(t)
        assert max(abs(c) for c in braid_apply(w, t).coords) > 2


# ----------------------------------------------------------------- properties

small_fracs = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def exact_triples(draw):
    ctx = field_new(12)
    coords = []
    for _ in range(3):
        cs = draw(st.lists(small_fracs, min_size=1, max_size=4))
        coords.append(ctx.element(cs))
    return Triple(tuple(coords), check=False)


@given(exact_triples())
@settings(max_examples=120, deadline=None)
def test_invariant_preserved_by_generators_and_symmetries(t):
    q = quadratic_invariant(t)
    for w in (B1, B2, B1_INV, B2_INV):
        assert quadratic_invariant(braid_apply(w, t)) == q
    for kind in ("i1", "i2"):
        assert quadratic_invariant(symmetry_apply(kind, t)) == q


@given(exact_triples())
@settings(max_examples=80, deadline=None)
def test_braid_relation_and_inverses(t):
    lhs = braid_apply(BraidWord((1, 2, 1)), t)
    rhs = braid_apply(BraidWord((2, 1, 2)), t)
    assert lhs.coords == rhs.coords
    assert braid_apply(B1 * B1_INV, t).coords == t.coords
    assert braid_apply(B2 * B2_INV, t).coords == t.coords


@given(exact_triples())
@settings(max_examples=60, deadline=None)
def test_center_acts_trivially_on_classes(t):
    w = (B1 * B2) ** 3
    assert TripleClass(braid_apply(w, t)) == TripleClass(t)


def test_five_orbits_invariant_under_symmetries():
    for seed in (TETRA, CUBE, ICOSA, GREAT_ICOSA, GREAT_DODECA):
        orbit = orbit_enumerate(seed, "full_B3")
        for kind in ("i1", "i2"):
            mapped = {TripleClass(symmetry_apply(kind, cls.representative))
                      for cls in orbit}
            assert mapped == orbit


def test_triple_json_round_trip():
    for t in (CUBE, Triple((0.25, -1.5, 0.75))):
        back = Triple.from_json(t.to_json())
        assert back.backing == t.backing
        if t.backing == "exact":
            assert back.coords == t.coords
        else:
            assert back.coords == pytest.approx(t.coords)
