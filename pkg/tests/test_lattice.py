from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kvwitness.errors import DimensionMismatch, DuplicateCurve, NonPrimeTerm, UnknownCurve
from kvwitness.lattice import (
    CANONICAL,
    BlowUpRecord,
    Divisor,
    arithmetic_genus,
    blow_up,
    canonical_square,
    divisor_class,
    floor_divisor,
    format_divisor,
    intersect,
    new_projective_plane,
    register_curve,
    register_plane_curve,
    self_intersection,
)

from conftest import random_surfaces


def test_plane_basics():
    s = register_plane_curve(new_projective_plane(), "L", 1)
    s = register_plane_curve(s, "Q", 2)
    assert canonical_square(s) == 9
    assert intersect(s, s.curve("L").cls, s.curve("Q").cls) == 2
    assert arithmetic_genus(s, s.curve("Q").cls) == 0
    s = register_plane_curve(s, "D", 3)
    assert arithmetic_genus(s, s.curve("D").cls) == 1


def test_blow_up_bookkeeping():
    s = register_plane_curve(new_projective_plane(), "L", 1)
    s = blow_up(s, BlowUpRecord("e_1", {"L": 1}))
    assert s.basis_names == ("h", "e_1")
    assert s.curve("E_1").cls == (0, 1)
    assert s.curve("L").cls == (1, -1)
    assert self_intersection(s, s.curve("E_1").cls) == -1
    assert canonical_square(s) == 8
    with pytest.raises(UnknownCurve):
        blow_up(s, BlowUpRecord("e_2", {"M": 1}))
    with pytest.raises(DuplicateCurve):
        blow_up(s, BlowUpRecord("e_1", {}))
    with pytest.raises(ValueError):
        register_plane_curve(s, "M", 1)
    with pytest.raises(ValueError):
        register_curve(s, CANONICAL, [0, 0])
    with pytest.raises(DimensionMismatch):
        register_curve(s, "X", [1])


@settings(max_examples=100)
@given(random_surfaces(), st.integers(0, 2), st.integers(0, 2), st.data())
def test_intersection_drop_rule(s, m1, m2, data):
    names = s.curve_names
    a = data.draw(st.sampled_from(names))
    b = data.draw(st.sampled_from([n for n in names if n != a])) if len(names) > 1 else a
    before = intersect(s, s.curve(a).cls, s.curve(b).cls)
    center = {a: m1} if a == b else {a: m1, b: m2}
    t = blow_up(s, BlowUpRecord("new", center))
    after = intersect(t, t.curve(a).cls, t.curve(b).cls)
    assert before - after == (m1 * m1 if a == b else m1 * m2)
    assert canonical_square(t) == canonical_square(s) - 1
    assert t.rank == s.rank + 1
    # new exceptional curve meets each strict transform in its multiplicity
    e = t.curve("New").cls
    assert intersect(t, e, t.curve(a).cls) == center[a]
    assert intersect(t, t.canonical, e) == -1


@settings(max_examples=100)
@given(random_surfaces())
def test_noether_and_adjunction(s):
    assert canonical_square(s) == 10 - s.rank
    for c in s.curves:
        g = arithmetic_genus(s, c.cls)
        assert g.denominator == 1
        if c.name.startswith("E"):
            assert g == 0


@settings(max_examples=100)
@given(random_surfaces(), st.data())
def test_intersection_is_bilinear_and_symmetric(s, data):
    names = list(s.curve_names) + [CANONICAL]
    coef = st.fractions(-3, 3, max_denominator=4)
    d1 = Divisor({n: data.draw(coef) for n in data.draw(st.lists(st.sampled_from(names), max_size=4))})
    d2 = Divisor({n: data.draw(coef) for n in data.draw(st.lists(st.sampled_from(names), max_size=4))})
    k = data.draw(coef)
    c1, c2 = divisor_class(s, d1), divisor_class(s, d2)
    assert intersect(s, c1, c2) == intersect(s, c2, c1)
    assert divisor_class(s, d1 + d2 * k) == c1 + c2 * k


def test_divisor_algebra_and_floor():
    d = Divisor({"A": "1/2", "B": 0, "C": "-7/5"})
    assert list(d) == ["A", "C"]
    assert d.coefficient("B") == 0 and "B" not in d
    assert (d - d) == Divisor()
    assert (d * 2)["A"] == 1
    assert not d.is_integral()
    s = register_plane_curve(register_plane_curve(new_projective_plane(), "A", 1), "C", 1)
    assert floor_divisor(s, d) == Divisor({"A": 0, "C": -2})
    with pytest.raises(NonPrimeTerm):
        floor_divisor(s, Divisor({CANONICAL: Fraction(1, 2)}))
    assert format_divisor(Divisor({"A": 1, "C": Fraction(-3, 5)})) == "A - 3/5*C"
    assert format_divisor(-Divisor.curve("A")) == "-A"
