from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kvwitness.errors import NonIntegralDivisor
from kvwitness.lattice import CANONICAL, Divisor, new_projective_plane, register_plane_curve
from kvwitness.rr import Verdict, euler_characteristic, run_witness_pipeline, search_witness_divisors

from conftest import random_surfaces


def test_chi_on_the_plane():
    s = register_plane_curve(new_projective_plane(), "L", 1)
    # chi(O(d)) = (d+1)(d+2)/2 on P^2
    for d in range(-4, 5):
        assert euler_characteristic(s, Divisor.curve("L", d)) == Fraction((d + 1) * (d + 2), 2)


@settings(max_examples=100)
@given(random_surfaces(), st.data())
def test_serre_duality_symmetry(s, data):
    names = data.draw(st.lists(st.sampled_from(s.curve_names), max_size=4))
    d = Divisor({n: data.draw(st.integers(-4, 4)) for n in names})
    k_minus_d = Divisor.curve(CANONICAL) - d
    assert euler_characteristic(s, d) == euler_characteristic(s, k_minus_d)
    assert euler_characteristic(s, Divisor()) == 1


def test_non_integral_divisor_rejected(built):
    with pytest.raises(NonIntegralDivisor):
        euler_characteristic(built.surface, Divisor({"D": Fraction(1, 2)}))


def test_zero_boundary_is_inconclusive(built):
    r = run_witness_pipeline(built, relative_boundary=Divisor())
    assert r.chi == -1
    assert not r.leray_gate.nef
    assert r.leray_gate.table["L_ad"] == -1
    assert r.verdict is Verdict.INCONCLUSIVE


def test_sign_flip_is_inconclusive(built):
    A = built.divisor("A")
    r = run_witness_pipeline(built, ample=-A)
    assert r.ample_sign == -1
    assert r.verdict is Verdict.INCONCLUSIVE


def test_gate_boundary_range(built):
    r = run_witness_pipeline(built, relative_boundary=Divisor({"L_ad": 1}))
    assert not r.leray_gate.boundary_in_range
    assert r.verdict is Verdict.INCONCLUSIVE


def test_sweep_contains_ample_candidate_with_nonnegative_chi(built):
    # found by exhaustive search over {-1, 0, 1}-combinations of F_a, F_b, G_3
    cands = search_witness_divisors(built, curves=["F_a", "F_b", "G_3"])
    assert len(cands) == 26
    assert any(c.ample_sign > 0 and c.chi >= 0 and c.verdict is Verdict.INCONCLUSIVE for c in cands)
    hit = [c for c in cands if c.ample == built.divisor("A")]
    assert len(hit) == 1 and hit[0].verdict is Verdict.H1_NONZERO_CERTIFIED


def test_narrative_steps(built):
    r = run_witness_pipeline(built)
    names = [s.name for s in r.narrative]
    assert names == ["ample", "pullback", "leray_gate", "riemann_roch", "cone_remark"]
    assert all(s.holds for s in r.narrative[:4])
    assert r.narrative[-1].holds is None
