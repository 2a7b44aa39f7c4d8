from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from ribbonkit.chord import is_orientable
from ribbonkit.delta import (
    SetSystem,
    apply_bijection,
    are_isomorphic,
    contract,
    delete,
    format_dsys,
    is_delta_matroid,
    is_even,
    is_strong,
    lift,
    parse_dsys,
    strong_iff_lift_even_check,
    twist,
    unlift,
)
from ribbonkit.duality import ribbon_system
from ribbonkit.errors import LabelClash, OddFeasibleSet, SizeLimitExceeded

from conftest import bouquets

E3 = ("1", "2", "3")
FIG1_D = SetSystem.from_sets(E3, [(), ("1",), ("1", "2"), ("1", "3")])
NON_STRONG = SetSystem.from_sets(E3, [(), ("1",), ("2",), ("3",), ("1", "2", "3")])


@st.composite
def set_systems(draw, max_n: int = 4):
    n = draw(st.integers(0, max_n))
    ground = tuple(str(i) for i in range(1, n + 1))
    masks = draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1))
    return SetSystem(ground, frozenset(masks))


def test_delta_matroid_examples():
    assert is_delta_matroid(FIG1_D)
    # exchange from the empty set to 12 at x=1 succeeds through y=2
    assert is_delta_matroid(SetSystem.from_sets(("1", "2"), [(), ("1", "2")]))
    assert not is_delta_matroid(SetSystem.from_sets(E3, [(), E3]))
    assert is_delta_matroid(SetSystem.from_sets(E3, [("2",)]))


def test_strong_examples():
    assert is_strong(FIG1_D)
    assert is_delta_matroid(NON_STRONG) and not is_strong(NON_STRONG)
    assert is_strong(SetSystem.from_sets(("1", "2"), [("1",), ("2",)]))


def test_even_examples():
    assert is_even(SetSystem.from_sets(E3, [(), ("1", "2"), ("1", "3")]))
    assert not is_even(FIG1_D)
    assert is_even(SetSystem.from_sets(E3 + ("4",), [(), ("1", "4"), ("1", "2"), ("1", "3")]))


def test_twist_example():
    t = twist(FIG1_D, {"1"})
    assert set(t.sets()) == {frozenset(x) for x in [("1",), (), ("2",), ("3",)]}
    assert twist(FIG1_D, ()) == FIG1_D


def test_minors():
    d = delete(FIG1_D, "2")
    assert d.ground == ("1", "3")
    assert set(d.sets()) == {frozenset(x) for x in [(), ("1",), ("1", "3")]}
    coloop = delete(SetSystem.from_sets(("1",), [("1",)]), "1")
    assert coloop.ground == () and set(coloop.sets()) == {frozenset()}
    assert delete(contract(FIG1_D, "2"), "3") == contract(delete(FIG1_D, "3"), "2")


def test_lift_examples():
    lifted = lift(FIG1_D, "4")
    want = SetSystem.from_sets(E3 + ("4",), [(), ("1", "4"), ("1", "2"), ("1", "3")])
    assert lifted.inner == want
    empty = lift(SetSystem((), frozenset({0})), "h")
    assert set(empty.inner.sets()) == {frozenset()}
    assert unlift(lifted) == FIG1_D
    assert unlift(want, "4") == FIG1_D
    with pytest.raises(LabelClash):
        lift(FIG1_D, "1")
    with pytest.raises(OddFeasibleSet):
        unlift(FIG1_D, "1")


def test_strong_lift_examples():
    assert strong_iff_lift_even_check(FIG1_D)
    assert not strong_iff_lift_even_check(NON_STRONG)
    assert strong_iff_lift_even_check(SetSystem.from_sets(("1",), [(), ("1",)]))


def test_isomorphism_examples():
    assert are_isomorphic(FIG1_D, FIG1_D) is not None
    a = SetSystem.from_sets(("1", "2"), [()])
    b = SetSystem.from_sets(("1", "2"), [("1", "2")])
    assert are_isomorphic(a, b) is None


def test_limits():
    big = SetSystem(tuple(str(i) for i in range(20)), frozenset({0}))
    with pytest.raises(SizeLimitExceeded):
        is_delta_matroid(big)


def test_dsys_round_trip():
    assert parse_dsys(format_dsys(FIG1_D)) == FIG1_D


@given(set_systems())
def test_strong_iff_lift_is_delta_matroid(s):
    strong_iff_lift_even_check(s)


@given(set_systems(), st.data())
def test_twist_involution_and_isomorphism(s, data):
    X = [e for e in s.ground if data.draw(st.booleans())]
    assert twist(twist(s, X), X) == s
    perm = data.draw(st.permutations(s.ground))
    mapping = dict(zip(s.ground, perm))
    image = apply_bijection(s, mapping)
    found = are_isomorphic(s, image)
    assert found is not None and apply_bijection(s, found) == image


@given(set_systems())
def test_lift_round_trip(s):
    lifted = lift(s, "h")
    assert len(lifted.inner) == len(s)
    assert all(len(B) % 2 == 0 for B in lifted.inner.sets())
    assert unlift(lifted) == s


@given(bouquets(max_n=6))
def test_ribbon_systems_are_strong(d):
    D = ribbon_system(d)
    assert is_delta_matroid(D) and is_strong(D)
    assert is_even(D) == is_orientable(d)


def test_exhaustive_small_systems():
    ground = ("1", "2")
    for k in range(1, 5):
        for fam in itertools.combinations(range(4), k):
            strong_iff_lift_even_check(SetSystem(ground, frozenset(fam)))
