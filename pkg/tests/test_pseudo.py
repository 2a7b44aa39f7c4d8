from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from ribbonkit.chord import ChordDiagram, canonicalize, delete_chords, is_orientable, quasi_trees
from ribbonkit.checks import elementary_neighbours
from ribbonkit.corpus import fixture, make_cn, random_bouquet, random_pseudo
from ribbonkit.delta import lift
from ribbonkit.duality import AnchoredRibbon, partial_dual, reanchor, ribbon_system
from ribbonkit.errors import InvalidCertificate, LabelClash, NotPseudoOrientable
from ribbonkit.interlace import Certificate, adjusted_matrix, is_certificate
from ribbonkit.exact import det
from ribbonkit.labels import sort_labels
from ribbonkit.pseudo import (
    adjust,
    adjust_anchored,
    all_certificates,
    certificate_classes,
    find_certificate,
    is_pseudo_orientable,
    verify_lift_correspondence,
)

from conftest import bouquets

FIG1 = fixture("fig1")


def sets(*items):
    return {frozenset(x) for x in items}


def test_find_certificate_examples():
    c = find_certificate(FIG1)
    assert c is not None
    i, j = FIG1.positions["1"]
    assert c.in_s1(i, 6) != c.in_s1(j, 6)
    assert find_certificate(make_cn(5)) is None
    plain = ChordDiagram.from_word("1 2 1 3 2 3")
    c = find_certificate(plain)
    assert c is not None and c.cut_a == c.cut_b


def test_adjust_examples():
    hat = adjust(FIG1, find_certificate(FIG1), "4")
    assert is_orientable(hat) and hat.n == 4
    assert quasi_trees(hat) == sets((), ("1", "4"), ("1", "2"), ("1", "3"))
    one = ChordDiagram.from_word("e e", "e")
    a = adjust(one, find_certificate(one), "h")
    assert canonicalize(a, labeled=False) == canonicalize(ChordDiagram.from_word("e h e h"), labeled=False)
    assert ribbon_system(a) == lift(ribbon_system(one), "h").inner
    plain = ChordDiagram.from_word("1 2 1 2")
    a = adjust(plain, find_certificate(plain), "h")
    assert ribbon_system(a) == lift(ribbon_system(plain), "h").inner
    with pytest.raises(LabelClash):
        adjust(FIG1, find_certificate(FIG1), "1")
    with pytest.raises(InvalidCertificate):
        adjust(FIG1, Certificate(0, 0), "4")


def test_adjust_anchored_examples():
    c = find_certificate(FIG1)
    assert adjust_anchored(AnchoredRibbon(FIG1), c, "4").base == adjust(FIG1, c, "4")
    g = reanchor(AnchoredRibbon(FIG1), {"1"})
    a = adjust_anchored(g, find_certificate(g.base), "4")
    assert a.anchor == {"1", "4"}
    assert a.delta_matroid() == lift(g.delta_matroid(), "4").inner
    d = ChordDiagram.from_word("1 2 1 2")
    g2 = reanchor(AnchoredRibbon(d), {"1", "2"})
    assert adjust_anchored(g2, find_certificate(g2.base), "h").anchor == {"1", "2"}


def test_pseudo_verdicts():
    assert is_pseudo_orientable(fixture("fig7-b1")).pseudo
    assert not is_pseudo_orientable(fixture("fig7-b2")).pseudo
    assert is_pseudo_orientable(make_cn(4)).pseudo
    assert not is_pseudo_orientable(make_cn(5)).pseudo
    rep = is_pseudo_orientable(FIG1, with_adjusted=True).to_dict()
    assert rep["pseudo"] and rep["certificate"] and "word:" in rep["adjusted"]


def test_lift_correspondence_examples():
    assert verify_lift_correspondence(FIG1, "4")
    assert verify_lift_correspondence(ChordDiagram.from_word("e e", "e"))
    with pytest.raises(NotPseudoOrientable):
        verify_lift_correspondence(make_cn(5))


def test_cn_threshold():
    for n in range(1, 9):
        assert is_pseudo_orientable(make_cn(n)).pseudo == (n <= 4)


@given(st.integers(0, 10**6), st.integers(1, 10))
def test_random_pseudo_lift(seed, n):
    d = random_pseudo(seed, n)
    assert verify_lift_correspondence(d)
    a = adjust(d, find_certificate(d))
    assert is_orientable(a) and a.n == d.n + 1


@given(st.integers(0, 10**6), st.integers(1, 7))
def test_minor_closure(seed, n):
    d = random_pseudo(seed, n)
    for nb in elementary_neighbours(d):
        assert find_certificate(nb) is not None
    for e in d.edges:
        assert find_certificate(delete_chords(d, {e})) is not None


@given(st.integers(0, 10**6), st.integers(1, 6))
def test_certificate_transport(seed, n):
    d = random_pseudo(seed, n)
    for X in quasi_trees(d):
        assert find_certificate(partial_dual(d, X)) is not None


@given(st.integers(0, 10**6), st.integers(1, 7))
def test_equivalent_certificates_agree(seed, n):
    d = random_pseudo(seed, n)
    total = len(quasi_trees(d))
    lifted = lift(ribbon_system(d), "h").inner
    for c in all_certificates(d):
        a = adjust(d, c, "h")
        assert ribbon_system(a) == lifted
        assert det(adjusted_matrix(d, c).plus_identity()) == total
        if c.cut_a != c.cut_b:
            # swapping the roles of the two arcs selects the same end partition
            swapped = adjust(d, Certificate(c.cut_b, c.cut_a), "h")
            assert canonicalize(swapped) == canonicalize(a)
    assert sum(len(cls) for cls in certificate_classes(d)) == len(all_certificates(d))


@given(bouquets(max_n=6))
def test_certificate_search_matches_brute_force(d):
    found = find_certificate(d)
    every = all_certificates(d)
    assert (found is None) == (not every)
    if found:
        assert found == every[0] and is_certificate(d, found)
    if len(d.twisted) <= 1:
        assert found is not None


def test_pseudo_report_on_generated_orientable():
    d = random_bouquet(1, 6, 0.0)
    rep = is_pseudo_orientable(d)
    assert rep.pseudo and rep.certificate.cut_a == rep.certificate.cut_b == 0
    assert sort_labels(rep.anchor_used) == []
