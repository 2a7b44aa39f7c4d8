from __future__ import annotations

import pytest
from hypothesis import given

from ribbonkit.chord import (
    ChordDiagram,
    boundary_components,
    boundary_count_by_rank,
    canonicalize,
    format_bqt,
    interlace,
    is_orientable,
    is_quasi_tree,
    parse_bqt,
    parse_diagram,
    petrial,
    quasi_trees,
    reflect,
    rotate,
)
from ribbonkit.corpus import fixture, make_cn
from ribbonkit.errors import BqtSyntaxError, MalformedWord, SizeLimitExceeded, UnknownEdge, UnknownTwistLabel
from ribbonkit.exact import gf2_nullity
from ribbonkit.chord import interlace_rows

from conftest import bouquets, diagram_and_subset

FIG1 = fixture("fig1")


def sets(*items):
    return {frozenset(x) for x in items}


def test_parse_three_chord_example():
    d = parse_diagram("word: 1 2 1 3 2 3 / twisted: 1")
    assert d.n == 3 and d.twisted == {"1"}
    assert interlace(d, "1", "2")
    # read literally, this word crosses 1 with 2 and 2 with 3, but not 1 with 3
    assert interlace(d, "2", "3") and not interlace(d, "1", "3")


def test_parse_empty_word():
    d = parse_diagram("word:")
    assert d.n == 0 and quasi_trees(d) == {frozenset()}


def test_parse_odd_occurrence():
    with pytest.raises(MalformedWord):
        parse_diagram("word: 1 2 1\ntwisted:")


def test_parse_unknown_twist_label():
    with pytest.raises(UnknownTwistLabel):
        parse_diagram("word: 1 1\ntwisted: 2")


def test_syntax_error_has_position():
    with pytest.raises(BqtSyntaxError) as info:
        parse_bqt("word: 1 1\n  bogus line\n")
    assert info.value.line == 2 and info.value.column == 3


def test_bqt_round_trip_with_anchor_and_cert():
    text = "bouquet demo\nword: 1 2 1 2\ntwisted: 1 2\nanchor: 1\ncert S: 0 2\n"
    doc = parse_bqt(text)
    again = parse_bqt(format_bqt(doc.diagram, doc.name, doc.anchor, doc.certificates))
    assert again.diagram == doc.diagram and again.anchor == {"1"} and again.certificates == {"S": (0, 2)}


def test_fig1_interlacing():
    assert interlace(FIG1, "1", "2")
    assert not interlace(FIG1, "2", "3")
    assert not interlace(ChordDiagram.from_word("1 1 2 2"), "1", "2")


def test_interlace_unknown_edge():
    with pytest.raises(UnknownEdge):
        interlace(FIG1, "1", "9")


def test_boundary_small_cases():
    assert boundary_components(ChordDiagram.from_word("e e"), {"e"}).component_count == 2
    assert boundary_components(ChordDiagram.from_word("e e", "e"), {"e"}).component_count == 1
    assert boundary_components(ChordDiagram.from_word("1 2 1 2"), {"1", "2"}).component_count == 1
    assert boundary_components(FIG1, ()).component_count == 1


def test_fig1_quasi_trees():
    assert quasi_trees(FIG1) == sets((), ("1",), ("1", "2"), ("1", "3"))
    assert is_quasi_tree(FIG1, {"1"})
    assert not is_quasi_tree(FIG1, {"2", "3"})


def test_c5_quasi_tree_count():
    assert len(quasi_trees(make_cn(5))) == 22


def test_quasi_tree_limit():
    with pytest.raises(SizeLimitExceeded):
        quasi_trees(make_cn(6), limit=5)


def test_petrial_examples():
    assert petrial(ChordDiagram.from_word("e e"), {"e"}).twisted == {"e"}
    assert petrial(FIG1, ()) == FIG1
    p = petrial(FIG1, {"1"})
    assert p.word == FIG1.word and not p.twisted


def test_orientability():
    assert not is_orientable(FIG1)
    assert is_orientable(ChordDiagram.from_word(""))


def test_canonical_examples():
    assert canonicalize(ChordDiagram.from_word("2 1 2 1"), labeled=False).word == ("1", "2", "1", "2")
    c5 = make_cn(5)
    forms = {canonicalize(rotate(c5, k), labeled=False) for k in range(10)}
    assert len(forms) == 1
    one = ChordDiagram.from_word("e e", "e")
    assert canonicalize(one) == canonicalize(reflect(one))


@given(diagram_and_subset(max_n=6))
def test_boundary_equals_nullity_plus_one(data):
    d, X = data
    report = boundary_components(d, X)
    assert report.component_count == gf2_nullity(interlace_rows(d), d.mask(X)) + 1
    assert report.component_count == boundary_count_by_rank(d, X)
    assert len(report.directed_cycles) % 2 == 0
    visited = [p for cyc in report.directed_cycles for p in cyc]
    assert len(visited) == len(set(visited))


@given(diagram_and_subset(max_n=6))
def test_petrial_involution(data):
    d, X = data
    p = petrial(d, X)
    assert p.word == d.word and petrial(p, X) == d


@given(diagram_and_subset(max_n=6))
def test_quasi_tree_symmetry_invariance(data):
    d, X = data
    want = is_quasi_tree(d, X)
    assert is_quasi_tree(rotate(d, 3), X) == want
    assert is_quasi_tree(reflect(d), X) == want


@given(bouquets(max_n=5))
def test_canonicalize_idempotent(d):
    for labeled in (True, False):
        c = canonicalize(d, labeled=labeled)
        assert canonicalize(c, labeled=labeled) == c
        assert canonicalize(reflect(rotate(d, 1)), labeled=labeled) == c


@given(bouquets(max_n=6))
def test_quasi_trees_cross_check(d):
    assert quasi_trees(d) == quasi_trees(d, cross_check=True)


@given(bouquets(max_n=6))
def test_serialization_round_trip(d):
    assert parse_diagram(format_bqt(d)) == canonicalize(d)
