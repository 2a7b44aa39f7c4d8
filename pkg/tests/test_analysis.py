from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from ribbonkit.analysis import (
    CountSequence,
    IntPolynomial,
    check_log_concavity,
    count_real_roots,
    is_hurwitz_stable,
    parse_poly,
    q_sequence,
    qt_poly,
    qt_poly_eval,
    rhp_root_count,
    specialize,
    stability_report,
    stanley_counts,
    stanley_verdict,
)
from ribbonkit.chord import ChordDiagram, delete_chords, quasi_trees
from ribbonkit.corpus import fixture, make_cn, random_orientable, random_pseudo
from ribbonkit.duality import AnchoredRibbon, partial_dual, ribbon_system
from ribbonkit.errors import MissingVariable, OverlappingParts, ZeroPolynomial
from ribbonkit.labels import sort_labels

FIG1 = fixture("fig1")


def test_qt_poly_examples():
    assert qt_poly(make_cn(5)).coefficients == (1, 5, 5, 5, 5, 1)
    assert qt_poly(make_cn(6)).coefficients == (1, 6, 9, 8, 12)
    assert qt_poly(FIG1).coefficients == (1, 1, 2)
    assert str(qt_poly(make_cn(5))) == "x^5 + 5x^4 + 5x^3 + 5x^2 + 5x + 1"


def test_qt_poly_eval_examples():
    ones = {e: 1 for e in FIG1.edges}
    assert qt_poly_eval(FIG1, ones) == 4
    assert qt_poly_eval(FIG1, {"1": 1, "2": 0, "3": 0}) == 2
    assert qt_poly_eval(make_cn(5), {e: 1 for e in make_cn(5).edges}) == 22
    assert qt_poly_eval(FIG1, {"1": Fraction(1, 2), "2": 2, "3": 0}) == Fraction(5, 2)
    with pytest.raises(MissingVariable):
        qt_poly_eval(FIG1, {"1": 1})


def test_rhp_examples():
    assert rhp_root_count(IntPolynomial.of(1, 1)) == 0
    assert rhp_root_count(IntPolynomial.of(-1, 1)) == 1
    assert rhp_root_count(qt_poly(make_cn(5))) >= 1
    assert not is_hurwitz_stable(qt_poly(make_cn(6)))
    assert is_hurwitz_stable(qt_poly(FIG1))
    assert is_hurwitz_stable(qt_poly(fixture("fig8")))
    with pytest.raises(ZeroPolynomial):
        rhp_root_count(IntPolynomial(()))


def test_imaginary_axis_roots_do_not_count():
    # (x^2 + 1)(x + 2) and x^2 (x - 3)^2 (x^2 + 4)
    assert rhp_root_count([2, 1, 2, 1]) == 0
    p = np.polymul(np.polymul([1, 0, 0], [1, -6, 9]), [1, 0, 4])[::-1]
    assert rhp_root_count([int(c) for c in p]) == 1
    rep = stability_report([2, 1, 2, 1])
    assert rep.stable and rep.rhp_count == 0


def test_report_witness():
    rep = stability_report(qt_poly(make_cn(6))).to_dict()
    assert rep["stable"] is False and rep["rhp_count"] == 2
    re, im = rep["witness_root"]
    assert re > 0


def test_poly_text_round_trip():
    p = IntPolynomial.of(1, 0, -3, 4)
    assert parse_poly(p.to_text()) == p


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=9))
def test_rhp_against_numpy(coeffs):
    assume(coeffs[-1] != 0)
    roots = np.roots(coeffs[::-1])
    assume(all(abs(r.real) > 1e-6 for r in roots))
    distinct = []
    for r in roots:
        if all(abs(r - s) > 1e-5 for s in distinct):
            distinct.append(r)
    assume(len(distinct) == len(roots))
    assert rhp_root_count(coeffs) == sum(1 for r in roots if r.real > 0)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=8))
def test_sturm_real_root_count(coeffs):
    assume(coeffs[-1] != 0)
    roots = np.roots(coeffs[::-1])
    real = [r.real for r in roots if abs(r.imag) < 1e-9]
    distinct = []
    for r in sorted(real):
        if not distinct or abs(r - distinct[-1]) > 1e-6:
            distinct.append(r)
    assume(all(abs(r.imag) > 1e-4 for r in roots if abs(r.imag) >= 1e-9))
    assert count_real_roots([Fraction(c) for c in coeffs]) == len(distinct)


def test_q_sequence_examples():
    assert q_sequence(FIG1).values == (1, 3)
    assert q_sequence(make_cn(5)).values == (1, 10, 10, 1)
    assert q_sequence(FIG1, {"1", "2"}).values[0] >= 1


def test_log_concavity_examples():
    assert check_log_concavity([1, 2, 1]).passes
    v = check_log_concavity([1, 1, 0, 1])
    assert v.internal_zeros == (2,) and not v.passes
    assert check_log_concavity(q_sequence(make_cn(5))).passes
    assert check_log_concavity([1, 3, 1]).ultra_log_concave
    flat = check_log_concavity([1, 1, 1])
    assert flat.log_concave and not flat.ultra_log_concave and flat.failures == (1,)
    assert not check_log_concavity([1, 1, 1, 1, 1, 1, 5]).log_concave
    assert not check_log_concavity([1, 1, 3]).log_concave
    assert check_log_concavity(CountSequence((0, 0, 2, 2), 1), "LC").passes


def test_stanley_examples():
    d = ChordDiagram.from_word("1 2 1 2")
    D = ribbon_system(d)
    c = stanley_counts(D, d.edges)
    assert c.values == (1, 0, 1)
    assert stanley_verdict(c)[0]
    assert stanley_counts(D, ["1"], [["2"]], [3]).values == (0, 0)
    with pytest.raises(OverlappingParts):
        stanley_counts(D, ["1"], [["1", "2"]], [1])


@given(st.integers(0, 10**6), st.integers(1, 8), st.data())
def test_stanley_parity_and_ulc(seed, n, data):
    d = random_orientable(seed, n)
    D = ribbon_system(d)
    labels = list(d.edges)
    parts = [data.draw(st.integers(0, 2)) for _ in labels]
    R = [e for e, p in zip(labels, parts) if p == 0]
    S1 = [e for e, p in zip(labels, parts) if p == 1]
    a1 = data.draw(st.integers(0, len(S1)))
    ok, why = stanley_verdict(stanley_counts(D, R, [S1], [a1]))
    assert ok, why


@given(st.integers(0, 10**6), st.integers(1, 9))
def test_pseudo_polynomials_stable(seed, n):
    d = random_pseudo(seed, n)
    assert is_hurwitz_stable(qt_poly(d))


@given(st.integers(0, 10**6), st.integers(1, 7), st.data())
def test_q_sequences_ulc(seed, n, data):
    d = random_pseudo(seed, n)
    Q = data.draw(st.sampled_from(sorted(quasi_trees(d), key=sort_labels)))
    assert check_log_concavity(q_sequence(d, Q)).passes


@given(st.integers(0, 10**6), st.integers(1, 7), st.data())
def test_specialization_stays_stable(seed, n, data):
    d = random_pseudo(seed, n)
    e = data.draw(st.sampled_from(d.edges))
    value = data.draw(st.fractions(min_value=0, max_value=5, max_denominator=4))
    coeffs = specialize(AnchoredRibbon(d), {e: value})
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    assert is_hurwitz_stable([int(c * den) for c in coeffs])


@given(st.integers(0, 10**6), st.integers(1, 7), st.data())
def test_deletion_and_contraction_specialize(seed, n, data):
    d = random_pseudo(seed, n)
    e = data.draw(st.sampled_from(d.edges))
    g = AnchoredRibbon(d)
    qts = quasi_trees(d)
    if any(e not in X for X in qts):
        # not a bridge: deletion keeps exactly the quasi-trees avoiding e
        want = specialize(g, {e: 0})
        assert [Fraction(c) for c in qt_poly(delete_chords(d, {e})).coefficients] == want


@given(st.integers(0, 10**6), st.integers(1, 7), st.data())
def test_partial_dual_reciprocity(seed, n, data):
    d = random_pseudo(seed, n)
    Q = data.draw(st.sampled_from(sorted(quasi_trees(d), key=sort_labels)))
    dual = partial_dual(d, Q)
    point = {e: Fraction(data.draw(st.integers(1, 5)), data.draw(st.integers(1, 3))) for e in d.edges}
    inverted = {e: (1 / v if e in Q else v) for e, v in point.items()}
    scale = Fraction(1)
    for e in Q:
        scale *= point[e]
    assert qt_poly_eval(dual, point) == scale * qt_poly_eval(d, inverted)
    if len(Q) == d.n:
        assert qt_poly(dual) == qt_poly(d).reversed(d.n)
