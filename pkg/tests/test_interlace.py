from __future__ import annotations


import pytest
from hypothesis import given, strategies as st

from ribbonkit.chord import ChordDiagram, quasi_trees
from ribbonkit.corpus import fixture, fixture_certificate, make_cn, random_pseudo
from ribbonkit.delta import lift
from ribbonkit.duality import ribbon_system
from ribbonkit.errors import IndexMismatch, InvalidCertificate, LabelClash, NotOrientable, NotSymmetric
from ribbonkit.exact import LabeledMatrix, det, is_pu, principal_minors, represented_system, smith_normal_form
from ribbonkit.interlace import (
    Certificate,
    Orientation,
    adjusted_matrix,
    detection_report,
    hat_matrix,
    m2,
    mpm,
    verify_detection,
)
from ribbonkit.pseudo import adjust, find_certificate
from ribbonkit.checks import EX316_S, EX316_T, FIG1_MATRIX

from conftest import bouquets

FIG1 = fixture("fig1")
EX316 = fixture("ex316")


def test_m2_examples():
    assert m2(FIG1).entries == ((1, 1, 1), (1, 0, 0), (1, 0, 0))
    assert m2(ChordDiagram.from_word("")).n == 0
    c5 = m2(make_cn(5))
    for i in range(5):
        for j in range(5):
            cyc = (i - j) % 5 in (1, 4)
            assert c5.entries[i][j] == (1 if i == j or cyc else 0)


def test_hat_matrix_examples():
    one = LabeledMatrix.from_rows(("1",), [[1]], "GF2")
    assert hat_matrix(one, "h").entries == ((0, 1), (1, 0))
    h = hat_matrix(m2(FIG1), "4")
    assert represented_system(h) == lift(ribbon_system(FIG1), "4").inner
    zero = hat_matrix(LabeledMatrix.zeros(("1", "2"), "GF2"), "h")
    assert all(x == 0 for r in zero.entries for x in r)
    with pytest.raises(LabelClash):
        hat_matrix(one, "1")
    with pytest.raises(NotSymmetric):
        hat_matrix(LabeledMatrix.from_rows(("1", "2"), [[0, 1], [0, 0]], "GF2"), "h")


def test_mpm_examples():
    m = mpm(ChordDiagram.from_word("1 2 1 2"))
    assert abs(m.entries[0][1]) == 1 and m.entries[0][1] == -m.entries[1][0]
    assert det(m) == 1
    assert all(x == 0 for r in mpm(ChordDiagram.from_word("1 1 2 2")).entries for x in r)
    hat = adjust(FIG1, fixture_certificate("fig1", "lower"), "4")
    assert det(mpm(hat).plus_identity()) == 4
    with pytest.raises(NotOrientable):
        mpm(FIG1)


def test_adjusted_matrix_fixtures():
    assert adjusted_matrix(EX316, fixture_certificate("ex316", "S")).entries == EX316_S
    assert adjusted_matrix(EX316, fixture_certificate("ex316", "T")).entries == EX316_T
    assert adjusted_matrix(FIG1, fixture_certificate("fig1", "lower")).entries == FIG1_MATRIX


def test_two_certificates_same_det_different_snf():
    S = adjusted_matrix(EX316, fixture_certificate("ex316", "S"))
    T = adjusted_matrix(EX316, fixture_certificate("ex316", "T"))
    assert det(S.plus_identity()) == det(T.plus_identity()) == 27
    assert smith_normal_form(S.plus_identity()).diagonal == (1, 1, 1, 1, 3, 9)
    assert smith_normal_form(T.plus_identity()).diagonal == (1, 1, 1, 1, 1, 27)


def test_invalid_certificate():
    with pytest.raises(InvalidCertificate):
        adjusted_matrix(FIG1, Certificate(0, 0))


def test_detection_examples():
    rep = detection_report(FIG1, adjusted_matrix(FIG1, find_certificate(FIG1)))
    assert rep.detects and rep.det_identity_plus == 4
    for name in ("S", "T"):
        assert verify_detection(EX316, adjusted_matrix(EX316, fixture_certificate("ex316", name)))
    c5 = make_cn(5)
    rep = detection_report(c5, m2(c5).as_ring("ZZ"))
    assert not rep.detects and rep.witness is not None
    with pytest.raises(IndexMismatch):
        verify_detection(c5, m2(FIG1).as_ring("ZZ"))


def test_twisted_pair_in_second_arc_regression():
    # two untwisted chords interlacing inside the second arc
    d = ChordDiagram.from_word("2 4 1 4 3 2 1 3", "2 4")
    c = Certificate(0, 2)
    assert verify_detection(d, adjusted_matrix(d, c))


@given(bouquets(min_n=1, max_n=7, twisted=False), st.randoms(use_true_random=False))
def test_mpm_orientation_independence(d, rnd):
    base = principal_minors(mpm(d))
    heads = {e: rnd.choice(d.positions[e]) for e in d.edges}
    other = mpm(d, Orientation(heads, rnd.random() < 0.5))
    assert principal_minors(other) == base
    assert is_pu(other, minors=base)
    assert verify_detection(d, other, minors=base)


@given(bouquets(max_n=8))
def test_m2_represents_quasi_trees(d):
    assert represented_system(m2(d)) == ribbon_system(d)


@given(st.integers(0, 10**6), st.integers(1, 8), st.randoms(use_true_random=False))
def test_adjusted_matrix_detects(seed, n, rnd):
    d = random_pseudo(seed, n)
    for c in [find_certificate(d)]:
        heads = {e: rnd.choice(d.positions[e]) for e in d.edges}
        m = adjusted_matrix(d, c, Orientation(heads))
        minors = principal_minors(m)
        assert is_pu(m, minors=minors)
        rep = detection_report(d, m, minors=minors)
        assert rep.detects and rep.det_identity_plus == len(quasi_trees(d))


@given(st.integers(0, 10**6), st.integers(1, 8))
def test_m2_of_adjustment_is_hat_matrix(seed, n):
    d = random_pseudo(seed, n)
    a = adjust(d, find_certificate(d), "h")
    assert m2(a).reindex(d.edges + ("h",)).entries == hat_matrix(m2(d), "h").entries


def test_all_certificates_of_fixture_detect():
    from ribbonkit.pseudo import all_certificates

    for c in all_certificates(EX316):
        assert verify_detection(EX316, adjusted_matrix(EX316, c))
        assert det(adjusted_matrix(EX316, c).plus_identity()) == 27
