"""Ribbon graphs, bouquets and their delta-matroids."""

from __future__ import annotations

from .analysis import (
    CountSequence,
    IntPolynomial,
    check_log_concavity,
    is_hurwitz_stable,
    q_sequence,
    qt_poly,
    qt_poly_eval,
    rhp_root_count,
    stability_report,
    stanley_counts,
)
from .chord import (
    ChordDiagram,
    boundary_components,
    canonicalize,
    format_bqt,
    interlace,
    is_quasi_tree,
    parse_bqt,
    petrial,
    quasi_trees,
)
from .corpus import fixture, make_cn, random_bouquet, random_pseudo
from .delta import SetSystem, are_isomorphic, is_delta_matroid, is_even, is_strong, lift, twist, unlift
from .duality import AnchoredRibbon, RotationSystem, partial_dual, reanchor, ribbon_system
from .errors import RibbonError
from .exact import LabeledMatrix, det, is_pu, principal_pivot, smith_normal_form
from .interlace import Certificate, Orientation, adjusted_matrix, hat_matrix, m2, mpm, verify_detection
from .pseudo import adjust, find_certificate, is_pseudo_orientable

__all__ = [
    "AnchoredRibbon",
    "Certificate",
    "ChordDiagram",
    "CountSequence",
    "IntPolynomial",
    "LabeledMatrix",
    "Orientation",
    "RibbonError",
    "RotationSystem",
    "SetSystem",
    "adjust",
    "adjusted_matrix",
    "are_isomorphic",
    "boundary_components",
    "canonicalize",
    "check_log_concavity",
    "det",
    "find_certificate",
    "fixture",
    "format_bqt",
    "hat_matrix",
    "interlace",
    "is_delta_matroid",
    "is_even",
    "is_hurwitz_stable",
    "is_pseudo_orientable",
    "is_pu",
    "is_quasi_tree",
    "is_strong",
    "lift",
    "m2",
    "make_cn",
    "mpm",
    "parse_bqt",
    "partial_dual",
    "petrial",
    "principal_pivot",
    "q_sequence",
    "qt_poly",
    "qt_poly_eval",
    "quasi_trees",
    "random_bouquet",
    "random_pseudo",
    "reanchor",
    "rhp_root_count",
    "ribbon_system",
    "smith_normal_form",
    "stability_report",
    "stanley_counts",
    "twist",
    "unlift",
    "verify_detection",
]
