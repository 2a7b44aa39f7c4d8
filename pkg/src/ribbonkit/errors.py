"""Exception hierarchy shared by every module.

All library errors derive from :class:`RibbonError`, which is a ``ValueError``
so callers that only care about "bad input" can catch that.
"""

from __future__ import annotations


class RibbonError(ValueError):
    """Base class for all ribbonkit errors."""

    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


def _make(name: str, code: str, doc: str) -> type:
    return type(name, (RibbonError,), {"code": code, "__doc__": doc})


# chord diagrams
MalformedWord = _make("MalformedWord", "malformed_word", "An edge label does not occur exactly twice.")
UnknownTwistLabel = _make("UnknownTwistLabel", "unknown_twist_label", "A twisted label is not an edge.")
UnknownEdge = _make("UnknownEdge", "unknown_edge", "An edge label is not present in the diagram.")
SizeLimitExceeded = _make("SizeLimitExceeded", "size_limit", "Exhaustive enumeration bound exceeded.")

# duality
EdgeNotTwisted = _make("EdgeNotTwisted", "edge_not_twisted", "Elementary twisted dual at an untwisted chord.")
EdgeTwisted = _make("EdgeTwisted", "edge_twisted", "Pair dual at a twisted chord.")
NotInterlacing = _make("NotInterlacing", "not_interlacing", "Pair dual at chords that do not interlace.")
NotAQuasiTree = _make("NotAQuasiTree", "not_a_quasi_tree", "Edge set is not a quasi-tree.")
AnchoredEdgeDeletion = _make("AnchoredEdgeDeletion", "anchored_deletion", "Deleting an edge of the anchor.")
DisconnectedInput = _make("DisconnectedInput", "disconnected", "Rotation system is disconnected.")
InvalidRotation = _make("InvalidRotation", "invalid_rotation", "Malformed rotation system.")

# set systems
UnknownElement = _make("UnknownElement", "unknown_element", "Element not in the ground set.")
LabelClash = _make("LabelClash", "label_clash", "New label already present.")
OddFeasibleSet = _make("OddFeasibleSet", "odd_feasible_set", "A lifted system has an odd feasible set.")

# matrices
UnknownLabel = _make("UnknownLabel", "unknown_label", "Matrix index label not present.")
SingularPivotBlock = _make("SingularPivotBlock", "singular_pivot", "Principal pivot on a singular block.")
NotSkewSymmetric = _make("NotSkewSymmetric", "not_skew", "Matrix is not skew-symmetric.")
NotSymmetric = _make("NotSymmetric", "not_symmetric", "Matrix is not symmetric.")
IndexMismatch = _make("IndexMismatch", "index_mismatch", "Matrix index differs from the edge set.")

# interlacing / pseudo-orientability
NotOrientable = _make("NotOrientable", "not_orientable", "Diagram has twisted chords.")
InvalidCertificate = _make("InvalidCertificate", "invalid_certificate", "Arc pair is not a certificate.")
NotPseudoOrientable = _make("NotPseudoOrientable", "not_pseudo_orientable", "No certificate exists.")

# analysis
ZeroPolynomial = _make("ZeroPolynomial", "zero_polynomial", "Operation undefined for the zero polynomial.")
OracleDisagreement = _make("OracleDisagreement", "oracle_disagreement", "Exact and numerical verdicts conflict.")
MissingVariable = _make("MissingVariable", "missing_variable", "Evaluation point lacks a variable.")
OverlappingParts = _make("OverlappingParts", "overlapping_parts", "Parts of the Stanley data overlap.")

# corpus
InvalidN = _make("InvalidN", "invalid_n", "Family parameter out of range.")
UnknownFixture = _make("UnknownFixture", "unknown_fixture", "No fixture with that name.")
InvalidParams = _make("InvalidParams", "invalid_params", "Generator parameters out of range.")
CorruptFixture = _make("CorruptFixture", "corrupt_fixture", "Fixture file does not match its catalog checksum.")


class BqtSyntaxError(RibbonError, SyntaxError):
    """Parse error in one of the text formats, carrying line and column."""

    code = "syntax_error"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        RibbonError.__init__(self, f"line {line}, column {column}: {message}")

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self), "line": self.line, "column": self.column}
