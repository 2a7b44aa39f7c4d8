"""Interlacing matrices of bouquets and exhaustive detection checks.

* ``m2``: binary interlacing matrix, diagonal = twist flags.
* ``hat_matrix``: the bordered skew form of a symmetric GF(2) matrix.
* ``mpm``: the integer ±1 skew form of an orientable bouquet.
* ``adjusted_matrix``: the integer form attached to a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .chord import ChordDiagram, interlace_rows, quasi_trees
from .errors import IndexMismatch, InvalidCertificate, LabelClash, NotOrientable, NotSymmetric
from .exact import LabeledMatrix, det_mask, principal_minors
from .labels import sort_labels
from .limits import check_size

DETECTION_LIMIT = 16


@dataclass(frozen=True)
class Certificate:
    """Two gaps of the word; gap ``g`` sits just before slot ``g``.

    ``S1`` is the run of slots from ``cut_a`` up to (not including) ``cut_b`` in
    word direction and ``S2`` is the rest.  ``cut_a == cut_b`` is the degenerate
    split in which ``S1`` is the whole circle and ``S2`` has empty interior.
    """

    cut_a: int
    cut_b: int

    def in_s1(self, slot: int, size: int) -> bool:
        if self.cut_a == self.cut_b:
            return True
        return (slot - self.cut_a) % size < (self.cut_b - self.cut_a) % size

    def s1_rank(self, slot: int, size: int) -> int:
        """Position of a slot along ``S1`` read from ``cut_a``."""
        return (slot - self.cut_a) % size

    def s1(self, size: int) -> list[int]:
        return [s for s in range(size) if self.in_s1(s, size)]

    def s2(self, size: int) -> list[int]:
        return [s for s in range(size) if not self.in_s1(s, size)]

    def as_tuple(self) -> tuple[int, int]:
        return (self.cut_a, self.cut_b)


def certificate_problem(d: ChordDiagram, c: Certificate) -> str | None:
    """Why ``c`` fails for ``d``, or None when it is a certificate."""
    size = len(d.word)
    if size == 0:
        return None if (c.cut_a, c.cut_b) == (0, 0) else "gap index out of range"
    if not (0 <= c.cut_a < size and 0 <= c.cut_b < size):
        return "gap index out of range"
    for e in d.edges:
        i, j = d.positions[e]
        split = c.in_s1(i, size) != c.in_s1(j, size)
        if e in d.twisted and not split:
            return f"twisted chord {e} has both ends on one side"
        if e not in d.twisted and split:
            return f"untwisted chord {e} crosses the cut"
    return None


def is_certificate(d: ChordDiagram, c: Certificate) -> bool:
    return certificate_problem(d, c) is None


def check_certificate(d: ChordDiagram, c: Certificate) -> None:
    problem = certificate_problem(d, c)
    if problem:
        raise InvalidCertificate(f"cert {c.cut_a} {c.cut_b}: {problem}")


@dataclass(frozen=True)
class Orientation:
    """Head slot of every chord, plus the reading direction of the circle."""

    heads: Mapping[str, int]
    reverse: bool = False

    @classmethod
    def canonical(cls, d: ChordDiagram) -> "Orientation":
        return cls({e: d.positions[e][0] for e in d.edges})

    def check(self, d: ChordDiagram) -> None:
        for e in d.edges:
            if self.heads.get(e) not in d.positions[e]:
                raise ValueError(f"orientation gives chord {e} no valid head")

    def flipped(self, d: ChordDiagram, X) -> "Orientation":
        heads = dict(self.heads)
        for e in X:
            i, j = d.positions[e]
            heads[e] = j if heads[e] == i else i
        return Orientation(heads, self.reverse)


def _sign(d: ChordDiagram, heads: Mapping[str, int], e: str, f: str) -> int:
    """+1 for the cyclic pattern e+ f+ e- f-, -1 for e+ f- e- f+, else 0."""
    size = len(d.word)
    he = heads[e]
    te = d.positions[e][1] if d.positions[e][0] == he else d.positions[e][0]
    span = (te - he) % size
    inside = [p for p in d.positions[f] if 0 < (p - he) % size < span]
    if len(inside) != 1:
        return 0
    return 1 if inside[0] == heads[f] else -1


def m2(d: ChordDiagram) -> LabeledMatrix:
    rows = interlace_rows(d)
    n = d.n
    return LabeledMatrix(d.edges, tuple(tuple(rows[i] >> j & 1 for j in range(n)) for i in range(n)), "GF2")


def hat_matrix(m: LabeledMatrix, hat_label: str) -> LabeledMatrix:
    """Bordered GF(2) matrix: off-diagonal a_ij + a_ii a_jj, border a_ii, zero diagonal."""
    if not m.is_symmetric():
        raise NotSymmetric("hat matrix needs a symmetric matrix")
    if hat_label in m.index:
        raise LabelClash(f"label {hat_label!r} already in the matrix index")
    a = [[int(x) % 2 for x in r] for r in m.entries]
    n = m.n
    rows = []
    for i in range(n):
        row = [0 if i == j else (a[i][j] + a[i][i] * a[j][j]) % 2 for j in range(n)]
        rows.append(row + [a[i][i]])
    rows.append([a[i][i] for i in range(n)] + [0])
    return LabeledMatrix(m.index + (hat_label,), tuple(tuple(r) for r in rows), "GF2")


def mpm(d: ChordDiagram, o: Orientation | None = None) -> LabeledMatrix:
    """The skew ±1 interlacing matrix of an orientable bouquet."""
    if d.twisted:
        raise NotOrientable(f"chords {' '.join(sort_labels(d.twisted))} are twisted")
    o = o or Orientation.canonical(d)
    o.check(d)
    sgn = -1 if o.reverse else 1
    E = d.edges
    rows = tuple(tuple(0 if e == f else sgn * _sign(d, o.heads, e, f) for f in E) for e in E)
    return LabeledMatrix(E, rows)


def adjusted_matrix(d: ChordDiagram, c: Certificate, o: Orientation | None = None) -> LabeledMatrix:
    """Integer interlacing matrix attached to the certificate ``c``.

    Twisted chords are first oriented with their heads in ``S1``; when ``o``
    puts a twisted head in ``S2`` the result is conjugated by -1 on that
    chord, which leaves every principal minor unchanged.  Two untwisted
    chords inside ``S2`` are compared in the reflected direction of ``S2``,
    matching the signs of the interlacing matrix of the adjustment.
    """
    check_certificate(d, c)
    o = o or Orientation.canonical(d)
    o.check(d)
    size = len(d.word)
    heads = dict(o.heads)
    flip = set()
    for e in d.twisted:
        i, j = d.positions[e]
        s1_end = i if c.in_s1(i, size) else j
        if heads[e] != s1_end:
            flip.add(e)
        heads[e] = s1_end
    sgn = -1 if o.reverse else 1

    def along_s1(e: str) -> int:
        r = c.s1_rank(heads[e], size)
        return -r if o.reverse else r

    E = d.edges
    in_s2 = {e for e in E if e not in d.twisted and not c.in_s1(d.positions[e][0], size)}
    rows = []
    for e in E:
        row = []
        for f in E:
            if e in d.twisted and f in d.twisted:
                if e == f or _sign(d, heads, e, f):
                    v = 1
                else:
                    v = 2 if along_s1(e) < along_s1(f) else 0
            else:
                v = 0 if e == f else sgn * _sign(d, heads, e, f)
                if v and e in in_s2 and f in in_s2:
                    # S2 is reflected by the adjustment, so untwisted chords
                    # lying in it are read in the opposite direction
                    v = -v
            if (e in flip) != (f in flip):
                v = -v
            row.append(v)
        rows.append(tuple(row))
    return LabeledMatrix(E, tuple(rows))


@dataclass(frozen=True)
class DetectionReport:
    detects: bool
    det_identity_plus: int
    quasi_tree_count: int
    witness: frozenset[str] | None = None
    witness_det: object = None


def detection_report(d: ChordDiagram, m: LabeledMatrix, limit: int = DETECTION_LIMIT, minors: list | None = None) -> DetectionReport:
    """Compare ``det(m[X])`` with the quasi-tree indicator for every ``X``."""
    if set(m.index) != set(d.edges) or len(m.index) != d.n:
        raise IndexMismatch("matrix index differs from the edge set")
    check_size(d.n, limit, "detection check")
    if m.index != d.edges:
        m = m.reindex(d.edges)
        minors = None
    if minors is None:
        minors = principal_minors(m, limit)
    qts = {d.mask(X) for X in quasi_trees(d, limit)}
    witness = None
    for mask, v in enumerate(minors):
        want = 1 if mask in qts else 0
        if v != want:
            witness = mask
            break
    total = det_mask(m.plus_identity(), (1 << d.n) - 1)
    ok = witness is None and total == len(qts)
    return DetectionReport(
        ok,
        total,
        len(qts),
        None if witness is None else d.unmask(witness),
        None if witness is None else minors[witness],
    )


def verify_detection(d: ChordDiagram, m: LabeledMatrix, limit: int = DETECTION_LIMIT, minors: list | None = None) -> bool:
    return detection_report(d, m, limit, minors).detects
