"""Pseudo-orientability: certificate search, adjustment and the lift check."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .chord import ChordDiagram, restrict
from .delta import SetSystem, lift
from .duality import AnchoredRibbon, as_anchored
from .errors import LabelClash, NotPseudoOrientable
from .interlace import Certificate, check_certificate, is_certificate
from .labels import sort_labels
from .limits import check_size

LIFT_LIMIT = 12


@dataclass(frozen=True)
class PseudoReport:
    pseudo: bool
    certificate: Certificate | None
    anchor_used: frozenset[str]
    adjusted: AnchoredRibbon | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        from .chord import format_bqt

        out = {
            "pseudo": self.pseudo,
            "certificate": list(self.certificate.as_tuple()) if self.certificate else None,
            "anchor": sort_labels(self.anchor_used),
            "adjusted": None,
        }
        if self.adjusted is not None:
            out["adjusted"] = format_bqt(self.adjusted.base, anchor=self.adjusted.anchor, canonical=False)
        if self.reason:
            out["reason"] = self.reason
        return out


def candidate_cuts(size: int) -> Iterator[Certificate]:
    """Gap pairs (a, b) with a <= b in lexicographic order; a == b is degenerate."""
    if size == 0:
        yield Certificate(0, 0)
        return
    for a in range(size):
        for b in range(a, size):
            yield Certificate(a, b)


def find_certificate(d: ChordDiagram) -> Certificate | None:
    return next((c for c in candidate_cuts(len(d.word)) if is_certificate(d, c)), None)


def all_certificates(d: ChordDiagram) -> list[Certificate]:
    return [c for c in candidate_cuts(len(d.word)) if is_certificate(d, c)]


def end_partition(d: ChordDiagram, c: Certificate) -> frozenset[frozenset[int]]:
    size = len(d.word)
    s1 = frozenset(c.s1(size))
    return frozenset({s1, frozenset(range(size)) - s1})


def certificate_classes(d: ChordDiagram) -> list[list[Certificate]]:
    """Certificates grouped by the split of chord ends they induce."""
    groups: dict[frozenset, list[Certificate]] = {}
    for c in all_certificates(d):
        groups.setdefault(end_partition(d, c), []).append(c)
    return list(groups.values())


def fresh_label(d: ChordDiagram) -> str:
    nums = [int(e) for e in d.edges if e.isdigit()]
    if len(nums) == d.n:
        return str(max(nums, default=0) + 1)
    k = 0
    while f"^{k}" in d.positions:
        k += 1
    return f"^{k}"


def adjust(d: ChordDiagram, c: Certificate, hat_label: str | None = None) -> ChordDiagram:
    """Flip ``S2``, untwist every chord and add a chord across the two cuts."""
    check_certificate(d, c)
    hat = hat_label if hat_label is not None else fresh_label(d)
    if hat in d.positions:
        raise LabelClash(f"label {hat!r} already used")
    w = d.word[c.cut_a :] + d.word[: c.cut_a]
    k = (c.cut_b - c.cut_a) % len(w) if w and c.cut_a != c.cut_b else len(w)
    s1, s2 = w[:k], w[k:]
    return ChordDiagram((hat,) + s1 + (hat,) + tuple(reversed(s2)), frozenset())


def adjust_anchored(g: AnchoredRibbon | ChordDiagram, c: Certificate, hat_label: str | None = None) -> AnchoredRibbon:
    g = as_anchored(g)
    hat = hat_label if hat_label is not None else fresh_label(g.base)
    base = adjust(g.base, c, hat)
    anchor = g.anchor if len(g.anchor) % 2 == 0 else g.anchor | {hat}
    comps = None
    if g.components:
        target = next((i for i, p in enumerate(g.components) if p & g.base.twisted), 0)
        comps = tuple(p | {hat} if i == target else p for i, p in enumerate(g.components))
    return AnchoredRibbon(base, anchor, comps)


def is_pseudo_orientable(g: AnchoredRibbon | ChordDiagram, hat_label: str | None = None, with_adjusted: bool = False) -> PseudoReport:
    """Certificate test on the stored bouquet presentation.

    Partial duals of a certificated bouquet stay certificated, so one anchor
    suffices.  For vertex-joined pieces at most one piece may be non-orientable.
    """
    g = as_anchored(g)
    twisted_pieces = [p for p in g.pieces() if p & g.base.twisted]
    if len(twisted_pieces) > 1:
        return PseudoReport(False, None, g.anchor, None, "more than one non-orientable component")
    c = find_certificate(g.base)
    if c is None:
        return PseudoReport(False, None, g.anchor)
    adjusted = adjust_anchored(g, c, hat_label) if with_adjusted else None
    return PseudoReport(True, c, g.anchor, adjusted)


def verify_lift_correspondence(g: AnchoredRibbon | ChordDiagram, hat_label: str | None = None, limit: int = LIFT_LIMIT) -> bool:
    """Δ-matroid of the adjustment equals the lift of the Δ-matroid."""
    g = as_anchored(g)
    check_size(g.n, limit, "lift correspondence")
    report = is_pseudo_orientable(g)
    if not report.pseudo:
        raise NotPseudoOrientable("no certificate exists")
    hat = hat_label if hat_label is not None else fresh_label(g.base)
    adjusted = adjust_anchored(g, report.certificate, hat)
    return adjusted.delta_matroid(limit + 1) == lift(g.delta_matroid(limit), hat).inner


def component_bouquet(g: AnchoredRibbon, piece: frozenset[str]) -> ChordDiagram:
    return restrict(g.base, piece)


def lifted_system(g: AnchoredRibbon, hat_label: str) -> SetSystem:
    return lift(g.delta_matroid(), hat_label).inner
