"""Signed chord diagrams: the combinatorial form of a one-vertex ribbon graph.

A diagram is stored as its cyclic word: the 2n chord ends read in one fixed
direction around the vertex boundary, starting at slot 0.  Every chord is
either untwisted (orientable loop) or twisted (non-orientable loop).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import BqtSyntaxError, MalformedWord, UnknownEdge, UnknownTwistLabel
from .exact import gf2_nullity, gf2_nonsingular
from .labels import label_key, sort_labels
from .limits import check_size


def _as_tokens(value: str | Iterable[str] | None) -> list[str]:
    if value is None:
        return []
    if isinstance(value, str):
        return value.split()
    return [str(v) for v in value]


@dataclass(frozen=True)
class ChordDiagram:
    word: tuple[str, ...]
    twisted: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        object.__setattr__(self, "twisted", frozenset(self.twisted))
        counts: dict[str, int] = {}
        for label in self.word:
            if not label or any(c.isspace() for c in label):
                raise MalformedWord(f"bad edge label {label!r}")
            counts[label] = counts.get(label, 0) + 1
        bad = sort_labels(lab for lab, c in counts.items() if c != 2)
        if bad:
            raise MalformedWord(f"labels not occurring exactly twice: {' '.join(bad)}")
        extra = self.twisted - counts.keys()
        if extra:
            raise UnknownTwistLabel(f"twisted labels not in word: {' '.join(sort_labels(extra))}")

    @classmethod
    def from_word(cls, word: str | Iterable[str], twisted: str | Iterable[str] | None = None) -> "ChordDiagram":
        return cls(tuple(_as_tokens(word)), frozenset(_as_tokens(twisted)))

    # -- basic structure -------------------------------------------------

    @cached_property
    def edges(self) -> tuple[str, ...]:
        return tuple(sort_labels(set(self.word)))

    @property
    def n(self) -> int:
        return len(self.word) // 2

    @cached_property
    def positions(self) -> dict[str, tuple[int, int]]:
        seen: dict[str, list[int]] = {}
        for i, label in enumerate(self.word):
            seen.setdefault(label, []).append(i)
        return {lab: (p[0], p[1]) for lab, p in seen.items()}

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.edges)}

    def subset(self, X: Iterable[str] | None) -> frozenset[str]:
        """Validate an edge subset, returning it as a frozenset."""
        xs = frozenset(_as_tokens(X) if isinstance(X, str) else (X or ()))
        missing = xs.difference(self.positions)
        if missing:
            raise UnknownEdge(f"unknown edges: {' '.join(sort_labels(missing))}")
        return xs

    def mask(self, X: Iterable[str]) -> int:
        idx = self.index
        m = 0
        for lab in self.subset(X):
            m |= 1 << idx[lab]
        return m

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(lab for i, lab in enumerate(self.edges) if m >> i & 1)

    def is_twisted(self, e: str) -> bool:
        return e in self.twisted

    def __str__(self) -> str:
        tw = " ".join(sort_labels(self.twisted))
        return f"word: {' '.join(self.word)} / twisted: {tw}"


@dataclass(frozen=True)
class BoundaryReport:
    component_count: int
    directed_cycles: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)


# -- geometry -------------------------------------------------------------


def interlace(d: ChordDiagram, e: str, f: str) -> bool:
    d.subset((e, f))
    if e == f:
        raise ValueError("interlace needs two distinct chords")
    i, j = d.positions[e]
    a, b = d.positions[f]
    return (i < a < j) != (i < b < j)


def interlace_rows(d: ChordDiagram) -> list[int]:
    """Rows of the binary interlacing matrix as bitmasks over ``d.edges``."""
    spans = [d.positions[e] for e in d.edges]
    rows = [0] * d.n
    for i, (a, b) in enumerate(spans):
        for k in range(i + 1, d.n):
            c, e = spans[k]
            if (a < c < b) != (a < e < b):
                rows[i] |= 1 << k
                rows[k] |= 1 << i
        if d.edges[i] in d.twisted:
            rows[i] |= 1 << i
    return rows


def boundary_components(d: ChordDiagram, X: Iterable[str] = ()) -> BoundaryReport:
    """Trace the boundary of the spanning sub-bouquet on ``X``.

    The ends of ``X`` cut the circle into arcs; a walk runs along an arc, jumps
    across the chord it reaches and keeps (untwisted) or reverses (twisted)
    its direction.  Every boundary component is met once per direction.
    """
    xs = d.subset(X)
    if not xs:
        return BoundaryReport(1, (((0, 1),), ((0, -1),)))
    pts = sorted(p for e in xs for p in d.positions[e])
    m = len(pts)
    where = {p: k for k, p in enumerate(pts)}
    partner = {}
    for e in xs:
        i, j = d.positions[e]
        partner[i], partner[j] = j, i

    def step(arc: int, direction: int) -> tuple[int, int]:
        # arc k runs from pts[k] to pts[k+1]
        end = pts[(arc + 1) % m] if direction == 1 else pts[arc]
        jump = partner[end]
        k = where[jump]
        if d.word[jump] in d.twisted:
            direction = -direction
        return (k, 1) if direction == 1 else ((k - 1) % m, -1)

    seen: set[tuple[int, int]] = set()
    cycles = []
    for start in [(k, s) for k in range(m) for s in (1, -1)]:
        if start in seen:
            continue
        cyc = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            cyc.append((pts[cur[0]], cur[1]))
            cur = step(*cur)
        cycles.append(tuple(cyc))
    return BoundaryReport(len(cycles) // 2, tuple(cycles))


def is_quasi_tree(d: ChordDiagram, X: Iterable[str] = ()) -> bool:
    return gf2_nonsingular(interlace_rows(d), d.mask(X))


def boundary_count_by_rank(d: ChordDiagram, X: Iterable[str] = ()) -> int:
    """Boundary component count from the GF(2) nullity of the interlacing matrix."""
    return gf2_nullity(interlace_rows(d), d.mask(X)) + 1


def iter_quasi_tree_masks(d: ChordDiagram, limit: int | None = None) -> Iterator[int]:
    check_size(d.n, limit, "quasi-tree enumeration")
    rows = interlace_rows(d)
    for m in range(1 << d.n):
        if gf2_nonsingular(rows, m):
            yield m


def quasi_trees(d: ChordDiagram, limit: int | None = None, cross_check: bool = False) -> frozenset[frozenset[str]]:
    """All quasi-trees of ``d``; ``cross_check`` re-derives each by boundary tracing."""
    out = frozenset(d.unmask(m) for m in iter_quasi_tree_masks(d, limit))
    if cross_check:
        traced = set()
        for m in range(1 << d.n):
            X = d.unmask(m)
            if boundary_components(d, X).component_count == 1:
                traced.add(X)
        if traced != out:
            raise AssertionError("boundary trace disagrees with GF(2) rank")
    return out


def petrial(d: ChordDiagram, X: Iterable[str]) -> ChordDiagram:
    return ChordDiagram(d.word, d.twisted.symmetric_difference(d.subset(X)))


def is_orientable(d: ChordDiagram) -> bool:
    return not d.twisted


def delete_chords(d: ChordDiagram, Y: Iterable[str]) -> ChordDiagram:
    ys = d.subset(Y)
    return ChordDiagram(tuple(lab for lab in d.word if lab not in ys), d.twisted - ys)


def restrict(d: ChordDiagram, keep: Iterable[str]) -> ChordDiagram:
    ks = d.subset(keep)
    return delete_chords(d, set(d.edges) - ks)


def relabel(d: ChordDiagram, mapping: Mapping[str, str]) -> ChordDiagram:
    return ChordDiagram(tuple(mapping.get(x, x) for x in d.word), frozenset(mapping.get(x, x) for x in d.twisted))


def rotate(d: ChordDiagram, k: int) -> ChordDiagram:
    if not d.word:
        return d
    k %= len(d.word)
    return ChordDiagram(d.word[k:] + d.word[:k], d.twisted)


def reflect(d: ChordDiagram) -> ChordDiagram:
    return ChordDiagram(tuple(reversed(d.word)), d.twisted)


def _symmetric_words(word: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
    L = len(word)
    if not L:
        yield word
        return
    rev = tuple(reversed(word))
    for w in (word, rev):
        for k in range(L):
            yield w[k:] + w[:k]


def canonicalize(d: ChordDiagram, labeled: bool = True) -> ChordDiagram:
    """Minimal representative over rotations and reflection.

    With ``labeled=False`` the chords are also renamed 1..n by first
    occurrence, so isomorphic diagrams get identical output.
    """
    if labeled:
        best = min(_symmetric_words(d.word), key=lambda w: [label_key(x) for x in w])
        return ChordDiagram(best, d.twisted)
    best_key = None
    for w in _symmetric_words(d.word):
        names: dict[str, int] = {}
        key = []
        for lab in w:
            if lab not in names:
                names[lab] = len(names) + 1
            key.append((names[lab], lab in d.twisted))
        if best_key is None or key < best_key:
            best_key = key
    word = tuple(str(idx) for idx, _ in best_key or [])
    twisted = frozenset(str(idx) for idx, tw in best_key or [] if tw)
    return ChordDiagram(word, twisted)


# -- .bqt text format -----------------------------------------------------


@dataclass
class BqtDocument:
    """Parsed contents of a ``.bqt`` file."""

    diagram: ChordDiagram
    name: str | None = None
    anchor: frozenset[str] | None = None
    certificates: dict[str, tuple[int, int]] = field(default_factory=dict)
    comments: list[str] = field(default_factory=list)


_KEYS = ("word", "twisted", "anchor", "cert")


def parse_bqt(text: str) -> BqtDocument:
    name = None
    fields: dict[str, tuple[list[str], int]] = {}
    certs: dict[str, tuple[int, int]] = {}
    comments = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if raw.lstrip().startswith("#"):
            comments.append(raw.lstrip()[1:].strip())
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        stripped = line.strip()
        if stripped.startswith("bouquet"):
            parts = stripped.split(None, 1)
            if parts[0] != "bouquet":
                raise BqtSyntaxError(f"unknown directive {parts[0]!r}", lineno, col)
            name = parts[1].strip() if len(parts) > 1 else None
            continue
        if ":" not in stripped:
            raise BqtSyntaxError("expected 'key: values'", lineno, col)
        head, rest = stripped.split(":", 1)
        head_parts = head.split()
        if not head_parts or head_parts[0] not in _KEYS:
            raise BqtSyntaxError(f"unknown key {head.strip()!r}", lineno, col)
        key = head_parts[0]
        tokens = rest.split()
        if key == "cert":
            label = head_parts[1] if len(head_parts) > 1 else ""
            if len(tokens) != 2 or not all(t.lstrip("-").isdigit() for t in tokens):
                raise BqtSyntaxError("cert needs two gap indices", lineno, col + len(head) + 1)
            certs[label] = (int(tokens[0]), int(tokens[1]))
            continue
        if len(head_parts) != 1:
            raise BqtSyntaxError(f"unexpected token after {key!r}", lineno, col)
        if key in fields:
            raise BqtSyntaxError(f"duplicate key {key!r}", lineno, col)
        fields[key] = (tokens, lineno)
    if "word" not in fields:
        raise BqtSyntaxError("missing 'word:' line", 0, 0)
    diagram = ChordDiagram(tuple(fields["word"][0]), frozenset(fields.get("twisted", ([], 0))[0]))
    anchor = None
    if "anchor" in fields:
        anchor = diagram.subset(fields["anchor"][0])
    for label, (a, b) in certs.items():
        size = len(diagram.word)
        if size and not (0 <= a < size and 0 <= b < size):
            raise BqtSyntaxError(f"cert {label or '(default)'} gap out of range", fields["word"][1], 1)
    return BqtDocument(diagram, name, anchor, certs, comments)


def parse_diagram(text: str) -> ChordDiagram:
    """Parse a ``.bqt`` payload; ``/`` may separate fields on one line."""
    if "\n" not in text and " / " in text:
        text = "\n".join(part.strip() for part in text.split(" / "))
    return parse_bqt(text).diagram


def format_bqt(
    d: ChordDiagram,
    name: str | None = None,
    anchor: Iterable[str] | None = None,
    certificates: Mapping[str, tuple[int, int]] | None = None,
    comments: Iterable[str] = (),
    canonical: bool | None = None,
) -> str:
    """Serialize; by default the word is re-emitted in canonical labeled form.

    Certificates are gap indices into the stored word, so a document that
    carries certificates keeps its word as stored unless ``canonical`` is set.
    """
    if canonical is None:
        canonical = not certificates
    if canonical:
        d = canonicalize(d, labeled=True)
    lines = [f"# {c}" for c in comments]
    if name:
        lines.append(f"bouquet {name}")
    lines.append("word: " + " ".join(d.word))
    lines.append("twisted: " + " ".join(sort_labels(d.twisted)))
    if anchor is not None:
        lines.append("anchor: " + " ".join(sort_labels(d.subset(anchor))))
    for label, (a, b) in (certificates or {}).items():
        lines.append(f"cert {label}: {a} {b}" if label else f"cert: {a} {b}")
    return "\n".join(line.rstrip() for line in lines) + "\n"
