"""Partial duality on bouquets and anchored presentations of ribbon graphs.

A general ribbon graph is stored as ``AnchoredRibbon(base, anchor)``: the
graph ``base^anchor`` for a bouquet ``base`` and a quasi-tree ``anchor``.  Its
quasi-trees are ``{anchor △ B : B a quasi-tree of base}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .chord import (
    ChordDiagram,
    delete_chords,
    interlace,
    is_quasi_tree,
    iter_quasi_tree_masks,
    quasi_trees,
)
from .delta import SetSystem, twist
from .errors import (
    AnchoredEdgeDeletion,
    BqtSyntaxError,
    DisconnectedInput,
    EdgeNotTwisted,
    EdgeTwisted,
    InvalidRotation,
    NotAQuasiTree,
    NotInterlacing,
)
from .labels import sort_labels


def ribbon_system(d: ChordDiagram, limit: int | None = None) -> SetSystem:
    """The Δ-matroid of quasi-trees of a bouquet."""
    return SetSystem(d.edges, frozenset(iter_quasi_tree_masks(d, limit)))


@dataclass(frozen=True)
class AnchoredRibbon:
    base: ChordDiagram
    anchor: frozenset[str] = frozenset()
    # edge sets of the connected pieces when several graphs were vertex-joined
    components: tuple[frozenset[str], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "anchor", self.base.subset(self.anchor))

    @property
    def edges(self) -> tuple[str, ...]:
        return self.base.edges

    @property
    def n(self) -> int:
        return self.base.n

    def delta_matroid(self, limit: int | None = None) -> SetSystem:
        return twist(ribbon_system(self.base, limit), self.anchor)

    def quasi_trees(self, limit: int | None = None) -> frozenset[frozenset[str]]:
        return frozenset(X.symmetric_difference(self.anchor) for X in quasi_trees(self.base, limit))

    def pieces(self) -> tuple[frozenset[str], ...]:
        return self.components if self.components else (frozenset(self.edges),)


def as_anchored(g: AnchoredRibbon | ChordDiagram) -> AnchoredRibbon:
    return g if isinstance(g, AnchoredRibbon) else AnchoredRibbon(g)


# -- elementary moves -----------------------------------------------------


def elementary_dual_twisted(d: ChordDiagram, e: str) -> ChordDiagram:
    """Partial dual at a twisted chord: reflect the arc strictly between its ends."""
    d.subset([e])
    if e not in d.twisted:
        raise EdgeNotTwisted(f"chord {e} is not twisted")
    i, j = d.positions[e]
    w = d.word
    inner = w[i + 1 : j]
    crossing = {x for x in inner if inner.count(x) == 1}
    word = w[: i + 1] + tuple(reversed(inner)) + w[j:]
    return ChordDiagram(word, d.twisted.symmetric_difference(crossing))


def elementary_dual_pair(d: ChordDiagram, f: str, g: str) -> ChordDiagram:
    """Partial dual at an interlacing untwisted pair: swap two opposite arcs."""
    d.subset([f, g])
    for x in (f, g):
        if x in d.twisted:
            raise EdgeTwisted(f"chord {x} is twisted")
    if f == g or not interlace(d, f, g):
        raise NotInterlacing(f"chords {f} and {g} do not interlace")
    p0, p1, p2, p3 = sorted(d.positions[f] + d.positions[g])
    w = d.word
    word = w[: p0 + 1] + w[p2 + 1 : p3] + (w[p1],) + w[p1 + 1 : p2] + (w[p2],) + w[p0 + 1 : p1] + w[p3:]
    return ChordDiagram(word, d.twisted)


def dual_chain(d: ChordDiagram, X: Iterable[str]) -> list[tuple[str, ...]]:
    """The elementary steps used by :func:`partial_dual` (twisted chords first)."""
    xs = d.subset(X)
    if not is_quasi_tree(d, xs):
        raise NotAQuasiTree(f"{{{' '.join(sort_labels(xs))}}} is not a quasi-tree")
    steps = []
    rest = set(xs)
    cur = d
    while rest:
        tw = [e for e in sort_labels(rest) if e in cur.twisted]
        if tw:
            step = (tw[0],)
            cur = elementary_dual_twisted(cur, tw[0])
        else:
            order = sort_labels(rest)
            pair = next(((a, b) for k, a in enumerate(order) for b in order[k + 1 :] if interlace(cur, a, b)), None)
            if pair is None:  # unreachable for a genuine quasi-tree
                raise NotAQuasiTree("no elementary step available")
            step = pair
            cur = elementary_dual_pair(cur, *pair)
        rest.difference_update(step)
        steps.append(step)
    return steps


def partial_dual(d: ChordDiagram, X: Iterable[str]) -> ChordDiagram:
    """``d^X`` for a quasi-tree ``X``, built from elementary moves."""
    cur = d
    for step in dual_chain(d, X):
        cur = elementary_dual_twisted(cur, step[0]) if len(step) == 1 else elementary_dual_pair(cur, *step)
    return cur


def delete_edges(g: AnchoredRibbon | ChordDiagram, Y: Iterable[str]) -> AnchoredRibbon:
    g = as_anchored(g)
    ys = g.base.subset(Y)
    clash = ys & g.anchor
    if clash:
        raise AnchoredEdgeDeletion(f"edges {' '.join(sort_labels(clash))} lie in the anchor; reanchor first")
    comps = None
    if g.components:
        comps = tuple(c - ys for c in g.components)
    return AnchoredRibbon(delete_chords(g.base, ys), g.anchor, comps)


def reanchor(g: AnchoredRibbon | ChordDiagram, X: Iterable[str]) -> AnchoredRibbon:
    """The same ribbon graph presented as ``base'^X``."""
    g = as_anchored(g)
    xs = g.base.subset(X)
    step = g.anchor.symmetric_difference(xs)
    if not is_quasi_tree(g.base, step):
        raise NotAQuasiTree(f"{{{' '.join(sort_labels(step))}}} is not a quasi-tree of the base")
    return AnchoredRibbon(partial_dual(g.base, step), xs, g.components)


def surface_summary(g: AnchoredRibbon) -> dict:
    """Connectedness and orientability of the represented surface."""
    return {"components": len(g.pieces()), "orientable": not g.base.twisted}


# -- rotation systems -----------------------------------------------------


@dataclass(frozen=True)
class RotationSystem:
    vertices: tuple[tuple[str, ...], ...]
    edges: Mapping[str, tuple[str, str]]
    twisted: frozenset[str] = frozenset()
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        verts = tuple(tuple(v) for v in self.vertices)
        edges = {str(k): (str(a), str(b)) for k, (a, b) in dict(self.edges).items()}
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "twisted", frozenset(self.twisted))
        seen: dict[str, int] = {}
        for vi, rot in enumerate(verts):
            for h in rot:
                if h in seen:
                    raise InvalidRotation(f"half-edge {h} appears twice in the rotations")
                seen[h] = vi
        owner: dict[str, str] = {}
        for e, (a, b) in edges.items():
            if a == b:
                raise InvalidRotation(f"edge {e} uses one half-edge twice")
            for h in (a, b):
                if h not in seen:
                    raise InvalidRotation(f"half-edge {h} of edge {e} is not at any vertex")
                if h in owner:
                    raise InvalidRotation(f"half-edge {h} belongs to edges {owner[h]} and {e}")
                owner[h] = e
        loose = set(seen) - set(owner)
        if loose:
            raise InvalidRotation(f"half-edges without an edge: {' '.join(sorted(loose))}")
        extra = self.twisted - edges.keys()
        if extra:
            raise InvalidRotation(f"twisted labels not edges: {' '.join(sort_labels(extra))}")

    @property
    def edge_labels(self) -> tuple[str, ...]:
        return tuple(sort_labels(self.edges))

    def vertex_of(self) -> dict[str, int]:
        return {h: vi for vi, rot in enumerate(self.vertices) for h in rot}

    def components(self) -> list[tuple[list[int], list[str]]]:
        """Connected pieces as (vertex indices, edge labels)."""
        parent = list(range(len(self.vertices)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        where = self.vertex_of()
        for a, b in self.edges.values():
            ra, rb = find(where[a]), find(where[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, tuple[list[int], list[str]]] = {}
        for vi in range(len(self.vertices)):
            groups.setdefault(find(vi), ([], []))[0].append(vi)
        for e in self.edge_labels:
            groups[find(where[self.edges[e][0]])][1].append(e)
        return [groups[k] for k in sorted(groups)]


Segment = tuple  # (point, point, kind, label)


def _point_graph(rs: RotationSystem, F: frozenset[str]) -> list[Segment]:
    """Segments of the boundary point graph of the spanning subgraph on ``F``.

    Each half-edge ``h`` has two corner points ``(h, 'a')`` and ``(h, 'b')``.
    Vertex arcs join ``h_i`` b-corners to the next ``h_{i+1}`` a-corners; an edge
    outside ``F`` contributes its two end segments, an edge inside ``F`` its two
    long sides.  Every point has degree two, so the segments form cycles.
    """
    segs: list[Segment] = []
    for rot in rs.vertices:
        k = len(rot)
        for i in range(k):
            segs.append(((rot[i], "b"), (rot[(i + 1) % k], "a"), "vertex", ""))
    for e in sort_labels(rs.edges):
        h, h2 = rs.edges[e]
        if e not in F:
            segs.append(((h, "a"), (h, "b"), "end", e))
            segs.append(((h2, "a"), (h2, "b"), "end", e))
        elif e in rs.twisted:
            segs.append(((h, "a"), (h2, "a"), "side", e))
            segs.append(((h, "b"), (h2, "b"), "side", e))
        else:
            segs.append(((h, "a"), (h2, "b"), "side", e))
            segs.append(((h, "b"), (h2, "a"), "side", e))
    return segs


def _cycles(segs: list[Segment]) -> list[list[Segment]]:
    """Split a 2-regular segment list into directed cycles."""
    inc: dict[tuple, list[int]] = {}
    for sid, (p, q, _, _) in enumerate(segs):
        inc.setdefault(p, []).append(sid)
        inc.setdefault(q, []).append(sid)
    used = [False] * len(segs)
    out = []
    for sid0, seg0 in enumerate(segs):
        if used[sid0]:
            continue
        cyc = []
        cur, sid = seg0[0], sid0
        while not used[sid]:
            used[sid] = True
            p, q, kind, lab = segs[sid]
            nxt = q if p == cur else p
            cyc.append((cur, nxt, kind, lab))
            cur = nxt
            a, b = inc[cur]
            sid = b if a == sid else a
        out.append(cyc)
    return out


def rotation_boundary_count(rs: RotationSystem, F: Iterable[str] = ()) -> int:
    """Boundary components of the spanning subgraph ``(V, F)`` by direct tracing."""
    fs = frozenset(F)
    isolated = sum(1 for rot in rs.vertices if not rot)
    return len(_cycles(_point_graph(rs, fs))) + isolated


def rotation_quasi_trees(rs: RotationSystem) -> frozenset[frozenset[str]]:
    labels = rs.edge_labels
    out = set()
    comps = len(rs.components())
    for m in range(1 << len(labels)):
        F = frozenset(lab for i, lab in enumerate(labels) if m >> i & 1)
        if rotation_boundary_count(rs, F) == comps:
            out.add(F)
    return frozenset(out)


def _spanning_tree(rs: RotationSystem, verts: list[int], edges: list[str]) -> list[str]:
    where = rs.vertex_of()
    reached = {verts[0]}
    tree = []
    grew = True
    while grew:
        grew = False
        for e in edges:
            a, b = (where[h] for h in rs.edges[e])
            if (a in reached) != (b in reached):
                tree.append(e)
                reached.update((a, b))
                grew = True
    return sort_labels(tree)


def _band_coord(rs: RotationSystem, e: str, point: tuple[str, str]) -> tuple[int, int]:
    """(x, y) of a corner point in the band coordinates of edge ``e``."""
    h, h2 = rs.edges[e]
    hid, corner = point
    if hid == h:
        return 0, (0 if corner == "a" else 1)
    if e in rs.twisted:
        return 1, (0 if corner == "a" else 1)
    return 1, (1 if corner == "a" else 0)


def _component_word(rs: RotationSystem, verts: list[int], edges: list[str]) -> tuple[list[str], set[str], list[str]]:
    tree = frozenset(_spanning_tree(rs, verts, edges))
    sub = RotationSystem(
        tuple(rs.vertices[v] for v in verts), {e: rs.edges[e] for e in edges}, rs.twisted & set(edges)
    )
    if not edges:
        return [], set(), []
    cycles = _cycles(_point_graph(sub, tree))
    if len(cycles) != 1:
        raise InvalidRotation("spanning tree does not have a single boundary component")
    cyc = cycles[0]
    # start deterministically at the first corner of the first half-edge
    first = (sub.vertices[0][0], "a")
    k = next(i for i, seg in enumerate(cyc) if seg[0] == first)
    cyc = cyc[k:] + cyc[:k]
    word: list[str] = []
    direction: dict[str, list[int]] = {}
    for p, q, kind, lab in cyc:
        if kind == "vertex":
            continue
        word.append(lab)
        (px, py), (qx, qy) = _band_coord(rs, lab, p), _band_coord(rs, lab, q)
        direction.setdefault(lab, []).append(qy - py if kind == "end" else qx - px)
    twisted = {e for e, ds in direction.items() if ds[0] == ds[1]}
    return word, twisted, sort_labels(tree)


def rotation_to_anchored(rs: RotationSystem, allow_disconnected: bool = True) -> AnchoredRibbon:
    """Present a ribbon graph as a bouquet partial dual anchored at a spanning tree."""
    comps = [c for c in rs.components() if c[1]]
    if len(rs.components()) > 1 and not allow_disconnected:
        raise DisconnectedInput("rotation system is disconnected")
    word: list[str] = []
    twisted: set[str] = set()
    anchor: list[str] = []
    for verts, edges in comps:
        w, t, tree = _component_word(rs, verts, edges)
        word += w
        twisted |= t
        anchor += tree
    pieces = tuple(frozenset(c[1]) for c in comps) if len(comps) > 1 else None
    return AnchoredRibbon(ChordDiagram(tuple(word), frozenset(twisted)), frozenset(anchor), pieces)


def bouquet_rotation(d: ChordDiagram) -> RotationSystem:
    """The one-vertex rotation system of a chord diagram."""
    seen: dict[str, int] = {}
    rot = []
    edges: dict[str, list[str]] = {}
    for lab in d.word:
        k = seen.get(lab, 0)
        seen[lab] = k + 1
        h = f"{lab}.{k}"
        rot.append(h)
        edges.setdefault(lab, []).append(h)
    return RotationSystem((tuple(rot),), {e: (a, b) for e, (a, b) in edges.items()}, d.twisted)


def parse_rgs(text: str) -> RotationSystem:
    """``vertex: h...`` lines, ``edge NAME: ha hb`` lines and ``twisted: NAME...``."""
    vertices = []
    names = []
    edges: dict[str, tuple[str, str]] = {}
    twisted: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise BqtSyntaxError("expected 'key: values'", lineno, 1)
        head, rest = line.split(":", 1)
        parts = head.split()
        toks = rest.split()
        if parts[0] == "vertex" and len(parts) <= 2:
            vertices.append(tuple(toks))
            names.append(parts[1] if len(parts) == 2 else str(len(vertices) - 1))
        elif parts[0] == "edge" and len(parts) == 2:
            if len(toks) != 2:
                raise BqtSyntaxError("edge needs exactly two half-edges", lineno, len(head) + 2)
            if parts[1] in edges:
                raise BqtSyntaxError(f"duplicate edge {parts[1]!r}", lineno, 6)
            edges[parts[1]] = (toks[0], toks[1])
        elif parts == ["twisted"]:
            twisted += toks
        else:
            raise BqtSyntaxError(f"unknown key {head.strip()!r}", lineno, 1)
    return RotationSystem(tuple(vertices), edges, frozenset(twisted), tuple(names))


def format_rgs(rs: RotationSystem) -> str:
    lines = []
    names = rs.names or tuple(str(i) for i in range(len(rs.vertices)))
    for name, rot in zip(names, rs.vertices):
        lines.append(f"vertex {name}: " + " ".join(rot))
    for e in rs.edge_labels:
        a, b = rs.edges[e]
        lines.append(f"edge {e}: {a} {b}")
    lines.append("twisted: " + " ".join(sort_labels(rs.twisted)))
    return "\n".join(line.rstrip() for line in lines) + "\n"
