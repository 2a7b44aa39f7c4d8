from __future__ import annotations

from hypothesis import settings, strategies as st

from ribbonkit.chord import ChordDiagram

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def bouquets(draw, min_n: int = 0, max_n: int = 6, twisted: bool | None = None) -> ChordDiagram:
    n = draw(st.integers(min_n, max_n))
    labels = [str(i) for i in range(1, n + 1)]
    word = draw(st.permutations(labels + labels))
    if twisted is None:
        tw = [e for e in labels if draw(st.booleans())]
    else:
        tw = labels if twisted else []
    return ChordDiagram(tuple(word), frozenset(tw))


@st.composite
def diagram_and_subset(draw, max_n: int = 6, **kw):
    d = draw(bouquets(max_n=max_n, **kw))
    X = frozenset(e for e in d.edges if draw(st.booleans()))
    return d, X
