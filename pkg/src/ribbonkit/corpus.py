"""Named families, transcribed fixtures and seeded random generators."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .chord import BqtDocument, ChordDiagram, parse_bqt
from .duality import AnchoredRibbon, elementary_dual_pair, elementary_dual_twisted
from .errors import CorruptFixture, InvalidN, InvalidParams, UnknownFixture
from .interlace import Certificate, check_certificate

MAX_N = 20


def make_cn(n: int) -> ChordDiagram:
    """n twisted chords whose interlace graph is the n-cycle (small n: the evident diagrams)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1 or n > MAX_N:
        raise InvalidN(f"n must be an integer in 1..{MAX_N}, got {n!r}")
    labels = [str(i) for i in range(1, n + 1)]
    if n == 1:
        word = ["1", "1"]
    elif n == 2:
        word = ["1", "2", "1", "2"]
    else:
        word = ["1", str(n)]
        for i in range(2, n + 1):
            word += [str(i), str(i - 1)]
    return ChordDiagram(tuple(word), frozenset(labels))


# -- fixtures -------------------------------------------------------------


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    file: str
    citation: str
    sha256: str


@lru_cache(maxsize=None)
def catalog() -> dict[str, FixtureEntry]:
    raw = json.loads(resources.files("ribbonkit").joinpath("data/catalog.json").read_text())
    return {k: FixtureEntry(k, v["file"], v["citation"], v["sha256"]) for k, v in raw.items()}


def fixture_names() -> list[str]:
    return sorted(catalog())


def fixture_text(name: str) -> str:
    entry = catalog().get(name)
    if entry is None:
        raise UnknownFixture(f"no fixture {name!r}; known: {' '.join(fixture_names())}")
    text = resources.files("ribbonkit").joinpath("data", entry.file).read_text()
    if hashlib.sha256(text.encode()).hexdigest() != entry.sha256:
        raise CorruptFixture(f"fixture {name!r} does not match its checksum")
    return text


def fixture_document(name: str) -> BqtDocument:
    doc = parse_bqt(fixture_text(name))
    for a, b in doc.certificates.values():
        check_certificate(doc.diagram, Certificate(a, b))
    return doc


def fixture(name: str) -> AnchoredRibbon | ChordDiagram:
    doc = fixture_document(name)
    if doc.anchor:
        return AnchoredRibbon(doc.diagram, doc.anchor)
    return doc.diagram


def fixture_certificate(name: str, cert: str) -> Certificate:
    doc = fixture_document(name)
    if cert not in doc.certificates:
        raise UnknownFixture(f"fixture {name!r} has no certificate {cert!r}")
    return Certificate(*doc.certificates[cert])


# -- random generators ----------------------------------------------------


def _check_params(n, density: float = 0.0) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or not 0 <= n <= MAX_N:
        raise InvalidParams(f"n must be an integer in 0..{MAX_N}, got {n!r}")
    if not 0.0 <= density <= 1.0:
        raise InvalidParams(f"twist density must lie in [0, 1], got {density!r}")


def random_bouquet(seed: int, n: int, twist_density: float = 0.5) -> ChordDiagram:
    _check_params(n, twist_density)
    rng = random.Random(seed)
    labels = [str(i) for i in range(1, n + 1)]
    word = labels * 2
    rng.shuffle(word)
    twisted = frozenset(e for e in labels if rng.random() < twist_density)
    return ChordDiagram(tuple(word), twisted)


def random_pseudo(seed: int, n: int, moves: int | None = None) -> ChordDiagram:
    """A certificated bouquet, disguised by random elementary partial duals and a rotation."""
    _check_params(n)
    rng = random.Random(seed)
    labels = [str(i) for i in range(1, n + 1)]
    side1: list[str] = []
    side2: list[str] = []
    twisted = set()
    for e in labels:
        r = rng.random()
        if r < 0.35:
            twisted.add(e)
            side1.append(e)
            side2.append(e)
        elif r < 0.7:
            side1 += [e, e]
        else:
            side2 += [e, e]
    rng.shuffle(side1)
    rng.shuffle(side2)
    d = ChordDiagram(tuple(side1 + side2), frozenset(twisted))
    for _ in range(n if moves is None else moves):
        options: list[tuple[str, ...]] = [(e,) for e in d.edges if e in d.twisted]
        plain = [e for e in d.edges if e not in d.twisted]
        for i, e in enumerate(plain):
            ie = d.positions[e]
            for f in plain[i + 1 :]:
                jf = d.positions[f]
                if (ie[0] < jf[0] < ie[1]) != (ie[0] < jf[1] < ie[1]):
                    options.append((e, f))
        if not options:
            break
        step = rng.choice(options)
        d = elementary_dual_twisted(d, step[0]) if len(step) == 1 else elementary_dual_pair(d, *step)
    if d.word:
        k = rng.randrange(len(d.word))
        d = ChordDiagram(d.word[k:] + d.word[:k], d.twisted)
    return d


def random_orientable(seed: int, n: int) -> ChordDiagram:
    return random_bouquet(seed, n, 0.0)
