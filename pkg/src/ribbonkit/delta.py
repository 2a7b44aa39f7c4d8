"""Set systems and Δ-matroids.

Feasible sets are stored as bitmasks over the ground set, which is kept in
natural label order so that equal systems compare equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import BqtSyntaxError, LabelClash, OddFeasibleSet, UnknownElement
from .labels import label_key, sort_labels
from .limits import check_size

AXIOM_LIMIT = 16
ISO_LIMIT = 8


def _remap(mask: int, perm: list[int]) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[i]
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class SetSystem:
    ground: tuple[str, ...]
    feasible: frozenset[int]

    def __post_init__(self):
        ground = tuple(self.ground)
        if len(set(ground)) != len(ground):
            raise ValueError("ground set labels must be unique")
        feasible = frozenset(self.feasible)
        if not feasible:
            raise ValueError("a set system needs at least one feasible set")
        full = (1 << len(ground)) - 1
        if any(m < 0 or m & ~full for m in feasible):
            raise UnknownElement("feasible set outside the ground set")
        order = sort_labels(ground)
        if list(ground) != order:
            pos = {lab: i for i, lab in enumerate(order)}
            perm = [pos[lab] for lab in ground]
            feasible = frozenset(_remap(m, perm) for m in feasible)
            ground = tuple(order)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "feasible", feasible)

    @classmethod
    def from_sets(cls, ground: Iterable[str], sets: Iterable[Iterable[str]]) -> "SetSystem":
        g = tuple(ground)
        idx = {lab: i for i, lab in enumerate(g)}
        masks = set()
        for s in sets:
            m = 0
            for lab in s.split() if isinstance(s, str) else s:
                if lab not in idx:
                    raise UnknownElement(f"element {lab!r} not in ground set")
                m |= 1 << idx[lab]
            masks.add(m)
        return cls(g, frozenset(masks))

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.ground)}

    def mask(self, X: Iterable[str]) -> int:
        idx = self.index
        m = 0
        for lab in X:
            if lab not in idx:
                raise UnknownElement(f"element {lab!r} not in ground set")
            m |= 1 << idx[lab]
        return m

    def unmask(self, m: int) -> frozenset[str]:
        return frozenset(lab for i, lab in enumerate(self.ground) if m >> i & 1)

    def sets(self) -> list[frozenset[str]]:
        """Feasible sets ordered by size, then lexicographically by label."""
        out = [self.unmask(m) for m in self.feasible]
        return sorted(out, key=lambda s: (len(s), [label_key(x) for x in sort_labels(s)]))

    def __contains__(self, X) -> bool:
        return self.mask(X) in self.feasible

    def __len__(self) -> int:
        return len(self.feasible)

    def size_profile(self) -> tuple[int, ...]:
        prof = [0] * (self.size + 1)
        for m in self.feasible:
            prof[m.bit_count()] += 1
        return tuple(prof)

    def __str__(self) -> str:
        body = ", ".join("".join(sort_labels(s)) if s else "∅" for s in self.sets())
        return f"({{{' '.join(self.ground)}}}, {{{body}}})"


@dataclass(frozen=True)
class LiftedSystem:
    inner: SetSystem
    hat_label: str

    def __post_init__(self):
        if self.hat_label not in self.inner.ground:
            raise UnknownElement(f"hat label {self.hat_label!r} not in ground set")
        if any(m.bit_count() % 2 for m in self.inner.feasible):
            raise OddFeasibleSet("lifted systems have only even feasible sets")


# -- axioms ---------------------------------------------------------------


def _neighbours(s: SetSystem) -> dict[int, list[int]]:
    """For each feasible B and element x, the mask of y with B△{x,y} feasible."""
    F = s.feasible
    n = s.size
    out = {}
    for B in F:
        row = []
        for x in range(n):
            bx = B ^ (1 << x)
            ys = 0
            for y in range(n):
                if (bx ^ (1 << y) if y != x else bx) in F:
                    ys |= 1 << y
            row.append(ys)
        out[B] = row
    return out


def is_delta_matroid(s: SetSystem, limit: int = AXIOM_LIMIT) -> bool:
    """Symmetric exchange: for x in B△B' some y in B△B' has B△{x,y} feasible."""
    check_size(s.size, limit, "exchange axiom check")
    N = _neighbours(s)
    for B in s.feasible:
        nb = N[B]
        for B2 in s.feasible:
            diff = B ^ B2
            d = diff
            while d:
                x = (d & -d).bit_length() - 1
                d &= d - 1
                if not nb[x] & diff:
                    return False
    return True


def is_strong(s: SetSystem, limit: int = AXIOM_LIMIT) -> bool:
    """Strong exchange: one y serves both B△{x,y} and B'△{x,y}."""
    check_size(s.size, limit, "strong exchange check")
    N = _neighbours(s)
    for B in s.feasible:
        nb = N[B]
        for B2 in s.feasible:
            nb2 = N[B2]
            diff = B ^ B2
            d = diff
            while d:
                x = (d & -d).bit_length() - 1
                d &= d - 1
                if not nb[x] & nb2[x] & diff:
                    return False
    return True


def is_even(s: SetSystem) -> bool:
    return len({m.bit_count() % 2 for m in s.feasible}) == 1


# -- operations -----------------------------------------------------------


def twist(s: SetSystem, X: Iterable[str]) -> SetSystem:
    x = s.mask(X)
    return SetSystem(s.ground, frozenset(m ^ x for m in s.feasible))


def _drop(s: SetSystem, e: str, masks: Iterable[int]) -> SetSystem:
    i = s.index[e]
    low = (1 << i) - 1
    ground = s.ground[:i] + s.ground[i + 1 :]
    return SetSystem(ground, frozenset((m & low) | ((m >> (i + 1)) << i) for m in masks))


def delete(s: SetSystem, e: str) -> SetSystem:
    """Drop ``e``; when ``e`` lies in every feasible set (a coloop) strip it instead."""
    bit = s.mask([e])
    avoid = [m for m in s.feasible if not m & bit]
    return _drop(s, e, avoid if avoid else s.feasible)


def contract(s: SetSystem, e: str) -> SetSystem:
    return delete(twist(s, [e]), e)


def delete_all(s: SetSystem, Y: Iterable[str]) -> SetSystem:
    for e in sort_labels(Y):
        s = delete(s, e)
    return s


def restrict_feasible(s: SetSystem, keep) -> SetSystem:
    return SetSystem(s.ground, frozenset(m for m in s.feasible if keep(m)))


def lift(s: SetSystem, hat_label: str) -> LiftedSystem:
    """Add the new element to every odd-sized feasible set."""
    if hat_label in s.ground:
        raise LabelClash(f"label {hat_label!r} already in the ground set")
    n = s.size
    hat = 1 << n
    masks = frozenset(m | hat if m.bit_count() % 2 else m for m in s.feasible)
    return LiftedSystem(SetSystem(s.ground + (hat_label,), masks), hat_label)


def unlift(lifted: LiftedSystem | SetSystem, hat_label: str | None = None) -> SetSystem:
    if isinstance(lifted, SetSystem):
        if hat_label is None:
            raise ValueError("hat label required")
        s = lifted
        if any(m.bit_count() % 2 for m in s.feasible):
            raise OddFeasibleSet("cannot unlift a system with an odd feasible set")
        lifted = LiftedSystem(s, hat_label)
    s, e = lifted.inner, lifted.hat_label
    bit = 1 << s.index[e]
    return _drop(s, e, [m & ~bit for m in s.feasible])


def _fresh_label(ground: Iterable[str]) -> str:
    used = set(ground)
    k = 0
    while f"^{k}" in used:
        k += 1
    return f"^{k}"


def strong_iff_lift_even_check(s: SetSystem, limit: int = 12) -> bool:
    """Strongness of ``s`` against the Δ-matroid property of its (even) lift."""
    check_size(s.size, limit, "strong/lift check")
    left = is_delta_matroid(s, limit + 1) and is_strong(s, limit + 1)
    right = is_delta_matroid(lift(s, _fresh_label(s.ground)).inner, limit + 1)
    if left != right:
        raise AssertionError(f"strong exchange and lifted exchange disagree on {s}")
    return left


def _signatures(s: SetSystem) -> list[tuple[int, ...]]:
    sig = []
    for i in range(s.size):
        prof = [0] * (s.size + 1)
        for m in s.feasible:
            if m >> i & 1:
                prof[m.bit_count()] += 1
        sig.append(tuple(prof))
    return sig


def are_isomorphic(s: SetSystem, t: SetSystem, limit: int = ISO_LIMIT) -> dict[str, str] | None:
    """A ground bijection carrying feasible(s) onto feasible(t), or None."""
    if s.size != t.size or len(s) != len(t) or s.size_profile() != t.size_profile():
        return None
    check_size(s.size, limit, "isomorphism search")
    ss, ts = _signatures(s), _signatures(t)
    if sorted(ss) != sorted(ts):
        return None
    n = s.size
    target = t.feasible
    F = sorted(s.feasible)
    choice: list[int] = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        # projections onto the first k assigned elements must match as multisets
        low = (1 << k) - 1
        proj_s: dict[int, int] = {}
        for m in F:
            key = _remap(m & low, choice[:k])
            proj_s[key] = proj_s.get(key, 0) + 1
        img = 0
        for j in choice[:k]:
            img |= 1 << j
        proj_t: dict[int, int] = {}
        for m in target:
            key = m & img
            proj_t[key] = proj_t.get(key, 0) + 1
        return proj_s == proj_t

    def search(k: int) -> bool:
        if k == n:
            return frozenset(_remap(m, choice) for m in F) == target
        for j in range(n):
            if not used[j] and ts[j] == ss[k]:
                choice[k] = j
                used[j] = True
                if consistent(k + 1) and search(k + 1):
                    return True
                used[j] = False
        choice[k] = -1
        return False

    if not search(0):
        return None
    return {s.ground[i]: t.ground[choice[i]] for i in range(n)}


def apply_bijection(s: SetSystem, mapping: Mapping[str, str]) -> SetSystem:
    return SetSystem.from_sets([mapping[x] for x in s.ground], [[mapping[x] for x in B] for B in s.sets()])


def random_feasible_family(rng, ground: tuple[str, ...], density: float = 0.5) -> SetSystem:
    masks = {m for m in range(1 << len(ground)) if rng.random() < density}
    if not masks:
        masks = {rng.randrange(1 << len(ground))}
    return SetSystem(ground, frozenset(masks))


# -- text formats ---------------------------------------------------------


def parse_dsys(text: str) -> SetSystem:
    """``ground: a b c`` followed by ``set: ...`` lines (empty allowed)."""
    ground = None
    sets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise BqtSyntaxError("expected 'key: values'", lineno, 1)
        key, rest = line.split(":", 1)
        key = key.strip()
        if key == "ground":
            if ground is not None:
                raise BqtSyntaxError("duplicate ground line", lineno, 1)
            ground = rest.split()
        elif key == "set":
            if ground is None:
                raise BqtSyntaxError("set before ground", lineno, 1)
            sets.append(rest.split())
        else:
            raise BqtSyntaxError(f"unknown key {key!r}", lineno, 1)
    if ground is None:
        raise BqtSyntaxError("missing 'ground:' line", 0, 0)
    if not sets:
        raise BqtSyntaxError("no feasible sets", 0, 0)
    return SetSystem.from_sets(ground, sets)


def format_dsys(s: SetSystem) -> str:
    lines = ["ground: " + " ".join(s.ground)]
    for B in s.sets():
        lines.append(("set: " + " ".join(sort_labels(B))).rstrip())
    return "\n".join(lines) + "\n"


def to_json(s: SetSystem) -> dict:
    return {"ground": list(s.ground), "feasible": [sort_labels(B) for B in s.sets()]}


def from_json(data: str | dict) -> SetSystem:
    if isinstance(data, str):
        data = json.loads(data)
    return SetSystem.from_sets(data["ground"], data["feasible"])
