"""Reproduction checks: one function per acceptance criterion.

Each check returns a :class:`CheckResult`; the CLI ``verify-paper`` verb and
the acceptance tests both run them.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterator

from .analysis import (
    check_log_concavity,
    is_hurwitz_stable,
    q_sequence,
    qt_poly,
    stability_report,
    stanley_counts,
    stanley_verdict,
)
from .chord import ChordDiagram, boundary_components, canonicalize, delete_chords, interlace_rows, petrial, quasi_trees
from .corpus import fixture, fixture_certificate, make_cn, random_bouquet, random_pseudo
from .delta import SetSystem, are_isomorphic, delete_all, is_delta_matroid, is_strong, lift, random_feasible_family, twist
from .duality import (
    AnchoredRibbon,
    delete_edges,
    elementary_dual_pair,
    elementary_dual_twisted,
    partial_dual,
    reanchor,
    ribbon_system,
)
from .exact import (
    LabeledMatrix,
    bordered_identity_check,
    det,
    gf2_nullity,
    is_pu,
    principal_minors,
    principal_pivot,
    represented_system,
    smith_normal_form,
)
from .interlace import Orientation, adjusted_matrix, detection_report, hat_matrix, m2, mpm
from .pseudo import adjust, find_certificate

C5_POLY = (1, 5, 5, 5, 5, 1)
C6_POLY = (1, 6, 9, 8, 12)

# adjusted matrices of the two-certificate fixture, rows and columns 1..6
EX316_S = (
    (0, 1, 0, 0, 0, 0),
    (-1, 1, 2, 0, 1, 1),
    (0, 0, 1, 0, 1, 1),
    (0, 0, 0, 0, 1, 0),
    (0, 1, 1, -1, 1, 2),
    (0, 1, 1, 0, 0, 1),
)
EX316_T = (
    (0, 1, 0, 0, 0, 0),
    (-1, 1, 2, 0, -1, -1),
    (0, 0, 1, 0, -1, -1),
    (0, 0, 0, 0, 1, 0),
    (0, -1, -1, -1, 1, 0),
    (0, -1, -1, 0, 2, 1),
)
# the displayed block-diagonal parts (edges 1 2 3 and 4 5 6)
EX316_BLOCKS = {
    "S": (((0, 1, 0), (-1, 1, 2), (0, 0, 1)), ((0, 1, 0), (-1, 1, 2), (0, 0, 1))),
    "T": (((0, 1, 0), (-1, 1, 2), (0, 0, 1)), ((0, 1, 0), (-1, 1, 0), (0, 2, 1))),
}
FIG1_MATRIX = ((1, 1, 1), (-1, 0, 0), (-1, 0, 0))

# arcs of the digraph whose skew adjacency matrix represents the lift of the
# stable non-pseudo-orientable fixture; its drawing names the fixture's chords
# 3 and 6 the other way round, so they are swapped here
FIG8_DIGRAPH_SWAP = {"3": "6", "6": "3"}
FIG8_ARCS = tuple((str(i % 7 + 1), str(i)) for i in range(1, 8)) + (("1", "8"), ("8", "3"), ("8", "6"))


@dataclass
class CheckResult:
    number: int
    title: str
    citation: str
    passed: bool
    detail: str = ""
    extra: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.number:2d} {self.title}: {self.citation}"
        return text + (f" ({self.detail})" if self.detail else "")

    def to_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "citation": self.citation,
            "pass": self.passed,
            "detail": self.detail,
            "extra": self.extra,
        }


# -- shared corpora -------------------------------------------------------


def all_words(n: int) -> Iterator[tuple[str, ...]]:
    labels = [str(i) for i in range(1, n + 1)]
    return iter(sorted(set(permutations(labels * 2))))


def all_bouquets(n: int) -> Iterator[ChordDiagram]:
    labels = [str(i) for i in range(1, n + 1)]
    for w in all_words(n):
        for mask in range(1 << n):
            yield ChordDiagram(w, frozenset(labels[i] for i in range(n) if mask >> i & 1))


def pseudo_corpus(count: int, max_n: int, seed: int = 0) -> list[ChordDiagram]:
    """Certificated fixtures and small families, padded with seeded random ones."""
    fixed = [fixture(name) for name in ("fig1", "fig5", "ex316", "fig7-b1")]
    fixed += [make_cn(n) for n in (1, 2, 3, 4)]
    out = [d for d in fixed if d.n <= max_n]
    k = 0
    while len(out) < count:
        out.append(random_pseudo(seed * 100003 + k, 1 + k % max_n))
        k += 1
    return out


def random_orientation(rng: random.Random, d: ChordDiagram) -> Orientation:
    return Orientation({e: rng.choice(d.positions[e]) for e in d.edges}, rng.random() < 0.5)


def random_quasi_tree(rng: random.Random, d: ChordDiagram) -> frozenset[str]:
    return rng.choice(sorted(quasi_trees(d), key=lambda X: sorted(X)))


# -- criteria -------------------------------------------------------------


def check_cn_inventory() -> CheckResult:
    p5, p6 = qt_poly(make_cn(5)), qt_poly(make_cn(6))
    n5, n6 = len(quasi_trees(make_cn(5))), len(quasi_trees(make_cn(6)))
    ok = (n5, n6) == (22, 36) and p5.coefficients == C5_POLY and p6.coefficients == C6_POLY
    return CheckResult(1, "C_n inventory", "C5, C6 quasi-tree counts and generating polynomials", ok, f"C5: {p5} [{n5}], C6: {p6} [{n6}]")


def check_cn_instability() -> CheckResult:
    rows = []
    ok = True
    for n in range(5, 10):
        p = qt_poly(make_cn(n))
        rep = stability_report(p)  # raises OracleDisagreement on conflict
        rows.append(f"C{n}:{rep.rhp_count}")
        ok &= rep.rhp_count >= 1 and not rep.stable
    return CheckResult(2, "Stability counterexamples", "C5..C9 univariate polynomials have right half-plane roots", ok, " ".join(rows))


def check_ex316() -> CheckResult:
    d = fixture("ex316")
    out = []
    ok = True
    for name, want, snf in (("S", EX316_S, (1, 1, 1, 1, 3, 9)), ("T", EX316_T, (1, 1, 1, 1, 1, 27))):
        m = adjusted_matrix(d, fixture_certificate("ex316", name))
        blocks = EX316_BLOCKS[name]
        e = m.entries
        blk = (tuple(tuple(e[i][j] for j in range(3)) for i in range(3)), tuple(tuple(e[i][j] for j in range(3, 6)) for i in range(3, 6)))
        got_snf = smith_normal_form(m.plus_identity()).diagonal
        total = det(m.plus_identity())
        good = e == want and blk == blocks and got_snf == snf and total == 27
        ok &= good and detection_report(d, m).detects
        out.append(f"{name}: det {total}, snf {' '.join(map(str, got_snf))}")
    return CheckResult(3, "Two certificates", "adjusted matrices, det(I+M) = 27, Smith forms 1 1 1 1 3 9 and 1 1 1 1 1 27", ok, "; ".join(out))


def check_fig1() -> CheckResult:
    d = fixture("fig1")
    D = ribbon_system(d)
    want_D = SetSystem.from_sets("1 2 3".split(), [(), ("1",), ("1", "2"), ("1", "3")])
    want_lift = SetSystem.from_sets("1 2 3 4".split(), [(), ("1", "4"), ("1", "2"), ("1", "3")])
    lifted = lift(D, "4").inner
    c = fixture_certificate("fig1", "lower")
    hat = adjust(d, c, "4")
    m = adjusted_matrix(d, c)
    total = det(m.plus_identity())
    ok = (
        D == want_D
        and lifted == want_lift
        and ribbon_system(hat) == want_lift
        and m.entries == FIG1_MATRIX
        and adjusted_matrix(d, find_certificate(d)).entries == FIG1_MATRIX
        and total == 4
    )
    return CheckResult(4, "Single twisted loop pipeline", "D, lift, adjustment and adjusted matrix of the one-twist example", ok, f"D = {D}, lift = {lifted}, det(I+M) = {total}")


def check_boundary_oracle(random_count: int = 1000, max_n: int = 6, seed: int = 5) -> CheckResult:
    cases = mismatches = 0

    def run(d: ChordDiagram) -> int:
        rows = interlace_rows(d)
        bad = 0
        for mask in range(1 << d.n):
            if boundary_components(d, d.unmask(mask)).component_count != gf2_nullity(rows, mask) + 1:
                bad += 1
        return bad

    for n in range(0, 4):
        for d in all_bouquets(n):
            mismatches += run(d)
            cases += 1
    rng = random.Random(seed)
    for k in range(random_count):
        d = random_bouquet(rng.randrange(1 << 30), rng.randint(1, max_n), rng.random())
        mismatches += run(d)
        cases += 1
    return CheckResult(5, "Boundary oracle", "boundary components = GF(2) nullity + 1", mismatches == 0, f"{cases} diagrams, {mismatches} mismatches")


def check_detection(count: int = 200, max_n: int = 12, seed: int = 6) -> CheckResult:
    rng = random.Random(seed)
    fail_mpm = fail_adj = 0
    for k in range(count):
        d = random_bouquet(rng.randrange(1 << 30), 1 + k % max_n, 0.0)
        m = mpm(d, random_orientation(rng, d))
        minors = principal_minors(m)
        if not (detection_report(d, m, minors=minors).detects and is_pu(m, minors=minors)):
            fail_mpm += 1
    for d in pseudo_corpus(count, max_n, seed):
        c = find_certificate(d)
        m = adjusted_matrix(d, c, random_orientation(rng, d))
        minors = principal_minors(m)
        if not (detection_report(d, m, minors=minors).detects and is_pu(m, minors=minors)):
            fail_adj += 1
    ok = fail_mpm == 0 and fail_adj == 0
    return CheckResult(6, "Matrix detection", "real and adjusted interlacing matrices detect quasi-trees and are PU", ok, f"mpm failures {fail_mpm}/{count}, adjusted failures {fail_adj}/{count}")


def check_lift_correspondence(count: int = 200, max_n: int = 12, seed: int = 6) -> CheckResult:
    fails = 0
    for d in pseudo_corpus(count, max_n, seed):
        c = find_certificate(d)
        hat = str(max((int(e) for e in d.edges if e.isdigit()), default=0) + 1) if all(e.isdigit() for e in d.edges) else "^"
        a = adjust(d, c, hat)
        left = m2(a).reindex(d.edges + (hat,))
        right = hat_matrix(m2(d), hat)
        if left.entries != right.entries or ribbon_system(a) != lift(ribbon_system(d), hat).inner:
            fails += 1
    return CheckResult(7, "Lift correspondence", "M2 of the adjustment is the hat matrix and D of the adjustment is the lift", fails == 0, f"{fails}/{count} failures")


def random_delta_matroids(count: int, max_n: int, seed: int) -> list[SetSystem]:
    rng = random.Random(seed)
    out = [SetSystem.from_sets("1 2 3".split(), [(), ("1",), ("2",), ("3",), ("1", "2", "3")])]
    while len(out) < count:
        n = rng.randint(1, max_n)
        ground = tuple(str(i) for i in range(1, n + 1))
        s = random_feasible_family(rng, ground, rng.choice((0.15, 0.3, 0.5, 0.7)))
        if is_delta_matroid(s):
            out.append(s)
    return out


def check_strong_lift(count: int = 500, max_n: int = 5, seed: int = 8) -> CheckResult:
    bad = 0
    strong = 0
    systems = random_delta_matroids(count, max_n, seed)
    for s in systems:
        st = is_strong(s)
        strong += st
        if st != is_delta_matroid(lift(s, "^").inner):
            bad += 1
    witness = systems[0]
    ok = bad == 0 and not is_strong(witness) and not is_delta_matroid(lift(witness, "^").inner)
    return CheckResult(8, "Strong iff lift is a delta-matroid", "agreement on random delta-matroids and the non-strong witness", ok, f"{len(systems)} systems ({strong} strong), {bad} disagreements")


def check_bordered_identity(count: int = 100, max_n: int = 6, seed: int = 9) -> CheckResult:
    rng = random.Random(seed)
    fails = 0
    for k in range(count):
        n = 1 + k % max_n
        idx = [str(i) for i in range(1, n + 1)]
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                x = rng.randint(-3, 3)
                rows[i][j], rows[j][i] = x, -x
        v = [rng.randint(-2, 2) for _ in range(n)]
        if not bordered_identity_check(LabeledMatrix.from_rows(idx, rows), v):
            fails += 1
    return CheckResult(9, "Bordered identity", "principal minors of A + vv^T match those of the bordered skew matrix", fails == 0, f"{fails}/{count} failures")


def elementary_neighbours(d: ChordDiagram) -> Iterator[ChordDiagram]:
    for e in d.edges:
        if e in d.twisted:
            yield elementary_dual_twisted(d, e)
    plain = [e for e in d.edges if e not in d.twisted]
    rows = interlace_rows(d)
    for i, e in enumerate(plain):
        for f in plain[i + 1 :]:
            if rows[d.index[e]] >> d.index[f] & 1:
                yield elementary_dual_pair(d, e, f)
    for e in d.edges:
        yield delete_chords(d, [e])


def check_minor_closure(count: int = 200, max_n: int = 7, seed: int = 10) -> CheckResult:
    fails = total = 0
    for d in pseudo_corpus(count, max_n, seed):
        for nb in elementary_neighbours(d):
            total += 1
            if find_certificate(nb) is None:
                fails += 1
    return CheckResult(10, "Minor closure", "elementary partial duals and deletions stay certificated", fails == 0, f"{total} minors, {fails} failures")


def cn_reduction(n: int) -> AnchoredRibbon:
    """((C_n)^1)^{2,n} with 2 and n deleted, presented on a bouquet."""
    g = AnchoredRibbon(make_cn(n), frozenset({"1", "2", str(n)}))
    g = reanchor(g, {"1"})
    return delete_edges(g, {"2", str(n)})


def check_cn_chain(ns=range(5, 10)) -> CheckResult:
    found = []
    ok = True
    for n in ns:
        g = cn_reduction(n)
        target = ribbon_system(make_cn(n - 2))
        got = g.delta_matroid()
        iso = are_isomorphic(got, target)
        # the same minor computed on set systems alone
        s = twist(ribbon_system(make_cn(n)), {"1", "2", str(n)})
        ok &= iso is not None and delete_all(s, {"2", str(n)}) == got
        found.append(f"n={n}: {'bijection' if iso else 'none'} ({len(got)} vs {len(target)} feasible sets)")
    return CheckResult(11, "C_n minor chain", "((C_n)^1)^{2,n} minus {2,n} has the delta-matroid of C_{n-2}", ok, "; ".join(found))


def check_fig7() -> CheckResult:
    b1, b2 = fixture("fig7-b1"), fixture("fig7-b2")
    same_d = ribbon_system(b1) == ribbon_system(b2)
    same_m2 = m2(b1).entries == m2(b2).reindex(b1.edges).entries
    c1, c2 = find_certificate(b1), find_certificate(b2)
    ok = same_d and same_m2 and c1 is not None and c2 is None
    return CheckResult(12, "Equal delta-matroids, different verdicts", "B1 is certificated, B2 is not, D(B1) = D(B2)", ok, f"certificate B1 {c1.as_tuple() if c1 else None}, B2 {c2}")


def check_log_concave_counts(count: int = 60, max_n: int = 8, seed: int = 13) -> CheckResult:
    rng = random.Random(seed)
    fails = checked = 0
    for d in pseudo_corpus(count, max_n, seed):
        graphs = [AnchoredRibbon(d)]
        qts = sorted(quasi_trees(d), key=lambda X: sorted(X))
        graphs.append(AnchoredRibbon(d, rng.choice(qts)))
        for g in graphs:
            for Q in g.quasi_trees():
                checked += 1
                if not check_log_concavity(q_sequence(g, Q), "ULC").passes:
                    fails += 1
    c5 = q_sequence(AnchoredRibbon(make_cn(5)), ())
    v5 = check_log_concavity(c5, "ULC")
    extra = {"C5 (not pseudo-orientable)": {"sequence": list(c5.values), "ulc": v5.passes}}
    detail = f"{checked} sequences, {fails} failures; exploratory C5 with Q empty: {list(c5.values)} ULC={v5.passes}"
    return CheckResult(13, "Log-concave quasi-tree counts", "q-sequences are ULC without internal zeros", fails == 0, detail, extra)


def check_stanley(count: int = 100, max_n: int = 10, seed: int = 14) -> CheckResult:
    rng = random.Random(seed)
    fails = 0
    for k in range(count):
        n = 1 + k % max_n
        d = random_bouquet(rng.randrange(1 << 30), n, 0.0)
        D = ribbon_system(d)
        t = rng.randint(0, 2)
        R: list[str] = []
        S: list[list[str]] = [[] for _ in range(t)]
        for e in d.edges:
            r = rng.randrange(t + 2)
            if r == 0:
                R.append(e)
            elif r <= t:
                S[r - 1].append(e)
        a = [rng.randint(0, len(Sj)) for Sj in S]
        ok, _ = stanley_verdict(stanley_counts(D, R, S, a))
        fails += not ok
    return CheckResult(14, "Stanley-type counts", "one parity class vanishes, the other is ULC", fails == 0, f"{fails}/{count} failures")


def fig8_digraph_matrix() -> LabeledMatrix:
    idx = [str(i) for i in range(1, 9)]
    rows = [[0] * 8 for _ in range(8)]
    sw = FIG8_DIGRAPH_SWAP
    for a, b in FIG8_ARCS:
        i, j = idx.index(sw.get(a, a)), idx.index(sw.get(b, b))
        rows[i][j], rows[j][i] = 1, -1
    return LabeledMatrix.from_rows(idx, rows)


def check_pseudo_stability(count: int = 120, max_n: int = 12, seed: int = 15) -> CheckResult:
    fails = 0
    corpus = pseudo_corpus(count, max_n, seed)
    for d in corpus:
        fails += not is_hurwitz_stable(qt_poly(d))
    g8 = fixture("fig8")
    m = fig8_digraph_matrix()
    lifted = lift(ribbon_system(g8), "8").inner
    h = hat_matrix(m2(g8), "8")
    fig8_ok = (
        find_certificate(g8) is None
        and is_hurwitz_stable(qt_poly(g8))
        and is_pu(m)
        and represented_system(m) == lifted
        and all(abs(x) % 2 == y for r1, r2 in zip(m.entries, h.entries) for x, y in zip(r1, r2))
    )
    detail = f"{len(corpus)} certificated bouquets, {fails} unstable; stable non-pseudo example {'ok' if fig8_ok else 'FAILED'}"
    return CheckResult(15, "Stability of the pseudo-orientable class", "qt polynomials are Hurwitz stable", fails == 0 and fig8_ok, detail)


def check_round_trips(cases: int = 10000, seed: int = 16) -> CheckResult:
    rng = random.Random(seed)
    fails = done = 0
    quarter = cases // 4
    for _ in range(quarter):
        d = random_bouquet(rng.randrange(1 << 30), rng.randint(0, 7), rng.random())
        X = random_quasi_tree(rng, d)
        back = partial_dual(partial_dual(d, X), X)
        fails += canonicalize(back) != canonicalize(d)
        done += 1
    for _ in range(quarter):
        d = random_bouquet(rng.randrange(1 << 30), rng.randint(0, 8), rng.random())
        X = [e for e in d.edges if rng.random() < 0.5]
        s = ribbon_system(d)
        fails += petrial(petrial(d, X), X) != d or twist(twist(s, X), X) != s
        done += 1
    for _ in range(quarter):
        n = rng.randint(1, 5)
        idx = [str(i) for i in range(1, n + 1)]
        m = LabeledMatrix.from_rows(idx, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        X = [e for e in idx if rng.random() < 0.5]
        if det(m, X) == 0:
            X = []
        back = principal_pivot(principal_pivot(m, X), X)
        fails += back.entries != m.as_ring("QQ").entries
        done += 1
    for _ in range(cases - 3 * quarter):
        d = random_bouquet(rng.randrange(1 << 30), rng.randint(0, 6), rng.random())
        g = AnchoredRibbon(d, random_quasi_tree(rng, d))
        X = g.anchor.symmetric_difference(random_quasi_tree(rng, g.base))
        Y = g.anchor.symmetric_difference(random_quasi_tree(rng, g.base))
        two = reanchor(reanchor(g, X), Y)
        one = reanchor(g, Y)
        fails += canonicalize(two.base) != canonicalize(one.base) or two.anchor != one.anchor or two.delta_matroid() != g.delta_matroid()
        done += 1
    return CheckResult(16, "Structural round trips", "partial dual, Petrial, twist and pivot involutions; reanchor composition", fails == 0, f"{done} cases, {fails} failures")


CHECKS: dict[int, Callable[[], CheckResult]] = {
    1: check_cn_inventory,
    2: check_cn_instability,
    3: check_ex316,
    4: check_fig1,
    5: check_boundary_oracle,
    6: check_detection,
    7: check_lift_correspondence,
    8: check_strong_lift,
    9: check_bordered_identity,
    10: check_minor_closure,
    11: check_cn_chain,
    12: check_fig7,
    13: check_log_concave_counts,
    14: check_stanley,
    15: check_pseudo_stability,
    16: check_round_trips,
}


def run_check(number: int) -> CheckResult:
    start = time.perf_counter()
    try:
        result = CHECKS[number]()
    except Exception as exc:  # a crash is reported as a failure of that criterion
        result = CheckResult(number, CHECKS[number].__name__, "raised", False, f"{type(exc).__name__}: {exc}")
    result.seconds = time.perf_counter() - start
    return result


def select(filters: list[str] | None) -> list[int]:
    """Criterion numbers matching any filter (a number or a title substring)."""
    if not filters:
        return sorted(CHECKS)
    chosen = set()
    for f in filters:
        if f.isdigit():
            chosen.update(k for k in CHECKS if int(f) == k)
            continue
        for k, fn in CHECKS.items():
            if f.lower() in fn.__name__.lower() or f.lower() in (fn.__doc__ or "").lower():
                chosen.add(k)
    return sorted(chosen)


def run_all(filters: list[str] | None = None) -> list[CheckResult]:
    return [run_check(k) for k in select(filters)]


