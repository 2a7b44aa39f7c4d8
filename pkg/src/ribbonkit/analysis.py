"""Quasi-tree generating polynomials, exact Hurwitz stability and log-concavity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .delta import SetSystem
from .duality import AnchoredRibbon, as_anchored
from .errors import BqtSyntaxError, MissingVariable, OracleDisagreement, OverlappingParts, ZeroPolynomial
from .labels import sort_labels
from .limits import check_size

STANLEY_LIMIT = 14
ORACLE_TOL = 1e-9

# -- dense polynomial arithmetic over Q (coefficient lists, low degree first)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _deg(p: Sequence) -> int:
    return len(p) - 1


def _divmod(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, x in enumerate(b):
            a[i + shift] -= c * x
        a.pop()
    return _trim(q), _trim(a)


def _monic(p: list) -> list:
    return [x / p[-1] for x in p] if p else p


def _gcd(a: Sequence, b: Sequence) -> list[Fraction]:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def _derivative(p: Sequence) -> list:
    return [i * p[i] for i in range(1, len(p))]


def _reflect(p: Sequence) -> list:
    """p(-x)."""
    return [x if i % 2 == 0 else -x for i, x in enumerate(p)]


def _eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign_at_inf(p: Sequence, positive: bool) -> int:
    if not p:
        return 0
    s = 1 if p[-1] > 0 else -1
    if not positive and _deg(p) % 2:
        s = -s
    return s


def _variations(signs: Iterable[int]) -> int:
    vals = [s for s in signs if s]
    return sum(1 for a, b in zip(vals, vals[1:]) if a != b)


def _remainder_chain(f0: Sequence, f1: Sequence) -> list[list[Fraction]]:
    chain = [_trim([Fraction(x) for x in f0]), _trim([Fraction(x) for x in f1])]
    while chain[-1]:
        r = _divmod(chain[-2], chain[-1])[1]
        chain.append([-x for x in r])
    return chain[:-1]


def cauchy_index(num: Sequence, den: Sequence) -> int:
    """Cauchy index of num/den over the whole real line (signed remainder chain)."""
    chain = _remainder_chain(den, num)
    left = _variations(_sign_at_inf(p, False) for p in chain)
    right = _variations(_sign_at_inf(p, True) for p in chain)
    return left - right


def count_real_roots(p: Sequence, lo=None, hi=None) -> int:
    """Distinct real roots in the open interval (lo, hi) by Sturm's theorem; None = infinite."""
    p = _trim([Fraction(x) for x in p])
    if _deg(p) < 1:
        return 0
    chain = _remainder_chain(p, _derivative(p))

    def var(x, positive):
        if x is None:
            return _variations(_sign_at_inf(q, positive) for q in chain)
        return _variations((v > 0) - (v < 0) for v in (_eval(q, Fraction(x)) for q in chain))

    vl, vh = var(lo, False), var(hi, True)
    n = vl - vh
    if hi is not None and _eval(p, Fraction(hi)) == 0:
        n -= 1
    return n


# -- integer polynomials ----------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        cs = [int(Fraction(c)) if Fraction(c).denominator == 1 else None for c in self.coefficients]
        if any(c is None for c in cs):
            raise ValueError("coefficients must be integers")
        object.__setattr__(self, "coefficients", tuple(_trim(cs)))

    @classmethod
    def of(cls, *coeffs: int) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x):
        return _eval(self.coefficients, x)

    def reversed(self, degree: int) -> "IntPolynomial":
        """x^degree p(1/x)."""
        cs = list(self.coefficients) + [0] * (degree + 1 - len(self.coefficients))
        return IntPolynomial(tuple(reversed(cs[: degree + 1])))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if mag == 1 and k else str(mag)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{coef}{mono}"))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([head] + [f"{s} {t}" for s, t in terms[1:]])

    def to_text(self) -> str:
        return "poly: " + " ".join(str(c) for c in self.coefficients) + "\n"


def parse_poly(text: str) -> IntPolynomial:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("poly:"):
            raise BqtSyntaxError("expected 'poly: c0 c1 ...'", lineno, 1)
        try:
            return IntPolynomial(tuple(int(t) for t in line[5:].split()))
        except ValueError:
            raise BqtSyntaxError("coefficients must be integers", lineno, 6) from None
    raise BqtSyntaxError("missing 'poly:' line", 0, 0)


# -- stability --------------------------------------------------------------


def squarefree_part(p: Sequence) -> list[Fraction]:
    p = _trim([Fraction(x) for x in p])
    g = _gcd(p, _derivative(p))
    return _monic(_divmod(p, g)[0]) if _deg(g) > 0 else _monic(p)


def _rhp_symmetric(s: list[Fraction]) -> int:
    """RHP roots of an even squarefree polynomial t(x^2) with t(0) != 0."""
    t = s[0::2]
    return _deg(t) - count_real_roots(t, None, 0)


def _rhp_generic(r: list[Fraction]) -> int:
    """RHP roots of a polynomial with no pair of roots symmetric about 0."""
    n = _deg(r)
    if n <= 0:
        return 0
    # r(iy) = A(y) + i B(y)
    A = [Fraction(0)] * (n + 1)
    B = [Fraction(0)] * (n + 1)
    for k, c in enumerate(r):
        unit = (1, 1j, -1, -1j)[k % 4]
        if unit == 1:
            A[k] += c
        elif unit == -1:
            A[k] -= c
        elif unit == 1j:
            B[k] += c
        else:
            B[k] -= c
    A, B = _trim(A), _trim(B)
    index = cauchy_index(A, B)
    # the pole of A/B at infinity, seen as a jump from +inf back to -inf
    gap = _deg(A) - _deg(B)
    if gap > 0 and gap % 2 == 1:
        index += -1 if A[-1] * B[-1] > 0 else 1
    left_minus_right = index
    return (n - left_minus_right) // 2


def rhp_root_count(p: IntPolynomial | Sequence[int]) -> int:
    """Number of distinct roots with strictly positive real part, exactly."""
    coeffs = p.coefficients if isinstance(p, IntPolynomial) else tuple(p)
    q = _trim([Fraction(c) for c in coeffs])
    if not q:
        raise ZeroPolynomial("root count of the zero polynomial")
    q = squarefree_part(q)
    if q[0] == 0:
        q = q[1:]
    s = _gcd(q, _reflect(q))
    r = _divmod(q, s)[0]
    return _rhp_symmetric(s) + _rhp_generic(r)


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    rhp_count: int
    witness_root: tuple[float, float] | None = None
    oracle: str = ""

    def to_dict(self) -> dict:
        out = {"stable": self.stable, "rhp_count": self.rhp_count}
        if self.witness_root is not None:
            out["witness_root"] = list(self.witness_root)
            out["witness_note"] = "floating point, diagnostic only"
        return out


def numeric_roots(p: Sequence) -> list[complex]:
    """Floating-point roots of the squarefree part; mpmath when numpy struggles."""
    import numpy as np

    q = squarefree_part(p)
    if _deg(q) < 1:
        return []
    coeffs = [float(c) for c in reversed(q)]
    roots = [complex(z) for z in np.roots(coeffs)]
    residual = max((abs(_eval([float(c) for c in q], z)) / (1 + abs(z)) ** _deg(q) for z in roots), default=0)
    if residual > 1e-8 or len(roots) != _deg(q):
        import mpmath

        with mpmath.workdps(60):
            roots = [complex(z) for z in mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(q)], maxsteps=400, extraprec=200)]
    return roots


def stability_report(p: IntPolynomial | Sequence[int], oracle: bool = True) -> StabilityReport:
    coeffs = p.coefficients if isinstance(p, IntPolynomial) else tuple(p)
    count = rhp_root_count(coeffs)
    stable = count == 0
    if not oracle:
        return StabilityReport(stable, count)
    roots = numeric_roots(coeffs)
    if stable:
        bad = [z for z in roots if z.real > ORACLE_TOL * (1 + abs(z))]
        if bad:
            raise OracleDisagreement(f"exact count 0 but numeric root {bad[0]} lies in the right half-plane")
        return StabilityReport(True, 0, None, "numpy")
    witness = max(roots, key=lambda z: z.real) if roots else None
    if witness is None or witness.real < ORACLE_TOL:
        raise OracleDisagreement(f"exact count {count} but no numeric root has positive real part")
    numeric = sum(1 for z in roots if z.real > ORACLE_TOL * (1 + abs(z)))
    if numeric != count and all(abs(z.real) > 1e-6 * (1 + abs(z)) for z in roots):
        raise OracleDisagreement(f"exact count {count}, numeric count {numeric}")
    return StabilityReport(False, count, (float(witness.real), float(witness.imag)), "numpy")


def is_hurwitz_stable(p: IntPolynomial | Sequence[int], oracle: bool = True) -> bool:
    return stability_report(p, oracle).stable


# -- quasi-tree polynomials -------------------------------------------------


def qt_poly(g: AnchoredRibbon, limit: int | None = None) -> IntPolynomial:
    g = as_anchored(g)
    counts = [0] * (g.n + 1)
    for X in g.quasi_trees(limit):
        counts[len(X)] += 1
    return IntPolynomial(tuple(counts))


def qt_poly_eval(g: AnchoredRibbon, point: Mapping[str, object], limit: int | None = None) -> Fraction:
    g = as_anchored(g)
    missing = [e for e in g.edges if e not in point]
    if missing:
        raise MissingVariable(f"no value for {' '.join(sort_labels(missing))}")
    vals = {e: Fraction(point[e]) for e in g.edges}
    total = Fraction(0)
    for X in g.quasi_trees(limit):
        term = Fraction(1)
        for e in X:
            term *= vals[e]
        total += term
    return total


def specialize(g: AnchoredRibbon, fixed: Mapping[str, object], limit: int | None = None) -> list[Fraction]:
    """Univariate restriction: fixed edges take their values, the rest become x."""
    g = as_anchored(g)
    vals = {e: Fraction(v) for e, v in fixed.items()}
    coeffs = [Fraction(0)] * (g.n + 1)
    for X in g.quasi_trees(limit):
        term = Fraction(1)
        k = 0
        for e in X:
            if e in vals:
                term *= vals[e]
            else:
                k += 1
        coeffs[k] += term
    return _trim(coeffs)


# -- sequences and log-concavity --------------------------------------------


@dataclass(frozen=True)
class CountSequence:
    values: tuple[int, ...]
    offset: int = 0
    kind: str = "sequence"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if any(v < 0 for v in self.values):
            raise ValueError("count sequences are nonnegative")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "offset": self.offset, "values": list(self.values)}


def q_sequence(g: AnchoredRibbon, Q: Iterable[str] = (), limit: int | None = None) -> CountSequence:
    """q_i counts quasi-trees X with |Q△X| in {2i-1, 2i}; q_0 counts |Q△X| = 0 only."""
    g = as_anchored(g)
    qs = g.base.subset(Q)
    vals = [0] * ((g.n + 1) // 2 + 1)
    for X in g.quasi_trees(limit):
        k = len(X ^ qs)
        vals[(k + 1) // 2] += 1
    return CountSequence(tuple(_trim(vals) or [0]), 0, "q-sequence")


@dataclass(frozen=True)
class LCVerdict:
    log_concave: bool
    ultra_log_concave: bool
    internal_zeros: tuple[int, ...]
    mode: str = "ULC"
    failures: tuple[int, ...] = field(default=())

    @property
    def passes(self) -> bool:
        ok = self.ultra_log_concave if self.mode.upper() == "ULC" else self.log_concave
        return ok and not self.internal_zeros

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "pass": self.passes,
            "log_concave": self.log_concave,
            "ultra_log_concave": self.ultra_log_concave,
            "internal_zeros": list(self.internal_zeros),
            "failures": list(self.failures),
        }


def check_log_concavity(s: CountSequence | Sequence[int], mode: str = "ULC") -> LCVerdict:
    """Exact LC/ULC tests by integer cross-multiplication over the support."""
    vals = list(s.values if isinstance(s, CountSequence) else s)
    offset = s.offset if isinstance(s, CountSequence) else 0
    nz = [i for i, v in enumerate(vals) if v]
    if not nz:
        return LCVerdict(True, True, (), mode)
    lo, hi = nz[0], nz[-1]
    m = hi - lo
    zeros = tuple(i + offset for i in range(lo, hi + 1) if vals[i] == 0)
    lc_fail, ulc_fail = [], []
    for i in range(lo, hi + 1):
        prev = vals[i - 1] if i - 1 >= lo else 0
        nxt = vals[i + 1] if i + 1 <= hi else 0
        if vals[i] ** 2 < prev * nxt:
            lc_fail.append(i + offset)
        k = i - lo
        if 0 < k < m and vals[i] ** 2 * comb(m, k - 1) * comb(m, k + 1) < prev * nxt * comb(m, k) ** 2:
            ulc_fail.append(i + offset)
    fails = ulc_fail if mode.upper() == "ULC" else lc_fail
    return LCVerdict(not lc_fail, not ulc_fail, zeros, mode.upper(), tuple(fails))


def stanley_counts(
    D: SetSystem,
    R: Iterable[str],
    S: Sequence[Iterable[str]] = (),
    a: Sequence[int] = (),
    limit: int = STANLEY_LIMIT,
) -> CountSequence:
    """c_i = number of bases B inside R ∪ S_1 ∪ ... with |B ∩ S_j| = a_j and |B ∩ R| = i."""
    check_size(D.size, limit, "Stanley counts")
    if len(S) != len(a):
        raise ValueError("one target size per part")
    if any(x < 0 for x in a):
        raise ValueError("target sizes are nonnegative")
    parts = [D.mask(R)] + [D.mask(Sj) for Sj in S]
    for (i, p), (j, q) in combinations(enumerate(parts), 2):
        if p & q:
            raise OverlappingParts(f"parts {i} and {j} overlap")
    union = 0
    for p in parts:
        union |= p
    counts = [0] * (parts[0].bit_count() + 1)
    for B in D.feasible:
        if B & ~union:
            continue
        if all((B & Sj).bit_count() == aj for Sj, aj in zip(parts[1:], a)):
            counts[(B & parts[0]).bit_count()] += 1
    return CountSequence(tuple(counts), 0, "stanley")


def parity_classes(s: CountSequence) -> tuple[CountSequence, CountSequence]:
    v = s.values
    return CountSequence(v[0::2], 0, s.kind + "-even"), CountSequence(v[1::2], 0, s.kind + "-odd")


def stanley_verdict(s: CountSequence) -> tuple[bool, str]:
    """One parity class vanishes and the other is ULC with no internal zeros."""
    even, odd = parity_classes(s)
    if any(odd.values) and any(even.values):
        return False, "both parity classes nonzero"
    live = odd if any(odd.values) else even
    verdict = check_log_concavity(live, "ULC")
    return verdict.passes, "" if verdict.passes else f"ULC failure {verdict.to_dict()}"
