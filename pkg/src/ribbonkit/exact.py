"""Exact linear algebra over the integers, the rationals and GF(2).

Matrices are indexed by edge labels.  Integer determinants use Bareiss
fraction-free elimination; rational work goes through ``fractions.Fraction``;
GF(2) rows are machine-word bitsets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .delta import SetSystem
from .errors import (
    BqtSyntaxError,
    LabelClash,
    NotSkewSymmetric,
    SingularPivotBlock,
    UnknownLabel,
)
from .labels import sort_labels
from .limits import check_size

RINGS = ("ZZ", "QQ", "GF2")
MINOR_LIMIT = 16

# -- GF(2) bitset kernels -------------------------------------------------


def gf2_rank(rows: Sequence[int], mask: int) -> int:
    """Rank over GF(2) of the principal submatrix on the bits of ``mask``."""
    basis: list[int] = []
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        v = rows[i] & mask
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def gf2_nonsingular(rows: Sequence[int], mask: int) -> bool:
    return gf2_rank(rows, mask) == mask.bit_count()


def gf2_nullity(rows: Sequence[int], mask: int) -> int:
    return mask.bit_count() - gf2_rank(rows, mask)


# -- scalars --------------------------------------------------------------


def _coerce(value, ring: str):
    if isinstance(value, str):
        value = Fraction(value)
    if ring == "GF2":
        f = Fraction(value)
        if f.denominator != 1:
            raise ValueError("GF(2) entries must be integers")
        return int(f) % 2
    if ring == "ZZ":
        f = Fraction(value)
        if f.denominator != 1:
            raise ValueError(f"non-integer entry {value} in an integer matrix")
        return int(f)
    return Fraction(value)


def _fmt_scalar(x) -> str:
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


@dataclass(frozen=True)
class LabeledMatrix:
    index: tuple[str, ...]
    entries: tuple[tuple, ...]
    ring: str = "ZZ"

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")
        index = tuple(self.index)
        if len(set(index)) != len(index):
            raise ValueError("matrix index labels must be unique")
        rows = tuple(tuple(_coerce(x, self.ring) for x in row) for row in self.entries)
        if len(rows) != len(index) or any(len(r) != len(index) for r in rows):
            raise ValueError("matrix must be square and match its index")
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, index: Iterable[str], rows: Iterable[Iterable], ring: str = "ZZ") -> "LabeledMatrix":
        return cls(tuple(index), tuple(tuple(r) for r in rows), ring)

    @classmethod
    def zeros(cls, index: Iterable[str], ring: str = "ZZ") -> "LabeledMatrix":
        idx = tuple(index)
        return cls(idx, tuple((0,) * len(idx) for _ in idx), ring)

    @classmethod
    def identity(cls, index: Iterable[str], ring: str = "ZZ") -> "LabeledMatrix":
        idx = tuple(index)
        return cls(idx, tuple(tuple(int(i == j) for j in range(len(idx))) for i in range(len(idx))), ring)

    @property
    def n(self) -> int:
        return len(self.index)

    def pos(self, label: str) -> int:
        try:
            return self.index.index(label)
        except ValueError:
            raise UnknownLabel(f"label {label!r} not in matrix index") from None

    def positions(self, I: Iterable[str] | None) -> list[int]:
        if I is None:
            return list(range(self.n))
        labels = I.split() if isinstance(I, str) else list(I)
        return sorted({self.pos(x) for x in labels})

    def __getitem__(self, key: tuple[str, str]):
        i, j = key
        return self.entries[self.pos(i)][self.pos(j)]

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def submatrix(self, I: Iterable[str] | None) -> "LabeledMatrix":
        ps = self.positions(I)
        return LabeledMatrix(
            tuple(self.index[p] for p in ps), tuple(tuple(self.entries[i][j] for j in ps) for i in ps), self.ring
        )

    def as_ring(self, ring: str) -> "LabeledMatrix":
        return LabeledMatrix(self.index, self.entries, ring)

    def plus_identity(self) -> "LabeledMatrix":
        n = self.n
        return LabeledMatrix(
            self.index, tuple(tuple(self.entries[i][j] + (i == j) for j in range(n)) for i in range(n)), self.ring
        )

    def reindex(self, order: Sequence[str]) -> "LabeledMatrix":
        ps = [self.pos(x) for x in order]
        if len(ps) != self.n:
            raise ValueError("reindex needs a permutation of the index")
        return LabeledMatrix(tuple(order), tuple(tuple(self.entries[i][j] for j in ps) for i in ps), self.ring)

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.n) for j in range(i))

    def is_skew(self) -> bool:
        e = self.entries
        if self.ring == "GF2":
            return self.is_symmetric() and all(e[i][i] == 0 for i in range(self.n))
        return all(e[i][j] == -e[j][i] for i in range(self.n) for j in range(i + 1))

    def gf2_rows(self) -> list[int]:
        return [sum((int(x) % 2) << j for j, x in enumerate(row)) for row in self.entries]

    def __str__(self) -> str:
        return format_matrix(self)


@dataclass(frozen=True)
class SNFResult:
    diagonal: tuple[int, ...]

    def nonzero_product(self) -> int:
        out = 1
        for d in self.diagonal:
            if d:
                out *= d
        return out


# -- determinants ---------------------------------------------------------


def bareiss(a: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination (destroys ``a``)."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            if aik == 0:
                if akk != prev:
                    for j in range(k + 1, n):
                        ri[j] = ri[j] * akk // prev
                continue
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _det_rows(rows: list[list], ring: str):
    if ring == "QQ":
        scale = 1
        ints = []
        for r in rows:
            den = lcm(*(Fraction(x).denominator for x in r)) if r else 1
            scale *= den
            ints.append([int(Fraction(x) * den) for x in r])
        return Fraction(bareiss(ints), scale)
    d = bareiss([list(map(int, r)) for r in rows])
    return d % 2 if ring == "GF2" else d


def det(m: LabeledMatrix, I: Iterable[str] | None = None):
    """Principal minor ``det(m[I])``; the empty minor is 1."""
    ps = m.positions(I)
    e = m.entries
    return _det_rows([[e[i][j] for j in ps] for i in ps], m.ring)


def det_mask(m: LabeledMatrix, mask: int):
    ps = [i for i in range(m.n) if mask >> i & 1]
    e = m.entries
    return _det_rows([[e[i][j] for j in ps] for i in ps], m.ring)


def principal_minors(m: LabeledMatrix, limit: int = MINOR_LIMIT) -> list:
    """All principal minors, indexed by bitmask over ``m.index``."""
    check_size(m.n, limit, "principal minor enumeration")
    return [det_mask(m, mask) for mask in range(1 << m.n)]


def cofactor_det(rows: list[list]):
    """Laplace expansion along the first row; a slow independent oracle."""
    n = len(rows)
    if n == 0:
        return 1
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def rank_gf2(m: LabeledMatrix, I: Iterable[str] | None = None) -> int:
    ps = m.positions(I)
    mask = sum(1 << p for p in ps)
    return gf2_rank(m.gf2_rows(), mask)


# -- pivots ---------------------------------------------------------------


def inverse(rows: list[list]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan; raises SingularPivotBlock when singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise SingularPivotBlock("pivot block is singular")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]


def principal_pivot(m: LabeledMatrix, X: Iterable[str]) -> LabeledMatrix:
    """Tucker's principal pivot transform on the block ``X``.

    With ``A = [[A11, A12], [A21, A22]]`` split along ``X`` and its complement,
    the result is ``[[A11^-1, -A11^-1 A12], [A21 A11^-1, A22 - A21 A11^-1 A12]]``
    written back in the original label order.
    """
    xs = m.positions(X)
    ys = [i for i in range(m.n) if i not in set(xs)]
    e = [[Fraction(x) for x in r] for r in m.entries]
    inv = inverse([[e[i][j] for j in xs] for i in xs])
    k = len(xs)
    out = [[Fraction(0)] * m.n for _ in range(m.n)]
    # A11^-1 A12 and A21 A11^-1
    left = [[sum(inv[a][c] * e[xs[c]][y] for c in range(k)) for y in ys] for a in range(k)]
    right = [[sum(e[y][xs[c]] * inv[c][b] for c in range(k)) for b in range(k)] for y in ys]
    for a in range(k):
        for b in range(k):
            out[xs[a]][xs[b]] = inv[a][b]
        for t, y in enumerate(ys):
            out[xs[a]][y] = -left[a][t]
    for s, y in enumerate(ys):
        for b in range(k):
            out[y][xs[b]] = right[s][b]
        for t, z in enumerate(ys):
            out[y][z] = e[y][z] - sum(e[y][xs[c]] * left[c][t] for c in range(k))
    return LabeledMatrix(m.index, tuple(tuple(r) for r in out), "QQ")


def is_pu(m: LabeledMatrix, limit: int = MINOR_LIMIT, minors: list | None = None) -> bool:
    """Principal unimodularity: every principal minor is 0, 1 or -1."""
    if minors is None:
        minors = principal_minors(m, limit)
    return all(d in (0, 1, -1) for d in minors)


# -- Smith normal form ----------------------------------------------------


def smith_normal_form(m: LabeledMatrix | Sequence[Sequence[int]]) -> SNFResult:
    """Invariant factors d_1 | d_2 | ... (zeros last) by elementary row/column moves."""
    rows = m.rows() if isinstance(m, LabeledMatrix) else [list(r) for r in m]
    a = [[int(x) for x in r] for r in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    k = min(nr, nc)
    diag = []
    for t in range(k):
        while True:
            cells = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
            if not cells:
                break
            _, i, j = min(cells)
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
            p = a[t][t]
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
            if any(a[i][t] for i in range(t + 1, nr)) or any(a[t][j] for j in range(t + 1, nc)):
                continue
            # the pivot must divide the whole remaining block
            bad = next((i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
    return SNFResult(tuple(diag))


# -- represented systems --------------------------------------------------


def represented_system(m: LabeledMatrix, limit: int = MINOR_LIMIT, minors: list | None = None) -> SetSystem:
    """Index sets of the nonsingular principal submatrices."""
    check_size(m.n, limit, "represented system")
    if m.ring == "GF2":
        rows = m.gf2_rows()
        feasible = frozenset(mask for mask in range(1 << m.n) if gf2_nonsingular(rows, mask))
    else:
        if minors is None:
            minors = principal_minors(m, limit)
        feasible = frozenset(mask for mask, d in enumerate(minors) if d != 0)
    return SetSystem(m.index, feasible)


def rank_one_plus(A: LabeledMatrix, v: Sequence[int]) -> LabeledMatrix:
    """``A + v v^T``."""
    n = A.n
    e = A.entries
    return LabeledMatrix(A.index, tuple(tuple(e[i][j] + v[i] * v[j] for j in range(n)) for i in range(n)), A.ring)


def bordered(A: LabeledMatrix, v: Sequence[int], hat_label: str) -> LabeledMatrix:
    """The bordered matrix ``[[A, v], [-v^T, 0]]`` with the new index last."""
    if hat_label in A.index:
        raise LabelClash(f"label {hat_label!r} already in the matrix index")
    n = A.n
    rows = [list(A.entries[i]) + [v[i]] for i in range(n)]
    rows.append([-x for x in v] + [0])
    return LabeledMatrix(A.index + (hat_label,), tuple(tuple(r) for r in rows), A.ring)


def bordered_identity_check(A: LabeledMatrix, v: Sequence[int], hat_label: str = "^", limit: int = 10) -> bool:
    """Check ``det((A + v v^T)[I]) == det(A_v[α(I)])`` for every index set ``I``."""
    if not A.is_skew():
        raise NotSkewSymmetric("bordered identity needs a skew-symmetric matrix")
    if len(v) != A.n:
        raise ValueError("vector length differs from matrix size")
    check_size(A.n, limit, "bordered identity check")
    left = rank_one_plus(A, v)
    right = bordered(A, v, hat_label)
    hat = 1 << A.n
    for mask in range(1 << A.n):
        alpha = mask | hat if mask.bit_count() % 2 else mask
        if det_mask(left, mask) != det_mask(right, alpha):
            return False
    return True


# -- text / JSON ----------------------------------------------------------


def format_matrix(m: LabeledMatrix) -> str:
    lines = ["rows: " + " ".join(m.index)]
    if m.ring != "ZZ":
        lines.insert(0, f"ring: {m.ring}")
    width = max([len(_fmt_scalar(x)) for r in m.entries for x in r] or [1])
    for r in m.entries:
        lines.append(" ".join(_fmt_scalar(x).rjust(width) for x in r))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> LabeledMatrix:
    """``rows: labels`` followed by one row per line; optional ``ring:`` line first."""
    ring = None
    index = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("ring:"):
            ring = line.split(":", 1)[1].strip()
            if ring not in RINGS:
                raise BqtSyntaxError(f"unknown ring {ring!r}", lineno, 7)
            continue
        if line.startswith("rows:"):
            index = line.split(":", 1)[1].split()
            continue
        if index is None:
            raise BqtSyntaxError("matrix row before 'rows:' line", lineno, 1)
        try:
            rows.append([Fraction(tok) for tok in line.split()])
        except (ValueError, ZeroDivisionError):
            raise BqtSyntaxError("bad matrix entry", lineno, 1) from None
        if len(rows[-1]) != len(index):
            raise BqtSyntaxError(f"expected {len(index)} entries", lineno, 1)
    if index is None:
        raise BqtSyntaxError("missing 'rows:' line", 0, 0)
    if len(rows) != len(index):
        raise BqtSyntaxError(f"expected {len(index)} rows, got {len(rows)}", 0, 0)
    if ring is None:
        ring = "ZZ" if all(x.denominator == 1 for r in rows for x in r) else "QQ"
    return LabeledMatrix(tuple(index), tuple(tuple(r) for r in rows), ring)


def matrix_to_json(m: LabeledMatrix) -> dict:
    return {"ring": m.ring, "index": list(m.index), "rows": [[_fmt_scalar(x) for x in r] for r in m.entries]}


def matrix_from_json(data: str | dict) -> LabeledMatrix:
    if isinstance(data, str):
        data = json.loads(data)
    return LabeledMatrix(tuple(data["index"]), tuple(tuple(Fraction(x) for x in r) for r in data["rows"]), data["ring"])


def sorted_index(m: LabeledMatrix) -> LabeledMatrix:
    return m.reindex(sort_labels(m.index))
