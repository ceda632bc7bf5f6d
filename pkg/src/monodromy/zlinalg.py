"""Exact integer linear algebra: Smith normal form, cokernels, ranks.

Everything here runs on Python ints, so intermediate entries can grow
without overflow. Matrices are small (tens of rows) in every caller, so
dense row-major storage is enough.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    T = property(transpose)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in cols)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.to_rows())


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`smith_normal_form`: ``U @ A @ V == D``.

    ``U_inv`` and ``V_inv`` are carried along because the homology code
    needs them to change coordinates without re-inverting.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diagonal: tuple[int, ...]
    U_inv: IntMatrix = field(repr=False)
    V_inv: IntMatrix = field(repr=False)

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group Z^free_rank + sum of Z/t."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion coefficient {t} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion chain broken: {a} does not divide {b}")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def __str__(self) -> str:
        parts = ["Z"] * min(self.free_rank, 1)
        if self.free_rank > 1:
            parts = [f"Z^{self.free_rank}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _as_matrix(A) -> IntMatrix:
    if isinstance(A, IntMatrix):
        return A
    return IntMatrix.from_rows(A)


class _Work:
    """Mutable SNF workspace tracking U, U^-1, V, V^-1 alongside A."""

    def __init__(self, A: IntMatrix):
        m, n = A.shape
        self.m, self.n = m, n
        self.a = A.to_rows()
        self.u = IntMatrix.identity(m).to_rows()
        self.ui = IntMatrix.identity(m).to_rows()
        self.v = IntMatrix.identity(n).to_rows()
        self.vi = IntMatrix.identity(n).to_rows()

    # Row operation R: row_i += c * row_j.  U <- R U, U^-1 <- U^-1 R^-1.
    def add_row(self, i: int, j: int, c: int):
        if c == 0:
            return
        for mat in (self.a, self.u):
            ri, rj = mat[i], mat[j]
            for k in range(len(ri)):
                ri[k] += c * rj[k]
        for r in self.ui:
            r[j] -= c * r[i]

    def swap_rows(self, i: int, j: int):
        if i == j:
            return
        for mat in (self.a, self.u):
            mat[i], mat[j] = mat[j], mat[i]
        for r in self.ui:
            r[i], r[j] = r[j], r[i]

    def negate_row(self, i: int):
        for mat in (self.a, self.u):
            mat[i] = [-x for x in mat[i]]
        for r in self.ui:
            r[i] = -r[i]

    # Column operation C: col_i += c * col_j.  V <- V C, V^-1 <- C^-1 V^-1.
    def add_col(self, i: int, j: int, c: int):
        if c == 0:
            return
        for mat in (self.a, self.v):
            for r in mat:
                r[i] += c * r[j]
        ri, rj = self.vi[i], self.vi[j]
        for k in range(len(rj)):
            rj[k] -= c * ri[k]

    def swap_cols(self, i: int, j: int):
        if i == j:
            return
        for mat in (self.a, self.v):
            for r in mat:
                r[i], r[j] = r[j], r[i]
        self.vi[i], self.vi[j] = self.vi[j], self.vi[i]


def smith_normal_form(A) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivot rule: smallest nonzero absolute value in the remaining block,
    ties broken by lowest row, then lowest column. Diagonal entries come
    out nonnegative and form a divisibility chain.

    >>> smith_normal_form([[2, 4], [6, 8]]).diagonal
    (2, 4)
    """
    A = _as_matrix(A)
    w = _Work(A)
    a = w.a
    m, n = w.m, w.n
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            w.swap_rows(t, pi)
            w.swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    w.add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    w.add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            # Pivot row/column are clear; enforce divisibility on the rest.
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            w.add_row(t, bad, 1)
        if a[t][t] < 0:
            w.negate_row(t)
    k = min(m, n)
    diag = tuple(a[i][i] for i in range(k))
    return SmithForm(
        U=IntMatrix.from_rows(w.u, cols=m),
        D=IntMatrix.from_rows(a, cols=n),
        V=IntMatrix.from_rows(w.v, cols=n),
        diagonal=diag,
        U_inv=IntMatrix.from_rows(w.ui, cols=m),
        V_inv=IntMatrix.from_rows(w.vi, cols=n),
    )


def cokernel(A) -> AbelianGroup:
    """Z^rows / column span of A."""
    A = _as_matrix(A)
    snf = smith_normal_form(A)
    nonzero = [x for x in snf.diagonal if x]
    return AbelianGroup(A.rows - len(nonzero), tuple(x for x in nonzero if x > 1))


def int_rank(A) -> int:
    """Rank over Q."""
    return smith_normal_form(_as_matrix(A)).rank


def kernel_basis(A) -> list[tuple[int, ...]]:
    """A Z-basis of the integer kernel {v : A v = 0}, as column vectors."""
    A = _as_matrix(A)
    snf = smith_normal_form(A)
    return [snf.V.column(j) for j in range(snf.rank, A.cols)]


def column_span_basis(vectors: Iterable[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """A Z-basis of the lattice spanned by ``vectors`` in Z^dim."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    A = IntMatrix.from_columns(vectors, rows=dim)
    snf = smith_normal_form(A)
    # A = U^-1 D V^-1, so the span is U^-1 applied to span(D).
    return [
        tuple(snf.diagonal[k] * x for x in snf.U_inv.column(k))
        for k in range(snf.rank)
    ]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide out the content; first nonzero coordinate made positive."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    out = [x // g for x in v]
    lead = next(x for x in out if x)
    if lead < 0:
        out = [-x for x in out]
    return tuple(out)
