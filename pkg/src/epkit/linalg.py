"""Exact dense linear algebra over the Gaussian rationals.

Everything here computes with GaussianRational entries and never rounds:
row reduction, rank, the four fundamental subspaces, full-rank factorization,
linear solves, inverses, and the left-multiplication Kronecker lift.
Zero-dimensional matrices (0 x n, n x 0) are legal values throughout.

Subspaces are stored in a canonical column-reduced echelon basis so that
subspace equality is plain structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .exactnum import ONE, ZERO, GaussianRational, as_scalar


class ShapeError(ValueError):
    """Raised when matrix dimensions do not compose."""


class SingularMatrixError(ValueError):
    """Raised when an exact inverse of a singular (or non-square) matrix is requested."""


class InternalConsistencyError(AssertionError):
    """A verified-by-construction identity failed; indicates a bug, not bad input."""


class MatrixQ:
    """Immutable dense matrix of GaussianRational entries, row-major."""

    __slots__ = ("rows", "cols", "_entries")

    rows: int
    cols: int

    def __init__(self, rows: int, cols: int, entries: Sequence[GaussianRational]):
        if rows < 0 or cols < 0:
            raise ShapeError("negative matrix dimension")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(
                f"expected {rows * cols} entries for {rows}x{cols}, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixQ is immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "MatrixQ":
        """Build from nested sequences; entries may be int, Fraction, str, or scalar."""
        rows = len(data)
        cols = len(data[0]) if rows else 0
        flat = []
        for r in data:
            if len(r) != cols:
                raise ShapeError("ragged rows")
            flat.extend(as_scalar(x) for x in r)
        return cls(rows, cols, flat)

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence) -> "MatrixQ":
        d = [as_scalar(x) for x in diag]
        n = len(d)
        return cls(n, n, [d[i] if i == j else ZERO for i in range(n) for j in range(n)])

    # -- access ------------------------------------------------------------

    def entry(self, i: int, j: int) -> GaussianRational:
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self._entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_complex_rows(self) -> list:
        """Float image as nested lists of complex (for the float-side modules)."""
        return [[x.to_complex() for x in self.row(i)] for i in range(self.rows)]

    # -- predicates ----------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self._entries)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        self._same_shape(other)
        return MatrixQ(
            self.rows, self.cols, [a + b for a, b in zip(self._entries, other._entries)]
        )

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        self._same_shape(other)
        return MatrixQ(
            self.rows, self.cols, [a - b for a, b in zip(self._entries, other._entries)]
        )

    def __neg__(self) -> "MatrixQ":
        return MatrixQ(self.rows, self.cols, [-a for a in self._entries])

    def scale(self, s) -> "MatrixQ":
        s = as_scalar(s)
        return MatrixQ(self.rows, self.cols, [s * a for a in self._entries])

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        n, k, m = self.rows, self.cols, other.cols
        a = self._entries
        b = other._entries
        out = []
        for i in range(n):
            acc = [ZERO] * m
            base = i * k
            for t in range(k):
                x = a[base + t]
                if x.is_zero():
                    continue
                boff = t * m
                for j in range(m):
                    y = b[boff + j]
                    if not y.is_zero():
                        acc[j] = acc[j] + x * y
            out.extend(acc)
        return MatrixQ(n, m, out)

    def _same_shape(self, other: "MatrixQ") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    # -- slicing / stacking ---------------------------------------------------

    def select_columns(self, indices: Sequence[int]) -> "MatrixQ":
        idx = list(indices)
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(r[j] for j in idx)
        return MatrixQ(self.rows, len(idx), out)

    def take_rows(self, count: int) -> "MatrixQ":
        return MatrixQ(count, self.cols, self._entries[: count * self.cols])

    def hstack(self, other: "MatrixQ") -> "MatrixQ":
        if self.rows != other.rows:
            raise ShapeError("hstack needs equal row counts")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return MatrixQ(self.rows, self.cols + other.cols, out)

    def vstack(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.cols:
            raise ShapeError("vstack needs equal column counts")
        return MatrixQ(self.rows + other.rows, self.cols, self._entries + other._entries)

    # -- equality / repr -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"MatrixQ({self.rows}x{self.cols}: {body})"


def transpose(a: MatrixQ) -> MatrixQ:
    """Plain transpose, no conjugation."""
    return MatrixQ(
        a.cols, a.rows, [a.entry(i, j) for j in range(a.cols) for i in range(a.rows)]
    )


def conj_transpose(a: MatrixQ) -> MatrixQ:
    """Conjugate transpose; the involution of the matrix *-algebra."""
    return MatrixQ(
        a.cols,
        a.rows,
        [a.entry(i, j).conj() for j in range(a.cols) for i in range(a.rows)],
    )


def rref(a: MatrixQ) -> tuple:
    """Reduced row echelon form.

    Returns (R, pivots) where R is the RREF of `a` and pivots is the ordered
    list of pivot column indices.  Exact Gauss-Jordan with leading 1 pivots;
    the result is the unique RREF of `a`.
    """
    nrows, ncols = a.rows, a.cols
    m = [list(a.row(i)) for i in range(nrows)]
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        prow = None
        for i in range(r, nrows):
            if not m[i][col].is_zero():
                prow = i
                break
        if prow is None:
            continue
        m[r], m[prow] = m[prow], m[r]
        pv = m[r][col]
        if not pv.is_one():
            row_r = m[r]
            for j in range(col, ncols):
                if not row_r[j].is_zero():
                    row_r[j] = row_r[j] / pv
        row_r = m[r]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][col]
            if f.is_zero():
                continue
            row_i = m[i]
            for j in range(col, ncols):
                x = row_r[j]
                if not x.is_zero():
                    row_i[j] = row_i[j] - f * x
        pivots.append(col)
        r += 1
    flat = [x for row in m for x in row]
    return MatrixQ(nrows, ncols, flat), pivots


def rank(a: MatrixQ) -> int:
    return len(rref(a)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of column vectors, held in canonical reduced-echelon basis.

    `basis` is ambient_dim x dim; two Subspace values are equal exactly when
    they describe the same subspace of the same ambient space.
    """

    ambient_dim: int
    basis: MatrixQ

    @property
    def dim(self) -> int:
        return self.basis.cols

    @staticmethod
    def from_spanning_columns(columns: MatrixQ) -> "Subspace":
        """Canonicalize the span of the given columns."""
        r, pivots = rref(transpose(columns))
        reduced = transpose(r.take_rows(len(pivots)))
        return Subspace(columns.rows, reduced)

    def contains_vector(self, v: MatrixQ) -> bool:
        if v.rows != self.ambient_dim or v.cols != 1:
            raise ShapeError("vector/ambient mismatch")
        return rank(self.basis.hstack(v)) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("ambient dimension mismatch")
        return rank(self.basis.hstack(other.basis)) == self.dim


def subspace_equal(s1: Subspace, s2: Subspace) -> bool:
    """Exact subspace equality; ambient-dimension mismatch is an error."""
    if s1.ambient_dim != s2.ambient_dim:
        raise ShapeError("ambient dimension mismatch")
    return s1.basis == s2.basis


def kernel(a: MatrixQ) -> Subspace:
    """Null space {x : a x = 0} as a canonical Subspace of C^cols."""
    r, pivots = rref(a)
    free = [j for j in range(a.cols) if j not in pivots]
    cols = []
    for f in free:
        v = [ZERO] * a.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            coeff = r.entry(i, f)
            if not coeff.is_zero():
                v[p] = -coeff
        cols.append(v)
    if cols:
        basis = transpose(MatrixQ(len(cols), a.cols, [x for v in cols for x in v]))
    else:
        basis = MatrixQ.zeros(a.cols, 0)
    return Subspace.from_spanning_columns(basis)


def range_space(a: MatrixQ) -> Subspace:
    """Column space of a, canonicalized."""
    return Subspace.from_spanning_columns(a)


def row_space(a: MatrixQ) -> Subspace:
    """Row space {x a : x} flipped into column form via plain transpose."""
    return range_space(transpose(a))


def right_kernel(a: MatrixQ) -> Subspace:
    """Right-sided null space {z : z a = 0}, flipped into column form."""
    return kernel(transpose(a))


@dataclass(frozen=True)
class FullRankFactorization:
    """a = B C with B of full column rank and C of full row rank."""

    b: MatrixQ
    c: MatrixQ
    rank: int


def full_rank_factorize(a: MatrixQ) -> FullRankFactorization:
    """Full-rank factorization from the RREF: B = pivot columns of a, C = nonzero RREF rows."""
    r, pivots = rref(a)
    k = len(pivots)
    b = a.select_columns(pivots)
    c = r.take_rows(k)
    return FullRankFactorization(b=b, c=c, rank=k)


def solve_exists(a: MatrixQ, y: MatrixQ, side: str = "right") -> Optional[MatrixQ]:
    """Exact linear solve, deciding existence.

    side="right": find x with a @ x == y (x is a.cols x y.cols).
    side="left":  find x with x @ a == y (x is y.rows x a.rows).
    Returns one exact solution (free variables zero) or None when the system
    is inconsistent; existence is decided by the rank of the augmented system.
    """
    if side == "left":
        xt = solve_exists(transpose(a), transpose(y), side="right")
        return None if xt is None else transpose(xt)
    if side != "right":
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if a.rows != y.rows:
        raise ShapeError("solve: row counts differ")
    aug, pivots = rref(a.hstack(y))
    if any(p >= a.cols for p in pivots):
        return None
    out = [[ZERO] * y.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for j in range(y.cols):
            out[p][j] = aug.entry(i, a.cols + j)
    x = MatrixQ(a.cols, y.cols, [v for row_ in out for v in row_])
    if (a @ x) != y:
        raise InternalConsistencyError("solve_exists produced a non-solution")
    return x


def is_invertible(a: MatrixQ) -> bool:
    return a.is_square and rank(a) == a.rows


def inverse(a: MatrixQ) -> MatrixQ:
    """Exact inverse; SingularMatrixError when none exists.  0x0 inverts to itself."""
    if not a.is_square:
        raise SingularMatrixError("inverse of non-square matrix")
    n = a.rows
    if n == 0:
        return a
    aug, pivots = rref(a.hstack(MatrixQ.identity(n)))
    if len(pivots) != n or pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    inv = MatrixQ(n, n, [aug.entry(i, n + j) for i in range(n) for j in range(n)])
    return inv


def kron(a: MatrixQ, b: MatrixQ) -> MatrixQ:
    """Kronecker product a (x) b."""
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                aij = a.entry(i, j)
                if aij.is_zero():
                    out.extend([ZERO] * b.cols)
                else:
                    out.extend(aij * b.entry(k, l) for l in range(b.cols))
    return MatrixQ(a.rows * b.rows, a.cols * b.cols, out)


def kron_left_mult(a: MatrixQ) -> MatrixQ:
    """Matrix of x -> a x on n x n matrices, in the row-major entry basis.

    Equals a (x) I_n: row-major vec(a x) = (a (x) I_n) row-major vec(x).
    """
    if not a.is_square:
        raise ShapeError("kron_left_mult needs a square matrix")
    return kron(a, MatrixQ.identity(a.rows))
