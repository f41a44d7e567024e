"""Independent cross-check routes used by the tests.

`brute_force_pinv` finds the Moore-Penrose inverse without touching the
package's factorization formula: conditions (1), (3), (4) of the defining
system are linear over the reals in (Re x, Im x), so they are solved
directly by Gaussian elimination over Fraction; composing any such solution
x0 as x0 a x0 then yields the unique four-condition inverse.  The solver
below is deliberately separate from the package's RREF.
"""

from __future__ import annotations

from fractions import Fraction

from epkit.exactnum import GaussianRational
from epkit.linalg import MatrixQ, conj_transpose


def _gauss_solve(aug, nvars):
    """Particular solution of a real linear system from its augmented rows.

    Free variables are set to zero.  Returns None when inconsistent.
    """
    rows = [list(r) for r in aug]
    nrows = len(rows)
    pivot_cols = []
    r = 0
    for col in range(nvars):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
    for i in range(r, nrows):
        if rows[i][nvars] != 0:
            return None
    sol = [Fraction(0)] * nvars
    for i, col in enumerate(pivot_cols):
        sol[col] = rows[i][nvars]
    return sol


def _residual_vector(a: MatrixQ, x: MatrixQ):
    """Real flattening of the residuals of conditions (1), (3), (4)."""
    ax = a @ x
    xa = x @ a
    r1 = (ax @ a) - a
    r3 = conj_transpose(ax) - ax
    r4 = conj_transpose(xa) - xa
    out = []
    for m in (r1, r3, r4):
        for i in range(m.rows):
            for z in m.row(i):
                out.append(z.re)
                out.append(z.im)
    return out


def brute_force_pinv(a: MatrixQ) -> MatrixQ:
    """Moore-Penrose inverse via the Penrose linear system; exact.

    Intended for small sizes (the system has 2*rows*cols real unknowns).
    """
    m, n = a.rows, a.cols
    nvars = 2 * n * m
    base = _residual_vector(a, MatrixQ.zeros(n, m))
    columns = []
    for k in range(n):
        for l in range(m):
            for part in range(2):
                entries = [GaussianRational(0)] * (n * m)
                entries[k * m + l] = (GaussianRational(1) if part == 0
                                      else GaussianRational(0, 1))
                resid = _residual_vector(a, MatrixQ(n, m, entries))
                columns.append([resid[i] - base[i] for i in range(len(base))])
    aug = [[columns[t][i] for t in range(nvars)] + [-base[i]]
           for i in range(len(base))]
    sol = _gauss_solve(aug, nvars)
    if sol is None:
        raise AssertionError("Penrose system (1),(3),(4) must be solvable")
    entries = []
    for k in range(n):
        for l in range(m):
            t = 2 * (k * m + l)
            entries.append(GaussianRational(sol[t], sol[t + 1]))
    x0 = MatrixQ(n, m, entries)
    y = x0 @ a @ x0
    # y must satisfy all four conditions; (1),(3),(4) plus idempotent-composition
    assert (a @ y @ a) == a
    assert (y @ a @ y) == y
    assert conj_transpose(a @ y) == (a @ y)
    assert conj_transpose(y @ a) == (y @ a)
    return y
