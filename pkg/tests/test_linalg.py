import random
from fractions import Fraction

import pytest

from epkit.exactnum import GaussianRational
from epkit.linalg import (
    MatrixQ,
    ShapeError,
    SingularMatrixError,
    Subspace,
    conj_transpose,
    full_rank_factorize,
    inverse,
    is_invertible,
    kernel,
    kron,
    kron_left_mult,
    range_space,
    rank,
    right_kernel,
    row_space,
    rref,
    solve_exists,
    subspace_equal,
    transpose,
)


def rand_mq(rng, rows, cols, bound=4, complex_entries=True):
    def sc():
        re = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        im = Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) if complex_entries else Fraction(0)
        return GaussianRational(re, im)

    return MatrixQ(rows, cols, [sc() for _ in range(rows * cols)])


# -- construction / basics --------------------------------------------------


def test_construction_and_access():
    m = MatrixQ.from_rows([[1, 2], ["1/2", "3-1i"]])
    assert m.rows == 2 and m.cols == 2
    assert m.entry(1, 0) == GaussianRational(Fraction(1, 2))
    assert m.entry(1, 1) == GaussianRational(3, -1)
    assert m.to_rows()[0] == [GaussianRational(1), GaussianRational(2)]
    assert MatrixQ.identity(3).entry(2, 2).is_one()
    assert MatrixQ.zeros(2, 3).is_zero()
    assert MatrixQ.diagonal([1, "2i"]).entry(1, 1) == GaussianRational(0, 2)


def test_shape_errors():
    with pytest.raises(ShapeError):
        MatrixQ(2, 2, [GaussianRational(0)] * 3)
    with pytest.raises(ShapeError):
        MatrixQ.from_rows([[1, 2], [3]])
    with pytest.raises(ShapeError):
        MatrixQ.from_rows([[1]]) @ MatrixQ.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ShapeError):
        MatrixQ.from_rows([[1]]) + MatrixQ.from_rows([[1, 2]])
    with pytest.raises(ShapeError):
        MatrixQ.from_rows([[1]]).hstack(MatrixQ.from_rows([[1], [2]]))
    with pytest.raises(ShapeError):
        MatrixQ.from_rows([[1]]).vstack(MatrixQ.from_rows([[1, 2]]))


def test_zero_dimensional_matmul():
    a = MatrixQ.zeros(2, 0)
    b = MatrixQ.zeros(0, 3)
    prod = a @ b
    assert prod.rows == 2 and prod.cols == 3 and prod.is_zero()
    assert (MatrixQ.zeros(0, 0) @ MatrixQ.zeros(0, 0)).rows == 0


def test_transpose_and_adjoint():
    rng = random.Random(1)
    for _ in range(30):
        a = rand_mq(rng, rng.randint(1, 4), rng.randint(1, 4))
        b = rand_mq(rng, a.cols, rng.randint(1, 4))
        assert transpose(transpose(a)) == a
        assert conj_transpose(conj_transpose(a)) == a
        assert conj_transpose(a @ b) == conj_transpose(b) @ conj_transpose(a)
        assert transpose(a @ b) == transpose(b) @ transpose(a)


def test_immutability():
    m = MatrixQ.identity(2)
    with pytest.raises(AttributeError):
        m.rows = 3  # type: ignore[misc]


# -- rref / rank ------------------------------------------------------------


def test_rref_known():
    a = MatrixQ.from_rows([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    r, pivots = rref(a)
    assert pivots == [0, 1]
    assert r == MatrixQ.from_rows([[1, 0, -1], [0, 1, 2], [0, 0, 0]])
    assert rank(a) == 2


def test_rref_properties():
    rng = random.Random(2)
    for _ in range(40):
        a = rand_mq(rng, rng.randint(1, 5), rng.randint(1, 5))
        r, pivots = rref(a)
        assert pivots == sorted(pivots)
        # idempotent and rank-stable
        r2, pivots2 = rref(r)
        assert r2 == r and pivots2 == pivots
        assert rank(a) == rank(transpose(a))
        assert rank(a) == rank(conj_transpose(a))
        assert rank(a) <= min(a.rows, a.cols)


# -- subspaces ----------------------------------------------------------------


def test_kernel_and_range():
    rng = random.Random(3)
    for _ in range(40):
        a = rand_mq(rng, rng.randint(1, 5), rng.randint(1, 5))
        ker = kernel(a)
        assert ker.ambient_dim == a.cols
        assert (a @ ker.basis).is_zero()
        assert ker.dim == a.cols - rank(a)
        rng_sp = range_space(a)
        assert rng_sp.ambient_dim == a.rows
        assert rng_sp.dim == rank(a)
        for j in range(a.cols):
            assert rng_sp.contains_vector(a.select_columns([j]))


def test_right_sided_spaces():
    rng = random.Random(4)
    for _ in range(20):
        a = rand_mq(rng, rng.randint(1, 4), rng.randint(1, 4))
        rk = right_kernel(a)
        # rows x with x a = 0, stored as columns
        assert rk.ambient_dim == a.rows
        assert (transpose(rk.basis) @ a).is_zero()
        assert row_space(a).dim == rank(a)


def test_subspace_canonicalization():
    # redundant, rescaled spans canonicalize identically
    s1 = Subspace.from_spanning_columns(MatrixQ.from_rows([[1, 2], [0, 0], [1, 2]]))
    s2 = Subspace.from_spanning_columns(MatrixQ.from_rows([[5], [0], [5]]))
    assert subspace_equal(s1, s2)
    assert s1.dim == 1
    s3 = Subspace.from_spanning_columns(MatrixQ.from_rows([[1], [0], [0]]))
    assert not subspace_equal(s1, s3)
    assert s1.contains_subspace(s2)
    assert not s3.contains_subspace(s1)


def test_subspace_ambient_mismatch():
    s1 = Subspace.from_spanning_columns(MatrixQ.identity(2))
    s2 = Subspace.from_spanning_columns(MatrixQ.identity(3))
    with pytest.raises(ShapeError):
        subspace_equal(s1, s2)
    with pytest.raises(ShapeError):
        s1.contains_subspace(s2)
    with pytest.raises(ShapeError):
        s1.contains_vector(MatrixQ.zeros(3, 1))


def test_zero_and_full_subspaces():
    z = kernel(MatrixQ.identity(3))
    assert z.dim == 0 and z.basis.cols == 0
    f = kernel(MatrixQ.zeros(2, 3))
    assert f.dim == 3
    assert subspace_equal(f, Subspace.from_spanning_columns(MatrixQ.identity(3)))


# -- factorization ------------------------------------------------------------


def test_full_rank_factorize():
    rng = random.Random(5)
    for _ in range(40):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        r = rng.randint(0, min(n, m))
        a = rand_mq(rng, n, r) @ rand_mq(rng, r, m)
        f = full_rank_factorize(a)
        assert f.b @ f.c == a
        assert f.rank == rank(a)
        assert f.b.cols == f.rank and f.c.rows == f.rank
        assert rank(f.b) == f.rank and rank(f.c) == f.rank


def test_full_rank_factorize_edges():
    f = full_rank_factorize(MatrixQ.zeros(2, 3))
    assert f.rank == 0 and f.b.cols == 0 and f.c.rows == 0
    assert f.b @ f.c == MatrixQ.zeros(2, 3)
    f = full_rank_factorize(MatrixQ.identity(3))
    assert f.b == MatrixQ.identity(3) and f.c == MatrixQ.identity(3)


# -- solves / inverse -----------------------------------------------------------


def test_solve_exists_right_and_left():
    rng = random.Random(6)
    for _ in range(40):
        a = rand_mq(rng, rng.randint(1, 4), rng.randint(1, 4))
        x_true = rand_mq(rng, a.cols, rng.randint(1, 3))
        y = a @ x_true
        x = solve_exists(a, y, side="right")
        assert x is not None and a @ x == y
        z_true = rand_mq(rng, rng.randint(1, 3), a.rows)
        w = z_true @ a
        z = solve_exists(a, w, side="left")
        assert z is not None and z @ a == w


def test_solve_exists_unsolvable():
    a = MatrixQ.from_rows([[1, 0], [0, 0]])
    y = MatrixQ.from_rows([[0], [1]])
    assert solve_exists(a, y, side="right") is None
    assert solve_exists(a, MatrixQ.from_rows([[0, 1]]), side="left") is None
    with pytest.raises(ValueError):
        solve_exists(a, y, side="middle")
    with pytest.raises(ShapeError):
        solve_exists(a, MatrixQ.zeros(3, 1), side="right")


def test_inverse():
    rng = random.Random(7)
    done = 0
    while done < 25:
        n = rng.randint(1, 5)
        a = rand_mq(rng, n, n)
        if rank(a) != n:
            continue
        inv = inverse(a)
        assert a @ inv == MatrixQ.identity(n)
        assert inv @ a == MatrixQ.identity(n)
        assert is_invertible(a)
        done += 1
    with pytest.raises(SingularMatrixError):
        inverse(MatrixQ.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(SingularMatrixError):
        inverse(MatrixQ.zeros(2, 3))
    assert inverse(MatrixQ.zeros(0, 0)).rows == 0
    assert not is_invertible(MatrixQ.zeros(2, 3))


# -- kron ---------------------------------------------------------------------


def test_kron_mixed_product():
    rng = random.Random(8)
    for _ in range(15):
        a = rand_mq(rng, 2, 2)
        b = rand_mq(rng, 2, 3)
        c = rand_mq(rng, 2, 2)
        d = rand_mq(rng, 3, 2)
        assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


def row_major_vec(x: MatrixQ) -> MatrixQ:
    return MatrixQ(x.rows * x.cols, 1,
                   [x.entry(i, j) for i in range(x.rows) for j in range(x.cols)])


def test_kron_left_mult_is_left_multiplication():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(1, 3)
        a = rand_mq(rng, n, n)
        x = rand_mq(rng, n, n)
        assert kron_left_mult(a) @ row_major_vec(x) == row_major_vec(a @ x)
    with pytest.raises(ShapeError):
        kron_left_mult(MatrixQ.zeros(2, 3))
