"""Exact Moore-Penrose inverses and the EP property.

The pseudoinverse is computed through the full-rank factorization a = B C:

    a^+ = C* (C C*)^-1 (B* B)^-1 B*

which is exact over the Gaussian rationals for any rank (rank 0 gives the
zero matrix of transposed shape).  `penrose_certificate` re-checks the four
defining conditions from scratch, and `is_ep` decides a a^+ == a^+ a exactly.

`lemma38_witnesses` / `lemma38_factor_witnesses` build the invertible
elements v, w with a^+ = a* v = w a* (and the related factor identities) and
re-verify every claimed identity before returning.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    FullRankFactorization,
    InternalConsistencyError,
    MatrixQ,
    ShapeError,
    conj_transpose,
    full_rank_factorize,
    inverse,
    is_invertible,
)


def pinv(a: MatrixQ) -> MatrixQ:
    """Exact Moore-Penrose inverse of any rectangular matrix."""
    f = full_rank_factorize(a)
    return pinv_from_factorization(f)


def pinv_from_factorization(f: FullRankFactorization) -> MatrixQ:
    b, c = f.b, f.c
    bs = conj_transpose(b)
    cs = conj_transpose(c)
    return cs @ inverse(c @ cs) @ inverse(bs @ b) @ bs


@dataclass(frozen=True)
class PenroseCertificate:
    """Residuals/truths of the four Moore-Penrose conditions for a pair (a, x)."""

    cond1_residual: MatrixQ  # a x a - a
    cond2_residual: MatrixQ  # x a x - x
    ax_hermitian: bool  # (a x)* == a x
    xa_hermitian: bool  # (x a)* == x a

    @property
    def valid(self) -> bool:
        return (
            self.cond1_residual.is_zero()
            and self.cond2_residual.is_zero()
            and self.ax_hermitian
            and self.xa_hermitian
        )


def penrose_certificate(a: MatrixQ, x: MatrixQ) -> PenroseCertificate:
    """Evaluate the four conditions exactly; shapes must be a: n x m, x: m x n."""
    if x.rows != a.cols or x.cols != a.rows:
        raise ShapeError(
            f"candidate inverse must be {a.cols}x{a.rows}, got {x.rows}x{x.cols}"
        )
    ax = a @ x
    xa = x @ a
    return PenroseCertificate(
        cond1_residual=(ax @ a) - a,
        cond2_residual=(xa @ x) - x,
        ax_hermitian=conj_transpose(ax) == ax,
        xa_hermitian=conj_transpose(xa) == xa,
    )


@dataclass(frozen=True)
class MPPair:
    """A square matrix with its pseudoinverse and the two associated projections.

    p = a a^+ projects onto range(a); q = a^+ a has kernel(a) as kernel.
    Both are exact hermitian idempotents; the constructor re-verifies that.
    """

    a: MatrixQ
    a_dagger: MatrixQ
    p: MatrixQ
    q: MatrixQ

    @classmethod
    def from_matrix(cls, a: MatrixQ) -> "MPPair":
        if not a.is_square:
            raise ShapeError("MPPair expects a square matrix")
        x = pinv(a)
        p = a @ x
        q = x @ a
        for proj in (p, q):
            if proj @ proj != proj or conj_transpose(proj) != proj:
                raise InternalConsistencyError("a a^+ / a^+ a not a hermitian idempotent")
        return cls(a=a, a_dagger=x, p=p, q=q)


def is_ep(a: MatrixQ) -> bool:
    """True when a a^+ == a^+ a (exact).  Square input required."""
    if not a.is_square:
        raise ShapeError("is_ep expects a square matrix")
    x = pinv(a)
    return (a @ x) == (x @ a)


def lemma38_witnesses(pair: MPPair) -> tuple:
    """Invertible v, w with a^+ = a* v = w a*.

    v = e - p + (a^+)* a^+  satisfies  a^+ = a* v,  a a* v = v a a* = p.
    w = e - q + a^+ (a^+)*  satisfies  a^+ = w a*,  w a* a = a* a w = q.
    All identities (and invertibility) are re-verified exactly.
    """
    a, x, p, q = pair.a, pair.a_dagger, pair.p, pair.q
    e = MatrixQ.identity(a.rows)
    xs = conj_transpose(x)
    a_star = conj_transpose(a)
    v = (e - p) + (xs @ x)
    w = (e - q) + (x @ xs)
    aas = a @ a_star
    asa = a_star @ a
    checks = (
        is_invertible(v),
        is_invertible(w),
        a_star @ v == x,
        w @ a_star == x,
        aas @ v == p,
        v @ aas == p,
        w @ asa == q,
        asa @ w == q,
    )
    if not all(checks):
        raise InternalConsistencyError("lemma38 witness identities failed")
    return v, w


@dataclass(frozen=True)
class Lemma38FactorChecks:
    """Pass/fail record for the factor-level witness identities."""

    bpinv_gram_inverse_ok: bool  # (b^+ (b^+)*)^-1 == b* b
    cpinv_gram_inverse_ok: bool  # ((c^+)* c^+)^-1 == c c*
    vb_identity_ok: bool  # v b == (b^+)* (c^+)* c^+
    cw_identity_ok: bool  # c w == b^+ (b^+)* (c^+)*

    @property
    def all_ok(self) -> bool:
        return (
            self.bpinv_gram_inverse_ok
            and self.cpinv_gram_inverse_ok
            and self.vb_identity_ok
            and self.cw_identity_ok
        )


def lemma38_factor_witnesses(f: FullRankFactorization, pair: MPPair) -> Lemma38FactorChecks:
    """Check the factor-level identities tied to the v, w witnesses.

    `f` must factor pair.a (b c == a), otherwise it is rejected.
    """
    if f.b @ f.c != pair.a:
        raise ValueError("factorization does not reproduce the matrix of the pair")
    v, w = lemma38_witnesses(pair)
    b, c = f.b, f.c
    bs = conj_transpose(b)
    cs = conj_transpose(c)
    bp = inverse(bs @ b) @ bs  # b^+ for full column rank b
    cp = cs @ inverse(c @ cs)  # c^+ for full row rank c
    bps = conj_transpose(bp)
    cps = conj_transpose(cp)
    e_r = MatrixQ.identity(f.rank)
    g_b = bp @ bps
    g_c = cps @ cp
    return Lemma38FactorChecks(
        bpinv_gram_inverse_ok=(g_b @ (bs @ b) == e_r and (bs @ b) @ g_b == e_r),
        cpinv_gram_inverse_ok=(g_c @ (c @ cs) == e_r and (c @ cs) @ g_c == e_r),
        vb_identity_ok=(v @ b == bps @ cps @ cp),
        cw_identity_ok=(c @ w == bp @ bps @ cps),
    )
