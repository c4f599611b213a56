"""Shared exact fixtures for the test suite.

The tower construction doubles a Lie algebra into both grades with the
identity differential and the bracket acting in both; every axiom then
reduces to the base Jacobi identity, which makes these handy nontrivial
but hand-checkable instances.
"""

from twoterm.assoc2 import StrictAssoc2Algebra
from twoterm.exact_core import Mat, Tensor3
from twoterm.graded import ChainMapPair, TwoTermComplex
from twoterm.lie2 import StrictLie2Algebra, adjoint_rep, coadjoint_rep, semidirect_lie2, zero_rep
from twoterm.prelie2 import StrictPreLie2Algebra


def abelian(n0, n1, d=None):
    cx = TwoTermComplex(n0, n1, d)
    return StrictLie2Algebra.abelian(cx)


def tower(n, base_entries):
    """Both grades a copy of an n-dim Lie algebra, d = identity."""
    cx = TwoTermComplex(n, n, Mat.identity(n))
    L00 = Tensor3((n, n, n), base_entries)
    L01 = Tensor3((n, n, n), base_entries)
    return StrictLie2Algebra(cx, L00, L01)


def affine_tower():
    """Tower over the 2-dim algebra [e1, e2] = e2."""
    return tower(2, {(0, 1, 1): 1, (1, 0, 1): -1})


def heisenberg_tower():
    """Tower over the 3-dim algebra [e1, e2] = e3."""
    return tower(3, {(0, 1, 2): 1, (1, 0, 2): -1})


def rb_operator_affine():
    """Weight-0 operator on the affine tower: e1 -> e2, e2 -> 0."""
    m = Mat([[0, 0], [1, 0]])
    return ChainMapPair(m, m)


def prelie_tower(n, base_entries):
    """Both grades a copy of an n-dim pre-Lie algebra, d = identity."""
    cx = TwoTermComplex(n, n, Mat.identity(n))
    return StrictPreLie2Algebra(
        cx,
        Tensor3((n, n, n), base_entries),
        Tensor3((n, n, n), base_entries),
        Tensor3((n, n, n), base_entries),
    )


def prelie_point():
    """Tower over the idempotent line e.e = e."""
    return prelie_tower(1, {(0, 0, 0): 1})


def prelie_shift():
    """Tower over the 2-dim algebra with e1.e2 = e2 as only product."""
    return prelie_tower(2, {(0, 1, 1): 1})


def prelie_affine():
    """Tower over e2.e1 = e1, e2.e2 = 2 e2: left-symmetric but not associative."""
    return prelie_tower(2, {(1, 0, 0): 1, (1, 1, 1): 2})


def prelie_pool():
    """Small valid pre-Lie structures, including degenerate differentials."""
    return [
        StrictPreLie2Algebra.abelian(TwoTermComplex(1, 1)),
        StrictPreLie2Algebra.abelian(TwoTermComplex(2, 1, Mat([[2], [0]]))),
        prelie_point(),
        prelie_shift(),
        prelie_affine(),
    ]


def assoc_tower(n, base_entries):
    """Both grades a copy of an n-dim associative algebra, d = identity."""
    cx = TwoTermComplex(n, n, Mat.identity(n))
    return StrictAssoc2Algebra(
        cx,
        Tensor3((n, n, n), base_entries),
        Tensor3((n, n, n), base_entries),
        Tensor3((n, n, n), base_entries),
    )


def assoc_point():
    """Tower over the idempotent line e.e = e (commutative)."""
    return assoc_tower(1, {(0, 0, 0): 1})


def dual_numbers_tower():
    """Tower over the dual numbers: unit times anything, square zero."""
    return assoc_tower(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})


def assoc_shift_tower():
    """Tower over the noncommutative algebra e1.e1 = e1, e1.e2 = e2."""
    return assoc_tower(2, {(0, 0, 0): 1, (0, 1, 1): 1})


def assoc_pool():
    """Small valid associative structures, including degenerate differentials."""
    return [
        StrictAssoc2Algebra.abelian(TwoTermComplex(1, 1)),
        StrictAssoc2Algebra.abelian(TwoTermComplex(2, 1, Mat([[2], [0]]))),
        assoc_point(),
        dual_numbers_tower(),
        assoc_shift_tower(),
    ]


def lie_pool():
    """A spread of small valid algebras for property-style tests."""
    algebras = [
        abelian(1, 1),
        abelian(1, 1, Mat([[1]])),
        abelian(2, 1, Mat([[2], [0]])),
        affine_tower(),
        heisenberg_tower(),
    ]
    aff = affine_tower()
    algebras.append(semidirect_lie2(aff, adjoint_rep(aff)))
    algebras.append(semidirect_lie2(aff, coadjoint_rep(aff)))
    hei = heisenberg_tower()
    algebras.append(semidirect_lie2(hei, coadjoint_rep(hei)))
    algebras.append(
        semidirect_lie2(aff, zero_rep(aff, TwoTermComplex(1, 2, Mat([[0, 0]]))))
    )
    return algebras
