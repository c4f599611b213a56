"""Strict two-term Lie algebras over the rationals.

A strict two-term Lie algebra is a two-term complex g with an
antisymmetric bracket on the degree-0 piece (tensor L00) and a mixed
bracket degree0 x degree(-1) -> degree(-1) (tensor L01); the bracket
with arguments swapped is derived as its negative and never stored.
This module verifies the axioms, strict homomorphisms, and strict
representations, and builds the standard constructions: adjoint, dual
and tensor representations, semidirect products, matched pairs, the
graded Chevalley-Eilenberg-style differential on cochains, symplectic
forms, the induced pre-Lie products, Lagrangian and para-Kahler
decompositions, and the operator form of the Yang-Baxter machinery.

Everything numeric is a Fraction; a law passes iff its residual is
exactly zero.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .exact_core import (
    Mat,
    Report,
    ShapeError,
    InvalidStructureError,
    Tensor3,
    ZERO,
    ONE,
    block_matrix,
    kron,
    lincomb as _lincomb,
    rank,
    rat,
    solve_linear,
    unit,
    vec_add as _vec_add,
    vec_scale as _vec_scale,
    vec_sub as _vec_sub,
)
from .graded import (
    ChainMapPair,
    TensorLayout,
    ThreeTermComplex,
    TwoTermComplex,
    dual_complex,
    tensor_complex,
)


class StrictLie2Algebra:
    """Bracket tensors over a two-term complex.

    L00 has dims (n0, n0, n0): [e_i, e_j] = sum_k L00[i,j,k] e_k.
    L01 has dims (n0, n1, n1): [e_i, f_a] = sum_c L01[i,a,c] f_c.
    The constructor checks shapes only; verify_lie2 checks the laws.
    """

    __slots__ = ("complex", "L00", "L01")

    def __init__(self, complex: TwoTermComplex, L00: Tensor3, L01: Tensor3):
        n0, n1 = complex.n0, complex.n1
        if L00.dims != (n0, n0, n0):
            raise ShapeError(f"L00 dims {L00.dims} expected {(n0, n0, n0)}")
        if L01.dims != (n0, n1, n1):
            raise ShapeError(f"L01 dims {L01.dims} expected {(n0, n1, n1)}")
        self.complex = complex
        self.L00 = L00
        self.L01 = L01

    @property
    def n0(self) -> int:
        return self.complex.n0

    @property
    def n1(self) -> int:
        return self.complex.n1

    @staticmethod
    def abelian(complex: TwoTermComplex) -> "StrictLie2Algebra":
        n0, n1 = complex.n0, complex.n1
        return StrictLie2Algebra(complex, Tensor3((n0, n0, n0)), Tensor3((n0, n1, n1)))

    def bracket00(self, u, v):
        return self.L00.apply(u, v)

    def bracket01(self, u, w):
        return self.L01.apply(u, w)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StrictLie2Algebra)
            and self.complex == other.complex
            and self.L00 == other.L00
            and self.L01 == other.L01
        )

    def __repr__(self) -> str:
        return f"StrictLie2Algebra(n0={self.n0}, n1={self.n1})"

    def to_json(self) -> dict:
        return {
            "complex": self.complex.to_json(),
            "L00": self.L00.to_entries(),
            "L01": self.L01.to_entries(),
        }

    @staticmethod
    def from_json(obj: dict) -> "StrictLie2Algebra":
        try:
            complex = TwoTermComplex.from_json(obj["complex"])
            l00, l01 = obj["L00"], obj["L01"]
        except (KeyError, TypeError):
            raise ShapeError(f"malformed Lie algebra object: {sorted(obj) if isinstance(obj, dict) else obj!r}")
        n0, n1 = complex.n0, complex.n1
        return StrictLie2Algebra(
            complex,
            Tensor3.from_entries((n0, n0, n0), l00),
            Tensor3.from_entries((n0, n1, n1), l01),
        )


def verify_lie2(g: StrictLie2Algebra) -> Report:
    """Check the strictness laws on every basis tuple.

    Laws: antisymmetry of the degree-0 bracket; compatibility of the
    differential with the mixed bracket (d[x,h] = [x,dh]); the derived
    degree-(-1) pairing law [dh,k] = [h,dk]; the Jacobi identity on
    degree 0; and the mixed Jacobi identity.
    """
    n0, n1 = g.n0, g.n1
    d = g.complex.d
    report = Report()
    for i in range(n0):
        for j in range(i, n0):
            res = [g.L00[i, j, k] + g.L00[j, i, k] for k in range(n0)]
            report.add_if_nonzero("antisymmetry", (i, j), res)
    # d[e_i, f_a] = [e_i, d f_a]
    for i in range(n0):
        for a in range(n1):
            lhs = d.apply([g.L01[i, a, c] for c in range(n1)])
            rhs = g.bracket00(unit(n0, i), [d[j, a] for j in range(n0)])
            report.add_if_nonzero("mixed-bracket-chain", (i, a), _vec_sub(lhs, rhs))
    # [d f_a, f_b] = [f_a, d f_b], i.e. the pairing is antisymmetric
    for a in range(n1):
        for b in range(a, n1):
            res = [
                sum((d[j, a] * g.L01[j, b, c] + d[j, b] * g.L01[j, a, c] for j in range(n0)), ZERO)
                for c in range(n1)
            ]
            report.add_if_nonzero("lower-bracket-symmetry", (a, b), res)
    for i in range(n0):
        for j in range(n0):
            for k in range(n0):
                res = _vec_add(
                    g.bracket00(g.bracket00(unit(n0, i), unit(n0, j)), unit(n0, k)),
                    _vec_add(
                        g.bracket00(g.bracket00(unit(n0, j), unit(n0, k)), unit(n0, i)),
                        g.bracket00(g.bracket00(unit(n0, k), unit(n0, i)), unit(n0, j)),
                    ),
                )
                report.add_if_nonzero("jacobi", (i, j, k), res)
    # [[x,y],h] - [x,[y,h]] + [y,[x,h]] = 0
    for i in range(n0):
        for j in range(n0):
            for a in range(n1):
                res = _vec_sub(
                    g.bracket01(g.bracket00(unit(n0, i), unit(n0, j)), unit(n1, a)),
                    _vec_sub(
                        g.bracket01(unit(n0, i), g.bracket01(unit(n0, j), unit(n1, a))),
                        g.bracket01(unit(n0, j), g.bracket01(unit(n0, i), unit(n1, a))),
                    ),
                )
                report.add_if_nonzero("jacobi-mixed", (i, j, a), res)
    return report


def check_lie2_homomorphism(
    g: StrictLie2Algebra, g_prime: StrictLie2Algebra, f: ChainMapPair
) -> Report:
    """Chain-map condition plus preservation of both bracket pieces."""
    if f.f0.shape() != (g_prime.n0, g.n0) or f.f1.shape() != (g_prime.n1, g.n1):
        raise ShapeError("homomorphism component shapes do not match algebras")
    report = Report()
    report.add_if_nonzero(
        "hom-chain", (), f.f0 @ g.complex.d - g_prime.complex.d @ f.f1
    )
    for i in range(g.n0):
        for j in range(g.n0):
            lhs = f.f0.apply([g.L00[i, j, k] for k in range(g.n0)])
            rhs = g_prime.bracket00(
                [f.f0[m, i] for m in range(g_prime.n0)],
                [f.f0[m, j] for m in range(g_prime.n0)],
            )
            report.add_if_nonzero("hom-bracket-00", (i, j), _vec_sub(lhs, rhs))
    for i in range(g.n0):
        for a in range(g.n1):
            lhs = f.f1.apply([g.L01[i, a, c] for c in range(g.n1)])
            rhs = g_prime.bracket01(
                [f.f0[m, i] for m in range(g_prime.n0)],
                [f.f1[c, a] for c in range(g_prime.n1)],
            )
            report.add_if_nonzero("hom-bracket-01", (i, a), _vec_sub(lhs, rhs))
    return report


class Rep2:
    """Strict representation data on a target two-term complex V.

    rho0[i] is a pair of matrices (action on V0, action on V-1) for the
    i-th degree-0 basis element; rho1[a] maps V0 -> V-1 for the a-th
    degree-(-1) basis element.  Verification lives in verify_rep2.
    """

    __slots__ = ("v", "rho0", "rho1")

    def __init__(self, v: TwoTermComplex, rho0, rho1):
        self.v = v
        self.rho0 = [(p[0], p[1]) for p in rho0]
        self.rho1 = list(rho1)
        for on0, on1 in self.rho0:
            if on0.shape() != (v.n0, v.n0) or on1.shape() != (v.n1, v.n1):
                raise ShapeError("rho0 component shapes do not match complex")
        for m in self.rho1:
            if m.shape() != (v.n1, v.n0):
                raise ShapeError("rho1 component shapes do not match complex")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Rep2)
            and self.v == other.v
            and self.rho0 == other.rho0
            and self.rho1 == other.rho1
        )

    def __repr__(self) -> str:
        return f"Rep2(v={self.v!r}, {len(self.rho0)} rho0, {len(self.rho1)} rho1)"

    def to_json(self) -> dict:
        return {
            "complex": self.v.to_json(),
            "rho0": [
                {"on0": on0.to_lists(), "on1": on1.to_lists()}
                for on0, on1 in self.rho0
            ],
            "rho1": [m.to_lists() for m in self.rho1],
        }

    @staticmethod
    def from_json(obj: dict) -> "Rep2":
        try:
            v = TwoTermComplex.from_json(obj["complex"])
            rho0_raw, rho1_raw = obj["rho0"], obj["rho1"]
        except (KeyError, TypeError):
            raise ShapeError("malformed representation object")
        rho0 = []
        for item in rho0_raw:
            try:
                on0, on1 = item["on0"], item["on1"]
            except (KeyError, TypeError):
                raise ShapeError("malformed rho0 item")
            rho0.append((Mat.from_lists(on0, v.n0, v.n0), Mat.from_lists(on1, v.n1, v.n1)))
        rho1 = [Mat.from_lists(m, v.n1, v.n0) for m in rho1_raw]
        return Rep2(v, rho0, rho1)


def zero_rep(g: StrictLie2Algebra, v: TwoTermComplex) -> Rep2:
    return Rep2(
        v,
        [(Mat.zeros(v.n0, v.n0), Mat.zeros(v.n1, v.n1)) for _ in range(g.n0)],
        [Mat.zeros(v.n1, v.n0) for _ in range(g.n1)],
    )


def verify_rep2(g: StrictLie2Algebra, rep: Rep2) -> Report:
    """Chain and bracket conditions for a strict representation."""
    if len(rep.rho0) != g.n0 or len(rep.rho1) != g.n1:
        raise ShapeError("representation component counts do not match algebra")
    d = g.complex.d
    dv = rep.v.d
    report = Report()
    for i in range(g.n0):
        on0, on1 = rep.rho0[i]
        report.add_if_nonzero("rep-chain-commute", (i,), on0 @ dv - dv @ on1)
    for a in range(g.n1):
        acc0 = Mat.zeros(rep.v.n0, rep.v.n0)
        acc1 = Mat.zeros(rep.v.n1, rep.v.n1)
        for k in range(g.n0):
            if d[k, a] != 0:
                acc0 = acc0 + rep.rho0[k][0].scale(d[k, a])
                acc1 = acc1 + rep.rho0[k][1].scale(d[k, a])
        report.add_if_nonzero("rep-chain-rho1-top", (a,), acc0 - dv @ rep.rho1[a])
        report.add_if_nonzero("rep-chain-rho1-bottom", (a,), acc1 - rep.rho1[a] @ dv)
    for i in range(g.n0):
        for j in range(g.n0):
            for grade in (0, 1):
                dim = rep.v.n0 if grade == 0 else rep.v.n1
                acc = Mat.zeros(dim, dim)
                for k in range(g.n0):
                    if g.L00[i, j, k] != 0:
                        acc = acc + rep.rho0[k][grade].scale(g.L00[i, j, k])
                comm = rep.rho0[i][grade] @ rep.rho0[j][grade] - rep.rho0[j][grade] @ rep.rho0[i][grade]
                report.add_if_nonzero("rep-bracket-00", (i, j, grade), acc - comm)
    for i in range(g.n0):
        for a in range(g.n1):
            acc = Mat.zeros(rep.v.n1, rep.v.n0)
            for c in range(g.n1):
                if g.L01[i, a, c] != 0:
                    acc = acc + rep.rho1[c].scale(g.L01[i, a, c])
            comm = rep.rho0[i][1] @ rep.rho1[a] - rep.rho1[a] @ rep.rho0[i][0]
            report.add_if_nonzero("rep-bracket-01", (i, a), acc - comm)
    return report


def adjoint_rep(g: StrictLie2Algebra) -> Rep2:
    """Action of the algebra on its own complex by brackets."""
    rho0 = [(g.L00.left_matrix(i), g.L01.left_matrix(i)) for i in range(g.n0)]
    rho1 = []
    for a in range(g.n1):
        m = Mat.zeros(g.n1, g.n0)
        for i in range(g.n0):
            for c in range(g.n1):
                if g.L01[i, a, c] != 0:
                    m[c, i] = -g.L01[i, a, c]
        rho1.append(m)
    return Rep2(g.complex, rho0, rho1)


def dual_rep(g: StrictLie2Algebra, rep: Rep2) -> Rep2:
    """Contragredient action on the dual complex (negative transposes)."""
    v_dual = dual_complex(rep.v)
    rho0 = [((-on1).transpose(), (-on0).transpose()) for on0, on1 in rep.rho0]
    rho1 = [(-m).transpose() for m in rep.rho1]
    return Rep2(v_dual, rho0, rho1)


def coadjoint_rep(g: StrictLie2Algebra) -> Rep2:
    return dual_rep(g, adjoint_rep(g))


class ThreeTermRep:
    """Action data on a three-term complex (tensor square targets).

    rho0[i] is a triple of matrices acting on the three graded pieces;
    rho1[a] is a pair of maps (grade0 -> grade1, grade1 -> grade2).
    """

    __slots__ = ("complex", "rho0", "rho1")

    def __init__(self, complex: ThreeTermComplex, rho0, rho1):
        self.complex = complex
        self.rho0 = [tuple(t) for t in rho0]
        self.rho1 = [tuple(t) for t in rho1]
        for t in self.rho0:
            if (
                t[0].shape() != (complex.n0, complex.n0)
                or t[1].shape() != (complex.n1, complex.n1)
                or t[2].shape() != (complex.n2, complex.n2)
            ):
                raise ShapeError("three-term rho0 shapes do not match complex")
        for t in self.rho1:
            if t[0].shape() != (complex.n1, complex.n0) or t[1].shape() != (complex.n2, complex.n1):
                raise ShapeError("three-term rho1 shapes do not match complex")


def tensor_rep(g: StrictLie2Algebra, rep_v: Rep2, rep_w: Rep2) -> ThreeTermRep:
    """Tensor-product action on the tensor square of the target complexes.

    Degree-0 generators act by the Leibniz rule on every graded piece.
    Degree-(-1) generators act slot by slot; the second-slot action
    carries the sign (-1)^{|first slot|+1}, matching the sign baked
    into the tensor differential, so the result is a representation.
    """
    v, w = rep_v.v, rep_w.v
    square = tensor_complex(v, w)
    lay = TensorLayout(v, w)
    rho0 = []
    for i in range(g.n0):
        v0, v1 = rep_v.rho0[i]
        w0, w1 = rep_w.rho0[i]
        on_top = kron(v0, Mat.identity(w.n0)) + kron(Mat.identity(v.n0), w0)
        on_mix = block_matrix(
            [
                [
                    kron(v0, Mat.identity(w.n1)) + kron(Mat.identity(v.n0), w1),
                    Mat.zeros(v.n0 * w.n1, v.n1 * w.n0),
                ],
                [
                    Mat.zeros(v.n1 * w.n0, v.n0 * w.n1),
                    kron(v1, Mat.identity(w.n0)) + kron(Mat.identity(v.n1), w0),
                ],
            ]
        )
        on_bot = kron(v1, Mat.identity(w.n1)) + kron(Mat.identity(v.n1), w1)
        rho0.append((on_top, on_mix, on_bot))
    rho1 = []
    for a in range(g.n1):
        rv = rep_v.rho1[a]
        rw = rep_w.rho1[a]
        m01 = Mat.zeros(lay.dim1, lay.dim0)
        for i in range(v.n0):
            for j in range(w.n0):
                col = lay.top(i, j)
                for ap in range(v.n1):
                    if rv[ap, i] != 0:
                        m01[lay.mix1(ap, j), col] = rv[ap, i]
                for b in range(w.n1):
                    if rw[b, j] != 0:
                        m01[lay.mix0(i, b), col] = -rw[b, j]
        m12 = Mat.zeros(lay.dim2, lay.dim1)
        for i in range(v.n0):
            for b in range(w.n1):
                col = lay.mix0(i, b)
                for ap in range(v.n1):
                    if rv[ap, i] != 0:
                        m12[lay.bot(ap, b), col] = rv[ap, i]
        for ap in range(v.n1):
            for j in range(w.n0):
                col = lay.mix1(ap, j)
                for b in range(w.n1):
                    if rw[b, j] != 0:
                        m12[lay.bot(ap, b), col] = rw[b, j]
        rho1.append((m01, m12))
    return ThreeTermRep(square, rho0, rho1)


def check_three_term_rep(g: StrictLie2Algebra, tr: ThreeTermRep) -> Report:
    """Representation laws for an action on a three-term complex."""
    if len(tr.rho0) != g.n0 or len(tr.rho1) != g.n1:
        raise ShapeError("three-term rep component counts do not match algebra")
    c = tr.complex
    d = g.complex.d
    report = Report()
    for i in range(g.n0):
        t = tr.rho0[i]
        report.add_if_nonzero("rep3-chain-commute-1", (i,), t[0] @ c.d1 - c.d1 @ t[1])
        report.add_if_nonzero("rep3-chain-commute-2", (i,), t[1] @ c.d2 - c.d2 @ t[2])
    for a in range(g.n1):
        acc = [Mat.zeros(c.n0, c.n0), Mat.zeros(c.n1, c.n1), Mat.zeros(c.n2, c.n2)]
        for k in range(g.n0):
            if d[k, a] != 0:
                for grade in range(3):
                    acc[grade] = acc[grade] + tr.rho0[k][grade].scale(d[k, a])
        r01, r12 = tr.rho1[a]
        report.add_if_nonzero("rep3-chain-rho1-0", (a,), acc[0] - c.d1 @ r01)
        report.add_if_nonzero("rep3-chain-rho1-1", (a,), acc[1] - (c.d2 @ r12 + r01 @ c.d1))
        report.add_if_nonzero("rep3-chain-rho1-2", (a,), acc[2] - r12 @ c.d2)
    for i in range(g.n0):
        for j in range(g.n0):
            for grade in range(3):
                dim = (c.n0, c.n1, c.n2)[grade]
                acc = Mat.zeros(dim, dim)
                for k in range(g.n0):
                    if g.L00[i, j, k] != 0:
                        acc = acc + tr.rho0[k][grade].scale(g.L00[i, j, k])
                comm = (
                    tr.rho0[i][grade] @ tr.rho0[j][grade]
                    - tr.rho0[j][grade] @ tr.rho0[i][grade]
                )
                report.add_if_nonzero("rep3-bracket-00", (i, j, grade), acc - comm)
    for i in range(g.n0):
        for a in range(g.n1):
            acc01 = Mat.zeros(c.n1, c.n0)
            acc12 = Mat.zeros(c.n2, c.n1)
            for cc in range(g.n1):
                if g.L01[i, a, cc] != 0:
                    acc01 = acc01 + tr.rho1[cc][0].scale(g.L01[i, a, cc])
                    acc12 = acc12 + tr.rho1[cc][1].scale(g.L01[i, a, cc])
            comm01 = tr.rho0[i][1] @ tr.rho1[a][0] - tr.rho1[a][0] @ tr.rho0[i][0]
            comm12 = tr.rho0[i][2] @ tr.rho1[a][1] - tr.rho1[a][1] @ tr.rho0[i][1]
            report.add_if_nonzero("rep3-bracket-01-0", (i, a), acc01 - comm01)
            report.add_if_nonzero("rep3-bracket-01-1", (i, a), acc12 - comm12)
    return report


def semidirect_lie2(g: StrictLie2Algebra, rep: Rep2) -> StrictLie2Algebra:
    """Semidirect product: the action becomes mixed brackets.

    [x+u, y+v] = [x,y] + rho0(x)v - rho0(y)u and
    [x+u, h+m] = [x,h] + rho0(x)m - rho1(h)u.
    Fails fast if the representation or the output is invalid.
    """
    rep_report = verify_rep2(g, rep)
    if not rep_report.ok:
        raise InvalidStructureError("semidirect factor is not a representation", rep_report)
    n0, n1 = g.n0, g.n1
    m0, m1 = rep.v.n0, rep.v.n1
    total = TwoTermComplex(
        n0 + m0,
        n1 + m1,
        block_matrix(
            [
                [g.complex.d, Mat.zeros(n0, m1)],
                [Mat.zeros(m0, n1), rep.v.d],
            ]
        ),
    )
    L00 = Tensor3((n0 + m0, n0 + m0, n0 + m0))
    for (i, j, k), val in g.L00.items():
        L00[i, j, k] = val
    for i in range(n0):
        on0 = rep.rho0[i][0]
        for j in range(m0):
            for k in range(m0):
                if on0[k, j] != 0:
                    L00[i, n0 + j, n0 + k] = on0[k, j]
                    L00[n0 + j, i, n0 + k] = -on0[k, j]
    L01 = Tensor3((n0 + m0, n1 + m1, n1 + m1))
    for (i, a, c), val in g.L01.items():
        L01[i, a, c] = val
    for i in range(n0):
        on1 = rep.rho0[i][1]
        for b in range(m1):
            for c in range(m1):
                if on1[c, b] != 0:
                    L01[i, n1 + b, n1 + c] = on1[c, b]
    for a in range(n1):
        r = rep.rho1[a]
        for j in range(m0):
            for c in range(m1):
                if r[c, j] != 0:
                    L01[n0 + j, a, n1 + c] = -r[c, j]
    out = StrictLie2Algebra(total, L00, L01)
    out_report = verify_lie2(out)
    if not out_report.ok:
        raise InvalidStructureError("semidirect product failed verification", out_report)
    return out


def matched_pair_lie2_check(
    g: StrictLie2Algebra,
    g_prime: StrictLie2Algebra,
    mu: Rep2,
    mu_prime: Rep2,
) -> Report:
    """Six compatibility equations between two mutually acting algebras.

    mu is an action of g on g_prime's complex; mu_prime acts the other
    way.  Representation validity is folded into the report (laws
    prefixed mu-rep / mu-prime-rep) so perturbed inputs never raise.
    """
    if mu.v != g_prime.complex or mu_prime.v != g.complex:
        raise ShapeError("matched pair actions must target the partner complex")
    report = Report()
    report.extend(verify_rep2(g, mu), prefix="mu-rep:")
    report.extend(verify_rep2(g_prime, mu_prime), prefix="mu-prime-rep:")
    _matched_lie2_equations(report, g, g_prime, mu, mu_prime, ("1", "3", "5"))
    _matched_lie2_equations(report, g_prime, g, mu_prime, mu, ("2", "4", "6"))
    return report


def _matched_lie2_equations(report, g, gp, mu, mup, labels):
    """One oriented half of the six equations (other half swaps roles)."""
    n0, n1 = g.n0, g.n1
    p0 = gp.n0
    p1 = gp.n1
    law_a, law_b, law_c = (f"lie2-matched-pair-{s}" for s in labels)
    for i in range(n0):
        for j in range(n0):
            for r in range(p0):
                # mup0(x')[x,y] = [x, mup0(x')y] + [mup0(x')x, y]
                #                 + mup0(mu0(y)x')x - mup0(mu0(x)x')y
                lhs = mup.rho0[r][0].apply([g.L00[i, j, k] for k in range(n0)])
                t1 = g.bracket00(unit(n0, i), [mup.rho0[r][0][m, j] for m in range(n0)])
                t2 = g.bracket00([mup.rho0[r][0][m, i] for m in range(n0)], unit(n0, j))
                t3 = _lincomb(
                    [mu.rho0[j][0][s, r] for s in range(p0)],
                    [[mup.rho0[s][0][m, i] for m in range(n0)] for s in range(p0)],
                )
                t4 = _lincomb(
                    [mu.rho0[i][0][s, r] for s in range(p0)],
                    [[mup.rho0[s][0][m, j] for m in range(n0)] for s in range(p0)],
                )
                res = _vec_sub(lhs, _vec_sub(_vec_add(_vec_add(t1, t2), t3), t4))
                report.add_if_nonzero(law_a, (i, j, r), res)
    for i in range(n0):
        for j in range(n0):
            for b in range(p1):
                # mup1(h')[x,y] = [x, mup1(h')y] + [mup1(h')x, y]
                #                 + mup1(mu0(y)h')x - mup1(mu0(x)h')y
                lhs = mup.rho1[b].apply([g.L00[i, j, k] for k in range(n0)])
                t1 = g.bracket01(unit(n0, i), [mup.rho1[b][c, j] for c in range(n1)])
                t2 = _vec_scale(
                    -1, g.bracket01(unit(n0, j), [mup.rho1[b][c, i] for c in range(n1)])
                )
                t3 = _lincomb(
                    [mu.rho0[j][1][s, b] for s in range(p1)],
                    [[mup.rho1[s][c, i] for c in range(n1)] for s in range(p1)],
                )
                t4 = _lincomb(
                    [mu.rho0[i][1][s, b] for s in range(p1)],
                    [[mup.rho1[s][c, j] for c in range(n1)] for s in range(p1)],
                )
                res = _vec_sub(lhs, _vec_sub(_vec_add(_vec_add(t1, t2), t3), t4))
                report.add_if_nonzero(law_b, (i, j, b), res)
    for i in range(n0):
        for a in range(n1):
            for r in range(p0):
                # mup0(x')[x,h] = [x, mup0(x')h] + [mup0(x')x, h]
                #                 + mup1(mu1(h)x')x - mup0(mu0(x)x')h
                lhs = mup.rho0[r][1].apply([g.L01[i, a, c] for c in range(n1)])
                t1 = g.bracket01(unit(n0, i), [mup.rho0[r][1][c, a] for c in range(n1)])
                t2 = g.bracket01([mup.rho0[r][0][m, i] for m in range(n0)], unit(n1, a))
                t3 = _lincomb(
                    [mu.rho1[a][s, r] for s in range(p1)],
                    [[mup.rho1[s][c, i] for c in range(n1)] for s in range(p1)],
                )
                t4 = _lincomb(
                    [mu.rho0[i][0][s, r] for s in range(p0)],
                    [[mup.rho0[s][1][c, a] for c in range(n1)] for s in range(p0)],
                )
                res = _vec_sub(lhs, _vec_sub(_vec_add(_vec_add(t1, t2), t3), t4))
                report.add_if_nonzero(law_c, (i, a, r), res)


def _assemble_lie2_raw(
    g: StrictLie2Algebra,
    g_prime: StrictLie2Algebra,
    mu: Rep2,
    mu_prime: Rep2,
) -> StrictLie2Algebra:
    """Direct-sum bracket of two mutually acting algebras, without any gate."""
    n0, n1 = g.n0, g.n1
    p0, p1 = g_prime.n0, g_prime.n1
    total = TwoTermComplex(
        n0 + p0,
        n1 + p1,
        block_matrix(
            [
                [g.complex.d, Mat.zeros(n0, p1)],
                [Mat.zeros(p0, n1), g_prime.complex.d],
            ]
        ),
    )
    L00 = Tensor3((n0 + p0, n0 + p0, n0 + p0))
    for (i, j, k), val in g.L00.items():
        L00[i, j, k] = val
    for (r, s, t), val in g_prime.L00.items():
        L00[n0 + r, n0 + s, n0 + t] = val
    for i in range(n0):
        for r in range(p0):
            for s in range(p0):
                if mu.rho0[i][0][s, r] != 0:
                    L00[i, n0 + r, n0 + s] = mu.rho0[i][0][s, r]
                    L00[n0 + r, i, n0 + s] = -mu.rho0[i][0][s, r]
            for m in range(n0):
                if mu_prime.rho0[r][0][m, i] != 0:
                    L00[i, n0 + r, m] = -mu_prime.rho0[r][0][m, i]
                    L00[n0 + r, i, m] = mu_prime.rho0[r][0][m, i]
    L01 = Tensor3((n0 + p0, n1 + p1, n1 + p1))
    for (i, a, c), val in g.L01.items():
        L01[i, a, c] = val
    for (r, b, t), val in g_prime.L01.items():
        L01[n0 + r, n1 + b, n1 + t] = val
    for i in range(n0):
        for b in range(p1):
            for t in range(p1):
                if mu.rho0[i][1][t, b] != 0:
                    L01[i, n1 + b, n1 + t] = mu.rho0[i][1][t, b]
            for c in range(n1):
                if mu_prime.rho1[b][c, i] != 0:
                    L01[i, n1 + b, c] = -mu_prime.rho1[b][c, i]
    for r in range(p0):
        for a in range(n1):
            for s in range(p1):
                if mu.rho1[a][s, r] != 0:
                    L01[n0 + r, a, n1 + s] = -mu.rho1[a][s, r]
            for c in range(n1):
                if mu_prime.rho0[r][1][c, a] != 0:
                    L01[n0 + r, a, c] = mu_prime.rho0[r][1][c, a]
    return StrictLie2Algebra(total, L00, L01)


def matched_pair_lie2_assemble(
    g: StrictLie2Algebra,
    g_prime: StrictLie2Algebra,
    mu: Rep2,
    mu_prime: Rep2,
) -> StrictLie2Algebra:
    """Direct-sum bracket of a matched pair; fails fast on a bad pair.

    [x+x', y+y'] = [x,y] + mu0(x)y' - mup0(y')x + mup0(x')y - mu0(y)x'
                   + [x',y']'
    [x+x', h+h'] = [x,h] + mu0(x)h' - mup1(h')x - mu1(h)x' + mup0(x')h
                   + [x',h']'
    """
    check = matched_pair_lie2_check(g, g_prime, mu, mu_prime)
    if not check.ok:
        raise InvalidStructureError("matched pair conditions failed", check)
    out = _assemble_lie2_raw(g, g_prime, mu, mu_prime)
    out_report = verify_lie2(out)
    if not out_report.ok:
        raise InvalidStructureError("matched pair assembly failed verification", out_report)
    return out


def o_operator_check(g: StrictLie2Algebra, rep: Rep2, t: ChainMapPair) -> Report:
    """Operator equation for a chain map T from the module into g.

    T0(rho0(T0 u)v - rho0(T0 v)u) = [T0 u, T0 v] on degree-0 pairs and
    T1(rho1(T1 m)v - rho0(T0 v)m) = [T1 m, T0 v] on mixed pairs.
    Raises if T is not a chain map (that is a precondition, not a law).
    """
    m0, m1 = rep.v.n0, rep.v.n1
    if t.f0.shape() != (g.n0, m0) or t.f1.shape() != (g.n1, m1):
        raise ShapeError("operator component shapes do not match")
    chain = t.f0 @ rep.v.d - g.complex.d @ t.f1
    if not chain.is_zero():
        bad = Report()
        bad.add_if_nonzero("o-operator-chain", (), chain)
        raise InvalidStructureError("operator is not a chain map", bad)
    report = Report()
    for p in range(m0):
        for q in range(m0):
            tp = [t.f0[i, p] for i in range(g.n0)]
            tq = [t.f0[i, q] for i in range(g.n0)]
            act_p = _lincomb(tp, [[rep.rho0[i][0][s, q] for s in range(m0)] for i in range(g.n0)])
            act_q = _lincomb(tq, [[rep.rho0[i][0][s, p] for s in range(m0)] for i in range(g.n0)])
            lhs = t.f0.apply(_vec_sub(act_p, act_q))
            rhs = g.bracket00(tp, tq)
            report.add_if_nonzero("o-operator-00", (p, q), _vec_sub(lhs, rhs))
    for b in range(m1):
        for q in range(m0):
            tb = [t.f1[a, b] for a in range(g.n1)]
            tq = [t.f0[i, q] for i in range(g.n0)]
            act_b = _lincomb(tb, [[rep.rho1[a][s, q] for s in range(m1)] for a in range(g.n1)])
            act_q = _lincomb(tq, [[rep.rho0[i][1][s, b] for s in range(m1)] for i in range(g.n0)])
            lhs = t.f1.apply(_vec_sub(act_b, act_q))
            rhs = _vec_scale(-1, g.bracket01(tq, tb))
            report.add_if_nonzero("o-operator-01", (b, q), _vec_sub(lhs, rhs))
    return report


class Cochain:
    """Multilinear cochain with components indexed by (p, q, s).

    A component (p, q, s) stores a full coefficient array: for every
    tuple of p degree-0 indices and q degree-(-1) indices, a value
    vector in the target piece of degree s (0 or -1).  Arrays must be
    antisymmetric over the p block and symmetric over the q block; all
    components must share the same total degree p + 2q + s + 1.
    """

    __slots__ = ("n0", "n1", "v", "components", "degree")

    def __init__(self, n0: int, n1: int, v: TwoTermComplex, components: dict):
        self.n0 = int(n0)
        self.n1 = int(n1)
        self.v = v
        self.components = {}
        degrees = set()
        for (p, q, s), arr in components.items():
            if s not in (0, -1):
                raise ShapeError(f"target degree {s} must be 0 or -1")
            degrees.add(p + 2 * q + s + 1)
            dim = v.n0 if s == 0 else v.n1
            full = {}
            for xs in product(range(self.n0), repeat=p):
                for hs in product(range(self.n1), repeat=q):
                    value = arr.get((xs, hs))
                    if value is None:
                        value = [ZERO] * dim
                    else:
                        value = [rat(x) for x in value]
                        if len(value) != dim:
                            raise ShapeError("cochain value length does not match target")
                    full[(xs, hs)] = value
            self.components[(p, q, s)] = full
        if len(degrees) > 1:
            raise ShapeError(f"cochain components have mixed degrees {sorted(degrees)}")
        self.degree = degrees.pop() if degrees else None
        self._validate_symmetries()

    def _validate_symmetries(self):
        for (p, q, s), arr in self.components.items():
            for (xs, hs), value in arr.items():
                for t in range(p - 1):
                    swapped = list(xs)
                    swapped[t], swapped[t + 1] = swapped[t + 1], swapped[t]
                    other = arr[(tuple(swapped), hs)]
                    if any(a + b != 0 for a, b in zip(value, other)):
                        raise ShapeError(
                            f"component {(p, q, s)} not antisymmetric at {xs}, {hs}"
                        )
                for t in range(q - 1):
                    swapped = list(hs)
                    swapped[t], swapped[t + 1] = swapped[t + 1], swapped[t]
                    other = arr[(xs, tuple(swapped))]
                    if value != other:
                        raise ShapeError(
                            f"component {(p, q, s)} not symmetric at {xs}, {hs}"
                        )

    def value(self, p: int, q: int, s: int, xs, hs):
        arr = self.components.get((p, q, s))
        if arr is None:
            dim = self.v.n0 if s == 0 else self.v.n1
            return [ZERO] * dim
        return arr[(tuple(xs), tuple(hs))]

    def is_zero(self) -> bool:
        return all(
            all(x == 0 for x in value)
            for arr in self.components.values()
            for value in arr.values()
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        keys = set(self.components) | set(other.components)
        for key in keys:
            p, q, s = key
            for xs in product(range(self.n0), repeat=p):
                for hs in product(range(self.n1), repeat=q):
                    if self.value(p, q, s, xs, hs) != other.value(p, q, s, xs, hs):
                        return False
        return (self.n0, self.n1, self.v) == (other.n0, other.n1, other.v)


def symmetrized_component(n0: int, n1: int, p: int, q: int, dim: int, sparse: dict) -> dict:
    """Expand values given on representative tuples to a full array.

    Keys of `sparse` are (xs, hs) with xs strictly increasing and hs
    nondecreasing; values propagate with the permutation sign over the
    x block and unchanged over the h block.
    """
    full = {}
    for xs in product(range(n0), repeat=p):
        for hs in product(range(n1), repeat=q):
            if len(set(xs)) < p:
                full[(xs, hs)] = [ZERO] * dim
                continue
            sorted_xs = tuple(sorted(xs))
            sign = _permutation_sign(xs)
            base = sparse.get((sorted_xs, tuple(sorted(hs))))
            if base is None:
                full[(xs, hs)] = [ZERO] * dim
            else:
                full[(xs, hs)] = [sign * rat(x) for x in base]
    return full


def _permutation_sign(xs) -> int:
    sign = 1
    xs = list(xs)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if xs[i] > xs[j]:
                sign = -sign
    return sign


def ce_differential(g: StrictLie2Algebra, rep: Rep2, f: Cochain) -> Cochain:
    """Degree-raising differential on cochains valued in a module.

    Four routes move a component (p, q, s):
      to (p-1, q+1, s): feed the image of a degree-(-1) argument under
        the structure differential into the last degree-0 slot, total
        sign (-1)^p;
      to (p, q, s+1): postcompose with the module differential, sign
        (-1)^{p+2q};
      to (p+1, q, s): the alternating action/bracket sum;
      to (p, q+1, s-1): act by rho1 on the value, sign (-1)^p.
    """
    if len(rep.rho0) != g.n0 or len(rep.rho1) != g.n1 or rep.v != f.v:
        raise ShapeError("representation does not match cochain target")
    n0, n1 = g.n0, g.n1
    d = g.complex.d
    out: dict[tuple, dict] = {}

    def accumulate(key, idx, vec):
        arr = out.setdefault(key, {})
        old = arr.get(idx)
        arr[idx] = vec if old is None else _vec_add(old, vec)

    for (p, q, s), arr in f.components.items():
        dim = f.v.n0 if s == 0 else f.v.n1
        sign_p = 1 if p % 2 == 0 else -1
        # route 1: structure differential into the last degree-0 slot
        if p >= 1:
            for xs in product(range(n0), repeat=p - 1):
                for hs in product(range(n1), repeat=q + 1):
                    total = [ZERO] * dim
                    for i in range(q + 1):
                        rest = hs[:i] + hs[i + 1 :]
                        for j in range(n0):
                            coeff = d[j, hs[i]]
                            if coeff != 0:
                                total = _vec_add(
                                    total,
                                    _vec_scale(coeff, arr[(xs + (j,), rest)]),
                                )
                    accumulate((p - 1, q + 1, s), (xs, hs), _vec_scale(sign_p, total))
        # route 2: module differential on the value
        if s == -1:
            sign = 1 if (p + 2 * q) % 2 == 0 else -1
            for idx, value in arr.items():
                accumulate((p, q, 0), idx, _vec_scale(sign, f.v.d.apply(value)))
        # route 3: alternating action and bracket insertions
        for xs in product(range(n0), repeat=p + 1):
            for hs in product(range(n1), repeat=q):
                total = [ZERO] * dim
                for i in range(p + 1):
                    rest = xs[:i] + xs[i + 1 :]
                    sign = 1 if i % 2 == 0 else -1
                    act = rep.rho0[xs[i]][0 if s == 0 else 1]
                    total = _vec_add(total, _vec_scale(sign, act.apply(arr[(rest, hs)])))
                for i in range(p + 1):
                    for j in range(i + 1, p + 1):
                        rest = tuple(x for t, x in enumerate(xs) if t not in (i, j))
                        sign = -1 if (i + j) % 2 == 1 else 1
                        for m in range(n0):
                            coeff = g.L00[xs[i], xs[j], m]
                            if coeff != 0:
                                total = _vec_add(
                                    total,
                                    _vec_scale(sign * coeff, arr[((m,) + rest, hs)]),
                                )
                for i in range(p + 1):
                    rest = xs[:i] + xs[i + 1 :]
                    sign = -1 if i % 2 == 0 else 1
                    for j in range(q):
                        for c in range(n1):
                            coeff = g.L01[xs[i], hs[j], c]
                            if coeff != 0:
                                replaced = hs[:j] + (c,) + hs[j + 1 :]
                                total = _vec_add(
                                    total,
                                    _vec_scale(sign * coeff, arr[(rest, replaced)]),
                                )
                accumulate((p + 1, q, s), (xs, hs), total)
        # route 4: rho1 action lowers the value degree
        if s == 0:
            for xs in product(range(n0), repeat=p):
                for hs in product(range(n1), repeat=q + 1):
                    total = [ZERO] * f.v.n1
                    for i in range(q + 1):
                        rest = hs[:i] + hs[i + 1 :]
                        total = _vec_add(
                            total,
                            _vec_scale(sign_p, rep.rho1[hs[i]].apply(arr[(xs, rest)])),
                        )
                    accumulate((p, q + 1, -1), (xs, hs), total)
    return Cochain(n0, n1, f.v, out)


class SymplecticForm:
    """Graded two-form: omega1 on degree 0 (skew), omega2 pairs the grades."""

    __slots__ = ("omega1", "omega2")

    def __init__(self, omega1: Mat, omega2: Mat):
        self.omega1 = omega1
        self.omega2 = omega2
        if omega1.nrows != omega1.ncols:
            raise ShapeError("omega1 must be square")
        if omega2.nrows != omega1.nrows:
            raise ShapeError("omega2 rows must match omega1")

    def total(self) -> Mat:
        """Block pairing on degree0 + degree(-1) coordinates."""
        n0 = self.omega1.nrows
        n1 = self.omega2.ncols
        return block_matrix(
            [
                [self.omega1, self.omega2],
                [(-self.omega2).transpose(), Mat.zeros(n1, n1)],
            ]
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymplecticForm)
            and self.omega1 == other.omega1
            and self.omega2 == other.omega2
        )


def symplectic_check(g: StrictLie2Algebra, w: SymplecticForm) -> Report:
    """Skewness, the three closedness identities, and nondegeneracy.

    Nondegeneracy means the total block pairing has full rank; the
    report's extra flags say which of {closed, nondegenerate} failed.
    """
    n0, n1 = g.n0, g.n1
    if w.omega1.shape() != (n0, n0) or w.omega2.shape() != (n0, n1):
        raise ShapeError("form shapes do not match algebra")
    report = Report()
    report.add_if_nonzero("omega1-skew", (), w.omega1 + w.omega1.transpose())
    for i in range(n0):
        for j in range(n0):
            for k in range(n0):
                res = (
                    _pair1(g, w, g.L00, i, j, k)
                    + _pair1(g, w, g.L00, j, k, i)
                    + _pair1(g, w, g.L00, k, i, j)
                )
                report.add_if_nonzero("closed-top", (i, j, k), res)
    for i in range(n0):
        for j in range(n0):
            for b in range(n1):
                # omega2([x,y],h) + omega2(y,[x,h]) - omega2(x,[y,h])
                res = sum(
                    (g.L00[i, j, m] * w.omega2[m, b] for m in range(n0)), ZERO
                )
                res += sum(
                    (g.L01[i, b, c] * w.omega2[j, c] for c in range(n1)), ZERO
                )
                res -= sum(
                    (g.L01[j, b, c] * w.omega2[i, c] for c in range(n1)), ZERO
                )
                report.add_if_nonzero("closed-mixed", (i, j, b), res)
    report.add_if_nonzero("closed-chain-top", (), w.omega1 @ g.complex.d)
    # omega2(dh, k) = omega2(h, dk) says d^T omega2 is antisymmetric
    paired = g.complex.d.transpose() @ w.omega2
    report.add_if_nonzero("closed-chain-mixed", (), paired + paired.transpose())
    closed = report.ok
    deficit = (n0 + n1) - rank(w.total())
    if deficit:
        report.add("nondegenerate", (), deficit)
    report.extra["closed"] = closed
    report.extra["nondegenerate"] = deficit == 0
    return report


def _pair1(g, w, t, i, j, k):
    """omega1([e_i, e_j], e_k)."""
    return sum((t[i, j, m] * w.omega1[m, k] for m in range(g.n0)), ZERO)


def prelie_from_symplectic(g: StrictLie2Algebra, w: SymplecticForm):
    """Solve for the compatible products pinned by the total pairing.

    The product u*v is determined by pairing against every basis
    direction: omega(u*v, w) = (+/-) omega([u,w], v) with the sign
    (-1)^{|v||w|}.  Each unknown product vector yields one exact linear
    system; a degenerate system is reported with its grade pair rather
    than resolved arbitrarily.
    """
    from .prelie2 import StrictPreLie2Algebra, subadjacent, verify_prelie2

    base = symplectic_check(g, w)
    if not base.ok:
        raise InvalidStructureError("form is not symplectic", base)
    n0, n1 = g.n0, g.n1
    # x*y: pair against all of degree 0 and degree -1
    coeff_top = block_matrix([[w.omega1.transpose()], [w.omega2.transpose()]])
    M00 = Tensor3((n0, n0, n0))
    report = Report()
    for i in range(n0):
        for j in range(n0):
            rhs = []
            for l in range(n0):
                rhs.append(sum((g.L00[i, l, m] * w.omega1[m, j] for m in range(n0)), ZERO))
            for m in range(n1):
                rhs.append(
                    -sum((g.L01[i, m, c] * w.omega2[j, c] for c in range(n1)), ZERO)
                )
            status, x = solve_linear(coeff_top, rhs)
            if status != "unique":
                report.add(f"solve-{status}", (0, 0), 1)
                raise InvalidStructureError(
                    "product system on grade pair (0, 0) is not uniquely solvable", report
                )
            for k in range(n0):
                M00[i, j, k] = x[k]
    # x*a and a*x: pair against degree 0 only (lower pairings vanish)
    M01 = Tensor3((n0, n1, n1))
    M10 = Tensor3((n1, n0, n1))
    for i in range(n0):
        for b in range(n1):
            rhs = [
                -sum((g.L00[i, l, m] * w.omega2[m, b] for m in range(n0)), ZERO)
                for l in range(n0)
            ]
            status, x = solve_linear(w.omega2, rhs)
            if status != "unique":
                report.add(f"solve-{status}", (0, 1), 1)
                raise InvalidStructureError(
                    "product system on grade pair (0, 1) is not uniquely solvable", report
                )
            for c in range(n1):
                M01[i, b, c] = x[c]
    for b in range(n1):
        for i in range(n0):
            rhs = [
                -sum((g.L01[l, b, c] * w.omega2[i, c] for c in range(n1)), ZERO)
                for l in range(n0)
            ]
            status, x = solve_linear(w.omega2, rhs)
            if status != "unique":
                report.add(f"solve-{status}", (1, 0), 1)
                raise InvalidStructureError(
                    "product system on grade pair (1, 0) is not uniquely solvable", report
                )
            for c in range(n1):
                M10[b, i, c] = x[c]
    out = StrictPreLie2Algebra(g.complex, M00, M01, M10)
    out_report = verify_prelie2(out)
    if not out_report.ok:
        raise InvalidStructureError("induced products failed verification", out_report)
    back = subadjacent(out)
    if back != g:
        diff = Report()
        diff.add("subadjacent-round-trip", (), 1)
        raise InvalidStructureError("induced products do not recover the bracket", diff)
    return out


class GradedSubspace:
    """Spanning vectors per grade; independence is required per grade."""

    __slots__ = ("span0", "span1")

    def __init__(self, span0, span1):
        self.span0 = [[rat(x) for x in v] for v in span0]
        self.span1 = [[rat(x) for x in v] for v in span1]
        for vectors in (self.span0, self.span1):
            if vectors:
                m = Mat(vectors)
                if rank(m) != len(vectors):
                    raise ShapeError("spanning vectors are not independent")

    def dim0(self) -> int:
        return len(self.span0)

    def dim1(self) -> int:
        return len(self.span1)


def _in_span(vectors, candidate) -> bool:
    if all(x == 0 for x in candidate):
        return True
    if not vectors:
        return False
    m = Mat(vectors)
    return rank(m) == rank(Mat(vectors + [candidate]))


def lagrangian_check(g: StrictLie2Algebra, w: SymplecticForm, h: GradedSubspace) -> Report:
    """Subalgebra closure, isotropy, and the self-orthogonality dimension.

    Membership failures carry residual 1 (a rank jump has no natural
    rational residual).
    """
    n0, n1 = g.n0, g.n1
    for v in h.span0:
        if len(v) != n0:
            raise ShapeError("degree-0 span length mismatch")
    for v in h.span1:
        if len(v) != n1:
            raise ShapeError("degree-(-1) span length mismatch")
    report = Report()
    for r, u in enumerate(h.span0):
        for s, v in enumerate(h.span0):
            if not _in_span(h.span0, g.bracket00(u, v)):
                report.add("closure-00", (r, s), 1)
    for r, u in enumerate(h.span0):
        for s, m in enumerate(h.span1):
            if not _in_span(h.span1, g.bracket01(u, m)):
                report.add("closure-01", (r, s), 1)
    for s, m in enumerate(h.span1):
        if not _in_span(h.span0, g.complex.d.apply(m)):
            report.add("closure-chain", (s,), 1)
    for r, u in enumerate(h.span0):
        for s, v in enumerate(h.span0):
            if s >= r:
                val = _form_value(w, u, None, v, None)
                report.add_if_nonzero("isotropic-00", (r, s), val)
        for s, m in enumerate(h.span1):
            val = _form_value(w, u, None, None, m)
            report.add_if_nonzero("isotropic-01", (r, s), val)
    total_dim = h.dim0() + h.dim1()
    span_rows = [list(u) + [ZERO] * n1 for u in h.span0] + [
        [ZERO] * n0 + list(m) for m in h.span1
    ]
    if span_rows:
        perp_dim = (n0 + n1) - rank(Mat(span_rows) @ w.total().transpose())
    else:
        perp_dim = n0 + n1
    report.add_if_nonzero("lagrangian-dimension", (), perp_dim - total_dim)
    return report


def _form_value(w, u0, u1, v0, v1):
    """omega evaluated on homogeneous arguments (either grade each side)."""
    if u0 is not None and v0 is not None:
        return sum(
            (u0[i] * w.omega1[i, j] * v0[j] for i in range(len(u0)) for j in range(len(v0))),
            ZERO,
        )
    if u0 is not None and v1 is not None:
        return sum(
            (u0[i] * w.omega2[i, b] * v1[b] for i in range(len(u0)) for b in range(len(v1))),
            ZERO,
        )
    raise ShapeError("unsupported grade pair for the form")


def parakahler_check(
    g: StrictLie2Algebra,
    w: SymplecticForm,
    h_plus: GradedSubspace,
    h_minus: GradedSubspace,
) -> Report:
    """Two Lagrangian halves that split each grade as a direct sum.

    The extra flag "special" marks the case omega1 = 0.
    """
    report = Report()
    base = symplectic_check(g, w)
    report.extend(base, prefix="form:")
    report.extend(lagrangian_check(g, w, h_plus), prefix="plus:")
    report.extend(lagrangian_check(g, w, h_minus), prefix="minus:")
    for grade, stacked, full in (
        (0, h_plus.span0 + h_minus.span0, g.n0),
        (1, h_plus.span1 + h_minus.span1, g.n1),
    ):
        r = rank(Mat(stacked)) if stacked else 0
        if not (r == len(stacked) == full):
            deficit = (full - r) if r != full else (len(stacked) - full)
            report.add(f"direct-sum-grade{grade}", (), deficit)
    report.extra["special"] = w.omega1.is_zero()
    return report
