"""Strict two-term pre-Lie algebras over the rationals.

A strict two-term pre-Lie algebra is a two-term complex A with a
degree-0 product stored as three tensors: M00 on pairs of degree-0
elements, M01 for degree-0 acting on degree-(-1) from the left, and
M10 for degree-(-1) times degree-0 (the degree-(-1) square is outside
the range and never stored).  The laws are compatibility of the
product with the differential and left-symmetry of the associator in
each admissible grade pattern.  The commutator of the product is a
strict two-term Lie algebra (the subadjacent algebra) and left
multiplication is a representation of it.  This module also covers
pre-Lie representations (a Lie-side action rho plus a right-side
chain map mu), their duals, the regular and coregular actions,
semidirect products, the collapse onto an ordinary pre-Lie algebra on
the sum of the grades, flat pre-Lie cohomology at desk scale, and the
products induced by operator solutions on a two-term Lie algebra.

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
    block_matrix,
    unit,
    vec_add as _vec_add,
    vec_scale as _vec_scale,
    vec_sub as _vec_sub,
)
from .graded import ChainMapPair, TwoTermComplex, dual_complex
from .lie2 import Rep2, StrictLie2Algebra, o_operator_check, verify_rep2


class StrictPreLie2Algebra:
    """Product tensors over a two-term complex.

    M00 has dims (n0, n0, n0): e_i . e_j = sum_k M00[i,j,k] e_k.
    M01 has dims (n0, n1, n1): e_i . f_b = sum_c M01[i,b,c] f_c.
    M10 has dims (n1, n0, n1): f_a . e_j = sum_c M10[a,j,c] f_c.
    The constructor checks shapes only; verify_prelie2 checks the laws.
    """

    __slots__ = ("complex", "M00", "M01", "M10")

    def __init__(self, complex: TwoTermComplex, M00: Tensor3, M01: Tensor3, M10: Tensor3):
        n0, n1 = complex.n0, complex.n1
        if M00.dims != (n0, n0, n0):
            raise ShapeError(f"M00 dims {M00.dims} expected {(n0, n0, n0)}")
        if M01.dims != (n0, n1, n1):
            raise ShapeError(f"M01 dims {M01.dims} expected {(n0, n1, n1)}")
        if M10.dims != (n1, n0, n1):
            raise ShapeError(f"M10 dims {M10.dims} expected {(n1, n0, n1)}")
        self.complex = complex
        self.M00 = M00
        self.M01 = M01
        self.M10 = M10

    @property
    def n0(self) -> int:
        return self.complex.n0

    @property
    def n1(self) -> int:
        return self.complex.n1

    @staticmethod
    def abelian(complex: TwoTermComplex) -> "StrictPreLie2Algebra":
        n0, n1 = complex.n0, complex.n1
        return StrictPreLie2Algebra(
            complex,
            Tensor3((n0, n0, n0)),
            Tensor3((n0, n1, n1)),
            Tensor3((n1, n0, n1)),
        )

    def prod00(self, u, v):
        return self.M00.apply(u, v)

    def prod01(self, u, w):
        return self.M01.apply(u, w)

    def prod10(self, w, u):
        return self.M10.apply(w, u)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StrictPreLie2Algebra)
            and self.complex == other.complex
            and self.M00 == other.M00
            and self.M01 == other.M01
            and self.M10 == other.M10
        )

    def __repr__(self) -> str:
        return f"StrictPreLie2Algebra(n0={self.n0}, n1={self.n1})"

    def to_json(self) -> dict:
        return {
            "complex": self.complex.to_json(),
            "M00": self.M00.to_entries(),
            "M01": self.M01.to_entries(),
            "M10": self.M10.to_entries(),
        }

    @staticmethod
    def from_json(obj: dict) -> "StrictPreLie2Algebra":
        try:
            complex = TwoTermComplex.from_json(obj["complex"])
            m00, m01, m10 = obj["M00"], obj["M01"], obj["M10"]
        except (KeyError, TypeError):
            raise ShapeError(f"malformed pre-Lie algebra object: {sorted(obj) if isinstance(obj, dict) else obj!r}")
        n0, n1 = complex.n0, complex.n1
        return StrictPreLie2Algebra(
            complex,
            Tensor3.from_entries((n0, n0, n0), m00),
            Tensor3.from_entries((n0, n1, n1), m01),
            Tensor3.from_entries((n1, n0, n1), m10),
        )


def verify_prelie2(a: StrictPreLie2Algebra) -> Report:
    """Check the strictness laws on every basis tuple.

    Laws: the differential is a module map for both mixed products
    (d(x.b) = x.db and d(b.x) = (db).x), the two lowerings of a mixed
    pair agree ((da).b = a.(db)), and the associator is symmetric in
    its first two arguments for every grade pattern in range.
    """
    n0, n1 = a.n0, a.n1
    d = a.complex.d
    report = Report()
    for i in range(n0):
        for b in range(n1):
            lhs = d.apply([a.M01[i, b, c] for c in range(n1)])
            rhs = a.prod00(unit(n0, i), [d[j, b] for j in range(n0)])
            report.add_if_nonzero("product-chain-right", (i, b), _vec_sub(lhs, rhs))
    for b in range(n1):
        for j in range(n0):
            lhs = d.apply([a.M10[b, j, c] for c in range(n1)])
            rhs = a.prod00([d[i, b] for i in range(n0)], unit(n0, j))
            report.add_if_nonzero("product-chain-left", (b, j), _vec_sub(lhs, rhs))
    for b in range(n1):
        for c in range(n1):
            lhs = a.prod01([d[i, b] for i in range(n0)], unit(n1, c))
            rhs = a.prod10(unit(n1, b), [d[i, c] for i in range(n0)])
            report.add_if_nonzero("product-chain-balance", (b, c), _vec_sub(lhs, rhs))

    for i in range(n0):
        for j in range(n0):
            for k in range(n0):
                x, y, z = unit(n0, i), unit(n0, j), unit(n0, k)
                res = _vec_sub(
                    _vec_add(
                        _vec_sub(a.prod00(x, a.prod00(y, z)), a.prod00(a.prod00(x, y), z)),
                        a.prod00(a.prod00(y, x), z),
                    ),
                    a.prod00(y, a.prod00(x, z)),
                )
                report.add_if_nonzero("associator-symmetry-000", (i, j, k), res)
    for i in range(n0):
        for j in range(n0):
            for b in range(n1):
                x, y, w = unit(n0, i), unit(n0, j), unit(n1, b)
                res = _vec_sub(
                    _vec_add(
                        _vec_sub(a.prod01(x, a.prod01(y, w)), a.prod01(a.prod00(x, y), w)),
                        a.prod01(a.prod00(y, x), w),
                    ),
                    a.prod01(y, a.prod01(x, w)),
                )
                report.add_if_nonzero("associator-symmetry-001", (i, j, b), res)
    for b in range(n1):
        for j in range(n0):
            for k in range(n0):
                w, y, z = unit(n1, b), unit(n0, j), unit(n0, k)
                res = _vec_sub(
                    _vec_add(
                        _vec_sub(a.prod10(w, a.prod00(y, z)), a.prod10(a.prod10(w, y), z)),
                        a.prod10(a.prod01(y, w), z),
                    ),
                    a.prod01(y, a.prod10(w, z)),
                )
                report.add_if_nonzero("associator-symmetry-100", (b, j, k), res)
    return report


def _subadjacent_tensors(a: StrictPreLie2Algebra) -> tuple[Tensor3, Tensor3]:
    """Commutator tensors without any validity gate."""
    n0, n1 = a.n0, a.n1
    L00 = Tensor3((n0, n0, n0))
    for (i, j, k), val in a.M00.items():
        L00[i, j, k] = L00[i, j, k] + val
        L00[j, i, k] = L00[j, i, k] - val
    L01 = Tensor3((n0, n1, n1))
    for (i, b, c), val in a.M01.items():
        L01[i, b, c] = L01[i, b, c] + val
    for (b, i, c), val in a.M10.items():
        L01[i, b, c] = L01[i, b, c] - val
    return L00, L01


def subadjacent(a: StrictPreLie2Algebra) -> StrictLie2Algebra:
    """Commutator bracket [u,v] = u.v - v.u on both grade patterns."""
    base = verify_prelie2(a)
    if not base.ok:
        raise InvalidStructureError("input is not a strict pre-Lie algebra", base)
    L00, L01 = _subadjacent_tensors(a)
    return StrictLie2Algebra(a.complex, L00, L01)


def left_rep(a: StrictPreLie2Algebra) -> Rep2:
    """Left multiplication as an action of the subadjacent algebra."""
    rho0 = [(a.M00.left_matrix(i), a.M01.left_matrix(i)) for i in range(a.n0)]
    rho1 = [a.M10.left_matrix(b) for b in range(a.n1)]
    return Rep2(a.complex, rho0, rho1)


class PreLieRep2:
    """Representation data: a Lie-side action rho plus right maps mu.

    rho is Rep2 data for the subadjacent algebra.  mu0[i] is a pair of
    matrices (action on V0, action on V-1) for the i-th degree-0 basis
    element; mu1[b] maps V0 -> V-1 for the b-th degree-(-1) element.
    Verification lives in verify_prelie_rep2.
    """

    __slots__ = ("rho", "mu0", "mu1")

    def __init__(self, rho: Rep2, mu0, mu1):
        v = rho.v
        self.rho = rho
        self.mu0 = [(p[0], p[1]) for p in mu0]
        self.mu1 = list(mu1)
        for on0, on1 in self.mu0:
            if on0.shape() != (v.n0, v.n0) or on1.shape() != (v.n1, v.n1):
                raise ShapeError("mu0 component shapes do not match complex")
        for m in self.mu1:
            if m.shape() != (v.n1, v.n0):
                raise ShapeError("mu1 component shapes do not match complex")

    @property
    def v(self) -> TwoTermComplex:
        return self.rho.v

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PreLieRep2)
            and self.rho == other.rho
            and self.mu0 == other.mu0
            and self.mu1 == other.mu1
        )

    def __repr__(self) -> str:
        return f"PreLieRep2(v={self.v!r}, {len(self.mu0)} mu0, {len(self.mu1)} mu1)"

    def to_json(self) -> dict:
        return {
            "rho": self.rho.to_json(),
            "mu0": [
                {"on0": on0.to_lists(), "on1": on1.to_lists()}
                for on0, on1 in self.mu0
            ],
            "mu1": [m.to_lists() for m in self.mu1],
        }

    @staticmethod
    def from_json(obj: dict) -> "PreLieRep2":
        try:
            rho = Rep2.from_json(obj["rho"])
            mu0_raw, mu1_raw = obj["mu0"], obj["mu1"]
        except (KeyError, TypeError):
            raise ShapeError("malformed pre-Lie representation object")
        v = rho.v
        mu0 = []
        for item in mu0_raw:
            try:
                on0, on1 = item["on0"], item["on1"]
            except (KeyError, TypeError):
                raise ShapeError("malformed mu0 item")
            mu0.append((Mat.from_lists(on0, v.n0, v.n0), Mat.from_lists(on1, v.n1, v.n1)))
        mu1 = [Mat.from_lists(m, v.n1, v.n0) for m in mu1_raw]
        return PreLieRep2(rho, mu0, mu1)


def zero_prelie_rep(a: StrictPreLie2Algebra, v: TwoTermComplex) -> PreLieRep2:
    rho = Rep2(
        v,
        [(Mat.zeros(v.n0, v.n0), Mat.zeros(v.n1, v.n1)) for _ in range(a.n0)],
        [Mat.zeros(v.n1, v.n0) for _ in range(a.n1)],
    )
    mu0 = [(Mat.zeros(v.n0, v.n0), Mat.zeros(v.n1, v.n1)) for _ in range(a.n0)]
    mu1 = [Mat.zeros(v.n1, v.n0) for _ in range(a.n1)]
    return PreLieRep2(rho, mu0, mu1)


def verify_prelie_rep2(a: StrictPreLie2Algebra, rep: PreLieRep2) -> Report:
    """Validity of rho, the chain condition on mu, and the three
    operator identities coupling rho and mu."""
    if len(rep.rho.rho0) != a.n0 or len(rep.rho.rho1) != a.n1:
        raise ShapeError("rho component counts do not match algebra")
    if len(rep.mu0) != a.n0 or len(rep.mu1) != a.n1:
        raise ShapeError("mu component counts do not match algebra")
    L00, L01 = _subadjacent_tensors(a)
    sub = StrictLie2Algebra(a.complex, L00, L01)
    report = Report()
    report.extend(verify_rep2(sub, rep.rho), prefix="rho:")
    d = a.complex.d
    dv = rep.v.d
    for i in range(a.n0):
        on0, on1 = rep.mu0[i]
        report.add_if_nonzero("mu-chain-commute", (i,), on0 @ dv - dv @ on1)
    for b in range(a.n1):
        acc0 = Mat.zeros(rep.v.n0, rep.v.n0)
        acc1 = Mat.zeros(rep.v.n1, rep.v.n1)
        for k in range(a.n0):
            if d[k, b] != 0:
                acc0 = acc0 + rep.mu0[k][0].scale(d[k, b])
                acc1 = acc1 + rep.mu0[k][1].scale(d[k, b])
        report.add_if_nonzero("mu-chain-mu1-top", (b,), acc0 - dv @ rep.mu1[b])
        report.add_if_nonzero("mu-chain-mu1-bottom", (b,), acc1 - rep.mu1[b] @ dv)
    # mu0(x.y) + mu0(y)rho0(x) - rho0(x)mu0(y) - mu0(y)mu0(x) = 0
    for i in range(a.n0):
        for j in range(a.n0):
            for grade in (0, 1):
                dim = rep.v.n0 if grade == 0 else rep.v.n1
                acc = Mat.zeros(dim, dim)
                for k in range(a.n0):
                    if a.M00[i, j, k] != 0:
                        acc = acc + rep.mu0[k][grade].scale(a.M00[i, j, k])
                res = (
                    acc
                    + rep.mu0[j][grade] @ rep.rho.rho0[i][grade]
                    - rep.rho.rho0[i][grade] @ rep.mu0[j][grade]
                    - rep.mu0[j][grade] @ rep.mu0[i][grade]
                )
                report.add_if_nonzero("prelie-rep-1", (i, j, grade), res)
    # mu1(x.b) - rho0(x)mu1(b) + mu1(b)rho0(x) - mu1(b)mu0(x) = 0
    for i in range(a.n0):
        for b in range(a.n1):
            acc = Mat.zeros(rep.v.n1, rep.v.n0)
            for c in range(a.n1):
                if a.M01[i, b, c] != 0:
                    acc = acc + rep.mu1[c].scale(a.M01[i, b, c])
            res = (
                acc
                - rep.rho.rho0[i][1] @ rep.mu1[b]
                + rep.mu1[b] @ rep.rho.rho0[i][0]
                - rep.mu1[b] @ rep.mu0[i][0]
            )
            report.add_if_nonzero("prelie-rep-2", (i, b), res)
    # mu1(b.x) - rho1(b)mu0(x) + mu0(x)rho1(b) - mu0(x)mu1(b) = 0
    for b in range(a.n1):
        for i in range(a.n0):
            acc = Mat.zeros(rep.v.n1, rep.v.n0)
            for c in range(a.n1):
                if a.M10[b, i, c] != 0:
                    acc = acc + rep.mu1[c].scale(a.M10[b, i, c])
            res = (
                acc
                - rep.rho.rho1[b] @ rep.mu0[i][0]
                + rep.mu0[i][1] @ rep.rho.rho1[b]
                - rep.mu0[i][1] @ rep.mu1[b]
            )
            report.add_if_nonzero("prelie-rep-3", (b, i), res)
    return report


def rep_to_lie_rep(a: StrictPreLie2Algebra, rep: PreLieRep2) -> Rep2:
    """Componentwise difference rho - mu acts for the subadjacent algebra."""
    base = verify_prelie_rep2(a, rep)
    if not base.ok:
        raise InvalidStructureError("input is not a pre-Lie representation", base)
    rho0 = [
        (r[0] - m[0], r[1] - m[1])
        for r, m in zip(rep.rho.rho0, rep.mu0)
    ]
    rho1 = [r - m for r, m in zip(rep.rho.rho1, rep.mu1)]
    return Rep2(rep.v, rho0, rho1)


def dual_prelie_rep(a: StrictPreLie2Algebra, rep: PreLieRep2) -> PreLieRep2:
    """Contragredient data on the dual complex.

    The Lie-side action dualizes the difference rho - mu; the right
    maps dualize to plain transposes (two negations cancel).
    """
    v_dual = dual_complex(rep.v)
    rho0 = [
        ((-(r[1] - m[1])).transpose(), (-(r[0] - m[0])).transpose())
        for r, m in zip(rep.rho.rho0, rep.mu0)
    ]
    rho1 = [(-(r - m)).transpose() for r, m in zip(rep.rho.rho1, rep.mu1)]
    mu0 = [(m[1].transpose(), m[0].transpose()) for m in rep.mu0]
    mu1 = [m.transpose() for m in rep.mu1]
    return PreLieRep2(Rep2(v_dual, rho0, rho1), mu0, mu1)


def regular_rep(a: StrictPreLie2Algebra) -> PreLieRep2:
    """Left multiplications as rho, right multiplications as mu."""
    mu0 = [(a.M00.right_matrix(j), a.M10.right_matrix(j)) for j in range(a.n0)]
    mu1 = [a.M01.right_matrix(b) for b in range(a.n1)]
    return PreLieRep2(left_rep(a), mu0, mu1)


def coregular_rep(a: StrictPreLie2Algebra) -> PreLieRep2:
    """Transposed adjoint action paired with transposed right maps."""
    L00, L01 = _subadjacent_tensors(a)
    rho0 = [
        ((-L01.left_matrix(i)).transpose(), (-L00.left_matrix(i)).transpose())
        for i in range(a.n0)
    ]
    rho1 = []
    for b in range(a.n1):
        m = Mat.zeros(a.n0, a.n1)
        for i in range(a.n0):
            for c in range(a.n1):
                if L01[i, b, c] != 0:
                    m[i, c] = L01[i, b, c]
        rho1.append(m)
    mu0 = [
        (a.M10.right_matrix(j).transpose(), a.M00.right_matrix(j).transpose())
        for j in range(a.n0)
    ]
    mu1 = [a.M01.right_matrix(b).transpose() for b in range(a.n1)]
    return PreLieRep2(Rep2(dual_complex(a.complex), rho0, rho1), mu0, mu1)


def semidirect_prelie2(a: StrictPreLie2Algebra, rep: PreLieRep2) -> StrictPreLie2Algebra:
    """Semidirect product: rho acts from the left, mu from the right.

    (x+u)*(y+v) = x.y + rho0(x)v + mu0(y)u,
    (x+u)*(b+m) = x.b + rho0(x)m + mu1(b)u,
    (b+m)*(y+v) = b.y + rho1(b)v + mu0(y)m.
    Fails fast if the representation or the output is invalid.
    """
    rep_report = verify_prelie_rep2(a, rep)
    if not rep_report.ok:
        raise InvalidStructureError("semidirect factor is not a representation", rep_report)
    n0, n1 = a.n0, a.n1
    m0, m1 = rep.v.n0, rep.v.n1
    total = TwoTermComplex(
        n0 + m0,
        n1 + m1,
        block_matrix(
            [
                [a.complex.d, Mat.zeros(n0, m1)],
                [Mat.zeros(m0, n1), rep.v.d],
            ]
        ),
    )
    M00 = Tensor3((n0 + m0, n0 + m0, n0 + m0))
    for (i, j, k), val in a.M00.items():
        M00[i, j, k] = val
    for i in range(n0):
        on0 = rep.rho.rho0[i][0]
        for p in range(m0):
            for q in range(m0):
                if on0[q, p] != 0:
                    M00[i, n0 + p, n0 + q] = on0[q, p]
    for j in range(n0):
        on0 = rep.mu0[j][0]
        for p in range(m0):
            for q in range(m0):
                if on0[q, p] != 0:
                    M00[n0 + p, j, n0 + q] = on0[q, p]
    M01 = Tensor3((n0 + m0, n1 + m1, n1 + m1))
    for (i, b, c), val in a.M01.items():
        M01[i, b, c] = val
    for i in range(n0):
        on1 = rep.rho.rho0[i][1]
        for s in range(m1):
            for t in range(m1):
                if on1[t, s] != 0:
                    M01[i, n1 + s, n1 + t] = on1[t, s]
    for b in range(n1):
        m = rep.mu1[b]
        for p in range(m0):
            for t in range(m1):
                if m[t, p] != 0:
                    M01[n0 + p, b, n1 + t] = m[t, p]
    M10 = Tensor3((n1 + m1, n0 + m0, n1 + m1))
    for (b, j, c), val in a.M10.items():
        M10[b, j, c] = val
    for b in range(n1):
        r = rep.rho.rho1[b]
        for p in range(m0):
            for t in range(m1):
                if r[t, p] != 0:
                    M10[b, n0 + p, n1 + t] = r[t, p]
    for j in range(n0):
        on1 = rep.mu0[j][1]
        for s in range(m1):
            for t in range(m1):
                if on1[t, s] != 0:
                    M10[n1 + s, j, n1 + t] = on1[t, s]
    out = StrictPreLie2Algebra(total, M00, M01, M10)
    out_report = verify_prelie2(out)
    if not out_report.ok:
        raise InvalidStructureError("semidirect product failed verification", out_report)
    return out


class PreLieAlgebra:
    """Ungraded pre-Lie algebra: e_i . e_j = sum_k M[i,j,k] e_k."""

    __slots__ = ("n", "M")

    def __init__(self, n: int, M: Tensor3):
        if M.dims != (n, n, n):
            raise ShapeError(f"M dims {M.dims} expected {(n, n, n)}")
        self.n = n
        self.M = M

    def prod(self, u, v):
        return self.M.apply(u, v)

    def __eq__(self, other) -> bool:
        return isinstance(other, PreLieAlgebra) and self.n == other.n and self.M == other.M

    def __repr__(self) -> str:
        return f"PreLieAlgebra(n={self.n})"

    def to_json(self) -> dict:
        return {"n": self.n, "M": self.M.to_entries()}

    @staticmethod
    def from_json(obj: dict) -> "PreLieAlgebra":
        try:
            n = obj["n"]
            entries = obj["M"]
        except (KeyError, TypeError):
            raise ShapeError("malformed pre-Lie algebra object")
        if not isinstance(n, int) or n < 0:
            raise ShapeError(f"bad dimension: {n!r}")
        return PreLieAlgebra(n, Tensor3.from_entries((n, n, n), entries))


def verify_prelie(p: PreLieAlgebra) -> Report:
    """Left-symmetry of the associator on every basis triple."""
    n = p.n
    report = Report()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x, y, z = unit(n, i), unit(n, j), unit(n, k)
                res = _vec_sub(
                    _vec_add(
                        _vec_sub(p.prod(x, p.prod(y, z)), p.prod(p.prod(x, y), z)),
                        p.prod(p.prod(y, x), z),
                    ),
                    p.prod(y, p.prod(x, z)),
                )
                report.add_if_nonzero("left-symmetry", (i, j, k), res)
    return report


def collapse(a: StrictPreLie2Algebra) -> PreLieAlgebra:
    """Forget the grading: one product on the sum of the grades.

    (x+b)*(y+c) = x.y + x.c + b.y; there is no product of two
    degree-(-1) elements.  Degree-(-1) basis vectors follow degree-0
    ones in the combined ordering.
    """
    base = verify_prelie2(a)
    if not base.ok:
        raise InvalidStructureError("input is not a strict pre-Lie algebra", base)
    n0, n1 = a.n0, a.n1
    n = n0 + n1
    M = Tensor3((n, n, n))
    for (i, j, k), val in a.M00.items():
        M[i, j, k] = val
    for (i, b, c), val in a.M01.items():
        M[i, n0 + b, n0 + c] = val
    for (b, j, c), val in a.M10.items():
        M[n0 + b, j, n0 + c] = val
    out = PreLieAlgebra(n, M)
    out_report = verify_prelie(out)
    if not out_report.ok:
        raise InvalidStructureError("collapse failed verification", out_report)
    return out


def prelie_rep_check(p: PreLieAlgebra, rho, mu) -> Report:
    """Flat representation laws: rho is a commutator action and the
    mixed identity rho(x)mu(y) - mu(y)rho(x) = mu(x.y) - mu(y)mu(x)."""
    n = p.n
    rho = list(rho)
    mu = list(mu)
    if len(rho) != n or len(mu) != n:
        raise ShapeError("representation component counts do not match algebra")
    if n == 0:
        return Report()
    m = rho[0].shape()[0]
    for mat in rho + mu:
        if mat.shape() != (m, m):
            raise ShapeError("representation matrices must share a square shape")
    report = Report()
    for i in range(n):
        for j in range(n):
            acc = Mat.zeros(m, m)
            for k in range(n):
                coef = p.M[i, j, k] - p.M[j, i, k]
                if coef != 0:
                    acc = acc + rho[k].scale(coef)
            report.add_if_nonzero(
                "rho-bracket", (i, j), acc - (rho[i] @ rho[j] - rho[j] @ rho[i])
            )
    for i in range(n):
        for j in range(n):
            acc = Mat.zeros(m, m)
            for k in range(n):
                if p.M[i, j, k] != 0:
                    acc = acc + mu[k].scale(p.M[i, j, k])
            res = rho[i] @ mu[j] - mu[j] @ rho[i] - acc + mu[j] @ mu[i]
            report.add_if_nonzero("rho-mu-compat", (i, j), res)
    return report


class PreLieCochain:
    """Dense multilinear cochain on a flat pre-Lie algebra.

    An arity-k cochain is alternating in its first k-1 slots and
    unconstrained in the last; values is a dict over all basis index
    tuples with vector values in the module.
    """

    __slots__ = ("arity", "n", "dim", "values")

    def __init__(self, arity: int, n: int, dim: int, values: dict):
        if arity < 1:
            raise ShapeError("cochain arity must be at least 1")
        self.arity = arity
        self.n = n
        self.dim = dim
        self.values = {}
        for key in product(range(n), repeat=arity):
            vec = values.get(key)
            if vec is None:
                self.values[key] = [ZERO] * dim
            else:
                if len(vec) != dim:
                    raise ShapeError("cochain value has wrong dimension")
                self.values[key] = [Fraction(x) for x in vec]
        for key in values:
            if len(key) != arity or any(not (0 <= i < n) for i in key):
                raise ShapeError(f"cochain key {key} out of range for arity {arity}")
        self._validate_alternating()

    def _validate_alternating(self):
        for key, vec in self.values.items():
            for pos in range(self.arity - 2):
                swapped = list(key)
                swapped[pos], swapped[pos + 1] = swapped[pos + 1], swapped[pos]
                other = self.values[tuple(swapped)]
                if any(x + y != 0 for x, y in zip(vec, other)):
                    raise ShapeError(
                        f"cochain is not alternating in leading slots at {key}"
                    )

    def value(self, key):
        return self.values[tuple(key)]

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in vec) for vec in self.values.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PreLieCochain)
            and self.arity == other.arity
            and self.n == other.n
            and self.dim == other.dim
            and self.values == other.values
        )


def prelie_delta(p: PreLieAlgebra, rho, mu, phi: PreLieCochain) -> PreLieCochain:
    """Coboundary of a flat pre-Lie cochain with module coefficients.

    For an arity-k input and arguments (x_1 .. x_{k+1}):
      sum_i (-1)^{i+1} rho(x_i) phi(.. x_i dropped .., x_{k+1})
      + sum_i (-1)^{i+1} mu(x_{k+1}) phi(.. x_i dropped .. x_k, x_i)
      - sum_i (-1)^{i+1} phi(.. x_i dropped .. x_k, x_i . x_{k+1})
      + sum_{i<j<=k} (-1)^{i+j} phi([x_i,x_j], .. both dropped .., x_{k+1})
    with i, j running 1-based over the first k slots.
    """
    n = p.n
    rho = list(rho)
    mu = list(mu)
    if len(rho) != n or len(mu) != n:
        raise ShapeError("representation component counts do not match algebra")
    k = phi.arity
    if phi.n != n:
        raise ShapeError("cochain base dimension does not match algebra")
    dim = phi.dim
    for mat in rho + mu:
        if mat.shape() != (dim, dim):
            raise ShapeError("representation matrices do not match cochain values")

    def phi_last_product(front, left_idx, right_idx):
        # phi(front..., e_left . e_right) expanded by linearity
        out = [ZERO] * dim
        for t in range(n):
            coef = p.M[left_idx, right_idx, t]
            if coef != 0:
                out = _vec_add(out, _vec_scale(coef, phi.value(front + (t,))))
        return out

    def phi_front_bracket(i_idx, j_idx, rest):
        # phi([e_i, e_j], rest...) expanded by linearity
        out = [ZERO] * dim
        for t in range(n):
            coef = p.M[i_idx, j_idx, t] - p.M[j_idx, i_idx, t]
            if coef != 0:
                out = _vec_add(out, _vec_scale(coef, phi.value((t,) + rest)))
        return out

    values = {}
    for key in product(range(n), repeat=k + 1):
        total = [ZERO] * dim
        last = key[k]
        for i in range(k):
            sign = 1 if i % 2 == 0 else -1
            dropped = key[:i] + key[i + 1 :]
            term = rho[key[i]].apply(phi.value(dropped))
            total = _vec_add(total, _vec_scale(sign, term))
            reordered = key[:i] + key[i + 1 : k]
            term = mu[last].apply(phi.value(reordered + (key[i],)))
            total = _vec_add(total, _vec_scale(sign, term))
            term = phi_last_product(reordered, key[i], last)
            total = _vec_sub(total, _vec_scale(sign, term))
        for i in range(k):
            for j in range(i + 1, k):
                sign = 1 if (i + j) % 2 == 0 else -1
                rest = tuple(key[t] for t in range(k + 1) if t != i and t != j)
                term = phi_front_bracket(key[i], key[j], rest)
                total = _vec_add(total, _vec_scale(sign, term))
        values[key] = total
    return PreLieCochain(k + 1, n, dim, values)


def prelie_from_o_operator(
    g: StrictLie2Algebra, rep: Rep2, t: ChainMapPair
) -> StrictPreLie2Algebra:
    """Products on the module induced by an operator solution.

    u.v = rho0(T0 u)v, u.m = rho0(T0 u)m, m.u = rho1(T1 m)u.
    Requires the operator equations to hold and verifies the output.
    """
    check = o_operator_check(g, rep, t)
    if not check.ok:
        raise InvalidStructureError("operator equations failed", check)
    m0, m1 = rep.v.n0, rep.v.n1
    M00 = Tensor3((m0, m0, m0))
    M01 = Tensor3((m0, m1, m1))
    M10 = Tensor3((m1, m0, m1))
    for p in range(m0):
        on0 = Mat.zeros(m0, m0)
        on1 = Mat.zeros(m1, m1)
        for i in range(g.n0):
            if t.f0[i, p] != 0:
                on0 = on0 + rep.rho0[i][0].scale(t.f0[i, p])
                on1 = on1 + rep.rho0[i][1].scale(t.f0[i, p])
        for q in range(m0):
            for s in range(m0):
                if on0[s, q] != 0:
                    M00[p, q, s] = on0[s, q]
        for s in range(m1):
            for c in range(m1):
                if on1[c, s] != 0:
                    M01[p, s, c] = on1[c, s]
    for s in range(m1):
        low = Mat.zeros(m1, m0)
        for b in range(g.n1):
            if t.f1[b, s] != 0:
                low = low + rep.rho1[b].scale(t.f1[b, s])
        for q in range(m0):
            for c in range(m1):
                if low[c, q] != 0:
                    M10[s, q, c] = low[c, q]
    out = StrictPreLie2Algebra(rep.v, M00, M01, M10)
    out_report = verify_prelie2(out)
    if not out_report.ok:
        raise InvalidStructureError("induced products failed verification", out_report)
    return out
