"""Strict two-term associative algebras over the rationals.

A strict associative 2-algebra carries the same tensor layout as the
pre-Lie case (A00 on degree-0 pairs, A01 and A10 for the mixed
products) but its laws are the four associativity identities in the
admissible grade patterns, together with the same compatibility of
the product with the differential.  A commutative one additionally
has a symmetric product in both grade patterns.  The module also
covers weighted Rota-Baxter operators and derivations, given as pairs
of square matrices commuting with the differential, and the pre-Lie
products each of them induces: a weight-0 operator twists the product
into commutators against the operator image, weight 1 subtracts the
plain product as well, and a derivation on a commutative algebra
yields x.y = x.D(y) + c x.y for a fixed rational constant c.

Everything numeric is a Fraction; a law passes iff its residual is
exactly zero.
"""

from __future__ import annotations

from .exact_core import (
    Mat,
    Report,
    ShapeError,
    InvalidStructureError,
    Tensor3,
    rat,
    unit,
    vec_add as _vec_add,
    vec_scale as _vec_scale,
    vec_sub as _vec_sub,
)
from .graded import TwoTermComplex
from .prelie2 import StrictPreLie2Algebra, verify_prelie2


class StrictAssoc2Algebra:
    """Product tensors over a two-term complex.

    A00 has dims (n0, n0, n0): e_i . e_j = sum_k A00[i,j,k] e_k.
    A01 has dims (n0, n1, n1): e_i . f_b = sum_c A01[i,b,c] f_c.
    A10 has dims (n1, n0, n1): f_a . e_j = sum_c A10[a,j,c] f_c.
    The constructor checks shapes only; verify_assoc2 checks the laws.
    """

    __slots__ = ("complex", "A00", "A01", "A10")

    def __init__(self, complex: TwoTermComplex, A00: Tensor3, A01: Tensor3, A10: Tensor3):
        n0, n1 = complex.n0, complex.n1
        if A00.dims != (n0, n0, n0):
            raise ShapeError(f"A00 dims {A00.dims} expected {(n0, n0, n0)}")
        if A01.dims != (n0, n1, n1):
            raise ShapeError(f"A01 dims {A01.dims} expected {(n0, n1, n1)}")
        if A10.dims != (n1, n0, n1):
            raise ShapeError(f"A10 dims {A10.dims} expected {(n1, n0, n1)}")
        self.complex = complex
        self.A00 = A00
        self.A01 = A01
        self.A10 = A10

    @property
    def n0(self) -> int:
        return self.complex.n0

    @property
    def n1(self) -> int:
        return self.complex.n1

    @staticmethod
    def abelian(complex: TwoTermComplex) -> "StrictAssoc2Algebra":
        n0, n1 = complex.n0, complex.n1
        return StrictAssoc2Algebra(
            complex,
            Tensor3((n0, n0, n0)),
            Tensor3((n0, n1, n1)),
            Tensor3((n1, n0, n1)),
        )

    def prod00(self, u, v):
        return self.A00.apply(u, v)

    def prod01(self, u, w):
        return self.A01.apply(u, w)

    def prod10(self, w, u):
        return self.A10.apply(w, u)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StrictAssoc2Algebra)
            and self.complex == other.complex
            and self.A00 == other.A00
            and self.A01 == other.A01
            and self.A10 == other.A10
        )

    def __repr__(self) -> str:
        return f"StrictAssoc2Algebra(n0={self.n0}, n1={self.n1})"

    def to_json(self) -> dict:
        return {
            "complex": self.complex.to_json(),
            "A00": self.A00.to_entries(),
            "A01": self.A01.to_entries(),
            "A10": self.A10.to_entries(),
        }

    @staticmethod
    def from_json(obj: dict) -> "StrictAssoc2Algebra":
        try:
            complex = TwoTermComplex.from_json(obj["complex"])
            a00, a01, a10 = obj["A00"], obj["A01"], obj["A10"]
        except (KeyError, TypeError):
            raise ShapeError(f"malformed associative algebra object: {sorted(obj) if isinstance(obj, dict) else obj!r}")
        n0, n1 = complex.n0, complex.n1
        return StrictAssoc2Algebra(
            complex,
            Tensor3.from_entries((n0, n0, n0), a00),
            Tensor3.from_entries((n0, n1, n1), a01),
            Tensor3.from_entries((n1, n0, n1), a10),
        )


class OperatorPair:
    """A degree-0 operator given per grade: P0 on degree 0, P1 on degree -1.

    The chain condition P0 d = d P1 is checked by the operations that
    consume the pair, since the pair does not carry the complex.
    """

    __slots__ = ("P0", "P1")

    def __init__(self, P0: Mat, P1: Mat):
        if P0.nrows != P0.ncols or P1.nrows != P1.ncols:
            raise ShapeError("operator components must be square")
        self.P0 = P0
        self.P1 = P1

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorPair) and self.P0 == other.P0 and self.P1 == other.P1

    def __repr__(self) -> str:
        return f"OperatorPair({self.P0.nrows}, {self.P1.nrows})"

    def to_json(self) -> dict:
        return {"P0": self.P0.to_lists(), "P1": self.P1.to_lists()}

    @staticmethod
    def from_json(obj: dict, n0: int, n1: int) -> "OperatorPair":
        try:
            p0, p1 = obj["P0"], obj["P1"]
        except (KeyError, TypeError):
            raise ShapeError("malformed operator pair object")
        return OperatorPair(Mat.from_lists(p0, n0, n0), Mat.from_lists(p1, n1, n1))


def _check_operator(a: StrictAssoc2Algebra, op: OperatorPair, law: str) -> None:
    if op.P0.shape() != (a.n0, a.n0) or op.P1.shape() != (a.n1, a.n1):
        raise ShapeError("operator shapes do not match algebra")
    residual = op.P0 @ a.complex.d - a.complex.d @ op.P1
    if not residual.is_zero():
        report = Report()
        report.add_if_nonzero(law, (), residual)
        raise InvalidStructureError("operator is not a chain map", report)


def verify_assoc2(a: StrictAssoc2Algebra) -> Report:
    """Check the strictness laws on every basis tuple.

    Laws: the differential is a module map for both mixed products
    (d(x.b) = x.db and d(b.x) = (db).x), the two lowerings of a mixed
    pair agree ((da).b = a.(db)), and the associator vanishes for
    every grade pattern in range.
    """
    n0, n1 = a.n0, a.n1
    d = a.complex.d
    report = Report()
    for i in range(n0):
        for b in range(n1):
            lhs = d.apply([a.A01[i, b, c] for c in range(n1)])
            rhs = a.prod00(unit(n0, i), [d[j, b] for j in range(n0)])
            report.add_if_nonzero("product-chain-right", (i, b), _vec_sub(lhs, rhs))
    for b in range(n1):
        for j in range(n0):
            lhs = d.apply([a.A10[b, j, c] for c in range(n1)])
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
                    a.prod00(x, a.prod00(y, z)), a.prod00(a.prod00(x, y), z)
                )
                report.add_if_nonzero("associativity-000", (i, j, k), res)
    for i in range(n0):
        for j in range(n0):
            for b in range(n1):
                x, y, w = unit(n0, i), unit(n0, j), unit(n1, b)
                res = _vec_sub(
                    a.prod01(x, a.prod01(y, w)), a.prod01(a.prod00(x, y), w)
                )
                report.add_if_nonzero("associativity-001", (i, j, b), res)
    for i in range(n0):
        for b in range(n1):
            for j in range(n0):
                x, w, y = unit(n0, i), unit(n1, b), unit(n0, j)
                res = _vec_sub(
                    a.prod01(x, a.prod10(w, y)), a.prod10(a.prod01(x, w), y)
                )
                report.add_if_nonzero("associativity-010", (i, b, j), res)
    for b in range(n1):
        for j in range(n0):
            for k in range(n0):
                w, y, z = unit(n1, b), unit(n0, j), unit(n0, k)
                res = _vec_sub(
                    a.prod10(w, a.prod00(y, z)), a.prod10(a.prod10(w, y), z)
                )
                report.add_if_nonzero("associativity-100", (b, j, k), res)
    return report


def verify_commutative(a: StrictAssoc2Algebra) -> Report:
    """Associativity laws plus symmetry of both grade patterns."""
    report = verify_assoc2(a)
    for i in range(a.n0):
        for j in range(i + 1, a.n0):
            res = [a.A00[i, j, k] - a.A00[j, i, k] for k in range(a.n0)]
            report.add_if_nonzero("commutative-00", (i, j), res)
    for i in range(a.n0):
        for b in range(a.n1):
            res = [a.A01[i, b, c] - a.A10[b, i, c] for c in range(a.n1)]
            report.add_if_nonzero("commutative-01", (i, b), res)
    return report


def rb_weight_check(a: StrictAssoc2Algebra, r: OperatorPair, weight) -> Report:
    """Weighted operator identities over all basis pairs.

    With R = (R0, R1) and weight w, each grade pattern must satisfy
    R(R(u).v + u.R(v) - w u.v) = R(u).R(v); the operator must commute
    with the differential (raised as an error, not reported).
    """
    _check_operator(a, r, "rb-chain")
    w = rat(weight)
    n0, n1 = a.n0, a.n1
    report = Report()
    for i in range(n0):
        for j in range(n0):
            x, y = unit(n0, i), unit(n0, j)
            rx, ry = r.P0.apply(x), r.P0.apply(y)
            inner = _vec_sub(
                _vec_add(a.prod00(rx, y), a.prod00(x, ry)),
                _vec_scale(w, a.prod00(x, y)),
            )
            res = _vec_sub(r.P0.apply(inner), a.prod00(rx, ry))
            report.add_if_nonzero("rb-weight-00", (i, j), res)
    for i in range(n0):
        for b in range(n1):
            x, m = unit(n0, i), unit(n1, b)
            rx, rm = r.P0.apply(x), r.P1.apply(m)
            inner = _vec_sub(
                _vec_add(a.prod01(rx, m), a.prod01(x, rm)),
                _vec_scale(w, a.prod01(x, m)),
            )
            res = _vec_sub(r.P1.apply(inner), a.prod01(rx, rm))
            report.add_if_nonzero("rb-weight-01", (i, b), res)
    for b in range(n1):
        for i in range(n0):
            m, x = unit(n1, b), unit(n0, i)
            rm, rx = r.P1.apply(m), r.P0.apply(x)
            inner = _vec_sub(
                _vec_add(a.prod10(rm, x), a.prod10(m, rx)),
                _vec_scale(w, a.prod10(m, x)),
            )
            res = _vec_sub(r.P1.apply(inner), a.prod10(rm, rx))
            report.add_if_nonzero("rb-weight-10", (b, i), res)
    return report


def _twisted_products(a: StrictAssoc2Algebra, r: OperatorPair, keep_plain: bool):
    """Commutator against the operator image, minus the plain product
    for the weight-1 case."""
    n0, n1 = a.n0, a.n1
    M00 = Tensor3((n0, n0, n0))
    M01 = Tensor3((n0, n1, n1))
    M10 = Tensor3((n1, n0, n1))
    for i in range(n0):
        rx = r.P0.apply(unit(n0, i))
        for j in range(n0):
            y = unit(n0, j)
            vec = _vec_sub(a.prod00(rx, y), a.prod00(y, rx))
            if not keep_plain:
                vec = _vec_sub(vec, a.prod00(unit(n0, i), y))
            for k in range(n0):
                if vec[k] != 0:
                    M00[i, j, k] = vec[k]
        for b in range(n1):
            m = unit(n1, b)
            vec = _vec_sub(a.prod01(rx, m), a.prod10(m, rx))
            if not keep_plain:
                vec = _vec_sub(vec, a.prod01(unit(n0, i), m))
            for c in range(n1):
                if vec[c] != 0:
                    M01[i, b, c] = vec[c]
    for b in range(n1):
        rm = r.P1.apply(unit(n1, b))
        for i in range(n0):
            x = unit(n0, i)
            vec = _vec_sub(a.prod10(rm, x), a.prod01(x, rm))
            if not keep_plain:
                vec = _vec_sub(vec, a.prod10(unit(n1, b), x))
            for c in range(n1):
                if vec[c] != 0:
                    M10[b, i, c] = vec[c]
    return M00, M01, M10


def _build_verified_prelie(complex, M00, M01, M10) -> StrictPreLie2Algebra:
    out = StrictPreLie2Algebra(complex, M00, M01, M10)
    out_report = verify_prelie2(out)
    if not out_report.ok:
        raise InvalidStructureError("induced products failed verification", out_report)
    return out


def prelie_from_rb0(a: StrictAssoc2Algebra, r: OperatorPair) -> StrictPreLie2Algebra:
    """Weight-0 twist: u.v = R(u).v - v.R(u) in every grade pattern."""
    check = rb_weight_check(a, r, 0)
    if not check.ok:
        raise InvalidStructureError("weight-0 operator identities failed", check)
    M00, M01, M10 = _twisted_products(a, r, keep_plain=True)
    return _build_verified_prelie(a.complex, M00, M01, M10)


def prelie_from_rb1(a: StrictAssoc2Algebra, r: OperatorPair) -> StrictPreLie2Algebra:
    """Weight-1 twist: u.v = R(u).v - v.R(u) - u.v in every grade pattern."""
    check = rb_weight_check(a, r, 1)
    if not check.ok:
        raise InvalidStructureError("weight-1 operator identities failed", check)
    M00, M01, M10 = _twisted_products(a, r, keep_plain=False)
    return _build_verified_prelie(a.complex, M00, M01, M10)


def _require_commutative(a: StrictAssoc2Algebra) -> None:
    base = verify_commutative(a)
    if not base.ok:
        raise InvalidStructureError("algebra is not commutative associative", base)


def derivation_check(a: StrictAssoc2Algebra, dop: OperatorPair) -> Report:
    """Leibniz residuals of a chain operator on a commutative algebra.

    D(u).v + u.D(v) - D(u.v) over the two grade patterns; requires a
    commutative associative input and a chain operator (raised as
    errors, not reported).
    """
    _require_commutative(a)
    _check_operator(a, dop, "derivation-chain")
    n0, n1 = a.n0, a.n1
    report = Report()
    for i in range(n0):
        for j in range(n0):
            x, y = unit(n0, i), unit(n0, j)
            dx, dy = dop.P0.apply(x), dop.P0.apply(y)
            res = _vec_sub(
                _vec_add(a.prod00(dx, y), a.prod00(x, dy)),
                dop.P0.apply(a.prod00(x, y)),
            )
            report.add_if_nonzero("leibniz-00", (i, j), res)
    for i in range(n0):
        for b in range(n1):
            x, m = unit(n0, i), unit(n1, b)
            dx, dm = dop.P0.apply(x), dop.P1.apply(m)
            res = _vec_sub(
                _vec_add(a.prod01(dx, m), a.prod01(x, dm)),
                dop.P1.apply(a.prod01(x, m)),
            )
            report.add_if_nonzero("leibniz-01", (i, b), res)
    return report


def prelie_from_derivation(a: StrictAssoc2Algebra, dop: OperatorPair, c) -> StrictPreLie2Algebra:
    """Derivation twist on a commutative algebra: u.v = u.D(v) + c u.v."""
    _require_commutative(a)
    _check_operator(a, dop, "derivation-chain")
    c = rat(c)
    n0, n1 = a.n0, a.n1
    M00 = Tensor3((n0, n0, n0))
    M01 = Tensor3((n0, n1, n1))
    M10 = Tensor3((n1, n0, n1))
    for i in range(n0):
        x = unit(n0, i)
        for j in range(n0):
            y = unit(n0, j)
            vec = _vec_add(
                a.prod00(x, dop.P0.apply(y)), _vec_scale(c, a.prod00(x, y))
            )
            for k in range(n0):
                if vec[k] != 0:
                    M00[i, j, k] = vec[k]
        for b in range(n1):
            m = unit(n1, b)
            vec = _vec_add(
                a.prod01(x, dop.P1.apply(m)), _vec_scale(c, a.prod01(x, m))
            )
            for cc in range(n1):
                if vec[cc] != 0:
                    M01[i, b, cc] = vec[cc]
    for b in range(n1):
        m = unit(n1, b)
        for i in range(n0):
            x = unit(n0, i)
            vec = _vec_add(
                a.prod10(m, dop.P0.apply(x)), _vec_scale(c, a.prod10(m, x))
            )
            for cc in range(n1):
                if vec[cc] != 0:
                    M10[b, i, cc] = vec[cc]
    return _build_verified_prelie(a.complex, M00, M01, M10)
