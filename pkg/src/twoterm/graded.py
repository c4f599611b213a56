"""Two-term complexes, duals, chain maps, and tensor squares.

A two-term complex concentrates a vector space in degrees 0 and -1 with
one differential d mapping the degree-(-1) piece into the degree-0
piece.  Internal grade labels are 0 and 1 for the degrees 0 and -1; no
formula changes under this relabeling, it only avoids negative indices.

Tensor products of two such complexes live in degrees 0, -1, -2 and use
the sign rule  d(v (x) w) = dv (x) w + (-1)^{|v|+1} v (x) dw.  The
module flag `DTENSOR_FLIP` switches the exponent to the other
consistent choice (-1)^{|v|} on all second-slot terms, for sensitivity
testing of downstream laws; it is exposed on the command line.
"""

from __future__ import annotations

from .exact_core import Mat, Report, ShapeError, parse_rat

# When True, second-slot differential terms use the sign (-1)^{|v|}
# instead of (-1)^{|v|+1}.  Mutated only via set_dtensor_flip.
DTENSOR_FLIP = False


def set_dtensor_flip(value: bool) -> None:
    global DTENSOR_FLIP
    DTENSOR_FLIP = bool(value)


def _second_slot_sign(first_degree: int) -> int:
    """Sign carried by v (x) dw when |v| = first_degree (0 or -1)."""
    exponent = first_degree + (0 if DTENSOR_FLIP else 1)
    return 1 if exponent % 2 == 0 else -1


class TwoTermComplex:
    """Spaces of dimension n0 (degree 0) and n1 (degree -1) with d: n0 x n1."""

    __slots__ = ("n0", "n1", "d")

    def __init__(self, n0: int, n1: int, d: Mat | None = None):
        if n0 < 0 or n1 < 0:
            raise ShapeError(f"negative dimensions ({n0}, {n1})")
        self.n0 = int(n0)
        self.n1 = int(n1)
        self.d = d if d is not None else Mat.zeros(n0, n1)
        if self.d.shape() != (self.n0, self.n1):
            raise ShapeError(
                f"differential shape {self.d.shape()} expected {(self.n0, self.n1)}"
            )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TwoTermComplex)
            and self.n0 == other.n0
            and self.n1 == other.n1
            and self.d == other.d
        )

    def __repr__(self) -> str:
        return f"TwoTermComplex(n0={self.n0}, n1={self.n1}, d={self.d.to_lists()})"

    def to_json(self) -> dict:
        return {"n0": self.n0, "n1": self.n1, "d": self.d.to_lists()}

    @staticmethod
    def from_json(obj: dict) -> "TwoTermComplex":
        try:
            n0, n1, d = obj["n0"], obj["n1"], obj["d"]
        except (KeyError, TypeError):
            raise ShapeError(f"malformed complex object: {obj!r}")
        if not isinstance(n0, int) or not isinstance(n1, int):
            raise ShapeError("complex dimensions must be integers")
        return TwoTermComplex(n0, n1, Mat.from_lists(d, n0, n1))


class GradedElement:
    """Coordinates of one element: v0 in degree 0, v1 in degree -1."""

    __slots__ = ("v0", "v1")

    def __init__(self, v0, v1):
        self.v0 = [parse_rat(x) if isinstance(x, str) else x for x in v0]
        self.v1 = [parse_rat(x) if isinstance(x, str) else x for x in v1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedElement)
            and self.v0 == other.v0
            and self.v1 == other.v1
        )

    def __repr__(self) -> str:
        return f"GradedElement({self.v0!r}, {self.v1!r})"


class ChainMapPair:
    """A pair of matrices (f0, f1) acting gradewise between two complexes."""

    __slots__ = ("f0", "f1")

    def __init__(self, f0: Mat, f1: Mat):
        self.f0 = f0
        self.f1 = f1

    def __eq__(self, other) -> bool:
        return isinstance(other, ChainMapPair) and self.f0 == other.f0 and self.f1 == other.f1

    def __repr__(self) -> str:
        return f"ChainMapPair({self.f0!r}, {self.f1!r})"


class ThreeTermComplex:
    """Degrees 0, -1, -2 (internal 0, 1, 2) with differentials d1, d2.

    d1 maps grade 1 to grade 0 (shape n0 x n1); d2 maps grade 2 to
    grade 1 (shape n1 x n2); their composite must vanish.
    """

    __slots__ = ("n0", "n1", "n2", "d1", "d2")

    def __init__(self, n0: int, n1: int, n2: int, d1: Mat, d2: Mat):
        self.n0, self.n1, self.n2 = int(n0), int(n1), int(n2)
        self.d1 = d1
        self.d2 = d2
        if d1.shape() != (self.n0, self.n1) or d2.shape() != (self.n1, self.n2):
            raise ShapeError("three-term differential shapes do not match dims")
        if not (d1 @ d2).is_zero():
            raise ShapeError("three-term differentials do not compose to zero")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ThreeTermComplex)
            and (self.n0, self.n1, self.n2) == (other.n0, other.n1, other.n2)
            and self.d1 == other.d1
            and self.d2 == other.d2
        )

    def __repr__(self) -> str:
        return f"ThreeTermComplex({self.n0}, {self.n1}, {self.n2})"


def dual_complex(c: TwoTermComplex) -> TwoTermComplex:
    """Dual: degree 0 becomes the old degree-(-1) dual and vice versa.

    The differential dualizes to the transpose.
    """
    return TwoTermComplex(c.n1, c.n0, c.d.transpose())


class TensorLayout:
    """Flat basis bookkeeping for the tensor square of two complexes.

    Degree 0 is C0 (x) D0; degree -1 is the block sum C0 (x) D1 then
    C1 (x) D0 (in that order); degree -2 is C1 (x) D1.  Indices are
    row-major within each block.
    """

    __slots__ = ("c", "d", "dim0", "dim1", "dim2", "split1")

    def __init__(self, c: TwoTermComplex, d: TwoTermComplex):
        self.c = c
        self.d = d
        self.dim0 = c.n0 * d.n0
        self.split1 = c.n0 * d.n1
        self.dim1 = c.n0 * d.n1 + c.n1 * d.n0
        self.dim2 = c.n1 * d.n1

    def top(self, i: int, j: int) -> int:
        return i * self.d.n0 + j

    def mix0(self, i: int, b: int) -> int:
        """Index of (degree-0 basis i) (x) (degree-(-1) basis b)."""
        return i * self.d.n1 + b

    def mix1(self, a: int, j: int) -> int:
        """Index of (degree-(-1) basis a) (x) (degree-0 basis j)."""
        return self.split1 + a * self.d.n0 + j

    def bot(self, a: int, b: int) -> int:
        return a * self.d.n1 + b


def tensor_complex(c: TwoTermComplex, d: TwoTermComplex) -> ThreeTermComplex:
    """Tensor square complex with the module's sign convention.

    On the mixed degree: x (x) a maps to -x (x) (da) and b (x) y maps
    to (db) (x) y (signs follow _second_slot_sign).  On the bottom
    degree: a (x) b maps to (da) (x) b + sign * a (x) (db).
    """
    lay = TensorLayout(c, d)
    d1 = Mat.zeros(lay.dim0, lay.dim1)
    sign_top = _second_slot_sign(0)
    for i in range(c.n0):
        for b in range(d.n1):
            col = lay.mix0(i, b)
            for j in range(d.n0):
                if d.d[j, b] != 0:
                    d1[lay.top(i, j), col] = sign_top * d.d[j, b]
    for a in range(c.n1):
        for j in range(d.n0):
            col = lay.mix1(a, j)
            for i in range(c.n0):
                if c.d[i, a] != 0:
                    d1[lay.top(i, j), col] = c.d[i, a]
    d2 = Mat.zeros(lay.dim1, lay.dim2)
    sign_bot = _second_slot_sign(-1)
    for a in range(c.n1):
        for b in range(d.n1):
            col = lay.bot(a, b)
            for i in range(c.n0):
                if c.d[i, a] != 0:
                    d2[lay.mix0(i, b), col] = c.d[i, a]
            for j in range(d.n0):
                if d.d[j, b] != 0:
                    d2[lay.mix1(a, j), col] = sign_bot * d.d[j, b]
    return ThreeTermComplex(lay.dim0, lay.dim1, lay.dim2, d1, d2)


def dtensor_of_tau(c: TwoTermComplex, t: Mat) -> tuple[Mat, Mat]:
    """Differential of a bottom-degree tensor t (rows index the first slot).

    Returns the mixed-degree components (block01, block10): the part in
    degree0 (x) degree(-1) as an n0 x n1 matrix and the part in
    degree(-1) (x) degree0 as an n1 x n0 matrix.
    """
    if t.shape() != (c.n1, c.n1):
        raise ShapeError(f"tau shape {t.shape()} expected {(c.n1, c.n1)}")
    sign = _second_slot_sign(-1)
    return (c.d @ t, (t @ c.d.transpose()).scale(sign))


def dtensor_of_mixed(c: TwoTermComplex, r01: Mat, r10: Mat) -> Mat:
    """Differential of a mixed-degree tensor into degree0 (x) degree0.

    r01 holds the degree0 (x) degree(-1) block, r10 the other one.
    """
    if r01.shape() != (c.n0, c.n1) or r10.shape() != (c.n1, c.n0):
        raise ShapeError("mixed tensor blocks have wrong shapes")
    sign = _second_slot_sign(0)
    return c.d @ r10 + (r01 @ c.d.transpose()).scale(sign)


def check_chain_map(c: TwoTermComplex, c_prime: TwoTermComplex, f: ChainMapPair) -> Report:
    """Pass iff f0 composed with d equals d' composed with f1."""
    if f.f0.shape() != (c_prime.n0, c.n0) or f.f1.shape() != (c_prime.n1, c.n1):
        raise ShapeError("chain map component shapes do not match complexes")
    report = Report()
    report.add_if_nonzero("chain-map", (), f.f0 @ c.d - c_prime.d @ f.f1)
    return report
