"""Exact rational linear algebra and report plumbing.

Everything downstream computes over the field of rationals with
``fractions.Fraction``; no floats appear anywhere.  This module provides
the shared vocabulary: canonical rational serialization, dense matrices
(`Mat`), sparse order-3 structure-constant tensors (`Tensor3`), exact
linear solving and rank, and the `Violation`/`Report` pair that every
verifier returns.  All equality checks are exact; a law holds iff its
residual is literally zero.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class ShapeError(ValueError):
    """Raised when dimensions or serialized shapes are malformed."""


class InvalidStructureError(ValueError):
    """Raised by constructions when the input fails a required law.

    Carries the offending `Report` so callers can surface which law broke.
    """

    def __init__(self, message: str, report: "Report | None" = None):
        super().__init__(message)
        self.report = report


def rat(value) -> Fraction:
    """Coerce ints, Fractions, and canonical strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise ShapeError(f"not a rational: {value!r}")


def rat_str(value: Fraction) -> str:
    """Canonical form: lowest terms, positive denominator, "p" or "p/q"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_RAT_PATTERN = re.compile(r"^(-?\d+)(?:/([1-9]\d*))?$")


def parse_rat(text: str) -> Fraction:
    """Parse "p" or "p/q" with positive q; anything else is a shape error."""
    if not isinstance(text, str):
        raise ShapeError(f"rational must be a string, got {type(text).__name__}")
    m = _RAT_PATTERN.match(text)
    if m is None:
        raise ShapeError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Fraction(num, den)


def unit(n: int, i: int) -> list[Fraction]:
    v = [ZERO] * n
    v[i] = ONE
    return v


def vec_add(a, b):
    return [x + y for x, y in zip(a, b)]


def vec_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def vec_scale(c, a):
    return [c * x for x in a]


def lincomb(coeffs, vecs):
    """Sum of coeff * column-vector over a coefficient vector."""
    out = None
    for c, v in zip(coeffs, vecs):
        term = vec_scale(c, v)
        out = term if out is None else vec_add(out, term)
    return out


class Mat:
    """Dense exact matrix with rows of Fractions.

    Rows are lists; entries are always Fractions.  Supports the small
    algebra the verifiers need: +, -, @, scalar *, transpose, equality.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [[rat(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ShapeError("ragged matrix rows")

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "Mat":
        return Mat([[ZERO] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def copy(self) -> "Mat":
        return Mat(self.rows)

    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij: tuple[int, int], value) -> None:
        i, j = ij
        self.rows[i][j] = rat(value)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.shape() == other.shape()
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.rows))

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape() != other.shape():
            raise ShapeError(f"add shape mismatch {self.shape()} vs {other.shape()}")
        return Mat(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape() != other.shape():
            raise ShapeError(f"sub shape mismatch {self.shape()} vs {other.shape()}")
        return Mat(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in row] for row in self.rows])

    def scale(self, c) -> "Mat":
        c = rat(c)
        return Mat([[c * a for a in row] for row in self.rows])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ShapeError(f"matmul shape mismatch {self.shape()} vs {other.shape()}")
        out = [[ZERO] * other.ncols for _ in range(self.nrows)]
        for i in range(self.nrows):
            row = self.rows[i]
            orow = out[i]
            for k in range(self.ncols):
                a = row[k]
                if a == 0:
                    continue
                brow = other.rows[k]
                for j in range(other.ncols):
                    if brow[j] != 0:
                        orow[j] += a * brow[j]
        return Mat(out)

    def transpose(self) -> "Mat":
        return Mat(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        )

    def apply(self, vec: Sequence) -> list[Fraction]:
        """Matrix times column vector."""
        v = [rat(x) for x in vec]
        if len(v) != self.ncols:
            raise ShapeError(f"apply length {len(v)} vs ncols {self.ncols}")
        return [sum((row[j] * v[j] for j in range(self.ncols)), ZERO) for row in self.rows]

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.rows for a in row)

    def to_lists(self) -> list[list[str]]:
        return [[rat_str(a) for a in row] for row in self.rows]

    @staticmethod
    def from_lists(rows: Sequence[Sequence[str]], nrows: int, ncols: int) -> "Mat":
        m = Mat([[parse_rat(x) for x in row] for row in rows]) if rows else Mat.zeros(0, ncols)
        if m.nrows != nrows or (m.nrows and m.ncols != ncols):
            raise ShapeError(f"matrix shape {m.shape()} expected {(nrows, ncols)}")
        if m.nrows == 0:
            return Mat.zeros(nrows, ncols)
        return m

    def __repr__(self) -> str:
        return f"Mat({self.to_lists()!r})"


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product: out[i*p + k][j*q + l] = a[i][j] * b[k][l]."""
    p, q = b.nrows, b.ncols
    out = Mat.zeros(a.nrows * p, a.ncols * q)
    for i in range(a.nrows):
        for j in range(a.ncols):
            aij = a.rows[i][j]
            if aij == 0:
                continue
            for k in range(p):
                for l in range(q):
                    if b.rows[k][l] != 0:
                        out[i * p + k, j * q + l] = aij * b.rows[k][l]
    return out


def block_matrix(blocks: Sequence[Sequence["Mat"]]) -> Mat:
    """Assemble a matrix from a grid of conforming blocks."""
    rows: list[list[Fraction]] = []
    for brow in blocks:
        height = brow[0].nrows
        for b in brow:
            if b.nrows != height:
                raise ShapeError("block row height mismatch")
        for i in range(height):
            rows.append([x for b in brow for x in b.rows[i]])
    return Mat(rows) if rows else Mat.zeros(0, 0)


class Tensor3:
    """Sparse order-3 tensor of structure constants T[i, j, k].

    Only nonzero entries are stored.  Index convention throughout the
    package: T[i, j, k] is the coefficient of output basis vector k in
    the product of inputs i and j.
    """

    __slots__ = ("dims", "data")

    def __init__(self, dims: tuple[int, int, int], entries=None):
        self.dims = tuple(dims)
        if len(self.dims) != 3 or any(d < 0 for d in self.dims):
            raise ShapeError(f"bad tensor dims {dims}")
        self.data: dict[tuple[int, int, int], Fraction] = {}
        if entries:
            for key, value in dict(entries).items():
                self[key] = value

    def _check_key(self, key) -> tuple[int, int, int]:
        i, j, k = key
        d0, d1, d2 = self.dims
        if not (0 <= i < d0 and 0 <= j < d1 and 0 <= k < d2):
            raise ShapeError(f"index {key} out of bounds for dims {self.dims}")
        return (i, j, k)

    def __getitem__(self, key) -> Fraction:
        return self.data.get(self._check_key(key), ZERO)

    def __setitem__(self, key, value) -> None:
        key = self._check_key(key)
        value = rat(value)
        if value == 0:
            self.data.pop(key, None)
        else:
            self.data[key] = value

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tensor3)
            and self.dims == other.dims
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.dims, frozenset(self.data.items())))

    def items(self) -> Iterator[tuple[tuple[int, int, int], Fraction]]:
        return iter(sorted(self.data.items()))

    def copy(self) -> "Tensor3":
        return Tensor3(self.dims, self.data)

    def __add__(self, other: "Tensor3") -> "Tensor3":
        if self.dims != other.dims:
            raise ShapeError(f"tensor add dims {self.dims} vs {other.dims}")
        out = self.copy()
        for key, value in other.data.items():
            out[key] = out[key] + value
        return out

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        if self.dims != other.dims:
            raise ShapeError(f"tensor sub dims {self.dims} vs {other.dims}")
        out = self.copy()
        for key, value in other.data.items():
            out[key] = out[key] - value
        return out

    def __neg__(self) -> "Tensor3":
        return Tensor3(self.dims, {k: -v for k, v in self.data.items()})

    def is_zero(self) -> bool:
        return not self.data

    def left_matrix(self, i: int) -> Mat:
        """Matrix of the operator (i-th input) * (-) : entries [k][j]."""
        d0, d1, d2 = self.dims
        m = Mat.zeros(d2, d1)
        for (a, j, k), value in self.data.items():
            if a == i:
                m[k, j] = value
        return m

    def right_matrix(self, j: int) -> Mat:
        """Matrix of the operator (-) * (j-th input) : entries [k][i]."""
        d0, d1, d2 = self.dims
        m = Mat.zeros(d2, d0)
        for (i, b, k), value in self.data.items():
            if b == j:
                m[k, i] = value
        return m

    def apply(self, u: Sequence, v: Sequence) -> list[Fraction]:
        """Bilinear product of coordinate vectors: out[k] = sum T[i,j,k] u_i v_j."""
        u = [rat(x) for x in u]
        v = [rat(x) for x in v]
        d0, d1, d2 = self.dims
        if len(u) != d0 or len(v) != d1:
            raise ShapeError("apply operand lengths do not match tensor dims")
        out = [ZERO] * d2
        for (i, j, k), value in self.data.items():
            if u[i] != 0 and v[j] != 0:
                out[k] += value * u[i] * v[j]
        return out

    def to_entries(self) -> list[dict]:
        return [
            {"i": i, "j": j, "k": k, "v": rat_str(v)}
            for (i, j, k), v in self.items()
        ]

    @staticmethod
    def from_entries(dims: tuple[int, int, int], entries: Iterable[dict]) -> "Tensor3":
        t = Tensor3(dims)
        for e in entries:
            try:
                i, j, k, v = e["i"], e["j"], e["k"], e["v"]
            except (KeyError, TypeError):
                raise ShapeError(f"malformed tensor entry {e!r}")
            t[i, j, k] = t[i, j, k] + parse_rat(v)
        return t

    def __repr__(self) -> str:
        return f"Tensor3({self.dims}, {dict(self.items())!r})"


def _row_reduce(aug: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place fraction Gauss-Jordan on the first ncols columns.

    Returns the reduced rows and the list of pivot columns.
    """
    pivots: list[int] = []
    r = 0
    nrows = len(aug)
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if aug[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        inv = ONE / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return aug, pivots


def solve_linear(a: Mat, b: Sequence) -> tuple[str, list[Fraction] | None]:
    """Solve A x = b exactly.

    Returns ("unique", x), ("underdetermined", x) with one particular
    solution (free variables set to zero), or ("inconsistent", None).
    """
    b = [rat(x) for x in b]
    if len(b) != a.nrows:
        raise ShapeError(f"rhs length {len(b)} vs nrows {a.nrows}")
    n = a.ncols
    aug = [list(row) + [bv] for row, bv in zip(a.rows, b)]
    aug, pivots = _row_reduce(aug, n)
    rank = len(pivots)
    for i in range(rank, len(aug)):
        if aug[i][n] != 0:
            return ("inconsistent", None)
    x = [ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = aug[r][n]
    status = "unique" if rank == n else "underdetermined"
    return (status, x)


def rank(a: Mat) -> int:
    """Exact rank via Bareiss fraction-free elimination on integers.

    Entries are cleared to a common denominator per row first, so the
    elimination runs on integers and stays division-exact.
    """
    rows: list[list[int]] = []
    for row in a.rows:
        if all(x == 0 for x in row):
            continue
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
    if not rows:
        return 0
    n = len(rows)
    m = len(rows[0])
    prev = 1
    r = 0
    for c in range(m):
        pivot_row = None
        for i in range(r, n):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        for i in range(r + 1, n):
            for j in range(c + 1, m):
                rows[i][j] = (rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]) // prev
            rows[i][c] = 0
        prev = rows[r][c]
        r += 1
        if r == n:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a >= 0 else -a


def kernel(a: Mat) -> list[list[Fraction]]:
    """Basis of the null space of A, as a list of coordinate vectors."""
    n = a.ncols
    aug = [list(row) for row in a.rows]
    aug, pivots = _row_reduce(aug, n)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -aug[r][f]
        basis.append(v)
    return basis


class Violation:
    """One failed law instance: which law, at which indices, what residual.

    The residual is either a single canonical rational string or a list
    of them (a residual vector), always exactly nonzero somewhere.
    """

    __slots__ = ("law", "indices", "residual")

    def __init__(self, law: str, indices: Sequence[int], residual):
        self.law = str(law)
        self.indices = tuple(int(i) for i in indices)
        if isinstance(residual, (list, tuple)):
            self.residual = [rat_str(rat(x)) for x in residual]
        else:
            self.residual = rat_str(rat(residual))

    def to_json(self) -> dict:
        return {
            "law": self.law,
            "indices": list(self.indices),
            "residual": self.residual,
        }

    def __repr__(self) -> str:
        return f"Violation({self.law!r}, {self.indices!r}, {self.residual!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Violation)
            and self.law == other.law
            and self.indices == other.indices
            and self.residual == other.residual
        )


class Report:
    """Outcome of a verifier: pass iff the violation list is empty.

    `extra` carries check-specific summary fields (booleans, statuses)
    that serialize alongside the standard keys.
    """

    def __init__(self, violations: list[Violation] | None = None, extra: dict | None = None):
        self.violations: list[Violation] = list(violations or [])
        self.extra: dict = dict(extra or {})

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def add(self, law: str, indices: Sequence[int], residual) -> None:
        self.violations.append(Violation(law, indices, residual))

    def add_if_nonzero(self, law: str, indices: Sequence[int], residual) -> None:
        """Record only when the residual (scalar, vector, Mat) is nonzero."""
        if isinstance(residual, Mat):
            if residual.is_zero():
                return
            flat = [x for row in residual.rows for x in row]
            self.violations.append(Violation(law, indices, flat))
            return
        if isinstance(residual, (list, tuple)):
            if all(rat(x) == 0 for x in residual):
                return
            self.violations.append(Violation(law, indices, list(residual)))
            return
        if rat(residual) == 0:
            return
        self.violations.append(Violation(law, indices, residual))

    def extend(self, other: "Report", prefix: str = "") -> None:
        """Fold another report in, optionally prefixing its law names."""
        for v in other.violations:
            law = f"{prefix}{v.law}" if prefix else v.law
            self.violations.append(Violation(law, v.indices, v.residual))

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "violations": [v.to_json() for v in self.violations],
        }
        for key in sorted(self.extra):
            out[key] = self.extra[key]
        return out

    def __repr__(self) -> str:
        return f"Report({self.status}, {len(self.violations)} violations)"
