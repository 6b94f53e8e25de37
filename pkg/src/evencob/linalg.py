"""Exact linear algebra over the rationals.

Everything downstream (skew forms, Maslov indices, homological gluing) reduces
to the operations here: reduced-row-echelon canonicalization and the subspace
lattice with exact kernel / image / preimage / cokernel computations.

Matrices are immutable and store :class:`fractions.Fraction` entries.  A
subspace is identified with its unique RREF row basis, so subspace equality is
plain structural equality and regression values can be frozen verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatchError

Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(value: int | str | Fraction) -> Fraction:
    """Coerce to Fraction, rejecting floats outright (exactness guard)."""
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r} in exact arithmetic")
    return Fraction(value)


def as_vector(entries: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    if len(x) != len(y):
        raise DimensionMismatchError(f"dot of vectors of lengths {len(x)} and {len(y)}")
    total = _ZERO
    for a, b in zip(x, y):
        if a and b:
            total += a * b
    return total


class RationalMatrix:
    """Immutable dense matrix of rationals."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable], *, cols: int | None = None):
        data = tuple(as_vector(r) for r in rows)
        if data:
            width = len(data[0])
            for r in data[1:]:
                if len(r) != width:
                    raise ValueError("matrix rows have unequal lengths")
            if cols is not None and cols != width:
                raise ValueError(f"declared {cols} columns but rows have {width}")
        else:
            if cols is None:
                raise ValueError("a matrix with no rows needs an explicit column count")
            width = cols
        self._rows = data
        self._ncols = width

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(
            tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)),
            cols=n,
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(tuple(zero_vector(ncols) for _ in range(nrows)), cols=ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Iterable], *, rows: int | None = None) -> "RationalMatrix":
        cols = [as_vector(c) for c in columns]
        if cols:
            height = len(cols[0])
            if any(len(c) != height for c in cols):
                raise ValueError("columns have unequal lengths")
        else:
            if rows is None:
                raise ValueError("a matrix with no columns needs an explicit row count")
            height = rows
        return cls(tuple(tuple(c[i] for c in cols) for i in range(height)), cols=len(cols))

    # -- shape and access -----------------------------------------------------

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return self._ncols

    @property
    def entries(self) -> Vector:
        """All entries, row major."""
        return tuple(x for row in self._rows for x in row)

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._rows, self._ncols))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._rows)
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(tuple(tuple(-x for x in row) for row in self._rows), cols=self._ncols)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatchError("matrix addition needs equal shapes")
        return RationalMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self._rows, other._rows)),
            cols=self._ncols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self._ncols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        orows = other._rows
        width = other._ncols
        out = []
        for r in self._rows:
            acc = [_ZERO] * width
            for k, a in enumerate(r):
                if a:
                    orow = orows[k]
                    for j in range(width):
                        b = orow[j]
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return RationalMatrix(tuple(out), cols=width)

    def apply(self, vector: Iterable) -> Vector:
        """Matrix times column vector."""
        v = as_vector(vector)
        if len(v) != self._ncols:
            raise DimensionMismatchError(f"vector of length {len(v)} for a {self.rows}x{self.cols} matrix")
        return tuple(dot(r, v) for r in self._rows)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            tuple(tuple(r[j] for r in self._rows) for j in range(self._ncols)),
            cols=len(self._rows),
        )

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.transpose()

    def is_skew_symmetric(self) -> bool:
        return self.rows == self.cols and self.transpose() == -self

    # -- stacking -------------------------------------------------------------

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        return RationalMatrix(
            tuple(r1 + r2 for r1, r2 in zip(self._rows, other._rows)),
            cols=self._ncols + other._ncols,
        )

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack needs equal column counts")
        return RationalMatrix(self._rows + other._rows, cols=self._ncols)

    @staticmethod
    def block_diag(a: "RationalMatrix", b: "RationalMatrix") -> "RationalMatrix":
        top = a.hstack(RationalMatrix.zeros(a.rows, b.cols))
        bottom = RationalMatrix.zeros(b.rows, a.cols).hstack(b)
        return top.vstack(bottom)

    # -- elimination ----------------------------------------------------------

    def rref(self) -> tuple["RationalMatrix", tuple[int, ...]]:
        """Reduced row-echelon form and the tuple of pivot columns."""
        m = [list(r) for r in self._rows]
        nrows, ncols = len(m), self._ncols
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            pr = None
            for i in range(r, nrows):
                if m[i][c]:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = 1 / m[r][c]
            if inv != 1:
                m[r] = [x * inv for x in m[r]]
            for i in range(nrows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return RationalMatrix(tuple(tuple(row) for row in m), cols=ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def solve(self, rhs: Iterable) -> Vector | None:
        """First solution of ``self @ x = rhs`` with free variables set to zero.

        Returns None when the system is inconsistent.  The choice of solution
        is deterministic: the RREF particular solution.
        """
        v = as_vector(rhs)
        if len(v) != self.rows:
            raise DimensionMismatchError(f"rhs of length {len(v)} for {self.rows} equations")
        aug = self.hstack(RationalMatrix.from_columns([v], rows=self.rows))
        red, pivots = aug.rref()
        if self._ncols in pivots:
            return None
        x = [_ZERO] * self._ncols
        for i, p in enumerate(pivots):
            x[p] = red[i, self._ncols]
        return tuple(x)

    def inverse(self) -> "RationalMatrix":
        if self.rows != self._ncols:
            raise DimensionMismatchError("only square matrices can be inverted")
        n = self.rows
        red, pivots = self.hstack(RationalMatrix.identity(n)).rref()
        if pivots[:n] != tuple(range(n)):
            raise ValueError("matrix is not invertible")
        return RationalMatrix(tuple(red.row(i)[n:] for i in range(n)), cols=n)


def combine_rows(coeffs: Iterable, m: RationalMatrix) -> Vector:
    """Linear combination sum(coeffs[i] * row_i) as an ambient vector."""
    cs = as_vector(coeffs)
    if len(cs) != m.rows:
        raise DimensionMismatchError(f"{len(cs)} coefficients for {m.rows} rows")
    out = [_ZERO] * m.cols
    for c, row in zip(cs, (m.row(i) for i in range(m.rows))):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] += c * x
    return tuple(out)


def _leading_columns(m: RationalMatrix) -> tuple[int, ...]:
    out = []
    for i in range(m.rows):
        row = m.row(i)
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is not None:
            out.append(lead)
    return tuple(out)


def _rref_violation(basis: RationalMatrix) -> str | None:
    prev = -1
    for i in range(basis.rows):
        row = basis.row(i)
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            return f"row {i} is zero"
        if lead <= prev:
            return "pivot columns are not strictly increasing"
        if row[lead] != 1:
            return f"pivot of row {i} is not 1"
        for k in range(basis.rows):
            if k != i and basis[k, lead]:
                return f"pivot column {lead} is not cleared"
        prev = lead
    return None


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held as its unique RREF row basis.

    Two Subspace values are equal iff they are the same subspace; the
    canonical basis makes that a structural comparison.
    """

    ambient_dim: int
    basis: RationalMatrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionMismatchError(
                f"basis has {self.basis.cols} columns in ambient dimension {self.ambient_dim}"
            )
        violation = _rref_violation(self.basis)
        if violation is not None:
            raise ValueError(f"basis is not in canonical form: {violation}")

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RationalMatrix((), cols=ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, RationalMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def basis_rows(self) -> tuple[Vector, ...]:
        return tuple(self.basis.row(i) for i in range(self.basis.rows))

    def contains(self, vector: Iterable) -> bool:
        v = list(as_vector(vector))
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector of length {len(v)} in ambient dimension {self.ambient_dim}"
            )
        for i, lead in enumerate(_leading_columns(self.basis)):
            c = v[lead]
            if c:
                row = self.basis.row(i)
                v = [a - c * b for a, b in zip(v, row)]
        return not any(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains(r) for r in other.basis_rows())

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __add__(self, other: "Subspace") -> "Subspace":
        """Smallest subspace containing both."""
        self._check_ambient(other)
        return canonical_basis(self.basis_rows() + other.basis_rows(), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Largest subspace contained in both, via the stacked constraint kernel."""
        self._check_ambient(other)
        stacked = self.constraint_matrix().vstack(other.constraint_matrix())
        return kernel(stacked)

    def constraint_matrix(self) -> RationalMatrix:
        """A matrix C with {v : C v = 0} equal to this subspace."""
        return kernel(self.basis).basis


def canonical_basis(vectors: Sequence[Iterable], ambient_dim: int) -> Subspace:
    """Canonicalize a spanning set into the RREF Subspace it spans."""
    vs = [as_vector(v) for v in vectors]
    for idx, v in enumerate(vs):
        if len(v) != ambient_dim:
            raise DimensionMismatchError(
                f"vector {idx} has length {len(v)}, ambient dimension is {ambient_dim}"
            )
    red, pivots = RationalMatrix(vs, cols=ambient_dim).rref()
    rows = tuple(red.row(i) for i in range(len(pivots)))
    return Subspace(ambient_dim, RationalMatrix(rows, cols=ambient_dim))


def kernel(f: RationalMatrix) -> Subspace:
    """{x : f @ x = 0} in canonical form; dimension cols - rank."""
    red, pivots = f.rref()
    n = f.cols
    pivot_set = set(pivots)
    vectors = []
    for c in range(n):
        if c in pivot_set:
            continue
        v = [_ZERO] * n
        v[c] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i, c]
        vectors.append(v)
    return canonical_basis(vectors, n)


def image(f: RationalMatrix) -> Subspace:
    """Column span of f, canonicalized."""
    return canonical_basis([f.column(j) for j in range(f.cols)], f.rows)


def preimage(f: RationalMatrix, target: Subspace) -> Subspace:
    """{x : f @ x lies in target}; always contains kernel(f)."""
    if target.ambient_dim != f.rows:
        raise DimensionMismatchError(
            f"target lives in dimension {target.ambient_dim}, map lands in {f.rows}"
        )
    return kernel(target.constraint_matrix() @ f)


def cokernel(f: RationalMatrix) -> tuple[int, RationalMatrix]:
    """Quotient of Q^rows by image(f): its dimension and a projection onto it.

    The projection is surjective with kernel exactly image(f).  It is the
    coordinate projection onto the non-pivot coordinates of the column-reduced
    image, corrected along the pivot rows; non-pivot coordinates are taken in
    increasing order, which pins the presentation of composite morphisms.
    """
    img = image(f)
    pivots = _leading_columns(img.basis)
    n = f.rows
    pivot_set = set(pivots)
    nonpivots = [c for c in range(n) if c not in pivot_set]
    rows = []
    for c in nonpivots:
        row = [_ZERO] * n
        row[c] = _ONE
        for i, p in enumerate(pivots):
            row[p] = -img.basis[i, c]
        rows.append(tuple(row))
    return len(nonpivots), RationalMatrix(tuple(rows), cols=n)


def map_subspace(f: RationalMatrix, sub: Subspace) -> Subspace:
    """Image of a subspace under a linear map."""
    if sub.ambient_dim != f.cols:
        raise DimensionMismatchError(
            f"subspace lives in dimension {sub.ambient_dim}, map expects {f.cols}"
        )
    return canonical_basis([f.apply(r) for r in sub.basis_rows()], f.rows)
