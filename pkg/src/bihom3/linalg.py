"""Exact dense linear algebra over Q and Q(i).

Matrices are immutable row tuples of exact scalars.  Everything is done by
Gauss-Jordan elimination; any nonzero pivot is acceptable because no
rounding occurs.  Subspaces are stored by the reduced row-echelon form of a
spanning set, which makes equality of subspaces structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import Field, GaussianRational, Scalar, as_scalar, format_scalar

__all__ = [
    "DimensionMismatch",
    "Matrix",
    "Subspace",
    "is_direct_sum",
    "kernel",
    "nullspace_basis",
    "rank",
    "rref",
    "vec_add",
    "vec_scale",
    "vec_sub",
    "vec_is_zero",
]

Vector = tuple

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionMismatch(ValueError):
    pass


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vec_is_zero(v: Vector) -> bool:
    return not any(v)


def _conj(x):
    return x.conjugate()


def rref(rows: Sequence[Sequence[Scalar]], ncols: int | None = None):
    """Reduced row-echelon form.

    Returns ``(nonzero_rows, pivot_columns)``; zero rows are dropped.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pivot_row = m[r]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


class Matrix:
    """Immutable matrix with exact entries."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple) -> Matrix:
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0])
        m._hash = None
        return m

    # construction helpers

    @classmethod
    def identity(cls, n: int, field: Field = Field.RATIONAL) -> Matrix:
        z, o = field.zero, field.one
        return cls._raw(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None, field: Field = Field.RATIONAL) -> Matrix:
        ncols = nrows if ncols is None else ncols
        return cls._raw(tuple((field.zero,) * ncols for _ in range(nrows)))

    @classmethod
    def diag(cls, values: Sequence, field: Field = Field.RATIONAL) -> Matrix:
        vals = [field.coerce(v) for v in values]
        n = len(vals)
        z = field.zero
        return cls._raw(tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> Matrix:
        return cls(zip(*columns))

    # shape and access

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.rows[i][j]
        return self.rows[idx]

    def __iter__(self):
        return iter(self.rows)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [tuple(c) for c in zip(*self.rows)]

    def entries(self):
        for r in self.rows:
            yield from r

    # arithmetic

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return Matrix._raw(
                tuple(
                    tuple(sum((a * b for a, b in zip(row, col) if a and b), _ZERO) for col in cols)
                    for row in self.rows
                )
            )
        if isinstance(other, tuple):
            if self.ncols != len(other):
                raise DimensionMismatch(f"cannot apply {self.shape} matrix to vector of length {len(other)}")
            return tuple(sum((a * b for a, b in zip(row, other) if a and b), _ZERO) for row in self.rows)
        return NotImplemented

    def _check_same_shape(self, other: Matrix):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix._raw(tuple(vec_add(a, b) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix._raw(tuple(vec_sub(a, b) for a, b in zip(self.rows, other.rows)))

    def __neg__(self) -> Matrix:
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self.rows))

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return NotImplemented
        c = as_scalar(c)
        return Matrix._raw(tuple(vec_scale(c, r) for r in self.rows))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def transpose(self) -> Matrix:
        return Matrix._raw(tuple(self.columns()))

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def conjugate(self) -> Matrix:
        return Matrix._raw(tuple(tuple(_conj(x) for x in r) for r in self.rows))

    def coerce(self, field: Field) -> Matrix:
        return Matrix._raw(tuple(tuple(field.coerce(x) for x in r) for r in self.rows))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_identity(self) -> bool:
        return self.is_square and all(
            (x == 1 if i == j else not x) for i, r in enumerate(self.rows) for j, x in enumerate(r)
        )

    def is_real(self) -> bool:
        return all(not (isinstance(x, GaussianRational) and x.im) for x in self.entries())

    def commutes_with(self, other: Matrix) -> bool:
        return self @ other == other @ self

    def rank(self) -> int:
        return rank(self)

    def kernel(self) -> Subspace:
        return kernel(self)

    def inverse(self) -> Matrix:
        if not self.is_square:
            raise DimensionMismatch("only square matrices can be inverted")
        n = self.nrows
        aug = [row + tuple(_ONE if i == j else _ZERO for j in range(n)) for i, row in enumerate(self.rows)]
        red, pivots = rref(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(red) < n:
            raise ValueError("matrix is singular")
        return Matrix._raw(tuple(r[n:] for r in red[:n]))

    def is_invertible(self) -> bool:
        return self.is_square and rank(self) == self.nrows

    def tolist(self) -> list[list[str]]:
        """Row-major nested lists of canonical scalar strings."""
        return [[format_scalar(x) for x in r] for r in self.rows]

    def sort_key(self):
        return tuple(_scalar_key(x) for x in self.entries())

    def __repr__(self):
        return f"Matrix({self.tolist()!r})"


def _scalar_key(x):
    if isinstance(x, GaussianRational):
        return (x.re, x.im)
    return (x, _ZERO)


def rank(m: Matrix) -> int:
    return len(rref(m.rows, m.ncols)[1])


def nullspace_basis(m: Matrix):
    """Free columns and the matching null-space basis.

    The basis vector attached to free column ``f`` has a 1 in position ``f``
    and 0 in every other free position, so any kernel element is determined
    by its free coordinates.
    """
    red, pivots = rref(m.rows, m.ncols)
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [_ZERO] * m.ncols
        v[f] = _ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return free, basis


def kernel(m: Matrix) -> Subspace:
    _, basis = nullspace_basis(m)
    return Subspace(m.ncols, basis)


class Subspace:
    """Subspace of coordinate space, stored in canonical (RREF) form."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        vecs = [tuple(as_scalar(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient}")
        if vecs:
            red, piv = rref(vecs, ambient)
        else:
            red, piv = [], []
        self.ambient = ambient
        self.basis: tuple[Vector, ...] = tuple(red)
        self.pivots: tuple[int, ...] = tuple(piv)

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n)

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, [tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)])

    @classmethod
    def span_of_basis_vectors(cls, n: int, indices: Iterable[int]) -> Subspace:
        return cls(n, [tuple(_ONE if i == j else _ZERO for j in range(n)) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def _check(self, other: Subspace):
        if self.ambient != other.ambient:
            raise DimensionMismatch(f"ambient dimensions {self.ambient} and {other.ambient} differ")

    def contains(self, v: Sequence) -> bool:
        """Membership by reduction against the RREF basis."""
        v = list(v)
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return not any(v)

    __contains__ = contains

    def contains_subspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.ambient, self.basis + other.basis)

    def sum(self, other: Subspace) -> Subspace:
        return self + other

    def intersection(self, other: Subspace) -> Subspace:
        self._check(other)
        if not self.dim or not other.dim:
            return Subspace(self.ambient)
        # a·U = b·V  <=>  (a, b) in ker [U^T | -V^T]
        cols = list(self.basis) + [vec_scale(-1, v) for v in other.basis]
        system = Matrix.from_columns(cols)
        _, null = nullspace_basis(system)
        p = self.dim
        out = []
        for coeffs in null:
            w = [_ZERO] * self.ambient
            for c, u in zip(coeffs[:p], self.basis):
                if c:
                    w = [a + c * b for a, b in zip(w, u)]
            out.append(tuple(w))
        return Subspace(self.ambient, out)

    def __and__(self, other: Subspace) -> Subspace:
        return self.intersection(other)

    def image(self, m: Matrix) -> Subspace:
        """Span of ``m`` applied to this subspace."""
        if m.ncols != self.ambient:
            raise DimensionMismatch("matrix width does not match ambient dimension")
        return Subspace(m.nrows, [m @ v for v in self.basis])

    def is_invariant_under(self, m: Matrix) -> bool:
        return all(self.contains(m @ v) for v in self.basis)

    def conjugate(self) -> Subspace:
        return Subspace(self.ambient, [tuple(_conj(x) for x in v) for v in self.basis])

    def tolist(self) -> list[list[str]]:
        return [[format_scalar(x) for x in v] for v in self.basis]

    def __repr__(self):
        return f"Subspace({self.ambient}, {self.tolist()!r})"


def is_direct_sum(u: Subspace, v: Subspace) -> bool:
    """True iff the ambient space is the internal direct sum of ``u`` and ``v``."""
    u._check(v)
    return u.dim + v.dim == u.ambient and (u + v).dim == u.ambient
