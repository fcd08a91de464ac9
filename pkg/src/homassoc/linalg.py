"""Exact rational linear algebra.

Scalars are ``fractions.Fraction`` or plain ``int`` (both are
``numbers.Rational``); nothing here ever touches floating point.  Matrices
are small and dense, so Gauss-Jordan elimination over ``Fraction`` is fast
enough and keeps every intermediate value exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Optional, Sequence, Union

Scalar = Union[int, Fraction]


def to_rational(x) -> Scalar:
    """Parse ``x`` (int, Fraction, or a string ``"p/q"`` / ``"p"``) exactly.

    Integral values come back as ``int`` so that integer data stays on the
    fast path of Python's arithmetic.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        q = Fraction(x.strip())
    elif isinstance(x, Rational):
        q = Fraction(x.numerator, x.denominator)
    else:
        raise TypeError(f"not an exact rational: {x!r}")
    return q.numerator if q.denominator == 1 else q


def format_rational(x) -> str:
    return str(Fraction(x))


def canonical(x) -> Scalar:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(to_rational(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def matvec(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} against {self.cols} columns")
        out = []
        for i in range(self.rows):
            acc = 0
            for j, x in enumerate(v):
                a = self.entries[i * self.cols + j]
                if a and x:
                    acc += a * x
            out.append(canonical(acc))
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        cols = [other.transpose().row(j) for j in range(other.cols)]
        data = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                data.append(canonical(sum(a * b for a, b in zip(r, c) if a and b)))
        return Matrix(self.rows, other.cols, tuple(data))


MatrixLike = Union[Matrix, Sequence[Sequence]]


def _as_rows(m: MatrixLike) -> tuple[list[list], int]:
    if isinstance(m, Matrix):
        return m.to_rows(), m.cols
    rows = [[to_rational(x) for x in r] for r in m]
    cols = len(rows[0]) if rows else 0
    if any(len(r) != cols for r in rows):
        raise ValueError("ragged matrix rows")
    return rows, cols


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        p = next((k for k in range(r, len(work)) if work[k][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        piv = work[r][c]
        if piv != 1:
            work[r] = [x / piv for x in work[r]]
        prow = work[r]
        for k in range(len(work)):
            if k != r and work[k][c]:
                factor = work[k][c]
                work[k] = [x - factor * y if y else x for x, y in zip(work[k], prow)]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rank(m: MatrixLike) -> int:
    rows, cols = _as_rows(m)
    return len(rref(rows, cols)[1])


def primitive(v: Sequence) -> list:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return [x // g for x in ints]


class SubspaceBasis:
    """A linearly independent family of vectors in ``Q^ambient_dim``.

    Membership and coordinate queries reuse a cached echelon form, so the
    object is cheap to query repeatedly once built.
    """

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = (), check: bool = True):
        self.ambient_dim = ambient_dim
        self.vectors = tuple(tuple(to_rational(x) for x in v) for v in vectors)
        for v in self.vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        self._echelon: Optional[tuple[list[list], list[int]]] = None
        self._inverse: Optional[list[list]] = None
        if check and self.vectors and len(self._rref()[1]) != len(self.vectors):
            raise ValueError("basis vectors are linearly dependent")

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __repr__(self) -> str:
        return f"SubspaceBasis(ambient_dim={self.ambient_dim}, dim={len(self)})"

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def _rref(self):
        if self._echelon is None:
            self._echelon = rref(self.vectors, self.ambient_dim)
        return self._echelon

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of length {len(v)} against ambient dimension {self.ambient_dim}")
        rows, pivots = self._rref()
        w = [Fraction(x) for x in v]
        for row, c in zip(rows, pivots):
            if w[c]:
                f = w[c]
                w = [x - f * y if y else x for x, y in zip(w, row)]
        return not any(w)

    def coordinates(self, v: Sequence) -> Optional[list]:
        """Coefficients ``c`` with ``sum(c[r] * vectors[r]) == v``, or None."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of length {len(v)} against ambient dimension {self.ambient_dim}")
        k = len(self.vectors)
        if k == 0:
            return [] if not any(v) else None
        _, pivots = self._rref()
        if self._inverse is None:
            # square block of the basis on its pivot coordinates is invertible
            block = [[self.vectors[r][c] for r in range(k)] for c in pivots]
            self._inverse = _inverse(block)
        rhs = [v[c] for c in pivots]
        coords = [canonical(sum(a * b for a, b in zip(row, rhs) if a and b)) for row in self._inverse]
        for i in range(self.ambient_dim):
            acc = sum(c * vec[i] for c, vec in zip(coords, self.vectors) if c and vec[i])
            if acc != v[i]:
                return None
        return coords

    def combine(self, coords: Sequence) -> list:
        if len(coords) != len(self.vectors):
            raise ValueError("coordinate count does not match basis size")
        out = [0] * self.ambient_dim
        for c, vec in zip(coords, self.vectors):
            if c:
                for i, x in enumerate(vec):
                    if x:
                        out[i] += c * x
        return [canonical(x) for x in out]


def _inverse(square: list[list]) -> list[list]:
    n = len(square)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(square)]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [[canonical(x) for x in r[n:]] for r in rows]


def kernel_basis(m: MatrixLike) -> SubspaceBasis:
    """Basis of the right null space, one primitive integer vector per free column."""
    rows, cols = _as_rows(m)
    red, pivots = rref(rows, cols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[free]
        vectors.append(primitive(v))
    return SubspaceBasis(cols, vectors, check=False)


def column_space_indices(m: MatrixLike) -> list[int]:
    """Indices of a maximal independent set of columns (the pivot columns)."""
    rows, cols = _as_rows(m)
    return rref(rows, cols)[1]


def in_span(v: Sequence, b: SubspaceBasis) -> bool:
    return b.contains(v)


def solve(m: MatrixLike, rhs: Sequence) -> Optional[list]:
    """One exact solution of ``m x = rhs``, or None if the system is inconsistent."""
    rows, cols = _as_rows(m)
    if len(rhs) != len(rows):
        raise ValueError(f"right-hand side of length {len(rhs)} for {len(rows)} rows")
    aug = [r + [to_rational(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, cols + 1)
    if pivots and pivots[-1] == cols:
        return None
    x = [0] * cols
    for row, c in zip(red, pivots):
        x[c] = canonical(row[cols])
    return x
