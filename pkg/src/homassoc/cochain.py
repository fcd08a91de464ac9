"""Cochains: dense multilinear maps ``A^{(x)n} -> A``.

``coeffs[i_1, ..., i_n, k]`` is the coefficient of ``e_k`` in
``f(e_{i_1}, ..., e_{i_n})`` (inputs first, output last).  Flattening to a
vector is row-major over ``(i_1, ..., i_n, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _tensor as T
from .algebra import HomAlgebra
from .linalg import SubspaceBasis, canonical, format_rational, kernel_basis, to_rational


class CochainError(ValueError):
    pass


class Cochain:
    """An n-cochain of a fixed algebra; treat as immutable."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: HomAlgebra, coeffs):
        if not isinstance(coeffs, np.ndarray) or coeffs.dtype != object:
            coeffs = T.exact_array(coeffs)
        d = algebra.dim
        if coeffs.ndim < 2 or any(s != d for s in coeffs.shape):
            raise CochainError(f"coefficient tensor of shape {coeffs.shape} for dimension {d}")
        coeffs.flags.writeable = False
        self.algebra = algebra
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return self.coeffs.ndim - 1

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, nonzero={int(np.count_nonzero(self.coeffs != 0))})"

    def _same_space(self, other: "Cochain") -> None:
        if other.algebra is not self.algebra:
            raise CochainError("cochains belong to different algebras")
        if other.degree != self.degree:
            raise CochainError(f"degree {self.degree} against degree {other.degree}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (other.algebra is self.algebra and other.degree == self.degree
                and bool(np.array_equal(self.coeffs, other.coeffs)))

    __hash__ = None

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same_space(other)
        return Cochain(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same_space(other)
        return Cochain(self.algebra, self.coeffs - other.coeffs)

    def __neg__(self) -> "Cochain":
        return Cochain(self.algebra, -self.coeffs)

    def __mul__(self, c) -> "Cochain":
        c = to_rational(c)
        if c == 1:
            return self
        if c == -1:
            return -self
        return Cochain(self.algebra, self.coeffs * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def vector(self) -> list:
        return [canonical(x) for x in self.coeffs.reshape(-1)]

    @classmethod
    def from_vector(cls, algebra: HomAlgebra, degree: int, vec: Sequence) -> "Cochain":
        d = algebra.dim
        if len(vec) != d ** (degree + 1):
            raise CochainError(f"vector of length {len(vec)} for a degree-{degree} cochain")
        arr = np.empty(len(vec), dtype=object)
        for i, x in enumerate(vec):
            arr[i] = to_rational(x)
        return cls(algebra, arr.reshape((d,) * (degree + 1)))

    def __call__(self, *args) -> list:
        """Evaluate on vectors of the algebra."""
        if len(args) != self.degree:
            raise CochainError(f"{len(args)} arguments for a degree-{self.degree} cochain")
        out = self.coeffs
        for a in reversed(args):
            a = np.array([to_rational(x) for x in a], dtype=object)
            out = np.tensordot(out, a, axes=([out.ndim - 2], [0]))
        return [canonical(x) for x in out]

    def to_dict(self) -> dict:
        def fmt(x):
            if isinstance(x, list):
                return [fmt(y) for y in x]
            return format_rational(x)

        return {"degree": self.degree, "coeffs": fmt(self.coeffs.tolist())}

    @classmethod
    def from_dict(cls, algebra: HomAlgebra, data: dict) -> "Cochain":
        if not isinstance(data, dict) or "degree" not in data or "coeffs" not in data:
            raise CochainError("cochain JSON needs 'degree' and 'coeffs'")
        n = data["degree"]
        if not isinstance(n, int) or n < 1:
            raise CochainError(f"cochain degree must be a positive integer, got {n!r}")
        try:
            arr = T.exact_array(data["coeffs"])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise CochainError(f"cochain coefficients: {exc}") from None
        if arr.shape != (algebra.dim,) * (n + 1):
            raise CochainError(
                f"degree-{n} cochain needs shape {(algebra.dim,) * (n + 1)}, got {arr.shape}")
        return cls(algebra, arr)


def zero_cochain(A: HomAlgebra, n: int) -> Cochain:
    return Cochain(A, T.zeros(A.dim, n))


def identity_cochain(A: HomAlgebra) -> Cochain:
    return Cochain(A, _eye(A.dim))


def _eye(d: int) -> np.ndarray:
    m = T.zeros(d, 1)
    for i in range(d):
        m[i, i] = 1
    return m


def mu_cochain(A: HomAlgebra) -> Cochain:
    return Cochain(A, A.mu.copy())


def alpha_cochain(A: HomAlgebra, t: int = 1) -> Cochain:
    return Cochain(A, T.linear_piece(A.alpha_power(t)))


def is_equivariant(f: Cochain) -> bool:
    """``alpha(f(e_I)) == f(alpha e_I)`` for every basis tuple ``I``."""
    A = f.algebra
    if A.alpha_is_identity:
        return True
    left = T.postcompose(f.coeffs, A.alpha)
    a = T.linear_piece(A.alpha)
    right = T.compose(f.coeffs, [a] * f.degree)
    return bool(np.array_equal(left, right))


def equivariance_matrix(A: HomAlgebra, n: int) -> np.ndarray:
    """Matrix of ``f -> alpha.f - f.alpha^{(x)n}`` on flattened coefficients."""
    d = A.dim
    ident = np.eye(d ** n, dtype=int).astype(object)
    out_part = T.kron(ident, A.alpha)
    at = np.ascontiguousarray(A.alpha.T)
    inp = np.ones((1, 1), dtype=int).astype(object)
    for _ in range(n):
        inp = T.kron(inp, at)
    in_part = T.kron(inp, np.eye(d, dtype=int).astype(object))
    return out_part - in_part


@dataclass(frozen=True)
class CochainSpaceBasis:
    algebra: HomAlgebra
    degree: int
    basis: SubspaceBasis

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def cochains(self) -> list[Cochain]:
        return [Cochain.from_vector(self.algebra, self.degree, v) for v in self.basis.vectors]

    def combine(self, coords: Sequence) -> Cochain:
        return Cochain.from_vector(self.algebra, self.degree, self.basis.combine(coords))

    def coordinates(self, f: Cochain) -> Optional[list]:
        return self.basis.coordinates(f.vector())


def cochain_space_basis(A: HomAlgebra, n: int) -> CochainSpaceBasis:
    """Basis of the alpha-equivariant n-cochains."""
    if n < 1:
        raise CochainError("cochains start in degree 1")
    cache = A._cache.setdefault("spaces", {})
    if n not in cache:
        N = A.dim ** (n + 1)
        if A.alpha_is_identity:
            vecs = [[int(i == j) for i in range(N)] for j in range(N)]
            basis = SubspaceBasis(N, vecs, check=False)
        else:
            basis = kernel_basis(equivariance_matrix(A, n).tolist())
        cache[n] = CochainSpaceBasis(A, n, basis)
    return cache[n]


def random_coefficients(rng: np.random.Generator, k: int, coeff_bound: int) -> list[int]:
    if coeff_bound <= 0 or k == 0:
        return [0] * k
    return [int(x) for x in rng.integers(-coeff_bound, coeff_bound + 1, size=k)]


def random_cochain(basis: CochainSpaceBasis, seed, coeff_bound: int = 3) -> Cochain:
    """Integer combination of ``basis`` with coefficients in ``[-coeff_bound, coeff_bound]``.

    Deterministic in ``seed`` (an int or a sequence of ints).
    """
    if coeff_bound < 0:
        raise ValueError("coeff_bound must be non-negative")
    rng = np.random.default_rng(seed)
    return basis.combine(random_coefficients(rng, len(basis), coeff_bound))
