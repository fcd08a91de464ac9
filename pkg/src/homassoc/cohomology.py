"""The equivariant cochain complex and its cohomology.

Cocycle and coboundary spaces are stored in the ambient coefficient space
``K^(d^(n+1))`` so that their vectors are cochains as they stand.
Cohomology is reported from degree 2 up; degree 1 gets C, Z and B only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import HomAlgebra
from .cochain import Cochain, CochainSpaceBasis, cochain_space_basis, mu_cochain
from .linalg import Matrix, SubspaceBasis, column_space_indices, kernel_basis
from .ops import bracket, cup, delta


class ComplexError(RuntimeError):
    """The coboundary left the equivariant subspace (the algebra is not multiplicative)."""


@dataclass(frozen=True)
class ComplexSlice:
    degree: int
    C_basis: CochainSpaceBasis
    delta_matrix: Matrix
    Z_basis: SubspaceBasis
    B_basis: SubspaceBasis

    @property
    def dimC(self) -> int:
        return len(self.C_basis)

    @property
    def dimZ(self) -> int:
        return len(self.Z_basis)

    @property
    def dimB(self) -> int:
        return len(self.B_basis)

    @property
    def dimH(self) -> int:
        return self.dimZ - self.dimB


class HochschildComplex:
    """Lazily built complex ``C^1 -> C^2 -> ...`` of one algebra."""

    def __init__(self, algebra: HomAlgebra):
        if not algebra.validate().valid:
            raise ComplexError(f"{algebra.name} is not a multiplicative hom-associative algebra")
        self.algebra = algebra
        self._delta: dict[int, tuple[Matrix, list[Cochain]]] = {}
        self._slices: dict[int, ComplexSlice] = {}
        self._reps: dict[int, list[Cochain]] = {}
        self._zb: dict[int, SubspaceBasis] = {}

    def space(self, n: int) -> CochainSpaceBasis:
        return cochain_space_basis(self.algebra, n)

    def _delta_data(self, n: int) -> tuple[Matrix, list[Cochain]]:
        if n not in self._delta:
            src, dst = self.space(n), self.space(n + 1)
            images = [delta(c, check=False) for c in src.cochains()]
            cols = []
            for k, img in enumerate(images):
                coords = dst.coordinates(img)
                if coords is None:
                    raise ComplexError(f"coboundary of basis cochain {k} in degree {n} is not equivariant")
                cols.append(coords)
            rows = [[c[r] for c in cols] for r in range(len(dst))]
            self._delta[n] = (Matrix.from_rows(rows, cols=len(src)), images)
        return self._delta[n]

    def delta_matrix(self, n: int) -> Matrix:
        """Matrix of the coboundary from C^n to C^(n+1) in the space bases."""
        return self._delta_data(n)[0]

    def slice(self, n: int) -> ComplexSlice:
        if n < 1:
            raise ValueError("the complex starts in degree 1")
        if n not in self._slices:
            C = self.space(n)
            D = self.delta_matrix(n)
            kern = kernel_basis(D)
            Z = SubspaceBasis(C.basis.ambient_dim, [C.basis.combine(v) for v in kern.vectors], check=False)
            if n == 1:
                B = SubspaceBasis(C.basis.ambient_dim, [], check=False)
            else:
                Dprev, images = self._delta_data(n - 1)
                B = SubspaceBasis(C.basis.ambient_dim,
                                  [images[k].vector() for k in column_space_indices(Dprev)], check=False)
            self._slices[n] = ComplexSlice(n, C, D, Z, B)
        return self._slices[n]

    def cocycles(self, n: int) -> SubspaceBasis:
        return self.slice(n).Z_basis

    def coboundaries(self, n: int) -> SubspaceBasis:
        return self.slice(n).B_basis

    def cocycle_space(self, n: int) -> CochainSpaceBasis:
        return CochainSpaceBasis(self.algebra, n, self.cocycles(n))

    def is_cocycle(self, f: Cochain) -> bool:
        return delta(f, check=False).is_zero()

    def is_coboundary(self, f: Cochain) -> bool:
        return self.coboundaries(f.degree).contains(f.vector())

    def representatives(self, n: int) -> list[Cochain]:
        """Cocycles completing the coboundary basis to a cocycle basis, greedily in order."""
        if n not in self._reps:
            sl = self.slice(n)
            current = list(sl.B_basis.vectors)
            reps = []
            for z in sl.Z_basis.vectors:
                span = SubspaceBasis(sl.B_basis.ambient_dim, current, check=False)
                if not span.contains(z):
                    current.append(z)
                    reps.append(Cochain.from_vector(self.algebra, n, z))
            self._reps[n] = reps
            self._zb[n] = SubspaceBasis(sl.B_basis.ambient_dim, current, check=False)
        return self._reps[n]

    def class_coordinates(self, z: Cochain) -> list:
        """Coordinates of the class of ``z`` on ``representatives(deg z)``."""
        n = z.degree
        reps = self.representatives(n)
        coords = self._zb[n].coordinates(z.vector())
        if coords is None:
            raise ValueError(f"not a cocycle (degree {n})")
        return coords[len(coords) - len(reps):]

    def reduce(self, z: Cochain) -> Cochain:
        """Canonical representative of the class of a cocycle."""
        n = z.degree
        reps = self.representatives(n)
        coords = self.class_coordinates(z)
        out = Cochain.from_vector(self.algebra, n, [0] * self.algebra.dim ** (n + 1))
        for c, r in zip(coords, reps):
            if c:
                out = out + c * r
        return out

    def same_class(self, x: Cochain, y: Cochain) -> bool:
        return self.is_coboundary(x - y)

    def _require_cocycle(self, x: Cochain) -> None:
        if not self.is_cocycle(x):
            raise ValueError(f"degree-{x.degree} input is not a cocycle")

    def induced_cup(self, x: Cochain, y: Cochain) -> Cochain:
        self._require_cocycle(x)
        self._require_cocycle(y)
        return self.reduce(cup(x, y))

    def induced_bracket(self, x: Cochain, y: Cochain) -> Cochain:
        self._require_cocycle(x)
        self._require_cocycle(y)
        return self.reduce(bracket(x, y))

    def report(self, cap: int, with_representatives: bool = True) -> "CohomologyReport":
        if cap < 2:
            raise ValueError("max degree must be at least 2")
        rows = []
        reps = {}
        for n in range(1, cap + 1):
            sl = self.slice(n)
            row = {"n": n, "dimC": sl.dimC, "dimZ": sl.dimZ, "dimB": sl.dimB}
            if n >= 2:
                row["dimH"] = sl.dimH
                if with_representatives:
                    reps[n] = self.representatives(n)
            rows.append(row)
        mu = mu_cochain(self.algebra)
        checks = {"mu_is_cocycle": self.is_cocycle(mu), "mu_is_coboundary": self.is_coboundary(mu)}
        return CohomologyReport(self.algebra.name, cap, rows, reps, checks)


@dataclass
class CohomologyReport:
    algebra: str
    max_degree: int
    degrees: list[dict]
    representatives: dict[int, list[Cochain]]
    checks: dict

    def dims(self, key: str) -> dict[int, int]:
        return {row["n"]: row[key] for row in self.degrees if key in row}

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "max_degree": self.max_degree,
            "degrees": self.degrees,
            "representatives": {str(n): [c.to_dict() for c in reps]
                                for n, reps in sorted(self.representatives.items())},
            "checks": self.checks,
        }


def build_complex(A: HomAlgebra, cap: int) -> list[ComplexSlice]:
    if cap < 2:
        raise ValueError("max degree must be at least 2")
    cx = HochschildComplex(A)
    return [cx.slice(n) for n in range(1, cap + 1)]


def cohomology_report(A: HomAlgebra, cap: int, complex_: Optional[HochschildComplex] = None) -> CohomologyReport:
    cx = complex_ or HochschildComplex(A)
    return cx.report(cap)
