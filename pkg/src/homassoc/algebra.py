"""Finite-dimensional hom-associative algebras given by structure constants.

Conventions (0-based in arrays, e_1..e_d in prose):

* ``mu[i, j, k]`` is the coefficient of ``e_k`` in ``mu(e_i, e_j)``;
* ``alpha[k, i]`` is the coefficient of ``e_k`` in ``alpha(e_i)``, i.e.
  the columns of ``alpha`` are the images of the basis vectors.

``alpha`` is never assumed invertible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import _tensor as T
from .linalg import canonical, format_rational, to_rational


class AlgebraError(ValueError):
    """Malformed or invalid algebra data."""


class ValidationError(AlgebraError):
    """Well-formed data that violates an algebraic requirement."""


@dataclass
class ValidationReport:
    hom_associativity: list[tuple[int, int, int]] = field(default_factory=list)
    multiplicativity: list[tuple[int, int]] = field(default_factory=list)

    @property
    def hom_associative(self) -> bool:
        return not self.hom_associativity

    @property
    def multiplicative(self) -> bool:
        return not self.multiplicativity

    @property
    def valid(self) -> bool:
        return self.hom_associative and self.multiplicative

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "hom_associativity_violations": [list(t) for t in self.hom_associativity],
            "multiplicativity_violations": [list(t) for t in self.multiplicativity],
        }


class HomAlgebra:
    """Structure constants ``(mu, alpha)`` on ``K^dim``; immutable."""

    def __init__(self, mu, alpha, basis: Optional[Sequence[str]] = None, name: str = "algebra"):
        mu = T.exact_array(mu)
        alpha = T.exact_array(alpha)
        if mu.ndim != 3 or len(set(mu.shape)) != 1:
            raise AlgebraError(f"mu must be a d x d x d array, got shape {mu.shape}")
        d = mu.shape[0]
        if d < 1:
            raise AlgebraError("dimension must be at least 1")
        if alpha.shape != (d, d):
            raise AlgebraError(f"alpha must be {d} x {d}, got shape {alpha.shape}")
        if basis is None:
            basis = [f"e{i + 1}" for i in range(d)]
        basis = [str(b) for b in basis]
        if len(basis) != d:
            raise AlgebraError(f"{len(basis)} basis labels for dimension {d}")
        mu.flags.writeable = False
        alpha.flags.writeable = False
        self.name = name
        self.dim = d
        self.basis = tuple(basis)
        self.mu = mu
        self.alpha = alpha
        self._powers = {0: _identity(d), 1: alpha}
        self._report: Optional[ValidationReport] = None
        self._cache: dict = {}
        self.alpha_is_identity = T.is_identity(alpha)

    def __repr__(self) -> str:
        return f"HomAlgebra(name={self.name!r}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomAlgebra):
            return NotImplemented
        return (self.name == other.name and self.basis == other.basis
                and np.array_equal(self.mu, other.mu) and np.array_equal(self.alpha, other.alpha))

    __hash__ = object.__hash__

    def alpha_power(self, t: int) -> np.ndarray:
        if t < 0:
            raise ValueError("negative power of alpha")
        if t not in self._powers:
            prev = self.alpha_power(t - 1)
            p = T.canonicalize(self.alpha.dot(prev))
            p.flags.writeable = False
            self._powers[t] = p
        return self._powers[t]

    def _vector(self, a) -> list:
        a = [to_rational(x) for x in a]
        if len(a) != self.dim:
            raise ValueError(f"vector of length {len(a)} in dimension {self.dim}")
        return a

    def evaluate_mu(self, a, b) -> list:
        a, b = self._vector(a), self._vector(b)
        d = self.dim
        out = [0] * d
        for i in range(d):
            if not a[i]:
                continue
            for j in range(d):
                if not b[j]:
                    continue
                c = a[i] * b[j]
                for k in range(d):
                    if self.mu[i, j, k]:
                        out[k] += c * self.mu[i, j, k]
        return [canonical(x) for x in out]

    def evaluate_alpha_power(self, a, t: int = 1) -> list:
        v = self._vector(a)
        if t < 0:
            raise ValueError("negative power of alpha")
        d = self.dim
        for _ in range(t):
            v = [canonical(sum(self.alpha[k, i] * v[i] for i in range(d) if v[i])) for k in range(d)]
        return v

    def basis_vector(self, i: int) -> list:
        return [int(k == i) for k in range(self.dim)]

    def validate(self) -> ValidationReport:
        if self._report is None:
            self._report = _validate(self)
        return self._report

    @property
    def is_multiplicative(self) -> bool:
        return self.validate().multiplicative

    def check(self, allow_non_multiplicative: bool = False) -> "HomAlgebra":
        rep = self.validate()
        if rep.hom_associativity:
            i, j, l = rep.hom_associativity[0]
            raise ValidationError(
                f"{self.name}: hom-associativity fails on basis triple "
                f"({self.basis[i]}, {self.basis[j]}, {self.basis[l]}) "
                f"and {len(rep.hom_associativity) - 1} more")
        if rep.multiplicativity and not allow_non_multiplicative:
            i, j = rep.multiplicativity[0]
            raise ValidationError(
                f"{self.name}: alpha is not multiplicative on ({self.basis[i]}, {self.basis[j]})")
        return self

    def permuted(self, perm: Sequence[int]) -> "HomAlgebra":
        """The same algebra in the reordered basis ``new e_r = old e_{perm[r]}``."""
        p = list(perm)
        if sorted(p) != list(range(self.dim)):
            raise ValueError("not a permutation")
        mu = self.mu[np.ix_(p, p, p)]
        alpha = self.alpha[np.ix_(p, p)]
        return HomAlgebra(mu, alpha, [self.basis[i] for i in p], name=self.name)

    def with_constant(self, i: int, j: int, k: int, value) -> "HomAlgebra":
        mu = self.mu.copy()
        mu[i, j, k] = to_rational(value)
        return HomAlgebra(mu, self.alpha, self.basis, name=self.name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.dim,
            "basis": list(self.basis),
            "mu": [[[format_rational(x) for x in row] for row in plane] for plane in self.mu.tolist()],
            "alpha": [[format_rational(x) for x in row] for row in self.alpha.tolist()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HomAlgebra":
        if not isinstance(data, dict):
            raise AlgebraError("algebra JSON must be an object")
        for key in ("dimension", "mu", "alpha"):
            if key not in data:
                raise AlgebraError(f"algebra JSON: missing field {key!r}")
        d = data["dimension"]
        if not isinstance(d, int) or d < 1:
            raise AlgebraError(f"algebra JSON: 'dimension' must be a positive integer, got {d!r}")
        mu, alpha = data["mu"], data["alpha"]
        _check_shape("mu", mu, (d, d, d))
        _check_shape("alpha", alpha, (d, d))
        try:
            return cls(mu, alpha, data.get("basis"), name=data.get("name", "algebra"))
        except (TypeError, ValueError) as exc:
            raise AlgebraError(f"algebra JSON: {exc}") from exc


def _check_shape(field_name: str, value, shape: tuple[int, ...], path: str = "") -> None:
    where = f"{field_name}{path}"
    if not shape:
        if isinstance(value, (list, dict)) or isinstance(value, bool):
            raise AlgebraError(f"algebra JSON: {where} must be a rational string")
        try:
            to_rational(value)
        except (TypeError, ValueError, ZeroDivisionError):
            raise AlgebraError(f"algebra JSON: {where} = {value!r} is not a rational") from None
        return
    if not isinstance(value, list) or len(value) != shape[0]:
        raise AlgebraError(f"algebra JSON: {where} must be a list of length {shape[0]}")
    for i, item in enumerate(value):
        _check_shape(field_name, item, shape[1:], f"{path}[{i}]")


def _identity(d: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=int).astype(object)
    for i in range(d):
        m[i, i] = 1
    m.flags.writeable = False
    return m


def _validate(A: HomAlgebra) -> ValidationReport:
    d = A.dim
    e = [A.basis_vector(i) for i in range(d)]
    ae = [A.evaluate_alpha_power(v, 1) for v in e]
    prod = [[A.evaluate_mu(e[i], e[j]) for j in range(d)] for i in range(d)]
    rep = ValidationReport()
    for i in range(d):
        for j in range(d):
            for l in range(d):
                left = A.evaluate_mu(ae[i], prod[j][l])
                right = A.evaluate_mu(prod[i][j], ae[l])
                if left != right:
                    rep.hom_associativity.append((i, j, l))
    for i in range(d):
        for j in range(d):
            if A.evaluate_alpha_power(prod[i][j], 1) != A.evaluate_mu(ae[i], ae[j]):
                rep.multiplicativity.append((i, j))
    return rep


def load_algebra(path, check: bool = True, allow_non_multiplicative: bool = False) -> HomAlgebra:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    A = HomAlgebra.from_dict(data)
    if check:
        A.check(allow_non_multiplicative)
    return A


def dump_algebra(A: HomAlgebra, path) -> None:
    Path(path).write_text(json.dumps(A.to_dict(), indent=2) + "\n")


def is_associative(mu) -> bool:
    mu = np.asarray(mu, dtype=object)
    d = mu.shape[0]
    # (e_i e_j) e_l versus e_i (e_j e_l), coefficientwise
    left = np.tensordot(mu, mu, axes=([2], [0]))       # i j l k
    right = np.tensordot(mu, mu, axes=([2], [1]))      # j l i k
    right = right.transpose(2, 0, 1, 3)
    return bool(np.array_equal(left, right)) and d > 0


def yau_twist(assoc: HomAlgebra, hom, name: Optional[str] = None) -> HomAlgebra:
    """``(A, hom . mu, hom)`` for an associative ``A`` and an algebra map ``hom``."""
    hom = T.exact_array(hom)
    d = assoc.dim
    if hom.shape != (d, d):
        raise AlgebraError(f"homomorphism must be {d} x {d}, got shape {hom.shape}")
    if not assoc.alpha_is_identity:
        raise ValidationError("the input algebra must be untwisted (alpha = identity)")
    if not is_associative(assoc.mu):
        raise ValidationError("the input algebra is not associative")
    plain = HomAlgebra(assoc.mu, hom, assoc.basis)
    bad = plain.validate().multiplicativity
    if bad:
        i, j = bad[0]
        raise ValidationError(f"not an algebra homomorphism: fails on ({assoc.basis[i]}, {assoc.basis[j]})")
    mu = T.canonicalize(T.postcompose(assoc.mu, hom))
    return HomAlgebra(mu, hom, assoc.basis, name=name or f"{assoc.name}-twisted")


def associative(mu, basis=None, name: str = "algebra") -> HomAlgebra:
    mu = T.exact_array(mu)
    return HomAlgebra(mu, _identity(mu.shape[0]), basis, name=name)


def example_2d() -> HomAlgebra:
    """Two-dimensional hom-associative algebra with a singular twist.

    ``e1 e1 = e1`` and every other product of basis vectors is ``e2``;
    ``alpha(e1) = e1 - e2``, ``alpha(e2) = 0``.
    """
    mu = [[[1, 0], [0, 1]], [[0, 1], [0, 1]]]
    alpha = [[1, 0], [-1, 0]]
    return HomAlgebra(mu, alpha, ["e1", "e2"], name="hom-assoc-2d")


def dual_numbers() -> HomAlgebra:
    """``K[x]/(x^2)`` on the basis ``(1, x)``, untwisted."""
    mu = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    return associative(mu, ["1", "x"], name="dual-numbers")


def split_pair() -> HomAlgebra:
    """``K x K`` with orthogonal idempotents; a separable algebra."""
    mu = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    return associative(mu, ["p", "q"], name="k-times-k")


def twisted_dual_numbers(c=-1) -> HomAlgebra:
    """Yau twist of the dual numbers by ``1 -> 1, x -> c x``."""
    return yau_twist(dual_numbers(), [[1, 0], [0, c]], name=f"dual-numbers-twist(c={format_rational(to_rational(c))})")


BUILTIN = {
    "hom-assoc-2d": example_2d,
    "dual-numbers": dual_numbers,
    "k-times-k": split_pair,
    "dual-numbers-twist": twisted_dual_numbers,
}
