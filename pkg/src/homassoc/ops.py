"""Operations on equivariant cochains.

Degrees are cochain degrees (arity) throughout.  Partial compositions use
the shifted slot index: ``circ_i(f, g, i)`` plugs ``g`` into input ``i``
(0-based) of ``f`` and applies ``alpha^(deg g - 1)`` to every other input.

=============================  ====================================
operation                      result degree
=============================  ====================================
``delta(f)``                   ``deg f + 1``
``circ_i(f, g, i)``            ``deg f + deg g - 1``
``circ(f, g)``, ``bracket``    ``deg f + deg g - 1``
``cup(f, g)``                  ``deg f + deg g``
``homotopy(f, g, h)``          ``deg f + deg g + deg h - 2``
=============================  ====================================

``circ`` is not unital on the right: ``circ(f, id) == deg(f) * f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _tensor as T
from .algebra import HomAlgebra
from .cochain import Cochain, CochainError, is_equivariant


def sign(k: int) -> int:
    return -1 if k % 2 else 1


def _apow(A: HomAlgebra, t: int) -> Optional[np.ndarray]:
    """Arity-1 tensor of ``alpha^t``; None when it is the identity."""
    if t == 0 or A.alpha_is_identity:
        return None
    cache = A._cache.setdefault("pieces", {})
    if t not in cache:
        cache[t] = T.linear_piece(A.alpha_power(t))
    return cache[t]


def _twist_inputs(A: HomAlgebra, t: np.ndarray, power: int) -> np.ndarray:
    a = _apow(A, power)
    if a is None:
        return t
    return T.compose(t, [a] * T.arity(t))


def _common_algebra(*cochains: Cochain) -> HomAlgebra:
    A = cochains[0].algebra
    for c in cochains[1:]:
        if c.algebra is not A:
            raise CochainError("cochains belong to different algebras")
    return A


def delta(f: Cochain, check: bool = True) -> Cochain:
    """Twisted Hochschild coboundary of an equivariant cochain."""
    A = f.algebra
    n = f.degree
    if check:
        if not A.is_multiplicative:
            raise CochainError("coboundary needs a multiplicative twisting map")
        if not is_equivariant(f):
            raise CochainError("coboundary of a non-equivariant cochain")
    mu = A.mu
    edge = _apow(A, n - 1)
    out = T.compose(mu, [edge, f.coeffs])
    a1 = _apow(A, 1)
    for i in range(1, n + 1):
        pieces = [a1] * n
        pieces[i - 1] = mu
        term = T.compose(f.coeffs, pieces)
        out = out - term if i % 2 else out + term
    last = T.compose(mu, [f.coeffs, edge])
    out = out + sign(n + 1) * last
    return Cochain(A, out)


def circ_i(f: Cochain, g: Cochain, i: int) -> Cochain:
    A = _common_algebra(f, g)
    m, n = f.degree, g.degree
    if not 0 <= i < m:
        raise CochainError(f"slot {i} out of range for a degree-{m} cochain")
    pieces = [_apow(A, n - 1)] * m
    pieces[i] = g.coeffs
    return Cochain(A, T.compose(f.coeffs, pieces))


def circ(f: Cochain, g: Cochain) -> Cochain:
    A = _common_algebra(f, g)
    m, n = f.degree, g.degree
    out = None
    for i in range(m):
        term = circ_i(f, g, i).coeffs
        if (n - 1) * i % 2:
            term = -term
        out = term if out is None else out + term
    return Cochain(A, out)


def bracket(f: Cochain, g: Cochain) -> Cochain:
    m, n = f.degree, g.degree
    fg, gf = circ(f, g), circ(g, f)
    return fg - gf if (m - 1) * (n - 1) % 2 == 0 else fg + gf


def cup(f: Cochain, g: Cochain) -> Cochain:
    A = _common_algebra(f, g)
    m, n = f.degree, g.degree
    left = _twist_inputs(A, f.coeffs, n - 1)
    right = _twist_inputs(A, g.coeffs, m - 1)
    return Cochain(A, T.compose(A.mu, [left, right]))


@dataclass(frozen=True)
class HomotopyInput:
    f: Cochain
    g: Cochain
    h: Cochain

    def __post_init__(self):
        _common_algebra(self.f, self.g, self.h)

    @property
    def degrees(self) -> tuple[int, int, int]:
        return self.f.degree, self.g.degree, self.h.degree


def homotopy(f: Cochain, g: Cochain, h: Cochain) -> Cochain:
    """The cochain ``H`` whose coboundary measures the cochain-level Leibniz defect."""
    A = _common_algebra(f, g, h)
    m, n, p = f.degree, g.degree, h.degree
    out = T.zeros(A.dim, m + n + p - 2)
    for i in range(p - 1):
        hf = circ_i(h, f, i)
        for j in range(m + i, m + p - 1):
            term = circ_i(hf, g, j).coeffs
            if ((m - 1) * i + (n - 1) * j) % 2:
                out = out - term
            else:
                out = out + term
    return Cochain(A, out)


def homotopy_H(inp: HomotopyInput) -> Cochain:
    return homotopy(inp.f, inp.g, inp.h)


# -- correction terms relating delta((h o_{i-1} f) o_{j-1} g) to h, f, g ------

class _Pieces:
    """Argument builders for ``h(...)`` with the alpha powers spelled out."""

    def __init__(self, f: Cochain, g: Cochain, h: Cochain):
        self.A = A = _common_algebra(f, g, h)
        self.f, self.g, self.h = f, g, h
        self.m, self.n, self.p = f.degree, g.degree, h.degree
        self.N = self.m + self.n + self.p - 1
        self._cache: dict = {}

    def a(self, t):
        return _apow(self.A, t)

    def prod(self, t):
        a = self.A.alpha_power(t)
        return self.A.mu if t == 0 or self.A.alpha_is_identity else T.postcompose(self.A.mu, a)

    def fp(self, t):
        key = ("f", t)
        if key not in self._cache:
            self._cache[key] = _twist_inputs(self.A, self.f.coeffs, t)
        return self._cache[key]

    def gp(self, t):
        key = ("g", t)
        if key not in self._cache:
            self._cache[key] = _twist_inputs(self.A, self.g.coeffs, t)
        return self._cache[key]

    def left(self, t, x):
        return T.compose(self.A.mu, [self.a(t), x])

    def right(self, x, t):
        return T.compose(self.A.mu, [x, self.a(t)])

    def h_of(self, pieces):
        return T.compose(self.h.coeffs, pieces)


def _check_correction_range(m: int, p: int, i: int, j: int) -> None:
    if not (1 <= i <= p - 1 and m + i <= j <= m + p - 1):
        raise CochainError(f"(i, j) = ({i}, {j}) outside 1 <= i <= {p - 1}, {m} + i <= j <= {m + p - 1}")


def correction_terms(f: Cochain, g: Cochain, h: Cochain, i: int, j: int) -> tuple[Cochain, Cochain, Cochain]:
    """The three partial sums of ``delta((h o_{i-1} f) o_{j-1} g)`` split around f and g.

    ``i`` and ``j`` are 1-based argument positions, ``1 <= i <= p-1`` and
    ``m+i <= j <= m+p-1`` with ``(m, n, p)`` the degrees of ``(f, g, h)``.
    The first term collects everything up to and including the product
    entering f from the left, the second runs from f's right edge to g's
    left edge, the third from g's right edge to the end.  When f and g
    are cocycles the three add up to the coboundary exactly.
    """
    P = _Pieces(f, g, h)
    m, n, p, N = P.m, P.n, P.p, P.N
    _check_correction_range(m, p, i, j)
    s, t = m + n - 1, m + n - 2
    A = P.A
    a_s, a_t = P.a(s), P.a(t)
    mid = j - i - m
    tail = N - j - n

    inner = P.h_of([a_t] * (i - 1) + [P.fp(n - 1)] + [a_t] * mid + [P.gp(m - 1)] + [a_t] * tail)
    first = T.compose(A.mu, [P.a(N - 2), inner])
    for lam in range(1, i):
        term = P.h_of([a_s] * (lam - 1) + [P.prod(t)] + [a_s] * (i - lam - 1) + [P.fp(n)]
                      + [a_s] * mid + [P.gp(m)] + [a_s] * tail)
        first = first + sign(lam) * term
    first = first + sign(i) * P.h_of([a_s] * (i - 1) + [P.left(t, P.fp(n - 1))] + [a_s] * mid
                                     + [P.gp(m)] + [a_s] * tail)

    second = sign(m + i - 1) * P.h_of([a_s] * (i - 1) + [P.right(P.fp(n - 1), t)] + [a_s] * mid
                                      + [P.gp(m)] + [a_s] * tail)
    for lam in range(m + i, j):
        term = P.h_of([a_s] * (i - 1) + [P.fp(n)] + [a_s] * (lam - i - m) + [P.prod(t)]
                      + [a_s] * (j - lam - 1) + [P.gp(m)] + [a_s] * tail)
        second = second + sign(lam) * term
    second = second + sign(j) * P.h_of([a_s] * (i - 1) + [P.fp(n)] + [a_s] * mid
                                       + [P.left(t, P.gp(m - 1))] + [a_s] * tail)

    third = sign(j + n - 1) * P.h_of([a_s] * (i - 1) + [P.fp(n)] + [a_s] * mid
                                     + [P.right(P.gp(m - 1), t)] + [a_s] * tail)
    for lam in range(j + n, N):
        term = P.h_of([a_s] * (i - 1) + [P.fp(n)] + [a_s] * mid + [P.gp(m)]
                      + [a_s] * (lam - j - n) + [P.prod(t)] + [a_s] * (N - lam - 1))
        third = third + sign(lam) * term
    inner = P.h_of([a_t] * (i - 1) + [P.fp(n - 1)] + [a_t] * mid + [P.gp(m - 1)] + [a_t] * tail)
    third = third + sign(N) * T.compose(A.mu, [inner, P.a(N - 2)])

    return Cochain(A, first), Cochain(A, second), Cochain(A, third)


def first_term(f: Cochain, g: Cochain, h: Cochain, i: int, j: int) -> Cochain:
    """First correction term on the extended range ``0 <= i <= p-1``, ``m+i <= j <= m+p-1``."""
    m, p = f.degree, h.degree
    if i == 0 and m <= j <= m + p - 1:
        return cup(f, circ_i(h, g, j - m))
    return correction_terms(f, g, h, i, j)[0]


def second_term(f: Cochain, g: Cochain, h: Cochain, i: int, j: int) -> Cochain:
    """Second correction term, extended to ``j = m+i-1`` for ``1 <= i <= p``."""
    m, p = f.degree, h.degree
    if j == m + i - 1 and 1 <= i <= p:
        return sign(m + i - 1) * circ_i(h, cup(f, g), i - 1)
    return correction_terms(f, g, h, i, j)[1]


def third_term(f: Cochain, g: Cochain, h: Cochain, i: int, j: int) -> Cochain:
    """Third correction term, extended to ``j = m+p`` for ``1 <= i <= p``."""
    m, n, p = f.degree, g.degree, h.degree
    if j == m + p and 1 <= i <= p:
        return sign(m + n + p - 1) * cup(circ_i(h, f, i - 1), g)
    return correction_terms(f, g, h, i, j)[2]


def telescoping_defect(f: Cochain, g: Cochain, h: Cochain, i: int, j: int) -> Cochain:
    """``delta(h)`` evaluated with the outputs of f and g spliced in.

    ``first(i, j) + (-1)^(m-1) second(i+1, j) + (-1)^(m+n) third(i+1, j+1)``
    equals this cochain on ``0 <= i <= p-1``, ``m+i <= j <= m+p-1``; it
    vanishes when ``h`` is a cocycle.
    """
    P = _Pieces(f, g, h)
    m, n, N = P.m, P.n, P.N
    t = m + n - 2
    a_t = P.a(t)
    dh = delta(h, check=False).coeffs
    return Cochain(P.A, T.compose(dh, [a_t] * i + [P.fp(n - 1)] + [a_t] * (j - i - m)
                                  + [P.gp(m - 1)] + [a_t] * (N - j - n)))


def telescoping_sum(f: Cochain, g: Cochain, h: Cochain, i: int, j: int) -> Cochain:
    m, n = f.degree, g.degree
    return (first_term(f, g, h, i, j)
            + sign(m - 1) * second_term(f, g, h, i + 1, j)
            + sign(m + n) * third_term(f, g, h, i + 1, j + 1))


def leibniz_defect(f: Cochain, g: Cochain, h: Cochain) -> Cochain:
    """``h o (f u g) - (-1)^(n(p-1)) (h o f) u g - f u (h o g)``."""
    n, p = g.degree, h.degree
    return circ(h, cup(f, g)) - sign(n * (p - 1)) * cup(circ(h, f), g) - cup(f, circ(h, g))


def bracket_leibniz_defect(f: Cochain, g: Cochain, h: Cochain) -> Cochain:
    """``[f u g, h] - [f, h] u g - (-1)^(m(p-1)) f u [g, h]``."""
    m, p = f.degree, h.degree
    return (bracket(cup(f, g), h) - cup(bracket(f, h), g)
            - sign(m * (p - 1)) * cup(f, bracket(g, h)))


def leibniz_sign(m: int, n: int, p: int) -> int:
    """Sign relating the bracket Leibniz defect to ``delta(homotopy(f, g, h))``.

    Expanding the brackets and using the composition/cup compatibility
    turns the bracket defect into ``-(-1)^((m+n-1)(p-1)) * leibniz_defect``,
    and ``delta(H) = (-1)^((m-1)n) * leibniz_defect``.
    """
    return -sign((m + n - 1) * (p - 1) + (m - 1) * n)
