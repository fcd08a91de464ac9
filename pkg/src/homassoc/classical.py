"""Brute-force classical Hochschild cohomology of an associative algebra.

Independent reference for the untwisted case: no twisting map appears,
cochains are all multilinear maps, the coboundary is assembled entry by
entry from basis tuples, and ranks come from sympy.
"""

from __future__ import annotations

from itertools import product

import sympy


def _coboundary_matrix(mu, d: int, n: int) -> sympy.Matrix:
    # column (J, l): the map sending e_J to e_l; row (I, k): coefficient of e_k at e_I
    def col(J, l):
        return sum(x * d ** (n - 1 - r) for r, x in enumerate(J)) * d + l

    def row(I, k):
        return sum(x * d ** (n - r) for r, x in enumerate(I)) * d + k

    M = sympy.zeros(d ** (n + 2), d ** (n + 1))
    for I in product(range(d), repeat=n + 1):
        for J in product(range(d), repeat=n):
            for l in range(d):
                c = col(J, l)
                # e_{I0} . f(e_{I1..In})
                if tuple(I[1:]) == J:
                    for k in range(d):
                        M[row(I, k), c] += mu[I[0]][l][k]
                # f(..., e_{Ir} e_{Ir+1}, ...)
                for r in range(n):
                    head, tail = I[:r], I[r + 2:]
                    if tuple(head) != J[:r] or tuple(tail) != J[r + 1:]:
                        continue
                    coeff = mu[I[r]][I[r + 1]][J[r]]
                    if coeff:
                        M[row(I, l), c] += (-1) ** (r + 1) * coeff
                # f(e_{I0..In-1}) . e_{In}
                if tuple(I[:n]) == J:
                    for k in range(d):
                        M[row(I, k), c] += (-1) ** (n + 1) * mu[l][I[n]][k]
    return M


def classical_dimensions(mu, max_degree: int) -> dict[int, dict[str, int]]:
    """``{n: {"dimZ", "dimB", "dimH"}}`` for ``2 <= n <= max_degree``.

    ``mu`` is the nested ``d x d x d`` list of structure constants
    (``mu[i][j][k]`` = coefficient of ``e_k`` in ``e_i e_j``).
    """
    mu = [[[sympy.Rational(str(x)) for x in row] for row in plane] for plane in mu]
    d = len(mu)
    ranks = {n: _coboundary_matrix(mu, d, n).rank() for n in range(1, max_degree + 1)}
    out = {}
    for n in range(2, max_degree + 1):
        dimZ = d ** (n + 1) - ranks[n]
        dimB = ranks[n - 1]
        out[n] = {"dimZ": dimZ, "dimB": dimB, "dimH": dimZ - dimB}
    return out
