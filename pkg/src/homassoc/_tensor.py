"""Dense multilinear-map tensors over exact scalars.

A map ``A^{(x)k} -> A`` is an object ndarray of shape ``(d,)*k + (d,)``:
the first ``k`` axes index the inputs, the last one the output
coefficient.  ``compose`` is the single workhorse every cochain operation
is written with.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np


def exact_array(data, shape=None) -> np.ndarray:
    from .linalg import to_rational

    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    flat = arr.reshape(-1)
    for i, x in enumerate(flat):
        flat[i] = to_rational(x)
    return arr


def zeros(d: int, arity: int) -> np.ndarray:
    return np.zeros((d,) * (arity + 1), dtype=int).astype(object)


def arity(t: np.ndarray) -> int:
    return t.ndim - 1


def insert(t: np.ndarray, slot: int, s: np.ndarray) -> np.ndarray:
    """Feed the output of ``s`` into input ``slot`` of ``t``."""
    a, b = arity(t), arity(s)
    out = np.tensordot(t, s, axes=([slot], [b]))
    # axes of out: t-inputs without slot (a-1), t-output, s-inputs (b)
    perm = list(range(slot)) + list(range(a, a + b)) + list(range(slot, a - 1)) + [a - 1]
    return out.transpose(perm)


def compose(t: np.ndarray, pieces: Sequence[Optional[np.ndarray]]) -> np.ndarray:
    """``t(p_0(...), p_1(...), ...)``; ``None`` stands for a bare argument."""
    if len(pieces) != arity(t):
        raise ValueError(f"{len(pieces)} pieces for a map of arity {arity(t)}")
    out = t
    for slot in range(len(pieces) - 1, -1, -1):
        if pieces[slot] is not None:
            out = insert(out, slot, pieces[slot])
    return out


def postcompose(t: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Apply the linear map with matrix ``m`` (``m[k, l]``: e_k in m(e_l)) to the output."""
    return np.tensordot(t, m, axes=([t.ndim - 1], [1]))


def linear_piece(m: np.ndarray) -> np.ndarray:
    """The arity-1 tensor of a matrix in ``m[k, i]`` convention."""
    return np.ascontiguousarray(m.T)


def is_identity(m: np.ndarray) -> bool:
    n = m.shape[0]
    return all(m[i, j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ra, ca = a.shape
    rb, cb = b.shape
    return np.multiply.outer(a, b).transpose(0, 2, 1, 3).reshape(ra * rb, ca * cb)


def canonicalize(t: np.ndarray) -> np.ndarray:
    from .linalg import canonical

    out = np.empty(t.shape, dtype=object)
    src, dst = t.reshape(-1), out.reshape(-1)
    for i, x in enumerate(src):
        dst[i] = canonical(x)
    return out
