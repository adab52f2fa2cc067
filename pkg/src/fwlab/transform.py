"""Character-count transform over Z_p^n.

For a support set V in Z_p^n the transform returns, for every u and every
residue c, the number of v in V with u.v = c (mod p).  Taking the complex
character of bin c recovers the usual Walsh-Hadamard / Fourier coefficient,
but the histogram form stays in integers for every p.

Points of Z_p^n are encoded as ints whose base-p digits are the
coordinates, coordinate 0 least significant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge

DEFAULT_BUDGET = 1 << 26


@dataclass
class CountSpectrum:
    p: int
    n: int
    data: np.ndarray  # shape (p**n, p)

    def __getitem__(self, u: int) -> np.ndarray:
        return self.data[u]

    @property
    def zero_bin(self) -> np.ndarray:
        return self.data[:, 0]


def indicator(p: int, n: int, support) -> np.ndarray:
    size = p**n
    bitmap = np.zeros(size, dtype=bool)
    idx = np.asarray(support, dtype=np.int64).ravel()
    if idx.size and (idx.min() < 0 or idx.max() >= size):
        raise ValueError("support point outside Z_p^n")
    bitmap[idx] = True
    return bitmap


def char_count_transform(p: int, n: int, support, budget: int = DEFAULT_BUDGET) -> CountSpectrum:
    """Histogram transform of the indicator of ``support``.

    ``support`` is either an int array of encoded points or a boolean bitmap
    of length p**n.  One radix-p butterfly round per coordinate.
    """
    size = p**n
    if size > budget:
        raise DimensionTooLarge(f"p^n = {size} exceeds budget {budget}")
    support = np.asarray(support)
    bitmap = support if support.dtype == bool and support.shape == (size,) else indicator(p, n, support)

    dtype = np.int32 if int(bitmap.sum()) < 2**31 else np.int64
    data = np.zeros((size, p), dtype=dtype)
    data[:, 0] = bitmap

    if p == 2:
        # bins (even, odd): the butterfly is a plain add plus a bin swap
        for k in range(n):
            view = data.reshape(2 ** (n - k - 1), 2, 2**k, 2)
            lo = view[:, 0].copy()
            hi = view[:, 1]
            view[:, 0] = lo + hi
            view[:, 1] = lo + hi[..., ::-1]
        return CountSpectrum(p, n, data)

    for k in range(n):
        view = data.reshape(p ** (n - k - 1), p, p**k, p)
        old = view.copy()
        for i in range(p):
            acc = old[:, 0].copy()
            for j in range(1, p):
                acc += np.roll(old[:, j], (i * j) % p, axis=-1)
            view[:, i] = acc
    return CountSpectrum(p, n, data)


def dot_mod(p: int, n: int, u: int, v) -> np.ndarray:
    """u.v mod p for encoded points (v may be an array)."""
    v = np.asarray(v, dtype=np.int64)
    acc = np.zeros_like(v)
    for k in range(n):
        uk = (u // p**k) % p
        if uk:
            acc += uk * ((v // p**k) % p)
    return acc % p


def naive_count(p: int, n: int, support, u: int) -> np.ndarray:
    """Direct histogram of u.v over the support; oracle for the transform."""
    support = np.asarray(support)
    if support.dtype == bool:
        support = np.flatnonzero(support)
    return np.bincount(dot_mod(p, n, u, support), minlength=p)[:p]
