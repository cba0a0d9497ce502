"""Explicit colorings: the geometric block coloring and the dyadic coloring.

The block coloring with c colors uses ratio ``p = (2c - 2) / c`` and gives
block ``[p^k, p^(k+1))`` color ``k mod c``.  Membership is decided with
integer cross-multiplication only: ``m`` lies in block ``k`` iff
``m * c^k >= (2c-2)^k`` and ``m * c^(k+1) < (2c-2)^(k+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Coloring, FamilyParams, Verdict, verify_coloring

__all__ = [
    "GammaParams",
    "gamma_block",
    "gamma_color",
    "gamma_block_starts",
    "gamma_blocks",
    "gamma_prefix",
    "doubling_color",
    "doubling_prefix",
    "verify_gamma_against",
]


@dataclass(frozen=True)
class GammaParams:
    """Block coloring with ``c >= 3`` colors; ratio is ``num / den``."""

    c: int

    def __post_init__(self) -> None:
        if not isinstance(self.c, int) or self.c < 3:
            raise ValueError(f"the block coloring needs c >= 3, got {self.c!r}")

    @property
    def num(self) -> int:
        return 2 * self.c - 2

    @property
    def den(self) -> int:
        return self.c


def gamma_block(gp: GammaParams, m: int) -> int:
    """The unique k with ``p^k <= m < p^(k+1)``."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    k = 0
    hi_num, hi_den = gp.num, gp.den  # p^(k+1)
    while m * hi_den >= hi_num:
        k += 1
        hi_num *= gp.num
        hi_den *= gp.den
    return k


def gamma_color(gp: GammaParams, m: int) -> int:
    return gamma_block(gp, m) % gp.c


def gamma_block_starts(gp: GammaParams, n: int) -> list[int]:
    """First integer ``ceil(p^k)`` of each block k whose start is <= n + 1.

    Consecutive equal entries mean the block between them holds no integer.
    The last entry is the first block start beyond n.
    """
    starts = []
    pk_num, pk_den = 1, 1
    while True:
        s = -(-pk_num // pk_den)
        starts.append(s)
        if s > n:
            return starts
        pk_num *= gp.num
        pk_den *= gp.den


def gamma_blocks(gp: GammaParams, n: int) -> np.ndarray:
    """Block index of every m in ``[1, n]`` (array index ``m - 1``)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    starts = gamma_block_starts(gp, n)
    out = np.empty(n, dtype=np.int64)
    for k in range(len(starts) - 1):
        lo, hi = starts[k], min(starts[k + 1], n + 1)
        out[lo - 1 : hi - 1] = k
    return out


def gamma_prefix(gp: GammaParams, n: int) -> Coloring:
    """The block coloring restricted to ``[1, n]``."""
    return Coloring(gp.c, tuple((gamma_blocks(gp, n) % gp.c).tolist()))


def doubling_color(m: int) -> int:
    """``floor(log2 m) mod 2``; y and 2y always land in different colors."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return (m.bit_length() - 1) % 2


def doubling_prefix(n: int) -> Coloring:
    m = np.arange(1, n + 1, dtype=np.int64)
    lengths = np.zeros(n, dtype=np.int64)
    # bit_length without a Python loop: count halvings
    v = m.copy()
    while v.any():
        lengths += v > 0
        v >>= 1
    return Coloring(2, tuple(((lengths - 1) % 2).tolist()))


def verify_gamma_against(gp: GammaParams, params: FamilyParams, n: int) -> Verdict:
    return verify_coloring(params, gamma_prefix(gp, n))
