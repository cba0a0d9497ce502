"""(a,b)-triples: construction, enumeration and monochromatic checks.

An (a,b)-triple is ``(x, a*x + d, b*x + 2*d)`` with ``x, d >= 1``.  Integers
are 1-based throughout; colors are ``0 .. r-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "MAX_N",
    "FamilyParams",
    "Triple",
    "Coloring",
    "Verdict",
    "MalformedColoringError",
    "make_triple",
    "is_triple_of",
    "triples_ending_at",
    "enumerate_triples",
    "count_triples",
    "verify_coloring",
    "embed_triple",
]

# keeps b*x + 2*d inside int64 for every b the CLI accepts
MAX_N = 2**31

# above this size the run-length verifier replaces the per-z scan
_SCAN_LIMIT = 2000


class MalformedColoringError(ValueError):
    """A coloring with an entry outside ``0 .. r-1`` (or no entries)."""


@dataclass(frozen=True)
class FamilyParams:
    """The pair (a, b), 1 <= a <= b, naming a family of triples."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise TypeError("a and b must be integers")
        if not 1 <= self.a <= self.b:
            raise ValueError(f"need 1 <= a <= b, got a={self.a}, b={self.b}")

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True, order=True)
class Triple:
    x: int
    y: int
    z: int
    d: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class Coloring:
    """A total map ``[1, n] -> {0, ..., r-1}``; ``colors[m-1]`` colors ``m``."""

    r: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if self.r < 1:
            raise MalformedColoringError(f"r must be positive, got {self.r}")
        if not colors:
            raise MalformedColoringError("empty coloring")
        lo, hi = min(colors), max(colors)
        if lo < 0 or hi >= self.r:
            bad = next(i for i, c in enumerate(colors, 1) if not 0 <= c < self.r)
            raise MalformedColoringError(
                f"color {colors[bad - 1]} at position {bad} is outside 0..{self.r - 1}"
            )

    @property
    def n(self) -> int:
        return len(self.colors)

    def __getitem__(self, m: int) -> int:
        if not 1 <= m <= len(self.colors):
            raise IndexError(m)
        return self.colors[m - 1]

    @cached_property
    def padded(self) -> np.ndarray:
        """Colors as an int64 array indexed by ``m`` (slot 0 is unused)."""
        arr = np.empty(self.n + 1, dtype=np.int64)
        arr[0] = -1
        arr[1:] = self.colors
        arr.flags.writeable = False
        return arr

    def restrict(self, n: int) -> Coloring:
        return Coloring(self.r, self.colors[:n])


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification; ``violation`` is None when valid."""

    violation: Triple | None = None

    @property
    def valid(self) -> bool:
        return self.violation is None

    def __bool__(self) -> bool:
        return self.valid


def make_triple(params: FamilyParams, x: int, d: int) -> Triple:
    if x < 1 or d < 1:
        raise ValueError(f"x and d must be positive, got x={x}, d={d}")
    return Triple(x, params.a * x + d, params.b * x + 2 * d, d)


def is_triple_of(params: FamilyParams, t: Triple) -> bool:
    return (
        t.x >= 1
        and t.d >= 1
        and t.y == params.a * t.x + t.d
        and t.z == params.b * t.x + 2 * t.d
    )


def triples_ending_at(params: FamilyParams, m: int) -> list[tuple[int, int]]:
    """All generators (x, d) with ``b*x + 2*d == m``, by increasing x."""
    b = params.b
    return [(x, (m - b * x) // 2) for x in range(1, (m - 2) // b + 1) if (m - b * x) % 2 == 0]


def enumerate_triples(params: FamilyParams, n: int) -> list[Triple]:
    """Every triple with largest element at most n, ordered by (x, d)."""
    out = []
    for x in range(1, (n - 2) // params.b + 1):
        for d in range(1, (n - params.b * x) // 2 + 1):
            out.append(make_triple(params, x, d))
    return out


def count_triples(params: FamilyParams, n: int) -> int:
    return sum((n - params.b * x) // 2 for x in range(1, (n - 2) // params.b + 1))


def verify_coloring(params: FamilyParams, coloring: Coloring) -> Verdict:
    """Look for a monochromatic triple inside ``[1, coloring.n]``.

    The reported violation is the first one in (z, x) order.  Small
    colorings are scanned triple by triple; large ones go through the
    run-length search, which is fast for block colorings.
    """
    if coloring.n > MAX_N:
        raise ValueError(f"n={coloring.n} exceeds {MAX_N}")
    if coloring.n <= _SCAN_LIMIT:
        return Verdict(_first_violation_scan(params, coloring.padded))
    return Verdict(_first_violation_runs(params, coloring.padded))


def _first_violation_scan(params: FamilyParams, col: np.ndarray) -> Triple | None:
    a, b = params.a, params.b
    colors = col.tolist()
    for z in range(b + 2, len(colors)):
        cz = colors[z]
        for x, d in triples_ending_at(params, z):
            if colors[x] == cz and colors[a * x + d] == cz:
                return Triple(x, a * x + d, z, d)
    return None


def _first_violation_runs(params: FamilyParams, col: np.ndarray) -> Triple | None:
    """Run-length search: O(n * runs) vectorized work.

    For a fixed x the middle element y ranges over a run I of x's color and
    then ``z = 2*y + (b - 2a)*x`` sweeps a stride-2 progression; the smallest
    same-colored z of the right parity is one ``searchsorted`` away.
    """
    a, b = params.a, params.b
    n = len(col) - 1
    change = np.flatnonzero(col[2:] != col[1:-1]) + 2
    starts = np.concatenate(([1], change))
    ends = np.concatenate((change - 1, [n]))

    by_color: dict[int, np.ndarray] = {}
    by_parity: dict[tuple[int, int], np.ndarray] = {}
    for c in np.unique(col[1:]).tolist():
        where = np.flatnonzero(col == c)
        by_color[c] = where
        by_parity[c, 0] = where[where % 2 == 0]
        by_parity[c, 1] = where[where % 2 == 1]

    best: tuple[int, int] | None = None
    for s, e in zip(starts.tolist(), ends.tolist()):
        c = int(col[s])
        xs = by_color[c]
        xs = xs[: np.searchsorted(xs, (e - 1) // a, side="right")]
        if xs.size == 0:
            continue
        t = (b - 2 * a) * xs
        lo = np.maximum(s, a * xs + 1)
        hi = np.minimum(e, (n - t) // 2)
        ok = lo <= hi
        if not ok.any():
            continue
        xs, t, lo, hi = xs[ok], t[ok], lo[ok], hi[ok]
        zlo = 2 * lo + t
        zhi = 2 * hi + t
        par = t % 2
        for q in (0, 1):
            sel = par == q
            pos = by_parity[c, q]
            if not sel.any() or pos.size == 0:
                continue
            k = np.searchsorted(pos, zlo[sel])
            inside = k < pos.size
            zstar = np.where(inside, pos[np.minimum(k, pos.size - 1)], n + 1)
            hit = inside & (zstar <= zhi[sel])
            if not hit.any():
                continue
            zs, xh = zstar[hit], xs[sel][hit]
            j = np.lexsort((xh, zs))[0]
            cand = (int(zs[j]), int(xh[j]))
            if best is None or cand < best:
                best = cand
    if best is None:
        return None
    z, x = best
    d = (z - b * x) // 2
    return Triple(x, a * x + d, z, d)


def embed_triple(base: FamilyParams, i: int, t: Triple) -> Triple:
    """Read a (a+i, b+2i)-triple as a (a, b)-triple with generator i*x + d."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    shifted = FamilyParams(base.a + i, base.b + 2 * i)
    if not is_triple_of(shifted, t):
        raise ValueError(f"{t.as_tuple()} with d={t.d} is not a {shifted}-triple")
    return Triple(t.x, t.y, t.z, i * t.x + t.d)


def first_monochromatic(triples: Iterable[Triple], colors: Sequence[int]) -> Triple | None:
    """Brute-force helper: first triple in ``triples`` with one color (1-based colors)."""
    for t in triples:
        if colors[t.x - 1] == colors[t.y - 1] == colors[t.z - 1]:
            return t
    return None
