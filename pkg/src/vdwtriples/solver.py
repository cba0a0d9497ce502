"""Exact search for n(a,b;r).

``decide`` answers whether some r-coloring of [1, n] avoids monochromatic
(a,b)-triples, returning the lexicographically least canonical witness when
one exists.  ``find_n`` walks n upward until the answer flips.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernel
from .core import MAX_N, Coloring, FamilyParams, enumerate_triples, verify_coloring

__all__ = [
    "Status",
    "SearchConfig",
    "SearchOutcome",
    "FindResult",
    "decide",
    "find_n",
    "brute_force_decide",
    "BRUTE_FORCE_CAP",
]

log = logging.getLogger(__name__)

BRUTE_FORCE_CAP = 2**24


class Status(str, Enum):
    COLORABLE = "colorable"
    UNSATISFIABLE = "unsatisfiable"
    CUTOFF = "cutoff"


_STATUS = {
    _kernel.COLORABLE: Status.COLORABLE,
    _kernel.UNSATISFIABLE: Status.UNSATISFIABLE,
    _kernel.CUTOFF: Status.CUTOFF,
}


@dataclass(frozen=True)
class SearchConfig:
    """Search limits.

    ``node_budget`` caps decision nodes per ``decide`` call (per subtree when
    ``parallel_width > 1``).  ``incremental`` lets ``find_n`` start each n
    from the previous witness instead of from scratch.
    """

    max_n: int = 10_000
    node_budget: int | None = None
    symmetry_breaking: bool = True
    parallel_width: int = 1
    incremental: bool = False

    def __post_init__(self) -> None:
        if self.max_n < 1 or self.max_n > MAX_N:
            raise ValueError(f"max_n must lie in [1, {MAX_N}], got {self.max_n}")
        if self.node_budget is not None and self.node_budget < 0:
            raise ValueError("node_budget must be nonnegative")
        if self.parallel_width < 1:
            raise ValueError("parallel_width must be at least 1")


@dataclass(frozen=True)
class SearchOutcome:
    status: Status
    witness: Coloring | None
    nodes: int


@dataclass(frozen=True)
class FindResult:
    """Result of ``find_n``.

    ``value`` is n(a,b;r) when known.  Otherwise the search only showed
    n(a,b;r) > ``lower``; ``cutoff`` says whether a node budget (rather than
    ``max_n``) stopped it.  ``witness`` colors ``[1, lower]`` validly.
    """

    params: FamilyParams
    r: int
    value: int | None
    lower: int
    witness: Coloring
    nodes: int
    cutoff: bool = False

    @property
    def exact(self) -> bool:
        return self.value is not None


class _Incidence:
    """Triple incidence lists, regrown by doubling as n increases."""

    def __init__(self, params: FamilyParams, n: int) -> None:
        self.params = params
        self.cap = 0
        self.arrays: tuple[np.ndarray, ...] = ()
        self.ensure(n)

    def ensure(self, n: int) -> None:
        if n <= self.cap:
            return
        cap = max(n, min(2 * self.cap, MAX_N))
        self.arrays = _kernel.build_incidence(self.params.a, self.params.b, cap)
        self.cap = cap


def _check_args(params: FamilyParams, r: int, n: int) -> None:
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must lie in [1, {MAX_N}], got {n}")
    if r > 62:
        raise ValueError("at most 62 colors fit the domain bitmask")


def _run(inc: _Incidence, r: int, n: int, budget: int | None, path, pinned: int, symmetry: bool):
    inc.ensure(n)
    path_arr = np.asarray(path, dtype=np.int64)
    status, colors, nodes = _kernel.search(
        *inc.arrays, n, r, -1 if budget is None else budget, path_arr, pinned, symmetry
    )
    return _STATUS[int(status)], colors, int(nodes)


def _checked(params: FamilyParams, witness: Coloring) -> Coloring:
    verdict = verify_coloring(params, witness)
    if not verdict.valid:
        raise RuntimeError(f"solver witness for {params}, r={witness.r} fails: {verdict.violation}")
    return witness


def _outcome(params, r, status, colors, nodes, verify=True) -> SearchOutcome:
    if status is not Status.COLORABLE:
        return SearchOutcome(status, None, nodes)
    witness = Coloring(r, tuple(colors.tolist()))
    if verify:
        _checked(params, witness)
    return SearchOutcome(status, witness, nodes)


def _prefixes(r: int, depth: int, symmetry: bool):
    """Color prefixes in lexicographic order (first-appearance order if symmetric)."""
    if not symmetry:
        yield from itertools.product(range(r), repeat=depth)
        return

    def grow(prefix, used):
        if len(prefix) == depth:
            yield tuple(prefix)
            return
        for c in range(min(r, used + 1)):
            prefix.append(c)
            yield from grow(prefix, max(used, c + 1))
            prefix.pop()

    yield from grow([], 0)


def _subtree(args):
    a, b, r, n, budget, prefix, symmetry = args
    inc = _Incidence(FamilyParams(a, b), n)
    status, colors, nodes = _run(inc, r, n, budget, prefix, len(prefix), symmetry)
    return status, colors, nodes


def _decide_parallel(params: FamilyParams, r: int, n: int, cfg: SearchConfig) -> SearchOutcome:
    depth = 1
    while depth < n and sum(1 for _ in _prefixes(r, depth, cfg.symmetry_breaking)) < 4 * cfg.parallel_width:
        depth += 1
    jobs = [
        (params.a, params.b, r, n, cfg.node_budget, p, cfg.symmetry_breaking)
        for p in _prefixes(r, depth, cfg.symmetry_breaking)
    ]
    total = 0
    cut = False
    with ProcessPoolExecutor(max_workers=cfg.parallel_width) as pool:
        futures = [pool.submit(_subtree, job) for job in jobs]
        # subtrees are consumed in prefix order, so the first colorable one
        # holds the lexicographically least witness
        for i, fut in enumerate(futures):
            status, colors, nodes = fut.result()
            total += nodes
            if status is Status.COLORABLE:
                for rest in futures[i + 1 :]:
                    rest.cancel()
                return _outcome(params, r, status, colors, total)
            cut = cut or status is Status.CUTOFF
    return SearchOutcome(Status.CUTOFF if cut else Status.UNSATISFIABLE, None, total)


def decide(params: FamilyParams, r: int, n: int, cfg: SearchConfig | None = None) -> SearchOutcome:
    """Is there an r-coloring of [1, n] with no monochromatic (a,b)-triple?"""
    cfg = cfg or SearchConfig()
    _check_args(params, r, n)
    if cfg.parallel_width > 1 and n > 1:
        return _decide_parallel(params, r, n, cfg)
    inc = _Incidence(params, n)
    status, colors, nodes = _run(inc, r, n, cfg.node_budget, (), 0, cfg.symmetry_breaking)
    return _outcome(params, r, status, colors, nodes)


def find_n(params: FamilyParams, r: int, cfg: SearchConfig | None = None) -> FindResult:
    """Least n whose r-colorings all contain a monochromatic triple.

    Every n from b + 2 upward is decided in turn; the all-zero coloring of
    [1, b + 1] is the starting witness since no triple fits there.  With ``cfg.incremental`` each
    search starts from the previous lexicographically least witness: all
    smaller colorings already failed on a shorter interval, so skipping them
    gives the same answers as a fresh search.
    """
    cfg = cfg or SearchConfig()
    _check_args(params, r, 1)
    if cfg.max_n < params.b + 2:
        raise ValueError(f"max_n={cfg.max_n} is below b + 2 = {params.b + 2}; no triple fits")
    inc = _Incidence(params, min(cfg.max_n, 4 * (params.b + 2)))
    witness = Coloring(r, (0,) * (params.b + 1))
    total = 0
    for n in range(params.b + 2, cfg.max_n + 1):
        if cfg.incremental:
            status, colors, nodes = _run(
                inc, r, n, cfg.node_budget, witness.colors, 0, cfg.symmetry_breaking
            )
            out = _outcome(params, r, status, colors, nodes, verify=False)
        elif cfg.parallel_width > 1:
            out = decide(params, r, n, cfg)
        else:
            status, colors, nodes = _run(inc, r, n, cfg.node_budget, (), 0, cfg.symmetry_breaking)
            out = _outcome(params, r, status, colors, nodes, verify=False)
        total += out.nodes
        if out.status is Status.UNSATISFIABLE:
            log.info("n(%d,%d;%d) = %d after %d nodes", params.a, params.b, r, n, total)
            return FindResult(params, r, n, n - 1, _checked(params, witness), total)
        if out.status is Status.CUTOFF:
            log.info("search for %s, r=%d cut off at n=%d", params, r, n)
            return FindResult(params, r, None, n - 1, _checked(params, witness), total, cutoff=True)
        assert out.witness is not None
        witness = out.witness
    return FindResult(params, r, None, cfg.max_n, _checked(params, witness), total)


def brute_force_decide(params: FamilyParams, r: int, n: int) -> bool:
    """Try every r-coloring of [1, n]; independent of the search kernel."""
    if r < 1 or n < 1:
        raise ValueError("r and n must be positive")
    if r**n > BRUTE_FORCE_CAP:
        raise ValueError(f"r**n = {r**n} exceeds the brute-force cap {BRUTE_FORCE_CAP}")
    triples = enumerate_triples(params, n)
    if not triples:
        return True
    tx = np.array([t.x - 1 for t in triples])
    ty = np.array([t.y - 1 for t in triples])
    tz = np.array([t.z - 1 for t in triples])
    weights = r ** np.arange(n, dtype=np.int64)
    total = r**n
    chunk = 1 << 14
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // weights) % r
        cx, cy, cz = digits[:, tx], digits[:, ty], digits[:, tz]
        mono = ((cx == cy) & (cy == cz)).any(axis=1)
        if not mono.all():
            return True
    return False
