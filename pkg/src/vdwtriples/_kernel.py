"""Compiled backtracking kernel.

Positions 1..n are colored in increasing order.  Every position keeps a
bitmask domain; a constraint is "the three members of a triple are not all
color c".  Whenever a domain becomes a single color, each triple through that
position with another single-color member of the same color removes that
color from the third member (unit propagation).  Undo goes through a trail of
``(position, old mask)`` pairs.
"""

from __future__ import annotations

import numba
import numpy as np

COLORABLE = 1
UNSATISFIABLE = 0
CUTOFF = 2


def build_incidence(a: int, b: int, cap: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Per-position lists of the other two members of each triple with z <= cap.

    Entries for a position are sorted by the triple's largest element so the
    kernel can stop at the first triple beyond its current horizon.
    """
    xmax = max((cap - 2) // b, 0)
    x = np.arange(1, xmax + 1, dtype=np.int64)
    dcount = (cap - b * x) // 2
    xs = np.repeat(x, dcount)
    # d runs 1..dcount[x] within each x block
    offsets = np.repeat(np.cumsum(dcount) - dcount, dcount)
    ds = np.arange(xs.size, dtype=np.int64) - offsets + 1
    ys = a * xs + ds
    zs = b * xs + 2 * ds

    pos = np.concatenate((xs, ys, zs))
    q1 = np.concatenate((ys, xs, xs))
    q2 = np.concatenate((zs, zs, ys))
    key = np.concatenate((zs, zs, zs))
    order = np.lexsort((key, pos))
    pos, q1, q2, key = pos[order], q1[order], q2[order], key[order]
    start = np.zeros(cap + 2, dtype=np.int64)
    np.cumsum(np.bincount(pos, minlength=cap + 1)[: cap + 1], out=start[1:])
    return start, q1, q2, key


@numba.njit(cache=True)
def _propagate(p, dom, queue, inc_start, inc_q1, inc_q2, inc_z, n, tpos, told, tp):
    qh = 0
    qt = 0
    queue[qt] = p
    qt += 1
    while qh < qt:
        p = queue[qh]
        qh += 1
        pb = dom[p]
        for k in range(inc_start[p], inc_start[p + 1]):
            if inc_z[k] > n:
                break
            q1 = inc_q1[k]
            q2 = inc_q2[k]
            if dom[q1] == pb:
                tgt = q2
            elif dom[q2] == pb:
                tgt = q1
            else:
                continue
            dt = dom[tgt]
            if dt & pb:
                tpos[tp] = tgt
                told[tp] = dt
                tp += 1
                dt &= ~pb
                dom[tgt] = dt
                if dt == 0:
                    return False, tp
                if dt & (dt - 1) == 0:
                    queue[qt] = tgt
                    qt += 1
    return True, tp


@numba.njit(cache=True)
def search(inc_start, inc_q1, inc_q2, inc_z, n, r, budget, path, pinned, symmetry):
    """Depth-first search for the lexicographically least valid coloring.

    ``path`` is a starting point: the first descent follows it as far as it
    stays feasible, skipping every lexicographically smaller branch.  The
    first ``pinned`` levels may only take their ``path`` color.
    Returns ``(status, colors[1..n], nodes)``.
    """
    full = (1 << r) - 1
    dom = np.full(n + 2, full, np.int64)
    cap = n * (r + 1) + 8
    tpos = np.zeros(cap, np.int64)
    told = np.zeros(cap, np.int64)
    tp = 0
    queue = np.zeros(n + 2, np.int64)
    color = np.full(n + 1, -1, np.int64)
    nxt = np.zeros(n + 2, np.int64)
    used = np.zeros(n + 2, np.int64)
    mark = np.zeros(n + 2, np.int64)
    npath = path.shape[0]
    nodes = 0

    if r == 1:
        for p in range(1, n + 1):
            ok, tp = _propagate(p, dom, queue, inc_start, inc_q1, inc_q2, inc_z, n, tpos, told, tp)
            if not ok:
                return UNSATISFIABLE, color[1:], nodes

    on_path = npath > 0
    m = 1
    if on_path:
        nxt[1] = path[0]
    while True:
        if m > n:
            return COLORABLE, color[1:], nodes
        c = nxt[m]
        limit = r
        if symmetry and used[m] + 1 < limit:
            limit = used[m] + 1
        if m <= pinned and path[m - 1] + 1 < limit:
            limit = path[m - 1] + 1
        dm = dom[m]
        while c < limit and not (dm >> c) & 1:
            c += 1
        if c >= limit:
            nxt[m] = 0
            m -= 1
            if m == 0:
                return UNSATISFIABLE, color[1:], nodes
            while tp > mark[m]:
                tp -= 1
                dom[tpos[tp]] = told[tp]
            nxt[m] = color[m] + 1
            color[m] = -1
            on_path = False
            continue
        nodes += 1
        if budget >= 0 and nodes > budget:
            return CUTOFF, color[1:], nodes
        if on_path and (m > npath or c != path[m - 1]):
            on_path = False
        mark[m] = tp
        color[m] = c
        nxt[m] = c + 1
        bit = 1 << c
        ok = True
        if dom[m] != bit:
            tpos[tp] = m
            told[tp] = dom[m]
            tp += 1
            dom[m] = bit
            ok, tp = _propagate(m, dom, queue, inc_start, inc_q1, inc_q2, inc_z, n, tpos, told, tp)
        if ok:
            used[m + 1] = max(used[m], c + 1)
            m += 1
            nxt[m] = path[m - 1] if on_path and m <= npath else 0
        else:
            while tp > mark[m]:
                tp -= 1
                dom[tpos[tp]] = told[tp]
            color[m] = -1
