"""Exact maximum balanced biclique by branch and bound, for small instances."""

from __future__ import annotations

import numpy as np

from .graphs import BipartiteGraph, Biclique

__all__ = ["exact_mbb", "contains_biclique", "DEFAULT_SIZE_GUARD"]

DEFAULT_SIZE_GUARD = 24


def _check_guard(graph: BipartiteGraph, size_limit: int | None) -> None:
    guard = DEFAULT_SIZE_GUARD if size_limit is None else int(size_limit)
    small = min(graph.n_u, graph.n_v)
    if small > guard:
        raise ValueError(
            f"smaller side has {small} vertices, above the exponential-cost guard "
            f"{guard}; pass size_limit to override"
        )


def _row_masks(adj: np.ndarray) -> list[int]:
    """Neighborhood of each row vertex as a bitmask over column vertices."""
    masks = []
    for row in adj:
        m = 0
        for j in np.flatnonzero(row):
            m |= 1 << int(j)
        masks.append(m)
    return masks


def _best_size(adj: np.ndarray) -> int:
    """Largest s such that some s rows share at least s common neighbors.

    Depth-first search over row subsets in decreasing-degree order.  At a node
    with chosen set S and common neighborhood N, no descendant can beat
    min(|S| + remaining candidates, |N|).
    """
    a, b = adj.shape
    if a == 0 or b == 0:
        return 0
    masks = _row_masks(adj)
    degs = adj.sum(axis=1)
    order = sorted(range(a), key=lambda i: (-int(degs[i]), i))
    full = (1 << b) - 1
    best = 0

    def visit(start: int, s_size: int, hood: int) -> None:
        nonlocal best
        here = min(s_size, hood.bit_count())
        if here > best:
            best = here
        for pos in range(start, a):
            if min(s_size + (a - pos), hood.bit_count()) <= best:
                break
            child = hood & masks[order[pos]]
            size = child.bit_count()
            if size == 0:
                continue
            if min(s_size + 1 + (a - pos - 1), size) <= best:
                continue
            visit(pos + 1, s_size + 1, child)

    visit(0, 0, full)
    return best


def _lex_smallest_left(adj: np.ndarray, target: int) -> tuple[list[int], int]:
    """First size-``target`` row set, in lexicographic order, whose common
    neighborhood has at least ``target`` columns.  Assumes one exists."""
    a, b = adj.shape
    masks = _row_masks(adj)
    full = (1 << b) - 1
    found: list[int] = []
    found_hood = 0

    def visit(start: int, chosen: list[int], hood: int) -> bool:
        nonlocal found, found_hood
        if len(chosen) == target:
            found = list(chosen)
            found_hood = hood
            return True
        for v in range(start, a):
            if a - v < target - len(chosen):
                break
            child = hood & masks[v]
            if child.bit_count() < target:
                continue
            chosen.append(v)
            if visit(v + 1, chosen, child):
                return True
            chosen.pop()
        return False

    if not visit(0, [], full):
        raise RuntimeError("no realization found at the optimal size; search is inconsistent")
    return found, found_hood


def _lowest_bits(mask: int, count: int) -> list[int]:
    out = []
    j = 0
    while len(out) < count:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def exact_mbb(graph: BipartiteGraph, size_limit: int | None = None) -> Biclique:
    """Maximum balanced biclique, exactly.

    Exponential-time search guarded to min-side <= 24 unless ``size_limit``
    overrides.  Ties among maximum bicliques are broken by the
    lexicographically smallest sorted left set, then the lowest-index right
    realization, so results are deterministic.
    """
    _check_guard(graph, size_limit)
    if graph.num_edges == 0:
        return Biclique.empty()
    # Search for the optimal size on the smaller side, where enumeration is cheapest.
    if graph.n_v < graph.n_u:
        size = _best_size(graph.dense().T.copy())
    else:
        size = _best_size(graph.dense())
    if size == 0:
        return Biclique.empty()
    # Realize it with the tie-break defined on the original left side.
    left, hood = _lex_smallest_left(graph.dense(), size)
    right = _lowest_bits(hood, size)
    return Biclique.from_graph(graph, left, right)


def contains_biclique(graph: BipartiteGraph, r: int, size_limit: int | None = None) -> bool:
    """Decision version: does the graph contain a balanced biclique of size >= r?

    Early-exits on the first witness instead of completing the optimization.
    """
    r = int(r)
    if r <= 0:
        return True
    _check_guard(graph, size_limit)
    if r > min(graph.n_u, graph.n_v):
        return False
    adj = graph.dense().T.copy() if graph.n_v < graph.n_u else graph.dense()
    a, b = adj.shape
    masks = _row_masks(adj)
    degs = adj.sum(axis=1)
    order = sorted(range(a), key=lambda i: (-int(degs[i]), i))
    full = (1 << b) - 1

    def visit(start: int, s_size: int, hood: int) -> bool:
        if min(s_size, hood.bit_count()) >= r:
            return True
        for pos in range(start, a):
            if min(s_size + (a - pos), hood.bit_count()) < r:
                break
            child = hood & masks[order[pos]]
            if min(s_size + 1 + (a - pos - 1), child.bit_count()) < r:
                continue
            if visit(pos + 1, s_size + 1, child):
                return True
        return False

    return visit(0, 0, full)
