"""Greedy biclique extraction from dense subgraphs.

The cleaning potential of a graph at size target r is W = F - 2 r Q, where F
counts edges and Q non-edges.  Deleting a vertex whose edge degree is at most
2r times its non-edge degree never decreases W, and once no such vertex
remains a balanced biclique of order r can be read off greedily whenever the
survivors are large enough.  When W >= 2 n r for a host-side bound n, they
always are.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import BipartiteGraph, Biclique, induced_counts

__all__ = [
    "CleaningTrace",
    "ExtractionPreconditionError",
    "density_clean",
    "construct_biclique",
    "greedy_extract",
    "best_extractable_r",
]


class ExtractionPreconditionError(ValueError):
    """The cleaned graph is too small for the requested construction."""


@dataclass(frozen=True)
class CleaningTrace:
    """Deletion log of one cleaning run.

    ``deleted`` holds ("U", i) or ("V", j) pairs in deletion order, indices in
    the input graph.  ``potentials`` is W after each deletion; the invariant
    is that it never drops below ``initial_potential``.
    """

    n_u: int
    n_v: int
    r: int
    initial_potential: int
    deleted: tuple[tuple[str, int], ...]
    potentials: tuple[int, ...]

    def surviving_left(self) -> tuple[int, ...]:
        gone = {i for side, i in self.deleted if side == "U"}
        return tuple(i for i in range(self.n_u) if i not in gone)

    def surviving_right(self) -> tuple[int, ...]:
        gone = {j for side, j in self.deleted if side == "V"}
        return tuple(j for j in range(self.n_v) if j not in gone)


def density_clean(graph: BipartiteGraph, r: int) -> tuple[BipartiteGraph, CleaningTrace]:
    """Repeatedly delete vertices with edge degree <= 2r x non-edge degree.

    Ties go to the lowest global index (U indices first, then V offset by
    n_u), so runs are deterministic.  Every survivor strictly violates the
    deletion test.  Returns the survivor subgraph relabeled to contiguous
    indices plus the full trace.
    """
    r = int(r)
    if r < 1:
        raise ValueError(f"size target r must be at least 1, got {r}")
    adj = graph.dense()
    n_u, n_v = graph.n_u, graph.n_v
    alive_u = np.ones(n_u, dtype=bool)
    alive_v = np.ones(n_v, dtype=bool)
    deg_u = adj.sum(axis=1).astype(np.int64)
    deg_v = adj.sum(axis=0).astype(np.int64)
    live_u = n_u
    live_v = n_v
    edges = int(deg_u.sum())
    potential = edges - 2 * r * (live_u * live_v - edges)
    initial = potential

    deleted: list[tuple[str, int]] = []
    potentials: list[int] = []
    while True:
        non_u = live_v - deg_u
        non_v = live_u - deg_v
        bad_u = np.flatnonzero(alive_u & (deg_u <= 2 * r * non_u))
        bad_v = np.flatnonzero(alive_v & (deg_v <= 2 * r * non_v))
        if bad_u.size == 0 and bad_v.size == 0:
            break
        first_u = int(bad_u[0]) if bad_u.size else None
        first_v = int(bad_v[0]) if bad_v.size else None
        # Global ordering: U-vertex i sits at index i, V-vertex j at n_u + j.
        if first_u is not None and (first_v is None or first_u < n_u + first_v):
            i = first_u
            gain = -int(deg_u[i]) + 2 * r * int(live_v - deg_u[i])
            alive_u[i] = False
            live_u -= 1
            row = adj[i] & alive_v
            deg_v = deg_v - row
            deg_u[i] = 0
            deleted.append(("U", i))
        else:
            j = first_v
            gain = -int(deg_v[j]) + 2 * r * int(live_u - deg_v[j])
            alive_v[j] = False
            live_v -= 1
            col = adj[:, j] & alive_u
            deg_u = deg_u - col
            deg_v[j] = 0
            deleted.append(("V", j))
        potential += gain
        potentials.append(potential)

    survivors_u = np.flatnonzero(alive_u)
    survivors_v = np.flatnonzero(alive_v)
    sub = (
        adj[np.ix_(survivors_u, survivors_v)]
        if survivors_u.size and survivors_v.size
        else np.zeros((survivors_u.size, survivors_v.size), dtype=bool)
    )
    cleaned = BipartiteGraph(survivors_u.size, survivors_v.size, sub)
    trace = CleaningTrace(
        n_u=n_u,
        n_v=n_v,
        r=r,
        initial_potential=initial,
        deleted=tuple(deleted),
        potentials=tuple(potentials),
    )
    return cleaned, trace


def _greedy_pick(adj: np.ndarray, r: int) -> tuple[list[int], np.ndarray] | None:
    """Take the r lowest-index rows, drop their non-neighbors on the right,
    and keep the r lowest-index survivors.  None when fewer than r survive."""
    left = list(range(r))
    keep = np.ones(adj.shape[1], dtype=bool)
    for i in left:
        keep &= adj[i]
    survivors = np.flatnonzero(keep)
    if survivors.size < r:
        return None
    return left, survivors[:r]


def construct_biclique(cleaned: BipartiteGraph, r: int) -> Biclique:
    """Read a balanced biclique of order r off a density-cleaned graph.

    Requires at least r left vertices and 2r right vertices; after cleaning,
    each selected left vertex misses fewer than a 1/(2r) fraction of the right
    side, so at least half of it survives.  Raises
    ExtractionPreconditionError when the sizes make that argument impossible.
    """
    r = int(r)
    if r < 1:
        raise ValueError(f"size target r must be at least 1, got {r}")
    if cleaned.n_u < r or cleaned.n_v < 2 * r:
        raise ExtractionPreconditionError(
            f"cleaned graph ({cleaned.n_u}, {cleaned.n_v}) is below the required ({r}, {2 * r})"
        )
    picked = _greedy_pick(cleaned.dense(), r)
    if picked is None:
        raise ExtractionPreconditionError(
            "survivor deficit: the graph was not cleaned for this size target"
        )
    left, right = picked
    return Biclique.from_graph(cleaned, left, right)


def greedy_extract(graph: BipartiteGraph, r: int, n: int) -> Biclique | None:
    """Clean at size target r, then construct; certain to succeed when
    F - 2 r Q >= 2 n r with n bounding both sides of the input graph.

    Outside that regime this is best effort and may return None.
    """
    r = int(r)
    n = int(n)
    if r < 1:
        raise ValueError(f"size target r must be at least 1, got {r}")
    if n < max(graph.n_u, graph.n_v):
        raise ValueError(f"host bound n={n} is below the graph's sides ({graph.n_u}, {graph.n_v})")
    edges = graph.num_edges
    non_edges = graph.num_non_edges
    guaranteed = edges - 2 * r * non_edges >= 2 * n * r
    cleaned, trace = density_clean(graph, r)
    if guaranteed:
        # The potential argument forces both survivor sides to at least 2r here.
        local = construct_biclique(cleaned, r)
    else:
        if cleaned.n_u < r or cleaned.n_v < r:
            return None
        picked = _greedy_pick(cleaned.dense(), r)
        if picked is None:
            return None
        local = Biclique.from_graph(cleaned, picked[0], picked[1])
    left_map = trace.surviving_left()
    right_map = trace.surviving_right()
    return Biclique.from_graph(
        graph,
        [left_map[i] for i in local.left],
        [right_map[j] for j in local.right],
    )


def best_extractable_r(graph: BipartiteGraph, n: int) -> int:
    """Largest r with F - 2 r Q >= 2 n r, i.e. floor(F / (2Q + 2n)); 0 when none."""
    n = int(n)
    if n < 1:
        raise ValueError("host bound n must be positive")
    edges = graph.num_edges
    non_edges = graph.num_non_edges
    return edges // (2 * non_edges + 2 * n)
