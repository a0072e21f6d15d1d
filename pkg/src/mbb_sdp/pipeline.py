"""End-to-end approximation pipeline and the experiment harness.

The pipeline searches for the largest target size k at which the strong
relaxation is feasible, rounds the solution at that k, runs a combinatorial
greedy baseline, and returns the largest verified biclique found.  Because
the relaxation's mass rows are equalities, feasibility is not a priori
monotone in k; the default search is a descending scan with geometrically
growing skips that rescans any gap it jumped over, and it records every
non-monotone anomaly it observes.  A pure binary search sits behind a flag.
"""

from __future__ import annotations

import csv
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exact import exact_mbb
from .graphs import (
    RNG_ALGORITHM,
    BipartiteGraph,
    Biclique,
    complete_bipartite,
    empty_bipartite,
    parse_graph,
    planted_instance,
    verify_biclique,
)
from .rounding import RoundingParams, RoundingRun, diagnostics, round_many
from .sdp import (
    FEASIBLE,
    INFEASIBLE,
    SOLVER_LIMIT,
    FeasibilityOutcome,
    SolverConfig,
    build_strong_relaxation,
    gram_to_vectors,
    solve_feasibility,
)

__all__ = [
    "PipelineConfig",
    "RunReport",
    "approximate_mbb",
    "greedy_baseline",
    "run_experiment",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("instance", "n", "planted_k", "found_size", "exact_size", "method", "time")

SKIPPED_BY_BOUND = "skipped-by-degree-bound"


@dataclass
class PipelineConfig:
    """Pipeline knobs: search mode and range, solver and rounding settings,
    method toggles, and where the CLI should write the report."""

    search: str = "scan"
    k_lo: int = 1
    k_hi: int | None = None
    solver: SolverConfig = field(default_factory=SolverConfig)
    trials: int | None = None
    seed: int = 0
    tau: float | None = None
    use_baseline: bool = True
    use_exact: bool = False
    exact_size_limit: int | None = None
    degree_prefilter: bool = True
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.search not in ("scan", "binary"):
            raise ValueError(f"search mode must be 'scan' or 'binary', got {self.search!r}")
        if self.k_lo < 1:
            raise ValueError("k_lo must be at least 1")
        if self.k_hi is not None and self.k_hi < self.k_lo:
            raise ValueError("k_hi must be at least k_lo")


@dataclass
class RunReport:
    """Everything one pipeline run decided and found.

    ``timings`` is wall-clock seconds and deliberately excluded from
    serialization unless asked for, so reports are byte-stable across runs.
    """

    instance: dict
    config: dict
    search: dict
    rounding: dict | None
    diagnostics: dict | None
    baseline: dict | None
    exact: dict | None
    best: dict
    rng_algorithm: str = RNG_ALGORITHM
    timings: dict = field(default_factory=dict)

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "instance": self.instance,
            "config": self.config,
            "search": self.search,
            "rounding": self.rounding,
            "diagnostics": self.diagnostics,
            "baseline": self.baseline,
            "exact": self.exact,
            "best": self.best,
            "rng_algorithm": self.rng_algorithm,
        }
        if include_timings:
            out["timings"] = self.timings
        return out

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2, sort_keys=True) + "\n"


def greedy_baseline(graph: BipartiteGraph) -> Biclique:
    """Greedy baseline: repeatedly take the left vertex with the most
    neighbors inside the current common neighborhood, stop when the balanced
    size would decrease, and return the best prefix.

    Deterministic (ties go to the lowest index); returns at least a single
    edge whenever the graph has one.
    """
    adj = graph.dense()
    if graph.num_edges == 0:
        return Biclique.empty()
    hood = np.ones(graph.n_v, dtype=bool)
    unpicked = np.ones(graph.n_u, dtype=bool)
    picked: list[int] = []
    best_size = 0
    best_realization: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())
    score = 0
    while unpicked.any() and hood.any():
        gains = (adj & hood).sum(axis=1)
        gains[~unpicked] = -1
        u = int(gains.argmax())
        if gains[u] <= 0:
            break
        new_hood = hood & adj[u]
        new_score = min(len(picked) + 1, int(new_hood.sum()))
        if new_score < score:
            break
        picked.append(u)
        unpicked[u] = False
        hood = new_hood
        score = new_score
        size = min(len(picked), int(hood.sum()))
        if size > best_size:
            best_size = size
            right = tuple(int(j) for j in np.flatnonzero(hood)[:size])
            best_realization = (tuple(picked[:size]), right)
    if best_size == 0:
        return Biclique.empty()
    return Biclique.from_graph(graph, best_realization[0], best_realization[1])


def _lowest_edge(graph: BipartiteGraph) -> Biclique:
    i, j = min(graph.edges)
    return Biclique.from_graph(graph, [i], [j])


def _degree_cap(graph: BipartiteGraph) -> int:
    """Largest k the degree sequences allow the strong relaxation.

    The degree and mass rows force every vertex mass to satisfy
    c_i <= min(1, (deg_i / k)^2), so a feasible k obeys
    k <= sum_side min(1, (deg/k)^2) on both sides.  Indicator solutions sit
    exactly on this bound, so no feasible k is ever pruned.
    """
    left = graph.degrees_left().astype(float)
    right = graph.degrees_right().astype(float)
    cap = 0
    for k in range(1, min(graph.n_u, graph.n_v) + 1):
        left_total = np.minimum(1.0, (left / k) ** 2).sum()
        right_total = np.minimum(1.0, (right / k) ** 2).sum()
        if k <= min(left_total, right_total):
            cap = k
    return cap


class _KSearch:
    """Memoized feasibility tester that records one entry per examined k."""

    def __init__(self, graph: BipartiteGraph, config: PipelineConfig):
        self.graph = graph
        self.config = config
        self.records: dict[int, dict] = {}
        self.solutions: dict[int, FeasibilityOutcome] = {}
        self.degree_cap = _degree_cap(graph) if config.degree_prefilter else None

    def feasible(self, k: int) -> bool:
        if k in self.records:
            return self.records[k]["status"] == FEASIBLE
        if self.degree_cap is not None and k > self.degree_cap:
            self.records[k] = {"k": k, "status": SKIPPED_BY_BOUND}
            return False
        problem = build_strong_relaxation(self.graph, k)
        outcome = solve_feasibility(problem, self.config.solver)
        self.records[k] = {
            "k": k,
            "status": outcome.status,
            "max_violation": outcome.max_violation,
            "iterations": outcome.iterations,
        }
        if outcome.feasible:
            self.solutions[k] = outcome
        return outcome.feasible

    def per_k(self) -> list[dict]:
        return [self.records[k] for k in sorted(self.records)]

    def anomalies(self, k_star: int | None) -> list[int]:
        """ks that tested infeasible below some feasible k (non-monotone)."""
        feasible_ks = [k for k, rec in self.records.items() if rec["status"] == FEASIBLE]
        if not feasible_ks:
            return []
        top = max(feasible_ks)
        return sorted(
            k
            for k, rec in self.records.items()
            if k < top and rec["status"] in (INFEASIBLE, SOLVER_LIMIT)
        )


def _scan_descending(search: _KSearch, k_lo: int, k_hi: int) -> int | None:
    """Descending scan with geometric skips.

    The primary descent starts at k_hi with skips that double (capped near
    k/3).  Once some k tests feasible, every gap the descent skipped over
    above it is retested exhaustively (tests are memoized), so the returned
    k is certified: all larger candidates either tested infeasible or fell
    to the degree bound.  When nothing tests feasible only the visited ks
    are certified, which the per-k records in the report make explicit.
    """
    best: int | None = None
    tested: list[int] = []
    k = k_hi
    step = 1
    while k >= k_lo:
        if search.feasible(k):
            best = k
            break
        tested.append(k)
        step = min(step * 2, max(1, k // 3))
        k -= step
    if best is None:
        return None
    # Gaps between consecutive tested points, and between the last tested
    # point and the feasible k, walked largest-first.
    gaps: list[tuple[int, int]] = []
    upper: int | None = None
    for t in tested:
        if upper is not None and t + 1 <= upper - 1:
            gaps.append((t + 1, upper - 1))
        upper = t
    if upper is not None and best + 1 <= upper - 1:
        gaps.append((best + 1, upper - 1))
    for lo, hi in sorted(gaps, reverse=True):
        lo = max(lo, best + 1)
        for candidate in range(hi, lo - 1, -1):
            if search.feasible(candidate):
                best = candidate
                break
    return best


def _binary_search(search: _KSearch, k_lo: int, k_hi: int) -> int | None:
    best: int | None = None
    lo, hi = k_lo, k_hi
    while lo <= hi:
        mid = (lo + hi + 1) // 2
        if search.feasible(mid):
            best = mid
            lo = mid + 1
        else:
            hi = mid - 1
    return best


def approximate_mbb(
    graph: BipartiteGraph, config: PipelineConfig | None = None
) -> tuple[Biclique, RunReport]:
    """Full pipeline: k-search on the strong relaxation, rounding at the best
    k, greedy baseline, optional exact oracle; returns the largest verified
    biclique and a report of everything examined.

    Always returns at least a single edge when the graph has one.
    """
    config = config or PipelineConfig()
    t_start = time.perf_counter()
    n = max(graph.n_u, graph.n_v)
    config_echo = {
        "search": config.search,
        "k_lo": config.k_lo,
        "k_hi": config.k_hi,
        "eps_feas": config.solver.eps_feas,
        "max_iterations": config.solver.max_iterations,
        "trials": config.trials,
        "seed": config.seed,
        "tau": config.tau,
        "use_baseline": config.use_baseline,
        "use_exact": config.use_exact,
        "degree_prefilter": config.degree_prefilter,
    }
    instance_meta = {
        "n_u": graph.n_u,
        "n_v": graph.n_v,
        "edges": graph.num_edges,
    }
    timings: dict[str, float] = {}

    search_meta: dict = {"per_k": [], "k_star": None, "anomalies": []}
    rounding_dict = None
    diag_dict = None
    candidates: list[tuple[str, Biclique]] = []

    t0 = time.perf_counter()
    k_star = None
    run: RoundingRun | None = None
    if graph.num_edges > 0:
        k_hi = min(graph.n_u, graph.n_v)
        if config.k_hi is not None:
            k_hi = min(k_hi, config.k_hi)
        searcher = _KSearch(graph, config)
        if config.k_lo <= k_hi:
            if config.search == "binary":
                k_star = _binary_search(searcher, config.k_lo, k_hi)
            else:
                k_star = _scan_descending(searcher, config.k_lo, k_hi)
        search_meta = {
            "per_k": searcher.per_k(),
            "k_star": k_star,
            "anomalies": searcher.anomalies(k_star),
        }
        timings["search"] = time.perf_counter() - t0

        if k_star is not None:
            t0 = time.perf_counter()
            outcome = searcher.solutions[k_star]
            solution = gram_to_vectors(outcome.gram, sides=(graph.n_u, graph.n_v))
            params = RoundingParams.for_instance(
                n, k_star, trials=config.trials, seed=config.seed, tau=config.tau
            )
            run = round_many(solution, graph, params)
            rounding_dict = {
                "k": k_star,
                "trials": params.trials,
                "tau": params.tau,
                "tau_clamped": params.tau_clamped,
                "ratio": params.ratio,
                "r_target": run.outcomes[0].r_target if run.outcomes else None,
                "event_count": run.event_count,
                "extraction_count": run.extraction_count,
                "best": run.best.as_dict() if run.best else None,
            }
            diag = diagnostics(
                solution, graph, params.ratio, tau=params.tau, feas_tol=config.solver.eps_feas
            )
            diag_dict = {
                "k": diag.k,
                "tau": diag.tau,
                "tau_clamped": diag.tau_clamped,
                "left_heavy_count": len(diag.left_heavy),
                "right_heavy_count": len(diag.right_heavy),
                "pair_mass": diag.pair_mass,
                "pair_mass_floor": diag.pair_mass_floor,
                "pair_mass_ok": diag.pair_mass_ok,
                "positive_pairs": diag.positive_pairs,
                "positive_pairs_floor": diag.positive_pairs_floor,
                "positive_pairs_ok": diag.positive_pairs_ok,
                "positive_pairs_within_edges": diag.positive_pairs_within_edges,
                "analysis_r": diag.analysis_r,
                "expected_edges_floor": diag.expected_edges_floor,
                "expected_non_edges_ceiling": diag.expected_non_edges_ceiling,
                "guarantee_value": diag.guarantee_value,
            }
            if run.best is not None:
                candidates.append(("sdp-rounding", run.best))
            timings["rounding"] = time.perf_counter() - t0

    baseline_dict = None
    if config.use_baseline:
        t0 = time.perf_counter()
        base = greedy_baseline(graph)
        timings["baseline"] = time.perf_counter() - t0
        baseline_dict = base.as_dict()
        if base.size > 0:
            candidates.append(("baseline", base))

    exact_dict = None
    if config.use_exact:
        t0 = time.perf_counter()
        opt = exact_mbb(graph, size_limit=config.exact_size_limit)
        timings["exact"] = time.perf_counter() - t0
        exact_dict = opt.as_dict()
        if opt.size > 0:
            candidates.append(("exact", opt))

    if not candidates and graph.num_edges > 0:
        candidates.append(("edge", _lowest_edge(graph)))

    if candidates:
        # Largest wins; ties go to the earliest-listed method.
        top = max(b.size for _, b in candidates)
        best_method, best = next((m, b) for m, b in candidates if b.size == top)
    else:
        best_method, best = "none", Biclique.empty()

    timings["total"] = time.perf_counter() - t_start
    report = RunReport(
        instance=instance_meta,
        config=config_echo,
        search=search_meta,
        rounding=rounding_dict,
        diagnostics=diag_dict,
        baseline=baseline_dict,
        exact=exact_dict,
        best={"method": best_method, **best.as_dict()},
        timings=timings,
    )
    return best, report


def _build_instance(gen: dict, base_dir: Path) -> tuple[BipartiteGraph, int | None]:
    """Materialize a run's instance; returns (graph, planted k when known)."""
    kind = gen.get("type", "planted")
    if kind == "planted":
        graph, planted = planted_instance(
            int(gen["n"]), int(gen["k"]), float(gen.get("p", 0.0)), int(gen.get("seed", 0))
        )
        return graph, planted.biclique.size
    if kind == "empty":
        return empty_bipartite(int(gen["n_u"]), int(gen["n_v"])), None
    if kind == "complete":
        return complete_bipartite(int(gen["n_u"]), int(gen["n_v"])), None
    if kind == "file":
        path = Path(gen["path"])
        if not path.is_absolute():
            path = base_dir / path
        return parse_graph(path.read_text(encoding="utf-8")), None
    raise ValueError(f"unknown generator type {kind!r}")


def _config_from_dict(raw: dict) -> PipelineConfig:
    solver_keys = {"eps_feas", "eps_psd", "max_iterations", "plateau_window", "backend"}
    solver = SolverConfig(**{k: v for k, v in raw.items() if k in solver_keys})
    pipeline_keys = {
        "search",
        "k_lo",
        "k_hi",
        "trials",
        "seed",
        "tau",
        "use_baseline",
        "use_exact",
        "exact_size_limit",
        "degree_prefilter",
    }
    return PipelineConfig(solver=solver, **{k: v for k, v in raw.items() if k in pipeline_keys})


def run_experiment(
    spec_path: str | os.PathLike,
    output_dir: str | os.PathLike | None = None,
    include_timings: bool = False,
) -> Path:
    """Run every instance in a JSON experiment spec.

    Writes one report JSON per run plus ``aggregate.csv`` (columns: instance,
    n, planted_k, found_size, exact_size, method, time) into the output
    directory, atomically.  A failing run becomes an ``error`` row; the rest
    still complete.  Returns the CSV path.
    """
    spec_path = Path(spec_path)
    spec = json.loads(spec_path.read_text(encoding="utf-8"))
    base_dir = spec_path.parent
    out = Path(output_dir) if output_dir is not None else base_dir / spec.get("output_dir", "reports")
    out.mkdir(parents=True, exist_ok=True)

    rows: list[dict] = []
    for idx, run_spec in enumerate(spec.get("runs", [])):
        name = str(run_spec.get("name", f"run-{idx}"))
        row = {col: "" for col in CSV_COLUMNS}
        row["instance"] = name
        t0 = time.perf_counter()
        try:
            graph, planted_k = _build_instance(run_spec.get("generator", {}), base_dir)
            config = _config_from_dict(dict(run_spec.get("config", {})))
            if run_spec.get("exact"):
                config.use_exact = True
            best, report = approximate_mbb(graph, config)
            # Reports must re-verify before they are trusted in the aggregate.
            payload = report.to_dict(include_timings)
            loaded = payload["best"]
            if not verify_biclique(graph, loaded["left"], loaded["right"]):
                raise ValueError(f"run {name}: best biclique failed re-verification")
            (out / f"{name}.json").write_text(
                json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )
            row["n"] = str(max(graph.n_u, graph.n_v))
            row["planted_k"] = "" if planted_k is None else str(planted_k)
            row["found_size"] = str(best.size)
            row["exact_size"] = str(report.exact["size"]) if report.exact else ""
            row["method"] = payload["best"]["method"]
        except Exception:
            row["method"] = "error"
        if include_timings:
            row["time"] = f"{time.perf_counter() - t0:.3f}"
        rows.append(row)

    csv_path = out / "aggregate.csv"
    tmp_path = out / "aggregate.csv.tmp"
    with open(tmp_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(CSV_COLUMNS), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    os.replace(tmp_path, csv_path)
    return csv_path
