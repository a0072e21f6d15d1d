"""Approximation toolkit for the maximum balanced biclique problem.

The package ties together four pieces: vector-program relaxations of the
problem and a projection-based feasibility solver, a Gaussian threshold
rounding scheme, a greedy density-cleaning extraction routine with a
provable guarantee, and exact search plus instance generators for
benchmarking the whole chain.
"""

from .exact import contains_biclique, exact_mbb
from .extraction import (
    CleaningTrace,
    ExtractionPreconditionError,
    best_extractable_r,
    construct_biclique,
    density_clean,
    greedy_extract,
)
from .gaussian import (
    TailBounds,
    bivariate_tail_lower,
    bivariate_tail_upper,
    sample_correlated_pairs,
    sample_standard_vector,
    std_normal_pdf,
    std_normal_tail,
    univariate_tail_bounds,
)
from .graphs import (
    RNG_ALGORITHM,
    Biclique,
    BipartiteGraph,
    GraphFormatError,
    PlantedSolution,
    complete_bipartite,
    empty_bipartite,
    induced_counts,
    induced_subgraph,
    new_bipartite,
    parse_graph,
    planted_instance,
    serialize_graph,
    verify_biclique,
)
from .pipeline import (
    PipelineConfig,
    RunReport,
    approximate_mbb,
    greedy_baseline,
    run_experiment,
)
from .rounding import (
    ALPHA_DEFAULT,
    GUARANTEE_D,
    TAU_FLOOR,
    Diagnostics,
    RoundingParams,
    RoundingRun,
    TrialOutcome,
    analysis_size_target,
    default_tau,
    default_trials,
    diagnostics,
    gaussian_threshold,
    heavy_sets,
    round_many,
    round_once,
    shift_vectors,
)
from .sdp import (
    FEASIBLE,
    INFEASIBLE,
    SOLVER_LIMIT,
    FeasibilityOutcome,
    GramMatrix,
    LinearConstraint,
    SdpProblem,
    SolverConfig,
    VectorSolution,
    ViolationReport,
    build_strong_relaxation,
    build_weak_relaxation,
    check_feasibility,
    export_problem,
    gram_from_text,
    gram_to_text,
    gram_to_vectors,
    indicator_gram,
    register_backend,
    solve_feasibility,
    solver_backends,
    weak_gap_solution,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "RNG_ALGORITHM",
    # graphs
    "BipartiteGraph",
    "Biclique",
    "PlantedSolution",
    "GraphFormatError",
    "new_bipartite",
    "empty_bipartite",
    "complete_bipartite",
    "planted_instance",
    "verify_biclique",
    "induced_counts",
    "induced_subgraph",
    "parse_graph",
    "serialize_graph",
    # exact
    "exact_mbb",
    "contains_biclique",
    # gaussian
    "TailBounds",
    "std_normal_pdf",
    "std_normal_tail",
    "univariate_tail_bounds",
    "bivariate_tail_lower",
    "bivariate_tail_upper",
    "sample_standard_vector",
    "sample_correlated_pairs",
    # sdp
    "FEASIBLE",
    "INFEASIBLE",
    "SOLVER_LIMIT",
    "LinearConstraint",
    "SdpProblem",
    "GramMatrix",
    "VectorSolution",
    "ViolationReport",
    "SolverConfig",
    "FeasibilityOutcome",
    "build_weak_relaxation",
    "build_strong_relaxation",
    "weak_gap_solution",
    "indicator_gram",
    "check_feasibility",
    "solve_feasibility",
    "solver_backends",
    "register_backend",
    "gram_to_vectors",
    "export_problem",
    "gram_to_text",
    "gram_from_text",
    # extraction
    "ExtractionPreconditionError",
    "CleaningTrace",
    "density_clean",
    "construct_biclique",
    "greedy_extract",
    "best_extractable_r",
    # rounding
    "ALPHA_DEFAULT",
    "TAU_FLOOR",
    "GUARANTEE_D",
    "RoundingParams",
    "TrialOutcome",
    "RoundingRun",
    "Diagnostics",
    "default_tau",
    "default_trials",
    "heavy_sets",
    "shift_vectors",
    "gaussian_threshold",
    "analysis_size_target",
    "round_once",
    "round_many",
    "diagnostics",
    # pipeline
    "PipelineConfig",
    "RunReport",
    "approximate_mbb",
    "greedy_baseline",
    "run_experiment",
]
