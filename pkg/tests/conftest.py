"""Shared fixtures: planted instances solved once per session.

Several suites (solver, rounding identities, diagnostics, acceptance) need
the same six strong-relaxation solutions, and solving them once keeps the
full run fast.  Solved at 1e-8 so downstream identity checks have headroom.
"""

from dataclasses import dataclass

import pytest

from mbb_sdp import (
    BipartiteGraph,
    FeasibilityOutcome,
    PlantedSolution,
    SdpProblem,
    SolverConfig,
    build_strong_relaxation,
    planted_instance,
    solve_feasibility,
)

PLANTED_CASES = [
    (8, 2, 0.0),
    (8, 2, 0.2),
    (16, 4, 0.0),
    (16, 4, 0.2),
    (32, 8, 0.0),
    (32, 8, 0.2),
]

SOLVE_EPS = 1e-8


@dataclass
class SolvedCase:
    n: int
    k: int
    p: float
    graph: BipartiteGraph
    planted: PlantedSolution
    problem: SdpProblem
    outcome: FeasibilityOutcome


@pytest.fixture(scope="session")
def solved_planted() -> list[SolvedCase]:
    cases = []
    for n, k, p in PLANTED_CASES:
        graph, planted = planted_instance(n, k, p, seed=1000 + n)
        problem = build_strong_relaxation(graph, k)
        outcome = solve_feasibility(problem, SolverConfig(eps_feas=SOLVE_EPS))
        cases.append(SolvedCase(n, k, p, graph, planted, problem, outcome))
    return cases


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log() -> list[str]:
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # The acceptance suite appends one pass/fail line per criterion; echo
    # them after the run so they are visible even with output capture on.
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
