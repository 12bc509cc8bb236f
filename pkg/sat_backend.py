# sat_backend.py - CNF encoding of 3-edge-colouring for python-sat
"""
One boolean per (edge, colour); every edge takes exactly one colour and the
edges meeting at a constrained vertex take pairwise different colours.
Used for large instances when the "sat" or "auto" backend is configured.
"""

import logging
import threading
from itertools import combinations
from typing import List, Optional, Sequence

import config
from models.errors import SearchTimeoutError
from utils.timing import remaining

logger = logging.getLogger(__name__)


def available() -> bool:
    try:
        import pysat.solvers  # noqa: F401
    except ImportError:
        return False
    return True


def _var(edge: int, colour: int) -> int:
    return 3 * edge + colour


def build_clauses(vertex_edges: Sequence[Sequence[int]], edge_count: int,
                  domains: Sequence[int], relaxed: Sequence[bool]) -> List[List[int]]:
    clauses: List[List[int]] = []
    for e in range(edge_count):
        allowed = [c for c in (1, 2, 3) if domains[e] & (1 << (c - 1))]
        clauses.append([_var(e, c) for c in allowed])
        for c in (1, 2, 3):
            if c not in allowed:
                clauses.append([-_var(e, c)])
        for c1, c2 in combinations((1, 2, 3), 2):
            clauses.append([-_var(e, c1), -_var(e, c2)])
    for v, edges in enumerate(vertex_edges):
        if relaxed[v]:
            continue
        for e, f in combinations(edges, 2):
            if e == f:
                # a loop at a constrained vertex can never be coloured
                clauses.append([])
                continue
            for c in (1, 2, 3):
                clauses.append([-_var(e, c), -_var(f, c)])
    return clauses


def solve(vertex_edges: Sequence[Sequence[int]], edge_count: int, domains: Sequence[int],
          relaxed: Sequence[bool], deadline: Optional[float] = None,
          solver_name: Optional[str] = None) -> Optional[List[int]]:
    """Colour per edge index, or None when unsatisfiable."""
    from pysat.solvers import Solver

    clauses = build_clauses(vertex_edges, edge_count, domains, relaxed)
    if any(not c for c in clauses):
        return None
    name = solver_name or config.SAT_SOLVER
    with Solver(name=name, bootstrap_with=clauses) as solver:
        left = remaining(deadline)
        if left is None:
            satisfiable = solver.solve()
        else:
            timer = threading.Timer(left, solver.interrupt)
            timer.start()
            try:
                satisfiable = solver.solve_limited(expect_interrupt=True)
            finally:
                timer.cancel()
            if satisfiable is None:
                raise SearchTimeoutError("SAT search deadline exceeded")
        if not satisfiable:
            return None
        model = solver.get_model()
    truth = {lit for lit in model if lit > 0}
    colours = []
    for e in range(edge_count):
        colours.append(next(c for c in (1, 2, 3) if _var(e, c) in truth))
    logger.debug("SAT backend (%s) coloured %d edges", name, edge_count)
    return colours
