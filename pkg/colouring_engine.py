# colouring_engine.py - 3-edge-colourings as nowhere-zero Z2 x Z2 flows
"""
Colouring search and colouring sets of multipoles.

A multipole is compiled once into integer incidence lists; edges are numbered in
breadth-first order so the depth-first search grows a connected coloured region.
Domains are 3-bit masks. Assigning a colour removes it from the other edges at
each constrained endpoint, and a domain that shrinks to one colour is assigned
in turn. Vertices listed in `relaxed` impose no constraint, which evaluates
G - (u, v) on the compiled form of G without rebuilding anything.
"""

import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

import config
import sat_backend
from models.colouring import (
    COLOURS, BoundaryColouring, Colouring, add, all_tuples, canonical_tuples, orbit,
    satisfies_parity,
)
from models.errors import ColouringLimitError, MultipoleError
from models.multipole import Connector, Multipole
from utils.parallel import parallel_map
from utils.timing import check_deadline, current_deadline

logger = logging.getLogger(__name__)

BIT = (0, 1, 2, 4)
COLOUR_OF_BIT = {1: 1, 2: 2, 4: 3}
FULL = 7
POPCOUNT = (0, 1, 1, 2, 1, 2, 2, 3)

Fixed = Union[Dict[int, int], Sequence[Optional[int]], None]


class CompiledMultipole:
    """Integer view of a multipole: edges in BFS order, vertices by position."""

    def __init__(self, m: Multipole):
        self.multipole = m
        inc = m.incidence()
        edge_by_id = m.edge_map()

        order: List[int] = []
        seen_edges: Set[int] = set()
        seen_vertices: Set[int] = set()
        for root in sorted(m.vertices):
            if root in seen_vertices:
                continue
            seen_vertices.add(root)
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for eid, side in inc[v]:
                    if eid not in seen_edges:
                        seen_edges.add(eid)
                        order.append(eid)
                    e = edge_by_id[eid]
                    far = e.b if side == "a" else e.a
                    if not far.is_free and far.ref not in seen_vertices:
                        seen_vertices.add(far.ref)
                        queue.append(far.ref)
        order.extend(sorted(eid for eid in edge_by_id if eid not in seen_edges))

        self.edge_ids: List[int] = order
        self.index: Dict[int, int] = {eid: i for i, eid in enumerate(order)}
        self.vertex_ids: List[int] = sorted(m.vertices)
        self.vpos: Dict[int, int] = {v: i for i, v in enumerate(self.vertex_ids)}
        self.vertex_edges: List[Tuple[int, ...]] = [
            tuple(self.index[eid] for eid, _ in inc[v]) for v in self.vertex_ids
        ]
        ends: List[List[int]] = [[] for _ in order]
        for p, edges in enumerate(self.vertex_edges):
            for e in edges:
                ends[e].append(p)
        self.edge_vertices: List[Tuple[int, ...]] = [tuple(x) for x in ends]
        self.semiedge_order: List[int] = m.semiedge_order()
        where = m.semiedge_locations()
        self.semiedge_edge: Dict[int, int] = {s: self.index[where[s][0]] for s in where}
        self.loop_vertices: Set[int] = {
            p for p, edges in enumerate(self.vertex_edges) if len(set(edges)) < len(edges)
        }
        self.bfs_vertex_order: List[int] = list(dict.fromkeys(
            p for e in range(len(order)) for p in self.edge_vertices[e]
        ))

    @property
    def edge_count(self) -> int:
        return len(self.edge_ids)

    def relaxed_flags(self, relaxed: Iterable[int]) -> List[bool]:
        flags = [False] * len(self.vertex_ids)
        for v in relaxed:
            if v not in self.vpos:
                raise MultipoleError(f"missing vertex v{v}")
            flags[self.vpos[v]] = True
        return flags


def _normalise_fixed(fixed: Fixed) -> Dict[int, int]:
    if fixed is None:
        return {}
    if isinstance(fixed, dict):
        items = fixed.items()
    else:
        items = ((i, c) for i, c in enumerate(fixed) if c is not None)
    out = {}
    for pos, c in items:
        if c not in COLOURS:
            raise MultipoleError(f"{c!r} is not a colour")
        out[int(pos)] = c
    return out


class ColouringSearch:
    """Reusable colouring search over one compiled multipole."""

    def __init__(self, m: Multipole, backend: Optional[str] = None):
        self.compiled = CompiledMultipole(m)
        self.backend = backend or config.get_settings().backend
        if self.backend == "auto":
            use_sat = self.compiled.edge_count > config.SAT_EDGE_THRESHOLD and sat_backend.available()
            self.backend = "sat" if use_sat else "dfs"
        elif self.backend == "sat" and not sat_backend.available():
            logger.warning("⚠️ python-sat is not importable, falling back to the DFS backend")
            self.backend = "dfs"

    @property
    def multipole(self) -> Multipole:
        return self.compiled.multipole

    # --- public entry points ----------------------------------------------

    def solve(self, fixed: Fixed = None, relaxed: Iterable[int] = (),
              fixed_edges: Optional[Dict[int, int]] = None,
              deadline: Optional[float] = None) -> Optional[List[int]]:
        """Colours per compiled edge index of one colouring, or None."""
        fixed_map = _normalise_fixed(fixed)
        domains = self._domains(fixed_map, fixed_edges or {})
        if domains is None:
            return None
        flags = self.compiled.relaxed_flags(relaxed)
        if deadline is None:
            deadline = current_deadline()
        if self.backend == "sat":
            return sat_backend.solve(
                self.compiled.vertex_edges, self.compiled.edge_count, domains, flags, deadline
            )
        symmetric = not fixed_map and not fixed_edges
        return next(self._dfs(domains, flags, deadline, symmetric), None)

    def solutions(self, fixed: Fixed = None, relaxed: Iterable[int] = (),
                  deadline: Optional[float] = None) -> Iterator[List[int]]:
        """Every colouring, each exactly once."""
        domains = self._domains(_normalise_fixed(fixed), {})
        if domains is None:
            return iter(())
        flags = self.compiled.relaxed_flags(relaxed)
        return self._dfs(domains, flags, deadline or current_deadline(), False)

    def colouring(self, values: Sequence[int]) -> Colouring:
        c = self.compiled
        edge_colours = {eid: values[i] for i, eid in enumerate(c.edge_ids)}
        semiedge_colours = {s: values[c.semiedge_edge[s]] for s in c.semiedge_order}
        return Colouring(
            edge_colours=edge_colours,
            semiedge_colours=semiedge_colours,
            boundary=tuple(semiedge_colours[s] for s in c.semiedge_order),
        )

    # --- internals ---------------------------------------------------------

    def _domains(self, fixed: Dict[int, int], fixed_edges: Dict[int, int]) -> Optional[List[int]]:
        c = self.compiled
        domains = [FULL] * c.edge_count
        for pos, colour in fixed.items():
            if not 0 <= pos < len(c.semiedge_order):
                raise MultipoleError(f"boundary position {pos} out of range")
            e = c.semiedge_edge[c.semiedge_order[pos]]
            domains[e] &= BIT[colour]
        for eid, colour in fixed_edges.items():
            if eid not in c.index:
                raise MultipoleError(f"missing edge {eid}")
            domains[c.index[eid]] &= BIT[colour]
        if any(d == 0 for d in domains):
            return None
        return domains

    def _symmetry_edges(self, flags: Sequence[bool]) -> Optional[Tuple[int, ...]]:
        c = self.compiled
        for p in c.bfs_vertex_order:
            edges = c.vertex_edges[p]
            if not flags[p] and len(set(edges)) == 3:
                return edges
        return None

    def _dfs(self, domains: List[int], flags: Sequence[bool], deadline: Optional[float],
             symmetric: bool) -> Iterator[List[int]]:
        c = self.compiled
        vertex_edges = c.vertex_edges
        edge_vertices = c.edge_vertices
        n = c.edge_count
        if any(not flags[p] for p in c.loop_vertices):
            return

        dom = list(domains)
        val = [0] * n
        trail: List[Tuple[int, int, bool]] = []

        def assign(e: int, colour: int) -> bool:
            queue = [(e, colour)]
            while queue:
                e, colour = queue.pop()
                if val[e]:
                    if val[e] != colour:
                        return False
                    continue
                bit = BIT[colour]
                if not dom[e] & bit:
                    return False
                trail.append((e, dom[e], True))
                dom[e] = bit
                val[e] = colour
                for p in edge_vertices[e]:
                    if flags[p]:
                        continue
                    for f in vertex_edges[p]:
                        if f == e:
                            continue
                        if val[f]:
                            if val[f] == colour:
                                return False
                            continue
                        d = dom[f]
                        if d & bit:
                            nd = d & ~bit
                            if not nd:
                                return False
                            trail.append((f, d, False))
                            dom[f] = nd
                            if POPCOUNT[nd] == 1:
                                queue.append((f, COLOUR_OF_BIT[nd]))
            return True

        def undo(mark: int) -> None:
            while len(trail) > mark:
                e, old, was_assignment = trail.pop()
                dom[e] = old
                if was_assignment:
                    val[e] = 0

        def select() -> int:
            first = -1
            for e in range(n):
                if not val[e]:
                    if POPCOUNT[dom[e]] == 2:
                        return e
                    if first < 0:
                        first = e
            return first

        for e in range(n):
            if POPCOUNT[dom[e]] == 1 and not assign(e, COLOUR_OF_BIT[dom[e]]):
                return
        if symmetric:
            edges = self._symmetry_edges(flags)
            if edges is not None:
                for e, colour in zip(edges, COLOURS):
                    if not assign(e, colour):
                        return

        interval = config.DEADLINE_CHECK_INTERVAL
        decisions = 0
        frames: List[list] = []
        while True:
            e = select()
            if e < 0:
                yield list(val)
            else:
                choices = [colour for colour in COLOURS if dom[e] & BIT[colour]]
                frames.append([e, choices, 0, len(trail)])
            while frames:
                frame = frames[-1]
                undo(frame[3])
                if frame[2] >= len(frame[1]):
                    frames.pop()
                    continue
                colour = frame[1][frame[2]]
                frame[2] += 1
                decisions += 1
                if decisions % interval == 0:
                    check_deadline(deadline)
                if assign(frame[0], colour):
                    break
            else:
                return


# --- module-level API --------------------------------------------------------

def find_colouring(m: Multipole, fixed: Fixed = None, *, relaxed: Iterable[int] = (),
                   backend: Optional[str] = None) -> Optional[Colouring]:
    """A colouring extending the fixed boundary colours, or None if there is none."""
    search = ColouringSearch(m, backend)
    values = search.solve(fixed, relaxed)
    return None if values is None else search.colouring(values)


def is_colourable(m: Multipole, *, relaxed: Iterable[int] = (), backend: Optional[str] = None) -> bool:
    return ColouringSearch(m, backend).solve(None, relaxed) is not None


def enumerate_colourings(m: Multipole, limit: Optional[int] = None) -> Iterator[Colouring]:
    """All colourings of m (up to `limit`), in search order."""
    search = ColouringSearch(m, "dfs")
    for count, values in enumerate(search.solutions()):
        if limit is not None and count >= limit:
            return
        yield search.colouring(values)


def verify_colouring(m: Multipole, phi: Colouring) -> bool:
    """Each vertex sees three distinct colours and semiedges carry their edge's colour."""
    inc = m.incidence()
    for v, ends in inc.items():
        seen = sorted(phi.edge_colours.get(eid, 0) for eid, _ in ends)
        if seen != [1, 2, 3]:
            return False
    where = m.semiedge_locations()
    return all(phi.semiedge_colours.get(s) == phi.edge_colours.get(where[s][0]) for s in where)


# --- exhaustive oracle ---------------------------------------------------------

def colouring_oracle(m: Multipole, fixed: Fixed = None) -> Optional[Colouring]:
    """
    Plain backtracking over edges in id order, checking each vertex as soon as
    its edges are assigned. Independent of ColouringSearch; for validation only.
    """
    if m.edge_count > config.COLOURING_ORACLE_EDGE_BOUND:
        raise ColouringLimitError(
            f"colouring oracle bound is {config.COLOURING_ORACLE_EDGE_BOUND} edges, got {m.edge_count}"
        )
    edges = sorted(e.id for e in m.edges)
    pos = {eid: i for i, eid in enumerate(edges)}
    inc = m.incidence()
    at_edge: List[List[List[int]]] = [[] for _ in edges]
    for v, ends in inc.items():
        idx = [pos[eid] for eid, _ in ends]
        for i in set(idx):
            at_edge[i].append(idx)
    forced: Dict[int, int] = {}
    where = m.semiedge_locations()
    order = m.semiedge_order()
    for p, colour in _normalise_fixed(fixed).items():
        i = pos[where[order[p]][0]]
        if forced.get(i, colour) != colour:
            return None
        forced[i] = colour

    assignment = [0] * len(edges)

    def consistent(i: int) -> bool:
        for idx in at_edge[i]:
            coloured = [assignment[j] for j in idx if j <= i]
            if len(coloured) != len(set(coloured)):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(edges):
            return True
        for colour in ([forced[i]] if i in forced else COLOURS):
            assignment[i] = colour
            if consistent(i) and extend(i + 1):
                return True
        assignment[i] = 0
        return False

    if not extend(0):
        return None
    edge_colours = {eid: assignment[i] for i, eid in enumerate(edges)}
    semiedge_colours = {s: edge_colours[where[s][0]] for s in order}
    return Colouring(
        edge_colours=edge_colours,
        semiedge_colours=semiedge_colours,
        boundary=tuple(semiedge_colours[s] for s in order),
    )


# --- colouring sets -----------------------------------------------------------

_WORKER: Dict[str, ColouringSearch] = {}


def _init_worker(m: Multipole, backend: Optional[str]) -> None:
    _WORKER["search"] = ColouringSearch(m, backend)


def _realisable(t: BoundaryColouring) -> bool:
    return _WORKER["search"].solve(dict(enumerate(t))) is not None


def enumerate_colouring_set(m: Multipole, *, limit: Optional[int] = None, jobs: Optional[int] = None,
                            parity_filter: bool = True,
                            backend: Optional[str] = None) -> FrozenSet[BoundaryColouring]:
    """
    Col(m): every boundary tuple (canonical semiedge order) that extends to a colouring.

    Only one tuple per colour-permutation orbit is searched; Col(m) is a union of
    whole orbits because m carries no colour constraints of its own.
    """
    settings = config.get_settings()
    limit = settings.enumeration_limit if limit is None else limit
    s = m.semiedge_count
    if s > limit:
        raise ColouringLimitError(f"{s} semiedges exceed the enumeration limit {limit}")
    jobs = settings.jobs if jobs is None else jobs
    candidates = [t for t in canonical_tuples(s) if not parity_filter or satisfies_parity(t)]
    logger.debug("enumerating Col of %r: %d candidate orbits", m, len(candidates))
    results = parallel_map(_realisable, candidates, jobs, _init_worker, (m, backend))
    colset: Set[BoundaryColouring] = set()
    for t, ok in zip(candidates, results):
        if ok:
            colset |= orbit(t)
    return frozenset(colset)


def flow_through(phi: Colouring, connector: Union[Connector, Sequence[int]]) -> int:
    """Sum of the colours on a connector's semiedges (0 allowed)."""
    semiedges = connector.semiedges if isinstance(connector, Connector) else connector
    return add(*(phi.semiedge_colours[s] for s in semiedges))


def boundary_flows(m: Multipole, t: Sequence[int]) -> Tuple[int, ...]:
    """Flow through each connector for a boundary tuple in canonical order."""
    flows, start = [], 0
    for c in m.connectors:
        flows.append(add(*t[start:start + c.width]))
        start += c.width
    return tuple(flows)


def is_proper_connector(m: Multipole, idx: int, search: Optional[ColouringSearch] = None) -> bool:
    """
    No colouring sends zero flow through connector idx. Refuted directly by fixing
    each zero-flow pattern on the connector, so no enumeration limit applies.
    """
    if not 0 <= idx < len(m.connectors):
        raise MultipoleError(f"connector index {idx} out of range")
    width = m.connectors[idx].width
    if width == 1:
        return True
    search = search or ColouringSearch(m)
    if search.solve() is None:
        return True
    start = sum(c.width for c in m.connectors[:idx])
    for t in canonical_tuples(width):
        if add(*t) == 0 and search.solve({start + i: col for i, col in enumerate(t)}) is not None:
            return False
    return True


def is_proper(m: Multipole) -> bool:
    search = ColouringSearch(m)
    return all(is_proper_connector(m, i, search) for i in range(len(m.connectors)))


def perfect_23_set() -> FrozenSet[BoundaryColouring]:
    """Every 5-tuple allowed by the Parity Lemma with nonzero flow through (2) and (3)."""
    return frozenset(
        t for t in all_tuples(5)
        if satisfies_parity(t) and add(*t[:2]) != 0 and add(*t[2:]) != 0
    )


def is_perfect_23pole(t: Multipole, *, jobs: Optional[int] = None) -> bool:
    if t.signature != (2, 3):
        raise MultipoleError(f"expected a (2,3)-pole, got signature {t.signature}")
    return enumerate_colouring_set(t, jobs=jobs) == perfect_23_set()


def are_colour_equivalent(m1: Multipole, m2: Multipole, *, jobs: Optional[int] = None) -> bool:
    """Col(m1) == Col(m2); multipoles with different connector signatures are never equivalent."""
    if m1.signature != m2.signature:
        logger.debug("signature mismatch %s vs %s", m1.signature, m2.signature)
        return False
    return enumerate_colouring_set(m1, jobs=jobs) == enumerate_colouring_set(m2, jobs=jobs)


def is_even_multipole(m: Multipole) -> bool:
    """Every colouring has an even number of connectors with nonzero flow."""
    return all(
        sum(1 for f in boundary_flows(m, t) if f) % 2 == 0
        for t in enumerate_colouring_set(m)
    )
