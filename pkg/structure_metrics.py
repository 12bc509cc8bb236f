# structure_metrics.py - girth, cycles and cyclic connectivity
"""
Structural metrics of cubic graphs given as closed multipoles (semiedges are
ignored, so girth also works on poles).

Cyclic connectivity is computed exactly. An upper bound comes from the edge cut
around a shortest cycle. Then, for c = 1, 2, ... below that bound, a probe looks
for a cycle-separating cut of at most c edges by running max-flow between two
disjoint connected vertex sets of size max(1, c - 1). A connected side that is a
tree on s vertices has s + 2 boundary edges in a cubic graph, so any cut of at
most c edges between such sets separates two cycles; conversely both sides of a
smallest cycle-separating cut are connected and have at least c vertices, so the
probe cannot miss it. Sinks come from a greedy packing of disjoint sets when the
packing is large enough to force one set onto the far side, otherwise every
pair of sets is tried.
"""

import logging
from collections import deque
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.algorithms.flow import build_residual_network, edmonds_karp

import config
from models.errors import MetricError
from models.multipole import Multipole
from models.reports import CyclicConnectivity, EdgeCut
from utils.graph_utils import (
    adjacency_sets,
    bfs_distances,
    connected_sets,
    greedy_packing,
    is_cyclic_subgraph,
)
from utils.parallel import parallel_map

logger = logging.getLogger(__name__)


def _links(g: Multipole) -> List[Tuple[int, int, int]]:
    return [(e.id, e.a.ref, e.b.ref) for e in g.edges if e.is_link]


def _multiplicity(g: Multipole) -> Dict[FrozenSet[int], int]:
    counts: Dict[FrozenSet[int], int] = {}
    for _, u, v in _links(g):
        key = frozenset((u, v))
        counts[key] = counts.get(key, 0) + (2 if u == v else 1)
    return counts


# --- girth and cycles --------------------------------------------------------

def girth(g: Multipole) -> int:
    """Length of a shortest cycle through links; raises on forests."""
    mult = _multiplicity(g)
    if any(len(k) == 1 for k in mult):
        return 1
    if any(n > 1 for n in mult.values()):
        return 2
    adj = adjacency_sets(g)
    best: Optional[int] = None
    for root in sorted(adj):
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] + 1 >= best:
                break
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    length = dist[v] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    if best is None:
        raise MetricError("the graph is a forest and has no girth")
    return best


def find_cycles(g: Multipole, length: int, limit: Optional[int] = None) -> List[Tuple[int, ...]]:
    """
    Cycles of exactly `length` vertices in canonical order: each cycle starts at its
    smallest vertex and is oriented so that its second vertex is below its last;
    the list is lexicographically sorted.
    """
    if length < 1:
        return []
    if length <= 2:
        mult = _multiplicity(g)
        found = sorted(
            tuple(sorted(k))
            for k, n in mult.items()
            if (length == 1 and len(k) == 1) or (length == 2 and len(k) == 2 and n > 1)
        )
        return found[:limit] if limit is not None else found

    adj = {v: sorted(ws) for v, ws in adjacency_sets(g).items()}
    cycles: List[Tuple[int, ...]] = []
    for start in sorted(adj):
        allowed = {v for v in adj if v >= start}
        dist = bfs_distances(adj, start, allowed)
        path = [start]
        on_path = {start}
        # iterative DFS over (vertex, next neighbour index)
        stack = [(start, 0)]
        while stack:
            v, i = stack[-1]
            if i >= len(adj[v]):
                stack.pop()
                on_path.discard(path.pop())
                continue
            stack[-1] = (v, i + 1)
            w = adj[v][i]
            depth = len(path)
            if w == start:
                if depth == length and path[1] < path[-1]:
                    cycles.append(tuple(path))
                    if limit is not None and len(cycles) >= limit:
                        return cycles
                continue
            if w < start or w in on_path or depth >= length:
                continue
            if dist.get(w, length + 1) > length - depth:
                continue
            path.append(w)
            on_path.add(w)
            stack.append((w, 0))
    return cycles


def is_cycle(g: Multipole, cycle: Sequence[int]) -> bool:
    """Whether consecutive vertices (cyclically) are joined by links and all are distinct."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    adj = adjacency_sets(g)
    return all(cycle[(i + 1) % k] in adj[cycle[i]] for i in range(k))


# --- cuts ---------------------------------------------------------------------

def _side_is_cyclic(adj, mult, side: Set[int]) -> bool:
    return is_cyclic_subgraph(adj, side, mult)


def _components(adj, side: Set[int]) -> int:
    seen: Set[int] = set()
    count = 0
    for root in side:
        if root in seen:
            continue
        count += 1
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w in side and w not in seen:
                    seen.add(w)
                    queue.append(w)
    return count


def cut_of(g: Multipole, side_a: Set[int]) -> EdgeCut:
    side_b = set(g.vertices) - side_a
    edges = sorted(eid for eid, u, v in _links(g) if (u in side_a) != (v in side_a))
    return EdgeCut(edges=tuple(edges), side_a=tuple(sorted(side_a)), side_b=tuple(sorted(side_b)))


def verify_edge_cut(g: Multipole, cut: EdgeCut) -> bool:
    """The cut is exactly the boundary of its sides, both sides contain a cycle,
    and both sides are connected (so the cut is inclusion-minimal)."""
    a, b = set(cut.side_a), set(cut.side_b)
    if a & b or a | b != set(g.vertices) or not a or not b:
        return False
    if set(cut.edges) != set(cut_of(g, a).edges):
        return False
    adj = adjacency_sets(g)
    mult = _multiplicity(g)
    return (
        _side_is_cyclic(adj, mult, a) and _side_is_cyclic(adj, mult, b)
        and _components(adj, a) == 1 and _components(adj, b) == 1
    )


def _girth_cycle_bound(g: Multipole, adj, mult) -> Optional[EdgeCut]:
    """Smallest cycle-separating cut around a shortest cycle, if any is separating."""
    try:
        gl = girth(g)
    except MetricError:
        return None
    cycles = find_cycles(g, gl) if gl >= 3 else [tuple(sorted(k)) for k, n in mult.items()
                                                  if (gl == 1 and len(k) == 1) or (gl == 2 and n > 1)]
    best: Optional[EdgeCut] = None
    everything = set(g.vertices)
    for cyc in cycles:
        side = set(cyc)
        rest = everything - side
        if not rest or not _side_is_cyclic(adj, mult, rest):
            continue
        cut = cut_of(g, side)
        if best is None or cut.size < best.size:
            best = cut
    return best


class CyclicCutProbe:
    """Max-flow probe for cycle-separating cuts of bounded size."""

    def __init__(self, g: Multipole):
        self.g = g
        self.adj = adjacency_sets(g)
        self.mult = _multiplicity(g)
        D = nx.DiGraph()
        D.add_nodes_from(g.vertices)
        D.add_nodes_from(["s", "t"])
        for pair, n in self.mult.items():
            if len(pair) == 2:
                u, v = tuple(pair)
                D.add_edge(u, v, capacity=n)
                D.add_edge(v, u, capacity=n)
        self.digraph = D
        self.residual = build_residual_network(D, "capacity")

    def min_cut(self, sources: Sequence[int], sinks: Sequence[int], bound: int) -> Optional[Set[int]]:
        """Source side of a minimum cut if its value is at most `bound`."""
        R = self.residual
        big = bound + 1
        for x in sources:
            R.add_edge("s", x, capacity=big, flow=0)
            R.add_edge(x, "s", capacity=0, flow=0)
        for y in sinks:
            R.add_edge(y, "t", capacity=big, flow=0)
            R.add_edge("t", y, capacity=0, flow=0)
        try:
            edmonds_karp(self.digraph, "s", "t", residual=R, cutoff=big)
            value = R.graph["flow_value"]
            if value > bound:
                return None
            reach = {"s"}
            queue = deque(["s"])
            while queue:
                u = queue.popleft()
                for w, attr in R[u].items():
                    if w not in reach and attr["capacity"] - attr["flow"] > 0:
                        reach.add(w)
                        queue.append(w)
            reach.discard("s")
            return reach
        finally:
            for x in sources:
                R.remove_edge("s", x)
                R.remove_edge(x, "s")
            for y in sinks:
                R.remove_edge(y, "t")
                R.remove_edge("t", y)

    def separating_cut(self, side: Set[int], sinks: Sequence[int]) -> EdgeCut:
        """Shrink a probe cut to the bond around the sink-side component."""
        rest = set(self.g.vertices) - side
        target = sinks[0]
        component = {target}
        queue = deque([target])
        while queue:
            v = queue.popleft()
            for w in self.adj[v]:
                if w in rest and w not in component:
                    component.add(w)
                    queue.append(w)
        return cut_of(self.g, set(self.g.vertices) - component)

    def search(self, sources: Sequence[Tuple[int, ...]], sinks_for, bound: int) -> Optional[EdgeCut]:
        for X in sources:
            xs = set(X)
            for Y in sinks_for(X):
                if xs.intersection(Y):
                    continue
                side = self.min_cut(X, Y, bound)
                if side is not None:
                    return self.separating_cut(side, Y)
        return None


_PROBE: Dict[str, object] = {}


def _init_probe(g: Multipole, size: int, bound: int, sinks: Optional[List[Tuple[int, ...]]]) -> None:
    _PROBE["probe"] = CyclicCutProbe(g)
    _PROBE["size"] = size
    _PROBE["bound"] = bound
    _PROBE["sinks"] = sinks


def _probe_chunk(chunk: List[Tuple[int, ...]]) -> Optional[EdgeCut]:
    probe: CyclicCutProbe = _PROBE["probe"]
    packing = _PROBE["sinks"]
    if packing is not None:
        return probe.search(chunk, lambda X: packing, _PROBE["bound"])
    everything = list(connected_sets(probe.adj, _PROBE["size"]))
    return probe.search(chunk, lambda X: [Y for Y in everything if Y > X], _PROBE["bound"])


def _probe(g: Multipole, c: int, jobs: int) -> Optional[EdgeCut]:
    """A cycle-separating cut of at most c edges, assuming none smaller exists."""
    adj = adjacency_sets(g)
    size = max(1, c - 1)
    sources = list(connected_sets(adj, size))
    packing, uncovered = greedy_packing(adj, size)
    n = len(adj)
    sinks = packing if n / 2 > c * size + uncovered else None
    logger.debug(
        "cc probe c=%d: %d source sets, %s", c, len(sources),
        f"{len(packing)} packed sinks" if sinks is not None else "all pairs",
    )
    if not sources:
        return None
    jobs = max(1, jobs)
    chunk = max(1, len(sources) // (jobs * 4)) if jobs > 1 else len(sources)
    chunks = [sources[i:i + chunk] for i in range(0, len(sources), chunk)]
    results = parallel_map(_probe_chunk, chunks, jobs, _init_probe, (g, size, c, sinks))
    return next((r for r in results if r is not None), None)


def cut_avoiding(g: Multipole, avoid: Sequence[int], bound: int) -> Optional[EdgeCut]:
    """
    Smallest cut of at most `bound` edges around a connected vertex set that contains
    a cycle and none of the `avoid` vertices, or None.
    """
    forbidden = set(avoid)
    adj = adjacency_sets(g)
    outside = {v: {w for w in ws if w not in forbidden} for v, ws in adj.items() if v not in forbidden}
    probe = CyclicCutProbe(g)
    sinks = sorted(forbidden)
    for c in range(1, bound + 1):
        for X in connected_sets(outside, max(1, c - 1)):
            side = probe.min_cut(X, sinks, c)
            if side is None:
                continue
            component = bfs_distances(adj, X[0], side)
            return cut_of(g, set(component))
    return None


def _require_closed_cubic(g: Multipole) -> None:
    if not g.is_closed:
        raise MetricError("cyclic connectivity needs a closed graph")


def _disconnected_cut(g: Multipole) -> Optional[EdgeCut]:
    adj = adjacency_sets(g)
    vertices = set(g.vertices)
    if not vertices:
        return None
    root = min(vertices)
    comp = set(bfs_distances(adj, root))
    if comp == vertices:
        return None
    return cut_of(g, comp)


def minimum_cyclic_cut(g: Multipole, below: Optional[int] = None,
                       jobs: Optional[int] = None) -> Tuple[Optional[EdgeCut], int]:
    """
    Smallest cycle-separating cut with fewer than `below` edges (any size if None),
    plus the cycle rank of g. Returns (None, rank) when there is none.
    """
    _require_closed_cubic(g)
    jobs = config.get_settings().jobs if jobs is None else jobs
    rank = len(_links(g)) - g.order + 1
    split = _disconnected_cut(g)
    if split is not None:
        return split, rank
    adj = adjacency_sets(g)
    mult = _multiplicity(g)
    bound_cut = _girth_cycle_bound(g, adj, mult)
    ceiling = bound_cut.size if bound_cut is not None else rank
    if below is not None:
        ceiling = min(ceiling, below)
    for c in range(1, ceiling):
        found = _probe(g, c, jobs)
        if found is not None:
            return found, rank
    if bound_cut is not None and (below is None or bound_cut.size < below):
        return bound_cut, rank
    return None, rank


def cyclic_connectivity(g: Multipole, jobs: Optional[int] = None) -> CyclicConnectivity:
    cut, rank = minimum_cyclic_cut(g, jobs=jobs)
    if cut is None:
        return CyclicConnectivity(value=rank, separating=False)
    return CyclicConnectivity(value=cut.size, separating=True, cut=cut)


def is_cyclically_k_connected(g: Multipole, k: int, jobs: Optional[int] = None) -> bool:
    """No cycle-separating cut has fewer than k edges."""
    cut, rank = minimum_cyclic_cut(g, below=k, jobs=jobs)
    # every separating cut is smaller than the cycle rank, so with none below k
    # the value is either a cut of size >= k or the rank itself
    return cut is None and rank >= k


# --- exhaustive oracle ---------------------------------------------------------

def cyclic_connectivity_oracle(g: Multipole, edge_bound: Optional[int] = None) -> CyclicConnectivity:
    """
    Try every edge subset in increasing size and report the first whose removal
    leaves two components that each contain a cycle.
    """
    _require_closed_cubic(g)
    links = _links(g)
    bound = config.ORACLE_EDGE_BOUND if edge_bound is None else edge_bound
    if len(links) > bound:
        raise MetricError(f"oracle bound is {bound} edges, graph has {len(links)}")
    vertices = sorted(g.vertices)
    rank = len(links) - len(vertices) + 1

    def cyclic_components(removed: Set[int]) -> Optional[Set[int]]:
        parent = {v: v for v in vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for eid, u, v in links:
            if eid not in removed:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
        size: Dict[int, int] = {}
        edges: Dict[int, int] = {}
        for v in vertices:
            r = find(v)
            size[r] = size.get(r, 0) + 1
        for eid, u, v in links:
            if eid not in removed:
                r = find(u)
                edges[r] = edges.get(r, 0) + 1
        cyclic = [r for r in size if edges.get(r, 0) >= size[r]]
        if len(cyclic) < 2:
            return None
        root = min(cyclic)
        return {v for v in vertices if find(v) == root}

    for k in range(0, max(rank, 0)):
        for subset in combinations([eid for eid, _, _ in links], k):
            side = cyclic_components(set(subset))
            if side is not None:
                return CyclicConnectivity(value=k, separating=True, cut=cut_of(g, side))
    return CyclicConnectivity(value=rank, separating=False)
