# utils/graph_utils.py - networkx bridges and small graph helpers
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from models.errors import MultipoleError
from models.multipole import Edge, EdgeEnd, Multipole


def to_networkx(m: Multipole) -> nx.MultiGraph:
    """Links of m as a MultiGraph keyed by edge id; semiedges are dropped."""
    G = nx.MultiGraph()
    G.add_nodes_from(m.vertices)
    for e in m.edges:
        if e.is_link:
            G.add_edge(e.a.ref, e.b.ref, key=e.id)
    return G


def to_simple_graph(m: Multipole) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(m.vertices)
    G.add_edges_from((e.a.ref, e.b.ref) for e in m.edges if e.is_link and not e.is_loop)
    return G


def from_edge_list(n: int, pairs: Sequence[Tuple[int, int]], name: Optional[str] = None) -> Multipole:
    """Closed multipole on vertices 0..n-1 with edge i joining pairs[i]."""
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise MultipoleError(f"edge {u}-{v} leaves the vertex range 0..{n - 1}")
    return Multipole(
        vertices=tuple(range(n)),
        edges=tuple(
            Edge(id=i, a=EdgeEnd.vertex(u), b=EdgeEnd.vertex(v)) for i, (u, v) in enumerate(pairs)
        ),
        name=name,
    )


def from_networkx(G: nx.Graph, name: Optional[str] = None) -> Multipole:
    """Closed multipole from a (multi)graph; nodes are renumbered in sorted order."""
    nodes = sorted(G.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    pairs = sorted(tuple(sorted((pos[u], pos[v]))) for u, v in G.edges())
    return from_edge_list(len(nodes), pairs, name)


def adjacency_sets(m: Multipole) -> Dict[int, Set[int]]:
    """Simple adjacency through links (loops and multiplicities ignored)."""
    adj: Dict[int, Set[int]] = {v: set() for v in m.vertices}
    for e in m.edges:
        if e.is_link and not e.is_loop:
            adj[e.a.ref].add(e.b.ref)
            adj[e.b.ref].add(e.a.ref)
    return adj


def bfs_distances(adj: Dict[int, Iterable[int]], source: int,
                  allowed: Optional[Set[int]] = None) -> Dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in dist and (allowed is None or w in allowed):
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance(m: Multipole, u: int, v: int) -> Optional[int]:
    return bfs_distances(adjacency_sets(m), u).get(v)


def is_cyclic_subgraph(adj: Dict[int, Set[int]], vertices: Set[int],
                       multiplicity: Optional[Dict[FrozenSet[int], int]] = None) -> bool:
    """Whether the subgraph induced on `vertices` contains a cycle."""
    if multiplicity:
        for pair, k in multiplicity.items():
            if k > 1 and pair <= vertices:
                return True
    edges = sum(1 for v in vertices for w in adj[v] if w in vertices) // 2
    seen: Set[int] = set()
    components = 0
    for root in vertices:
        if root in seen:
            continue
        components += 1
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w in vertices and w not in seen:
                    seen.add(w)
                    queue.append(w)
    return edges > len(vertices) - components


def connected_sets(adj: Dict[int, Set[int]], size: int) -> Iterator[Tuple[int, ...]]:
    """
    Every connected vertex set of the given size exactly once, each as a sorted
    tuple, grouped by smallest vertex (extension-set enumeration).
    """
    if size < 1:
        return

    def extend(sub: List[int], ext: List[int], root: int, nbhd: Set[int]) -> Iterator[Tuple[int, ...]]:
        if len(sub) == size:
            yield tuple(sorted(sub))
            return
        ext = list(ext)
        while ext:
            w = ext.pop(0)
            exclusive = [
                u for u in sorted(adj[w]) if u > root and u not in nbhd and u not in sub
            ]
            new_nbhd = nbhd | set(adj[w]) | {w}
            yield from extend(sub + [w], ext + exclusive, root, new_nbhd)

    for v in sorted(adj):
        start_ext = sorted(u for u in adj[v] if u > v)
        yield from extend([v], start_ext, v, set(adj[v]) | {v})


def greedy_packing(adj: Dict[int, Set[int]], size: int) -> Tuple[List[Tuple[int, ...]], int]:
    """
    Disjoint connected sets of the given size grown greedily in BFS order.
    Returns the sets and the number of vertices left uncovered.
    """
    used: Set[int] = set()
    packing: List[Tuple[int, ...]] = []
    for root in sorted(adj):
        if root in used:
            continue
        group = [root]
        frontier = deque([root])
        seen = {root}
        while frontier and len(group) < size:
            v = frontier.popleft()
            for w in sorted(adj[v]):
                if w not in used and w not in seen and len(group) < size:
                    seen.add(w)
                    group.append(w)
                    frontier.append(w)
        if len(group) == size:
            packing.append(tuple(sorted(group)))
            used.update(group)
    return packing, len(adj) - len(used)
