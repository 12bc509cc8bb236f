# constructions.py - named snarks, building blocks and the two snark families
"""
Constructors for the graphs and multipoles used to build strictly critical snarks.

Labelling conventions (every constructor is deterministic):
- Petersen: outer cycle 0..4, spokes i - i+5, inner pentagram 5+i - 5+(i+2)%5.
- Flower snark J_k: unit i has centre c_i = 4i and x_i, y_i, z_i = 4i+1, 4i+2, 4i+3.
  Edges are the spokes of every unit, then the x cycle, then the y and z strands
  with the twist y_{k-1} - z_0 and z_{k-1} - y_0.
- Y_k: the first k units of J_k with the three strands left open on both sides.

Larger pieces are glued with the junction operations of multipole_ops, so their
vertex ids follow the usual offset rule of a junction.
"""

import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

import config
from colouring_engine import enumerate_colouring_set, is_proper
from models.colouring import COLOURS, BoundaryColouring, add
from models.errors import MultipoleError
from models.multipole import Connector, Edge, EdgeEnd, Multipole
from multipole_ops import (
    closure,
    cut_edge,
    cut_edges,
    junction,
    merge_connectors,
    permute_connector,
    remove_adjacent_pair,
    remove_subgraph,
    remove_vertex,
    remove_vertices,
    self_junction,
    serial_junction,
)
from structure_metrics import cut_avoiding, find_cycles, girth, is_cycle, is_cyclically_k_connected
from utils.graph_utils import adjacency_sets, bfs_distances, from_edge_list
from utils.parallel import parallel_first

logger = logging.getLogger(__name__)


def _pole(n: int, links: Sequence[Tuple[int, int]], dangling: Sequence[int],
          connectors: Sequence[Sequence[int]], isolated: Sequence[Tuple[int, int]] = (),
          name: Optional[str] = None) -> Multipole:
    """
    Multipole on vertices 0..n-1. Links come first in edge-id order, then one dangling
    edge per entry of `dangling` (semiedge i sits on the i-th), then isolated edges
    joining pairs of semiedges numbered after the dangling ones.
    """
    edges: List[Edge] = [
        Edge(id=i, a=EdgeEnd.vertex(u), b=EdgeEnd.vertex(v)) for i, (u, v) in enumerate(links)
    ]
    for s, v in enumerate(dangling):
        edges.append(Edge(id=len(edges), a=EdgeEnd.vertex(v), b=EdgeEnd.free(s)))
    for s, t in isolated:
        edges.append(Edge(id=len(edges), a=EdgeEnd.free(s), b=EdgeEnd.free(t)))
    return Multipole(
        vertices=tuple(range(n)),
        edges=tuple(edges),
        connectors=tuple(Connector(semiedges=tuple(c)) for c in connectors),
        name=name,
    )


# --- standard small graphs ---------------------------------------------------

def petersen() -> Multipole:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner, name="petersen")


def complete_k4() -> Multipole:
    return from_edge_list(4, list(combinations(range(4), 2)), name="K4")


def complete_k33() -> Multipole:
    return from_edge_list(6, [(i, j) for i in range(3) for j in range(3, 6)], name="K33")


def prism(n: int) -> Multipole:
    """Circular ladder on 2n vertices."""
    if n < 3:
        raise MultipoleError(f"prism needs n >= 3, got {n}")
    pairs = [(i, (i + 1) % n) for i in range(n)]
    pairs += [(n + i, n + (i + 1) % n) for i in range(n)]
    pairs += [(i, n + i) for i in range(n)]
    return from_edge_list(2 * n, pairs, name=f"prism{n}")


def generalized_petersen(n: int, k: int) -> Multipole:
    if n < 3 or not 1 <= k < n / 2:
        raise MultipoleError(f"GP({n},{k}) is not a cubic generalised Petersen graph")
    pairs = [(i, (i + 1) % n) for i in range(n)]
    pairs += [(i, n + i) for i in range(n)]
    pairs += [(n + i, n + (i + k) % n) for i in range(n)]
    return from_edge_list(2 * n, pairs, name=f"GP({n},{k})")


def mobius_kantor() -> Multipole:
    return generalized_petersen(8, 3).renamed("mobius-kantor")


def theta() -> Multipole:
    """Two vertices joined by three parallel edges."""
    return from_edge_list(2, [(0, 1)] * 3, name="theta")


def cycle_multipole(k: int) -> Multipole:
    """C_k: a k-cycle with one dangling edge per vertex, all in one k-connector."""
    if k < 1:
        raise MultipoleError(f"cycle needs k >= 1, got {k}")
    links = [(i, (i + 1) % k) for i in range(k)]
    return _pole(k, links, list(range(k)), [list(range(k))], name=f"C{k}")


def path_multipole(k: int) -> Multipole:
    """P_k: the (1,1,k)-pole on a path v_1 .. v_k with end edges i, o and residual r_1 .. r_k."""
    if k < 1:
        raise MultipoleError(f"path needs k >= 1, got {k}")
    links = [(i, i + 1) for i in range(k - 1)]
    dangling = [0, k - 1] + list(range(k))
    return _pole(k, links, dangling, [[0], [1], list(range(2, k + 2))], name=f"P{k}")


def i_piece() -> Multipole:
    """Two vertices and their link, each with two dangling edges in its own connector."""
    return _pole(2, [(0, 1)], [0, 0, 1, 1], [[0, 1], [2, 3]], name="I")


# --- flower snarks and Y segments ----------------------------------------------

def _check_odd(k: int, least: int, what: str) -> None:
    if k < least or k % 2 == 0:
        raise MultipoleError(f"{what} needs an odd k >= {least}, got {k}")


def _unit_edges(k: int) -> List[Tuple[int, int]]:
    return [(4 * i, 4 * i + d) for i in range(k) for d in (1, 2, 3)]


def flower_snark(k: int) -> Multipole:
    _check_odd(k, 3, "flower snark")
    pairs = _unit_edges(k)
    pairs += [(4 * i + 1, 4 * ((i + 1) % k) + 1) for i in range(k)]
    for i in range(k - 1):
        pairs += [(4 * i + 2, 4 * (i + 1) + 2), (4 * i + 3, 4 * (i + 1) + 3)]
    pairs += [(4 * (k - 1) + 2, 3), (4 * (k - 1) + 3, 2)]
    return from_edge_list(4 * k, pairs, name=f"J{k}")


def y_segment(k: int) -> Multipole:
    """Y_k with connectors (x_in, y_in, z_in) and (x_out, y_out, z_out)."""
    if k < 1:
        raise MultipoleError(f"Y segment needs k >= 1, got {k}")
    links = _unit_edges(k)
    for i in range(k - 1):
        links += [(4 * i + d, 4 * (i + 1) + d) for d in (1, 2, 3)]
    last = 4 * (k - 1)
    dangling = [1, 2, 3, last + 1, last + 2, last + 3]
    return _pole(4 * k, links, dangling, [[0, 1, 2], [3, 4, 5]], name=f"Y{k}")


def twisted_closure(y: Multipole) -> Multipole:
    """Join x_out to x_in, y_out to z_in and z_out to y_in."""
    if y.signature != (3, 3):
        raise MultipoleError(f"twisted closure needs a (3,3)-pole, got {y.signature}")
    return closure(permute_connector(y, 1, (0, 2, 1)))


# --- (2,3)-poles and H6 * TTT_sc --------------------------------------------------

def extract_23pole(g: Multipole, e: int, v: int) -> Multipole:
    """T = (g - e) - v with connectors (f1, f2) and the three ends at v."""
    edge = g.edge_map().get(e)
    if edge is None or not edge.is_link:
        raise MultipoleError(f"edge {e} is not a link of {g.name or 'the graph'}")
    if v in (edge.a.ref, edge.b.ref):
        raise MultipoleError(f"v{v} is an endpoint of edge {e}")
    return remove_vertex(cut_edge(g, e), v).renamed(f"T({g.name})" if g.name else None)


def valid_23pole_choices(g: Multipole) -> List[Tuple[int, int]]:
    """(e, v) pairs with v adjacent to neither endpoint of e, in (edge id, vertex id) order."""
    adj = adjacency_sets(g)
    out = []
    for edge in sorted(g.edges, key=lambda x: x.id):
        if not edge.is_link or edge.is_loop:
            continue
        a, b = edge.a.ref, edge.b.ref
        blocked = {a, b} | adj[a] | adj[b]
        out.extend((edge.id, v) for v in sorted(g.vertices) if v not in blocked)
    return out


def canonical_23pole_choice(g: Multipole, min_girth: Optional[int] = None) -> Tuple[int, int]:
    for e, v in valid_23pole_choices(g):
        if min_girth is None or girth(extract_23pole(g, e, v)) >= min_girth:
            return e, v
    raise MultipoleError(f"no (2,3)-pole of {g.name or 'the graph'} reaches girth {min_girth}")


@lru_cache(maxsize=None)
def tp() -> Multipole:
    g = petersen()
    return extract_23pole(g, *canonical_23pole_choice(g)).renamed("T_P")


@lru_cache(maxsize=None)
def tj(k: int) -> Multipole:
    """T(J_k) with girth 6: the removal destroys every 5-cycle of J_k."""
    _check_odd(k, 5, "T(J_k)")
    g = flower_snark(k)
    e, v = canonical_23pole_choice(g, min_girth=6)
    logger.debug("T(J%d) uses edge %d and vertex %d", k, e, v)
    return extract_23pole(g, e, v).renamed(f"T(J{k})")


def h6() -> Multipole:
    """6-cycle u_1..u_6 with dangling e_i at u_i; connectors (e1,e4), (e2,e5), (e3,e6)."""
    links = [(i, (i + 1) % 6) for i in range(6)]
    return _pole(6, links, list(range(6)), [[0, 3], [1, 4], [2, 5]], name="H6")


def _apex_claws() -> Multipole:
    """Three vertices with three dangling edges each; connector j holds edge j of every vertex."""
    dangling = [v for v in range(3) for _ in range(3)]
    return _pole(3, [], dangling, [[3 * v + j for v in range(3)] for j in range(3)])


def ttt_sc(t1: Multipole, t2: Multipole, t3: Multipole) -> Multipole:
    """
    (2,2,2)-pole: three apex vertices 0, 1, 2, apex i joined to position i of every
    3-connector; the output connectors are the 2-connectors of t1, t2, t3.
    """
    for i, t in enumerate((t1, t2, t3), 1):
        if t.signature != (2, 3):
            raise MultipoleError(f"TTT_sc needs (2,3)-poles, argument {i} has {t.signature}")
    acc = _apex_claws()
    for t in (t1, t2, t3):
        acc = junction(acc, t, 0, 1)
    return acc.renamed("TTT_sc")


def join_h6_ttt(t1: Multipole, t2: Multipole, t3: Multipole) -> Multipole:
    """H6 * TTT_sc(t1, t2, t3): t_j's 2-connector meets (e_j, e_{j+3})."""
    acc = junction(ttt_sc(t1, t2, t3), h6(), 0, 0)
    acc = self_junction(acc, 0, 2)
    acc = self_junction(acc, 0, 1)
    return acc.renamed(f"H6*TTT({t1.name}, {t2.name}, {t3.name})")


def g36() -> Multipole:
    t = tp()
    return join_h6_ttt(t, t, t).renamed("G36")


def g66() -> Multipole:
    t = tj(5)
    return join_h6_ttt(t, t, t).renamed("G66")


APEX_VERTICES = (0, 1, 2)


def girth6_orders(limit: int) -> List[int]:
    return list(range(66, limit + 1, 8))


def family_girth6(n: int) -> Multipole:
    """Order-n member: one T(J_5) of G_66 is replaced by T(J_{5+2k}), n = 66 + 8k."""
    if n < 66 or n % 8 != 2:
        raise MultipoleError(f"girth-6 family needs n >= 66 with n = 2 (mod 8), got {n}")
    k = (n - 66) // 8
    return join_h6_ttt(tj(5 + 2 * k), tj(5), tj(5)).renamed(f"G{n}")


# --- supervertex, superedges, superpaths and supercycles --------------------------

def supervertex_w() -> Multipole:
    """
    (3,3,1)-pole W: vertex w carries the first semiedge of both 3-connectors and the
    residual one; positions 2 and 3 pass straight through on isolated edges.
    """
    return _pole(
        1, [], [0, 0, 0], [[0, 3, 4], [1, 5, 6], [2]],
        isolated=[(3, 5), (4, 6)], name="W",
    )


def superedge_lemma_holds(colset) -> bool:
    """
    Every (a, b, c, d, e) with a + b = c + d + e != 0 is realised as (a, b2, b3, c, d, e)
    for some b2 + b3 = b.
    """
    for a in COLOURS:
        for b in COLOURS:
            if a == b:
                continue
            for c in COLOURS:
                for d in COLOURS:
                    e = add(a, b, c, d)
                    if e == 0:
                        continue
                    if not any(
                        (a, b2, add(b, b2), c, d, e) in colset
                        for b2 in COLOURS if b2 != b
                    ):
                        return False
    return True


def superpath_colouring_set(length: int) -> frozenset:
    """The colouring set every `length`-superpath must have, lifted from the path P_length."""
    expected: Set[BoundaryColouring] = set()
    for t in enumerate_colouring_set(path_multipole(length)):
        c_in, c_out, rest = t[0], t[1], t[2:]
        for a1 in COLOURS:
            for a2 in COLOURS:
                a3 = add(c_in, a1, a2)
                if a3 == 0:
                    continue
                for b1 in COLOURS:
                    for b2 in COLOURS:
                        b3 = add(c_out, b1, b2)
                        if b3:
                            expected.add((a1, a2, a3, b1, b2, b3) + tuple(rest))
    return frozenset(expected)


def _superedge_from(g: Multipole, u: int, v: int, name: str) -> Multipole:
    return remove_vertices(g, (u, v)).renamed(name)


@lru_cache(maxsize=None)
def isaacs_pair() -> Tuple[int, int]:
    """
    Least pair u < v of J_5 at distance 4, both in units 0..2 (so units 3 and 4 stay a
    Y_2), whose removal leaves a proper (3,3)-pole of girth at least 6 with the
    superedge colouring property, and whose 1-superpath has the path colouring set.

    The girth bound keeps every superedge built from this pair free of 5-cycles, so
    superpositions of a girth-6 base graph keep girth 6.
    """
    g = flower_snark(5)
    adj = adjacency_sets(g)
    sp1_expected = superpath_colouring_set(1)
    for u in range(12):
        dist = bfs_distances(adj, u)
        for v in range(u + 1, 12):
            if dist.get(v) != 4:
                continue
            a5 = _superedge_from(g, u, v, "A5")
            if girth(a5) < 6 or not is_proper(a5):
                continue
            if not superedge_lemma_holds(enumerate_colouring_set(a5)):
                continue
            sp1 = serial_junction(serial_junction(a5, supervertex_w()), a5)
            if enumerate_colouring_set(sp1) != sp1_expected:
                continue
            logger.info("Isaacs superedge A5 removes v%d and v%d from J5", u, v)
            return u, v
    raise MultipoleError("no vertex pair of J5 yields a valid Isaacs superedge")


@lru_cache(maxsize=None)
def isaacs_superedge(k: int) -> Multipole:
    """A_k = J_k minus the A_5 pair; units 3..k-1 form the Y_{k-3} substituted for Y_2."""
    _check_odd(k, 5, "Isaacs superedge")
    u, v = isaacs_pair()
    return _superedge_from(flower_snark(k), u, v, f"A{k}")


def superpath(superedges: Sequence[Multipole], length: Optional[int] = None) -> Multipole:
    """F_1 o W o F_2 o ... o W o F_{m+1}; residual connector lists the W's in order."""
    m = len(superedges) - 1
    if length is not None and length != m:
        raise MultipoleError(f"a {length}-superpath needs {length + 1} superedges, got {len(superedges)}")
    if m < 1:
        raise MultipoleError("a superpath needs at least two superedges")
    acc = superedges[0]
    for f in superedges[1:]:
        acc = serial_junction(serial_junction(acc, supervertex_w()), f)
    return acc.renamed(f"SP{m}")


def supercycle(superedges: Sequence[Multipole], k: Optional[int] = None) -> Multipole:
    """closure(SP_{k-1} o W): a k-pole whose semiedges sit on W_1 .. W_k in order."""
    n = len(superedges)
    if k is not None and k != n:
        raise MultipoleError(f"a {k}-supercycle needs {k} superedges, got {n}")
    if n < 2:
        raise MultipoleError("a supercycle needs k >= 2")
    path = superpath(superedges)
    return closure(serial_junction(path, supervertex_w())).renamed(f"SC{n}")


def standard_supercycle(k: int, enlarged: int = 5) -> Multipole:
    """SC_k over A_5 copies, the first superedge replaced by A_enlarged."""
    edges = [isaacs_superedge(enlarged)] + [isaacs_superedge(5)] * (k - 1)
    return supercycle(edges)


def _residual_vertices(sc: Multipole) -> List[int]:
    where = sc.semiedge_locations()
    edges = sc.edge_map()
    out = []
    for s in sc.connectors[0].semiedges:
        e = edges[where[s][0]]
        end = e.b if where[s][1] == "a" else e.a
        out.append(end.ref)
    return out


def superpose_with_lift(g: Multipole, cycle: Sequence[int],
                        sc: Multipole) -> Tuple[Multipole, Dict[int, int]]:
    """
    Sup(g, C, SC_k) plus the vertex lift: vertices off the cycle keep their ids and
    cycle vertex i maps to the vertex of the i-th supervertex.
    """
    k = len(cycle)
    if not is_cycle(g, cycle):
        raise MultipoleError(f"{list(cycle)} is not a cycle of {g.name or 'the graph'}")
    if sc.signature != (k,):
        raise MultipoleError(f"supercycle signature {sc.signature} does not match a {k}-cycle")
    rest = remove_subgraph(g, cycle)
    if rest.signature != (k,):
        raise MultipoleError("the cycle has a chord; each cycle vertex needs one outward edge")
    offset = max(rest.vertices, default=-1) + 1
    lift = {v: v for v in rest.vertices}
    for v, w in zip(cycle, _residual_vertices(sc)):
        lift[v] = w + offset
    out = junction(rest, sc, 0, 0)
    return out.renamed(f"Sup({g.name}, C{k})"), lift


def superpose(g: Multipole, cycle: Sequence[int], sc: Multipole) -> Multipole:
    return superpose_with_lift(g, cycle, sc)[0]


# --- cycle selection and the cyclically 6-connected family ------------------------

CC6_BASES = {2: (306, 15), 4: (324, 16), 6: (342, 17)}

_SELECT: Dict[str, object] = {}


def _init_selection(g: Multipole, k: int, verify: bool) -> None:
    _SELECT.update(g=g, k=k, verify=verify)


def _cycle_qualifies(cycle: Tuple[int, ...]) -> bool:
    g: Multipole = _SELECT["g"]
    if cut_avoiding(g, cycle, 5) is not None:
        return False
    if not _SELECT["verify"]:
        return True
    out = superpose(g, cycle, standard_supercycle(_SELECT["k"]))
    return is_cyclically_k_connected(out, 6, jobs=1)


def select_superposition_cycle(g: Multipole, k: int, verify: bool = False,
                               jobs: Optional[int] = None) -> Tuple[int, ...]:
    """
    First k-cycle in canonical order that meets every cycle-separating cut of at most
    five edges; with `verify`, the superposed graph must also be cyclically 6-connected.
    """
    jobs = config.get_settings().jobs if jobs is None else jobs
    cycles = find_cycles(g, k)
    logger.info("🔍 %d cycles of length %d in %s", len(cycles), k, g.name)
    hit = parallel_first(_cycle_qualifies, cycles, jobs, _init_selection, (g, k, verify))
    if hit is None:
        raise MultipoleError(f"no {k}-cycle of {g.name} qualifies for superposition")
    return cycles[hit]


@lru_cache(maxsize=None)
def cc6_cycle(k: int) -> Tuple[int, ...]:
    """First k-cycle of G_36 whose superposition is cyclically 6-connected; slow."""
    return select_superposition_cycle(g36(), k, verify=True)


def cc6_order(n: int) -> Tuple[int, int]:
    """(cycle length, enlarged superedge index) for the cyclically 6-connected member of order n."""
    residue = n % 8
    if residue == 0:
        raise MultipoleError("orders divisible by 8 are not produced by this family")
    if residue not in CC6_BASES:
        raise MultipoleError(f"order {n} is odd or otherwise inadmissible")
    base, k = CC6_BASES[residue]
    if n < base:
        raise MultipoleError(f"order {n} is below the smallest member {base} of its residue class")
    return k, 5 + 2 * ((n - base) // 8)


def family_cc6(n: int) -> Multipole:
    """G_306 / G_324 / G_342 from G_36, one A_5 replaced by A_{5+2k} for n = base + 8k."""
    k, enlarged = cc6_order(n)
    out = superpose(g36(), cc6_cycle(k), standard_supercycle(k, enlarged))
    return out.renamed(f"G{n}")


# --- generic products ----------------------------------------------------------------

def dot_product(g1: Multipole, e1: int, e2: int, g2: Multipole, u: int, v: int) -> Multipole:
    """
    Cut e1 = a1b1 and e2 = a2b2 in g1, remove the adjacent pair u, v of g2 with
    remaining neighbours p1, p2 of u and q1, q2 of v; join a1-p1, b1-p2, a2-q1, b2-q2.
    """
    edges = g1.edge_map()
    for e in (e1, e2):
        if e not in edges or not edges[e].is_link:
            raise MultipoleError(f"edge {e} is not a link of the first graph")
    ends1 = {edges[e1].a.ref, edges[e1].b.ref}
    ends2 = {edges[e2].a.ref, edges[e2].b.ref}
    if e1 == e2 or ends1 & ends2:
        raise MultipoleError(f"edges {e1} and {e2} are not independent")
    left = merge_connectors(cut_edges(g1, (e1, e2)), (0, 1))
    right = merge_connectors(remove_adjacent_pair(g2, u, v), (0, 1))
    return junction(left, right, 0, 0).renamed(f"{g1.name}.{g2.name}")


def i_extension(g: Multipole, e: int, f: int) -> Multipole:
    """Subdivide e and f once each and join the two new vertices."""
    if e == f:
        raise MultipoleError("I-extension needs two distinct edges")
    m = cut_edges(g, (e, f))
    m = junction(m, i_piece(), 0, 0)
    return self_junction(m, 0, 1).renamed(f"I({g.name})" if g.name else None)
