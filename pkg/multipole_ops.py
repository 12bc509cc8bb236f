# multipole_ops.py - structural operations on multipoles
"""
Junctions, closures and removals on cubic multipoles.

Every operation is pure: it copies the input into a small mutable builder, edits
the copy and freezes it into a new Multipole. Connectors created by an operation
are appended after the surviving ones, and surviving connectors keep their order.
"""

import logging
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

from models.errors import MultipoleError
from models.multipole import Connector, Edge, EdgeEnd, Multipole, ValidationResult

logger = logging.getLogger(__name__)


class _Builder:
    """Mutable working copy of a multipole."""

    def __init__(self):
        self.vertices: List[int] = []
        self.edges: Dict[int, List[EdgeEnd]] = {}
        self.connectors: List[List[int]] = []
        self.where: Dict[int, Tuple[int, int]] = {}  # semiedge -> (edge id, slot)
        self.next_vertex = 0
        self.next_edge = 0
        self.next_semiedge = 0

    @classmethod
    def of(cls, m: Multipole) -> "_Builder":
        b = cls()
        b.add(m, 0, 0, 0)
        return b

    def add(self, m: Multipole, dv: int, de: int, ds: int) -> None:
        for v in m.vertices:
            self.vertices.append(v + dv)
            self.next_vertex = max(self.next_vertex, v + dv + 1)
        for e in m.edges:
            ends = [
                EdgeEnd(kind=x.kind, ref=x.ref + (ds if x.is_free else dv))
                for x in e.ends()
            ]
            self.edges[e.id + de] = ends
            self.next_edge = max(self.next_edge, e.id + de + 1)
            for slot, x in enumerate(ends):
                if x.is_free:
                    self.where[x.ref] = (e.id + de, slot)
                    self.next_semiedge = max(self.next_semiedge, x.ref + 1)
        for c in m.connectors:
            self.connectors.append([s + ds for s in c.semiedges])

    def offsets(self) -> Tuple[int, int, int]:
        return self.next_vertex, self.next_edge, self.next_semiedge

    def fresh_semiedge(self) -> int:
        s = self.next_semiedge
        self.next_semiedge += 1
        return s

    def fresh_edge(self) -> int:
        e = self.next_edge
        self.next_edge += 1
        return e

    def detach(self, edge_id: int, slot: int) -> int:
        """Turn one end of an edge into a new semiedge."""
        s = self.fresh_semiedge()
        self.edges[edge_id][slot] = EdgeEnd.free(s)
        self.where[s] = (edge_id, slot)
        return s

    def splice(self, first: Tuple[int, int], second: Tuple[int, int]) -> int:
        """
        Join two edge ends: the end at `first` is replaced by the far end of the
        edge holding `second`, which disappears. The surviving edge keeps its id.
        """
        e1, slot1 = first
        e2, slot2 = second
        if e1 == e2:
            raise MultipoleError(f"joining both ends of edge {e1} closes a free loop")
        far = self.edges[e2][1 - slot2]
        del self.edges[e2]
        self.edges[e1][slot1] = far
        if far.is_free:
            self.where[far.ref] = (e1, slot1)
        return e1

    def fuse(self, s1: int, s2: int) -> int:
        if s1 == s2:
            raise MultipoleError(f"semiedge s{s1} cannot be fused with itself")
        try:
            first = self.where.pop(s1)
            second = self.where.pop(s2)
        except KeyError as exc:
            raise MultipoleError(f"unknown semiedge s{exc.args[0]}") from None
        return self.splice(first, second)

    def take_connectors(self, indices: Sequence[int]) -> List[List[int]]:
        taken = [self.connectors[i] for i in indices]
        keep = set(indices)
        self.connectors = [c for i, c in enumerate(self.connectors) if i not in keep]
        return taken

    def build(self, name: Optional[str] = None) -> Multipole:
        return Multipole(
            vertices=tuple(sorted(self.vertices)),
            edges=tuple(
                Edge(id=i, a=ends[0], b=ends[1]) for i, ends in sorted(self.edges.items())
            ),
            connectors=tuple(Connector(semiedges=tuple(c)) for c in self.connectors if c),
            name=name,
        )


# --- validation ------------------------------------------------------------

def validate(m: Multipole) -> ValidationResult:
    """Check every multipole invariant; errors are listed in discovery order."""
    errors: List[str] = []
    vertex_set = set(m.vertices)
    if len(vertex_set) != len(m.vertices):
        errors.append("duplicate vertex id")
    edge_ids = Counter(e.id for e in m.edges)
    for eid, n in sorted(edge_ids.items()):
        if n > 1:
            errors.append(f"duplicate edge id {eid}")

    degree: Counter = Counter()
    free_ends: Counter = Counter()
    for e in m.edges:
        for x in e.ends():
            if x.is_free:
                free_ends[x.ref] += 1
            elif x.ref not in vertex_set:
                errors.append(f"edge {e.id} references missing vertex v{x.ref}")
            else:
                degree[x.ref] += 1
    for v in m.vertices:
        if degree[v] != 3:
            errors.append(f"non-cubic vertex v{v} (degree {degree[v]})")
    for s, n in sorted(free_ends.items()):
        if n > 1:
            errors.append(f"duplicate semiedge s{s} on edges")

    listed: Counter = Counter()
    for i, c in enumerate(m.connectors):
        if c.width == 0:
            errors.append(f"empty connector {i}")
        for s in c.semiedges:
            listed[s] += 1
            if s not in free_ends:
                errors.append(f"dangling connector reference s{s} in connector {i}")
    for s, n in sorted(listed.items()):
        if n > 1:
            errors.append(f"duplicate semiedge s{s} in connectors")
    for s in sorted(free_ends):
        if s not in listed:
            errors.append(f"semiedge s{s} belongs to no connector")

    return ValidationResult(
        valid=not errors,
        errors=errors,
        vertex_count=m.order,
        link_count=sum(1 for e in m.edges if e.is_link),
        semiedge_count=len(free_ends),
    )


def ensure_valid(m: Multipole) -> Multipole:
    result = validate(m)
    if not result.valid:
        raise MultipoleError(result.first_error)
    return m


# --- junctions -------------------------------------------------------------

def _check_index(m: Multipole, idx: int) -> None:
    if not 0 <= idx < len(m.connectors):
        raise MultipoleError(f"connector index {idx} out of range for signature {m.signature}")


def junction_offsets(m: Multipole) -> Tuple[int, int, int]:
    """Shifts applied to the second operand's vertex, edge and semiedge ids."""
    max_v, max_e, max_s = m.max_ids()
    return max_v + 1, max_e + 1, max_s + 1


def junction(m: Multipole, n: Multipole, c_m: int, c_n: int) -> Multipole:
    """Fuse connector c_m of m with connector c_n of n, position by position."""
    _check_index(m, c_m)
    _check_index(n, c_n)
    w_m, w_n = m.connectors[c_m].width, n.connectors[c_n].width
    if w_m != w_n:
        raise MultipoleError(f"width mismatch in junction: {w_m} vs {w_n}")
    b = _Builder.of(m)
    b.add(n, *junction_offsets(m))
    left, right = b.take_connectors([c_m, len(m.connectors) + c_n])
    for s1, s2 in zip(left, right):
        b.fuse(s1, s2)
    return b.build()


def self_junction(m: Multipole, c1: int, c2: int) -> Multipole:
    """
    Fuse two connectors of the same multipole position by position.

    With c1 == c2 the connector is joined with its own reverse: position i meets
    position w - 1 - i, so the 2-connector left by cut_edge rejoins the cut edge.
    """
    _check_index(m, c1)
    _check_index(m, c2)
    if c1 == c2:
        width = m.connectors[c1].width
        if width % 2:
            raise MultipoleError(f"a connector of odd width {width} cannot be joined with itself")
        b = _Builder.of(m)
        (own,) = b.take_connectors([c1])
        for s1, s2 in zip(own[: width // 2], reversed(own[width // 2:])):
            b.fuse(s1, s2)
        return b.build()
    if m.connectors[c1].width != m.connectors[c2].width:
        raise MultipoleError(
            f"width mismatch in self-junction: {m.connectors[c1].width} vs {m.connectors[c2].width}"
        )
    b = _Builder.of(m)
    left, right = b.take_connectors([c1, c2])
    for s1, s2 in zip(left, right):
        b.fuse(s1, s2)
    return b.build()


def serial_junction(m: Multipole, n: Multipole) -> Multipole:
    """
    M(I, S1, R1) o N(S2, O, R2) = (I, O, R1 + R2).

    A missing residual counts as empty; an empty merged residual is dropped.
    """
    for label, x in (("left", m), ("right", n)):
        if not 2 <= len(x.connectors) <= 3:
            raise MultipoleError(
                f"serial junction needs (in, out[, residual]) connectors; {label} has {x.signature}"
            )
    if m.connectors[1].width != n.connectors[0].width:
        raise MultipoleError(
            f"width mismatch in serial junction: {m.connectors[1].width} vs {n.connectors[0].width}"
        )
    b = _Builder.of(m)
    b.add(n, *junction_offsets(m))
    k = len(m.connectors)
    blocks = b.connectors
    inp, s1 = blocks[0], blocks[1]
    r1 = blocks[2] if k == 3 else []
    s2, out = blocks[k], blocks[k + 1]
    r2 = blocks[k + 2] if len(n.connectors) == 3 else []
    for x, y in zip(s1, s2):
        b.fuse(x, y)
    b.connectors = [inp, out, r1 + r2]
    return b.build()


def closure(m: Multipole) -> Multipole:
    """Join the first two connectors of m with each other."""
    if len(m.connectors) < 2:
        raise MultipoleError("closure needs at least two connectors")
    return self_junction(m, 0, 1)


def permute_connector(m: Multipole, idx: int, order: Sequence[int]) -> Multipole:
    """Reorder the semiedges of one connector: position i takes old position order[i]."""
    _check_index(m, idx)
    old = m.connectors[idx].semiedges
    if sorted(order) != list(range(len(old))):
        raise MultipoleError(f"{list(order)} is not a permutation of connector {idx}")
    conns = list(m.connectors)
    conns[idx] = Connector(semiedges=tuple(old[i] for i in order))
    return m.model_copy(update={"connectors": tuple(conns)})


def reorder_connectors(m: Multipole, order: Sequence[int]) -> Multipole:
    if sorted(order) != list(range(len(m.connectors))):
        raise MultipoleError(f"{list(order)} is not a permutation of the connectors")
    return m.model_copy(update={"connectors": tuple(m.connectors[i] for i in order)})


def merge_connectors(m: Multipole, indices: Sequence[int]) -> Multipole:
    """Concatenate several connectors into one, placed where the first of them was."""
    for i in indices:
        _check_index(m, i)
    merged = Connector(semiedges=tuple(s for i in indices for s in m.connectors[i].semiedges))
    conns = []
    for i, c in enumerate(m.connectors):
        if i == indices[0]:
            conns.append(merged)
        elif i not in indices:
            conns.append(c)
    return m.model_copy(update={"connectors": tuple(conns)})


# --- removals --------------------------------------------------------------

def _require_vertex(m: Multipole, v: int) -> None:
    if v not in set(m.vertices):
        raise MultipoleError(f"missing vertex v{v}")


def remove_vertex(m: Multipole, v: int) -> Multipole:
    """M - v: the three ends at v become a trailing 3-connector (edge-id order)."""
    _require_vertex(m, v)
    ends = m.incidence()[v]
    b = _Builder.of(m)
    b.vertices.remove(v)
    conn = [b.detach(eid, 0 if side == "a" else 1) for eid, side in ends]
    b.connectors.append(conn)
    return b.build()


def remove_vertices(m: Multipole, vertices: Sequence[int]) -> Multipole:
    """M - (v1, v2, ...): one trailing 3-connector per vertex, in the given order."""
    for v in vertices:
        m = remove_vertex(m, v)
    return m


def remove_adjacent_pair(m: Multipole, u: int, v: int) -> Multipole:
    """M - [u, v]: drop both vertices and their link; u's two ends, then v's."""
    _require_vertex(m, u)
    _require_vertex(m, v)
    if u == v:
        raise MultipoleError("remove_adjacent_pair needs two distinct vertices")
    links = m.links_between(u, v)
    if not links:
        raise MultipoleError(f"v{u} and v{v} are not adjacent")
    if len(links) > 1:
        raise MultipoleError(f"v{u} and v{v} are joined by {len(links)} parallel edges")
    uv = links[0].id
    inc = m.incidence()
    b = _Builder.of(m)
    del b.edges[uv]
    for w in (u, v):
        b.vertices.remove(w)
        b.connectors.append(
            [b.detach(eid, 0 if side == "a" else 1) for eid, side in inc[w] if eid != uv]
        )
    return b.build()


def remove_subgraph(m: Multipole, vertices: Sequence[int]) -> Multipole:
    """
    Drop a vertex set together with the links inside it. Every link leaving the set
    keeps its outer end and gets a new semiedge; these form one trailing connector,
    ordered by the given vertex order and then by incidence.
    """
    removed = list(dict.fromkeys(vertices))
    for v in removed:
        _require_vertex(m, v)
    inside = set(removed)
    inc = m.incidence()
    edges = m.edge_map()
    b = _Builder.of(m)
    conn: List[int] = []
    for v in removed:
        b.vertices.remove(v)
        for eid, side in inc[v]:
            e = edges[eid]
            far = e.b if side == "a" else e.a
            if far.is_free:
                raise MultipoleError(f"v{v} carries a dangling edge; only links may be removed")
            if far.ref in inside:
                b.edges.pop(eid, None)
            else:
                conn.append(b.detach(eid, 0 if side == "a" else 1))
    b.connectors.append(conn)
    return b.build()


def cut_edge(m: Multipole, e: int) -> Multipole:
    """M - e: a link becomes two dangling edges; trailing connector (f1, f2), f1 at end a."""
    edge = m.edge_map().get(e)
    if edge is None:
        raise MultipoleError(f"missing edge {e}")
    if not edge.is_link:
        raise MultipoleError(f"edge {e} is a {edge.kind} edge, not a link")
    b = _Builder.of(m)
    f1 = b.fresh_semiedge()
    f2 = b.fresh_semiedge()
    e2 = b.fresh_edge()
    b.edges[e] = [edge.a, EdgeEnd.free(f1)]
    b.edges[e2] = [EdgeEnd.free(f2), edge.b]
    b.where[f1] = (e, 1)
    b.where[f2] = (e2, 0)
    b.connectors.append([f1, f2])
    return b.build()


def cut_edges(m: Multipole, edges: Sequence[int]) -> Multipole:
    for e in edges:
        m = cut_edge(m, e)
    return m


def suppress(m: Multipole, v: int) -> Multipole:
    """M ~ v: delete v's dangling edge and merge v's other two edges into one."""
    _require_vertex(m, v)
    dangling = m.dangling_at(v)
    if len(dangling) != 1:
        raise MultipoleError(f"v{v} carries {len(dangling)} dangling edges, expected exactly one")
    d = dangling[0]
    free = d.a if d.a.is_free else d.b
    rest = [(eid, 0 if side == "a" else 1) for eid, side in m.incidence()[v] if eid != d.id]
    b = _Builder.of(m)
    del b.edges[d.id]
    del b.where[free.ref]
    b.connectors = [[s for s in c if s != free.ref] for c in b.connectors]
    b.vertices.remove(v)
    first, second = sorted(rest)
    b.splice(first, second)
    return b.build()


# --- relabelling -----------------------------------------------------------

def compact(m: Multipole) -> Multipole:
    """Renumber vertices, edges and semiedges to 0.. keeping their relative order."""
    vmap = {v: i for i, v in enumerate(sorted(m.vertices))}
    smap = {s: i for i, s in enumerate(m.semiedge_order())}

    def end(x: EdgeEnd) -> EdgeEnd:
        return EdgeEnd(kind=x.kind, ref=smap[x.ref] if x.is_free else vmap[x.ref])

    edges = tuple(
        Edge(id=i, a=end(e.a), b=end(e.b))
        for i, e in enumerate(sorted(m.edges, key=lambda x: x.id))
    )
    return Multipole(
        vertices=tuple(range(m.order)),
        edges=edges,
        connectors=tuple(
            Connector(semiedges=tuple(smap[s] for s in c.semiedges)) for c in m.connectors
        ),
        name=m.name,
    )


def relabel_vertices(m: Multipole, mapping: Dict[int, int]) -> Multipole:
    """Apply a vertex bijection; used to produce isomorphic copies."""
    if sorted(mapping) != sorted(m.vertices) or len(set(mapping.values())) != len(mapping):
        raise MultipoleError("vertex mapping is not a bijection on the vertex set")

    def end(x: EdgeEnd) -> EdgeEnd:
        return x if x.is_free else EdgeEnd.vertex(mapping[x.ref])

    return m.model_copy(update={
        "vertices": tuple(sorted(mapping.values())),
        "edges": tuple(Edge(id=e.id, a=end(e.a), b=end(e.b)) for e in m.edges),
    })


def disjoint_union(m: Multipole, n: Multipole) -> Multipole:
    b = _Builder.of(m)
    b.add(n, *junction_offsets(m))
    return b.build()
