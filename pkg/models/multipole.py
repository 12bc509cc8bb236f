# models/multipole.py - cubic multipoles with ordered connectors
"""
Immutable data model for multipoles.

An edge has two ends; each end is either incident with a vertex ("v<i>") or free
("s<j>", a semiedge). Semiedges are grouped into ordered connectors. Operations on
multipoles live in multipole_ops.py and always return new values.
"""

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from models.errors import GraphFormatError


class EdgeEnd(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["v", "s"]
    ref: int

    @classmethod
    def vertex(cls, v: int) -> "EdgeEnd":
        return cls(kind="v", ref=v)

    @classmethod
    def free(cls, s: int) -> "EdgeEnd":
        return cls(kind="s", ref=s)

    @classmethod
    def parse(cls, text: str) -> "EdgeEnd":
        text = text.strip()
        if len(text) < 2 or text[0] not in "vs" or not text[1:].isdigit():
            raise GraphFormatError(f"bad edge end '{text}'")
        return cls(kind=text[0], ref=int(text[1:]))

    @property
    def is_free(self) -> bool:
        return self.kind == "s"

    def __str__(self) -> str:
        return f"{self.kind}{self.ref}"


class Edge(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int
    a: EdgeEnd
    b: EdgeEnd

    @property
    def kind(self) -> str:
        attached = (not self.a.is_free) + (not self.b.is_free)
        return ("isolated", "dangling", "link")[attached]

    @property
    def is_link(self) -> bool:
        return not self.a.is_free and not self.b.is_free

    @property
    def is_loop(self) -> bool:
        return self.is_link and self.a.ref == self.b.ref

    def ends(self) -> Tuple[EdgeEnd, EdgeEnd]:
        return (self.a, self.b)

    def other(self, end: EdgeEnd) -> EdgeEnd:
        return self.b if end == self.a else self.a


class Connector(BaseModel):
    model_config = ConfigDict(frozen=True)

    semiedges: Tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.semiedges)


class ValidationResult(BaseModel):
    valid: bool
    errors: List[str] = []
    vertex_count: int = 0
    link_count: int = 0
    semiedge_count: int = 0

    @property
    def first_error(self) -> Optional[str]:
        return self.errors[0] if self.errors else None


class Multipole(BaseModel):
    """A cubic multipole: vertices, edges and ordered connectors."""
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    connectors: Tuple[Connector, ...] = ()
    name: Optional[str] = None

    # --- counts -----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def semiedge_count(self) -> int:
        return sum(c.width for c in self.connectors)

    @property
    def is_closed(self) -> bool:
        return not self.connectors and all(e.is_link for e in self.edges)

    @property
    def signature(self) -> Tuple[int, ...]:
        return tuple(c.width for c in self.connectors)

    # --- lookups (recomputed on demand; the model stays a plain value) ----

    def edge_map(self) -> Dict[int, Edge]:
        return {e.id: e for e in self.edges}

    def semiedge_order(self) -> List[int]:
        """Semiedge ids in canonical order: connector order, then position."""
        return [s for c in self.connectors for s in c.semiedges]

    def semiedge_locations(self) -> Dict[int, Tuple[int, str]]:
        """semiedge id -> (edge id, 'a' | 'b')"""
        where = {}
        for e in self.edges:
            if e.a.is_free:
                where[e.a.ref] = (e.id, "a")
            if e.b.is_free:
                where[e.b.ref] = (e.id, "b")
        return where

    def incidence(self) -> Dict[int, List[Tuple[int, str]]]:
        """vertex -> its edge ends as (edge id, 'a' | 'b'), edge-id order, a before b"""
        inc: Dict[int, List[Tuple[int, str]]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges, key=lambda x: x.id):
            if not e.a.is_free:
                inc.setdefault(e.a.ref, []).append((e.id, "a"))
            if not e.b.is_free:
                inc.setdefault(e.b.ref, []).append((e.id, "b"))
        return inc

    def neighbours(self) -> Dict[int, List[int]]:
        """Adjacency through links, with multiplicity; a loop lists the vertex twice."""
        adj: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.is_link:
                adj[e.a.ref].append(e.b.ref)
                adj[e.b.ref].append(e.a.ref)
        return adj

    def links_between(self, u: int, v: int) -> List[Edge]:
        return [
            e for e in self.edges
            if e.is_link and {e.a.ref, e.b.ref} == {u, v}
        ]

    def dangling_at(self, v: int) -> List[Edge]:
        return [
            e for e in self.edges
            if e.kind == "dangling" and (e.a if not e.a.is_free else e.b).ref == v
        ]

    def max_ids(self) -> Tuple[int, int, int]:
        """Largest vertex, edge and semiedge id in use (-1 when none)."""
        max_v = max(self.vertices, default=-1)
        max_e = max((e.id for e in self.edges), default=-1)
        free = [x.ref for e in self.edges for x in e.ends() if x.is_free]
        return max_v, max_e, max(free, default=-1)

    def renamed(self, name: Optional[str]) -> "Multipole":
        return self.model_copy(update={"name": name})

    def __repr__(self) -> str:
        return (
            f"Multipole({self.name or 'unnamed'}: {self.order} vertices, "
            f"{self.edge_count} edges, connectors {self.signature})"
        )
