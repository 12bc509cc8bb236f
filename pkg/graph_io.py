# graph_io.py - graph6, multipole documents and canonical forms
"""
Reading and writing graphs.

- graph6 (closed simple cubic graphs only) goes through networkx's codec.
- `.mpole` documents are a line format that keeps semiedges and connectors:

      mpole 1 <vertex count>
      name <free text>                 (optional)
      recipe <recipe text>             (optional provenance)
      vertices <id> <id> ...
      edge <id> <end> <end>            ends are v<vertex> or s<semiedge>
      connector s<id> s<id> ...        one line per connector, in order

  Blank lines and lines starting with '#' are ignored.
- canonical_form() labels a multipole canonically by colour refinement with
  individualisation, keeping connector order and semiedge positions fixed.
"""

import hashlib
import logging
import os
from typing import Dict, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, ValidationError

import config
from models.errors import GraphFormatError, MultipoleError
from models.multipole import Connector, Edge, EdgeEnd, Multipole
from multipole_ops import validate
from utils.graph_utils import from_networkx

logger = logging.getLogger(__name__)


# --- graph6 --------------------------------------------------------------------

def write_graph6(g: Multipole) -> str:
    """Standard graph6 of a closed simple graph, vertices taken in sorted id order."""
    if not g.is_closed:
        raise GraphFormatError("not a closed graph: graph6 cannot carry semiedges")
    seen = set()
    for e in g.edges:
        key = frozenset((e.a.ref, e.b.ref))
        if e.is_loop or key in seen:
            raise GraphFormatError("graph6 only encodes simple graphs")
        seen.add(key)
    pos = {v: i for i, v in enumerate(sorted(g.vertices))}
    G = nx.Graph()
    G.add_nodes_from(range(g.order))
    G.add_edges_from((pos[e.a.ref], pos[e.b.ref]) for e in g.edges)
    return nx.to_graph6_bytes(G, header=False).decode("ascii").strip()


def parse_graph6(text: str, name: Optional[str] = None) -> Multipole:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    try:
        G = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as exc:
        raise GraphFormatError(f"malformed graph6 string: {exc}") from None
    g = from_networkx(G, name=name)
    result = validate(g)
    if not result.valid:
        raise GraphFormatError(f"graph6 input is not cubic: {result.first_error}")
    return g


# --- multipole documents --------------------------------------------------------------

class MultipoleDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    multipole: Multipole
    recipe: Optional[str] = None
    version: int = config.MPOLE_FORMAT_VERSION


def write_mpole(m: Multipole, recipe: Optional[str] = None) -> str:
    lines = [f"mpole {config.MPOLE_FORMAT_VERSION} {m.order}"]
    if m.name:
        lines.append(f"name {m.name}")
    if recipe:
        lines.append(f"recipe {recipe}")
    lines.append(" ".join(["vertices"] + [str(v) for v in m.vertices]))
    for e in m.edges:
        lines.append(f"edge {e.id} {e.a} {e.b}")
    for c in m.connectors:
        lines.append(" ".join(["connector"] + [f"s{s}" for s in c.semiedges]))
    return "\n".join(lines) + "\n"


def _semiedge_ref(token: str, lineno: int) -> int:
    if not token.startswith("s") or not token[1:].isdigit():
        raise GraphFormatError(f"line {lineno}: '{token}' is not a semiedge reference")
    return int(token[1:])


def parse_mpole(text: str) -> MultipoleDocument:
    header: Optional[Tuple[int, int]] = None
    name = recipe = None
    vertices: Optional[List[int]] = None
    edges: List[Edge] = []
    connectors: List[Connector] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, _, rest = line.partition(" ")
        if header is None:
            parts = line.split()
            if keyword != "mpole" or len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'mpole <version> <vertex count>'")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise GraphFormatError(f"line {lineno}: malformed header") from None
            if header[0] != config.MPOLE_FORMAT_VERSION:
                raise GraphFormatError(f"unsupported mpole format version {header[0]}")
            continue
        try:
            if keyword == "name":
                name = rest.strip()
            elif keyword == "recipe":
                recipe = rest.strip()
            elif keyword == "vertices":
                vertices = [int(t) for t in rest.split()]
            elif keyword == "edge":
                parts = rest.split()
                if len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: expected 'edge <id> <end> <end>'")
                edges.append(Edge(id=int(parts[0]), a=EdgeEnd.parse(parts[1]), b=EdgeEnd.parse(parts[2])))
            elif keyword == "connector":
                connectors.append(Connector(semiedges=tuple(_semiedge_ref(t, lineno) for t in rest.split())))
            else:
                raise GraphFormatError(f"line {lineno}: unknown keyword '{keyword}'")
        except (ValueError, ValidationError) as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    if header is None:
        raise GraphFormatError("missing 'mpole' header")
    if vertices is None:
        vertices = list(range(header[1]))
    if len(vertices) != header[1]:
        raise GraphFormatError(f"header announces {header[1]} vertices, document lists {len(vertices)}")
    m = Multipole(vertices=tuple(vertices), edges=tuple(edges), connectors=tuple(connectors), name=name)
    result = validate(m)
    if not result.valid:
        raise GraphFormatError(f"invalid multipole: {result.first_error}")
    return MultipoleDocument(multipole=m, recipe=recipe, version=header[0])


def save_mpole(m: Multipole, path: str, recipe: Optional[str] = None) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(write_mpole(m, recipe))


def load_graph(source: str) -> MultipoleDocument:
    """Read a .mpole document, a graph6 file, or an inline graph6 string."""
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as f:
            text = f.read()
        if text.lstrip().startswith("mpole") or source.endswith(".mpole"):
            return parse_mpole(text)
        first = next((ln for ln in text.splitlines() if ln.strip()), "")
        return MultipoleDocument(multipole=parse_graph6(first, name=os.path.basename(source)))
    try:
        return MultipoleDocument(multipole=parse_graph6(source))
    except GraphFormatError:
        raise GraphFormatError(f"'{source}' is neither a readable file nor a graph6 string") from None


# --- canonical form ----------------------------------------------------------------------

class _IncidenceGraph:
    """Vertices, edges and semiedges as nodes; an edge node touches its two ends."""

    def __init__(self, m: Multipole):
        self.labels: List[Tuple] = []
        self.adj: List[List[int]] = []
        node_of_vertex: Dict[int, int] = {}
        node_of_semiedge: Dict[int, int] = {}
        for v in m.vertices:
            node_of_vertex[v] = self._add(("v",))
        for ci, c in enumerate(m.connectors):
            for pos, s in enumerate(c.semiedges):
                node_of_semiedge[s] = self._add(("s", ci, pos))
        for e in m.edges:
            node = self._add(("e",))
            for end in e.ends():
                other = node_of_semiedge[end.ref] if end.is_free else node_of_vertex[end.ref]
                self.adj[node].append(other)
                self.adj[other].append(node)

    def _add(self, label: Tuple) -> int:
        self.labels.append(label)
        self.adj.append([])
        return len(self.labels) - 1

    def __len__(self) -> int:
        return len(self.labels)


def _rank(keys: List) -> List[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(graph: _IncidenceGraph, colours: List[int]) -> List[int]:
    while True:
        keys = [
            (colours[i], tuple(sorted(colours[j] for j in graph.adj[i])))
            for i in range(len(graph))
        ]
        refined = _rank(keys)
        if max(refined, default=-1) == max(colours, default=-1):
            return refined
        colours = refined


def _encode(graph: _IncidenceGraph, colours: List[int]) -> Tuple:
    inverse = sorted(range(len(graph)), key=lambda i: colours[i])
    return tuple(
        (graph.labels[i], tuple(sorted(colours[j] for j in graph.adj[i])))
        for i in inverse
    )


class _CanonicalSearch:
    """
    Individualisation-refinement over the incidence graph, keeping the least leaf code.

    Two leaves with the same code give an automorphism. Children of a search node
    that an automorphism fixing the individualised path maps onto an explored child
    are skipped, since their subtrees produce the same codes.
    """

    def __init__(self, graph: _IncidenceGraph):
        self.graph = graph
        self.best: Optional[Tuple] = None
        self.leaves: Dict[Tuple, List[int]] = {}
        self.automorphisms: List[List[int]] = []

    def run(self, colours: List[int], path: Tuple[int, ...] = ()) -> None:
        cells: Dict[int, List[int]] = {}
        for i, c in enumerate(colours):
            cells.setdefault(c, []).append(i)
        target = min(
            (cell for cell in cells.values() if len(cell) > 1),
            key=lambda cell: (len(cell), colours[cell[0]]),
            default=None,
        )
        if target is None:
            self._leaf(colours)
            return
        explored: List[int] = []
        for node in target:
            if explored:
                orbit = self._orbits(target, path)
                if orbit[node] in {orbit[x] for x in explored}:
                    continue
            explored.append(node)
            split = _rank([(c, 0 if i == node else 1) for i, c in enumerate(colours)])
            self.run(_refine(self.graph, split), path + (node,))

    def _leaf(self, colours: List[int]) -> None:
        code = _encode(self.graph, colours)
        seen = self.leaves.get(code)
        if seen is None:
            self.leaves[code] = colours
        else:
            node_at = {c: i for i, c in enumerate(seen)}
            gamma = [node_at[c] for c in colours]
            if any(i != j for i, j in enumerate(gamma)):
                self.automorphisms.append(gamma)
        if self.best is None or code < self.best:
            self.best = code

    def _orbits(self, cell: List[int], path: Tuple[int, ...]) -> Dict[int, int]:
        """Orbit representative of each cell member under the automorphisms fixing path."""
        parent = {x: x for x in cell}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.automorphisms:
            if any(gamma[p] != p for p in path):
                continue
            for x in cell:
                a, b = find(x), find(gamma[x])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return {x: find(x) for x in cell}


def canonical_form(m: Multipole) -> bytes:
    """Equal for two multipoles exactly when they are isomorphic respecting connectors."""
    graph = _IncidenceGraph(m)
    search = _CanonicalSearch(graph)
    search.run(_refine(graph, _rank(graph.labels)))
    signature = ",".join(str(w) for w in m.signature)
    body = ";".join(
        f"{'/'.join(map(str, label))}:{'.'.join(map(str, nbrs))}"
        for label, nbrs in (search.best or ())
    )
    return f"mpole-canon {m.order} [{signature}] {body}".encode("ascii")


def canonical_hash(m: Multipole) -> str:
    return hashlib.sha256(canonical_form(m)).hexdigest()


def is_isomorphic(m1: Multipole, m2: Multipole) -> bool:
    return canonical_form(m1) == canonical_form(m2)
