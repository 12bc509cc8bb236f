# criticality.py - removable pairs, criticality and essential edge pairs
"""
Criticality verdicts for closed cubic graphs.

A pair of vertices {u, v} is removable when G - (u, v) (G - [u, v] for adjacent
vertices) stays uncolourable. Both are evaluated on the compiled form of G with u
and v relaxed: a relaxed vertex constrains nothing, which is exactly what
deleting it and keeping its edges as dangling edges does, and the link between
two adjacent relaxed vertices is then an unconstrained edge.

One scan gives every verdict: adjacent pairs are checked first (any removable one
means not critical), then non-adjacent pairs, hinted pairs first. The first
removable non-adjacent pair settles strict criticality unless a full witness list
is requested.
"""

import logging
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel

import config
from colouring_engine import ColouringSearch, colouring_oracle, is_colourable, is_proper
from models.colouring import COLOURS, Colouring, add
from models.errors import MultipoleError, NotASnarkError
from models.multipole import Multipole
from models.reports import Criticality, PropertyReport, RemovablePair
from multipole_ops import cut_edge, cut_edges, remove_adjacent_pair, remove_vertex, remove_vertices, suppress
from structure_metrics import cyclic_connectivity, girth
from utils.graph_utils import adjacency_sets
from utils.parallel import parallel_first, parallel_map
from utils.timing import Stopwatch

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class CriticalityVerdict(BaseModel):
    criticality: Criticality
    removable_pairs: List[RemovablePair] = []
    scan_complete: bool = False

    @property
    def is_snark(self) -> bool:
        return self.criticality != Criticality.NON_SNARK

    @property
    def is_critical(self) -> bool:
        return self.criticality in (Criticality.STRICTLY_CRITICAL, Criticality.BICRITICAL)


class VerdictCache:
    """Colourability verdicts keyed by canonical form, for one report run."""

    def __init__(self):
        self._verdicts: Dict[bytes, bool] = {}
        self.hits = 0
        self.misses = 0

    def colourable(self, m: Multipole) -> bool:
        from graph_io import canonical_form

        key = canonical_form(m)
        if key in self._verdicts:
            self.hits += 1
            return self._verdicts[key]
        self.misses += 1
        verdict = is_colourable(m)
        self._verdicts[key] = verdict
        return verdict

    def __len__(self) -> int:
        return len(self._verdicts)


def _colourable(m: Multipole, cache: Optional[VerdictCache]) -> bool:
    return cache.colourable(m) if cache is not None else is_colourable(m)


def _require_closed(g: Multipole) -> None:
    if not g.is_closed:
        raise MultipoleError(f"{g.name or 'graph'} is not a closed cubic graph")


# --- vertex pairs ------------------------------------------------------------------

def vertex_pairs(g: Multipole) -> Tuple[List[Pair], List[Pair]]:
    """(adjacent pairs, non-adjacent pairs), each sorted."""
    adj = adjacency_sets(g)
    adjacent, apart = [], []
    for u, v in combinations(sorted(g.vertices), 2):
        (adjacent if v in adj[u] else apart).append((u, v))
    return adjacent, apart


def is_removable_vertex_pair(g: Multipole, u: int, v: int,
                             search: Optional[ColouringSearch] = None) -> bool:
    _require_closed(g)
    if u == v:
        raise MultipoleError("a removable pair needs two distinct vertices")
    search = search or ColouringSearch(g)
    return search.solve(relaxed=(u, v)) is None


_SCAN: Dict[str, ColouringSearch] = {}


def _init_scan(g: Multipole, backend: Optional[str]) -> None:
    _SCAN["search"] = ColouringSearch(g, backend)


def _pair_removable(pair: Pair) -> bool:
    return _SCAN["search"].solve(relaxed=pair) is None


def classify_criticality(g: Multipole, hints: Iterable[Pair] = (), *, full: bool = False,
                         jobs: Optional[int] = None) -> CriticalityVerdict:
    _require_closed(g)
    jobs = config.get_settings().jobs if jobs is None else jobs
    search = ColouringSearch(g)
    if search.solve() is not None:
        return CriticalityVerdict(criticality=Criticality.NON_SNARK, scan_complete=True)

    adjacent, apart = vertex_pairs(g)
    hit = parallel_first(_pair_removable, adjacent, jobs, _init_scan, (g, None))
    if hit is not None:
        u, v = adjacent[hit]
        logger.info("❌ %s has a removable adjacent pair (%d, %d)", g.name, u, v)
        return CriticalityVerdict(
            criticality=Criticality.NOT_CRITICAL,
            removable_pairs=[RemovablePair(u=u, v=v, adjacent=True)],
        )

    apart_set = set(apart)
    hinted = [tuple(sorted(p)) for p in hints]
    hinted = [p for p in dict.fromkeys(hinted) if p in apart_set]
    witnesses: List[RemovablePair] = []
    for u, v in hinted:
        if search.solve(relaxed=(u, v)) is None:
            witnesses.append(RemovablePair(u=u, v=v, adjacent=False))
            if not full:
                return CriticalityVerdict(criticality=Criticality.STRICTLY_CRITICAL,
                                          removable_pairs=witnesses)

    tried = set(hinted)
    rest = [p for p in apart if p not in tried]
    if full:
        results = parallel_map(_pair_removable, rest, jobs, _init_scan, (g, None))
        witnesses += [RemovablePair(u=u, v=v, adjacent=False) for (u, v), r in zip(rest, results) if r]
        scan_complete = True
    else:
        hit = parallel_first(_pair_removable, rest, jobs, _init_scan, (g, None))
        if hit is not None:
            u, v = rest[hit]
            witnesses.append(RemovablePair(u=u, v=v, adjacent=False))
        scan_complete = hit is None

    kind = Criticality.STRICTLY_CRITICAL if witnesses else Criticality.BICRITICAL
    return CriticalityVerdict(criticality=kind, removable_pairs=witnesses, scan_complete=scan_complete)


def removable_vertex_pairs(g: Multipole, jobs: Optional[int] = None) -> List[RemovablePair]:
    """Every removable pair (complete scan, adjacent pairs included)."""
    _require_closed(g)
    jobs = config.get_settings().jobs if jobs is None else jobs
    adjacent, apart = vertex_pairs(g)
    pairs = adjacent + apart
    results = parallel_map(_pair_removable, pairs, jobs, _init_scan, (g, None))
    adj = set(adjacent)
    return sorted(
        (RemovablePair(u=u, v=v, adjacent=(u, v) in adj) for (u, v), r in zip(pairs, results) if r),
        key=lambda p: (p.u, p.v),
    )


def _verdict(g: Multipole, jobs: Optional[int]) -> CriticalityVerdict:
    return classify_criticality(g, jobs=jobs)


def is_critical(g: Multipole, jobs: Optional[int] = None) -> bool:
    return _verdict(g, jobs).is_critical


def is_bicritical(g: Multipole, jobs: Optional[int] = None) -> bool:
    return _verdict(g, jobs).criticality == Criticality.BICRITICAL


def is_strictly_critical(g: Multipole, jobs: Optional[int] = None) -> bool:
    return _verdict(g, jobs).criticality == Criticality.STRICTLY_CRITICAL


def lift_removable_pair(lift: Dict[int, int], x: int, y: int) -> Pair:
    """Image of a removable pair of a base graph in its superposition."""
    try:
        return lift[x], lift[y]
    except KeyError as exc:
        raise MultipoleError(f"v{exc.args[0]} is not a vertex of the base graph") from None


def criticality_oracle(g: Multipole) -> CriticalityVerdict:
    """Rebuild every G - (u, v) / G - [u, v] and colour it with the exhaustive oracle."""
    _require_closed(g)
    if colouring_oracle(g) is not None:
        return CriticalityVerdict(criticality=Criticality.NON_SNARK, scan_complete=True)
    adjacent, apart = vertex_pairs(g)
    pairs = []
    for u, v in adjacent:
        links = g.links_between(u, v)
        m = remove_adjacent_pair(g, u, v) if len(links) == 1 else remove_vertices(g, (u, v))
        if colouring_oracle(m) is None:
            pairs.append(RemovablePair(u=u, v=v, adjacent=True))
    for u, v in apart:
        if colouring_oracle(remove_vertices(g, (u, v))) is None:
            pairs.append(RemovablePair(u=u, v=v, adjacent=False))
    if any(p.adjacent for p in pairs):
        kind = Criticality.NOT_CRITICAL
    elif pairs:
        kind = Criticality.STRICTLY_CRITICAL
    else:
        kind = Criticality.BICRITICAL
    return CriticalityVerdict(criticality=kind, removable_pairs=pairs, scan_complete=True)


# --- edge pairs ----------------------------------------------------------------------

def _check_edge_pair(g: Multipole, e: int, f: int) -> None:
    _require_closed(g)
    if e == f:
        raise MultipoleError(f"edge pair needs two distinct edges, got {e} twice")
    edges = g.edge_map()
    for x in (e, f):
        if x not in edges:
            raise MultipoleError(f"missing edge {x}")


def is_removable_edge_pair(g: Multipole, e: int, f: int, cache: Optional[VerdictCache] = None) -> bool:
    _check_edge_pair(g, e, f)
    return not _colourable(cut_edges(g, (e, f)), cache)


def is_essential_edge_pair(g: Multipole, e: int, f: int, cache: Optional[VerdictCache] = None) -> bool:
    """
    Non-removable, and suppressing any vertex that carries exactly one dangling edge
    of G - (e, f) leaves a colourable 3-pole. A vertex holding both dangling edges
    (e and f share it) has nothing to suppress and is skipped.
    """
    _check_edge_pair(g, e, f)
    m = cut_edges(g, (e, f))
    if not _colourable(m, cache):
        return False
    ends = sorted({w for x in (e, f) for w in (g.edge_map()[x].a.ref, g.edge_map()[x].b.ref)})
    for w in ends:
        if len(m.dangling_at(w)) != 1:
            continue
        if not _colourable(suppress(m, w), cache):
            return False
    return True


def good_pole_pairs(g: Multipole, e: int, v: int) -> List[Pair]:
    """Edge pairs {f, h}: f at an end of e, h at v (deduplicated, sorted)."""
    edge = g.edge_map().get(e)
    if edge is None or not edge.is_link:
        raise MultipoleError(f"edge {e} is not a link")
    ends = (edge.a.ref, edge.b.ref)
    if v in ends:
        raise MultipoleError(f"v{v} is incident with edge {e}")
    adj = adjacency_sets(g)
    if any(v in adj[w] for w in ends):
        raise MultipoleError(f"v{v} is adjacent to an end of edge {e}")
    inc = g.incidence()
    at_v = [eid for eid, _ in inc[v]]
    pairs: Set[Pair] = set()
    for w in ends:
        for f, _ in inc[w]:
            for h in at_v:
                pairs.add((min(f, h), max(f, h)))
    return sorted(pairs)


def is_good_23pole(g: Multipole, e: int, v: int, cache: Optional[VerdictCache] = None) -> bool:
    """(G - e) - v is good when every pair from good_pole_pairs is essential; the pole must be proper."""
    pairs = good_pole_pairs(g, e, v)
    if not is_proper(remove_vertex(cut_edge(g, e), v)):
        raise MultipoleError(f"(G - {e}) - v{v} of {g.name or 'the graph'} is not a proper (2,3)-pole")
    cache = cache if cache is not None else VerdictCache()
    for f, h in pairs:
        if not is_essential_edge_pair(g, f, h, cache):
            logger.info("pair (%d, %d) of %s is not essential", f, h, g.name)
            return False
    return True


def find_good_proper_colouring(g: Multipole, x: int, y: int,
                               first_x: int = 0, first_y: int = 0) -> Optional[Colouring]:
    """
    Colouring of G - (x, y) with colours (a, p, p) on x's edges and (c, f2, f3) on y's,
    f2 + f3 = b and {a, b, c} = K. `first_x` / `first_y` pick which end is e_1 / f_1.
    """
    _require_closed(g)
    if y in adjacency_sets(g)[x]:
        raise MultipoleError(f"v{x} and v{y} are adjacent")
    m = remove_vertices(g, (x, y))
    search = ColouringSearch(m)
    xs = [first_x] + [i for i in range(3) if i != first_x]
    ys = [3 + first_y] + [3 + i for i in range(3) if i != first_y]
    for a, b, c in product(COLOURS, repeat=3):
        if len({a, b, c}) != 3:
            continue
        for p, f2 in product(COLOURS, COLOURS):
            f3 = add(b, f2)
            if f3 == 0:
                continue
            fixed = {xs[0]: a, xs[1]: p, xs[2]: p, ys[0]: c, ys[1]: f2, ys[2]: f3}
            values = search.solve(fixed)
            if values is not None:
                return search.colouring(values)
    return None


# --- reports --------------------------------------------------------------------------

def analyse(g: Multipole, props: Sequence[str], hints: Iterable[Pair] = (),
            jobs: Optional[int] = None, full: bool = False) -> PropertyReport:
    """Compute the requested properties; unrequested fields stay None."""
    unknown = set(props) - set(config.KNOWN_PROPERTIES)
    if unknown:
        raise MultipoleError(f"unknown properties: {', '.join(sorted(unknown))}")
    _require_closed(g)
    clock = Stopwatch()
    report = PropertyReport(order=g.order)
    wants_scan = bool({"critical", "bicritical", "strictly-critical"} & set(props))

    if "snark" in props and not wants_scan:
        with clock.measure("snark"):
            report.is_snark = not is_colourable(g)
    if wants_scan:
        with clock.measure("criticality"):
            verdict = classify_criticality(g, hints, full=full, jobs=jobs)
        report.is_snark = verdict.is_snark
        report.criticality = verdict.criticality
        report.removable_vertex_pairs = verdict.removable_pairs
        report.scan_complete = verdict.scan_complete
        if verdict.is_snark:
            report.is_critical = verdict.is_critical
            report.is_bicritical = verdict.criticality == Criticality.BICRITICAL
            report.is_strictly_critical = verdict.criticality == Criticality.STRICTLY_CRITICAL
    if "girth" in props:
        with clock.measure("girth"):
            report.girth = girth(g)
    if "cc" in props:
        with clock.measure("cc"):
            cc = cyclic_connectivity(g, jobs=jobs)
        report.cyclic_connectivity = cc.value
        report.cyclic_cut = cc.cut
    report.timings = dict(clock.timings)
    return report


def require_snark(g: Multipole) -> Multipole:
    if is_colourable(g):
        raise NotASnarkError(f"{g.name or 'graph'} is 3-edge-colourable")
    return g
