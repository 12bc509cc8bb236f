# claims.py - reproduction registry for the computational results
"""
Every registered claim rebuilds its graphs from scratch and records one ClaimCheck
per verified statement, tagged with where the expected value comes from:

- PUBLISHED the value is stated in the literature the constructions come from
- DERIVED  the value follows from an independent computation (oracle, counting)
- TRIVIAL  bookkeeping such as vertex counts

Flagship claims (G_306, G_324, G_342) take hours and only run with `extended`.
"""

import logging
import random
import time
from itertools import combinations
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import config
import constructions as C
from colouring_engine import (
    are_colour_equivalent,
    enumerate_colouring_set,
    enumerate_colourings,
    is_colourable,
    is_perfect_23pole,
    is_proper,
)
from criticality import (
    VerdictCache,
    classify_criticality,
    is_essential_edge_pair,
    is_removable_vertex_pair,
    lift_removable_pair,
)
from models.colouring import COLOURS, satisfies_parity
from models.errors import ClaimError, MultipoleError
from models.multipole import Multipole
from models.reports import ClaimCheck, ClaimResult, Criticality
from multipole_ops import cut_edges, remove_adjacent_pair, remove_vertices
from structure_metrics import cyclic_connectivity, find_cycles, girth, is_cyclically_k_connected
from utils.parallel import parallel_map
from utils.timing import search_deadline

logger = logging.getLogger(__name__)

PARITY_SAMPLES = 1000          # Colourable multipoles in the parity suite
PARITY_MAX_DRAWS = 5000        # Draws allowed before the suite gives up
PARITY_SEED = 20240501         # Fixed seed so reruns sample the same multipoles
PARITY_COLOURINGS = 40         # Colourings inspected per sampled multipole

EXCLUSION_NOTE = (
    "The cyclically 6-connected orders divisible by 8 are built from a base graph that is "
    "only given as a drawing; that residue class is not reproduced."
)

Observation = Tuple[bool, str]


class ClaimRun:
    """Collects checks for one claim; each check is timed separately."""

    def __init__(self, claim_id: str, title: str):
        self.result = ClaimResult(claim_id=claim_id, title=title)

    def check(self, name: str, provenance: str, expected: str,
              observe: Callable[[], Observation], anchor: str = "") -> bool:
        start = time.perf_counter()
        with search_deadline(config.get_settings().timeout):
            passed, observed = observe()
        check = ClaimCheck(
            name=name, provenance=provenance, anchor=anchor, expected=expected,
            observed=observed, passed=passed, seconds=round(time.perf_counter() - start, 3),
        )
        self.result.checks.append(check)
        logger.info("%s [%s] %s: %s", "✅" if passed else "❌", provenance, name, observed)
        return passed

    def note(self, text: str) -> None:
        self.result.notes.append(text)


def _equals(observed, expected) -> Observation:
    return observed == expected, str(observed)


# --- shared worker state ----------------------------------------------------------

_GRAPH: Dict[str, Multipole] = {}


def _init_graph(g: Multipole) -> None:
    _GRAPH["g"] = g


def _choice_is_perfect(choice: Tuple[int, int]) -> bool:
    return is_perfect_23pole(C.extract_23pole(_GRAPH["g"], *choice), jobs=1)


def _edge_pair_essential(pair: Tuple[int, int]) -> bool:
    return is_essential_edge_pair(_GRAPH["g"], *pair, cache=VerdictCache())


def _non_adjacent_edge_pairs(g: Multipole) -> List[Tuple[int, int]]:
    ends = {e.id: {e.a.ref, e.b.ref} for e in g.edges}
    return [(e, f) for e, f in combinations(sorted(ends), 2) if not ends[e] & ends[f]]


def _criticality_of(g: Multipole, jobs: int, hints=()) -> Criticality:
    return classify_criticality(g, hints, jobs=jobs).criticality


def _critical(g: Multipole, jobs: int) -> Observation:
    kind = _criticality_of(g, jobs)
    return kind in (Criticality.STRICTLY_CRITICAL, Criticality.BICRITICAL), kind.value


def _colset_matches(m: Multipole, expected, jobs: int) -> Observation:
    colset = enumerate_colouring_set(m, jobs=jobs)
    return colset == expected, f"{len(colset)} tuples"


# --- claims ---------------------------------------------------------------------

def _random_multipole(rng: random.Random) -> Multipole:
    """A base graph of at most 20 vertices with one or two vertices removed and maybe an edge cut."""
    bases = [
        C.petersen(), C.complete_k33(), C.mobius_kantor(), C.flower_snark(3), C.flower_snark(5),
        C.generalized_petersen(7, 2), C.generalized_petersen(9, 2),
    ] + [C.prism(n) for n in range(3, 9)]
    g = rng.choice(bases)
    m = remove_vertices(g, rng.sample(sorted(g.vertices), rng.choice((1, 2))))
    links = [e.id for e in m.edges if e.is_link and not e.is_loop]
    if links and m.semiedge_count <= 6 and rng.random() < 0.5:
        m = cut_edges(m, [rng.choice(links)])
    return m


def claim_parity(run: ClaimRun, jobs: int) -> None:
    rng = random.Random(PARITY_SEED)
    colourable = sampled = tuples = 0
    bad: Optional[Tuple[str, Tuple[int, ...]]] = None
    while colourable < PARITY_SAMPLES and sampled < PARITY_MAX_DRAWS:
        m = _random_multipole(rng)
        sampled += 1
        seen = False
        for phi in enumerate_colourings(m, limit=PARITY_COLOURINGS):
            seen = True
            tuples += 1
            if bad is None and not satisfies_parity(phi.boundary):
                bad = (repr(m), phi.boundary)
        colourable += seen
    run.check("colourable multipoles sampled", "TRIVIAL", str(PARITY_SAMPLES),
              lambda: _equals(colourable, PARITY_SAMPLES))
    run.check(
        "boundary colour counts share the parity of the semiedge count", "PUBLISHED",
        "no violating tuple",
        lambda: (bad is None, f"{tuples} tuples from {colourable} colourable of {sampled} sampled multipoles"
                 + ("" if bad is None else f"; violation {bad[1]} in {bad[0]}")),
        anchor="Parity Lemma",
    )


def claim_isochromatic_petersen(run: ClaimRun, jobs: int) -> None:
    g = C.petersen()
    expected = frozenset((a, a, b, b) for a in COLOURS for b in COLOURS)
    for e in sorted(g.edges, key=lambda x: x.id):
        u, v = e.a.ref, e.b.ref
        run.check(
            f"Col(P - [{u}, {v}])", "PUBLISHED", "{(a, a, b, b)}",
            lambda u=u, v=v: _colset_matches(remove_adjacent_pair(g, u, v), expected, jobs),
            anchor="isochromatic lemma",
        )


def _perfect_flower_poles(run: ClaimRun, k: int, jobs: int) -> None:
    g = C.flower_snark(k)
    choices = C.valid_23pole_choices(g)

    def observe() -> Observation:
        results = parallel_map(_choice_is_perfect, choices, jobs, _init_graph, (g,))
        failed = [c for c, ok in zip(choices, results) if not ok]
        text = f"{len(choices) - len(failed)}/{len(choices)} perfect"
        if failed:
            text += f"; first failure (e, u) = {failed[0]}"
        return not failed and bool(choices), text

    run.check(f"(J{k} - vw) - u is perfect for every admissible (u, vw)", "PUBLISHED",
              "all perfect", observe, anchor="perfect (2,3)-pole lemma")


def claim_perfect_j5(run: ClaimRun, jobs: int) -> None:
    _perfect_flower_poles(run, 5, jobs)


def claim_perfect_j7(run: ClaimRun, jobs: int) -> None:
    _perfect_flower_poles(run, 7, jobs)


def claim_isaacs_critical(run: ClaimRun, jobs: int) -> None:
    run.check("J3 is not critical", "PUBLISHED", Criticality.NOT_CRITICAL.value,
              lambda: _equals(_criticality_of(C.flower_snark(3), jobs).value, Criticality.NOT_CRITICAL.value),
              anchor="Isaacs snarks")
    for k in (5, 7, 9):
        run.check(f"J{k} is critical", "PUBLISHED", "critical",
                  lambda k=k: _critical(C.flower_snark(k), jobs),
                  anchor="Isaacs snarks")
    for k in (5, 7):
        g = C.flower_snark(k)
        pairs = _non_adjacent_edge_pairs(g)

        def observe(g=g, pairs=pairs) -> Observation:
            results = parallel_map(_edge_pair_essential, pairs, jobs, _init_graph, (g,))
            failed = [p for p, ok in zip(pairs, results) if not ok]
            return not failed, f"{len(pairs) - len(failed)}/{len(pairs)} essential" + (
                f"; first failure {failed[0]}" if failed else "")

        run.check(f"every pair of non-adjacent edges of J{k} is essential", "PUBLISHED",
                  "all essential", observe, anchor="Isaacs snarks")


def claim_sp1_colset(run: ClaimRun, jobs: int) -> None:
    expected = C.superpath_colouring_set(1)
    a5 = C.isaacs_superedge(5)
    run.check("A5 is a proper (3,3)-pole", "PUBLISHED", "True", lambda: _equals(is_proper(a5), True),
              anchor="Isaacs superedges")
    run.check("A5 has the superedge colouring property", "DERIVED", "True",
              lambda: _equals(C.superedge_lemma_holds(enumerate_colouring_set(a5, jobs=jobs)), True))
    for other in (5, 7):
        sp = C.superpath([a5, C.isaacs_superedge(other)])
        run.check(
            f"Col(A5 o W o A{other}) is the lifted Col(P1)", "PUBLISHED", f"{len(expected)} tuples",
            lambda sp=sp: _colset_matches(sp, expected, jobs),
            anchor="superpath lemma, base case",
        )


def claim_y2_y4(run: ClaimRun, jobs: int) -> None:
    y2 = C.y_segment(2)
    for k in (4, 6):
        run.check(f"Col(Y2) = Col(Y{k})", "PUBLISHED" if k == 4 else "DERIVED", "True",
                  lambda k=k: _equals(are_colour_equivalent(y2, C.y_segment(k), jobs=jobs), True),
                  anchor="Y-segment substitution")


def claim_sc2_c2(run: ClaimRun, jobs: int) -> None:
    a5 = C.isaacs_superedge(5)
    for k in (2, 3):
        run.check(f"Col(SC{k}) = Col(C{k})", "PUBLISHED", "True",
                  lambda k=k: _equals(are_colour_equivalent(C.supercycle([a5] * k), C.cycle_multipole(k),
                                                            jobs=jobs), True),
                  anchor="supercycle lemma")


def _apex_hints() -> List[Tuple[int, int]]:
    return list(combinations(C.APEX_VERTICES, 2))


def claim_g36(run: ClaimRun, jobs: int) -> None:
    g = C.g36()
    run.check("order", "PUBLISHED", "36", lambda: _equals(g.order, 36))
    run.check("snark", "PUBLISHED", "True", lambda: _equals(not is_colourable(g), True))
    for x, y in _apex_hints():
        run.check(f"apex pair ({x}, {y}) is removable", "PUBLISHED", "True",
                  lambda x=x, y=y: _equals(is_removable_vertex_pair(g, x, y), True),
                  anchor="apexes of TTT_sc")
    run.check("criticality", "PUBLISHED", Criticality.STRICTLY_CRITICAL.value,
              lambda: _equals(_criticality_of(g, jobs, _apex_hints()).value, Criticality.STRICTLY_CRITICAL.value))
    run.check("cyclic connectivity", "PUBLISHED", "5", lambda: _equals(cyclic_connectivity(g, jobs=jobs).value, 5))


def _girth6_checks(run: ClaimRun, g: Multipole, n: int, jobs: int) -> None:
    run.check("order", "PUBLISHED", str(n), lambda: _equals(g.order, n))
    run.check("criticality", "PUBLISHED", Criticality.STRICTLY_CRITICAL.value,
              lambda: _equals(_criticality_of(g, jobs, _apex_hints()).value, Criticality.STRICTLY_CRITICAL.value))
    run.check("girth", "PUBLISHED", "6", lambda: _equals(girth(g), 6))
    run.check("cyclic connectivity", "PUBLISHED", "5", lambda: _equals(cyclic_connectivity(g, jobs=jobs).value, 5))


def claim_g66(run: ClaimRun, jobs: int) -> None:
    _girth6_checks(run, C.g66(), 66, jobs)


def claim_g66_family(run: ClaimRun, jobs: int) -> None:
    _girth6_checks(run, C.family_girth6(74), 74, jobs)


def claim_superpose_petersen(run: ClaimRun, jobs: int) -> None:
    g = C.superpose(C.petersen(), (0, 1, 2, 3, 4), C.standard_supercycle(5))
    run.check("order", "PUBLISHED", "100", lambda: _equals(g.order, 100))
    run.check("critical snark", "PUBLISHED", "critical",
              lambda: _critical(g, jobs),
              anchor="superposition theorem")


def _cc6_member(n: int) -> Tuple[Multipole, List[Tuple[int, int]]]:
    k, enlarged = C.cc6_order(n)
    g, lift = C.superpose_with_lift(C.g36(), C.cc6_cycle(k), C.standard_supercycle(k, enlarged))
    hints = [lift_removable_pair(lift, x, y) for x, y in _apex_hints()]
    return g.renamed(f"G{n}"), hints


def claim_g306(run: ClaimRun, jobs: int) -> None:
    g, hints = _cc6_member(306)
    run.check("order", "PUBLISHED", "306", lambda: _equals(g.order, 306))
    run.check("criticality", "PUBLISHED", Criticality.STRICTLY_CRITICAL.value,
              lambda: _equals(_criticality_of(g, jobs, hints).value, Criticality.STRICTLY_CRITICAL.value))
    run.check("cyclically 6-connected", "PUBLISHED", "True",
              lambda: _equals(is_cyclically_k_connected(g, 6, jobs=jobs), True),
              anchor="verified by computer")
    run.note(EXCLUSION_NOTE)


def _sibling_checks(run: ClaimRun, n: int, jobs: int) -> None:
    g, hints = _cc6_member(n)
    run.check("order", "PUBLISHED", str(n), lambda: _equals(g.order, n))
    run.check("snark", "PUBLISHED", "True", lambda: _equals(not is_colourable(g), True))
    run.check("cyclically 6-connected", "PUBLISHED", "True",
              lambda: _equals(is_cyclically_k_connected(g, 6, jobs=jobs), True),
              anchor="verified by computer")
    x, y = hints[0]
    run.check(f"lifted apex pair ({x}, {y}) is removable", "PUBLISHED", "True",
              lambda: _equals(is_removable_vertex_pair(g, x, y), True),
              anchor="removable pairs lift through superposition")
    run.note(EXCLUSION_NOTE)


def claim_g324(run: ClaimRun, jobs: int) -> None:
    _sibling_checks(run, 324, jobs)


def claim_g342(run: ClaimRun, jobs: int) -> None:
    _sibling_checks(run, 342, jobs)


def _superposed_order(k: int) -> int:
    g, sc = C.g36(), C.standard_supercycle(k)
    for cycle in find_cycles(g, k, limit=500):
        try:
            return C.superpose(g, cycle, sc).order
        except MultipoleError:
            continue
    raise MultipoleError(f"G36 has no chordless {k}-cycle")


def claim_orders(run: ClaimRun, jobs: int) -> None:
    for k in (3, 5, 7, 9):
        run.check(f"|J{k}|", "TRIVIAL", str(4 * k), lambda k=k: _equals(C.flower_snark(k).order, 4 * k))
    for k in (5, 7):
        run.check(f"|A{k}|", "TRIVIAL", str(4 * k - 2), lambda k=k: _equals(C.isaacs_superedge(k).order, 4 * k - 2))
    for k, n in ((15, 306), (16, 324), (17, 342)):
        run.check(f"|Sup(G36, C{k}, SC{k})|", "PUBLISHED", str(n), lambda k=k: _equals(_superposed_order(k), 36 + 18 * k))
    run.check("girth-6 orders up to 90", "TRIVIAL", "[66, 74, 82, 90]",
              lambda: _equals(C.girth6_orders(90), [66, 74, 82, 90]))
    run.note(EXCLUSION_NOTE)


class ClaimEntry(NamedTuple):
    title: str
    run: Callable[[ClaimRun, int], None]
    extended: bool = False


CLAIMS: Dict[str, ClaimEntry] = {
    "parity": ClaimEntry("Parity Lemma on random colourable multipoles", claim_parity),
    "isochromatic-petersen": ClaimEntry("Col(P - [u, v]) = {(a, a, b, b)} for every edge of Petersen",
                                       claim_isochromatic_petersen),
    "perfect-j5": ClaimEntry("(2,3)-poles of J5 are perfect", claim_perfect_j5),
    "perfect-j7": ClaimEntry("(2,3)-poles of J7 are perfect", claim_perfect_j7),
    "isaacs-critical": ClaimEntry("criticality and essential edge pairs of Isaacs snarks", claim_isaacs_critical),
    "sp1-colset": ClaimEntry("colouring set of the 1-superpath", claim_sp1_colset),
    "y2-y4": ClaimEntry("Y2 and Y4 are colour-equivalent", claim_y2_y4),
    "sc2-c2": ClaimEntry("supercycles are colour-equivalent to cycles", claim_sc2_c2),
    "g36": ClaimEntry("G36 = H6 * TTT_sc(T_P, T_P, T_P)", claim_g36),
    "g66": ClaimEntry("G66: girth 6, cyclically 5-connected, strictly critical", claim_g66),
    "g66-family": ClaimEntry("G74 from one T(J7)", claim_g66_family),
    "superpose-petersen": ClaimEntry("Sup(Petersen, C5, SC5) is a critical snark of order 100",
                                    claim_superpose_petersen),
    "g306": ClaimEntry("G306: strictly critical, cyclically 6-connected", claim_g306, extended=True),
    "g324": ClaimEntry("G324: snark with a lifted removable pair", claim_g324, extended=True),
    "g342": ClaimEntry("G342: snark with a lifted removable pair", claim_g342, extended=True),
    "orders": ClaimEntry("order arithmetic of the families", claim_orders),
}


def claim_ids(extended: bool = False) -> List[str]:
    return [cid for cid, entry in CLAIMS.items() if extended or not entry.extended]


def run_claim(claim_id: str, extended: bool = False, jobs: Optional[int] = None) -> ClaimResult:
    entry = CLAIMS.get(claim_id)
    if entry is None:
        raise ClaimError(f"unknown claim '{claim_id}' (known: {', '.join(CLAIMS)})")
    if entry.extended and not extended:
        raise ClaimError(f"claim '{claim_id}' takes hours; rerun with --extended")
    jobs = config.get_settings().jobs if jobs is None else jobs
    logger.info("🚀 claim %s: %s", claim_id, entry.title)
    run = ClaimRun(claim_id, entry.title)
    entry.run(run, jobs)
    return run.result
