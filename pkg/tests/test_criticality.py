from itertools import combinations

import pytest

import constructions as C
from colouring_engine import is_colourable
from criticality import (
    VerdictCache,
    analyse,
    classify_criticality,
    criticality_oracle,
    find_good_proper_colouring,
    good_pole_pairs,
    is_bicritical,
    is_critical,
    is_essential_edge_pair,
    is_good_23pole,
    is_removable_edge_pair,
    is_removable_vertex_pair,
    is_strictly_critical,
    lift_removable_pair,
    removable_vertex_pairs,
    require_snark,
    vertex_pairs,
)
from models.colouring import COLOURS, add
from models.errors import MultipoleError, NotASnarkError
from models.reports import Criticality
from multipole_ops import cut_edges, relabel_vertices, remove_vertices


def test_petersen_is_bicritical(petersen):
    verdict = classify_criticality(petersen)
    assert verdict.criticality == Criticality.BICRITICAL
    assert verdict.scan_complete
    assert verdict.removable_pairs == []
    assert is_bicritical(petersen)
    assert is_critical(petersen)
    assert not is_strictly_critical(petersen)


def test_no_petersen_pair_is_removable(petersen):
    assert all(not is_removable_vertex_pair(petersen, u, v) for u, v in combinations(range(10), 2))


def test_colourable_graph_is_not_a_snark():
    verdict = classify_criticality(C.prism(5))
    assert verdict.criticality == Criticality.NON_SNARK
    assert not verdict.is_snark


def test_j3_is_not_critical():
    verdict = classify_criticality(C.flower_snark(3))
    assert verdict.criticality == Criticality.NOT_CRITICAL
    assert verdict.removable_pairs[0].adjacent


@pytest.mark.parametrize("k", [5, 7])
def test_isaacs_snarks_are_critical(k):
    assert is_critical(C.flower_snark(k))


@pytest.mark.slow
def test_j9_is_critical():
    assert is_critical(C.flower_snark(9))


def test_vertex_pairs_split(petersen):
    adjacent, apart = vertex_pairs(petersen)
    assert len(adjacent) == 15
    assert len(apart) == 30


def test_removable_pair_needs_distinct_vertices(petersen):
    with pytest.raises(MultipoleError):
        is_removable_vertex_pair(petersen, 3, 3)


def test_g36_apex_pairs_are_removable():
    g = C.g36()
    for x, y in combinations(C.APEX_VERTICES, 2):
        assert is_removable_vertex_pair(g, x, y)


def test_g36_is_strictly_critical():
    g = C.g36()
    verdict = classify_criticality(g, hints=combinations(C.APEX_VERTICES, 2))
    assert verdict.criticality == Criticality.STRICTLY_CRITICAL
    assert (verdict.removable_pairs[0].u, verdict.removable_pairs[0].v) == (0, 1)


def test_full_scan_lists_every_apex_pair():
    g = C.g36()
    verdict = classify_criticality(g, hints=combinations(C.APEX_VERTICES, 2), full=True)
    found = {(p.u, p.v) for p in verdict.removable_pairs}
    assert {(0, 1), (0, 2), (1, 2)} <= found
    assert verdict.scan_complete


def test_scan_agrees_with_oracle(small_corpus):
    for g in small_corpus:
        fast = classify_criticality(g)
        slow = criticality_oracle(g)
        assert fast.criticality == slow.criticality, g.name


def test_removable_vertex_pairs_on_j3():
    g = C.flower_snark(3)
    oracle = criticality_oracle(g)
    assert removable_vertex_pairs(g) == sorted(oracle.removable_pairs, key=lambda p: (p.u, p.v))


def test_parallel_scan_matches_sequential():
    g = C.flower_snark(3)
    assert classify_criticality(g, jobs=2).criticality == classify_criticality(g, jobs=1).criticality


def test_lift_removable_pair():
    assert lift_removable_pair({1: 10, 2: 20}, 1, 2) == (10, 20)
    with pytest.raises(MultipoleError, match="v3"):
        lift_removable_pair({1: 10}, 1, 3)


def test_edge_pairs_of_colourable_graph_are_not_removable():
    g = C.prism(4)
    assert not is_removable_edge_pair(g, 0, 2)


def test_petersen_edge_pairs_match_rebuilt_graph(petersen):
    cache = VerdictCache()
    for e, f in combinations(range(15), 2):
        assert is_removable_edge_pair(petersen, e, f, cache) == (not is_colourable(cut_edges(petersen, (e, f))))
    assert cache.hits > 0


def test_non_adjacent_edge_pairs_of_j5_are_essential(j5):
    cache = VerdictCache()
    ends = {e.id: {e.a.ref, e.b.ref} for e in j5.edges}
    pairs = [(e, f) for e, f in combinations(sorted(ends), 2) if not ends[e] & ends[f]]
    for e, f in pairs[:40]:
        assert not is_removable_edge_pair(j5, e, f, cache)
        assert is_essential_edge_pair(j5, e, f, cache)


def test_j3_has_a_non_essential_pair():
    g = C.flower_snark(3)
    ends = {e.id: {e.a.ref, e.b.ref} for e in g.edges}
    pairs = [(e, f) for e, f in combinations(sorted(ends), 2) if not ends[e] & ends[f]]
    cache = VerdictCache()
    assert any(not is_essential_edge_pair(g, e, f, cache) for e, f in pairs)


def test_edge_pair_needs_distinct_edges(petersen):
    with pytest.raises(MultipoleError, match="twice"):
        is_removable_edge_pair(petersen, 4, 4)


def test_tp_is_good(petersen):
    assert is_good_23pole(petersen, 0, 3)


def test_tj5_is_good(j5):
    e, v = C.canonical_23pole_choice(j5, min_girth=6)
    assert is_good_23pole(j5, e, v)


def test_good_pole_rejects_adjacent_vertex(petersen):
    with pytest.raises(MultipoleError):
        good_pole_pairs(petersen, 0, 2)


def test_good_proper_colouring_pattern(petersen):
    found = 0
    for fx in range(3):
        for fy in range(3):
            phi = find_good_proper_colouring(petersen, 0, 2, first_x=fx, first_y=fy)
            if phi is None:
                continue
            found += 1
            t = phi.boundary
            xs = [fx] + [i for i in range(3) if i != fx]
            ys = [3 + fy] + [3 + i for i in range(3) if i != fy]
            a, p1, p2 = (t[i] for i in xs)
            c, f2, f3 = (t[i] for i in ys)
            assert p1 == p2
            b = add(f2, f3)
            assert b in COLOURS
            assert len({a, b, c}) == 3
    assert found


def test_good_proper_colouring_rejects_adjacent(petersen):
    with pytest.raises(MultipoleError, match="adjacent"):
        find_good_proper_colouring(petersen, 0, 1)


def test_analyse_only_computes_requested(petersen):
    report = analyse(petersen, ["girth"])
    assert report.girth == 5
    assert report.is_snark is None
    assert report.cyclic_connectivity is None
    assert "girth" in report.timings


def test_analyse_petersen_baseline(petersen):
    report = analyse(petersen, ["snark", "bicritical", "girth", "cc"])
    assert report.is_snark
    assert report.is_bicritical
    assert report.girth == 5
    assert report.cyclic_connectivity == 5


def test_analyse_rejects_unknown_property(petersen):
    with pytest.raises(MultipoleError, match="unknown properties"):
        analyse(petersen, ["planar"])


def test_require_snark():
    with pytest.raises(NotASnarkError):
        require_snark(C.complete_k4())


def test_criticality_needs_closed_graph():
    with pytest.raises(MultipoleError, match="closed"):
        classify_criticality(remove_vertices(C.petersen(), (0,)))


@pytest.mark.slow
def test_g66_is_strictly_critical():
    g = C.g66()
    assert classify_criticality(g, hints=combinations(C.APEX_VERTICES, 2)).criticality == Criticality.STRICTLY_CRITICAL


@pytest.mark.slow
def test_superposed_petersen_is_critical(petersen):
    g = C.superpose(petersen, (0, 1, 2, 3, 4), C.standard_supercycle(5))
    assert is_critical(g)


def test_scan_does_not_depend_on_vertex_labels():
    g = C.flower_snark(3)
    mapping = {v: g.order - 1 - v for v in g.vertices}
    relabelled = relabel_vertices(g, mapping)
    expected = {tuple(sorted((mapping[p.u], mapping[p.v]))) for p in removable_vertex_pairs(g)}
    assert {(p.u, p.v) for p in removable_vertex_pairs(relabelled)} == expected
    assert classify_criticality(relabel_vertices(C.petersen(), {v: (v * 3) % 10 for v in range(10)})).criticality \
        == Criticality.BICRITICAL


def test_full_scan_does_not_depend_on_jobs():
    g = C.flower_snark(3)
    assert removable_vertex_pairs(g, jobs=1) == removable_vertex_pairs(g, jobs=2)


@pytest.mark.slow
def test_g36_full_scan_does_not_depend_on_jobs():
    g = C.g36()
    hints = list(combinations(C.APEX_VERTICES, 2))
    one = classify_criticality(g, hints, full=True, jobs=1)
    two = classify_criticality(g, hints, full=True, jobs=2)
    assert one.criticality == two.criticality == Criticality.STRICTLY_CRITICAL
    assert [(p.u, p.v) for p in one.removable_pairs] == [(p.u, p.v) for p in two.removable_pairs]


@pytest.mark.parametrize("build", [C.petersen, lambda: C.flower_snark(5), C.g36])
def test_critical_snarks_have_girth_and_cyclic_connectivity(build):
    g = build()
    report = analyse(g, ["critical", "girth", "cc"])
    assert report.is_critical
    assert report.girth >= 5
    assert report.cyclic_connectivity >= 4


def test_good_pole_must_be_proper():
    g = C.prism(6)
    e, v = C.valid_23pole_choices(g)[0]
    with pytest.raises(MultipoleError, match="not a proper"):
        is_good_23pole(g, e, v)
