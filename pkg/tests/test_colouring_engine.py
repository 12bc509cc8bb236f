import random
from itertools import permutations

import pytest

import constructions as C
import multipole_ops as ops
from colouring_engine import (
    ColouringSearch,
    are_colour_equivalent,
    boundary_flows,
    colouring_oracle,
    enumerate_colouring_set,
    enumerate_colourings,
    find_colouring,
    flow_through,
    is_colourable,
    is_even_multipole,
    is_perfect_23pole,
    is_proper,
    perfect_23_set,
    verify_colouring,
)
from models.colouring import COLOURS, Colouring, all_tuples, canonical_tuples, colour_counts, satisfies_parity
from models.errors import ColouringLimitError, MultipoleError, SearchTimeoutError
from models.multipole import Edge, EdgeEnd, Connector, Multipole
from utils.timing import check_deadline


def isolated_edge():
    return Multipole(
        vertices=(),
        edges=(Edge(id=0, a=EdgeEnd.free(0), b=EdgeEnd.free(1)),),
        connectors=(Connector(semiedges=(0,)), Connector(semiedges=(1,))),
    )


def test_petersen_is_a_snark(petersen):
    assert find_colouring(petersen) is None
    assert not is_colourable(petersen)


def test_k4_colouring_is_proper():
    g = C.complete_k4()
    phi = find_colouring(g)
    assert phi is not None
    assert verify_colouring(g, phi)


def test_flower_j5_is_a_snark(j5):
    assert not is_colourable(j5)


def test_j5_minus_adjacent_pair_is_colourable(j5):
    for e in j5.edges[:10]:
        assert is_colourable(ops.remove_adjacent_pair(j5, e.a.ref, e.b.ref))


def test_isochromatic_boundary_is_colourable(petersen):
    m = ops.remove_adjacent_pair(petersen, 0, 1)
    for a in COLOURS:
        phi = find_colouring(m, {0: a, 1: a, 2: a, 3: a})
        assert phi is not None
        assert phi.boundary == (a, a, a, a)


def test_relaxed_vertices_match_rebuilt_multipole(petersen):
    assert is_colourable(petersen, relaxed=(0, 1)) == is_colourable(ops.remove_adjacent_pair(petersen, 0, 1))
    assert is_colourable(petersen, relaxed=(0, 2)) == is_colourable(ops.remove_vertices(petersen, (0, 2)))


def test_bad_fixed_colour():
    with pytest.raises(MultipoleError, match="not a colour"):
        find_colouring(C.cycle_multipole(2), {0: 4})


def test_colouring_set_of_five_cycle():
    expected = {t for t in all_tuples(5) if sorted(colour_counts(t)) == [1, 1, 3]}
    assert enumerate_colouring_set(C.cycle_multipole(5)) == expected


def test_colouring_set_of_two_cycle():
    assert enumerate_colouring_set(C.cycle_multipole(2)) == {(a, a) for a in COLOURS}


def test_isochromatic_set(petersen):
    expected = {(a, a, b, b) for a in COLOURS for b in COLOURS}
    assert enumerate_colouring_set(ops.remove_adjacent_pair(petersen, 0, 5)) == expected


def test_enumeration_limit():
    with pytest.raises(ColouringLimitError):
        enumerate_colouring_set(C.cycle_multipole(11))


def test_parity_filter_does_not_change_result():
    m = ops.remove_vertices(C.prism(4), (0, 6))
    assert enumerate_colouring_set(m) == enumerate_colouring_set(m, parity_filter=False)


def test_canonical_tuples_cover_all_orbits():
    assert sum(1 for _ in all_tuples(4)) == 3 ** 4
    assert len(list(canonical_tuples(3))) == 5


def test_flow_through():
    phi = Colouring(edge_colours={}, semiedge_colours={0: 1, 1: 1, 2: 1, 3: 2})
    assert flow_through(phi, [0, 1]) == 0
    assert flow_through(phi, [2, 3]) == 3


def test_boundary_flows():
    m = C.i_piece()
    assert boundary_flows(m, (1, 2, 1, 2)) == (3, 3)


def test_t_p_is_proper():
    assert is_proper(C.tp())


def test_isaacs_superedge_is_proper():
    assert is_proper(C.isaacs_superedge(5))


def test_isolated_edge_pole_is_proper():
    assert is_proper(isolated_edge())


def test_cycle_multipole_is_not_proper():
    assert not is_proper(C.cycle_multipole(2))


def test_perfect_set_size():
    assert all(satisfies_parity(t) for t in perfect_23_set())
    assert all(t[0] != t[1] for t in perfect_23_set())


def test_first_j5_pole_is_perfect(j5):
    e, v = C.valid_23pole_choices(j5)[0]
    assert is_perfect_23pole(C.extract_23pole(j5, e, v))


def test_uncolourable_pole_is_not_perfect(petersen):
    bad = ops.disjoint_union(petersen, C.tp())
    assert bad.signature == (2, 3)
    assert not is_perfect_23pole(bad)


def test_perfect_needs_23_signature():
    with pytest.raises(MultipoleError, match="expected a \\(2,3\\)-pole"):
        is_perfect_23pole(C.h6())


def test_y2_and_y4_are_colour_equivalent():
    assert are_colour_equivalent(C.y_segment(2), C.y_segment(4))


def test_different_arity_is_not_equivalent():
    assert not are_colour_equivalent(C.cycle_multipole(5), C.cycle_multipole(6))


@pytest.mark.parametrize("k", [2, 3])
def test_supercycle_equivalent_to_cycle(k):
    sc = C.supercycle([C.isaacs_superedge(5)] * k)
    assert are_colour_equivalent(sc, C.cycle_multipole(k))


@pytest.mark.slow
def test_four_supercycle_equivalent_to_cycle():
    sc = C.supercycle([C.isaacs_superedge(5)] * 4)
    assert are_colour_equivalent(sc, C.cycle_multipole(4))


def test_h6_is_even():
    assert is_even_multipole(C.h6())


def test_enumerated_colourings_obey_parity():
    rng = random.Random(7)
    for g in (C.petersen(), C.prism(5), C.mobius_kantor(), C.flower_snark(3)):
        for _ in range(5):
            m = ops.remove_vertices(g, rng.sample(sorted(g.vertices), 2))
            for phi in enumerate_colourings(m, limit=30):
                assert verify_colouring(m, phi)
                assert satisfies_parity(phi.boundary)


def test_solutions_are_distinct():
    g = C.complete_k4()
    found = [tuple(sorted(phi.edge_colours.items())) for phi in enumerate_colourings(g)]
    assert len(found) == len(set(found)) == 6


def test_search_agrees_with_oracle(small_corpus):
    rng = random.Random(11)
    for g in small_corpus:
        cases = [g] + [ops.remove_vertex(g, v) for v in rng.sample(sorted(g.vertices), min(2, g.order))]
        for m in cases:
            assert (colouring_oracle(m) is None) == (find_colouring(m) is None)


def test_oracle_with_fixed_boundary(petersen):
    m = ops.remove_adjacent_pair(petersen, 0, 1)
    assert colouring_oracle(m, {0: 1, 1: 2}) is None
    assert colouring_oracle(m, {0: 1, 1: 1}) is not None


def test_sat_backend_agrees(petersen):
    pytest.importorskip("pysat")
    assert not is_colourable(petersen, backend="sat")
    assert is_colourable(C.prism(5), backend="sat")
    assert is_colourable(petersen, relaxed=(0, 1), backend="sat")


def test_reusable_search(petersen):
    search = ColouringSearch(petersen)
    assert search.solve() is None
    assert search.solve(relaxed=(0, 1)) is not None


def test_expired_deadline_raises():
    with pytest.raises(SearchTimeoutError):
        check_deadline(0.0)


@pytest.mark.parametrize("build", [
    lambda: ops.remove_adjacent_pair(C.petersen(), 0, 1),
    lambda: C.y_segment(2),
    lambda: C.extract_23pole(C.petersen(), 0, 3),
])
def test_colouring_set_is_closed_under_colour_permutations(build):
    colset = enumerate_colouring_set(build())
    assert colset
    for perm in permutations(COLOURS):
        rename = dict(zip(COLOURS, perm))
        assert {tuple(rename[c] for c in t) for t in colset} == colset


@pytest.mark.parametrize("build", [C.petersen, lambda: C.flower_snark(3), lambda: C.flower_snark(5)])
def test_pair_removal_does_not_depend_on_vertex_order(build):
    g = build()
    for e in g.edges:
        u, v = e.a.ref, e.b.ref
        assert is_colourable(ops.remove_adjacent_pair(g, u, v)) == is_colourable(ops.remove_adjacent_pair(g, v, u))
        assert is_colourable(g, relaxed=(u, v)) == is_colourable(g, relaxed=(v, u))


def test_j7_poles_sampled_are_perfect():
    g = C.flower_snark(7)
    choices = C.valid_23pole_choices(g)
    for e, v in (choices[0], choices[len(choices) // 2], choices[-1]):
        assert is_perfect_23pole(C.extract_23pole(g, e, v))
