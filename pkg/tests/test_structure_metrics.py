import pytest

import constructions as C
import multipole_ops as ops
from models.errors import MetricError
from structure_metrics import (
    cut_avoiding,
    cut_of,
    cyclic_connectivity,
    cyclic_connectivity_oracle,
    find_cycles,
    girth,
    is_cycle,
    is_cyclically_k_connected,
    minimum_cyclic_cut,
    verify_edge_cut,
)


@pytest.mark.parametrize("build, expected", [
    (C.petersen, 5),
    (C.complete_k4, 3),
    (C.complete_k33, 4),
    (C.theta, 2),
    (lambda: C.flower_snark(5), 5),
    (lambda: C.flower_snark(7), 6),
    (lambda: C.prism(3), 3),
])
def test_girth(build, expected):
    assert girth(build()) == expected


def test_girth_of_forest_raises():
    with pytest.raises(MetricError):
        girth(C.path_multipole(3))


def test_petersen_five_cycles(petersen):
    cycles = find_cycles(petersen, 5)
    assert len(cycles) == 12
    assert all(is_cycle(petersen, c) for c in cycles)
    assert cycles == sorted(cycles)


def test_petersen_has_no_triangles(petersen):
    assert find_cycles(petersen, 3) == []


def test_find_cycles_limit(petersen):
    assert len(find_cycles(petersen, 6, limit=3)) == 3


def test_g36_has_fifteen_cycles():
    assert find_cycles(C.g36(), 15, limit=1)


def test_is_cycle_rejects_non_cycles(petersen):
    assert not is_cycle(petersen, [0, 1, 2])
    assert not is_cycle(petersen, [0, 1])


def test_petersen_cyclic_connectivity(petersen):
    cc = cyclic_connectivity(petersen)
    assert cc.value == 5
    assert cc.separating
    assert verify_edge_cut(petersen, cc.cut)


def test_k4_uses_cycle_rank():
    cc = cyclic_connectivity(C.complete_k4())
    assert cc.value == 3
    assert not cc.separating
    assert cc.cut is None


def test_prism_three_separates_triangles():
    cc = cyclic_connectivity(C.prism(3))
    assert cc.value == 3
    assert set(cc.cut.side_a) in ({0, 1, 2}, {3, 4, 5})


def test_disconnected_graph_has_empty_cut(petersen):
    two = ops.disjoint_union(petersen, petersen)
    assert cyclic_connectivity(two).value == 0


def test_fast_path_matches_oracle(small_corpus):
    for g in small_corpus + [C.flower_snark(5)]:
        fast = cyclic_connectivity(g)
        slow = cyclic_connectivity_oracle(g)
        assert (fast.value, fast.separating) == (slow.value, slow.separating), g.name
        if fast.cut is not None:
            assert verify_edge_cut(g, fast.cut)


def test_oracle_values():
    assert cyclic_connectivity_oracle(C.petersen()).value == 5
    assert cyclic_connectivity_oracle(C.flower_snark(5)).value == 5
    assert cyclic_connectivity_oracle(C.complete_k4()).value == 3


def test_oracle_edge_bound():
    with pytest.raises(MetricError, match="oracle bound"):
        cyclic_connectivity_oracle(C.flower_snark(7))


def test_cyclic_connectivity_needs_closed_graph():
    with pytest.raises(MetricError):
        cyclic_connectivity(C.tp())


def test_is_cyclically_k_connected(petersen):
    assert is_cyclically_k_connected(petersen, 5)
    assert not is_cyclically_k_connected(petersen, 6)
    assert not is_cyclically_k_connected(C.complete_k4(), 4)


def test_minimum_cut_below_bound(petersen):
    cut, rank = minimum_cyclic_cut(petersen, below=5)
    assert cut is None
    assert rank == 6


def test_verify_edge_cut_rejects_tree_side(petersen):
    assert not verify_edge_cut(petersen, cut_of(petersen, {0}))


def test_cut_avoiding(petersen):
    outer = [0, 1, 2, 3, 4]
    found = cut_avoiding(petersen, outer, 5)
    assert found is not None and found.size == 5
    assert set(found.side_a) == {5, 6, 7, 8, 9}
    assert cut_avoiding(petersen, outer, 4) is None


def test_parallel_probe_matches_sequential():
    g = C.flower_snark(5)
    assert cyclic_connectivity(g, jobs=2).value == cyclic_connectivity(g, jobs=1).value


@pytest.mark.slow
def test_g66_girth_and_cyclic_connectivity():
    g = C.g66()
    assert girth(g) == 6
    assert cyclic_connectivity(g).value == 5
