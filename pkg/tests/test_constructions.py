import pytest

import constructions as C
from colouring_engine import enumerate_colouring_set, is_colourable, is_proper
from criticality import is_removable_edge_pair
from models.errors import MultipoleError
from multipole_ops import validate
from structure_metrics import find_cycles, girth


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_flower_snark_order(k):
    g = C.flower_snark(k)
    assert g.order == 4 * k
    assert g.is_closed
    assert validate(g).valid


@pytest.mark.parametrize("k", [1, 4, 6])
def test_flower_snark_needs_odd_k(k):
    with pytest.raises(MultipoleError, match="odd"):
        C.flower_snark(k)


def test_j3_is_a_snark():
    assert not is_colourable(C.flower_snark(3))


def test_small_graphs_are_valid():
    for g in (C.petersen(), C.complete_k4(), C.complete_k33(), C.prism(5), C.mobius_kantor(), C.theta()):
        assert validate(g).valid, g.name
    assert C.mobius_kantor().order == 16


def test_generalized_petersen_rejects_bad_parameters():
    with pytest.raises(MultipoleError):
        C.generalized_petersen(6, 3)


def test_y_segment_shape():
    y = C.y_segment(2)
    assert y.order == 8
    assert y.signature == (3, 3)


def test_twisted_closure_needs_33_pole():
    with pytest.raises(MultipoleError):
        C.twisted_closure(C.h6())


def test_tp_choice_and_shape():
    g = C.petersen()
    assert C.canonical_23pole_choice(g) == (0, 3)
    t = C.tp()
    assert t.order == 9
    assert t.signature == (2, 3)
    assert is_proper(t)


def test_extract_23pole_rejects_endpoint(petersen):
    with pytest.raises(MultipoleError, match="endpoint"):
        C.extract_23pole(petersen, 0, 1)


def test_valid_choices_avoid_neighbourhoods(petersen):
    choices = C.valid_23pole_choices(petersen)
    assert choices
    for e, v in choices:
        edge = petersen.edge_map()[e]
        assert v not in (edge.a.ref, edge.b.ref)
        assert not petersen.links_between(v, edge.a.ref)
        assert not petersen.links_between(v, edge.b.ref)


@pytest.mark.parametrize("k", [5, 7])
def test_tj_has_girth_six(k):
    t = C.tj(k)
    assert t.order == 4 * k - 1
    assert t.signature == (2, 3)
    assert girth(t) >= 6


def test_h6_and_ttt_shapes():
    assert C.h6().signature == (2, 2, 2)
    t = C.tp()
    ttt = C.ttt_sc(t, t, t)
    assert ttt.signature == (2, 2, 2)
    assert ttt.order == 30


def test_ttt_needs_23_poles():
    with pytest.raises(MultipoleError, match="argument 2"):
        C.ttt_sc(C.tp(), C.h6(), C.tp())


def test_g36_and_g66_orders():
    g36, g66 = C.g36(), C.g66()
    assert g36.is_closed and g36.order == 36
    assert g66.is_closed and g66.order == 66
    assert validate(g66).valid


def test_girth6_family_orders():
    assert C.girth6_orders(90) == [66, 74, 82, 90]
    assert C.family_girth6(74).order == 74
    with pytest.raises(MultipoleError):
        C.family_girth6(70)


def test_supervertex_w():
    w = C.supervertex_w()
    assert w.order == 1
    assert w.signature == (3, 3, 1)
    assert validate(w).valid


@pytest.mark.parametrize("k, order", [(5, 18), (7, 26)])
def test_isaacs_superedge(k, order):
    a = C.isaacs_superedge(k)
    assert a.order == order
    assert a.signature == (3, 3)
    assert girth(a) >= 6


def test_isaacs_pair_is_cached_and_stable():
    assert C.isaacs_pair() == C.isaacs_pair()
    u, v = C.isaacs_pair()
    assert u < v < 12


def test_isaacs_superedge_has_girth_six():
    assert girth(C.isaacs_superedge(5)) >= 6


def test_superedge_lemma_on_a5():
    assert C.superedge_lemma_holds(enumerate_colouring_set(C.isaacs_superedge(5)))


def test_superedge_lemma_fails_on_empty_set():
    assert not C.superedge_lemma_holds(frozenset())


def test_superpath_shape():
    a5 = C.isaacs_superedge(5)
    sp = C.superpath([a5, a5], length=1)
    assert sp.order == 37
    assert sp.signature == (3, 3, 1)


def test_superpath_length_mismatch():
    a5 = C.isaacs_superedge(5)
    with pytest.raises(MultipoleError):
        C.superpath([a5, a5], length=2)


def test_supercycle_shape():
    sc = C.supercycle([C.isaacs_superedge(5)] * 3)
    assert sc.signature == (3,)
    assert sc.order == 3 * 18 + 3


def test_superpose_petersen(petersen):
    sc = C.standard_supercycle(5)
    g, lift = C.superpose_with_lift(petersen, (0, 1, 2, 3, 4), sc)
    assert g.is_closed
    assert g.order == 100
    assert validate(g).valid
    assert set(lift) == set(petersen.vertices)
    assert len(set(lift.values())) == 10
    assert set(lift.values()) <= set(g.vertices)
    assert all(lift[v] == v for v in range(5, 10))


def test_superpose_rejects_non_cycle(petersen):
    with pytest.raises(MultipoleError, match="not a cycle"):
        C.superpose(petersen, (0, 1, 2, 3, 5), C.standard_supercycle(5))


def test_superpose_rejects_wrong_supercycle(petersen):
    with pytest.raises(MultipoleError, match="signature"):
        C.superpose(petersen, (0, 1, 2, 3, 4), C.supercycle([C.isaacs_superedge(5)] * 3))


@pytest.mark.parametrize("n, expected", [(306, (15, 5)), (314, (15, 7)), (324, (16, 5)), (342, (17, 5))])
def test_cc6_order(n, expected):
    assert C.cc6_order(n) == expected


@pytest.mark.parametrize("n", [320, 307, 298])
def test_cc6_order_rejects(n):
    with pytest.raises(MultipoleError):
        C.cc6_order(n)


def test_dot_product_of_petersens_is_a_snark(petersen):
    g = C.dot_product(petersen, 0, 2, petersen, 0, 1)
    assert g.is_closed
    assert g.order == 18
    assert not is_colourable(g)


def test_dot_product_needs_independent_edges(petersen):
    with pytest.raises(MultipoleError, match="independent"):
        C.dot_product(petersen, 0, 1, petersen, 0, 1)


def test_i_extension(petersen):
    g = C.i_extension(petersen, 0, 12)
    assert g.is_closed
    assert g.order == 12
    assert validate(g).valid


def test_i_extension_on_removable_pair_keeps_snark():
    g = C.flower_snark(3)
    checked = 0
    for e in range(g.edge_count):
        for f in range(e + 1, g.edge_count):
            if is_removable_edge_pair(g, e, f):
                assert not is_colourable(C.i_extension(g, e, f))
                checked += 1
                if checked >= 3:
                    return


@pytest.mark.slow
def test_standard_supercycle_of_length_fifteen():
    sc = C.standard_supercycle(15)
    assert sc.order == 15 * 19


def test_cycle_selection_with_verify_skips_failing_candidates(monkeypatch, petersen):
    checked = []

    def connected(g, k, jobs=None):
        checked.append((g.order, k))
        return len(checked) > 1

    monkeypatch.setattr(C, "cut_avoiding", lambda g, cycle, k: None)
    monkeypatch.setattr(C, "is_cyclically_k_connected", connected)
    cycles = find_cycles(petersen, 5)
    assert C.select_superposition_cycle(petersen, 5, verify=False, jobs=1) == cycles[0]
    assert checked == []
    assert C.select_superposition_cycle(petersen, 5, verify=True, jobs=1) == cycles[1]
    assert checked == [(100, 6), (100, 6)]


def test_cc6_cycle_is_verified(monkeypatch):
    seen = {}

    def select(g, k, verify=False, jobs=None):
        seen.update(order=g.order, k=k, verify=verify)
        return tuple(range(k))

    C.cc6_cycle.cache_clear()
    monkeypatch.setattr(C, "select_superposition_cycle", select)
    try:
        assert C.cc6_cycle(15) == tuple(range(15))
    finally:
        C.cc6_cycle.cache_clear()
    assert seen == {"order": 36, "k": 15, "verify": True}
