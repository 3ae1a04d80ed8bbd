import random

import pytest

from trusskit import (
    brute_force_rectangles,
    build_etp_graph,
    build_graph,
    edge_supports,
    k_classes,
    rectangle_supports,
    strong_trapezes_at,
    trapeze_level_run,
    trapezes_at,
    trim,
    trusses_at,
)
from trusskit.trapeze import LOW_APEX, MEDIAN_APEX
from conftest import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    graph_from,
    random_graphs,
)


def test_c4_structure():
    etp = build_etp_graph(cycle_graph(4))
    triads = etp.alive_triads()
    assert len(triads) == 2
    assert sorted(t[3] for t in triads) == [LOW_APEX, MEDIAN_APEX]
    degrees = etp.alive_periphery_degrees()
    assert list(degrees.values()) == [2]


def test_path_prunes_to_nothing():
    g = graph_from("a b\nb c\nc d")
    etp = build_etp_graph(g)
    assert etp.alive_triads() == []
    assert etp.surviving_edges() == []


def test_k23_periphery():
    etp = build_etp_graph(complete_bipartite(2, 3))
    degrees = etp.alive_periphery_degrees()
    assert list(degrees.values()) == [3]
    total = sum(d * (d - 1) // 2 for d in degrees.values())
    assert total == 3


def test_rectangle_supports_examples():
    assert rectangle_supports(build_etp_graph(cycle_graph(4))) == [1, 1, 1, 1]
    assert rectangle_supports(build_etp_graph(complete_graph(5))) == [6] * 10
    assert rectangle_supports(build_etp_graph(complete_bipartite(3, 3))) == [4] * 9


def test_oracle_examples():
    c4 = brute_force_rectangles(cycle_graph(4))
    assert sum(c4) == 4  # one rectangle, four edge slots
    k4 = brute_force_rectangles(complete_graph(4))
    assert k4 == [2] * 6 and sum(k4) // 4 == 3
    k5 = brute_force_rectangles(complete_graph(5))
    assert k5 == [6] * 10 and sum(k5) // 4 == 15


def test_supports_match_oracle():
    for _, g in random_graphs(60, 25, seed=1313):
        assert rectangle_supports(build_etp_graph(g)) == brute_force_rectangles(g)


def test_bipartite_supports_match_oracle():
    rng = random.Random(14)
    for _ in range(30):
        a, b = rng.randint(2, 6), rng.randint(2, 8)
        edges = [(i, a + j) for i in range(a) for j in range(b) if rng.random() < 0.5]
        if not edges:
            continue
        g = build_graph(a + b, edges)
        assert rectangle_supports(build_etp_graph(g)) == brute_force_rectangles(g)


def test_unique_representation_totals():
    for _, g in random_graphs(40, 20, seed=1414):
        etp = build_etp_graph(g)
        triad_pairs = sum(d * (d - 1) // 2 for d in etp.alive_periphery_degrees().values())
        assert triad_pairs == sum(brute_force_rectangles(g)) // 4


def test_trim_c4():
    etp = build_etp_graph(cycle_graph(4))
    assert sorted(trim(etp, 1)) == [0, 1, 2, 3]
    assert trim(etp, 2) == []


def test_trim_keeps_k5_drops_c4():
    k5 = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    c4 = [(5, 6), (6, 7), (7, 8), (5, 8)]
    g = build_graph(9, k5 + c4)
    etp = build_etp_graph(g)
    survivors = trim(etp, 2)
    assert sorted(survivors) == list(range(10))


def test_trim_monotone_contract():
    etp = build_etp_graph(complete_graph(5))
    trim(etp, 3)
    with pytest.raises(ValueError):
        trim(etp, 2)
    with pytest.raises(ValueError):
        trim(etp, 0)


def test_trim_idempotent():
    for _, g in random_graphs(20, 16, seed=1515):
        etp = build_etp_graph(g)
        first = trim(etp, 2)
        assert trim(etp, 2) == first


def test_trim_order_invariance():
    for idx, g in random_graphs(20, 16, seed=1616):
        baseline = sorted(trim(build_etp_graph(g), 2))
        for rs in (1, 2, 3):
            etp = build_etp_graph(g)
            assert sorted(trim(etp, 2, rng=random.Random(rs))) == baseline


def test_remove_edge_vertex_cascade():
    # killing one edge of the lone rectangle empties the whole structure
    from trusskit.trapeze import TrimPass, examine_periphery, remove_edge_vertex

    etp = build_etp_graph(cycle_graph(4))
    trim(etp, 1)
    state = TrimPass(etp, 1)
    assert state.kill == []
    state.kill.append(0)
    state.slated[0] = 1
    while state.kill:
        state.touched = {}
        while state.kill:
            e = state.kill.pop()
            state.slated[e] = 0
            if etp.edge_alive[e]:
                remove_edge_vertex(etp, state, e)
        for p in state.touched:
            if etp.periph_alive[p]:
                examine_periphery(etp, state, p)
    assert etp.surviving_edges() == []
    assert etp.alive_triads() == []


def test_remove_orphaned_edge_vertex_is_plain_deletion():
    from trusskit.trapeze import TrimPass, remove_edge_vertex

    etp = build_etp_graph(complete_bipartite(2, 3))
    trim(etp, 1)
    victim = 0
    for t in list(etp.edge_triads[victim]):
        etp.triad_alive[t] = 0  # simulate triads pruned out from under it
    before = list(etp.periph_degree)
    state = TrimPass(etp, 1)
    remove_edge_vertex(etp, state, victim)
    assert not etp.edge_alive[victim]
    assert etp.periph_degree == before  # nothing else was disturbed


def test_examine_periphery_delta_propagation():
    # K_{2,5}: one periphery over the high-degree pair, degree 5. After one
    # apex is removed its degree drops to 4, and re-examination at k=4 sends
    # delta = -1 to every remaining ancestor edge.
    from trusskit.trapeze import TrimPass, examine_periphery, remove_edge_vertex

    etp = build_etp_graph(complete_bipartite(2, 5))
    trim(etp, 1)
    assert list(etp.alive_periphery_degrees().values()) == [5]
    assert all(s == 4 for e, s in enumerate(etp.S) if etp.edge_alive[e])

    state = TrimPass(etp, 4)
    assert state.kill == []
    victim = 0
    remove_edge_vertex(etp, state, victim)  # takes its apex triad and co-edge
    (p,) = state.touched
    examine_periphery(etp, state, p)
    ancestors = [e for e in range(etp.graph.m) if etp.edge_alive[e]]
    assert len(ancestors) == 8
    assert all(etp.S[e] == 3 for e in ancestors)
    assert sorted(state.kill) == ancestors  # all slated: 3 < k


def test_trapezes_k23():
    g = complete_bipartite(2, 3)
    ts = trapezes_at(g, build_etp_graph(g), 2)
    assert len(ts.members) == 1 and len(ts.members[0]) == 6


def test_trapezes_k5_levels():
    g = complete_graph(5)
    assert len(trapezes_at(g, build_etp_graph(g), 6).members[0]) == 10
    assert trapezes_at(g, build_etp_graph(g), 7).members == ()


def test_two_k4_with_bridge_cycles():
    # three parallel bridges give every bridge two rectangles, so one
    # 2-trapeze spans both cliques and the connecting structure
    k4a = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    k4b = [(4 + i, 4 + j) for i, j in k4a]
    bridges = [(0, 4), (1, 5), (2, 6)]
    g = build_graph(8, k4a + k4b + bridges)
    assert brute_force_rectangles(g)[g.edge_id(0, 4)] == 2
    ts = trapezes_at(g, build_etp_graph(g), 2)
    assert len(ts.members) == 1
    assert len(ts.members[0]) == g.m
    dec = k_classes(g, edge_supports(g))
    inside = trusses_at(dec, g, 4).members
    assert len(inside) == 2 and all(m <= ts.members[0] for m in inside)


def test_strong_trapezes_shared_vertex():
    g = graph_from("a b\nb c\nc d\nd a\nd e\ne f\nf g\ng d")
    weak = trapezes_at(g, build_etp_graph(g), 1)
    assert len(weak.members) == 1
    strong = strong_trapezes_at(g, build_etp_graph(g), 1)
    assert sorted(len(m) for m in strong.members) == [4, 4]


def test_strong_trapezes_shared_edge():
    g = graph_from("a b\nb c\nc d\nd a\nc e\ne f\nf d")
    strong = strong_trapezes_at(g, build_etp_graph(g), 1)
    assert [len(m) for m in strong.members] == [7]


def test_strong_equals_weak_on_k23():
    g = complete_bipartite(2, 3)
    weak = trapezes_at(g, build_etp_graph(g), 2)
    strong = strong_trapezes_at(g, build_etp_graph(g), 2)
    assert weak.members == strong.members


def test_level_run_with_summits():
    k5 = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    k23 = [(5 + i, 7 + j) for i in range(2) for j in range(3)]
    g = build_graph(10, k5 + k23)
    run = trapeze_level_run(g, [1, 2, 4])
    assert [len(run.weak[k].members) for k in (1, 2, 4)] == [2, 2, 1]
    summits = sorted((k, len(m)) for k, m in run.summits)
    assert summits == [(2, 6), (4, 10)]


def test_level_run_rectangle_free():
    g = graph_from("a b\nb c\nc a")
    run = trapeze_level_run(g, [1, 2])
    assert all(ts.members == () for ts in run.weak.values())
    assert run.summits == ()


def test_level_run_rejects_bad_schedule():
    g = cycle_graph(4)
    with pytest.raises(ValueError):
        trapeze_level_run(g, [2, 2])
    with pytest.raises(ValueError):
        trapeze_level_run(g, [0, 1])
    with pytest.raises(ValueError):
        trapeze_level_run(g, [])


def test_counts_non_increasing_on_bipartite():
    rng = random.Random(99)
    edges = [(i, 10 + j) for i in range(10) for j in range(14) if rng.random() < 0.35]
    g = build_graph(24, edges)
    run = trapeze_level_run(g, [1, 2, 4, 8])
    sizes = [sum(len(m) for m in run.weak[k].members) for k in (1, 2, 4, 8)]
    assert sizes == sorted(sizes, reverse=True)


def test_nesting_and_disjointness():
    for _, g in random_graphs(25, 18, seed=1717):
        previous = None
        etp = build_etp_graph(g)
        for k in (1, 2, 3, 4):
            members = trapezes_at(g, etp, k).members
            flat = [e for m in members for e in m]
            assert len(flat) == len(set(flat))
            if previous is not None:
                for small in members:
                    assert any(small <= big for big in previous)
            previous = members


def test_truss_implies_trapeze():
    for _, g in random_graphs(30, 20, seed=1818):
        dec = k_classes(g, edge_supports(g))
        for k in (4, 5, 6):
            if k > dec.k_max:
                continue
            level = (k - 2) * (k - 3)
            survivors = set(trim(build_etp_graph(g), level))
            for member in trusses_at(dec, g, k).members:
                assert member <= survivors
