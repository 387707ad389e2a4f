"""Exhaustive table search: digraph and graph modes, the homomorphism
route, and the census driver.

Census tallies are frozen from runs whose positive halves all carry
self-verified witnesses and whose searches completed without hitting a
budget; the digraph tallies are cross-checked against the independent
left-multiplication search in ``sabidussi_check``.
"""

from __future__ import annotations

import pytest

from conftest import functional_digraph
from semicayley import (
    Budget,
    Digraph,
    SimpleGraph,
    classify_all,
    decide_monoid,
    decide_semigroup,
    enumerate_graphs,
    profile,
    recognize_monoid_digraph,
    recognize_monoid_graph,
    recognize_semigroup_digraph,
    sabidussi_check,
    witness_ok,
)
from semicayley.families import looped_path_digraph, gen_smallest_tree
from semicayley.witness import generated_submonoid

# frozen: order-3 outregular digraph census, both algebraic modes
ORDER3_TALLY = {"witness": 13, "exhausted-no": 3}


def fresh_budget(nodes=10**7, seconds=120.0) -> Budget:
    return Budget(max_nodes=nodes, max_seconds=seconds)


def test_looped_path_negative_both_modes():
    g = looped_path_digraph()
    for rec in (recognize_monoid_digraph, recognize_semigroup_digraph):
        out = rec(g, fresh_budget())
        assert out.status == "exhausted-no"
        assert out.nodes > 0


def test_directed_cycle_is_a_group_cayley_graph():
    g = functional_digraph([1, 2, 3, 0])
    out = recognize_monoid_digraph(g, fresh_budget())
    assert out.is_witness
    w = out.witness
    assert witness_ok(w, g)
    assert len(w.connection) == 1
    assert w.table.identity is not None


def test_semigroup_witness_without_identity_claim():
    g = functional_digraph([0, 0, 1])
    out = recognize_semigroup_digraph(g, fresh_budget())
    assert out.is_witness
    assert out.witness.table.identity is None
    assert witness_ok(out.witness, g)


def test_recognize_agrees_with_dominant_component_rules():
    # every 1-outregular digraph on <= 4 vertices, both modes
    for g in enumerate_graphs(4, "digraph-outregular"):
        if not g.is_k_outregular(1):
            continue
        p = profile(g)
        assert recognize_monoid_digraph(g, fresh_budget()).is_witness \
            == decide_monoid(p)[0]
        assert recognize_semigroup_digraph(g, fresh_budget()).is_witness \
            == decide_semigroup(p)[0]


def test_one_outregular_witnesses_have_singleton_connection():
    for succ in ([1, 2, 0], [0, 0, 1], [1, 0, 2]):
        g = functional_digraph(succ)
        out = recognize_monoid_digraph(g, fresh_budget())
        if out.is_witness:
            assert len(out.witness.connection) == 1


def test_census_order3_tallies_frozen():
    for mode in ("semigroup-digraph", "monoid-digraph"):
        report = classify_all(3, mode)
        assert report.counts() == ORDER3_TALLY, mode
        assert len(report.entries) == 16


def test_census_lines_format():
    report = classify_all(2, "monoid-digraph")
    for line in report.lines():
        key, status, nodes = line.split("\t")
        int(key, 16)
        assert status in ("witness", "exhausted-no", "budget-exceeded")
        int(nodes)


def test_census_parallel_matches_serial():
    serial = classify_all(3, "semigroup-digraph")
    parallel = classify_all(3, "semigroup-digraph", workers=2)
    assert sorted(serial.lines()) == sorted(parallel.lines())


def test_census_rejects_unknown_mode():
    with pytest.raises(ValueError):
        classify_all(3, "ring-digraph")


def test_all_small_graphs_are_monoid_graphs():
    # orders 1..4: 1 + 2 + 4 + 11 classes, all positive
    for n in range(1, 5):
        for g in enumerate_graphs(n, "simple"):
            out = recognize_monoid_graph(g, fresh_budget())
            assert out.is_witness
            assert witness_ok(out.witness, g)


def test_edgeless_graphs():
    g = SimpleGraph(3)
    out = recognize_monoid_graph(g, fresh_budget())
    assert out.is_witness and out.witness.connection == frozenset()
    gen = recognize_monoid_graph(g, fresh_budget(), require_generated=True)
    assert gen.status == "exhausted-no"
    single = recognize_monoid_graph(SimpleGraph(1), fresh_budget(),
                                    require_generated=True)
    assert single.is_witness


def test_generated_mode_separates_broom_from_spider():
    broom = gen_smallest_tree()
    assert recognize_monoid_graph(broom, fresh_budget()).is_witness
    out = recognize_monoid_graph(broom, fresh_budget(),
                                 require_generated=True)
    assert out.status == "exhausted-no"

    spider = SimpleGraph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    out = recognize_monoid_graph(spider, fresh_budget(),
                                 require_generated=True)
    assert out.is_witness
    gen = generated_submonoid(out.witness.table, out.witness.connection)
    assert len(gen) == 7


def test_max_connection_restricts_identity_degree():
    # a star demands its full-degree center as identity when generated
    star = SimpleGraph(4, [(0, 1), (0, 2), (0, 3)])
    restricted = recognize_monoid_graph(star, fresh_budget(),
                                        require_generated=True,
                                        max_connection=2)
    assert restricted.status == "exhausted-no"
    free = recognize_monoid_graph(star, fresh_budget(),
                                  require_generated=True)
    assert free.is_witness


def test_column_prunes_do_not_change_outcomes():
    for mode, rec in (("monoid", recognize_monoid_digraph),
                      ("semigroup", recognize_semigroup_digraph)):
        for g in enumerate_graphs(3, "digraph-outregular"):
            a = rec(g, fresh_budget(), column_prunes=True)
            b = rec(g, fresh_budget(), column_prunes=False)
            assert a.status == b.status, (mode, sorted(g.arcs))
    for g in enumerate_graphs(4, "simple"):
        a = recognize_monoid_graph(g, fresh_budget(), column_prunes=True)
        b = recognize_monoid_graph(g, fresh_budget(), column_prunes=False)
        assert a.status == b.status


def test_budget_exhaustion_is_reported_not_raised():
    g = SimpleGraph(9, [(i, (i + 1) % 9) for i in range(9)]
                    + [(i, (i + 2) % 9) for i in range(9)])
    out = recognize_monoid_graph(g, Budget(max_nodes=50, max_seconds=60.0))
    assert out.status == "budget-exceeded"
    assert out.nodes >= 50


def test_sabidussi_agrees_with_search_up_to_order_3():
    for n in range(1, 4):
        for g in enumerate_graphs(n, "digraph-all"):
            a = sabidussi_check(g, fresh_budget())
            b = recognize_monoid_digraph(g, fresh_budget())
            assert a.is_witness == b.is_witness, sorted(g.arcs)
            if a.is_witness:
                assert witness_ok(a.witness, g)


def test_sabidussi_order_cap():
    big = Digraph(9, [(i, i) for i in range(9)])
    with pytest.raises(ValueError):
        sabidussi_check(big, fresh_budget())
