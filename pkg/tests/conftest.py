"""Shared graph builders for the test suite."""

from __future__ import annotations

import itertools

from semicayley import Digraph, SimpleGraph


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> SimpleGraph:
    return SimpleGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> SimpleGraph:
    """Kneser graph K(5,2): vertices are 2-subsets, edges join disjoint ones."""
    pairs = list(itertools.combinations(range(5), 2))
    idx = {p: i for i, p in enumerate(pairs)}
    edges = [(idx[a], idx[b]) for a, b in itertools.combinations(pairs, 2)
             if not set(a) & set(b)]
    return SimpleGraph(10, edges)


def functional_digraph(succ) -> Digraph:
    return Digraph(len(succ), [(v, succ[v]) for v in range(len(succ))])


def nx_trees(n: int):
    """All free trees of one order as SimpleGraph, via networkx."""
    import networkx as nx

    if n == 1:
        return [SimpleGraph(1)]
    out = []
    for t in nx.nonisomorphic_trees(n):
        relabel = {v: i for i, v in enumerate(t.nodes())}
        out.append(SimpleGraph(n, [(relabel[u], relabel[v])
                                   for u, v in t.edges()]))
    return out
