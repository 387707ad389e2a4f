"""Monoid and semigroup recognition for 1-outregular digraphs.

Every weak component of a 1-outregular digraph is a rho shape: a unique
directed cycle with in-trees hanging off it.  Writing z(C) for the cycle
length of component C and l(C) for its largest depth (distance to the
cycle), the digraph is a monoid Cayley graph with a single generator iff
some component C satisfies z(D) | z(C) and l(D) <= l(C) for every
component D, and a semigroup Cayley graph iff some C satisfies
z(D) | z(C) and l(D) <= l(C) + 1.  Both directions are constructive and
implemented here; forests reduce to the monoid case by orienting each
component towards a root and adding a loop.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Tuple

from .algebra import MulTable, underlying_graph, validate_table
from .graphs import Digraph, SimpleGraph, weak_components
from .witness import CayleyWitness, cayley_arc_set, witness_ok

__all__ = [
    "ComponentShape",
    "OutregularProfile",
    "profile",
    "decide_monoid",
    "decide_semigroup",
    "construct_monoid",
    "construct_semigroup",
    "forest_witness",
    "walk",
]


@dataclass(frozen=True)
class ComponentShape:
    """One weak component: its vertices, unique cycle, z and max depth."""

    vertices: tuple
    cycle: tuple
    z: int
    depth: int


@dataclass(frozen=True)
class OutregularProfile:
    """Shape summary of a 1-outregular digraph."""

    order: int
    succ: tuple
    component: tuple          # vertex -> component id
    components: tuple         # ComponentShape per id
    vertex_depth: tuple       # l(v): distance from v to its cycle

    def zl_pairs(self) -> tuple:
        return tuple((c.z, c.depth) for c in self.components)


def profile(g: Digraph) -> OutregularProfile:
    succ = g.successor_map()      # raises if not 1-outregular
    n = g.order
    comp = weak_components(g)
    oncycle = [False] * n
    # each component holds exactly one cycle; found by walking until repeat
    cycles = {}
    state = [0] * n               # 0 unseen, 1 in progress, 2 done
    for start in range(n):
        if state[start]:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = succ[v]
        if state[v] == 1:
            cyc = path[path.index(v):]
            cid = comp.component[v]
            cycles[cid] = tuple(cyc)
            for w in cyc:
                oncycle[w] = True
        for w in path:
            state[w] = 2
    depth = [-1] * n
    for v in range(n):
        if oncycle[v]:
            depth[v] = 0
    preds = [[] for _ in range(n)]
    for v in range(n):
        preds[succ[v]].append(v)
    queue = deque(v for v in range(n) if oncycle[v])
    while queue:
        v = queue.popleft()
        for w in preds[v]:
            if depth[w] == -1:
                depth[w] = depth[v] + 1
                queue.append(w)
    shapes = []
    for cid in range(comp.count):
        members = tuple(comp.members(cid))
        cyc = cycles[cid]
        shapes.append(ComponentShape(
            vertices=members,
            cycle=cyc,
            z=len(cyc),
            depth=max(depth[v] for v in members)))
    return OutregularProfile(n, tuple(succ), comp.component, tuple(shapes),
                             tuple(depth))


def _dominates(p: OutregularProfile, cid: int, slack: int) -> bool:
    c = p.components[cid]
    return all(c.z % d.z == 0 and d.depth <= c.depth + slack
               for d in p.components)


def decide_monoid(p: OutregularProfile) -> Tuple[bool, Optional[int]]:
    """Is some component dominant: z(D) | z(C) and l(D) <= l(C) for all D?
    Returns (answer, witnessing component id), lowest id on ties."""
    for cid in range(len(p.components)):
        if _dominates(p, cid, 0):
            return True, cid
    return False, None


def decide_semigroup(p: OutregularProfile) -> Tuple[bool, Optional[int]]:
    """Same with the relaxed depth condition l(D) <= l(C) + 1."""
    for cid in range(len(p.components)):
        if _dominates(p, cid, 1):
            return True, cid
    return False, None


def walk(p: OutregularProfile, x: int, k: int) -> int:
    """The vertex x+k reached by k successor steps from x.

    Uses the depth/cycle-length arithmetic d(x, x+k) = k for k < l(x) and
    l(x) + ((k - l(x)) mod z) otherwise, so the step count never exceeds
    l(x) + z even for huge k.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    lx = p.vertex_depth[x]
    z = p.components[p.component[x]].z
    d = k if k < lx else lx + (k - lx) % z
    v = x
    for _ in range(d):
        v = p.succ[v]
    return v


def _distance_to(p: OutregularProfile, target: int) -> dict:
    """Directed distances d(v, target) for every v that can reach target."""
    preds = [[] for _ in range(p.order)]
    for v in range(p.order):
        preds[p.succ[v]].append(v)
    dist = {target: 0}
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for w in preds[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def construct_monoid(g: Digraph, e: Optional[int] = None) -> CayleyWitness:
    """Build the monoid witness for a dominant-component digraph.

    The neutral element e is a deepest vertex of the witness component C,
    a its successor, and for y in C the product x*y walks r(y) steps from
    x where r(y) = d(e, omega) - d(y, omega) with omega the vertex
    l(C) + z(C) - 1 steps beyond e.  Products by other components leave
    the right factor unchanged.
    """
    p = profile(g)
    if e is None:
        ok, cid = decide_monoid(p)
        if not ok:
            raise ValueError("no dominant component: not a monoid digraph")
        shape = p.components[cid]
        e = min(v for v in shape.vertices if p.vertex_depth[v] == shape.depth)
    else:
        cid = p.component[e]
        shape = p.components[cid]
        if not _dominates(p, cid, 0):
            raise ValueError("chosen vertex is not in a dominant component")
        if p.vertex_depth[e] != shape.depth:
            raise ValueError("chosen vertex is not of maximal depth")
    a = p.succ[e]
    omega = walk(p, e, shape.depth + shape.z - 1)
    dist = _distance_to(p, omega)
    in_c = [p.component[v] == cid for v in range(g.order)]
    r = {v: dist[e] - dist[v] for v in range(g.order) if in_c[v]}
    n = g.order
    rows = []
    for x in range(n):
        if x == e:
            rows.append(list(range(n)))
        else:
            rows.append([walk(p, x, r[y]) if in_c[y] else y for y in range(n)])
    table = MulTable(n, rows, identity=e)
    w = CayleyWitness("monoid-digraph", table, {a}, tuple(range(n)))
    if validate_table(table) is not None or cayley_arc_set(table, {a}) != g.arcs:
        raise AssertionError("monoid construction failed self-verification")
    return w


def construct_semigroup(g: Digraph) -> CayleyWitness:
    """Extend g by a fresh deepest vertex, build the monoid there, and drop
    the neutral row and column after checking the rest is closed."""
    p = profile(g)
    ok, cid = decide_semigroup(p)
    if not ok:
        raise ValueError("no dominant component: not a semigroup digraph")
    shape = p.components[cid]
    v = min(u for u in shape.vertices if p.vertex_depth[u] == shape.depth)
    n = g.order
    extended = Digraph(n + 1, set(g.arcs) | {(n, v)})
    big = construct_monoid(extended, e=n)
    rows = big.table.rows
    if any(rows[x][y] == n for x in range(n) for y in range(n)):
        raise AssertionError("semigroup reduction not closed without neutral")
    table = MulTable(n, [row[:n] for row in rows[:n]], identity=None)
    w = CayleyWitness("semigroup-digraph", table, {v}, tuple(range(n)))
    if validate_table(table) is not None or cayley_arc_set(table, {v}) != g.arcs:
        raise AssertionError("semigroup construction failed self-verification")
    return w


def forest_witness(f: SimpleGraph) -> CayleyWitness:
    """Witness that any forest is a monoid graph with one generator.

    Each component is oriented towards its smallest vertex, a loop is added
    there, and the dominant-component construction applies since every
    cycle length is 1.
    """
    n = f.order
    comp = weak_components(f)
    if len(f.edges) != n - comp.count:
        raise ValueError("input graph contains a cycle; not a forest")
    adj = f.neighbors()
    arcs = set()
    for cid in range(comp.count):
        members = comp.members(cid)
        root = min(members)
        arcs.add((root, root))
        parent = {root: root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    arcs.add((w, u))
                    queue.append(w)
    oriented = Digraph(n, arcs)
    base = construct_monoid(oriented)
    conn = set(base.connection)
    w = CayleyWitness("monoid-graph", base.table, conn, tuple(range(n)),
                      carrier="undirected")
    if underlying_graph(Digraph(n, cayley_arc_set(base.table, conn))).edges != f.edges:
        raise AssertionError("forest witness failed self-verification")
    return w
