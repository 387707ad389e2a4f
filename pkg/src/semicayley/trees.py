"""Generated monoid trees: when is a tree the underlying graph of a
Cayley digraph whose connection set generates the monoid?

A rooted analysis fixes an identity candidate e and records distances,
successor counts b_e (neighbors one step deeper), and branches (the
subtrees hanging at e's neighbors).  A monotonicity condition on b_e is
sufficient: deeper vertices never have more successors than shallower
ones.  The witness monoid is then the quotient of the free word monoid
over e's neighbors by "words walking to the same vertex", realized
directly on the vertex set by walking canonical words.

Two necessary conditions prune negatives.  The first compares every
vertex against the previous depth level.  The second compares against
branches and is only valid when no nontrivial left-multiplication is a
tree automorphism; surviving symmetries are so constrained (a single
involution exchanging e with a neighbor) that it suffices to withhold
the second condition when some neighbor c of e spans a subtree
isomorphic to e's own side of the split at the edge {e, c}.

The classifier restricts identity candidates to degrees within one of
the maximum degree, which is exact for generated monoid trees, and
returns a three-valued verdict; undecided instances can be escalated to
the exhaustive table search with a generation check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import MulTable, validate_table
from .graphs import SimpleGraph
from .outcome import Budget
from .witness import CayleyWitness, witness_ok

YES = "yes"
NO = "no"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class RootedTreeAnalysis:
    """A tree rooted at an identity candidate, with the derived fields
    the tree conditions quantify over."""

    tree: SimpleGraph
    root: int
    depth: Tuple[int, ...]
    succ_count: Tuple[int, ...]
    # branch[v] = the neighbor of the root whose subtree contains v;
    # branch[root] = root
    branch: Tuple[int, ...]
    parent: Tuple[int, ...]


@dataclass(frozen=True)
class TreeVerdict:
    status: str
    witness: Optional[CayleyWitness]
    candidates: Tuple[int, ...]
    # per-candidate detail: ("sufficient",) | ("part1", x) | ("part2", x, c)
    # | ("open",)
    details: Dict[int, tuple]

    @property
    def is_yes(self) -> bool:
        return self.status == YES

    @property
    def is_no(self) -> bool:
        return self.status == NO


def _check_tree(t: SimpleGraph) -> List[frozenset]:
    adj = t.neighbors()
    if t.order == 0:
        raise ValueError("empty vertex set")
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != t.order or len(t.edges) != t.order - 1:
        raise ValueError("input graph is not a tree")
    return adj


def analyze(t: SimpleGraph, e: int) -> RootedTreeAnalysis:
    """Root the tree at candidate ``e`` and compute depth, successor
    count and branch membership for every vertex."""
    adj = _check_tree(t)
    if not 0 <= e < t.order:
        raise ValueError(f"root {e} out of range")
    n = t.order
    depth = [-1] * n
    parent = [-1] * n
    branch = [-1] * n
    depth[e] = 0
    parent[e] = e
    branch[e] = e
    frontier = [e]
    while frontier:
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if depth[u] < 0:
                    depth[u] = depth[v] + 1
                    parent[u] = v
                    branch[u] = u if v == e else branch[v]
                    nxt.append(u)
        frontier = nxt
    succ = [sum(1 for u in adj[v] if depth[u] == depth[v] + 1) for v in range(n)]
    return RootedTreeAnalysis(
        tree=t,
        root=e,
        depth=tuple(depth),
        succ_count=tuple(succ),
        branch=tuple(branch),
        parent=tuple(parent),
    )


def sufficient_check(a: RootedTreeAnalysis) -> bool:
    """Strictly deeper vertices never have more successors."""
    n = a.tree.order
    depth, b = a.depth, a.succ_count
    maxdepth = max(depth)
    # min of b per depth level; deeper levels must stay below all of them
    level_min = [min((b[v] for v in range(n) if depth[v] == d), default=0)
                 for d in range(maxdepth + 1)]
    running = []
    lo = None
    for d in range(maxdepth + 1):
        running.append(lo)
        lo = level_min[d] if lo is None else min(lo, level_min[d])
    for v in range(n):
        lim = running[depth[v]]
        if lim is not None and b[v] > lim:
            return False
    return True


def _children(a: RootedTreeAnalysis) -> List[List[int]]:
    """Children per vertex, ordered by subtree size descending then id."""
    n = a.tree.order
    adj = a.tree.neighbors()
    size = [1] * n
    by_depth = sorted(range(n), key=lambda v: -a.depth[v])
    for v in by_depth:
        if v != a.root:
            size[a.parent[v]] += size[v]
    return [
        sorted((u for u in adj[v] if a.depth[u] == a.depth[v] + 1),
               key=lambda u: (-size[u], u))
        for v in range(n)
    ]


def construct_generated_witness(a: RootedTreeAnalysis) -> CayleyWitness:
    """Build the word-quotient monoid on the vertex set.

    Letters are the root's children in canonical order.  A vertex walks
    letter i to its i-th child, clamped to the last child when i exceeds
    its successor count; leaves absorb every letter.  The product u*v
    walks u along v's canonical root-to-v word.  Requires the sufficient
    condition, which makes the walk independent of representatives.
    """
    if not sufficient_check(a):
        raise ValueError("sufficient condition does not hold at this root")
    t, e = a.tree, a.root
    n = t.order
    children = _children(a)

    def step(v: int, i: int) -> int:
        ch = children[v]
        if not ch:
            return v
        return ch[min(i, len(ch) - 1)]

    word: Dict[int, tuple] = {e: ()}
    frontier = [e]
    while frontier:
        nxt = []
        for v in frontier:
            for i, u in enumerate(children[v]):
                word[u] = word[v] + (i,)
                nxt.append(u)
        frontier = nxt
    rows = []
    for u in range(n):
        row = []
        for v in range(n):
            x = u
            for i in word[v]:
                x = step(x, i)
            row.append(x)
        rows.append(tuple(row))
    table = MulTable(n, tuple(rows), identity=e)
    # the sufficient condition is exactly what makes this associative
    bad = validate_table(table)
    if bad is not None:
        raise AssertionError(f"walk table not associative: {bad}")
    conn = frozenset(children[e])
    # colored agreement: multiplying by the i-th letter is the i-th step
    for x in range(n):
        for i, c in enumerate(children[e]):
            if rows[x][c] != step(x, i):
                raise AssertionError("colored arcs disagree with labeling")
    w = CayleyWitness(
        mode="generated-monoid-tree",
        table=table,
        connection=conn,
        vertex_map=tuple(range(n)),
        carrier="undirected",
    )
    if not witness_ok(w, t):
        raise AssertionError("constructed tree witness failed verification")
    return w


def necessary_check(a: RootedTreeAnalysis, symmetry_free: bool):
    """Both necessary conditions at this root; None on pass, else a
    certificate tuple naming the first failing vertex.

    Part 1: every non-root vertex is matched by some vertex one level
    shallower with at least as many successors.  Part 2 (only when
    ``symmetry_free``): every branch contains, for every vertex x, a
    vertex not much deeper than x with few enough successors; the slack
    is zero for x in C or the root.
    """
    t, e = a.tree, a.root
    n = t.order
    depth, b = a.depth, a.succ_count
    for x in range(n):
        if x == e:
            continue
        dx = depth[x]
        if not any(depth[y] == dx - 1 and b[x] <= b[y] for y in range(n)):
            return ("part1", x)
    if symmetry_free:
        conn = sorted(u for u in range(n) if a.parent[u] == e and u != e)
        cset = frozenset(conn)
        for x in range(n):
            eps = 0 if (x == e or x in cset) else 1
            for c in conn:
                if not any(
                    a.branch[y] == c
                    and depth[y] <= depth[x] + 1
                    and b[y] <= b[x] + eps
                    for y in range(n)
                    if y != e
                ):
                    return ("part2", x, c)
    return None


def neutral_candidates(t: SimpleGraph) -> List[int]:
    """Identity candidates: degree within one of the maximum degree."""
    _check_tree(t)
    degs = t.degrees()
    dmax = max(degs)
    return [v for v in range(t.order) if degs[v] >= dmax - 1]


def _rooted_code(t: SimpleGraph, root: int, blocked: int) -> str:
    """Canonical string of the component of ``root`` in t - blocked,
    rooted at ``root``."""
    adj = t.neighbors()
    parent = {root: -1}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u != blocked and u not in parent:
                parent[u] = v
                order.append(u)
                stack.append(u)
    codes: Dict[int, str] = {}
    for v in reversed(order):
        subs = sorted(codes[u] for u in adj[v]
                      if u != blocked and parent.get(u) == v)
        codes[v] = "(" + "".join(subs) + ")"
    return codes[root]


def symmetry_condition(t: SimpleGraph, e: int) -> bool:
    """Could a nontrivial left-multiplication be a tree automorphism?

    Surviving symmetries fix an involution exchanging e with a single
    neighbor c, which forces the two sides of the edge {e, c} to be
    isomorphic as rooted trees.  Returns True when some neighbor allows
    this, in which case the second necessary condition is withheld.
    """
    _check_tree(t)
    adj = t.neighbors()
    for c in adj[e]:
        if _rooted_code(t, e, c) == _rooted_code(t, c, e):
            return True
    return False


def classify_tree(
    t: SimpleGraph,
    *,
    escalate: bool = False,
    budget: Optional[Budget] = None,
) -> TreeVerdict:
    """Three-valued classification of a tree as a generated monoid graph.

    Yes when the sufficient condition holds at some admissible root (a
    witness is built); No when every admissible root fails a necessary
    condition that applies to it; Undecided otherwise.  With
    ``escalate`` the undecided case falls through to the exhaustive
    table search with the generation requirement.
    """
    cands = neutral_candidates(t)
    details: Dict[int, tuple] = {}
    analyses = {e: analyze(t, e) for e in cands}
    for e in cands:
        a = analyses[e]
        if sufficient_check(a):
            w = construct_generated_witness(a)
            sf = not symmetry_condition(t, e)
            if necessary_check(a, sf) is not None:
                raise AssertionError(
                    "sufficient condition held but a necessary one failed")
            details[e] = ("sufficient",)
            return TreeVerdict(YES, w, tuple(cands), details)
    open_count = 0
    for e in cands:
        fail = necessary_check(analyses[e], not symmetry_condition(t, e))
        if fail is None:
            details[e] = ("open",)
            open_count += 1
        else:
            details[e] = fail
    if open_count == 0:
        return TreeVerdict(NO, None, tuple(cands), details)
    if escalate:
        from .recognize import recognize_monoid_graph

        out = recognize_monoid_graph(t, budget, require_generated=True)
        if out.is_witness:
            return TreeVerdict(YES, out.witness, tuple(cands), details)
        if out.is_no:
            return TreeVerdict(NO, None, tuple(cands), details)
    return TreeVerdict(UNDECIDED, None, tuple(cands), details)
