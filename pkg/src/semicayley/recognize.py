"""Exhaustive searches answering: is this graph a Cayley graph?

Three recognizers share one constraint solver over partial multiplication
tables: directed monoid (identity fixed, connection set equal to the
out-neighborhood of the identity), directed semigroup (no identity,
connection sets enumerated by size), and undirected monoid (connection
set equal to the neighborhood of the identity, each edge realized by an
arc in at least one direction).  A fourth search selects endomorphisms
instead of table cells and is used to cross-validate the table search on
small digraphs.

Every pruning rule is a necessary condition for a valid table, so an
exhausted search certifies a negative answer:

* the identity's out-neighborhood (neighborhood, undirected) determines
  the connection set exactly;
* a 1-outregular semigroup digraph always admits a singleton connection
  set, so larger sets need not be searched in that case;
* rows of a Cayley table are endomorphisms of the represented digraph;
* strongly connected directed carriers force injective rows;
* a completed connection column is itself a 1-outregular Cayley digraph
  and must satisfy the cycle-divisibility and depth conditions, with the
  identity's component dominating in the monoid case.
"""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import MulTable, validate_table
from .graphs import (
    Digraph,
    SimpleGraph,
    canonical_form,
    enumerate_graphs,
    is_strongly_connected,
)
from .outcome import (
    Budget,
    BudgetExceededError,
    SearchOutcome,
    budget_outcome,
    no_outcome,
    witness_outcome,
)
from .witness import CayleyWitness, generated_submonoid, verify_witness

CENSUS_MODES = ("monoid-digraph", "semigroup-digraph", "monoid-graph")


def _left_zero_with_identity(n: int) -> MulTable:
    """Monoid on {0..n-1} with identity 0 and x*y = x off the identity."""
    rows = [tuple(range(n))]
    rows += [tuple(x for _ in range(n)) for x in range(1, n)]
    return MulTable(n, tuple(rows), identity=0)


def _left_zero(n: int) -> MulTable:
    rows = tuple(tuple(x for _ in range(n)) for x in range(n))
    return MulTable(n, rows)


def _edgeless_witness(mode: str, n: int) -> CayleyWitness:
    """An edgeless graph is a Cayley graph via the empty connection set."""
    if mode == "semigroup-digraph":
        table = _left_zero(n)
    else:
        table = _left_zero_with_identity(n)
    carrier = "undirected" if mode == "monoid-graph" else "directed"
    return CayleyWitness(
        mode=mode,
        table=table,
        connection=frozenset(),
        vertex_map=tuple(range(n)),
        carrier=carrier,
    )


def _functional_components(succ: Sequence[int]):
    """Cycle length and depth per weak component of a functional digraph.

    Returns (comp, cycle_len, max_depth) where comp[v] is the component
    id of v and the two lists are indexed by component id.
    """
    n = len(succ)
    color = [0] * n
    comp = [-1] * n
    on_cycle = [False] * n
    cycle_len: List[int] = []
    for s in range(n):
        if color[s]:
            continue
        path = []
        v = s
        while color[v] == 0:
            color[v] = 1
            path.append(v)
            v = succ[v]
        if color[v] == 1:
            cid = len(cycle_len)
            i = path.index(v)
            cycle_len.append(len(path) - i)
            for u in path[i:]:
                on_cycle[u] = True
        else:
            cid = comp[v]
        for u in path:
            comp[u] = cid
            color[u] = 2
    depth = [-1] * n
    for s in range(n):
        chain = []
        v = s
        while depth[v] < 0 and not on_cycle[v]:
            chain.append(v)
            v = succ[v]
        base = 0 if on_cycle[v] else depth[v]
        for u in reversed(chain):
            base += 1
            depth[u] = base
    for v in range(n):
        if on_cycle[v]:
            depth[v] = 0
    max_depth = [0] * len(cycle_len)
    for v in range(n):
        if depth[v] > max_depth[comp[v]]:
            max_depth[comp[v]] = depth[v]
    return comp, cycle_len, max_depth


def _column_admissible(succ: Sequence[int], identity: Optional[int]) -> bool:
    """Divisibility/depth test for one completed connection column.

    With an identity the identity's component must dominate exactly; for
    a semigroup some component must dominate with depth slack one.
    """
    comp, zlen, ell = _functional_components(succ)
    if identity is not None:
        c = comp[identity]
        return all(
            zlen[c] % zlen[d] == 0 and ell[d] <= ell[c] for d in range(len(zlen))
        )
    k = len(zlen)
    for c in range(k):
        if all(zlen[c] % zlen[d] == 0 and ell[d] <= ell[c] + 1 for d in range(k)):
            return True
    return False


class _TableSolver:
    """Backtracking search for an associative table realizing a graph.

    Cells are assigned in a fixed static order, connection columns first.
    Each assignment propagates every associativity triple it completes,
    via occurrence lists keyed by cell value, and updates per-row arc
    coverage counters whose infeasibility prunes the branch.
    """

    def __init__(
        self,
        n: int,
        connection: Sequence[int],
        budget: Budget,
        *,
        out_sets: Optional[Sequence[frozenset]] = None,
        adj_sets: Optional[Sequence[frozenset]] = None,
        identity: Optional[int] = None,
        injective_rows: bool = False,
        column_prunes: bool = True,
        leaf_check=None,
    ):
        self.n = n
        self.conn = tuple(connection)
        self.conn_set = frozenset(connection)
        self.budget = budget
        self.out_sets = out_sets
        self.adj_sets = adj_sets
        self.identity = identity
        self.injective_rows = injective_rows
        self.column_prunes = column_prunes
        self.leaf_check = leaf_check
        self.table = [[-1] * n for _ in range(n)]
        self.occ: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        self.row_vals = [set() for _ in range(n)]
        self.trail: List[Tuple[int, int]] = []
        self.queue: List[Tuple[int, int, int]] = []
        if out_sets is not None:
            # directed carrier: row x must cover N+(x) exactly
            self.remaining = [len(self.conn)] * n
            self.uncovered = [len(out_sets[x]) for x in range(n)]
            self.cover_count = [[0] * n for _ in range(n)]
        if adj_sets is not None:
            # undirected carrier: each edge needs an arc in some direction
            self.edge_cov: Dict[Tuple[int, int], int] = {}
            self.edge_pot: Dict[Tuple[int, int], int] = {}
            for u in range(n):
                for v in adj_sets[u]:
                    if u < v:
                        self.edge_cov[(u, v)] = 0
                        self.edge_pot[(u, v)] = 2 * len(self.conn)
        self.col_remaining = {c: n for c in self.conn_set}
        conn_cells = [(x, c) for x in range(n) for c in self.conn]
        rest = [
            (a, b)
            for a in range(n)
            for b in range(n)
            if b not in self.conn_set
        ]
        self.order = conn_cells + rest

    # -- assignment / undo ------------------------------------------------

    def _value_allowed(self, a: int, b: int, v: int) -> bool:
        if b in self.conn_set:
            if self.out_sets is not None and v not in self.out_sets[a]:
                return False
            if self.adj_sets is not None and v != a and v not in self.adj_sets[a]:
                return False
        if self.injective_rows and v in self.row_vals[a]:
            return False
        return True

    def _endo_row_ok(self, a: int, u: int, w: int) -> bool:
        """Left translation by a must be an endomorphism: check arcs at u."""
        T = self.table
        if self.out_sets is not None:
            for y in self.out_sets[u]:
                z = T[a][y]
                if z >= 0 and z not in self.out_sets[w]:
                    return False
            for y in range(self.n):
                if u in self.out_sets[y]:
                    z = T[a][y]
                    if z >= 0 and w not in self.out_sets[z]:
                        return False
        else:
            for y in self.adj_sets[u]:
                z = T[a][y]
                if z >= 0 and z != w and z not in self.adj_sets[w]:
                    return False
        return True

    def _assign(self, a: int, b: int, v: int) -> bool:
        """Commit one cell.  On False the caller must undo to its mark."""
        if not self._value_allowed(a, b, v):
            return False
        if not self._endo_row_ok(a, b, v):
            return False
        T = self.table
        T[a][b] = v
        self.occ[v].append((a, b))
        self.row_vals[a].add(v)
        self.trail.append((a, b))
        if b in self.conn_set:
            # complete every counter update before failing so that undo_to
            # is an exact inverse of this block
            dead = False
            if self.out_sets is not None:
                self.remaining[a] -= 1
                self.cover_count[a][v] += 1
                if self.cover_count[a][v] == 1:
                    self.uncovered[a] -= 1
                if self.uncovered[a] > self.remaining[a]:
                    dead = True
            if self.adj_sets is not None:
                for y in self.adj_sets[a]:
                    key = (a, y) if a < y else (y, a)
                    self.edge_pot[key] -= 1
                    if v == y:
                        self.edge_cov[key] += 1
                    if self.edge_pot[key] == 0 and self.edge_cov[key] == 0:
                        dead = True
            self.col_remaining[b] -= 1
            if dead:
                return False
            if self.col_remaining[b] == 0 and self.column_prunes:
                succ = [T[x][b] for x in range(self.n)]
                if not _column_admissible(succ, self.identity):
                    return False
        # associativity propagation: four roles of the new cell
        n = self.n
        queue = self.queue
        for c in range(n):
            w = T[b][c]
            if w >= 0:
                lhs = T[v][c]
                rhs = T[a][w]
                if lhs >= 0 and rhs >= 0:
                    if lhs != rhs:
                        return False
                elif lhs >= 0:
                    queue.append((a, w, lhs))
                elif rhs >= 0:
                    queue.append((v, c, rhs))
            w = T[c][a]
            if w >= 0:
                lhs = T[w][b]
                rhs = T[c][v]
                if lhs >= 0 and rhs >= 0:
                    if lhs != rhs:
                        return False
                elif lhs >= 0:
                    queue.append((c, v, lhs))
                elif rhs >= 0:
                    queue.append((w, b, rhs))
        for (x, y) in self.occ[a]:
            if x == a and y == b:
                continue
            w = T[y][b]
            if w >= 0:
                z = T[x][w]
                if z >= 0:
                    if z != v:
                        return False
                else:
                    queue.append((x, w, v))
        for (y, z) in self.occ[b]:
            if y == a and z == b:
                continue
            w = T[a][y]
            if w >= 0:
                u = T[w][z]
                if u >= 0:
                    if u != v:
                        return False
                else:
                    queue.append((w, z, v))
        return True

    def assign_propagate(self, a: int, b: int, v: int) -> bool:
        """Assign one cell and drain all forced consequences."""
        self.queue.clear()
        ok = self._assign(a, b, v)
        while ok and self.queue:
            x, y, w = self.queue.pop()
            cur = self.table[x][y]
            if cur == w:
                continue
            if cur >= 0:
                ok = False
            else:
                ok = self._assign(x, y, w)
        if not ok:
            self.queue.clear()
        return ok

    def undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            a, b = self.trail.pop()
            v = self.table[a][b]
            self.table[a][b] = -1
            self.occ[v].pop()
            self.row_vals[a].discard(v)
            if b in self.conn_set:
                self.col_remaining[b] += 1
                if self.out_sets is not None:
                    self.remaining[a] += 1
                    self.cover_count[a][v] -= 1
                    if self.cover_count[a][v] == 0:
                        self.uncovered[a] += 1
                if self.adj_sets is not None:
                    for y in self.adj_sets[a]:
                        key = (a, y) if a < y else (y, a)
                        self.edge_pot[key] += 1
                        if v == y:
                            self.edge_cov[key] -= 1

    # -- search -----------------------------------------------------------

    def prefill_identity(self) -> bool:
        e = self.identity
        if e is None:
            return True
        for x in range(self.n):
            if self.table[e][x] < 0 and not self.assign_propagate(e, x, x):
                return False
            if self.table[x][e] < 0 and not self.assign_propagate(x, e, x):
                return False
        return True

    def _candidates(self, a: int, b: int):
        if b in self.conn_set:
            if self.out_sets is not None:
                return sorted(self.out_sets[a])
            return sorted(self.adj_sets[a] | {a})
        return range(self.n)

    def search(self) -> Optional[MulTable]:
        return self._search(0)

    def _search(self, idx: int) -> Optional[MulTable]:
        table = self.table
        order = self.order
        while idx < len(order):
            a, b = order[idx]
            if table[a][b] < 0:
                break
            idx += 1
        else:
            return self._finish()
        a, b = order[idx]
        for v in self._candidates(a, b):
            self.budget.tick()
            mark = len(self.trail)
            if self.assign_propagate(a, b, v):
                found = self._search(idx + 1)
                if found is not None:
                    return found
            self.undo_to(mark)
        return None

    def _finish(self) -> Optional[MulTable]:
        rows = tuple(tuple(row) for row in self.table)
        table = MulTable(self.n, rows, identity=self.identity)
        if validate_table(table) is not None:
            return None
        if self.leaf_check is not None and not self.leaf_check(table):
            # returning None resumes the enumeration at the caller
            return None
        return table


def _witness_from_table(mode, table, connection, carrier) -> CayleyWitness:
    return CayleyWitness(
        mode=mode,
        table=table,
        connection=frozenset(connection),
        vertex_map=tuple(range(table.order)),
        carrier=carrier,
    )


def _checked(witness, graph) -> bool:
    return all(verify_witness(witness, graph).values())


def recognize_monoid_digraph(
    g: Digraph,
    budget: Optional[Budget] = None,
    *,
    column_prunes: bool = True,
) -> SearchOutcome:
    """Decide whether ``g`` is the Cayley digraph of a finite monoid.

    The identity candidate ranges over vertices of maximum outdegree (the
    identity's row is a bijection onto the vertex set, so no row can
    cover a larger out-neighborhood).  Given the identity, the connection
    set is exactly its out-neighborhood.
    """
    budget = budget or Budget()
    budget.start_clock()
    degs = g.out_degrees()
    if not g.arcs:
        w = _edgeless_witness("monoid-digraph", g.order)
        assert _checked(w, g)
        return witness_outcome(w, budget)
    if min(degs) == 0:
        # a nonempty connection set forces positive outdegree everywhere
        return no_outcome(budget)
    out_sets = [frozenset(s) for s in g.out_neighbors()]
    dmax = max(degs)
    injective = is_strongly_connected(g)
    try:
        for e in range(g.order):
            if degs[e] != dmax:
                continue
            conn = sorted(out_sets[e])
            solver = _TableSolver(
                g.order,
                conn,
                budget,
                out_sets=out_sets,
                identity=e,
                injective_rows=injective,
                column_prunes=column_prunes,
            )
            if not solver.prefill_identity():
                continue
            table = solver.search()
            if table is not None:
                w = _witness_from_table("monoid-digraph", table, conn, "directed")
                assert _checked(w, g)
                return witness_outcome(w, budget)
    except BudgetExceededError:
        return budget_outcome(budget)
    return no_outcome(budget)


def recognize_semigroup_digraph(
    g: Digraph,
    budget: Optional[Budget] = None,
    *,
    column_prunes: bool = True,
) -> SearchOutcome:
    """Decide whether ``g`` is the Cayley digraph of a finite semigroup.

    Connection sets are enumerated by size starting at the maximum
    outdegree (rows must cover their out-neighborhoods exactly).  For
    1-outregular inputs only singletons are tried: any representation
    restricts to one over a single connection element.
    """
    budget = budget or Budget()
    budget.start_clock()
    degs = g.out_degrees()
    if not g.arcs:
        w = _edgeless_witness("semigroup-digraph", g.order)
        assert _checked(w, g)
        return witness_outcome(w, budget)
    if min(degs) == 0:
        return no_outcome(budget)
    out_sets = [frozenset(s) for s in g.out_neighbors()]
    dmax = max(degs)
    injective = is_strongly_connected(g)
    if dmax == 1 and min(degs) == 1:
        sizes: Sequence[int] = (1,)
    else:
        sizes = range(dmax, g.order + 1)
    try:
        for size in sizes:
            for conn in itertools.combinations(range(g.order), size):
                solver = _TableSolver(
                    g.order,
                    conn,
                    budget,
                    out_sets=out_sets,
                    identity=None,
                    injective_rows=injective,
                    column_prunes=column_prunes,
                )
                table = solver.search()
                if table is not None:
                    w = _witness_from_table(
                        "semigroup-digraph", table, conn, "directed"
                    )
                    assert _checked(w, g)
                    return witness_outcome(w, budget)
    except BudgetExceededError:
        return budget_outcome(budget)
    return no_outcome(budget)


def recognize_monoid_graph(
    g: SimpleGraph,
    budget: Optional[Budget] = None,
    *,
    require_generated: bool = False,
    max_connection: Optional[int] = None,
    column_prunes: bool = True,
) -> SearchOutcome:
    """Decide whether ``g`` is the underlying graph of a monoid Cayley digraph.

    Given the identity candidate the connection set is exactly its
    neighborhood: any representation can be rewritten so that every
    connection element is adjacent to the identity and every neighbor
    occurs.  ``max_connection`` restricts identity candidates to degree
    at most that bound, trading completeness for speed: an exhausted
    restricted search then certifies only that no representation exists
    whose identity has degree within the bound.
    """
    budget = budget or Budget()
    budget.start_clock()
    degs = g.degrees()
    n = g.order
    if not g.edges:
        if require_generated and n > 1:
            return no_outcome(budget)
        w = _edgeless_witness("monoid-graph", n)
        assert _checked(w, g)
        return witness_outcome(w, budget)
    adj_sets = [frozenset(s) for s in g.neighbors()]
    candidates = sorted(range(n), key=lambda x: (-degs[x], x))
    try:
        for e in candidates:
            if degs[e] == 0:
                continue
            if max_connection is not None and degs[e] > max_connection:
                continue
            conn = sorted(adj_sets[e])
            check = None
            if require_generated:
                cset = frozenset(conn)
                def check(table, cset=cset):
                    return len(generated_submonoid(table, cset)) == n
            solver = _TableSolver(
                n,
                conn,
                budget,
                adj_sets=adj_sets,
                identity=e,
                column_prunes=column_prunes,
                leaf_check=check,
            )
            if not solver.prefill_identity():
                continue
            table = solver.search()
            if table is not None:
                w = _witness_from_table("monoid-graph", table, conn, "undirected")
                assert _checked(w, g)
                return witness_outcome(w, budget)
    except BudgetExceededError:
        return budget_outcome(budget)
    return no_outcome(budget)


# -- endomorphism-based cross-check ---------------------------------------


def endomorphisms(g: Digraph, budget: Optional[Budget] = None) -> List[Tuple[int, ...]]:
    """All endomorphisms of ``g`` as tuples, in lexicographic order.

    Backtracking over images with arc checks against already-placed
    vertices; intended for small orders only.
    """
    n = g.order
    out_sets = [frozenset(s) for s in g.out_neighbors()]
    result: List[Tuple[int, ...]] = []
    img = [-1] * n

    def place(v: int) -> None:
        if budget is not None:
            budget.tick()
        if v == n:
            result.append(tuple(img))
            return
        for w in range(n):
            ok = True
            for u in range(v):
                if u in out_sets[v] and img[u] not in out_sets[w]:
                    ok = False
                    break
                if v in out_sets[u] and w not in out_sets[img[u]]:
                    ok = False
                    break
            if ok and v in out_sets[v] and w not in out_sets[w]:
                ok = False
            if ok:
                img[v] = w
                place(v + 1)
                img[v] = -1

    place(0)
    return result


def sabidussi_check(g: Digraph, budget: Optional[Budget] = None) -> SearchOutcome:
    """Monoid recognition by selecting one endomorphism per vertex.

    ``g`` is a monoid Cayley digraph iff for some vertex e one can pick
    endomorphisms (phi_x) with phi_x(e) = x, phi_e the identity map,
    closed under composition (phi_x . phi_y = phi_{phi_x(y)}), and such
    that every phi_x pushes some out-neighbor of e onto each out-neighbor
    of x.  The product x*y = phi_x(y) then defines the monoid.  Intended
    for order at most 8.
    """
    if g.order > 8:
        raise ValueError("endomorphism search is limited to order <= 8")
    budget = budget or Budget()
    budget.start_clock()
    n = g.order
    out_sets = [frozenset(s) for s in g.out_neighbors()]
    try:
        endos = endomorphisms(g, budget)
        identity_map = tuple(range(n))
        for e in range(n):
            conn = sorted(out_sets[e])
            cands: List[List[Tuple[int, ...]]] = [[] for _ in range(n)]
            feasible = True
            for phi in endos:
                x = phi[e]
                if all(
                    any(phi[c] == y for c in conn) for y in out_sets[x]
                ):
                    cands[x].append(phi)
            if any(not c for c in cands):
                continue
            if identity_map not in cands[e]:
                continue
            cand_sets = [frozenset(c) for c in cands]
            chosen: List[Optional[Tuple[int, ...]]] = [None] * n
            chosen[e] = identity_map
            var_order = sorted(
                (x for x in range(n) if x != e), key=lambda x: len(cands[x])
            )
            trail: List[int] = [e]

            def close(x: int) -> bool:
                """Force compositions of phi_x with all chosen maps."""
                stack = [x]
                while stack:
                    a = stack.pop()
                    pa = chosen[a]
                    for b in range(n):
                        pb = chosen[b]
                        if pb is None:
                            continue
                        for first, second in ((pa, pb), (pb, pa)):
                            comp = tuple(second[first[i]] for i in range(n))
                            t = comp[e]
                            cur = chosen[t]
                            if cur is None:
                                if comp not in cand_sets[t]:
                                    return False
                                chosen[t] = comp
                                trail.append(t)
                                stack.append(t)
                            elif cur != comp:
                                return False
                return True

            def extend(i: int) -> bool:
                while i < len(var_order) and chosen[var_order[i]] is not None:
                    i += 1
                if i == len(var_order):
                    return True
                x = var_order[i]
                for phi in cands[x]:
                    budget.tick()
                    mark = len(trail)
                    chosen[x] = phi
                    trail.append(x)
                    if close(x) and extend(i + 1):
                        return True
                    while len(trail) > mark:
                        chosen[trail.pop()] = None
                return False

            if not close(e):
                continue
            if extend(0):
                rows = tuple(chosen[x] for x in range(n))
                table = MulTable(n, rows, identity=e)
                if validate_table(table) is not None:
                    continue
                w = _witness_from_table("monoid-digraph", table, conn, "directed")
                if _checked(w, g):
                    return witness_outcome(w, budget)
    except BudgetExceededError:
        return budget_outcome(budget)
    return no_outcome(budget)


# -- census ----------------------------------------------------------------


@dataclass
class CensusEntry:
    graph: object
    key: bytes
    outcome: SearchOutcome


@dataclass
class CensusReport:
    order: int
    mode: str
    entries: List[CensusEntry]

    def counts(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for entry in self.entries:
            out[entry.outcome.status] = out.get(entry.outcome.status, 0) + 1
        return out

    def lines(self):
        for entry in self.entries:
            yield "%s\t%s\t%d" % (
                entry.key.hex(),
                entry.outcome.status,
                entry.outcome.nodes,
            )


def _run_census_instance(args):
    graph, mode, max_nodes, max_seconds = args
    budget = Budget(max_nodes=max_nodes, max_seconds=max_seconds)
    if mode == "monoid-digraph":
        outcome = recognize_monoid_digraph(graph, budget)
    elif mode == "semigroup-digraph":
        outcome = recognize_semigroup_digraph(graph, budget)
    elif mode == "monoid-graph":
        outcome = recognize_monoid_graph(graph, budget)
    else:
        raise ValueError(f"unknown census mode: {mode}")
    return CensusEntry(graph, canonical_form(graph), outcome)


def classify_all(
    order: int,
    mode: str,
    *,
    max_nodes: int = 10_000_000,
    max_seconds: Optional[float] = 60.0,
    workers: Optional[int] = None,
) -> CensusReport:
    """Classify every graph of the given order up to isomorphism.

    Digraph modes run over all outregular digraphs (every outdegree
    equal, including the edgeless case); the undirected mode runs over
    all simple graphs.  Each instance gets a fresh budget so one hard
    instance cannot starve the rest.
    """
    if mode not in CENSUS_MODES:
        raise ValueError(f"unknown census mode: {mode}")
    kind = "simple" if mode == "monoid-graph" else "digraph-outregular"
    graphs = enumerate_graphs(order, kind)
    jobs = [(g, mode, max_nodes, max_seconds) for g in graphs]
    if workers and workers > 1:
        with multiprocessing.Pool(workers) as pool:
            entries = pool.map(_run_census_instance, jobs)
    else:
        entries = [_run_census_instance(job) for job in jobs]
    return CensusReport(order, mode, entries)
