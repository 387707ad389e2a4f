"""Graph carriers and the structural algorithms the other modules share.

Vertices are dense integers ``0..n-1`` everywhere.  Three carriers appear:
directed graphs (loops allowed, no parallel arcs), simple undirected graphs,
and colour-labelled multi-digraphs whose colours are semigroup element
indices.  All carriers are immutable after construction.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

__all__ = [
    "Digraph",
    "SimpleGraph",
    "ColoredMultiDigraph",
    "ComponentDecomposition",
    "GraphFormatError",
    "parse_graph",
    "format_graph",
    "weak_components",
    "is_strongly_connected",
    "strong_connectivity",
    "vertex_connectivity",
    "canonical_form",
    "enumerate_graphs",
]


class GraphFormatError(ValueError):
    """Malformed graph text; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Digraph:
    """Directed graph on ``0..order-1``: loops allowed, no parallel arcs."""

    order: int
    arcs: frozenset

    def __init__(self, order: int, arcs=()):
        if order < 1:
            raise ValueError("order must be >= 1")
        norm = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in norm:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"arc ({u},{v}) out of range for order {order}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "arcs", norm)

    def out_neighbors(self) -> list:
        out = [set() for _ in range(self.order)]
        for u, v in self.arcs:
            out[u].add(v)
        return out

    def in_neighbors(self) -> list:
        inn = [set() for _ in range(self.order)]
        for u, v in self.arcs:
            inn[v].add(u)
        return inn

    def out_degrees(self) -> list:
        deg = [0] * self.order
        for u, _ in self.arcs:
            deg[u] += 1
        return deg

    def is_k_outregular(self, k: int) -> bool:
        return all(d == k for d in self.out_degrees())

    def successor_map(self) -> list:
        """For a 1-outregular digraph, the map vertex -> unique out-neighbor."""
        succ = [-1] * self.order
        for u, v in self.arcs:
            if succ[u] != -1:
                raise ValueError("not 1-outregular: repeated out-arc")
            succ[u] = v
        if any(s == -1 for s in succ):
            raise ValueError("not 1-outregular: missing out-arc")
        return succ


@dataclass(frozen=True)
class SimpleGraph:
    """Simple undirected graph: no loops, no parallel edges."""

    order: int
    edges: frozenset

    def __init__(self, order: int, edges=()):
        if order < 1:
            raise ValueError("order must be >= 1")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at {u} not allowed in a simple graph")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u},{v}) out of range for order {order}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "edges", frozenset(norm))

    def neighbors(self) -> list:
        adj = [set() for _ in range(self.order)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list:
        deg = [0] * self.order
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class ColoredMultiDigraph:
    """Colour-labelled multi-digraph; per colour the arcs form a total map."""

    order: int
    arcs: tuple

    def __init__(self, order: int, arcs=()):
        if order < 1:
            raise ValueError("order must be >= 1")
        norm = tuple(sorted((int(s), int(t), int(c)) for s, t, c in arcs))
        seen = {}
        for s, t, c in norm:
            if not (0 <= s < order and 0 <= t < order):
                raise ValueError(f"arc ({s},{t}) out of range")
            if (s, c) in seen:
                raise ValueError(f"colour {c} leaves vertex {s} twice")
            seen[(s, c)] = t
        colors = {c for _, _, c in norm}
        for c in colors:
            sources = {s for s, _, cc in norm if cc == c}
            if len(sources) != order:
                raise ValueError(f"colour {c} is not total on the vertex set")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "arcs", norm)

    def colors(self) -> tuple:
        return tuple(sorted({c for _, _, c in self.arcs}))

    def to_digraph(self) -> Digraph:
        """Forget colours and multiplicities."""
        return Digraph(self.order, {(s, t) for s, t, _ in self.arcs})


Graph = Union[Digraph, SimpleGraph]


# ---------------------------------------------------------------------------
# text format: first line "n directed|undirected", then one "u v" per line

def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    header = None
    header_no = 0
    rows = []
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line
            header_no = no
        else:
            rows.append((no, line))
    if header is None:
        raise GraphFormatError(1, "empty input")
    parts = header.split()
    if len(parts) != 2 or parts[1] not in ("directed", "undirected"):
        raise GraphFormatError(header_no, "expected header 'n directed|undirected'")
    try:
        n = int(parts[0])
    except ValueError:
        raise GraphFormatError(header_no, f"bad order {parts[0]!r}") from None
    if n < 1:
        raise GraphFormatError(header_no, "order must be >= 1")
    pairs = []
    for no, line in rows:
        toks = line.split()
        if len(toks) != 2:
            raise GraphFormatError(no, "expected 'u v'")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphFormatError(no, f"bad vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(no, f"vertex out of range in {line!r}")
        if parts[1] == "undirected" and u == v:
            raise GraphFormatError(no, "loop in undirected graph")
        pairs.append((u, v))
    if parts[1] == "directed":
        return Digraph(n, pairs)
    return SimpleGraph(n, pairs)


def format_graph(g: Graph) -> str:
    if isinstance(g, Digraph):
        body = sorted(g.arcs)
        head = f"{g.order} directed"
    else:
        body = sorted(g.edges)
        head = f"{g.order} undirected"
    return "\n".join([head] + [f"{u} {v}" for u, v in body]) + "\n"


# ---------------------------------------------------------------------------
# components and connectivity

@dataclass(frozen=True)
class ComponentDecomposition:
    """Weak components; ids are dense and ordered by smallest member vertex."""

    component: tuple
    count: int

    def members(self, i: int) -> list:
        return [v for v, c in enumerate(self.component) if c == i]


def weak_components(g: Graph) -> ComponentDecomposition:
    n = g.order
    adj = [set() for _ in range(n)]
    pairs = g.arcs if isinstance(g, Digraph) else g.edges
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    comp = [-1] * n
    count = 0
    for start in range(n):
        if comp[start] != -1:
            continue
        comp[start] = count
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if comp[w] == -1:
                    comp[w] = count
                    queue.append(w)
        count += 1
    return ComponentDecomposition(tuple(comp), count)


def _reach(n: int, adj: list, start: int) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def is_strongly_connected(g: Digraph) -> bool:
    n = g.order
    if n == 1:
        return True
    out = [list(s) for s in g.out_neighbors()]
    inn = [list(s) for s in g.in_neighbors()]
    return len(_reach(n, out, 0)) == n and len(_reach(n, inn, 0)) == n


class _MaxFlow:
    """Dinic max-flow on a small integer-capacity network."""

    def __init__(self, n: int):
        self.n = n
        self.graph = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.graph[u].append([v, cap, len(self.graph[v])])
        self.graph[v].append([u, 0, len(self.graph[u]) - 1])

    def _bfs(self, s: int, t: int) -> bool:
        self.level = [-1] * self.n
        self.level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.graph[u]:
                if e[1] > 0 and self.level[e[0]] == -1:
                    self.level[e[0]] = self.level[u] + 1
                    queue.append(e[0])
        return self.level[t] != -1

    def _dfs(self, u: int, t: int, f: int) -> int:
        if u == t:
            return f
        while self.it[u] < len(self.graph[u]):
            e = self.graph[u][self.it[u]]
            if e[1] > 0 and self.level[e[0]] == self.level[u] + 1:
                d = self._dfs(e[0], t, min(f, e[1]))
                if d > 0:
                    e[1] -= d
                    self.graph[e[0]][e[2]][1] += d
                    return d
            self.it[u] += 1
        return 0

    def max_flow(self, s: int, t: int, limit: int = 1 << 30) -> int:
        flow = 0
        while flow < limit and self._bfs(s, t):
            self.it = [0] * self.n
            while flow < limit:
                f = self._dfs(s, t, limit - flow)
                if f == 0:
                    break
                flow += f
        return flow

    def source_side(self, s: int) -> set:
        """Vertices reachable from s in the residual network."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.graph[u]:
                if e[1] > 0 and e[0] not in seen:
                    seen.add(e[0])
                    queue.append(e[0])
        return seen


def _split_flow(n: int, arcs, u: int, v: int) -> int:
    """Max number of internally vertex-disjoint directed u->v paths."""
    big = n + 1
    mf = _MaxFlow(2 * n)
    for w in range(n):
        if w != u and w != v:
            mf.add_edge(2 * w, 2 * w + 1, 1)
    for a, b in arcs:
        mf.add_edge(2 * a + 1, 2 * b, big)
    return mf.max_flow(2 * u + 1, 2 * v, limit=n)


def strong_connectivity(g: Digraph) -> int:
    """Largest kappa with every directed vertex cut of size >= kappa and
    kappa + 1 <= order.  Computed by min vertex cut over non-arc pairs."""
    n = g.order
    if n < 2:
        raise ValueError("strong connectivity needs order >= 2")
    if not is_strongly_connected(g):
        raise ValueError("digraph is not strongly connected")
    best = n - 1
    for u in range(n):
        for v in range(n):
            if u == v or (u, v) in g.arcs:
                continue
            best = min(best, _split_flow(n, g.arcs, u, v))
            if best == 0:
                return 0
    return best


def vertex_connectivity(g: SimpleGraph) -> int:
    n = g.order
    if n < 2:
        raise ValueError("vertex connectivity needs order >= 2")
    if len(g.edges) == n * (n - 1) // 2:
        return n - 1
    if weak_components(g).count > 1:
        return 0
    arcs = [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]
    arcset = set(arcs)
    best = n - 1
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) in arcset:
                continue
            best = min(best, _split_flow(n, arcs, u, v))
            if best == 0:
                return 0
    return best


# ---------------------------------------------------------------------------
# canonical forms by lexicographic minimisation of the adjacency matrix

_PERM_CACHE: dict = {}
_CANON_CAP = 10
_PERM_CHUNK = 40320


def _perm_array(n: int) -> np.ndarray:
    arr = _PERM_CACHE.get(n)
    if arr is None:
        arr = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
        _PERM_CACHE[n] = arr
    return arr


def _adjacency(g: Graph) -> np.ndarray:
    m = np.zeros((g.order, g.order), dtype=bool)
    if isinstance(g, Digraph):
        for u, v in g.arcs:
            m[u, v] = True
    else:
        for u, v in g.edges:
            m[u, v] = True
            m[v, u] = True
    return m


def _packed(m: np.ndarray) -> bytes:
    return np.packbits(m.reshape(1, -1), axis=1).tobytes()


def _min_packed(m: np.ndarray) -> bytes:
    n = m.shape[0]
    if n == 1:
        return _packed(m)
    perms = _perm_array(n)
    best = None
    for lo in range(0, len(perms), _PERM_CHUNK):
        chunk = perms[lo:lo + _PERM_CHUNK]
        permuted = m[chunk[:, :, None], chunk[:, None, :]]
        packed = np.packbits(permuted.reshape(len(chunk), n * n), axis=1)
        order = np.lexsort(packed.T[::-1])
        cand = packed[order[0]].tobytes()
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(g: Graph, cap: int = _CANON_CAP) -> bytes:
    """Canonical byte string: equal iff the graphs are isomorphic.

    Lexicographic minimum of the packed adjacency matrix over all vertex
    permutations; the order and carrier kind are prefixed so digraphs and
    simple graphs never collide.
    """
    if g.order > cap:
        raise ValueError(f"canonical_form capped at order {cap}")
    kind = b"D" if isinstance(g, Digraph) else b"U"
    return bytes([g.order]) + kind + _min_packed(_adjacency(g))


def _is_self_canonical(g: Graph) -> bool:
    m = _adjacency(g)
    return _packed(m) == _min_packed(m)


def enumerate_graphs(n: int, mode: str) -> Iterator[Graph]:
    """Stream one canonical representative per isomorphism class.

    ``simple``: all simple graphs, order <= 7 (order 7 takes a long while).
    ``digraph-minoutdeg1``: digraphs with minimum outdegree >= 1, order <= 4.
    ``digraph-all``: all digraphs including sinks and loops, order <= 4.
    ``digraph-outregular``: digraphs with constant outdegree (any value
    from 0 to n), order <= 4.
    """
    if mode == "simple":
        if n > 7:
            raise ValueError("simple enumeration capped at order 7")
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = SimpleGraph(n, edges)
            if _is_self_canonical(g):
                yield g
    elif mode in ("digraph-minoutdeg1", "digraph-all"):
        if n > 4:
            raise ValueError("digraph enumeration capped at order 4")
        targets = list(range(n))
        lo = 1 if mode == "digraph-minoutdeg1" else 0
        sets = [c for r in range(lo, n + 1)
                for c in itertools.combinations(targets, r)]
        for choice in itertools.product(sets, repeat=n):
            arcs = [(u, v) for u in range(n) for v in choice[u]]
            g = Digraph(n, arcs)
            if _is_self_canonical(g):
                yield g
    elif mode == "digraph-outregular":
        if n > 4:
            raise ValueError("digraph enumeration capped at order 4")
        for k in range(n + 1):
            ksets = list(itertools.combinations(range(n), k))
            for choice in itertools.product(ksets, repeat=n):
                arcs = [(u, v) for u in range(n) for v in choice[u]]
                g = Digraph(n, arcs)
                if _is_self_canonical(g):
                    yield g
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")
