"""Density, independence and spectral invariants used by the certificates.

The sparsity pair (arboricity, pseudoarboricity) bounds connection-set
sizes; beta(G, k) measures independence after deleting the images of k
incidence maps; the spectral profile feeds the expander-mixing style upper
and lower bounds whose gap certifies that no monoid representation joining
G to a long cycle can exist.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .graphs import Digraph, SimpleGraph, _MaxFlow, weak_components

__all__ = [
    "arboricity",
    "pseudoarboricity",
    "orientation_with_outdegree",
    "OrientationInfeasible",
    "independence_number",
    "beta",
    "SpectralProfile",
    "spectrum",
    "mixing_check",
    "beta_upper_bound",
    "beta_lower_bound",
    "connectivity_bound",
    "NonmonoidCertificate",
    "nonmonoid_certificate",
]

_EIG_TOL = 1e-8
_BETA_BUDGET = 10_000_000
_SUBSET_CAP = 20
_MIS_CAP = 40


def _subset_density(g: SimpleGraph, shift: int) -> int:
    """max over subsets S of ceil(|E(G[S])| / (|S| - shift)); exhaustive."""
    n = g.order
    if n > _SUBSET_CAP:
        raise ValueError(f"exhaustive subset scan capped at order {_SUBSET_CAP}")
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    best = 0
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if size <= shift:
            continue
        edges = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            edges += (adj[v] & m).bit_count()
        best = max(best, -(-edges // (size - shift)))
    return best


def arboricity(g: SimpleGraph) -> int:
    """Nash-Williams density max ceil(|E(G[S])| / (|S|-1)), |S| >= 2."""
    return _subset_density(g, 1)


class OrientationInfeasible(ValueError):
    """No orientation with the requested max outdegree; carries a violating
    vertex subset S with |E(G[S])| > k * |S|."""

    def __init__(self, k: int, subset: tuple, edge_count: int):
        super().__init__(
            f"subset of {len(subset)} vertices spans {edge_count} > "
            f"{k}*{len(subset)} edges")
        self.k = k
        self.subset = subset
        self.edge_count = edge_count


def _orient_flow(g: SimpleGraph, k: int):
    """Flow network: source -> edge nodes -> endpoint nodes -> sink."""
    n = g.order
    edges = sorted(g.edges)
    m = len(edges)
    total = 2 + m + n
    src, snk = 0, 1
    mf = _MaxFlow(total)
    for i, (u, v) in enumerate(edges):
        mf.add_edge(src, 2 + i, 1)
        mf.add_edge(2 + i, 2 + m + u, 1)
        mf.add_edge(2 + i, 2 + m + v, 1)
    for v in range(n):
        mf.add_edge(2 + m + v, snk, k)
    flow = mf.max_flow(src, snk)
    return flow, mf, edges


def orientation_with_outdegree(g: SimpleGraph, k: int) -> Digraph:
    """Orient each edge so every outdegree is <= k, or raise
    OrientationInfeasible with a density certificate."""
    n = g.order
    flow, mf, edges = _orient_flow(g, k)
    m = len(edges)
    if flow < m:
        side = mf.source_side(0)
        subset = tuple(v for v in range(n) if 2 + m + v in side)
        inside = set(subset)
        count = sum(1 for u, v in edges if u in inside and v in inside)
        raise OrientationInfeasible(k, subset, count)
    arcs = set()
    for i, (u, v) in enumerate(edges):
        # the endpoint that received this edge's unit becomes the tail
        tail = None
        for e in mf.graph[2 + i]:
            if e[0] >= 2 + m and e[1] == 0:
                tail = e[0] - 2 - m
                break
        head = v if tail == u else u
        arcs.add((tail, head))
    return Digraph(n, arcs)


def pseudoarboricity(g: SimpleGraph) -> int:
    """Smallest max outdegree over all orientations (0 for edgeless)."""
    if not g.edges:
        return 0
    k = max(1, -(-len(g.edges) // g.order))
    while True:
        try:
            orientation_with_outdegree(g, k)
            return k
        except OrientationInfeasible:
            k += 1


def pseudoarboricity_by_subsets(g: SimpleGraph) -> int:
    """Independent density formula max ceil(|E(G[S])| / |S|); cross-check."""
    return _subset_density(g, 0)


def independence_number(g: SimpleGraph) -> int:
    """Exact maximum independent set size by branch and bound."""
    n = g.order
    if n > _MIS_CAP:
        raise ValueError(f"independence_number capped at order {_MIS_CAP}")
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    best = 0

    def bnb(mask: int, size: int) -> None:
        nonlocal best
        while mask:
            if size + mask.bit_count() <= best:
                return
            # pick a highest-degree vertex within mask
            v, vdeg = -1, -1
            m = mask
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                d = (adj[w] & mask).bit_count()
                if d > vdeg:
                    v, vdeg = w, d
            if vdeg <= 1:
                # remaining graph is a matching plus isolated vertices
                total = size
                mm = mask
                while mm:
                    w = (mm & -mm).bit_length() - 1
                    mm &= mm - 1
                    mm &= ~adj[w]
                    total += 1
                best = max(best, total)
                return
            bnb(mask & ~(1 << v) & ~adj[v], size + 1)
            mask &= ~(1 << v)
        best = max(best, size)

    bnb((1 << n) - 1, 0)
    return best


def _mis_masked(adj: list, mask: int, best_so_far: int = 0) -> int:
    """Max independent set within mask; small helper reused by beta."""
    best = best_so_far

    def bnb(m: int, size: int) -> None:
        nonlocal best
        while m:
            if size + m.bit_count() <= best:
                return
            v, vdeg = -1, -1
            mm = m
            while mm:
                w = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                d = (adj[w] & m).bit_count()
                if d > vdeg:
                    v, vdeg = w, d
            if vdeg <= 1:
                total = size
                mm = m
                while mm:
                    w = (mm & -mm).bit_length() - 1
                    mm &= mm - 1
                    mm &= ~adj[w]
                    total += 1
                best = max(best, total)
                return
            bnb(m & ~(1 << v) & ~adj[v], size + 1)
            m &= ~(1 << v)
        best = max(best, size)

    bnb(mask, 0)
    return best


def beta(g: SimpleGraph, k: int, budget: int = _BETA_BUDGET) -> int:
    """max over k incidence maps f_i: V -> E (v in f_i(v)) of the
    independence number of (V, E minus the union of the images).

    Brute force over all k-multisets of incidence maps; raises ValueError
    when the enumeration would exceed ``budget`` tuples.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    n = g.order
    if any(d == 0 for d in g.degrees()) and k > 0:
        raise ValueError("beta with k >= 1 needs minimum degree >= 1")
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    full = (1 << n) - 1
    if k == 0:
        return independence_number(g)
    incident = [sorted(e for e in g.edges if v in e) for v in range(n)]
    per_map = 1
    for v in range(n):
        per_map *= len(incident[v])
    total = math.comb(per_map + k - 1, k)
    if total > budget:
        raise ValueError(f"beta enumeration needs {total} tuples > budget {budget}")

    maps = []          # each map as a frozenset of chosen edges
    for choice in itertools.product(*incident):
        maps.append(frozenset(choice))
    cache: dict = {}
    best = 0
    for combo in itertools.combinations_with_replacement(range(len(maps)), k):
        removed = frozenset().union(*(maps[i] for i in combo))
        val = cache.get(removed)
        if val is None:
            kept = [0] * n
            for u, v in g.edges:
                if (u, v) not in removed:
                    kept[u] |= 1 << v
                    kept[v] |= 1 << u
            val = _mis_masked(kept, full, best_so_far=0)
            cache[removed] = val
        best = max(best, val)
    return best


# ---------------------------------------------------------------------------
# spectra and the (n, d, lambda) bounds

@dataclass(frozen=True)
class SpectralProfile:
    """Adjacency spectrum with the (n, d, lambda) reading when regular.

    ``lam`` is the largest absolute eigenvalue after discarding one copy of
    d and one copy of -d (so disconnected or bipartite regular graphs are
    classified soundly); None when the graph is not regular.
    """

    order: int
    eigenvalues: tuple
    degree: Optional[int] = None
    lam: Optional[float] = None


def spectrum(g: SimpleGraph) -> SpectralProfile:
    a = np.zeros((g.order, g.order))
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1.0
    eig = sorted(np.linalg.eigvalsh(a), reverse=True)
    degs = g.degrees()
    d = degs[0] if degs and all(x == degs[0] for x in degs) else None
    lam = None
    if d is not None:
        rest = list(eig)
        for target in (float(d), float(-d)):
            for i, x in enumerate(rest):
                if abs(x - target) <= _EIG_TOL:
                    rest.pop(i)
                    break
        lam = max((abs(x) for x in rest), default=0.0)
    return SpectralProfile(g.order, tuple(eig), d, lam)


def synthetic_profile(order: int, degree: int, lam: float) -> SpectralProfile:
    """Profile with prescribed (n, d, lambda); eigenvalues left empty.
    Used to evaluate the bound arithmetic away from a concrete graph."""
    return SpectralProfile(order, (), degree, lam)


def mixing_check(g: SimpleGraph, s, t) -> Tuple[float, float]:
    """Expander mixing inequality sides for vertex sets S, T:
    |e(S,T) - d|S||T|/n| and lambda * sqrt(|S||T|(1-|S|/n)(1-|T|/n)).
    e(S, T) counts ordered pairs, so edges inside S and T count twice."""
    p = spectrum(g)
    if p.degree is None:
        raise ValueError("mixing_check needs a regular graph")
    sset, tset = set(s), set(t)
    n = g.order
    est = sum(1 for u in sset for v in tset
              if (min(u, v), max(u, v)) in g.edges)
    lhs = abs(est - p.degree * len(sset) * len(tset) / n)
    rhs = p.lam * math.sqrt(
        len(sset) * len(tset) * (1 - len(sset) / n) * (1 - len(tset) / n))
    return lhs, rhs


def _lam_rational(lam: float) -> Fraction:
    """Round lambda up at 1e-8 granularity so bounds stay conservative."""
    return Fraction(math.ceil(lam * 10**8), 10**8)


def beta_upper_bound(p: SpectralProfile, k: int) -> Fraction:
    """(n/d)(lambda + 2k); requires a regular profile."""
    if p.degree is None or p.lam is None:
        raise ValueError("upper bound needs a regular profile")
    if p.degree == 0:
        raise ValueError("upper bound needs degree >= 1")
    return Fraction(p.order, p.degree) * (_lam_rational(p.lam) + 2 * k)


def beta_lower_bound(order: int, min_degree: int, max_degree: int,
                     k: int) -> Fraction:
    """(n/(max_degree-1)) * (min_degree/2 - k - 1); hypotheses include a
    triangle-free join target, checked by the certificate builder."""
    if max_degree < 2:
        raise ValueError("lower bound needs max degree >= 2")
    return (Fraction(order, max_degree - 1)
            * (Fraction(min_degree, 2) - k - 1))


def connectivity_bound(p: SpectralProfile) -> int:
    """Largest k with k < (d - lambda)^2 / d + 1 (and k >= 0)."""
    if p.degree is None or p.lam is None:
        raise ValueError("connectivity bound needs a regular profile")
    if p.degree == 0:
        return 0
    lam = _lam_rational(p.lam)
    bound = (p.degree - lam) ** 2 / Fraction(p.degree) + 1
    k = math.ceil(bound) - 1     # largest integer strictly below bound
    return max(k, 0)


def _has_triangle(g: SimpleGraph) -> bool:
    adj = [0] * g.order
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return any(adj[u] & adj[v] for u, v in g.edges)


@dataclass(frozen=True)
class NonmonoidCertificate:
    """Outcome of confronting the beta bounds for a joined representation.

    ``certified`` holds only when every hypothesis holds and the lower
    bound strictly exceeds the upper bound, which rules out any monoid
    whose underlying Cayley graph is g and a cycle of length ell joined by
    k edges.
    """

    certified: bool
    hypotheses: dict
    lower: Optional[Fraction]
    upper: Optional[Fraction]


def _gap_certificate(p: SpectralProfile, k: int, ell: int,
                     hypotheses: dict) -> NonmonoidCertificate:
    hypotheses = dict(hypotheses)
    hypotheses["k-nonnegative"] = k >= 0
    hypotheses["degree-at-least-2"] = (p.degree or 0) >= 2
    hypotheses["cycle-long-enough"] = (
        p.degree is not None and ell > 2 * p.degree + 2 * k + 1)
    lower = upper = None
    if p.degree is not None and p.degree >= 2 and p.lam is not None:
        lower = beta_lower_bound(p.order, p.degree, p.degree, k)
        upper = beta_upper_bound(p, k)
    certified = (all(hypotheses.values()) and lower is not None
                 and lower > upper)
    return NonmonoidCertificate(certified, hypotheses, lower, upper)


def nonmonoid_certificate(g: SimpleGraph, k: int, ell: int) -> NonmonoidCertificate:
    """Certify that g joined to an ell-cycle by k edges is never an
    underlying monoid Cayley graph, via the beta bound gap."""
    p = spectrum(g)
    hypotheses = {
        "regular": p.degree is not None,
        "triangle-free": not _has_triangle(g),
    }
    return _gap_certificate(p, k, ell, hypotheses)


def profile_certificate(p: SpectralProfile, k: int, ell: int,
                        triangle_free: bool = True) -> NonmonoidCertificate:
    """Bound-gap arithmetic on a synthetic (n, d, lambda) profile."""
    hypotheses = {
        "regular": p.degree is not None,
        "triangle-free": triangle_free,
    }
    return _gap_certificate(p, k, ell, hypotheses)
