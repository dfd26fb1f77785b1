"""Brute-force verification oracles, independent of the production paths.

Everything here is exponential and capped; these functions exist to
cross-check the contraction coloring and the recognition routines, never to
serve production traffic.
"""

from __future__ import annotations

from itertools import combinations

from .graph import Graph
from .recognition import ORACLE_CAP, OracleCapExceeded


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise OracleCapExceeded(f"{g.n} vertices exceeds oracle cap {cap}")


def oracle_max_clique(g: Graph, cap: int = ORACLE_CAP) -> frozenset[int]:
    """A maximum clique by exhaustive search; lexicographically smallest."""
    _check_cap(g, cap)
    adj = g.adj_masks()
    n = g.n
    best: tuple[int, ...] = ()
    # enumerate maximal cliques via simple branch and bound on positions
    def grow(clique: tuple[int, ...], cand: int) -> None:
        nonlocal best
        if len(clique) + cand.bit_count() <= len(best):
            return
        if not cand:
            if len(clique) > len(best) or (len(clique) == len(best) and clique < best):
                best = clique
            return
        low = cand & -cand
        p = low.bit_length() - 1
        grow(clique + (p,), cand & adj[p])
        grow(clique, cand ^ low)

    grow((), (1 << n) - 1)
    return frozenset(g.id_at(p) for p in best)


def _k_colorable(adj: list[int], n: int, k: int) -> bool:
    # backtracking, vertices in descending-degree order, symmetry broken by
    # never opening color c+1 before colors 1..c are in use
    order = sorted(range(n), key=lambda p: -adj[p].bit_count())
    colors = [0] * n

    def assign(i: int, used: int) -> bool:
        if i == n:
            return True
        p = order[i]
        limit = min(used + 1, k)
        for c in range(1, limit + 1):
            if all(colors[q] != c for q in range(n) if adj[p] >> q & 1):
                colors[p] = c
                if assign(i + 1, max(used, c)):
                    return True
                colors[p] = 0
        return False

    return assign(0, 0)


def oracle_chromatic(g: Graph, cap: int = ORACLE_CAP) -> int:
    """Exact chromatic number by backtracking search."""
    _check_cap(g, cap)
    if g.n == 0:
        return 0
    adj = g.adj_masks()
    lower = len(oracle_max_clique(g, cap))
    for k in range(max(lower, 1), g.n + 1):
        if _k_colorable(adj, g.n, k):
            return k
    return g.n


def enumerate_chordless_cycles(g: Graph, min_len: int = 3, cap: int = 10) -> list[frozenset[int]]:
    """Vertex sets of all chordless cycles of length >= min_len (subset scan)."""
    _check_cap(g, cap)
    out = []
    ids = g.vertices
    for k in range(min_len, g.n + 1):
        for subset in combinations(ids, k):
            sub = g.induced_subgraph(subset)
            if sub.edge_count() == k and all(sub.degree(v) == 2 for v in subset):
                # connected 2-regular graph on k vertices = a single cycle
                seen = {subset[0]}
                stack = [subset[0]]
                while stack:
                    v = stack.pop()
                    for w in sub.neighbors(v):
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                if len(seen) == k:
                    out.append(frozenset(subset))
    return out


def brute_is_weakly_chordal(g: Graph, cap: int = 10) -> bool:
    """Hole/antihole freeness by exhaustive chordless-cycle enumeration."""
    _check_cap(g, cap)
    if enumerate_chordless_cycles(g, min_len=5, cap=cap):
        return False
    return not enumerate_chordless_cycles(g.complement(), min_len=5, cap=cap)
