"""Structural recognition for weakly chordal graphs.

Holes (chordless cycles of length >= 5), antiholes, weak chordality,
chordal bipartiteness, two-pair detection, and induced-subgraph scanning
for a forbidden-pattern library. Everything here is a pure function of
immutable graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import Graph

ORACLE_CAP = 14


class OracleCapExceeded(ValueError):
    """Exhaustive oracle invoked above its configured vertex cap."""


@dataclass(frozen=True)
class TwoPair:
    x: int
    y: int

    def as_set(self) -> frozenset[int]:
        return frozenset((self.x, self.y))

    def __iter__(self):
        return iter((self.x, self.y))


# ---------------------------------------------------------------------------
# bitmask BFS helpers
# ---------------------------------------------------------------------------

def _bfs_reach(adj: Sequence[int], start: int, allowed: int) -> int:
    """Positions reachable from `start` staying inside the `allowed` mask."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def _shortest_path(adj: Sequence[int], src: int, dst: int, allowed: int) -> Optional[list[int]]:
    """Shortest src->dst path (positions) within allowed; None if unreachable."""
    if src == dst:
        return [src]
    parent: dict[int, int] = {src: -1}
    frontier = [src]
    seen = 1 << src
    while frontier:
        nxt = []
        for p in frontier:
            m = adj[p] & allowed & ~seen
            while m:
                low = m & -m
                q = low.bit_length() - 1
                parent[q] = p
                if q == dst:
                    path = [q]
                    while path[-1] != src:
                        path.append(parent[path[-1]])
                    return path[::-1]
                seen |= low
                nxt.append(q)
                m ^= low
        frontier = nxt
    return None


def _is_chordless_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = g.has_edge(cycle[i], cycle[j])
            consecutive = (j - i == 1) or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


# ---------------------------------------------------------------------------
# hole detection
# ---------------------------------------------------------------------------

def _hole_through_triple(g: Graph, adj: Sequence[int], pa: int, pb: int, pc: int) -> Optional[list[int]]:
    """A hole whose consecutive vertices include a-b-c (positions), if any.

    Works by finding a shortest a..c path that avoids N[b] and the common
    neighborhood of a and c; any such path is chordless, has >= 3 edges, and
    closes into a chordless cycle of length >= 5 through b.
    """
    n = g.n
    full = (1 << n) - 1
    blocked = adj[pb] | (1 << pb) | (adj[pa] & adj[pc])
    allowed = full & ~blocked | (1 << pa) | (1 << pc)
    path = _shortest_path(adj, pa, pc, allowed)
    if path is None:
        return None
    cycle = [g.id_at(p) for p in path] + [g.id_at(pb)]
    assert _is_chordless_cycle(g, cycle) and len(cycle) >= 5
    return cycle


def _triples_centered(g: Graph, adj: Sequence[int], pb: int):
    nb = adj[pb]
    members = []
    m = nb
    while m:
        low = m & -m
        members.append(low.bit_length() - 1)
        m ^= low
    for i, pa in enumerate(members):
        for pc in members[i + 1 :]:
            if not adj[pa] >> pc & 1:
                yield pa, pc


def find_hole(g: Graph) -> Optional[list[int]]:
    """Some chordless cycle with >= 5 vertices, or None."""
    adj = g.adj_masks()
    for pb in range(g.n):
        for pa, pc in _triples_centered(g, adj, pb):
            cycle = _hole_through_triple(g, adj, pa, pb, pc)
            if cycle is not None:
                return cycle
    return None


def _find_hole_through_vertex(g: Graph, v: int) -> Optional[list[int]]:
    adj = g.adj_masks()
    pb = g.pos(v)
    for pa, pc in _triples_centered(g, adj, pb):
        cycle = _hole_through_triple(g, adj, pa, pb, pc)
        if cycle is not None:
            return cycle
    return None


def _find_hole_through_edge(g: Graph, u: int, v: int) -> Optional[list[int]]:
    adj = g.adj_masks()
    for b, a in ((u, v), (v, u)):
        pb, pa = g.pos(b), g.pos(a)
        m = adj[pb] & ~adj[pa] & ~(1 << pa)
        while m:
            low = m & -m
            pc = low.bit_length() - 1
            cycle = _hole_through_triple(g, adj, pa, pb, pc)
            if cycle is not None:
                return cycle
            m ^= low
    return None


def is_weakly_chordal(g: Graph) -> bool:
    """Hole-free and antihole-free."""
    return find_hole(g) is None and find_hole(g.complement()) is None


def stays_weakly_chordal_after_insert(g: Graph, u: int, v: int) -> bool:
    """Whether G + (u,v) is weakly chordal, given that G already is.

    Any new hole must traverse the inserted edge; any new antihole must pass
    through both endpoints in the complement (the inserted edge was its only
    complement chord), so a hole search through one endpoint suffices.
    """
    h = g.insert_edge(u, v)
    if _find_hole_through_edge(h, u, v) is not None:
        return False
    return _find_hole_through_vertex(h.complement(), u) is None


def stays_weakly_chordal_after_delete(g: Graph, u: int, v: int) -> bool:
    """Whether G - (u,v) is weakly chordal, given that G already is."""
    h = g.delete_edge(u, v)
    if _find_hole_through_vertex(h, u) is not None:
        return False
    return _find_hole_through_edge(h.complement(), u, v) is None


# ---------------------------------------------------------------------------
# bipartite structure
# ---------------------------------------------------------------------------

def bipartition(g: Graph) -> Optional[tuple[set[int], set[int]]]:
    """A 2-coloring of g, or None if an odd cycle exists."""
    side: dict[int, int] = {}
    for root in g.vertices:
        if root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w not in side:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    left = {v for v, s in side.items() if s == 0}
    return left, set(g.vertices) - left


def is_chordal_bipartite(g: Graph, parts: Optional[tuple[Iterable[int], Iterable[int]]] = None) -> bool:
    """Every chordless cycle has length exactly four.

    In a bipartite graph all cycles are even, so this reduces to hole-freeness.
    """
    if parts is not None:
        left, right = set(parts[0]), set(parts[1])
        if left & right or left | right != set(g.vertices):
            raise ValueError("parts do not partition the vertex set")
        for u, v in g.edges():
            if (u in left) == (v in left):
                raise ValueError(f"edge ({u},{v}) does not cross the bipartition")
    elif bipartition(g) is None:
        return False
    return find_hole(g) is None


# ---------------------------------------------------------------------------
# two-pairs
# ---------------------------------------------------------------------------

def is_two_pair(g: Graph, x: int, y: int) -> bool:
    """Non-adjacent pair all of whose chordless connecting paths have 2 edges.

    Equivalent co-connectivity test: x and y fall into different components
    of G minus their common neighborhood.
    """
    if x == y or g.has_edge(x, y):
        return False
    adj = g.adj_masks()
    px, py = g.pos(x), g.pos(y)
    common = adj[px] & adj[py]
    allowed = (1 << g.n) - 1 & ~common
    return not _bfs_reach(adj, px, allowed) >> py & 1


def _candidate_pairs(g: Graph, rng: Optional[random.Random]):
    """Non-adjacent pairs, ordered for the two-pair search.

    Default order: descending common-neighborhood size, then ascending ids;
    large common neighborhoods are the likeliest to disconnect the pair. An
    rng shuffles the order instead (used for order-independence checks).
    """
    adj = g.adj_masks()
    ids = g.vertices
    pairs = []
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if not adj[i] >> j & 1:
                pairs.append((i, j))
    if rng is not None:
        rng.shuffle(pairs)
    else:
        pairs.sort(key=lambda p: (-(adj[p[0]] & adj[p[1]]).bit_count(), ids[p[0]], ids[p[1]]))
    return pairs


def find_two_pair(g: Graph, rng: Optional[random.Random] = None) -> Optional[TwoPair]:
    """Some two-pair of g, or None.

    Deterministic without an rng. On a weakly chordal graph that is not a
    clique this never returns None.
    """
    adj = g.adj_masks()
    full = (1 << g.n) - 1
    for px, py in _candidate_pairs(g, rng):
        common = adj[px] & adj[py]
        if not _bfs_reach(adj, px, full & ~common) >> py & 1:
            return TwoPair(g.id_at(px), g.id_at(py))
    return None


def _chordless_paths_all_two_edges(g: Graph, x: int, y: int) -> bool:
    """Exhaustive check that every chordless x..y path has exactly 2 edges."""
    adj = g.adj_masks()
    px, py = g.pos(x), g.pos(y)

    # DFS over chordless paths: extend only to vertices adjacent to the tail
    # and non-adjacent to every earlier path vertex.
    stack = [([px], 1 << px, 0)]
    while stack:
        path, used, forbidden = stack.pop()
        tail = path[-1]
        m = adj[tail] & ~used & ~forbidden
        while m:
            low = m & -m
            q = low.bit_length() - 1
            if q == py:
                if len(path) != 2:
                    return False
            else:
                stack.append((path + [q], used | low, forbidden | (adj[tail] & ~low)))
            m ^= low
    return True


def enumerate_two_pairs(g: Graph, cap: int = ORACLE_CAP) -> list[TwoPair]:
    """All two-pairs, verified by exhaustive chordless-path enumeration.

    Oracle-only: refuses graphs above the cap.
    """
    if g.n > cap:
        raise OracleCapExceeded(f"{g.n} vertices exceeds oracle cap {cap}")
    out = []
    ids = g.vertices
    for i, x in enumerate(ids):
        for y in ids[i + 1 :]:
            if not g.has_edge(x, y) and _chordless_paths_all_two_edges(g, x, y):
                out.append(TwoPair(x, y))
    return out


# ---------------------------------------------------------------------------
# forbidden-pattern scan
# ---------------------------------------------------------------------------

def _induced_embeddings(host: Graph, pattern: Graph, first_only: bool = False) -> list[dict[int, int]]:
    """Backtracking induced-subgraph isomorphism, pattern into host.

    Most-constrained-first: at every depth the unplaced pattern vertex
    with the fewest remaining host candidates is branched on next, with
    candidate sets maintained incrementally as bitmasks. The degree
    filter is sound for induced embeddings (the image of a pattern
    vertex must have host degree at least its pattern degree).
    """
    pn, hn = pattern.n, host.n
    if pn > hn:
        return []
    padj = pattern.adj_masks()
    hadj = host.adj_masks()
    full = (1 << hn) - 1
    base = []
    for p in range(pn):
        need = padj[p].bit_count()
        mask = 0
        for h in range(hn):
            if hadj[h].bit_count() >= need:
                mask |= 1 << h
        if not mask:
            return []
        base.append(mask)
    results: list[dict[int, int]] = []
    assign: dict[int, int] = {}

    def extend(remaining: int, cands: list[int], used: int) -> bool:
        if not remaining:
            results.append({pattern.id_at(p): host.id_at(h) for p, h in assign.items()})
            return first_only
        p_best, best_mask, best_count = -1, 0, hn + 1
        m = remaining
        while m:
            p = (m & -m).bit_length() - 1
            c = cands[p] & ~used
            cnt = c.bit_count()
            if cnt == 0:
                return False
            if cnt < best_count:
                p_best, best_mask, best_count = p, c, cnt
            m &= m - 1
        p = p_best
        rem = remaining & ~(1 << p)
        m = best_mask
        while m:
            low = m & -m
            h = low.bit_length() - 1
            assign[p] = h
            new_cands = cands
            ok = True
            if rem:
                new_cands = list(cands)
                q_mask = rem
                while q_mask:
                    q = (q_mask & -q_mask).bit_length() - 1
                    if padj[q] >> p & 1:
                        new_cands[q] &= hadj[h]
                    else:
                        new_cands[q] &= ~hadj[h] & ~(1 << h)
                    if not new_cands[q]:
                        ok = False
                        break
                    q_mask &= q_mask - 1
            if ok and extend(rem, new_cands, used | low):
                return True
            m ^= low
        assign.pop(p, None)
        return False

    extend((1 << pn) - 1, base, 0)
    return results


def scan_forbidden(g: Graph, library: Sequence[tuple[str, Graph]]) -> list[tuple[str, frozenset[int]]]:
    """Every induced embedding of every library pattern, deduped by image set.

    An empty result certifies the forbidden-subgraph precondition of the
    subtree-intersection representation theorem.
    """
    hits: list[tuple[str, frozenset[int]]] = []
    seen: set[tuple[str, frozenset[int]]] = set()
    for name, pattern in library:
        for emb in _induced_embeddings(g, pattern):
            key = (name, frozenset(emb.values()))
            if key not in seen:
                seen.add(key)
                hits.append(key)
    return hits


def has_forbidden(g: Graph, library: Sequence[tuple[str, Graph]]) -> Optional[str]:
    """Name of the first embedded pattern, or None (early-exit variant)."""
    for name, pattern in library:
        if _induced_embeddings(g, pattern, first_only=True):
            return name
    return None
