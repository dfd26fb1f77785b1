"""Undirected simple graphs with stable vertex identities.

Vertices are integer ids that survive derived constructions; every vertex
carries a provenance set recording which original vertices were merged into
it (a singleton for ordinary vertices, a union for merged ones). Graphs are
value-like: every mutating operation returns a new ``Graph``.

Internally adjacency is kept both as id -> neighbor-id bitmask-free sets and
as positional bitmasks, so that the recognition algorithms can run BFS on
python ints.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping, Optional, Sequence


class GraphError(ValueError):
    """Rejected graph input: bad index, self-loop, duplicate or missing edge."""


class Graph:
    """Immutable undirected simple graph.

    ``ids`` is the sorted tuple of live vertex ids. Adjacency queries are
    O(1); neighbor iteration is O(deg).
    """

    __slots__ = ("_ids", "_pos", "_adj", "_prov", "_next_id")

    def __init__(
        self,
        ids: Sequence[int],
        edges: Iterable[tuple[int, int]],
        provenance: Optional[Mapping[int, frozenset[int]]] = None,
        next_id: Optional[int] = None,
    ):
        self._ids: tuple[int, ...] = tuple(sorted(ids))
        if len(set(self._ids)) != len(self._ids):
            raise GraphError("duplicate vertex id")
        self._pos = {v: i for i, v in enumerate(self._ids)}
        self._adj = {v: 0 for v in self._ids}
        for u, v in edges:
            self._add_edge_unchecked(u, v)
        if provenance is None:
            self._prov = {v: frozenset((v,)) for v in self._ids}
        else:
            self._prov = {v: frozenset(provenance[v]) for v in self._ids}
        if next_id is None:
            next_id = max(self._ids, default=-1) + 1
        self._next_id = next_id

    def _add_edge_unchecked(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"self-loop at {u}")
        try:
            pu, pv = self._pos[u], self._pos[v]
        except KeyError as exc:
            raise GraphError(f"unknown vertex {exc.args[0]}") from None
        if self._adj[u] >> pv & 1:
            raise GraphError(f"duplicate edge ({u},{v})")
        self._adj[u] |= 1 << pv
        self._adj[v] |= 1 << pu

    # -- basic queries ----------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._ids

    @property
    def n(self) -> int:
        return len(self._ids)

    def __contains__(self, v: int) -> bool:
        return v in self._pos

    def has_edge(self, u: int, v: int) -> bool:
        pv = self._pos.get(v)
        if pv is None or u not in self._pos:
            return False
        return bool(self._adj[u] >> pv & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        mask = self._adj[v]
        ids = self._ids
        out = []
        while mask:
            low = mask & -mask
            out.append(ids[low.bit_length() - 1])
            mask ^= low
        return tuple(out)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, u in enumerate(self._ids):
            mask = self._adj[u] >> (i + 1)
            j = i + 1
            while mask:
                if mask & 1:
                    yield (u, self._ids[j])
                mask >>= 1
                j += 1

    def edge_count(self) -> int:
        return sum(self._adj[v].bit_count() for v in self._ids) // 2

    def provenance(self, v: int) -> frozenset[int]:
        return self._prov[v]

    @property
    def next_id(self) -> int:
        return self._next_id

    # -- positional/bitmask access used by recognition --------------------

    def pos(self, v: int) -> int:
        return self._pos[v]

    def id_at(self, pos: int) -> int:
        return self._ids[pos]

    def adj_mask(self, v: int) -> int:
        """Bitmask of neighbor positions of v."""
        return self._adj[v]

    def adj_masks(self) -> list[int]:
        """Adjacency bitmasks in positional order."""
        return [self._adj[v] for v in self._ids]

    # -- value-like mutation ----------------------------------------------

    def _clone(self, edges, ids=None, prov=None, next_id=None) -> "Graph":
        return Graph(
            self._ids if ids is None else ids,
            edges,
            self._prov if prov is None else prov,
            self._next_id if next_id is None else next_id,
        )

    def insert_edge(self, u: int, v: int) -> "Graph":
        if u not in self._pos or v not in self._pos:
            raise GraphError(f"unknown vertex in ({u},{v})")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u},{v}) already present")
        return self._clone(list(self.edges()) + [(u, v)])

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise GraphError(f"edge ({u},{v}) absent")
        pair = frozenset((u, v))
        return self._clone(e for e in self.edges() if frozenset(e) != pair)

    def contract_pair(self, x: int, y: int, z: Optional[int] = None) -> tuple["Graph", int]:
        """Merge non-adjacent x and y into a fresh vertex z.

        z is adjacent to N(x) | N(y) and its provenance is the union of the
        parents' provenances. Two-pair validity is *not* checked here; the
        coloring layer owns that contract.
        """
        if self.has_edge(x, y):
            raise GraphError(f"cannot contract adjacent pair ({x},{y})")
        if x not in self._pos or y not in self._pos:
            raise GraphError(f"unknown vertex in ({x},{y})")
        if z is None:
            z = self._next_id
        if z in self._pos:
            raise GraphError(f"contracted id {z} already live")
        merged = set(self.neighbors(x)) | set(self.neighbors(y))
        merged.discard(x)
        merged.discard(y)
        ids = [v for v in self._ids if v not in (x, y)] + [z]
        edges = [e for e in self.edges() if x not in e and y not in e]
        edges += [(z, w) for w in sorted(merged)]
        prov = {v: self._prov[v] for v in self._ids if v not in (x, y)}
        prov[z] = self._prov[x] | self._prov[y]
        return self._clone(edges, ids=ids, prov=prov, next_id=max(self._next_id, z + 1)), z

    # -- derived constructions ---------------------------------------------

    def complement(self) -> "Graph":
        edges = [
            (u, v)
            for i, u in enumerate(self._ids)
            for v in self._ids[i + 1 :]
            if not self.has_edge(u, v)
        ]
        return self._clone(edges)

    def square(self) -> "Graph":
        full = 0
        edges = []
        for i, u in enumerate(self._ids):
            mu = self._adj[u]
            for j in range(i + 1, len(self._ids)):
                v = self._ids[j]
                if mu >> j & 1 or mu & self._adj[v]:
                    edges.append((u, v))
            full |= 1 << i
        return self._clone(edges)

    def line_graph(self) -> "Graph":
        """One vertex per edge; adjacency iff the edges share an endpoint.

        Output vertex ids are 0..m-1 in sorted-edge order; provenance of each
        output vertex is the incident endpoint pair of the source edge.
        """
        es = sorted(self.edges())
        ids = list(range(len(es)))
        prov = {i: frozenset(es[i]) for i in ids}
        edges = [
            (i, j)
            for i in ids
            for j in ids[i + 1 :]
            if set(es[i]) & set(es[j])
        ]
        return Graph(ids, edges, prov)

    def induced_subgraph(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        unknown = keep - set(self._ids)
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        ids = [v for v in self._ids if v in keep]
        edges = [(u, v) for u, v in self.edges() if u in keep and v in keep]
        prov = {v: self._prov[v] for v in ids}
        return self._clone(edges, ids=ids, prov=prov)

    # -- equality / serialization ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._ids == other._ids and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._ids, tuple(self._adj[v] for v in self._ids)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def to_dict(self, labels: Optional[Mapping[int, str]] = None) -> dict:
        """Interchange form: {"n", "edges", "labels"?}, edges sorted, i < j.

        Only valid for graphs whose ids are exactly 0..n-1.
        """
        if self._ids != tuple(range(self.n)):
            raise GraphError("interchange form requires contiguous 0-based ids")
        d = {"n": self.n, "edges": [list(e) for e in sorted(self.edges())]}
        if labels:
            d["labels"] = {str(k): labels[k] for k in sorted(labels)}
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(**kw), sort_keys=True)


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on vertices 0..n-1 with the given edge list."""
    edges = list(edges)
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"index out of range in edge ({u},{v})")
    return Graph(range(n), edges)


def from_dict(d: Mapping) -> Graph:
    return make_graph(int(d["n"]), [tuple(e) for e in d["edges"]])


def from_json(text: str) -> Graph:
    return from_dict(json.loads(text))


def insert_edge(g: Graph, u: int, v: int) -> Graph:
    return g.insert_edge(u, v)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    return g.delete_edge(u, v)


def line_graph(g: Graph) -> Graph:
    return g.line_graph()


def square(g: Graph) -> Graph:
    return g.square()


def complement(g: Graph) -> Graph:
    return g.complement()


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    return g.induced_subgraph(keep)
