"""Minimum coloring of weakly chordal graphs by two-pair contraction.

The static procedure repeatedly contracts a two-pair until the graph is a
clique, records the contraction sequence (the solution order), and then
lifts the trivial clique coloring and clique back through the sequence.
The recorded order is replayable, which is what the dynamic update layer
relies on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import Graph
from .recognition import TwoPair, find_two_pair, is_two_pair, is_weakly_chordal


class NotWeaklyChordalError(ValueError):
    """No two-pair exists on a non-complete graph (Hayward property violated)."""


class InvalidContractionError(ValueError):
    """Attempted contraction of a pair that is not a two-pair."""


@dataclass(frozen=True)
class ContractionRecord:
    x: int
    y: int
    z: int

    def as_list(self) -> list[int]:
        return [self.x, self.y, self.z]


@dataclass
class SolutionOrder:
    records: list[ContractionRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def to_lists(self) -> list[list[int]]:
        return [r.as_list() for r in self.records]

    @staticmethod
    def from_lists(rows: Sequence[Sequence[int]]) -> "SolutionOrder":
        return SolutionOrder([ContractionRecord(*map(int, r)) for r in rows])


@dataclass
class ColoringState:
    """A graph together with its maintained optimal-coloring artifacts."""

    graph: Graph
    coloring: dict[int, int]
    color_count: int
    clique: frozenset[int]
    order: SolutionOrder

    def to_dict(self) -> dict:
        return {
            "colors": {str(v): c for v, c in sorted(self.coloring.items())},
            "color_count": self.color_count,
            "clique": sorted(self.clique),
            "order": self.order.to_lists(),
        }


def contract(g: Graph, pair: TwoPair, z: Optional[int] = None, check: bool = True) -> tuple[Graph, int]:
    """Merge a two-pair into a fresh vertex adjacent to the union neighborhood."""
    if check and not is_two_pair(g, pair.x, pair.y):
        raise InvalidContractionError(f"({pair.x},{pair.y}) is not a two-pair")
    return g.contract_pair(pair.x, pair.y, z)


def _is_complete(g: Graph) -> bool:
    n = g.n
    return all(g.degree(v) == n - 1 for v in g.vertices)


def run_contractions(
    g: Graph,
    rng: Optional[random.Random] = None,
    verify: bool = False,
) -> tuple[list[ContractionRecord], list[Graph]]:
    """Contract two-pairs until none remains.

    Returns the records and the graph chain (chain[i] is the graph before
    records[i]; the last entry is the final clique). Raises if the final
    graph is not complete, or, in verify mode, if weak chordality breaks.
    """
    records: list[ContractionRecord] = []
    chain = [g]
    cur = g
    while True:
        pair = find_two_pair(cur, rng)
        if pair is None:
            break
        cur, z = contract(cur, pair, check=False)
        if verify and not is_weakly_chordal(cur):
            raise NotWeaklyChordalError(
                f"contraction of ({pair.x},{pair.y}) broke weak chordality"
            )
        records.append(ContractionRecord(pair.x, pair.y, z))
        chain.append(cur)
    if not _is_complete(cur):
        raise NotWeaklyChordalError(
            "no two-pair on a non-complete graph; input is not weakly chordal"
        )
    return records, chain


def lift_coloring(
    records: Sequence[ContractionRecord], chain: Sequence[Graph]
) -> tuple[dict[int, int], int]:
    """Coloring part of the lift only: classes get colors, no clique threading."""
    final = chain[-1]
    base = sorted(final.vertices)
    coloring = {v: i + 1 for i, v in enumerate(base)}
    for rec in reversed(records):
        c = coloring.pop(rec.z)
        coloring[rec.x] = c
        coloring[rec.y] = c
    return coloring, len(base)


def lift(records: Sequence[ContractionRecord], chain: Sequence[Graph]) -> tuple[dict[int, int], frozenset[int], int]:
    """Lift clique and coloring from the final clique back to the original graph.

    The base clique takes colors 1..k by ascending vertex id. Each
    un-contraction copies the merged vertex's color to both parents; the
    clique is patched only when it contains the merged vertex.
    """
    final = chain[-1]
    base = sorted(final.vertices)
    coloring = {v: i + 1 for i, v in enumerate(base)}
    clique = set(base)
    for i in range(len(records) - 1, -1, -1):
        rec = records[i]
        pre = chain[i]  # graph in which rec.x, rec.y are live
        c = coloring.pop(rec.z)
        coloring[rec.x] = c
        coloring[rec.y] = c
        if rec.z in clique:
            clique.discard(rec.z)
            rest = clique
            if all(pre.has_edge(rec.x, w) for w in rest):
                clique.add(rec.x)
            elif all(pre.has_edge(rec.y, w) for w in rest):
                clique.add(rec.y)
            else:
                raise NotWeaklyChordalError(
                    "clique lift failed: neither parent completes the clique"
                )
    return coloring, frozenset(clique), len(base)


def static_color(
    g: Graph,
    rng: Optional[random.Random] = None,
    verify: bool = False,
) -> ColoringState:
    """Simultaneous maximum clique and minimum coloring via contraction."""
    if verify and not is_weakly_chordal(g):
        raise NotWeaklyChordalError("input graph is not weakly chordal")
    if g.n == 0:
        return ColoringState(g, {}, 0, frozenset(), SolutionOrder())
    records, chain = run_contractions(g, rng, verify)
    coloring, clique, k = lift(records, chain)
    return ColoringState(g, coloring, k, clique, SolutionOrder(records))


def chromatic_number(g: Graph) -> int:
    return static_color(g).color_count


def diagnose_state(state: ColoringState) -> list[str]:
    """All invariant violations of a ColoringState, as human-readable strings."""
    problems: list[str] = []
    g = state.graph
    if set(state.coloring) != set(g.vertices):
        problems.append("coloring domain differs from vertex set")
        return problems
    for u, v in g.edges():
        if state.coloring[u] == state.coloring[v]:
            problems.append(f"improper coloring on edge ({u},{v})")
    distinct = len(set(state.coloring.values())) if state.coloring else 0
    if distinct != state.color_count:
        problems.append(f"{distinct} distinct colors used, color_count={state.color_count}")
    if len(state.clique) != state.color_count:
        problems.append(f"clique size {len(state.clique)} != color_count {state.color_count}")
    members = sorted(state.clique)
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if not g.has_edge(u, v):
                problems.append(f"clique members ({u},{v}) are not adjacent")
    # Replay the order. Optimality is certified by the (coloring, clique)
    # pair above, so a record only needs live, non-adjacent parents here;
    # two-pair-ness is how records are found, not what makes them valid.
    cur = g
    for rec in state.order:
        if rec.x not in cur or rec.y not in cur:
            problems.append(f"order record ({rec.x},{rec.y},{rec.z}) references dead vertex")
            return problems
        if cur.has_edge(rec.x, rec.y):
            problems.append(f"order record ({rec.x},{rec.y},{rec.z}) contracts an edge")
            return problems
        cur, _ = cur.contract_pair(rec.x, rec.y, rec.z)
    if not _is_complete(cur):
        problems.append("order replay does not end in a clique")
    elif cur.n != state.color_count:
        problems.append(f"replayed clique has {cur.n} vertices, expected {state.color_count}")
    return problems


def verify_state(state: ColoringState) -> bool:
    return not diagnose_state(state)
