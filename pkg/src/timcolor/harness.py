"""Adversary simulation: seeded event streams, cross-checks, reporting.

A trial builds a conflict graph (from a topology file or the random
chordal-bipartite generator), colors it statically, then streams
weak-chordality-preserving edge events through the dynamic updates. In
verification mode every event is cross-checked against a fresh static
recompute and, under the oracle cap, against brute-force chromatic/clique
oracles. Events are logged as JSONL, summarized as CSV.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .dynamic_coloring import UpdateReport, delete_update, insert_update
from .generators import random_chordal_bipartite
from .graph import Graph
from .oracles import oracle_chromatic, oracle_max_clique
from .recognition import (
    ORACLE_CAP,
    is_weakly_chordal,
    stays_weakly_chordal_after_delete,
    stays_weakly_chordal_after_insert,
)
from .static_coloring import ColoringState, static_color, verify_state
from .tim import all_unicast_messages, build_conflict_graph, load_topology

CSV_COLUMNS = [
    "seq", "kind", "u", "v", "case", "recolored", "pairs_removed", "pairs_added",
    "colors_before", "colors_after", "omega_before", "omega_after", "fallback", "wall_us",
]

DEFAULT_BOUND = 8  # 4 + 4 candidate two-pair neighbors per endpoint


class TrialAssertionError(AssertionError):
    """A per-event runtime assertion failed; carries the offending event."""

    def __init__(self, message: str, event: Optional[dict] = None):
        super().__init__(message)
        self.event = event


@dataclass(frozen=True)
class PerturbationEvent:
    kind: str  # "insert" | "delete"
    u: int
    v: int
    seq: int


@dataclass
class TrialConfig:
    seed: int = 0
    topology_file: Optional[str] = None
    M: int = 5
    N: int = 5
    density: float = 0.5
    event_count: int = 100
    insert_fraction: float = 0.5
    oracle_cap: int = ORACLE_CAP
    bound: int = DEFAULT_BOUND
    verification_mode: bool = True
    assert_bound: bool = True
    rejection_cap_factor: int = 50  # attempts per event: factor * |V|^2

    @staticmethod
    def from_dict(d: dict) -> "TrialConfig":
        known = {f for f in TrialConfig.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return TrialConfig(**d)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass
class TrialReport:
    config: TrialConfig
    events: list[UpdateReport] = field(default_factory=list)
    wall_us: list[int] = field(default_factory=list)
    saturated: bool = False
    equivalence_checks: int = 0
    max_recolored: int = 0
    max_pairs_changed: int = 0
    fallback_count: int = 0

    @property
    def mean_recolored(self) -> float:
        return (
            sum(len(e.recolored) for e in self.events) / len(self.events)
            if self.events
            else 0.0
        )

    def summary(self) -> dict:
        return {
            "seed": self.config.seed,
            "events": len(self.events),
            "saturated": self.saturated,
            "equivalence_checks": self.equivalence_checks,
            "max_recolored": self.max_recolored,
            "mean_recolored": round(self.mean_recolored, 4),
            "max_pairs_changed": self.max_pairs_changed,
            "fallbacks": self.fallback_count,
        }

    def events_jsonl(self) -> str:
        return "".join(json.dumps(e.to_dict(), sort_keys=True) + "\n" for e in self.events)

    def events_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(CSV_COLUMNS)
        for e, us in zip(self.events, self.wall_us):
            w.writerow([
                e.seq, e.kind, e.u, e.v, e.case_label, len(e.recolored),
                len(e.pairs_removed), len(e.pairs_added), e.colors_before,
                e.colors_after, e.omega_before, e.omega_after,
                int(e.fallback_used), us,
            ])
        return buf.getvalue()


def gen_event(
    g: Graph, rng: random.Random, insert_fraction: float, seq: int, cap: int
) -> Optional[PerturbationEvent]:
    """A uniformly sampled admissible event, or None when saturated.

    Candidates are rejection-sampled until the perturbed graph stays weakly
    chordal, up to `cap` attempts.
    """
    ids = g.vertices
    edges = list(g.edges())
    non_edges = [
        (u, v) for i, u in enumerate(ids) for v in ids[i + 1 :] if not g.has_edge(u, v)
    ]
    for _ in range(cap):
        want_insert = rng.random() < insert_fraction
        if want_insert and not non_edges:
            want_insert = False
        if not want_insert and not edges:
            want_insert = True
            if not non_edges:
                return None
        if want_insert:
            u, v = rng.choice(non_edges)
            if stays_weakly_chordal_after_insert(g, u, v):
                return PerturbationEvent("insert", u, v, seq)
        else:
            u, v = rng.choice(edges)
            if stays_weakly_chordal_after_delete(g, u, v):
                return PerturbationEvent("delete", u, v, seq)
    return None


def build_trial_graph(cfg: TrialConfig) -> Graph:
    if cfg.topology_file:
        topo = load_topology(Path(cfg.topology_file).read_text())
    else:
        topo = random_chordal_bipartite(cfg.M, cfg.N, cfg.density, random.Random(cfg.seed))
    msgs = all_unicast_messages(topo)
    return build_conflict_graph(topo, msgs).graph


def _check_event(state: ColoringState, report: UpdateReport, cfg: TrialConfig) -> int:
    """Per-event assertions; returns 1 if the static equivalence ran."""
    ev = report.to_dict()
    if not verify_state(state):
        raise TrialAssertionError("state invariants violated after event", ev)
    if report.fallback_used:
        raise TrialAssertionError("fallback fired on a compliant workload", ev)
    if cfg.assert_bound and report.kind == "insert":
        if report.pairs_changed > cfg.bound:
            raise TrialAssertionError(
                f"pairs changed {report.pairs_changed} > bound {cfg.bound}", ev
            )
        if len(report.recolored) > cfg.bound:
            raise TrialAssertionError(
                f"recolored {len(report.recolored)} > bound {cfg.bound}", ev
            )
    if not cfg.verification_mode:
        return 0
    fresh = static_color(state.graph)
    if fresh.color_count != state.color_count:
        raise TrialAssertionError(
            f"dynamic colors {state.color_count} != static {fresh.color_count}", ev
        )
    if state.graph.n <= cfg.oracle_cap:
        chi = oracle_chromatic(state.graph, cfg.oracle_cap)
        omega = len(oracle_max_clique(state.graph, cfg.oracle_cap))
        if not (chi == omega == state.color_count):
            raise TrialAssertionError(
                f"oracle mismatch: chi={chi} omega={omega} maintained={state.color_count}", ev
            )
    return 1


def run_simulation(cfg: TrialConfig, out_dir: Optional[str] = None) -> TrialReport:
    """Run one seeded adversarial trial; optionally write JSONL + CSV files."""
    rng = random.Random(cfg.seed)
    graph = build_trial_graph(cfg)
    if cfg.verification_mode and not is_weakly_chordal(graph):
        raise TrialAssertionError("initial conflict graph is not weakly chordal")
    state = static_color(graph)
    if not verify_state(state):
        raise TrialAssertionError("initial static state failed verification")
    report = TrialReport(cfg)
    cap = cfg.rejection_cap_factor * max(1, graph.n) ** 2
    for seq in range(cfg.event_count):
        event = gen_event(state.graph, rng, cfg.insert_fraction, seq, cap)
        if event is None:
            report.saturated = True
            break
        t0 = time.perf_counter()
        if event.kind == "insert":
            state, ev_report = insert_update(state, event.u, event.v)
        else:
            state, ev_report = delete_update(state, event.u, event.v)
        ev_report.seq = event.seq
        report.wall_us.append(int((time.perf_counter() - t0) * 1e6))
        report.equivalence_checks += _check_event(state, ev_report, cfg)
        report.events.append(ev_report)
        report.max_recolored = max(report.max_recolored, len(ev_report.recolored))
        report.max_pairs_changed = max(report.max_pairs_changed, ev_report.pairs_changed)
        report.fallback_count += int(ev_report.fallback_used)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"trial-seed{cfg.seed}"
        (out / f"{stem}.jsonl").write_text(report.events_jsonl())
        (out / f"{stem}.csv").write_text(report.events_csv())
        (out / f"{stem}.summary.json").write_text(
            json.dumps(report.summary(), sort_keys=True, indent=2) + "\n"
        )
    return report
