#!/usr/bin/env python3
"""Re-validate the forbidden-pattern library against random networks.

The library certifies the (4,4,2)-representation precondition: conflict
graphs of convex interference networks should be weakly chordal and
contain none of the seven patterns as induced subgraphs. Three of the
seven patterns are reconstructions (see the pattern data file), so this
script exists to re-run the empirical validation on demand: it samples
random connected convex topologies, builds each conflict graph, and
scans it against the full library.

Caution: the non-embedding property is a property of *sparse convex*
networks, not of arbitrary chordal-bipartite ones. Dense chordal
bipartite topologies can produce conflict graphs containing, e.g., the
complement of P6 — such graphs are still weakly chordal (so optimal
coloring and dynamic maintenance remain correct); only the constant
locality certificate is lost. Pass --stress to observe this.
"""

from __future__ import annotations

import argparse
import random

from timcolor import (
    build_conflict_graph,
    all_unicast_messages,
    is_weakly_chordal,
    load_pattern_library,
    scan_forbidden,
)
from timcolor.generators import random_chordal_bipartite, random_convex
from timcolor.recognition import _bfs_reach


def connected(t) -> bool:
    b = t.bipartite_graph()
    full = (1 << b.n) - 1
    return _bfs_reach(b.adj_masks(), 0, full) == full


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--stress", action="store_true",
                    help="sample dense chordal-bipartite topologies instead")
    args = ap.parse_args()

    lib = load_pattern_library()
    rng = random.Random(args.seed)
    hits = 0
    not_wc = 0
    done = 0
    while done < args.trials:
        m, n = rng.randint(3, 9), rng.randint(3, 14)
        if args.stress:
            topo = random_chordal_bipartite(m, n, rng.uniform(0.4, 0.8), rng)
        else:
            topo = random_convex(m, n, rng)
        if not connected(topo):
            continue
        done += 1
        cg = build_conflict_graph(topo, all_unicast_messages(topo)).graph
        found = scan_forbidden(cg, lib)
        if found:
            hits += 1
            names = sorted({name for name, _ in found})
            print(f"trial {done}: embeddings {names} (M={m}, N={n})")
        if not is_weakly_chordal(cg):
            not_wc += 1
            print(f"trial {done}: conflict graph NOT weakly chordal (M={m}, N={n})")
    print(f"{done} trials: {hits} with pattern embeddings, "
          f"{not_wc} not weakly chordal")


if __name__ == "__main__":
    main()
