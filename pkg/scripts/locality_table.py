#!/usr/bin/env python3
"""Empirical locality of insertions as the conflict graph grows.

For increasing topology sizes, runs insertion-heavy adversarial trials
and tabulates the maximum number of recolored vertices and changed
solution-order pairs per insertion. The observed maxima staying flat as
the message count grows is the empirical face of the constant-update
bound (the two-pair endpoints live in a bounded-degree subtree
intersection model, so only a constant neighborhood can be touched).
"""

from __future__ import annotations

import argparse

from timcolor import TrialConfig, run_simulation
from timcolor.harness import build_trial_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--events", type=int, default=300, help="events per trial")
    ap.add_argument("--seeds-per-size", type=int, default=4)
    ap.add_argument("--bound", type=int, default=8)
    args = ap.parse_args()

    sizes = [(4, 4), (5, 5), (6, 6), (7, 7), (8, 8), (9, 9), (10, 10)]
    print(f"{'M x N':>7} {'messages':>9} {'insertions':>11} "
          f"{'max recolored':>14} {'max pairs':>10}")
    for m, n in sizes:
        inserted = 0
        max_recolored = 0
        max_pairs = 0
        messages = 0
        for seed in range(args.seeds_per_size):
            cfg = TrialConfig(
                seed=1000 * m + seed,
                M=m,
                N=n,
                density=0.5,
                event_count=args.events,
                insert_fraction=0.7,
                bound=args.bound,
                verification_mode=False,
            )
            report = run_simulation(cfg)
            messages = max(messages, build_trial_graph(cfg).n)
            for ev in report.events:
                if ev.kind != "insert":
                    continue
                inserted += 1
                max_recolored = max(max_recolored, len(ev.recolored))
                max_pairs = max(max_pairs, ev.pairs_changed)
        print(f"{m}x{n:>4} {messages:>9} {inserted:>11} "
              f"{max_recolored:>14} {max_pairs:>10}")


if __name__ == "__main__":
    main()
