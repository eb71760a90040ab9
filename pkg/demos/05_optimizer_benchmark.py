#!/usr/bin/env python3
"""Closed-loop slider search against a synthetic user, vs. a random baseline.

A hidden Gaussian bump in the unit 7-cube stands in for someone's taste.
The synthetic user always commits the best of 101 slider positions. The
full loop (preference GP + expected improvement segments) is compared with
random segments under the same choice policy, paired by seed.

Uses 8 seeds to stay quick; the acceptance suite runs the full 20.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from grassfeel.benchmark import records_to_csv, run_headless

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

SEEDS = range(8)
ITERS = 15

sls_runs = [run_headless(seed=s, iterations=ITERS, method="sls") for s in SEEDS]
rand_runs = [run_headless(seed=s, iterations=ITERS, method="random") for s in SEEDS]

print(f"{'seed':>4}  {'sls dist':>9}  {'random dist':>11}  winner")
wins = 0
for s, a, b in zip(SEEDS, sls_runs, rand_runs):
    better = a.final_distance < b.final_distance
    wins += better
    print(f"{s:>4}  {a.final_distance:>9.4f}  {b.final_distance:>11.4f}  "
          f"{'sls' if better else 'random'}")

d_sls = [r.final_distance for r in sls_runs]
d_rand = [r.final_distance for r in rand_runs]
print(f"\nMedian final distance: sls {np.median(d_sls):.4f}, "
      f"random {np.median(d_rand):.4f}")
print(f"Paired wins: {wins}/{len(list(SEEDS))}")

records_to_csv(sls_runs[0].records, OUT / "benchmark_seed0.csv")
print(f"\nWrote {OUT / 'benchmark_seed0.csv'}")

fig, ax = plt.subplots(figsize=(7, 4))
for r in sls_runs:
    ax.plot([rec.iteration for rec in r.records],
            [rec.distance_to_target for rec in r.records],
            color="tab:blue", alpha=0.4)
for r in rand_runs:
    ax.plot([rec.iteration for rec in r.records],
            [rec.distance_to_target for rec in r.records],
            color="tab:orange", alpha=0.4)
ax.plot([], [], color="tab:blue", label="slider search")
ax.plot([], [], color="tab:orange", label="random baseline")
ax.set_xlabel("iteration")
ax.set_ylabel("distance to hidden target")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "benchmark.png", dpi=120)
print(f"Wrote {OUT / 'benchmark.png'}")
