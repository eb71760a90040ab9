#!/usr/bin/env python3
"""Stepped-circle focal trajectory with a slowly sweeping center.

The focus hops around an 8 mm circle at 10 Hz in 5 mm steps (10 hops per
revolution, one frame every 10 ms) while the circle's center slides back
and forth along a 30 mm line. Exports one second of frames as CSV and a
top-down plot.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from grassfeel.params import default_domain, to_physical
from grassfeel.trajectory import (
    StmConfig,
    points_per_revolution,
    schedule,
    write_schedule_csv,
)
from grassfeel.waveform import spec_from_params

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

cfg = StmConfig()
domain = default_domain()
params = to_physical(domain, np.full(7, 0.5))
spec = spec_from_params(params)

n = points_per_revolution(cfg)
print(f"Circle radius {cfg.circle_radius_mm:g} mm, step {cfg.step_mm:g} mm "
      f"-> {n} hops per revolution")
print(f"Hop cadence {cfg.stm_freq_hz * n:g} Hz, revolution period "
      f"{1000 / cfg.stm_freq_hz:g} ms")

frames = schedule(cfg, params, spec, t0=0.0, duration=1.0)
print(f"Scheduled {len(frames)} frames over 1 s")

pos = np.array([f.position_mm for f in frames])
hops = np.linalg.norm(np.diff(pos, axis=0), axis=1)
print(f"Chord length between hops: min {hops.min():.3f} mm, max {hops.max():.3f} mm")
print(f"(center motion stretches some chords past the in-circle value "
      f"{2 * cfg.circle_radius_mm * np.sin(np.pi / n):.3f} mm)")

csv_path = OUT / "trajectory_1s.csv"
write_schedule_csv(frames, csv_path)
print(f"Wrote {csv_path}")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
ax1.plot(pos[:, 0], pos[:, 1], ".-", ms=3, lw=0.5, alpha=0.7)
ax1.set_xlabel("x (mm)")
ax1.set_ylabel("y (mm)")
ax1.set_title("focal path, top view")
ax1.set_aspect("equal")

amps = [f.amplitude for f in frames]
ts = [f.t for f in frames]
ax2.plot(ts, amps, lw=0.8)
ax2.set_xlabel("t (s)")
ax2.set_ylabel("drive envelope")
ax2.set_title("per-frame amplitude")
fig.tight_layout()
fig.savefig(OUT / "trajectory.png", dpi=120)
print(f"Wrote {OUT / 'trajectory.png'}")
