"""Headless closed-loop runs: slider search against a synthetic user.

Drives a full Session through the same message path the UI uses, with a
deterministic logical clock so identical seeds and choices produce
bit-identical event logs. A random-segment baseline shares the target and
choice policy for paired comparisons.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import datetime, timezone
from itertools import count

import numpy as np

from .optimizer import SliderSegment, slider_point
from .oracle import ChoicePolicy, LatentGoodness, choose, goodness
from .params import N_PARAMS
from .session import Session, SessionConfig

# Independent RNG substreams per role, all derived from the run seed.
_TARGET_STREAM = 101
_NOISE_STREAM = 202
_SEGMENT_STREAM = 303


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    best_goodness: float
    distance_to_target: float


@dataclass
class HeadlessResult:
    method: str
    seed: int
    target: np.ndarray
    records: list[IterationRecord]
    session: Session | None
    final_point: np.ndarray

    @property
    def final_distance(self) -> float:
        return self.records[-1].distance_to_target


def deterministic_clock():
    """Logical clock: fixed epoch advanced one second per log append."""
    counter = count()

    def tick() -> str:
        return datetime.fromtimestamp(next(counter), tz=timezone.utc).isoformat()

    return tick


def run_headless(
    seed: int,
    iterations: int = 15,
    noise: float = 0.0,
    target=None,
    method: str = "sls",
    config: SessionConfig | None = None,
    grid_points: int = 101,
) -> HeadlessResult:
    """One synthetic-user run; returns per-iteration records and the session.

    ``method`` is "sls" (the full preference loop) or "random" (segments
    drawn uniformly, same choice policy; its recommendation is its best
    chosen point so far).
    """
    if method not in ("sls", "random"):
        raise ValueError(f"unknown method {method!r}")
    if iterations < 1:
        raise ValueError("iterations must be positive")
    if target is None:
        target = np.random.default_rng([seed, _TARGET_STREAM]).random(N_PARAMS)
    target = np.asarray(target, dtype=float)
    if target.shape != (N_PARAMS,):
        raise ValueError(f"target must have {N_PARAMS} coordinates")

    latent = LatentGoodness(tuple(target))
    policy = ChoicePolicy(grid_points=grid_points, noise_scale=noise, seed=seed)
    noise_rng = np.random.default_rng([seed, _NOISE_STREAM])

    records: list[IterationRecord] = []
    if method == "sls":
        session = Session(seed, config, clock=deterministic_clock())
        for i in range(iterations):
            t = choose(policy, latent, session.segment, rng=noise_rng)
            session.handle_message({"type": "set_slider", "t": t})
            session.handle_message({"type": "commit_choice"})
            incumbent = session.opt_state.X[session.opt_state.incumbent]
            records.append(
                IterationRecord(
                    i + 1,
                    goodness(latent, incumbent),
                    float(np.linalg.norm(incumbent - target)),
                )
            )
        final = session.opt_state.X[session.opt_state.incumbent].copy()
        return HeadlessResult("sls", seed, target, records, session, final)

    seg_rng = np.random.default_rng([seed, _SEGMENT_STREAM])
    best_point = None
    best_value = -np.inf
    for i in range(iterations):
        x0 = seg_rng.random(N_PARAMS)
        x1 = seg_rng.random(N_PARAMS)
        while np.linalg.norm(x0 - x1) < 1e-6:
            x1 = seg_rng.random(N_PARAMS)
        seg = SliderSegment(x0, x1)
        t = choose(policy, latent, seg, rng=noise_rng)
        chosen = slider_point(seg, t)
        value = goodness(latent, chosen)
        if value > best_value:
            best_point, best_value = chosen, value
        records.append(
            IterationRecord(
                i + 1, best_value, float(np.linalg.norm(best_point - target))
            )
        )
    return HeadlessResult("random", seed, target, records, None, best_point.copy())


def records_to_csv(records: list[IterationRecord], path=None) -> str:
    """CSV with header iteration,best_goodness,distance_to_target."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["iteration", "best_goodness", "distance_to_target"])
    for r in records:
        writer.writerow([r.iteration, repr(r.best_goodness), repr(r.distance_to_target)])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text
