"""Deterministic synthetic slider user for closed-loop benchmarks.

Stands in for a person: goodness is a Gaussian bump around a hidden target
point, and the choice policy picks the best of a fixed grid of slider
positions, optionally with seeded Gumbel noise on the values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .optimizer import SliderSegment, slider_point
from .params import N_PARAMS


@dataclass(frozen=True)
class LatentGoodness:
    """Hidden preference landscape: a Gaussian bump at ``target``."""

    target: tuple[float, ...]
    width: float = 0.4

    def __post_init__(self) -> None:
        if len(self.target) != N_PARAMS:
            raise ValueError(f"target must have {N_PARAMS} coordinates")
        if self.width <= 0.0:
            raise ValueError("width must be positive")


def goodness(f: LatentGoodness, x) -> float:
    """exp(-||x - target||^2 / (2 width^2)); 1 at the target, 0 far away."""
    d2 = float(np.sum((np.asarray(x, dtype=float) - np.asarray(f.target)) ** 2))
    return float(np.exp(-d2 / (2.0 * f.width**2)))


@dataclass(frozen=True)
class ChoicePolicy:
    grid_points: int = 101
    noise_scale: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.grid_points < 2:
            raise ValueError("grid_points must be at least 2")
        if self.noise_scale < 0.0:
            raise ValueError("noise_scale must be non-negative")


def choose(
    policy: ChoicePolicy,
    f: LatentGoodness,
    seg: SliderSegment,
    rng: np.random.Generator | None = None,
) -> float:
    """Slider position in [0, 1] the synthetic user would commit.

    Evaluates goodness on an even grid of positions and returns the argmax;
    with noise_scale > 0, seeded Gumbel noise perturbs the values first
    (pass ``rng`` to draw from a persistent stream instead of the policy
    seed).
    """
    ts = np.linspace(0.0, 1.0, policy.grid_points)
    pts = (1.0 - ts)[:, None] * seg.x0 + ts[:, None] * seg.x1
    d2 = np.sum((pts - np.asarray(f.target)) ** 2, axis=1)
    values = np.exp(-d2 / (2.0 * f.width**2))
    if policy.noise_scale > 0.0:
        if rng is None:
            rng = np.random.default_rng(policy.seed)
        values = values + rng.gumbel(0.0, policy.noise_scale, policy.grid_points)
    return float(ts[int(np.argmax(values))])


def evaluate_point(f: LatentGoodness, seg: SliderSegment, t: float) -> float:
    """Goodness of the point at fraction t along the segment."""
    return goodness(f, slider_point(seg, t))
