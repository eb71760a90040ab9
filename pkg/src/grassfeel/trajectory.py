"""Focal-point trajectory: a stepped circle whose center sweeps a straight line.

The focus hops around a small circle fast enough to read as a continuous
ring (spatio-temporal modulation) while the ring center oscillates
sinusoidally along a line, so the stimulus slowly brushes across the palm.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .params import HapticParams
from .waveform import WaveformSpec, envelope

TWO_PI = 2.0 * np.pi


def _as_unit(v, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector")
    if abs(np.linalg.norm(arr) - 1.0) > 1e-9:
        raise ValueError(f"{name} must be a unit vector")
    return arr


@dataclass(frozen=True)
class StmConfig:
    """Geometry and timing of the stepped-circle trajectory.

    Distances in millimetres, frequencies in hertz. The circle lies in the
    plane orthogonal to ``plane_normal``; its center moves along
    ``path_axis`` through ``workspace_origin_mm``.
    """

    circle_radius_mm: float = 8.0
    stm_freq_hz: float = 10.0
    step_mm: float = 5.0
    path_length_mm: float = 30.0
    workspace_origin_mm: tuple[float, float, float] = (0.0, 0.0, 200.0)
    path_axis: tuple[float, float, float] = (1.0, 0.0, 0.0)
    plane_normal: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self) -> None:
        for name in ("circle_radius_mm", "stm_freq_hz", "step_mm", "path_length_mm"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        axis = _as_unit(self.path_axis, "path_axis")
        normal = _as_unit(self.plane_normal, "plane_normal")
        if abs(float(axis @ normal)) > 1e-9:
            raise ValueError("path_axis must be orthogonal to plane_normal")

    def origin(self) -> np.ndarray:
        return np.asarray(self.workspace_origin_mm, dtype=float)

    def axis(self) -> np.ndarray:
        return np.asarray(self.path_axis, dtype=float)

    def in_plane_basis(self) -> tuple[np.ndarray, np.ndarray]:
        """Right-handed basis (e1, e2) of the circle plane with e1 = path_axis."""
        e1 = self.axis()
        e2 = np.cross(np.asarray(self.plane_normal, dtype=float), e1)
        return e1, e2


@dataclass(frozen=True)
class FocusFrame:
    """One timestamped focal target: position in mm and drive amplitude 0..1."""

    t: float
    position_mm: np.ndarray
    amplitude: float


def points_per_revolution(cfg: StmConfig) -> int:
    """Discretization count: circumference / step, rounded, but never below 3."""
    return max(3, round(TWO_PI * cfg.circle_radius_mm / cfg.step_mm))


def center_offset(cfg: StmConfig, move_freq_hz: float, t: float) -> float:
    """Signed offset (mm) of the circle center along the path axis at time t."""
    return 0.5 * cfg.path_length_mm * math.sin(TWO_PI * move_freq_hz * t)


def focus_at(cfg: StmConfig, p: HapticParams, spec: WaveformSpec, t: float) -> FocusFrame:
    """Focal frame at time ``t``: stepped circle point + swept center + envelope."""
    n = points_per_revolution(cfg)
    k = int(math.floor(t * cfg.stm_freq_hz * n)) % n
    angle = TWO_PI * k / n
    e1, e2 = cfg.in_plane_basis()
    center = cfg.origin() + center_offset(cfg, p.move_freq_hz, t) * cfg.axis()
    position = center + cfg.circle_radius_mm * (math.cos(angle) * e1 + math.sin(angle) * e2)
    return FocusFrame(t, position, envelope(spec, t))


def schedule(
    cfg: StmConfig,
    p: HapticParams,
    spec: WaveformSpec,
    t0: float = 0.0,
    duration: float = 0.1,
) -> list[FocusFrame]:
    """Uniformly spaced focal frames covering ``[t0, t0 + duration)``.

    Frame spacing is one hop period, 1 / (stm_freq * points_per_revolution),
    so the default 0.1 s window yields exactly one revolution.
    """
    if duration <= 0.0:
        raise ValueError("duration must be positive")
    n = points_per_revolution(cfg)
    dt = 1.0 / (cfg.stm_freq_hz * n)
    count = max(1, round(duration / dt))
    return [focus_at(cfg, p, spec, t0 + i * dt) for i in range(count)]


def write_schedule_csv(frames: list[FocusFrame], path) -> None:
    """Export frames as CSV with columns t_s, x_mm, y_mm, z_mm, amplitude."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t_s", "x_mm", "y_mm", "z_mm", "amplitude"])
        for fr in frames:
            x, y, z = (float(c) for c in fr.position_mm)
            writer.writerow(
                [repr(float(fr.t)), repr(x), repr(y), repr(z), repr(float(fr.amplitude))]
            )
