"""Simulated multi-unit ultrasound phased array: geometry, focusing, fields.

Four rectangular transducer grids surround the workspace, each tilted a few
degrees toward its center. Focusing assigns every transducer the phase that
cancels its propagation delay to a target point, and the complex pressure at
any point is the monopole superposition

    p(x) = sum_i (drive_amp / d_i) * exp(j * (phi_i - k * d_i))

with d_i the distance from transducer i in mm and k = 2*pi / wavelength.
Amplitudes carry arbitrary units; only relative magnitudes matter here.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

TWO_PI = 2.0 * np.pi

# Sources closer than this to an evaluation point make the 1/d model meaningless.
MIN_SOURCE_DISTANCE_MM = 1.0

# Axis-aligned bounds (mm) of the region the focal point is allowed to visit.
WORKSPACE_BOUNDS_MM = ((-30.0, 30.0), (-30.0, 30.0), (170.0, 230.0))


@dataclass(frozen=True)
class AcousticConfig:
    drive_freq_hz: float = 40_000.0
    speed_of_sound_mps: float = 340.0

    def __post_init__(self) -> None:
        if self.drive_freq_hz <= 0.0 or self.speed_of_sound_mps <= 0.0:
            raise ValueError("drive frequency and speed of sound must be positive")

    @property
    def wavelength_mm(self) -> float:
        return 1000.0 * self.speed_of_sound_mps / self.drive_freq_hz

    @property
    def wavenumber_per_mm(self) -> float:
        return TWO_PI / self.wavelength_mm


@dataclass(frozen=True)
class UnitGrid:
    """Per-unit transducer layout: a rectangular grid with a few cells omitted.

    ``omitted_cells`` holds (col, row) indices left unpopulated (mounting
    holes on the physical board). The stock 18 x 14 grid minus 3 cells gives
    249 transducers per unit.
    """

    columns: int = 18
    rows: int = 14
    pitch_mm: float = 10.16
    omitted_cells: tuple[tuple[int, int], ...] = ((0, 0), (17, 0), (0, 13))

    def __post_init__(self) -> None:
        if self.columns < 1 or self.rows < 1 or self.pitch_mm <= 0.0:
            raise ValueError("grid dimensions and pitch must be positive")
        seen = set()
        for cell in self.omitted_cells:
            col, row = cell
            if not (0 <= col < self.columns and 0 <= row < self.rows):
                raise ValueError(f"omitted cell {cell} outside the {self.columns}x{self.rows} grid")
            if cell in seen:
                raise ValueError(f"omitted cell {cell} listed twice")
            seen.add(cell)

    @property
    def transducer_count(self) -> int:
        return self.columns * self.rows - len(self.omitted_cells)


@dataclass(frozen=True)
class UnitPlacement:
    """Pose of one unit: center position, facing azimuth, inward tilt."""

    origin_mm: tuple[float, float, float]
    azimuth_deg: float = 0.0
    tilt_deg: float = 15.0


def default_array_config() -> "ArrayConfig":
    return ArrayConfig()


def _default_units() -> tuple[UnitPlacement, ...]:
    radius = 160.0
    units = []
    for azimuth in (0.0, 90.0, 180.0, 270.0):
        psi = math.radians(azimuth)
        units.append(
            UnitPlacement(
                origin_mm=(radius * math.cos(psi), radius * math.sin(psi), 0.0),
                azimuth_deg=azimuth,
                tilt_deg=15.0,
            )
        )
    return tuple(units)


@dataclass(frozen=True)
class ArrayConfig:
    units: tuple[UnitPlacement, ...] = field(default_factory=_default_units)
    grid: UnitGrid = field(default_factory=UnitGrid)

    def __post_init__(self) -> None:
        if not self.units:
            raise ValueError("at least one unit required")


@dataclass(frozen=True)
class Transducer:
    position_mm: np.ndarray
    normal: np.ndarray


@dataclass(frozen=True)
class TransducerArray:
    """Flattened element geometry: positions_mm and normals are (n, 3) arrays."""

    positions_mm: np.ndarray
    normals: np.ndarray
    unit_index: np.ndarray

    def __len__(self) -> int:
        return len(self.positions_mm)

    def transducers(self):
        for pos, nrm in zip(self.positions_mm, self.normals):
            yield Transducer(pos, nrm)


def local_grid_coords(grid: UnitGrid) -> np.ndarray:
    """Centered in-plane coordinates (mm) of the populated cells, row-major."""
    omitted = set(grid.omitted_cells)
    half_c = (grid.columns - 1) / 2.0
    half_r = (grid.rows - 1) / 2.0
    coords = [
        ((col - half_c) * grid.pitch_mm, (row - half_r) * grid.pitch_mm, 0.0)
        for row in range(grid.rows)
        for col in range(grid.columns)
        if (col, row) not in omitted
    ]
    return np.array(coords)


def _unit_rotation(azimuth_deg: float, tilt_deg: float) -> np.ndarray:
    """World-from-local rotation: tilt about local y, then rotate to azimuth.

    The local +z (element normal) ends up tipped ``tilt_deg`` from vertical
    toward the azimuth origin, so units placed on a ring all face inward.
    Azimuth 0 with zero tilt is the identity.
    """
    psi = math.radians(azimuth_deg)
    th = math.radians(tilt_deg)
    rz = np.array(
        [
            [math.cos(psi), -math.sin(psi), 0.0],
            [math.sin(psi), math.cos(psi), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    ry = np.array(
        [
            [math.cos(th), 0.0, -math.sin(th)],
            [0.0, 1.0, 0.0],
            [math.sin(th), 0.0, math.cos(th)],
        ]
    )
    return rz @ ry


def build_array(cfg: ArrayConfig | None = None) -> TransducerArray:
    """Deterministically construct the full element list for a configuration."""
    cfg = cfg if cfg is not None else ArrayConfig()
    local = local_grid_coords(cfg.grid)
    positions, normals, unit_idx = [], [], []
    for i, unit in enumerate(cfg.units):
        rot = _unit_rotation(unit.azimuth_deg, unit.tilt_deg)
        pos = np.asarray(unit.origin_mm, dtype=float) + local @ rot.T
        positions.append(pos)
        normals.append(np.tile(rot[:, 2], (len(local), 1)))
        unit_idx.append(np.full(len(local), i))
    return TransducerArray(
        np.concatenate(positions),
        np.concatenate(normals),
        np.concatenate(unit_idx),
    )


def _distances(array: TransducerArray, point_mm) -> np.ndarray:
    point = np.asarray(point_mm, dtype=float)
    if point.shape != (3,):
        raise ValueError("point must be a 3-vector in mm")
    d = np.linalg.norm(array.positions_mm - point, axis=1)
    if np.any(d < MIN_SOURCE_DISTANCE_MM):
        raise ValueError(
            f"point {point.tolist()} is within {MIN_SOURCE_DISTANCE_MM} mm of a transducer"
        )
    return d


def focus_phases(array: TransducerArray, acoustic: AcousticConfig, target_mm) -> np.ndarray:
    """Per-element phases (radians, [0, 2*pi)) that focus the array at a target."""
    d = _distances(array, target_mm)
    return np.mod(acoustic.wavenumber_per_mm * d, TWO_PI)


def pressure_at(
    array: TransducerArray,
    acoustic: AcousticConfig,
    phases: np.ndarray,
    point_mm,
    drive_amp: float = 1.0,
) -> complex:
    """Complex pressure at one point for the given element phases."""
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (len(array),):
        raise ValueError("one phase per transducer required")
    if not 0.0 <= drive_amp <= 1.0:
        raise ValueError("drive_amp must lie in [0, 1]")
    d = _distances(array, point_mm)
    k = acoustic.wavenumber_per_mm
    return complex(np.sum(drive_amp / d * np.exp(1j * (phases - k * d))))


def pressure_field(
    array: TransducerArray,
    acoustic: AcousticConfig,
    phases: np.ndarray,
    points_mm: np.ndarray,
    drive_amp: float = 1.0,
) -> np.ndarray:
    """Vectorized complex pressure at many points, shape (m,)."""
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (len(array),):
        raise ValueError("one phase per transducer required")
    if not 0.0 <= drive_amp <= 1.0:
        raise ValueError("drive_amp must lie in [0, 1]")
    pts = np.asarray(points_mm, dtype=float)
    d = np.linalg.norm(pts[:, None, :] - array.positions_mm[None, :, :], axis=2)
    if np.any(d < MIN_SOURCE_DISTANCE_MM):
        raise ValueError("an evaluation point is within 1 mm of a transducer")
    k = acoustic.wavenumber_per_mm
    return np.sum(drive_amp / d * np.exp(1j * (phases[None, :] - k * d)), axis=1)


@dataclass(frozen=True)
class ScanGrid:
    """Planar scan region: center, two in-plane axes, full extent, node pitch."""

    center_mm: tuple[float, float, float]
    axis_u: tuple[float, float, float] = (1.0, 0.0, 0.0)
    axis_v: tuple[float, float, float] = (0.0, 1.0, 0.0)
    extent_mm: float = 40.0
    resolution_mm: float = 1.0

    def __post_init__(self) -> None:
        if self.extent_mm <= 0.0 or self.resolution_mm <= 0.0:
            raise ValueError("extent and resolution must be positive")
        for name in ("axis_u", "axis_v"):
            v = np.asarray(getattr(self, name), dtype=float)
            if abs(np.linalg.norm(v) - 1.0) > 1e-9:
                raise ValueError(f"{name} must be a unit vector")

    def offsets(self) -> np.ndarray:
        n = round(self.extent_mm / self.resolution_mm) + 1
        return np.linspace(-self.extent_mm / 2.0, self.extent_mm / 2.0, n)


@dataclass(frozen=True)
class FieldScan:
    """Magnitude map over a scan grid; rows follow axis_v, columns axis_u."""

    grid: ScanGrid
    magnitude: np.ndarray

    def argmax_position_mm(self) -> np.ndarray:
        offs = self.grid.offsets()
        iv, iu = np.unravel_index(int(np.argmax(self.magnitude)), self.magnitude.shape)
        center = np.asarray(self.grid.center_mm, dtype=float)
        u = np.asarray(self.grid.axis_u, dtype=float)
        v = np.asarray(self.grid.axis_v, dtype=float)
        return center + offs[iu] * u + offs[iv] * v


def field_scan(
    array: TransducerArray,
    acoustic: AcousticConfig,
    phases: np.ndarray,
    grid: ScanGrid,
    drive_amp: float = 1.0,
) -> FieldScan:
    """Pressure magnitude over a planar grid, row-major (v rows, u columns)."""
    offs = grid.offsets()
    center = np.asarray(grid.center_mm, dtype=float)
    u = np.asarray(grid.axis_u, dtype=float)
    v = np.asarray(grid.axis_v, dtype=float)
    uu, vv = np.meshgrid(offs, offs, indexing="xy")
    points = center + uu[..., None] * u + vv[..., None] * v
    p = pressure_field(array, acoustic, phases, points.reshape(-1, 3), drive_amp)
    return FieldScan(grid, np.abs(p).reshape(len(offs), len(offs)))


def config_digest(acoustic: AcousticConfig, array_cfg: ArrayConfig) -> str:
    """Short stable digest of the physical configuration, for scan metadata."""
    payload = json.dumps(
        {"acoustic": asdict(acoustic), "array": asdict(array_cfg)},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.blake2b(payload.encode(), digest_size=8).hexdigest()


def write_field_csv(scan: FieldScan, path) -> None:
    """Export a scan as CSV rows (x_mm, y_mm, magnitude) in in-plane coordinates."""
    offs = scan.grid.offsets()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x_mm", "y_mm", "magnitude"])
        for iv, y in enumerate(offs):
            for iu, x in enumerate(offs):
                writer.writerow([repr(float(x)), repr(float(y)),
                                 repr(float(scan.magnitude[iv, iu]))])


def write_scan_metadata(
    scan: FieldScan,
    target_mm,
    acoustic: AcousticConfig,
    array_cfg: ArrayConfig,
    path,
) -> None:
    """JSON sidecar describing a scan: grid, target, configuration digest."""
    meta = {
        "grid": asdict(scan.grid),
        "target_mm": list(np.asarray(target_mm, dtype=float)),
        "config_digest": config_digest(acoustic, array_cfg),
    }
    with open(path, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
