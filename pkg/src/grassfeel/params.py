"""Seven-parameter haptic stimulus domain and its unit-cube normalization.

All search and preference machinery works on points of the unit 7-cube;
physical units only appear at the edges (synthesis, display, export).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

N_PARAMS = 7

PARAM_NAMES = ("f_low", "a_low", "f_mid", "a_mid", "f_high", "a_high", "move_freq")


@dataclass(frozen=True)
class ParamDescriptor:
    """One axis of the tunable domain: display name, unit, physical range."""

    name: str
    unit: str
    min: float
    max: float

    def __post_init__(self) -> None:
        if not self.min < self.max:
            raise ValueError(
                f"descriptor {self.name!r}: min {self.min} must be below max {self.max}"
            )


@dataclass(frozen=True)
class ParamDomain:
    """Ordered descriptors for the seven tunable stimulus parameters."""

    descriptors: tuple[ParamDescriptor, ...]

    def __post_init__(self) -> None:
        if len(self.descriptors) != N_PARAMS:
            raise ValueError(f"expected {N_PARAMS} descriptors, got {len(self.descriptors)}")
        names = tuple(d.name for d in self.descriptors)
        if names != PARAM_NAMES:
            raise ValueError(f"descriptor names must be {PARAM_NAMES} in order, got {names}")

    @property
    def lower(self) -> np.ndarray:
        return np.array([d.min for d in self.descriptors])

    @property
    def upper(self) -> np.ndarray:
        return np.array([d.max for d in self.descriptors])

    def to_json(self) -> list[dict]:
        return [
            {"name": d.name, "unit": d.unit, "min": d.min, "max": d.max}
            for d in self.descriptors
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "ParamDomain":
        return cls(
            tuple(
                ParamDescriptor(d["name"], d["unit"], float(d["min"]), float(d["max"]))
                for d in data
            )
        )


@dataclass(frozen=True)
class HapticParams:
    """Physical values of the seven stimulus parameters.

    Field order matches the descriptor order of the domain, so
    ``as_array`` round-trips through ``to_normalized``/``to_physical``.
    """

    f_low_hz: float
    a_low: float
    f_mid_hz: float
    a_mid: float
    f_high_hz: float
    a_high: float
    move_freq_hz: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [
                self.f_low_hz,
                self.a_low,
                self.f_mid_hz,
                self.a_mid,
                self.f_high_hz,
                self.a_high,
                self.move_freq_hz,
            ]
        )

    def to_json(self) -> dict:
        return {
            "f_low_hz": self.f_low_hz,
            "a_low": self.a_low,
            "f_mid_hz": self.f_mid_hz,
            "a_mid": self.a_mid,
            "f_high_hz": self.f_high_hz,
            "a_high": self.a_high,
            "move_freq_hz": self.move_freq_hz,
        }


def default_domain() -> ParamDomain:
    """Stock domain: three vibration bands (frequency + amplitude) and a sweep rate."""
    return ParamDomain(
        (
            ParamDescriptor("f_low", "Hz", 10.0, 30.0),
            ParamDescriptor("a_low", "", 0.0, 1.0),
            ParamDescriptor("f_mid", "Hz", 30.0, 100.0),
            ParamDescriptor("a_mid", "", 0.0, 1.0),
            ParamDescriptor("f_high", "Hz", 100.0, 300.0),
            ParamDescriptor("a_high", "", 0.0, 1.0),
            ParamDescriptor("move_freq", "Hz", 0.2, 1.0),
        )
    )


def as_param_vector(values) -> np.ndarray:
    """Validate *values* as a point of the closed unit 7-cube and return it as float64."""
    v = np.asarray(values, dtype=float)
    if v.shape != (N_PARAMS,):
        raise ValueError(f"parameter vector must have shape ({N_PARAMS},), got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("parameter vector must be finite")
    if np.any(v < 0.0) or np.any(v > 1.0):
        raise ValueError(f"parameter vector must lie in the unit cube, got {v.tolist()}")
    return v


def to_physical(domain: ParamDomain, v) -> HapticParams:
    """Affine map from a unit-cube point to physical parameter values."""
    v = as_param_vector(v)
    lo, hi = domain.lower, domain.upper
    phys = lo + v * (hi - lo)
    return HapticParams(*(float(x) for x in phys))


def to_normalized(domain: ParamDomain, p: HapticParams) -> np.ndarray:
    """Inverse of :func:`to_physical`; rejects values outside the domain ranges."""
    phys = p.as_array()
    lo, hi = domain.lower, domain.upper
    if np.any(phys < lo) or np.any(phys > hi):
        raise ValueError("parameters outside the domain ranges")
    # Clip shields against one-ulp excursions from the division.
    return np.clip((phys - lo) / (hi - lo), 0.0, 1.0)
