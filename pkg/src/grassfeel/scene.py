"""Mapping from haptic parameters to the growing-grass scene description.

Each vibration band drives one grass group: band frequency sets how many
blades grow, band amplitude sets blade size, and the sweep rate sets wind
speed. The renderer consumes this spec verbatim; nothing here draws.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .params import HapticParams, ParamDomain, to_normalized

BLADE_COUNT_MIN = 20
BLADE_COUNT_MAX = 120
BLADE_SCALE_MIN = 0.2
BLADE_SCALE_MAX = 1.0


class BandColor(str, Enum):
    BAND_LOW = "band_low"
    BAND_MID = "band_mid"
    BAND_HIGH = "band_high"


@dataclass(frozen=True)
class GrassBandSpec:
    color_tag: BandColor
    blade_count: int
    blade_scale: float

    def __post_init__(self) -> None:
        if not BLADE_COUNT_MIN <= self.blade_count <= BLADE_COUNT_MAX:
            raise ValueError(f"blade_count {self.blade_count} outside "
                             f"[{BLADE_COUNT_MIN}, {BLADE_COUNT_MAX}]")
        if not BLADE_SCALE_MIN <= self.blade_scale <= BLADE_SCALE_MAX:
            raise ValueError(f"blade_scale {self.blade_scale} outside "
                             f"[{BLADE_SCALE_MIN}, {BLADE_SCALE_MAX}]")

    def to_json(self) -> dict:
        return {
            "color_tag": self.color_tag.value,
            "blade_count": self.blade_count,
            "blade_scale": self.blade_scale,
        }


@dataclass(frozen=True)
class GrassSceneSpec:
    bands: tuple[GrassBandSpec, GrassBandSpec, GrassBandSpec]
    wind_speed_norm: float

    def __post_init__(self) -> None:
        tags = tuple(b.color_tag for b in self.bands)
        if tags != (BandColor.BAND_LOW, BandColor.BAND_MID, BandColor.BAND_HIGH):
            raise ValueError("bands must be ordered low, mid, high")
        if not 0.0 <= self.wind_speed_norm <= 1.0:
            raise ValueError("wind_speed_norm must lie in [0, 1]")

    def to_json(self) -> dict:
        return {
            "bands": [b.to_json() for b in self.bands],
            "wind_speed_norm": self.wind_speed_norm,
        }

    @classmethod
    def from_json(cls, data: dict) -> "GrassSceneSpec":
        return cls(
            tuple(
                GrassBandSpec(BandColor(b["color_tag"]), int(b["blade_count"]),
                              float(b["blade_scale"]))
                for b in data["bands"]
            ),
            float(data["wind_speed_norm"]),
        )


def scene_from_params(domain: ParamDomain, p: HapticParams) -> GrassSceneSpec:
    """Scene spec for the given parameters.

    blade_count = round(20 + 100 * normalized band frequency)
    blade_scale = 0.2 + 0.8 * band amplitude
    wind_speed_norm = normalized sweep rate
    """
    v = to_normalized(domain, p)
    norm_freqs = (v[0], v[2], v[4])
    amps = (p.a_low, p.a_mid, p.a_high)
    tags = (BandColor.BAND_LOW, BandColor.BAND_MID, BandColor.BAND_HIGH)
    bands = tuple(
        GrassBandSpec(
            tag,
            int(round(BLADE_COUNT_MIN + 100.0 * float(nf))),
            BLADE_SCALE_MIN + 0.8 * float(amp),
        )
        for tag, nf, amp in zip(tags, norm_freqs, amps)
    )
    return GrassSceneSpec(bands, float(v[6]))
