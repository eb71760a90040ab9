"""Three-band additive sine synthesis and the unipolar drive envelope.

The tactile waveform is a sum of three sinusoids (one per band). Block
rendering keeps one phase accumulator per band so parameter changes between
blocks never produce a discontinuity spike.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import HapticParams

TWO_PI = 2.0 * np.pi
N_BANDS = 3
PREVIEW_SAMPLES = 256


@dataclass(frozen=True)
class WaveformSpec:
    """Frequencies (Hz) and amplitudes (0..1) of the three vibration bands."""

    freqs_hz: tuple[float, float, float]
    amps: tuple[float, float, float]

    def __post_init__(self) -> None:
        if len(self.freqs_hz) != N_BANDS or len(self.amps) != N_BANDS:
            raise ValueError(f"exactly {N_BANDS} bands required")
        if any(f <= 0.0 for f in self.freqs_hz):
            raise ValueError("band frequencies must be positive")
        if any(a < 0.0 or a > 1.0 for a in self.amps):
            raise ValueError("band amplitudes must lie in [0, 1]")

    @property
    def bands(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.freqs_hz, self.amps))


@dataclass(frozen=True)
class RenderConfig:
    sample_rate_hz: float = 4000.0
    block_size: int = 64

    def __post_init__(self) -> None:
        # Keep comfortably above Nyquist for the highest band (300 Hz).
        if self.sample_rate_hz <= 1200.0:
            raise ValueError("sample_rate_hz must exceed twice the highest band frequency")
        if int(self.block_size) != self.block_size or self.block_size < 1:
            raise ValueError("block_size must be a positive integer")


@dataclass(frozen=True)
class SampleBlock:
    """One rendered block; start_index counts samples since stream start."""

    start_index: int
    samples: np.ndarray


def spec_from_params(p: HapticParams) -> WaveformSpec:
    return WaveformSpec(
        (p.f_low_hz, p.f_mid_hz, p.f_high_hz),
        (p.a_low, p.a_mid, p.a_high),
    )


def _norm(amps) -> float:
    # Dividing by max(1, sum) keeps quiet specs quiet instead of renormalizing
    # them up to full scale.
    return max(1.0, float(np.sum(amps)))


def sample(spec: WaveformSpec, t):
    """Bipolar waveform value at time ``t`` seconds (scalar or array), in [-1, 1]."""
    f = np.asarray(spec.freqs_hz)
    a = np.asarray(spec.amps)
    t_arr = np.asarray(t, dtype=float)
    phases = TWO_PI * np.multiply.outer(t_arr, f)
    out = np.sin(phases) @ a / _norm(a)
    if np.ndim(t) == 0:
        return float(out)
    return out


def envelope(spec: WaveformSpec, t):
    """Unipolar drive envelope in [0, 1]: (1 + sample) / 2."""
    return (1.0 + sample(spec, t)) / 2.0


def render_block(
    spec: WaveformSpec,
    cfg: RenderConfig,
    phase_state,
    start_index: int = 0,
) -> tuple[SampleBlock, np.ndarray]:
    """Render one block from the given per-band phase accumulators.

    Parameters
    ----------
    phase_state : array_like, shape (3,)
        Accumulated phase in radians for each band. Sample ``n`` of the block
        is evaluated at ``phase + n * 2*pi*f / sample_rate``; the returned
        accumulators are advanced past the block and wrapped to [0, 2*pi).

    Returns
    -------
    (SampleBlock, ndarray)
        The rendered block and the updated phase accumulators.
    """
    phases = np.asarray(phase_state, dtype=float)
    if phases.shape != (N_BANDS,):
        raise ValueError(f"phase_state must have shape ({N_BANDS},), got {phases.shape}")
    f = np.asarray(spec.freqs_hz)
    a = np.asarray(spec.amps)
    delta = TWO_PI * f / cfg.sample_rate_hz
    n = np.arange(cfg.block_size)
    samples = np.sin(phases[None, :] + np.outer(n, delta)) @ a / _norm(a)
    new_phases = np.mod(phases + cfg.block_size * delta, TWO_PI)
    return SampleBlock(start_index, samples), new_phases


def render_preview(spec: WaveformSpec, n_samples: int = PREVIEW_SAMPLES,
                   sample_rate_hz: float = 4000.0) -> np.ndarray:
    """Fixed-length zero-phase render used as the waveform display trace."""
    t = np.arange(n_samples) / sample_rate_hz
    return sample(spec, t)
