#!/usr/bin/env python3
"""Tour of the 7-parameter stimulus space and its unit-cube view.

Every knob the studio exposes lives in one vector: three vibration bands
(frequency + amplitude each) and the sweep rate of the focal path. The
optimizer only ever sees the normalized unit cube; physical values exist
for hardware, display, and humans.
"""

import numpy as np

from grassfeel.params import (
    PARAM_NAMES,
    default_domain,
    to_normalized,
    to_physical,
)

domain = default_domain()

print("Parameter domain:")
for d in domain.descriptors:
    print(f"  {d.name:>12}  [{d.min:g}, {d.max:g}] {d.unit}")

# The cube center is the session's starting point in manual mode.
center = to_physical(domain, np.full(7, 0.5))
print("\nCube center maps to:")
for name, value in center.to_json().items():
    print(f"  {name:>12} = {value:g}")

# Round-tripping physical -> normalized -> physical is exact to float noise.
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(1000):
    v = rng.random(7)
    back = to_normalized(domain, to_physical(domain, v))
    worst = max(worst, float(np.max(np.abs(back - v))))
print(f"\nWorst roundtrip error over 1000 random points: {worst:.3e}")

# Corners of the cube are the extreme stimuli.
quiet = to_physical(domain, np.zeros(7))
intense = to_physical(domain, np.ones(7))
print(f"\nAll-zeros corner: {quiet.f_low_hz:g} Hz low band, amplitudes "
      f"{quiet.a_low:g}/{quiet.a_mid:g}/{quiet.a_high:g}, sweep {quiet.move_freq_hz:g} Hz")
print(f"All-ones corner:  {intense.f_high_hz:g} Hz high band, amplitudes "
      f"{intense.a_low:g}/{intense.a_mid:g}/{intense.a_high:g}, sweep {intense.move_freq_hz:g} Hz")

print(f"\n{len(PARAM_NAMES)} parameters, ordered: {', '.join(PARAM_NAMES)}")
