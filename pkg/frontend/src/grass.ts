// Grass field rendering. Each vibration band owns one color group of blades;
// the scene spec fixes the exact blade count and size per band, and the wind
// value sets how fast every blade sways.

import type { BandColorTag, GrassScene } from "./protocol.js";

export const THETA_MAX_RAD = 0.35;

// The demo leaves the three hues unspecified, so these are UI constants.
export const BAND_HUES: Record<BandColorTag, string> = {
  band_low: "#1b5e20",
  band_mid: "#43a047",
  band_high: "#c0ca33",
};

export interface BladeInstance {
  band: number;
  xNorm: number;
  yNorm: number;
  phaseJitter: number;
  heightNorm: number;
}

// Per-band seeds are fixed so a count change only appends or removes the
// tail of a band; existing blades never move.
const BAND_SEEDS = [0x6b8b4567, 0x327b23c6, 0x643c9869];

// mulberry32: tiny deterministic PRNG, uniform in [0, 1).
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function swayFrequencyRadPerSec(windSpeedNorm: number): number {
  return 0.5 + 2.0 * windSpeedNorm;
}

export function swayAngle(
  tSec: number,
  windSpeedNorm: number,
  phaseJitter: number,
): number {
  return (
    THETA_MAX_RAD * Math.sin(swayFrequencyRadPerSec(windSpeedNorm) * tSec + phaseJitter)
  );
}

/** Lay out every blade for the given scene in normalized field coordinates
 *  (x across the field, y the root position within the ground strip).
 *  Blade i of band b is a pure function of (b, i), so counts can change
 *  incrementally between frames. */
export function layoutBlades(scene: GrassScene): BladeInstance[] {
  if (scene.bands.length !== BAND_SEEDS.length) {
    throw new Error(`expected ${BAND_SEEDS.length} bands, got ${scene.bands.length}`);
  }
  const blades: BladeInstance[] = [];
  scene.bands.forEach((band, bandIndex) => {
    const draw = mulberry32(BAND_SEEDS[bandIndex]);
    for (let i = 0; i < band.blade_count; i++) {
      const xNorm = draw();
      const yNorm = draw();
      const phaseJitter = draw() * 2 * Math.PI;
      // 25% per-blade length spread so a group does not read as a hedge.
      const lengthSpread = 0.75 + 0.25 * draw();
      blades.push({
        band: bandIndex,
        xNorm,
        yNorm,
        phaseJitter,
        heightNorm: band.blade_scale * lengthSpread,
      });
    }
  });
  return blades;
}

/** Draw one animation frame. The clock is wall time in seconds; the scene is
 *  whatever state message arrived last, so network and animation stay
 *  decoupled. */
export function renderGrass(
  ctx: CanvasRenderingContext2D,
  scene: GrassScene,
  tSec: number,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#0d1f12";
  ctx.fillRect(0, 0, width, height);

  const groundTop = height * 0.55;
  ctx.fillStyle = "#16281a";
  ctx.fillRect(0, groundTop, width, height - groundTop);

  const maxBladePx = height * 0.45;
  const blades = layoutBlades(scene);
  ctx.lineCap = "round";
  for (const blade of blades) {
    const rootX = blade.xNorm * width;
    const rootY = groundTop + blade.yNorm * (height - groundTop);
    const len = blade.heightNorm * maxBladePx;
    const theta = swayAngle(tSec, scene.wind_speed_norm, blade.phaseJitter);
    const tipX = rootX + Math.sin(theta) * len;
    const tipY = rootY - Math.cos(theta) * len;
    // Bend at mid-height so the blade arcs instead of pivoting rigidly.
    const midX = rootX + Math.sin(theta * 0.4) * len * 0.5;
    const midY = rootY - Math.cos(theta * 0.4) * len * 0.5;
    ctx.strokeStyle = BAND_HUES[scene.bands[blade.band].color_tag];
    ctx.lineWidth = Math.max(1, blade.heightNorm * 2.5);
    ctx.beginPath();
    ctx.moveTo(rootX, rootY);
    ctx.quadraticCurveTo(midX, midY, tipX, tipY);
    ctx.stroke();
  }
}
