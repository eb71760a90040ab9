// Shared test doubles: a virtual clock, a capturing socket, and a seeded
// generator of well-formed server state messages.

import type { WireSocket } from "../src/client.js";
import type {
  GrassScene,
  HapticParams,
  StateMessage,
} from "../src/protocol.js";
import type { Scheduler } from "../src/throttle.js";

interface Task {
  id: number;
  at: number;
  fn: () => void;
}

export class FakeScheduler implements Scheduler {
  private t = 0;
  private nextId = 1;
  private tasks: Task[] = [];

  now(): number {
    return this.t;
  }

  setTimeout(fn: () => void, ms: number): number {
    const id = this.nextId++;
    this.tasks.push({ id, at: this.t + Math.max(0, ms), fn });
    return id;
  }

  clearTimeout(id: number): void {
    this.tasks = this.tasks.filter((task) => task.id !== id);
  }

  /** Advance the clock, running due tasks in timestamp order at their exact
   *  scheduled time. */
  advance(ms: number): void {
    const target = this.t + ms;
    for (;;) {
      const due = this.tasks
        .filter((task) => task.at <= target)
        .sort((a, b) => a.at - b.at)[0];
      if (due === undefined) {
        break;
      }
      this.tasks = this.tasks.filter((task) => task.id !== due.id);
      this.t = Math.max(this.t, due.at);
      due.fn();
    }
    this.t = target;
  }
}

export class MockSocket implements WireSocket {
  sent: string[] = [];
  sentAt: number[] = [];
  closed = false;
  onopen: (() => void) | null = null;
  onmessage: ((data: string) => void) | null = null;
  onclose: (() => void) | null = null;

  constructor(private readonly clock?: { now(): number }) {}

  send(data: string): void {
    this.sent.push(data);
    this.sentAt.push(this.clock?.now() ?? 0);
  }

  close(): void {
    this.closed = true;
    this.onclose?.();
  }

  open(): void {
    this.onopen?.();
  }

  receive(msg: unknown): void {
    this.onmessage?.(JSON.stringify(msg));
  }

  sentMessages(): Array<Record<string, unknown>> {
    return this.sent.map((s) => JSON.parse(s));
  }
}

// Small deterministic RNG so message streams are reproducible across runs.
export function seededRng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randomScene(rng: () => number): GrassScene {
  const tags = ["band_low", "band_mid", "band_high"] as const;
  return {
    bands: tags.map((color_tag) => ({
      color_tag,
      blade_count: 20 + Math.round(rng() * 100),
      blade_scale: 0.2 + rng() * 0.8,
    })),
    wind_speed_norm: rng(),
  };
}

export function randomParams(rng: () => number): HapticParams {
  return {
    f_low_hz: 10 + rng() * 20,
    a_low: rng(),
    f_mid_hz: 30 + rng() * 70,
    a_mid: rng(),
    f_high_hz: 100 + rng() * 200,
    a_high: rng(),
    move_freq_hz: 0.2 + rng() * 0.8,
  };
}

export function randomStateMessage(rng: () => number, seq: number): StateMessage {
  const unit = () => rng();
  return {
    type: "state",
    seq,
    mode: rng() < 0.5 ? "sls" : "manual",
    iteration: Math.floor(rng() * 20),
    params: randomParams(rng),
    scene: randomScene(rng),
    segment: {
      x0: Array.from({ length: 7 }, unit),
      x1: Array.from({ length: 7 }, unit),
    },
    slider_t: rng(),
    manual_vector: Array.from({ length: 7 }, unit),
    stimulus_active: rng() < 0.5,
    hand_distance_mm: rng() < 0.2 ? null : rng() * 400,
    waveform_preview: Array.from({ length: 256 }, () => rng() * 2 - 1),
    state_hash: seq.toString(16).padStart(16, "0"),
  };
}
