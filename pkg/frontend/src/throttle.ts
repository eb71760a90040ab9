// Drag-rate limiter. Slider and manual-param drags fire on every pointer
// move; the wire contract caps each drag channel at 30 messages per second,
// and the last value of a drag must always reach the server.

export interface Scheduler {
  now(): number;
  setTimeout(fn: () => void, ms: number): number;
  clearTimeout(id: number): void;
}

export const realScheduler: Scheduler = {
  now: () => Date.now(),
  setTimeout: (fn, ms) => setTimeout(fn, ms) as unknown as number,
  clearTimeout: (id) => clearTimeout(id),
};

export class Throttle<T> {
  private readonly intervalMs: number;
  private lastSentAt = -Infinity;
  private pending: { value: T } | null = null;
  private timer: number | null = null;

  constructor(
    private readonly emit: (value: T) => void,
    maxPerSecond = 30,
    private readonly sched: Scheduler = realScheduler,
  ) {
    if (!(maxPerSecond > 0)) {
      throw new Error("maxPerSecond must be positive");
    }
    // Whole milliseconds, rounded up: send times stay integer-exact on
    // integer clocks, so no float drift can squeeze an extra send into a
    // one second window.
    this.intervalMs = Math.ceil(1000 / maxPerSecond);
  }

  /** Emit now if the channel is idle, otherwise keep only the newest value
   *  and emit it when the minimum interval has elapsed. */
  push(value: T): void {
    const now = this.sched.now();
    if (this.timer === null && now - this.lastSentAt >= this.intervalMs) {
      this.lastSentAt = now;
      this.emit(value);
      return;
    }
    this.pending = { value };
    if (this.timer === null) {
      const wait = Math.max(0, this.lastSentAt + this.intervalMs - now);
      this.timer = this.sched.setTimeout(() => this.fireTrailing(), wait);
    }
  }

  /** Drop anything queued, e.g. when the socket closes mid-drag. */
  cancel(): void {
    if (this.timer !== null) {
      this.sched.clearTimeout(this.timer);
      this.timer = null;
    }
    this.pending = null;
  }

  private fireTrailing(): void {
    this.timer = null;
    if (this.pending === null) {
      return;
    }
    const now = this.sched.now();
    const remaining = this.lastSentAt + this.intervalMs - now;
    if (remaining > 0) {
      // Timer fired early; hold the value until the interval truly elapsed.
      this.timer = this.sched.setTimeout(() => this.fireTrailing(), remaining);
      return;
    }
    const value = this.pending.value;
    this.pending = null;
    this.lastSentAt = now;
    this.emit(value);
  }
}
