import { describe, expect, it } from "vitest";

import { Throttle } from "../src/throttle.js";
import { FakeScheduler } from "./helpers.js";

function collector(sched: FakeScheduler) {
  const got: Array<{ value: number; at: number }> = [];
  const throttle = new Throttle<number>(
    (value) => got.push({ value, at: sched.now() }),
    30,
    sched,
  );
  return { got, throttle };
}

describe("Throttle", () => {
  it("passes a single event through immediately", () => {
    const sched = new FakeScheduler();
    const { got, throttle } = collector(sched);
    throttle.push(0.25);
    expect(got).toEqual([{ value: 0.25, at: 0 }]);
  });

  it("passes slow drags through one-for-one", () => {
    const sched = new FakeScheduler();
    const { got, throttle } = collector(sched);
    for (let i = 0; i < 10; i++) {
      throttle.push(i);
      sched.advance(100); // well under 10 events/s
    }
    expect(got.map((g) => g.value)).toEqual([0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
  });

  it("sends at most 30 during a one second burst of 100 moves", () => {
    const sched = new FakeScheduler();
    const { got, throttle } = collector(sched);
    for (let i = 0; i < 100; i++) {
      throttle.push(i / 99);
      sched.advance(10); // 100 events across 1000 ms
    }
    const within = got.filter((g) => g.at < 1000);
    expect(within.length).toBeLessThanOrEqual(30);
    expect(within.length).toBeGreaterThan(0);
  });

  it("never exceeds 30 per second in any sliding window", () => {
    const sched = new FakeScheduler();
    const { got, throttle } = collector(sched);
    // Irregular barrage: bursts alternating with pauses over 5 seconds.
    for (let i = 0; i < 500; i++) {
      throttle.push(i);
      sched.advance(i % 7 === 0 ? 31 : 3);
    }
    sched.advance(1000);
    const times = got.map((g) => g.at);
    for (const start of times) {
      const inWindow = times.filter((t) => t >= start && t < start + 1000);
      expect(inWindow.length).toBeLessThanOrEqual(30);
    }
  });

  it("always delivers the final value of a drag", () => {
    const sched = new FakeScheduler();
    const { got, throttle } = collector(sched);
    for (let i = 0; i <= 50; i++) {
      throttle.push(i / 50);
      sched.advance(2);
    }
    sched.advance(100); // let the trailing send fire
    expect(got[got.length - 1].value).toBe(1.0);
  });

  it("collapses a burst to first plus latest", () => {
    const sched = new FakeScheduler();
    const { got, throttle } = collector(sched);
    throttle.push(1);
    throttle.push(2);
    throttle.push(3);
    sched.advance(50);
    expect(got.map((g) => g.value)).toEqual([1, 3]);
  });

  it("cancel drops the queued value", () => {
    const sched = new FakeScheduler();
    const { got, throttle } = collector(sched);
    throttle.push(1);
    throttle.push(2);
    throttle.cancel();
    sched.advance(1000);
    expect(got.map((g) => g.value)).toEqual([1]);
  });

  it("keeps spacing after a trailing send", () => {
    const sched = new FakeScheduler();
    const { got, throttle } = collector(sched);
    throttle.push(1);
    throttle.push(2);
    sched.advance(40); // trailing fires at 33.33
    throttle.push(3); // only 6.67 ms after the trailing send
    sched.advance(1000);
    for (let i = 1; i < got.length; i++) {
      expect(got[i].at - got[i - 1].at).toBeGreaterThanOrEqual(1000 / 30 - 1e-9);
    }
    expect(got.map((g) => g.value)).toEqual([1, 2, 3]);
  });

  it("rejects a non-positive rate", () => {
    expect(() => new Throttle(() => undefined, 0)).toThrow(/positive/);
  });
});
