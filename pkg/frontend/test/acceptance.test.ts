// UI contract, driven end to end over a mocked message stream: blade counts
// track the scene spec exactly, drags stay within the 30 messages/s budget,
// and the screen never shows parameters the server did not confirm.

import { describe, expect, it } from "vitest";

import { layoutBlades } from "../src/grass.js";
import { SessionClient } from "../src/client.js";
import { UiStore } from "../src/state.js";
import {
  FakeScheduler,
  MockSocket,
  randomStateMessage,
  seededRng,
} from "./helpers.js";

function harness(seed: number) {
  const sched = new FakeScheduler();
  const store = new UiStore();
  const socket = new MockSocket(sched);
  const client = new SessionClient(store, "ws://test/ws", () => socket, sched);
  client.connect();
  socket.open();
  const rng = seededRng(seed);
  return { sched, store, socket, client, rng };
}

describe("UI contract", () => {
  it("renders blade counts equal to the scene spec after each of 50 random updates", () => {
    const { store, socket, rng } = harness(202608);
    for (let update = 1; update <= 50; update++) {
      const msg = randomStateMessage(rng, update);
      socket.receive(msg);
      const scene = store.state!.scene;
      const blades = layoutBlades(scene);
      for (let band = 0; band < 3; band++) {
        const rendered = blades.filter((b) => b.band === band).length;
        expect(rendered).toBe(msg.scene.bands[band].blade_count);
      }
    }
    expect(store.state!.seq).toBe(50);
  });

  it("throttles slider drag events to at most 30 per second", () => {
    const { sched, socket, client, rng } = harness(202609);
    socket.receive(randomStateMessage(rng, 0));
    // Three seconds of continuous dragging at 100 events/s.
    for (let i = 0; i < 300; i++) {
      client.dragSlider(i / 299);
      sched.advance(10);
    }
    sched.advance(200); // trailing flush
    const dragTimes = socket
      .sentMessages()
      .map((msg, i) => ({ msg, at: socket.sentAt[i] }))
      .filter(({ msg }) => msg.type === "set_slider")
      .map(({ at }) => at);
    expect(dragTimes.length).toBeGreaterThan(0);
    for (const start of [0, ...dragTimes]) {
      const inWindow = dragTimes.filter((t) => t >= start && t < start + 1000);
      expect(inWindow.length).toBeLessThanOrEqual(30);
    }
    // The final slider position still reached the server.
    const sent = socket.sentMessages().filter((m) => m.type === "set_slider");
    expect(sent[sent.length - 1]).toEqual({ type: "set_slider", t: 1.0 });
  });

  it("always displays exactly the params of the last state message", () => {
    const { sched, store, socket, client, rng } = harness(202610);
    for (let update = 1; update <= 50; update++) {
      const msg = randomStateMessage(rng, update);
      socket.receive(msg);
      // Local input between server messages must not leak into the display.
      client.dragSlider(rng());
      if (update % 7 === 0) {
        socket.receive({ type: "error", message: "rejected" });
      }
      sched.advance(40);
      expect(store.displayedParams()).toEqual(msg.params);
      expect(store.state!.state_hash).toBe(msg.state_hash);
    }
  });
});
