// WebSocket client for the session service. Sends intents, never state: the
// server answers every accepted mutation with a fresh state message and the
// store re-renders from that.

import type { ClientMessage, Mode } from "./protocol.js";
import { encodeClientMessage, parseServerMessage } from "./protocol.js";
import type { Scheduler } from "./throttle.js";
import { realScheduler, Throttle } from "./throttle.js";
import type { UiStore } from "./state.js";

export interface WireSocket {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onmessage: ((data: string) => void) | null;
  onclose: (() => void) | null;
}

export type SocketFactory = (url: string) => WireSocket;

export const browserSocketFactory: SocketFactory = (url) => {
  const ws = new WebSocket(url);
  const wrapper: WireSocket = {
    send: (data) => ws.send(data),
    close: () => ws.close(),
    onopen: null,
    onmessage: null,
    onclose: null,
  };
  ws.onopen = () => wrapper.onopen?.();
  ws.onmessage = (evt) => wrapper.onmessage?.(evt.data as string);
  ws.onclose = () => wrapper.onclose?.();
  ws.onerror = () => ws.close();
  return wrapper;
};

export const DRAG_MESSAGES_PER_SECOND = 30;

export class SessionClient {
  private socket: WireSocket | null = null;
  private readonly sliderDrags: Throttle<number>;
  private readonly paramDrags: Throttle<{ index: number; value: number }>;
  private readonly handUpdates: Throttle<number>;

  constructor(
    private readonly store: UiStore,
    private readonly url: string,
    private readonly factory: SocketFactory = browserSocketFactory,
    sched: Scheduler = realScheduler,
  ) {
    this.sliderDrags = new Throttle(
      (t) => this.send({ type: "set_slider", t }),
      DRAG_MESSAGES_PER_SECOND,
      sched,
    );
    this.paramDrags = new Throttle(
      ({ index, value }) => this.send({ type: "set_param", index, value }),
      DRAG_MESSAGES_PER_SECOND,
      sched,
    );
    this.handUpdates = new Throttle(
      (distance_mm) => this.send({ type: "hand", distance_mm }),
      DRAG_MESSAGES_PER_SECOND,
      sched,
    );
  }

  get connected(): boolean {
    return this.socket !== null && this.store.status === "open";
  }

  connect(): void {
    if (this.socket !== null) {
      return;
    }
    this.store.setStatus("connecting");
    const socket = this.factory(this.url);
    socket.onopen = () => this.store.setStatus("open");
    socket.onmessage = (data) => {
      let msg;
      try {
        msg = parseServerMessage(data);
      } catch {
        return; // drop frames we cannot decode
      }
      this.store.applyServer(msg);
    };
    socket.onclose = () => {
      this.socket = null;
      // Queued drag values must not outlive the connection.
      this.sliderDrags.cancel();
      this.paramDrags.cancel();
      this.handUpdates.cancel();
      this.store.setStatus("closed");
    };
    this.socket = socket;
  }

  disconnect(): void {
    this.socket?.close();
  }

  dragSlider(t: number): void {
    if (this.connected) {
      this.sliderDrags.push(t);
    }
  }

  dragParam(index: number, value: number): void {
    if (this.connected) {
      this.paramDrags.push({ index, value });
    }
  }

  dragHand(distanceMm: number): void {
    if (this.connected) {
      this.handUpdates.push(distanceMm);
    }
  }

  commit(): boolean {
    return this.send({ type: "commit_choice" });
  }

  setMode(mode: Mode): boolean {
    return this.send({ type: "set_mode", mode });
  }

  reset(seed: number): boolean {
    return this.send({ type: "reset", seed });
  }

  private send(msg: ClientMessage): boolean {
    if (!this.connected || this.socket === null) {
      return false;
    }
    this.socket.send(encodeClientMessage(msg));
    return true;
  }
}
