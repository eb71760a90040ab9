// Client-side store. The server is the single source of truth: the store
// keeps the last state message verbatim and everything on screen reads from
// it. Drag positions live in the widgets, never here.

import type { HapticParams, ServerMessage, StateMessage } from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export type StoreListener = (store: UiStore) => void;

export class UiStore {
  status: ConnectionStatus = "connecting";
  lastError: string | null = null;
  private last: StateMessage | null = null;
  private listeners: StoreListener[] = [];

  get state(): StateMessage | null {
    return this.last;
  }

  /** Parameters to display: exactly what the last state message carried. */
  displayedParams(): HapticParams | null {
    return this.last === null ? null : this.last.params;
  }

  applyServer(msg: ServerMessage): void {
    if (msg.type === "error") {
      this.lastError = msg.message;
    } else {
      this.last = msg;
      this.lastError = null;
    }
    this.notify();
  }

  setStatus(status: ConnectionStatus): void {
    this.status = status;
    this.notify();
  }

  subscribe(listener: StoreListener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) {
      listener(this);
    }
  }
}
