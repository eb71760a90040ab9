// Wire protocol shared with the session service. Shapes mirror the JSON the
// server emits over /ws and REST; nothing here invents state.

export type Mode = "sls" | "manual";

export type BandColorTag = "band_low" | "band_mid" | "band_high";

export interface GrassBandSpec {
  color_tag: BandColorTag;
  blade_count: number;
  blade_scale: number;
}

export interface GrassScene {
  bands: GrassBandSpec[];
  wind_speed_norm: number;
}

export interface HapticParams {
  f_low_hz: number;
  a_low: number;
  f_mid_hz: number;
  a_mid: number;
  f_high_hz: number;
  a_high: number;
  move_freq_hz: number;
}

// Display order matches the server's parameter domain.
export const PARAM_KEYS: Array<keyof HapticParams> = [
  "f_low_hz",
  "a_low",
  "f_mid_hz",
  "a_mid",
  "f_high_hz",
  "a_high",
  "move_freq_hz",
];

export const PARAM_LABELS: Record<keyof HapticParams, string> = {
  f_low_hz: "low band freq (Hz)",
  a_low: "low band amp",
  f_mid_hz: "mid band freq (Hz)",
  a_mid: "mid band amp",
  f_high_hz: "high band freq (Hz)",
  a_high: "high band amp",
  move_freq_hz: "sweep rate (Hz)",
};

export interface StateMessage {
  type: "state";
  seq: number;
  mode: Mode;
  iteration: number;
  params: HapticParams;
  scene: GrassScene;
  segment: { x0: number[]; x1: number[] };
  slider_t: number;
  manual_vector: number[];
  stimulus_active: boolean;
  hand_distance_mm: number | null;
  waveform_preview: number[];
  state_hash: string;
}

export interface ErrorMessage {
  type: "error";
  message: string;
}

export type ServerMessage = StateMessage | ErrorMessage;

export type ClientMessage =
  | { type: "set_slider"; t: number }
  | { type: "commit_choice" }
  | { type: "set_param"; index: number; value: number }
  | { type: "set_mode"; mode: Mode }
  | { type: "hand"; distance_mm: number }
  | { type: "reset"; seed: number };

const STATE_KEYS = [
  "seq",
  "mode",
  "iteration",
  "params",
  "scene",
  "segment",
  "slider_t",
  "manual_vector",
  "stimulus_active",
  "waveform_preview",
  "state_hash",
];

/** Parse one frame off the socket. Throws on anything that is not a
 *  well-formed server message; the caller decides whether to drop or log. */
export function parseServerMessage(raw: string): ServerMessage {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    throw new Error("server frame is not JSON");
  }
  if (typeof data !== "object" || data === null || Array.isArray(data)) {
    throw new Error("server frame is not an object");
  }
  const msg = data as Record<string, unknown>;
  if (msg.type === "error") {
    if (typeof msg.message !== "string") {
      throw new Error("error frame without a message string");
    }
    return { type: "error", message: msg.message };
  }
  if (msg.type !== "state") {
    throw new Error(`unknown server frame type ${String(msg.type)}`);
  }
  for (const key of STATE_KEYS) {
    if (!(key in msg)) {
      throw new Error(`state frame missing '${key}'`);
    }
  }
  const scene = msg.scene as GrassScene;
  if (!Array.isArray(scene.bands) || scene.bands.length !== 3) {
    throw new Error("state frame scene must carry three bands");
  }
  if (!Array.isArray(msg.waveform_preview)) {
    throw new Error("state frame waveform_preview must be an array");
  }
  return msg as unknown as StateMessage;
}

export function encodeClientMessage(msg: ClientMessage): string {
  return JSON.stringify(msg);
}
