// Operator console wiring. All widgets render from the last server state
// message; inputs only send intents through the client.

import { SessionClient } from "./client.js";
import { renderGrass } from "./grass.js";
import type { StateMessage } from "./protocol.js";
import { PARAM_KEYS, PARAM_LABELS } from "./protocol.js";
import { UiStore } from "./state.js";
import { drawWaveform } from "./waveform.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

const store = new UiStore();
const wsUrl = `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}/ws`;
const client = new SessionClient(store, wsUrl);

const banner = byId<HTMLDivElement>("banner");
const modeSls = byId<HTMLButtonElement>("mode-sls");
const modeManual = byId<HTMLButtonElement>("mode-manual");
const iterationLabel = byId<HTMLSpanElement>("iteration");
const hashLabel = byId<HTMLSpanElement>("state-hash");
const errorLine = byId<HTMLDivElement>("error-line");
const stimulusDot = byId<HTMLSpanElement>("stimulus-dot");

const slider = byId<HTMLInputElement>("sls-slider");
const commitButton = byId<HTMLButtonElement>("commit");
const handSlider = byId<HTMLInputElement>("hand-slider");
const handLabel = byId<HTMLSpanElement>("hand-label");
const resetSeed = byId<HTMLInputElement>("reset-seed");
const resetButton = byId<HTMLButtonElement>("reset");

const grassCanvas = byId<HTMLCanvasElement>("grass");
const waveCanvas = byId<HTMLCanvasElement>("waveform");
const grassCtx = grassCanvas.getContext("2d")!;
const waveCtx = waveCanvas.getContext("2d")!;

// Build the seven manual sliders and the parameter readout once.
const manualBox = byId<HTMLDivElement>("manual-sliders");
const paramTable = byId<HTMLTableSectionElement>("param-rows");
const manualInputs: HTMLInputElement[] = [];
const paramCells: HTMLTableCellElement[] = [];

PARAM_KEYS.forEach((key, index) => {
  const wrap = document.createElement("div");
  wrap.className = "vslider";
  const input = document.createElement("input");
  input.type = "range";
  input.min = "0";
  input.max = "1";
  input.step = "0.001";
  input.addEventListener("input", () => {
    client.dragParam(index, Number(input.value));
  });
  const caption = document.createElement("span");
  caption.textContent = PARAM_LABELS[key];
  wrap.appendChild(input);
  wrap.appendChild(caption);
  manualBox.appendChild(wrap);
  manualInputs.push(input);

  const row = document.createElement("tr");
  const name = document.createElement("td");
  name.textContent = PARAM_LABELS[key];
  const value = document.createElement("td");
  value.className = "num";
  row.appendChild(name);
  row.appendChild(value);
  paramTable.appendChild(row);
  paramCells.push(value);
});

slider.addEventListener("input", () => {
  client.dragSlider(Number(slider.value));
});
commitButton.addEventListener("click", () => {
  client.commit();
});
modeSls.addEventListener("click", () => {
  client.setMode("sls");
});
modeManual.addEventListener("click", () => {
  client.setMode("manual");
});
handSlider.addEventListener("input", () => {
  handLabel.textContent = `${handSlider.value} mm`;
  client.dragHand(Number(handSlider.value));
});
resetButton.addEventListener("click", () => {
  const seed = Number.parseInt(resetSeed.value, 10);
  if (Number.isFinite(seed)) {
    client.reset(seed);
  }
});

function renderFromState(state: StateMessage): void {
  const inSls = state.mode === "sls";
  modeSls.classList.toggle("active", inSls);
  modeManual.classList.toggle("active", !inSls);
  slider.disabled = !inSls;
  commitButton.disabled = !inSls;
  manualInputs.forEach((input) => {
    input.disabled = inSls;
  });

  if (document.activeElement !== slider) {
    slider.value = String(state.slider_t);
  }
  manualInputs.forEach((input, i) => {
    if (document.activeElement !== input) {
      input.value = String(state.manual_vector[i]);
    }
  });

  const params = state.params;
  PARAM_KEYS.forEach((key, i) => {
    paramCells[i].textContent = params[key].toFixed(3);
  });

  iterationLabel.textContent = String(state.iteration);
  hashLabel.textContent = state.state_hash;
  stimulusDot.classList.toggle("on", state.stimulus_active);
  drawWaveform(waveCtx, state.waveform_preview, waveCanvas.width, waveCanvas.height);
}

store.subscribe(() => {
  banner.textContent =
    store.status === "open"
      ? "connected"
      : store.status === "connecting"
        ? "connecting..."
        : "disconnected: inputs are inert until the service is back";
  banner.className = `banner ${store.status}`;
  errorLine.textContent = store.lastError ?? "";
  if (store.state !== null) {
    renderFromState(store.state);
  }
});

function animate(): void {
  const state = store.state;
  if (state !== null) {
    renderGrass(
      grassCtx,
      state.scene,
      performance.now() / 1000,
      grassCanvas.width,
      grassCanvas.height,
    );
  }
  requestAnimationFrame(animate);
}

client.connect();
requestAnimationFrame(animate);
