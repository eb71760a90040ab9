"""Live design session: modes, gating, event log, deterministic replay.

The session is the single writer of all interactive state. Every accepted
inbound message appends one entry to an append-only event log together with
a hash of the resulting state, so any recorded log can be replayed bit-exactly
against a fresh session created from the same seed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Callable

import numpy as np

from . import optimizer as opt
from .params import N_PARAMS, HapticParams, ParamDomain, default_domain, to_physical
from .scene import scene_from_params
from .trajectory import FocusFrame, StmConfig, focus_at
from .waveform import (
    N_BANDS,
    RenderConfig,
    SampleBlock,
    render_block,
    render_preview,
    spec_from_params,
)


class Mode(str, Enum):
    SLS = "sls"
    MANUAL = "manual"


@dataclass(frozen=True)
class SessionConfig:
    gate_min_mm: float = 150.0
    gate_max_mm: float = 250.0
    stm: StmConfig = field(default_factory=StmConfig)
    gp: opt.GPConfig = field(default_factory=opt.GPConfig)
    render: RenderConfig = field(default_factory=RenderConfig)

    def __post_init__(self) -> None:
        if not 0.0 <= self.gate_min_mm < self.gate_max_mm:
            raise ValueError("gate window must satisfy 0 <= min < max")


@dataclass(frozen=True)
class EventLogEntry:
    seq: int
    wall_time: str
    event: dict
    state_hash: str

    def to_json(self) -> dict:
        return {
            "seq": self.seq,
            "wall_time": self.wall_time,
            "event": self.event,
            "state_hash": self.state_hash,
        }


class ReplayDivergence(Exception):
    """A replayed event produced a different state than the recorded log."""

    def __init__(self, seq: int, detail: str):
        super().__init__(f"replay diverged at seq {seq}: {detail}")
        self.seq = seq


def _utc_now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


INBOUND_TYPES = ("set_slider", "commit_choice", "set_param", "set_mode", "hand", "reset")


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


class Session:
    """Single-writer interactive state machine behind the wire protocol."""

    def __init__(
        self,
        seed: int,
        config: SessionConfig | None = None,
        clock: Callable[[], str] | None = None,
    ):
        self.config = config if config is not None else SessionConfig()
        self.clock = clock if clock is not None else _utc_now_iso
        self.domain: ParamDomain = default_domain()
        self._log: list[EventLogEntry] = []
        self._phases = np.zeros(N_BANDS)
        self._sample_index = 0
        self._init_state(seed)
        self._append_log({"type": "create", "seed": seed, "domain": self.domain.to_json()})

    # -- state ------------------------------------------------------------

    def _init_state(self, seed: int) -> None:
        self.seed = int(seed)
        self.gp_cfg = replace(self.config.gp, seed=int(seed))
        self.mode = Mode.SLS
        self.opt_state = opt.new_state(self.gp_cfg)
        self.segment = opt.next_slider(self.opt_state, self.gp_cfg)
        self.slider_t = 0.5
        self.manual_vector = opt.slider_point(self.segment, self.slider_t)
        self.hand_distance_mm: float | None = None
        self._phases = np.zeros(N_BANDS)
        self._sample_index = 0

    @property
    def active_vector(self) -> np.ndarray:
        if self.mode is Mode.SLS:
            return opt.slider_point(self.segment, self.slider_t)
        return self.manual_vector.copy()

    @property
    def current_params(self) -> HapticParams:
        return to_physical(self.domain, self.active_vector)

    @property
    def stimulus_active(self) -> bool:
        if self.hand_distance_mm is None:
            return False
        return self.config.gate_min_mm <= self.hand_distance_mm <= self.config.gate_max_mm

    @property
    def log(self) -> tuple[EventLogEntry, ...]:
        return tuple(self._log)

    def log_jsonl(self) -> str:
        return "".join(
            json.dumps(e.to_json(), sort_keys=True, separators=(",", ":")) + "\n"
            for e in self._log
        )

    # -- hashing ----------------------------------------------------------

    def state_snapshot(self) -> dict:
        """Canonical authoritative state; excludes streaming-side buffers."""
        return {
            "seed": self.seed,
            "mode": self.mode.value,
            "slider_t": self.slider_t,
            "segment": {"x0": self.segment.x0.tolist(), "x1": self.segment.x1.tolist()},
            "manual_vector": self.manual_vector.tolist(),
            "hand_distance_mm": self.hand_distance_mm,
            "gate": [self.config.gate_min_mm, self.config.gate_max_mm],
            "optimizer": opt.state_to_json(self.opt_state),
        }

    def state_hash(self) -> str:
        payload = json.dumps(self.state_snapshot(), sort_keys=True, separators=(",", ":"))
        return hashlib.blake2b(payload.encode(), digest_size=8).hexdigest()

    # -- messages ----------------------------------------------------------

    def state_message(self) -> dict:
        params = self.current_params
        preview = render_preview(
            spec_from_params(params), sample_rate_hz=self.config.render.sample_rate_hz
        )
        return {
            "type": "state",
            "seq": self._log[-1].seq if self._log else 0,
            "mode": self.mode.value,
            "iteration": self.opt_state.iteration,
            "params": params.to_json(),
            "scene": scene_from_params(self.domain, params).to_json(),
            "segment": {"x0": self.segment.x0.tolist(), "x1": self.segment.x1.tolist()},
            "slider_t": self.slider_t,
            "manual_vector": self.manual_vector.tolist(),
            "stimulus_active": self.stimulus_active,
            "hand_distance_mm": self.hand_distance_mm,
            "waveform_preview": preview.tolist(),
            "state_hash": self.state_hash(),
        }

    @staticmethod
    def _error(message: str) -> dict:
        return {"type": "error", "message": message}

    def handle_message(self, msg) -> dict:
        """Apply one inbound message; returns a state message or an error.

        Rejected messages leave the state and the event log untouched.
        """
        if not isinstance(msg, dict) or not isinstance(msg.get("type"), str):
            return self._error("message must be an object with a string 'type'")
        mtype = msg["type"]
        if mtype not in INBOUND_TYPES:
            return self._error(f"unknown message type {mtype!r}")
        handler = getattr(self, f"_on_{mtype}")
        error = handler(msg)
        if error is not None:
            return self._error(error)
        self._append_log({k: msg[k] for k in sorted(msg)})
        return self.state_message()

    def _on_set_slider(self, msg) -> str | None:
        t = msg.get("t")
        if not _is_number(t) or not np.isfinite(t) or not 0.0 <= t <= 1.0:
            return "set_slider requires 't' in [0, 1]"
        self.slider_t = float(t)
        return None

    def _on_commit_choice(self, msg) -> str | None:
        if self.mode is not Mode.SLS:
            return "commit_choice is only valid in sls mode"
        opt.incorporate_choice(self.opt_state, self.segment, self.slider_t, self.gp_cfg)
        self.segment = opt.next_slider(self.opt_state, self.gp_cfg)
        self.slider_t = 0.5
        return None

    def _on_set_param(self, msg) -> str | None:
        if self.mode is not Mode.MANUAL:
            return "set_param is only valid in manual mode"
        index = msg.get("index")
        value = msg.get("value")
        if not isinstance(index, int) or isinstance(index, bool) or not 0 <= index < N_PARAMS:
            return f"set_param requires integer 'index' in [0, {N_PARAMS - 1}]"
        if not _is_number(value) or not np.isfinite(value) or not 0.0 <= value <= 1.0:
            return "set_param requires 'value' in [0, 1]"
        self.manual_vector = self.manual_vector.copy()
        self.manual_vector[index] = float(value)
        return None

    def _on_set_mode(self, msg) -> str | None:
        raw = msg.get("mode")
        try:
            target = Mode(raw)
        except ValueError:
            return f"unknown mode {raw!r}"
        if target is Mode.MANUAL and self.mode is Mode.SLS:
            self.manual_vector = opt.slider_point(self.segment, self.slider_t)
        self.mode = target
        return None

    def _on_hand(self, msg) -> str | None:
        d = msg.get("distance_mm")
        if not _is_number(d) or not np.isfinite(d) or d < 0.0:
            return "hand requires non-negative 'distance_mm'"
        self.hand_distance_mm = float(d)
        return None

    def _on_reset(self, msg) -> str | None:
        seed = msg.get("seed")
        if not isinstance(seed, int) or isinstance(seed, bool):
            return "reset requires integer 'seed'"
        self._init_state(seed)
        return None

    def _append_log(self, event: dict) -> None:
        entry = EventLogEntry(
            seq=len(self._log),
            wall_time=self.clock(),
            event=event,
            state_hash=self.state_hash(),
        )
        self._log.append(entry)

    # -- streaming ----------------------------------------------------------

    def streaming_tick(self, t: float) -> tuple[FocusFrame, SampleBlock]:
        """Produce the focal frame at time t and the next waveform block.

        Parameters are snapshotted once per call (block boundary). When the
        hand is outside the gate window the frame amplitude is forced to
        zero but the trajectory clock and phase accumulators still advance.
        """
        params = self.current_params
        spec = spec_from_params(params)
        frame = focus_at(self.config.stm, params, spec, t)
        if not self.stimulus_active:
            frame = FocusFrame(frame.t, frame.position_mm, 0.0)
        block, self._phases = render_block(
            spec, self.config.render, self._phases, start_index=self._sample_index
        )
        self._sample_index += self.config.render.block_size
        return frame, block


def replay(entries, config: SessionConfig | None = None) -> str:
    """Re-run a recorded event log and return the final state hash.

    ``entries`` are log entries as dicts (parsed JSONL) or EventLogEntry
    objects, starting with the session's create entry. Raises
    ReplayDivergence at the first entry whose recomputed state hash differs
    from the recorded one.
    """
    normalized = [e.to_json() if isinstance(e, EventLogEntry) else e for e in entries]
    if not normalized:
        raise ValueError("empty event log")
    head = normalized[0]
    if head["event"].get("type") != "create":
        raise ValueError("event log must start with a create entry")
    session = Session(head["event"]["seed"], config)
    if session.state_hash() != head["state_hash"]:
        raise ReplayDivergence(head["seq"], "create state mismatch")
    for entry in normalized[1:]:
        reply = session.handle_message(entry["event"])
        if reply["type"] == "error":
            raise ReplayDivergence(entry["seq"], f"event rejected: {reply['message']}")
        got = session.state_hash()
        if got != entry["state_hash"]:
            raise ReplayDivergence(
                entry["seq"], f"hash {got} != recorded {entry['state_hash']}"
            )
    return session.state_hash()
