#!/usr/bin/env python3
"""Event-sourced session: drive it with messages, then replay the log.

Every accepted message appends one log entry carrying a hash of the
resulting state. Replaying the log in a fresh process reproduces every
hash; flipping a single recorded value is caught at the exact entry.
"""

import json

from grassfeel.benchmark import deterministic_clock
from grassfeel.session import ReplayDivergence, Session, replay

session = Session(seed=2026, clock=deterministic_clock())

script = [
    {"type": "hand", "distance_mm": 190.0},
    {"type": "set_slider", "t": 0.8},
    {"type": "commit_choice"},
    {"type": "set_slider", "t": 0.35},
    {"type": "commit_choice"},
    {"type": "set_mode", "mode": "manual"},
    {"type": "set_param", "index": 1, "value": 0.95},
    {"type": "hand", "distance_mm": 400.0},
]
for msg in script:
    reply = session.handle_message(msg)
    assert reply["type"] == "state", reply

print(f"Session ran {len(session.log)} events; "
      f"stimulus active: {session.stimulus_active}")
print(f"Final state hash: {session.state_hash()}\n")

print("Event log:")
for entry in session.log:
    kind = entry.event["type"]
    rest = {k: v for k, v in entry.event.items() if k not in ("type", "domain")}
    print(f"  seq {entry.seq:>2}  {kind:<13} {json.dumps(rest) if rest else '':<32} "
          f"hash {entry.state_hash}")

# Replay from the serialized JSONL, as a fresh process would.
entries = [json.loads(line) for line in session.log_jsonl().strip().split("\n")]
final = replay(entries)
print(f"\nReplay reproduced final hash: {final == session.state_hash()}")

prefix = entries[:4]
print(f"Prefix replay (4 entries) matches recorded intermediate hash: "
      f"{replay(prefix) == entries[3]['state_hash']}")

# Tamper with one recorded choice and watch the replay refuse it.
tampered = json.loads(json.dumps(entries))
tampered[2]["event"]["t"] = 0.81
try:
    replay(tampered)
    print("Tampered log replayed cleanly (unexpected)")
except ReplayDivergence as exc:
    print(f"Tampered log rejected: {exc}")
