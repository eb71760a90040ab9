import json

import pytest
from fastapi.testclient import TestClient

from grassfeel.service import ServiceConfig, create_app, load_array_config, load_service_config
from grassfeel.session import SessionConfig


@pytest.fixture
def client():
    app = create_app(ServiceConfig(seed=7))
    with TestClient(app) as c:
        yield c


def test_get_session_snapshot(client):
    r = client.get("/session")
    assert r.status_code == 200
    body = r.json()
    assert body["type"] == "state"
    assert body["mode"] == "sls"
    assert len(body["waveform_preview"]) == 256


def test_post_session_reseeds(client):
    before = client.get("/session").json()["state_hash"]
    r = client.post("/session", json={"seed": 99})
    assert r.status_code == 200
    assert r.json()["type"] == "state"
    after = client.get("/session").json()["state_hash"]
    assert after != before
    # Same seed twice lands on the same state hash.
    again = client.post("/session", json={"seed": 99}).json()["state_hash"]
    assert again == after


def test_post_session_validates_seed(client):
    assert client.post("/session", json={"seed": "x"}).json()["type"] == "error"
    assert client.post("/session", json={"seed": True}).json()["type"] == "error"


def test_log_endpoint_is_jsonl(client):
    with client.websocket_connect("/ws") as ws:
        ws.receive_json()
        ws.send_json({"type": "set_slider", "t": 0.2})
        ws.receive_json()
    r = client.get("/session/log")
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("application/x-ndjson")
    lines = r.text.strip().split("\n")
    assert len(lines) == 2
    assert json.loads(lines[0])["event"]["type"] == "create"
    assert json.loads(lines[1])["event"] == {"t": 0.2, "type": "set_slider"}


def test_ws_sends_initial_state(client):
    with client.websocket_connect("/ws") as ws:
        first = ws.receive_json()
        assert first["type"] == "state"
        assert first["mode"] == "sls"


def test_ws_round_trip_mutation(client):
    with client.websocket_connect("/ws") as ws:
        ws.receive_json()
        ws.send_json({"type": "set_slider", "t": 0.9})
        reply = ws.receive_json()
        assert reply["type"] == "state"
        assert reply["slider_t"] == 0.9
        ws.send_json({"type": "commit_choice"})
        reply = ws.receive_json()
        assert reply["iteration"] == 1


def test_ws_error_goes_only_to_sender(client):
    with client.websocket_connect("/ws") as a, client.websocket_connect("/ws") as b:
        a.receive_json()
        b.receive_json()
        a.send_json({"type": "set_slider", "t": 9.0})
        err = a.receive_json()
        assert err["type"] == "error"
        # b only sees the next valid broadcast, not a's error.
        a.send_json({"type": "set_slider", "t": 0.25})
        assert a.receive_json()["slider_t"] == 0.25
        assert b.receive_json()["slider_t"] == 0.25


def test_ws_broadcasts_to_all_subscribers(client):
    with client.websocket_connect("/ws") as a, client.websocket_connect("/ws") as b:
        a.receive_json()
        b.receive_json()
        b.send_json({"type": "hand", "distance_mm": 200.0})
        state_a = a.receive_json()
        state_b = b.receive_json()
        assert state_a == state_b
        assert state_a["stimulus_active"] is True


def test_rest_and_ws_share_one_session(client):
    with client.websocket_connect("/ws") as ws:
        ws.receive_json()
        ws.send_json({"type": "set_mode", "mode": "manual"})
        ws.receive_json()
    assert client.get("/session").json()["mode"] == "manual"


def test_service_config_from_json(tmp_path):
    path = tmp_path / "service.json"
    path.write_text(
        json.dumps(
            {
                "seed": 5,
                "port": 9001,
                "gate_min_mm": 120.0,
                "gate_max_mm": 260.0,
                "gp": {"btl_scale": 0.2, "lengthscales": [0.4] * 7},
                "stm": {"circle_radius_mm": 6.0},
                "streaming": True,
            }
        )
    )
    cfg = load_service_config(path)
    assert cfg.seed == 5
    assert cfg.port == 9001
    assert cfg.listen_address == "127.0.0.1"
    assert cfg.session.gate_min_mm == 120.0
    assert cfg.session.gp.btl_scale == 0.2
    assert cfg.session.gp.lengthscales == (0.4,) * 7
    assert cfg.session.stm.circle_radius_mm == 6.0
    assert cfg.streaming is True


def test_service_config_defaults(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("{}")
    cfg = load_service_config(path)
    assert cfg == ServiceConfig()
    assert cfg.session == SessionConfig()


def test_array_config_from_json(tmp_path):
    path = tmp_path / "array.json"
    path.write_text(
        json.dumps(
            {
                "units": [
                    {"origin_mm": [100.0, 0.0, 0.0], "azimuth_deg": 0.0},
                    {"origin_mm": [-100.0, 0.0, 0.0], "azimuth_deg": 180.0, "tilt_deg": 10.0},
                ],
                "grid": {"columns": 4, "rows": 4, "omitted_cells": [[0, 0]]},
            }
        )
    )
    cfg = load_array_config(path)
    assert len(cfg.units) == 2
    assert cfg.units[0].tilt_deg == 15.0
    assert cfg.units[1].tilt_deg == 10.0
    assert cfg.grid.columns == 4
    assert cfg.grid.transducer_count == 15
    svc = tmp_path / "svc.json"
    svc.write_text(json.dumps({"array_config_path": str(path)}))
    app = create_app(load_service_config(svc))
    assert app.state.array_config == cfg


def test_static_dir_mounted(tmp_path):
    (tmp_path / "index.html").write_text("<h1>studio</h1>")
    app = create_app(ServiceConfig(static_dir=str(tmp_path)))
    with TestClient(app) as c:
        assert c.get("/session").json()["type"] == "state"
        r = c.get("/")
        assert r.status_code == 200
        assert "studio" in r.text
