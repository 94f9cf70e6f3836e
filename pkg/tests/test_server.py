"""HTTP session server: routes, status codes, undo, persistence."""

import json
import threading
import urllib.error
import urllib.request

import pytest

from mwb.presets import get_preset
from mwb.server import create_server


@pytest.fixture
def server():
    srv = create_server(port=0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()
    srv.server_close()


def request(base, method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(base + path, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as exc:
        return exc.code, exc.read()


def request_json(base, method, path, body=None):
    code, raw = request(base, method, path, body)
    return code, json.loads(raw)


def test_preset_session_lifecycle(server):
    code, state = request_json(server, "POST", "/session", {"preset": "a3-bfz"})
    assert code == 201
    sid = state["id"]
    assert state["variables"][0] == {
        "alias": "D_{1,2}", "frozen": False, "text": "x1", "vertex": 1
    }
    initial = request(server, "GET", f"/session/{sid}")[1]
    code, state = request_json(server, "POST", f"/session/{sid}/mutate", {"vertex": 1})
    assert code == 200
    assert state["variables"][0]["text"] == "(x2 + x3)/x1"
    assert state["variables"][0]["alias"] == "D_{2,3}"
    assert state["history"] == [1]
    code, _ = request(server, "POST", f"/session/{sid}/undo")
    assert code == 200
    # undo restores the initial state byte for byte
    assert request(server, "GET", f"/session/{sid}")[1] == initial


def test_error_codes(server):
    sid = request_json(server, "POST", "/session", {"preset": "a3-bfz"})[1]["id"]
    assert request(server, "POST", f"/session/{sid}/mutate", {"vertex": 4})[0] == 409
    assert request(server, "POST", f"/session/{sid}/undo")[0] == 409
    assert request(server, "POST", f"/session/{sid}/mutate", {"vertex": 99})[0] == 400
    assert request(server, "POST", f"/session/{sid}/mutate", {"v": 1})[0] == 400
    assert request(server, "POST", f"/session/{sid}/mutate", {"vertex": "1"})[0] == 400
    assert request(server, "GET", "/session/deadbeef")[0] == 404
    assert request(server, "POST", "/session", {"bogus": 1})[0] == 400
    assert request(server, "POST", "/session", {"preset": "nope"})[0] == 400
    assert request(server, "GET", "/nothing")[0] == 404


def test_word_session(server):
    code, state = request_json(server, "POST", "/session",
                               {"word": [1, 2, 1, 2], "cartan": "affine-a1"})
    assert code == 201
    assert state["rows"] == [1, 2, 1, 2]
    assert [v["frozen"] for v in state["variables"]] == [False, False, True, True]
    # non-reduced words are rejected at creation time
    assert request(server, "POST", "/session",
                   {"word": [1, 1], "cartan": "affine-a1"})[0] == 400
    assert request(server, "POST", "/session", {"word": [1, 2]})[0] == 400


def test_raw_seed_session(server):
    seed = get_preset("kronecker-a2").seed.to_json()
    code, state = request_json(server, "POST", "/session", {"seed": seed})
    assert code == 201
    code, state = request_json(server, "POST", f"/session/{state['id']}/mutate",
                               {"vertex": 1})
    assert state["variables"][0]["text"] == "(1 + x2^2)/x1"


def test_history_endpoint(server):
    sid = request_json(server, "POST", "/session", {"preset": "kronecker-a1"})[1]["id"]
    for vertex in (1, 2, 1):
        request(server, "POST", f"/session/{sid}/mutate", {"vertex": vertex})
    code, data = request_json(server, "GET", f"/session/{sid}/history")
    assert code == 200
    assert data == {"history": [1, 2, 1], "id": sid,
                    "origin": {"preset": "kronecker-a1"}}


def test_presets_endpoint(server):
    code, data = request_json(server, "GET", "/presets")
    assert code == 200
    assert [p["name"] for p in data["presets"]] == [
        "a3-bfz", "affine-a1-w4", "kronecker-a1", "kronecker-a2"
    ]


def test_state_dir_replay_is_byte_identical(tmp_path):
    def boot():
        srv = create_server(port=0, state_dir=tmp_path)
        thread = threading.Thread(target=srv.serve_forever, daemon=True)
        thread.start()
        return srv, f"http://127.0.0.1:{srv.server_address[1]}"

    srv, base = boot()
    sid = request_json(base, "POST", "/session", {"preset": "a3-bfz"})[1]["id"]
    for vertex in (1, 2, 3, 2):
        assert request(base, "POST", f"/session/{sid}/mutate", {"vertex": vertex})[0] == 200
    before = request(base, "GET", f"/session/{sid}")[1]
    srv.shutdown()
    srv.server_close()
    # a fresh server replays the persisted history deterministically
    srv, base = boot()
    try:
        assert request(base, "GET", f"/session/{sid}")[1] == before
    finally:
        srv.shutdown()
        srv.server_close()
