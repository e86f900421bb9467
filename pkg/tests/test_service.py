from __future__ import annotations

import json
import threading

import pytest
from fastapi.testclient import TestClient

from sgo.service import MatchStore, create_app

from conftest import fixture_text


@pytest.fixture
def store(tmp_path):
    return MatchStore(tmp_path / "matches")


@pytest.fixture
def client(store):
    return TestClient(create_app(store))


def make_match(client, **kwargs) -> dict:
    response = client.post("/match", json=kwargs or {"size": 5})
    assert response.status_code == 200
    return response.json()


def join_both(client, match) -> None:
    for token in (match["blackToken"], match["whiteToken"]):
        response = client.post(
            f"/match/{match['matchId']}/join", json={"token": token}
        )
        assert response.status_code == 200


def submit(client, match, token, turn, move):
    return client.post(
        f"/match/{match['matchId']}/move",
        json={"token": token, "turn": turn, "move": move},
    )


class TestLifecycle:
    def test_create_returns_ids_and_tokens(self, client):
        match = make_match(client, size=7)
        assert match["size"] == 7
        assert match["blackToken"] != match["whiteToken"]
        assert len(match["matchId"]) > 0

    def test_status_flows_open_to_in_progress(self, client):
        match = make_match(client)
        state = client.get(f"/match/{match['matchId']}/state").json()
        assert state["status"] == "Open"
        client.post(
            f"/match/{match['matchId']}/join", json={"token": match["blackToken"]}
        )
        state = client.get(f"/match/{match['matchId']}/state").json()
        assert state["status"] == "Open"
        assert state["joined"] == {"black": True, "white": False}
        client.post(
            f"/match/{match['matchId']}/join", json={"token": match["whiteToken"]}
        )
        state = client.get(f"/match/{match['matchId']}/state").json()
        assert state["status"] == "InProgress"

    def test_join_reports_the_callers_color(self, client):
        match = make_match(client)
        response = client.post(
            f"/match/{match['matchId']}/join", json={"token": match["whiteToken"]}
        )
        assert response.json()["color"] == "white"

    def test_custom_setup_and_turn_limit(self, client):
        match = make_match(
            client,
            size=5,
            setup=[["B", "C3"]],
            maxTurns=1,
        )
        join_both(client, match)
        state = client.get(f"/match/{match['matchId']}/state").json()
        assert "B" in state["board"]
        submit(client, match, match["blackToken"], 0, "A1")
        submit(client, match, match["whiteToken"], 0, "E5")
        state = client.get(f"/match/{match['matchId']}/state").json()
        assert state["status"] == "Finished"
        assert state["reason"] == "turn-limit"

    def test_invalid_config_is_rejected(self, client):
        response = client.post("/match", json={"size": 99})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "invalid-config"

    def test_unknown_match_is_404(self, client):
        response = client.get("/match/nope/state")
        assert response.status_code == 404
        assert response.json()["error"]["code"] == "unknown-match"


class TestCommitments:
    def test_first_commit_acknowledges_without_resolving(self, client):
        match = make_match(client)
        join_both(client, match)
        response = submit(client, match, match["blackToken"], 0, "C3")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "committed"
        assert body["resolved"] is False

    def test_pending_moves_never_leak(self, client):
        match = make_match(client)
        join_both(client, match)
        submit(client, match, match["blackToken"], 0, "C3")
        state = client.get(f"/match/{match['matchId']}/state").json()
        assert state["committed"] == {"black": True, "white": False}
        assert "C3" not in json.dumps(state)
        events = client.get(
            f"/match/{match['matchId']}/events", params={"since": 0, "wait": 0}
        ).json()
        assert "C3" not in json.dumps(events)

    def test_identical_resubmission_is_idempotent(self, client):
        match = make_match(client)
        join_both(client, match)
        first = submit(client, match, match["blackToken"], 0, "C3").json()
        second = submit(client, match, match["blackToken"], 0, "C3").json()
        assert first == second

    def test_differing_resubmission_is_rejected(self, client):
        match = make_match(client)
        join_both(client, match)
        submit(client, match, match["blackToken"], 0, "C3")
        response = submit(client, match, match["blackToken"], 0, "D4")
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "already-committed-differently"

    def test_both_commits_resolve_the_turn(self, client):
        match = make_match(client)
        join_both(client, match)
        submit(client, match, match["blackToken"], 0, "C3")
        response = submit(client, match, match["whiteToken"], 0, "C3")
        body = response.json()
        assert body["resolved"] is True
        assert body["entry"]["turn"] == 0
        assert any(e["type"] == "RedCreated" for e in body["entry"]["events"])
        state = client.get(f"/match/{match['matchId']}/state").json()
        assert state["turn"] == 1
        assert "R" in state["board"].replace("size 5", "")
        assert state["committed"] == {"black": False, "white": False}

    def test_wrong_turn_is_rejected(self, client):
        match = make_match(client)
        join_both(client, match)
        response = submit(client, match, match["blackToken"], 3, "C3")
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "wrong-turn"

    def test_moves_require_joining_first(self, client):
        match = make_match(client)
        client.post(
            f"/match/{match['matchId']}/join", json={"token": match["blackToken"]}
        )
        response = submit(client, match, match["blackToken"], 0, "C3")
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "not-joined"

    def test_bad_token_is_unauthorized(self, client):
        match = make_match(client)
        response = submit(client, match, "forged", 0, "C3")
        assert response.status_code == 403
        assert response.json()["error"]["code"] == "unauthorized"

    def test_malformed_moves_are_rejected(self, client):
        match = make_match(client)
        join_both(client, match)
        response = submit(client, match, match["blackToken"], 0, "Z99")
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "invalid-move"

    def test_occupied_point_is_rejected(self, client):
        match = make_match(client, size=5, setup=[["B", "C3"]])
        join_both(client, match)
        response = submit(client, match, match["blackToken"], 0, "C3")
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "invalid-move"

    def test_non_integer_turn_is_invalid_request(self, client):
        match = make_match(client)
        join_both(client, match)
        response = submit(client, match, match["blackToken"], "zero", "C3")
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "invalid-request"


class TestEndings:
    def test_double_pass_finishes_and_scores(self, client):
        match = make_match(client)
        join_both(client, match)
        submit(client, match, match["blackToken"], 0, "pass")
        submit(client, match, match["whiteToken"], 0, "pass")
        state = client.get(f"/match/{match['matchId']}/state").json()
        assert state["status"] == "Finished"
        assert state["reason"] == "double-pass"
        assert state["winner"] is None
        assert state["score"]["outcome"] == "tie"

    def test_resignation_awards_the_opponent(self, client):
        match = make_match(client)
        join_both(client, match)
        response = client.post(
            f"/match/{match['matchId']}/resign", json={"token": match["blackToken"]}
        )
        body = response.json()
        assert body["status"] == "Finished"
        assert body["winner"] == "white"
        assert body["reason"] == "resignation"

    def test_no_moves_after_the_end(self, client):
        match = make_match(client)
        join_both(client, match)
        client.post(
            f"/match/{match['matchId']}/resign", json={"token": match["whiteToken"]}
        )
        response = submit(client, match, match["blackToken"], 0, "C3")
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "match-finished"


class TestEvents:
    def test_since_zero_returns_all_entries(self, client):
        match = make_match(client)
        join_both(client, match)
        submit(client, match, match["blackToken"], 0, "A1")
        submit(client, match, match["whiteToken"], 0, "E5")
        body = client.get(
            f"/match/{match['matchId']}/events", params={"since": 0, "wait": 0}
        ).json()
        assert body["next"] == 1
        assert len(body["entries"]) == 1
        assert body["entries"][0]["black"] == "A1"
        assert body["entries"][0]["white"] == "E5"

    def test_since_skips_known_entries(self, client):
        match = make_match(client)
        join_both(client, match)
        submit(client, match, match["blackToken"], 0, "A1")
        submit(client, match, match["whiteToken"], 0, "E5")
        body = client.get(
            f"/match/{match['matchId']}/events", params={"since": 1, "wait": 0}
        ).json()
        assert body["entries"] == []
        assert body["next"] == 1

    def test_long_poll_wakes_on_resolution(self, store, client):
        match = make_match(client)
        join_both(client, match)
        session = store.get(match["matchId"])
        results = {}

        def waiter():
            with session.cond:
                results["body"] = session.events_since(0, wait_seconds=10.0)

        thread = threading.Thread(target=waiter)
        thread.start()
        submit(client, match, match["blackToken"], 0, "B2")
        submit(client, match, match["whiteToken"], 0, "D4")
        thread.join(timeout=10.0)
        assert not thread.is_alive()
        assert results["body"]["next"] == 1

    def test_finish_releases_waiters(self, store, client):
        match = make_match(client)
        join_both(client, match)
        session = store.get(match["matchId"])
        results = {}

        def waiter():
            with session.cond:
                results["body"] = session.events_since(0, wait_seconds=10.0)

        thread = threading.Thread(target=waiter)
        thread.start()
        client.post(
            f"/match/{match['matchId']}/resign", json={"token": match["blackToken"]}
        )
        thread.join(timeout=10.0)
        assert not thread.is_alive()
        assert results["body"]["status"] == "Finished"


class TestPersistence:
    def test_matches_survive_a_restart(self, tmp_path):
        data_dir = tmp_path / "matches"
        client = TestClient(create_app(MatchStore(data_dir)))
        match = make_match(client, size=5)
        join_both(client, match)
        submit(client, match, match["blackToken"], 0, "C3")
        submit(client, match, match["whiteToken"], 0, "C3")
        before = client.get(f"/match/{match['matchId']}/state").json()

        revived = TestClient(create_app(MatchStore(data_dir)))
        after = revived.get(f"/match/{match['matchId']}/state").json()
        assert after["board"] == before["board"]
        assert after["turn"] == before["turn"]
        assert after["status"] == before["status"]
        assert len(after["history"]) == len(before["history"])

    def test_tokens_stay_valid_after_restart(self, tmp_path):
        data_dir = tmp_path / "matches"
        client = TestClient(create_app(MatchStore(data_dir)))
        match = make_match(client, size=5)
        join_both(client, match)

        revived = TestClient(create_app(MatchStore(data_dir)))
        response = revived.post(
            f"/match/{match['matchId']}/move",
            json={"token": match["blackToken"], "turn": 0, "move": "C3"},
        )
        assert response.status_code == 200

    def test_finished_matches_stay_finished(self, tmp_path):
        data_dir = tmp_path / "matches"
        client = TestClient(create_app(MatchStore(data_dir)))
        match = make_match(client, size=5)
        join_both(client, match)
        submit(client, match, match["blackToken"], 0, "pass")
        submit(client, match, match["whiteToken"], 0, "pass")

        revived = TestClient(create_app(MatchStore(data_dir)))
        state = revived.get(f"/match/{match['matchId']}/state").json()
        assert state["status"] == "Finished"
        assert state["score"] is not None

    def test_corrupt_journal_becomes_abandoned(self, tmp_path):
        data_dir = tmp_path / "matches"
        client = TestClient(create_app(MatchStore(data_dir)))
        match = make_match(client, size=5)
        record_path = data_dir / f"{match['matchId']}.sgo"
        record_path.write_text("sgo 1\nthis journal is damaged\n")

        revived = TestClient(create_app(MatchStore(data_dir)))
        state = revived.get(f"/match/{match['matchId']}/state").json()
        assert state["status"] == "Abandoned"

    def test_memory_only_store_needs_no_directory(self):
        client = TestClient(create_app(MatchStore(None)))
        match = make_match(client, size=5)
        join_both(client, match)
        response = submit(client, match, match["blackToken"], 0, "C3")
        assert response.status_code == 200


class TestSpectators:
    def test_state_is_public_and_token_free(self, client):
        match = make_match(client)
        join_both(client, match)
        submit(client, match, match["blackToken"], 0, "B2")
        state = client.get(f"/match/{match['matchId']}/state").json()
        text = json.dumps(state)
        assert match["blackToken"] not in text
        assert match["whiteToken"] not in text
        assert "B2" not in text
