"""CLI and HTTP front ends: exit codes, shared payloads, artifact formats."""

import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from delaystab.cli import main as cli_main
from delaystab.service import create_app

PLANT = {"gain": 1.0, "delay": 1.0, "time_constants": [0.6, 0.8], "zero_constants": []}
BAD_ORDER = {"gain": 1.0, "delay": 1.0, "time_constants": [1.0], "zero_constants": [0.3]}


@pytest.fixture()
def plant_file(tmp_path):
    f = tmp_path / "plant.json"
    f.write_text(json.dumps(PLANT))
    return str(f)


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def run_cli(*args):
    return CliRunner().invoke(cli_main, list(args))


class TestCliExitCodes:
    def test_check_stabilizable_exit_zero(self, plant_file):
        res = run_cli("check", "--plant", plant_file)
        assert res.exit_code == 0
        payload = json.loads(res.output)
        assert payload["report"]["verdict"] == "Stabilizable"
        assert payload["report"]["zone"] == "Z1"

    def test_malformed_json_exit_one(self, tmp_path):
        f = tmp_path / "broken.json"
        f.write_text("{not json")
        res = run_cli("check", "--plant", str(f))
        assert res.exit_code == 1

    def test_order_violation_exit_two(self, tmp_path):
        f = tmp_path / "plant.json"
        f.write_text(json.dumps(BAD_ORDER))
        res = run_cli("check", "--plant", str(f))
        assert res.exit_code == 2

    def test_region_h_outside_interval_exit_two(self, plant_file):
        res = run_cli("region", "--plant", plant_file, "--h", "3.0")
        assert res.exit_code == 2

    def test_region_json(self, plant_file):
        res = run_cli("region", "--plant", plant_file, "--h", "0.5")
        assert res.exit_code == 0
        payload = json.loads(res.output)
        assert len(payload["polygon"]) == 3
        assert payload["interval"][0] == -1.0

    def test_verify(self, plant_file):
        res = run_cli(
            "verify", "--plant", plant_file, "--h", "0.5", "--hi", "1.0", "--hd", "0.5"
        )
        assert res.exit_code == 0
        payload = json.loads(res.output)
        assert payload["rhp_zeros"] == 0
        assert payload["certified"]


class TestCliArtifacts:
    def test_region_csv_header_and_rows(self, plant_file):
        res = run_cli("region", "--plant", plant_file, "--h", "0.5", "--format", "csv")
        lines = res.output.strip().splitlines()
        assert lines[0] == "h_i,h_d"
        assert len(lines) == 4  # header + triangle vertices

    def test_region_svg_deterministic(self, plant_file):
        a = run_cli("region", "--plant", plant_file, "--h", "0.5", "--format", "svg")
        b = run_cli("region", "--plant", plant_file, "--h", "0.5", "--format", "svg")
        assert a.output == b.output
        assert a.output.startswith("<svg")

    def test_zones_csv(self, plant_file):
        res = run_cli(
            "zones", "--plant", plant_file, "--grid", "T1:0.2:1.5:4,T2:0.2:1.5:4", "--format", "csv"
        )
        lines = res.output.strip().splitlines()
        assert lines[0] == "param1,param2,verdict,zone,phi1,phi2,poles,Ne_required,Ne_achieved"
        assert len(lines) == 17

    def test_sweep(self, plant_file):
        res = run_cli("sweep", "--plant", plant_file, "--steps", "2")
        assert res.exit_code == 0
        payload = json.loads(res.output)
        assert len(payload["slices"]) == 2


class TestService:
    def test_health(self, client):
        res = client.get("/api/health")
        assert res.status_code == 200
        assert res.json() == {"status": "ok", "schema_version": "1"}

    def test_check(self, client):
        res = client.post("/api/check", json={"plant": PLANT})
        assert res.status_code == 200
        assert res.json()["report"]["verdict"] == "Stabilizable"

    def test_region_matches_cli_payload(self, client, plant_file):
        cli_payload = json.loads(run_cli("region", "--plant", plant_file, "--h", "0.5").output)
        api_payload = client.post("/api/region", json={"plant": PLANT, "h": 0.5}).json()
        assert api_payload == cli_payload

    def test_region_h_outside_interval_422(self, client):
        res = client.post("/api/region", json={"plant": PLANT, "h": 3.0})
        assert res.status_code == 422
        body = res.json()
        assert body["interval"][0] == -1.0
        assert body["report"]["verdict"] == "Stabilizable"

    def test_missing_field_400(self, client):
        res = client.post("/api/region", json={"plant": PLANT})
        assert res.status_code == 400

    def test_invalid_plant_400(self, client):
        res = client.post("/api/check", json={"plant": {"gain": 0.0, "delay": 1.0, "time_constants": [1.0]}})
        assert res.status_code == 400

    def test_verify(self, client):
        res = client.post(
            "/api/verify", json={"plant": PLANT, "h": 0.5, "h_i": 1.0, "h_d": 0.5}
        )
        assert res.status_code == 200
        assert res.json()["rhp_zeros"] == 0

    def test_check_matches_cli_payload(self, client, plant_file):
        cli_payload = json.loads(run_cli("check", "--plant", plant_file).output)
        api_payload = client.post("/api/check", json={"plant": PLANT}).json()
        assert api_payload == cli_payload
