import numpy as np
import pytest
from fastapi.testclient import TestClient

from xvcenter.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    r = client.get("/api/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_presets(client):
    r = client.get("/api/presets")
    assert r.status_code == 200
    data = r.json()
    assert data["species"] == ["SiV", "GeV", "SnV", "PbV"]
    assert data["manifold_params"]["SnV"]["excited"]["lambda_so_mev"] == 96.8


SCUBED_BODY = {
    "zpl_nm": 737.0,
    "ground_splitting_ghz": 50.0,
    "excited_splitting_ghz": 260.0,
    "stress_gpa": 0.5,
    "stress_direction": [0.0, 0.0, 1.0],
    "species": "SiV",
    "n_points": 5,
}


def test_scubed_zero_stress_identity(client):
    body = dict(SCUBED_BODY, stress_gpa=0.0)
    r = client.post("/api/scubed", json=body)
    assert r.status_code == 200
    data = r.json()
    assert data["ground_splitting_ghz"][-1] == pytest.approx(50.0)
    assert data["excited_splitting_ghz"][-1] == pytest.approx(260.0)
    assert data["numerical_error"] is False
    assert np.allclose(data["strain_diamond"], 0.0)


def test_scubed_outputs_complete(client):
    r = client.post("/api/scubed", json=SCUBED_BODY)
    assert r.status_code == 200
    data = r.json()
    for key in ("strain_diamond", "strain_xv", "ground_splitting_ghz",
                "excited_splitting_ghz", "zpl_shift_ghz", "zpl_nm",
                "lines_thz", "atoms"):
        assert key in data, key
    assert len(data["atoms"]["carbons"]) == 6
    assert len(data["lines_thz"]) == SCUBED_BODY["n_points"]
    # splittings grow with stress
    assert data["ground_splitting_ghz"][-1] > data["ground_splitting_ghz"][0]


def test_scubed_cantilever_preset(client):
    body = dict(SCUBED_BODY, cantilever_voltage_v=280.0)
    r = client.post("/api/scubed", json=body)
    assert r.status_code == 200
    eps = r.json()["cantilever_eps_xx"]
    # published formula with the bundled prism dimensions
    assert eps == pytest.approx(9.737e-5, rel=0.01)


def test_scubed_schema_violation_400(client):
    bad = dict(SCUBED_BODY)
    bad["stress_direction"] = "not-a-vector"
    r = client.post("/api/scubed", json=bad)
    assert r.status_code == 400
    assert any("stress_direction" in str(item.get("loc")) for item in r.json()["detail"])


def test_scubed_physics_violation_422(client):
    bad = dict(SCUBED_BODY, stress_direction=[0.0, 0.0, 0.0])
    r = client.post("/api/scubed", json=bad)
    assert r.status_code == 422
    bad = dict(SCUBED_BODY, orientation="101")
    r = client.post("/api/scubed", json=bad)
    assert r.status_code == 422


def test_spectrum_endpoint(client):
    r = client.post("/api/spectrum",
                    json={"species": "SnV", "temperature_k": 100.0, "n_cut": 14})
    assert r.status_code == 200
    data = r.json()
    labels = {ln["label"]: ln for ln in data["lines"]}
    assert labels["A3"]["intensity"] / labels["A1"]["intensity"] == pytest.approx(
        0.16, abs=0.02)
    assert len(data["lines"]) >= 12
    pols = {ln["polarization"] for ln in data["lines"]}
    assert pols == {"linear-z", "circular-+", "circular--"}


def test_spectrum_cold_limit_only_a_lines(client):
    r = client.post("/api/spectrum",
                    json={"species": "SnV", "temperature_k": 0.5, "n_cut": 12})
    assert r.status_code == 200
    assert all(ln["initial"] == "A" for ln in r.json()["lines"])


def test_spectrum_insufficient_basis_422(client):
    r = client.post("/api/spectrum", json={"species": "SnV", "n_cut": 0})
    assert r.status_code == 422


def test_spectrum_unknown_species_400(client):
    r = client.post("/api/spectrum", json={"species": "NV"})
    assert r.status_code == 400


def test_responses_are_stateless_and_cached(client):
    r1 = client.post("/api/scubed", json=SCUBED_BODY).json()
    client.post("/api/spectrum", json={"species": "SiV", "n_cut": 10})
    r2 = client.post("/api/scubed", json=SCUBED_BODY).json()
    assert r1 == r2


def test_service_matches_cli(client, tmp_path):
    """Same inputs through the HTTP facade and the CLI agree to 1e-12."""
    import csv
    from xvcenter.cli import main

    rc = main(["scubed", "--zpl-nm", "737", "--ground-split-ghz", "50",
               "--excited-split-ghz", "260", "--stress-gpa", "0.5",
               "--direction", "0", "0", "1", "--species", "SiV",
               "--n-points", "5", "--output", str(tmp_path)])
    assert rc == 0
    with (tmp_path / "scubed_curves.csv").open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    r = client.post("/api/scubed", json=SCUBED_BODY).json()
    for i, row in enumerate(rows):
        assert float(row["ground_splitting_ghz"]) == pytest.approx(
            r["ground_splitting_ghz"][i], abs=1e-12)
        assert float(row["zpl_nm"]) == pytest.approx(r["zpl_nm"][i], abs=1e-12)
