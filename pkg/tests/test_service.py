import pytest
from fastapi.testclient import TestClient

from fqlfunc.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_primes_endpoint(client):
    r = client.post("/primes", json={"q": 3, "degree": 2})
    assert r.status_code == 200
    body = r.json()
    assert body["schema_version"] == 1
    assert body["count_formula"] == 3
    assert body["count_enumerated"] == 3
    assert len(body["primes"]) == 3
    assert body["config"]["q"] == 3


def test_primes_validation(client):
    assert client.post("/primes", json={"q": 6, "degree": 2}).status_code == 422
    assert client.post("/primes", json={"q": 3, "degree": 0}).status_code == 422


def test_char_table_endpoint(client, tmp_path):
    r = client.post("/char-table", json={"modulus": "q=3:[0,0,1]",
                                         "cache_dir": str(tmp_path)})
    assert r.status_code == 200
    body = r.json()
    assert body["phi"] == 6
    assert body["phi_star"] == 4
    assert body["n_primitive_enumerated"] == 4
    assert len(body["characters"]) == 6
    assert body["cache_file"] and body["cache_file"].startswith(str(tmp_path))


def test_char_table_rejects_bad_modulus(client):
    assert client.post("/char-table",
                       json={"modulus": "q=3:[1]"}).status_code == 422
    assert client.post("/char-table",
                       json={"modulus": "junk"}).status_code == 422


def test_lfunc_endpoint(client):
    r = client.post("/lfunc", json={"modulus": "q=3:[0,0,1]"})
    assert r.status_code == 200
    body = r.json()
    assert body["q"] == 3
    assert len(body["entries"]) == 4  # primitive characters only
    for e in body["entries"]:
        assert e["coefficients"][0] == [1.0, 0.0] or \
            tuple(e["coefficients"][0]) == (1.0, 0.0)
        assert e["n_other_class"] == 0


def test_lfunc_single_character(client):
    r = client.post("/lfunc", json={"modulus": "q=3:[0,0,1]",
                                    "exponents": [1, 1], "zeros": False})
    assert r.status_code == 200
    assert len(r.json()["entries"]) == 1
    r2 = client.post("/lfunc", json={"modulus": "q=3:[0,0,1]",
                                     "exponents": [0, 0]})
    assert r2.status_code == 422  # trivial character has no polynomial


def test_verify_identity_endpoint(client):
    r = client.post("/verify-identity", json={"modulus": "q=3:[0,0,1]",
                                              "X": 1, "M": 100})
    assert r.status_code == 200
    body = r.json()
    assert body["all_passed"] is True
    assert body["n_characters"] == 4
    for rec in body["records"]:
        assert rec["short_sum_rel_error"] <= 1e-8
        if rec["hybrid_rel_error"] is not None:
            assert rec["hybrid_rel_error"] <= 1e-3


def test_moment_scan_endpoint(client):
    r = client.post("/moment-scan", json={
        "q": 3, "deg_r_min": 2, "deg_r_max": 2, "moduli": "primes",
        "k": 1, "X": 1, "kinds": ["L", "split"]})
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert len(rows) == 6  # 3 primes x 2 kinds
    kinds = {row["kind"] for row in rows}
    assert kinds == {"L", "split"}
    for row in rows:
        assert row["phi_star"] == 7


def test_moment_scan_threads_match_serial(client):
    base = {"q": 3, "deg_r_min": 2, "deg_r_max": 3, "moduli": "primes",
            "k": 1, "X": 1, "kinds": ["L"]}
    r1 = client.post("/moment-scan", json={**base, "threads": 1}).json()
    r4 = client.post("/moment-scan", json={**base, "threads": 4}).json()
    vals1 = [(row["modulus"], row["empirical"]) for row in r1["rows"]]
    vals4 = [(row["modulus"], row["empirical"]) for row in r4["rows"]]
    assert vals1 == vals4


def test_moment_scan_primorials_and_list(client):
    r = client.post("/moment-scan", json={
        "q": 3, "deg_r_min": 1, "deg_r_max": 4, "moduli": "primorials",
        "k": 0, "X": 1, "kinds": ["L"]})
    assert r.status_code == 200
    assert all(row["empirical"] == 1.0 for row in r.json()["rows"])
    r2 = client.post("/moment-scan", json={
        "q": 3, "deg_r_min": 1, "deg_r_max": 4, "moduli": "list",
        "modulus_list": ["q=3:[0,0,1]"], "k": 1, "X": 1, "kinds": ["Z"]})
    assert len(r2.json()["rows"]) == 1


def test_moment_scan_empty_range_rejected(client):
    r = client.post("/moment-scan", json={
        "q": 3, "deg_r_min": 4, "deg_r_max": 2, "moduli": "primes",
        "k": 1, "X": 1, "kinds": ["L"]})
    assert r.status_code == 422
    r2 = client.post("/moment-scan", json={
        "q": 3, "deg_r_min": 1, "deg_r_max": 2, "moduli": "list",
        "k": 1, "X": 1, "kinds": ["L"]})
    assert r2.status_code == 422  # list mode without moduli


def test_rmt_compare_endpoint_deterministic(client):
    req = {"N": 6, "k": 1, "samples": 150, "X": 1, "q": 3, "periods": 10,
           "seed": 5}
    a = client.post("/rmt-compare", json=req).json()
    b = client.post("/rmt-compare", json=req).json()
    assert a["char_poly_mean"] == b["char_poly_mean"]
    assert a["hadamard_mean"] == b["hadamard_mean"]
    assert a["hadamard_surrogate"] > 0
    assert a["config"]["seed"] == 5


def test_combinatorics_endpoint(client):
    r = client.post("/combinatorics-check", json={
        "q": 2, "triple_max_deg": 1, "splitting_samples": 30,
        "gamma_max_deg": 3})
    assert r.status_code == 200
    body = r.json()
    assert body["all_passed"] is True
    assert body["triples_checked"] > 0
    assert body["triples_failed"] == 0
    assert body["gamma_failed"] == 0
