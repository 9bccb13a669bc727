import pytest
from starlette.testclient import TestClient

from service import IsogenyAtlasService


@pytest.fixture(scope="module")
def client():
    with TestClient(app=IsogenyAtlasService.to_asgi()) as c:
        yield c


def test_health(client):
    resp = client.post("/health", json={})
    assert resp.status_code == 200
    data = resp.json()
    assert data["status"] == "ok"
    assert data["sporadic_records"] == 11


def test_classify(client):
    resp = client.post("/v1/classify", json={"request": {"curve": "[0,-1,1,-10,-20]"}})
    assert resp.status_code == 200
    data = resp.json()
    assert data["shape"] == "L3(25)"
    assert data["table_row"] == "L3(25)/11.a-class"


def test_torsion(client):
    resp = client.post("/v1/torsion", json={"request": {"curve": "[0,16]", "short": True}})
    assert resp.status_code == 200
    assert resp.json()["torsion"] == "[3]"


def test_isogenies(client):
    resp = client.post("/v1/isogenies", json={"request": {"curve": "[0,16]", "short": True, "ell": 3}})
    assert resp.status_code == 200
    assert [r["degree"] for r in resp.json()] == [3, 3]


@pytest.mark.parametrize(
    "route, request_body",
    [
        ("/v1/classify", {"curve": "[a,b,c,d,e]"}),
        ("/v1/torsion", {"curve": "[0,0,0,0,0]"}),
        ("/v1/isogenies", {"curve": "[0,16]", "short": True, "ell": 23}),
    ],
)
def test_bad_input_is_a_client_error(client, route, request_body):
    resp = client.post(route, json={"request": request_body})
    assert resp.status_code == 400
