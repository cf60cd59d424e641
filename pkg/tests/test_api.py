
def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}
    assert "X-Process-Time" in response.headers


def test_lie_dims(client):
    response = client.get("/lie/dims", params={"delta": -1})
    assert response.status_code == 200
    assert response.json() == {"delta": -1, "total": 16, "graded": [2, 4, 4, 4, 2], "positive": 6}


def test_bad_delta_is_rejected(client):
    response = client.get("/lie/dims", params={"delta": 2})
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "DeltaMismatch"


def test_classify(client, load_fixture):
    response = client.post("/hermitian/classify", json=load_fixture("hermitian_parabolic"))
    assert response.status_code == 200
    assert response.json()["label"] == "Parabolic"


def test_levi_form_of_quadric(client, load_fixture):
    response = client.post("/hermitian/levi-form", json=load_fixture("quadric_elliptic"))
    assert response.status_code == 200
    assert response.json()["label"] == "Elliptic"


def test_kappa(client, load_fixture):
    response = client.post("/normal-form/kappa", json=load_fixture("nonmatrix_elliptic"))
    assert response.status_code == 200
    assert response.json() == {"kappa": [1, 5], "nu": 5}


def test_domain_errors_carry_their_code(client, load_fixture):
    payload = load_fixture("nonmatrix_elliptic")
    payload["delta"] = 1
    response = client.post("/normal-form/kappa", json=payload)
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "MalformedSeries"


def test_normalize_round_trip(client, load_fixture):
    body = {"series": load_fixture("quadric_hyperbolic"), "bound": 4}
    response = client.post("/normal-form/normalize", json=body)
    assert response.status_code == 200
    result = response.json()
    assert result["report"]["satisfied"] is True
    assert result["series"]["bound"] == 4


def test_flatness_endpoint(client):
    response = client.post("/frame/flatness", json={"delta": 1, "points": 1})
    assert response.status_code == 200
    assert response.json()["flat"] is True


def test_elements_carry_their_delta(client):
    body = {"delta": -1, "op": "mul", "x": {"delta": -1, "a": [1, 1, 0, 1], "b": [1, 1, 0, 1]}, "y": {"b": [1, 1, 0, 1]}}
    response = client.post("/algebra/binary", json=body)
    assert response.status_code == 200
    assert response.json()["result"] == {"delta": -1, "a": [-1, 1, 0, 1], "b": [1, 1, 0, 1]}


def test_element_delta_must_match_request(client):
    body = {"delta": 1, "op": "conj", "x": {"delta": -1, "a": [1, 1, 0, 1]}}
    response = client.post("/algebra/unary", json=body)
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "DeltaMismatch"


def test_non_invertible_is_unprocessable(client):
    body = {"delta": 1, "op": "inverse", "x": {"a": [1, 1, 0, 1], "b": [1, 1, 0, 1]}}
    response = client.post("/algebra/unary", json=body)
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "NotInvertible"


def test_non_hermitian_form_is_a_bad_request(client):
    body = {
        "H1": [[[1, 1, 0, 1], [1, 1, 0, 1]], [[0, 1, 0, 1], [1, 1, 0, 1]]],
        "H2": [[[0, 1, 0, 1], [1, 1, 0, 1]], [[1, 1, 0, 1], [0, 1, 0, 1]]],
    }
    response = client.post("/hermitian/classify", json=body)
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "NotHermitian"
