import json

import pytest

from app.cli import EXIT_DOMAIN, EXIT_MALFORMED, EXIT_OK, run

WRONG_LEVI_SERIES = json.dumps(
    {
        "delta": 1,
        "bound": 4,
        "terms": [
            {"z": [1, 0], "zb": [1, 0], "u": [0, 0], "c": [[1, 1, 0, 1], [0, 1, 0, 1]]},
            {"z": [0, 1], "zb": [0, 1], "u": [0, 0], "c": [[-1, 1, 0, 1], [0, 1, 0, 1]]},
            {"z": [1, 0], "zb": [0, 1], "u": [0, 0], "c": [[0, 1, 0, 1], [1, 1, 0, 1]]},
            {"z": [0, 1], "zb": [1, 0], "u": [0, 0], "c": [[0, 1, 0, 1], [1, 1, 0, 1]]},
        ],
    }
)


NON_HERMITIAN_FORM = json.dumps(
    {
        "H1": [[[1, 1, 0, 1], [1, 1, 0, 1]], [[0, 1, 0, 1], [1, 1, 0, 1]]],
        "H2": [[[0, 1, 0, 1], [1, 1, 0, 1]], [[1, 1, 0, 1], [0, 1, 0, 1]]],
    }
)


def invoke(capsys, *argv):
    code = run(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_kappa_of_quadric(capsys):
    code, report = invoke(capsys, "kappa", "--fixture", "quadric_hyperbolic")
    assert code == EXIT_OK
    assert report == {"kappa": 0}


def test_kappa_of_nonmatrix_fixture(capsys):
    code, report = invoke(capsys, "kappa", "--fixture", "nonmatrix_elliptic")
    assert code == EXIT_OK
    assert report == {"kappa": [1, 5], "nu": 5}


def test_is_matrix(capsys):
    _, report = invoke(capsys, "is-matrix", "--fixture", "matrix_surface")
    assert report == {"matrix_surface": True}


def test_check_normal_form(capsys):
    code, report = invoke(capsys, "check-normal-form", "--fixture", "quadric_elliptic")
    assert code == EXIT_OK
    assert report["satisfied"] is True


@pytest.mark.parametrize(
    "fixture, label, exit_code",
    [
        ("hermitian_hyperbolic", "Hyperbolic", 10),
        ("hermitian_elliptic", "Elliptic", 11),
        ("hermitian_parabolic", "Parabolic", 12),
    ],
)
def test_classify_hermitian(capsys, fixture, label, exit_code):
    code, report = invoke(capsys, "classify-hermitian", "--fixture", fixture)
    assert code == EXIT_OK
    assert report["label"] == label
    code, _ = invoke(capsys, "classify-hermitian", "--fixture", fixture, "--exit-with-label")
    assert code == exit_code


def test_domain_error_exits_one(capsys):
    code, report = invoke(capsys, "kappa", WRONG_LEVI_SERIES)
    assert code == EXIT_DOMAIN
    assert report["error"] == "WrongLeviForm"


@pytest.mark.parametrize(
    "argv",
    [
        ("kappa", "{not json"),
        ("kappa",),
        ("kappa", "--fixture", "no_such_fixture"),
        ("kappa", "--fixture", "quadric_hyperbolic", "--delta", "-1"),
        ("normalize", '{"delta": 1, "bound": 4, "terms": [{"z": [1], "zb": [1, 0], "u": [0, 0], "c": [1]}]}'),
        ("classify-hermitian", NON_HERMITIAN_FORM),
    ],
)
def test_malformed_input_exits_two(capsys, argv):
    code, report = invoke(capsys, *argv)
    assert code == EXIT_MALFORMED
    assert report["error"] == "MalformedInput"


def test_lie_dims(capsys):
    code, report = invoke(capsys, "lie", "dims", "--delta", "-1")
    assert code == EXIT_OK
    assert report == {"delta": -1, "graded": [2, 4, 4, 4, 2], "total": 16, "positive": 6}


def test_lie_dump_basis(capsys):
    _, report = invoke(capsys, "lie", "dump-basis")
    assert len(report["basis"]) == 16
    assert sorted(set(report["degrees"])) == [-2, -1, 0, 1, 2]


def test_group_sigma(capsys):
    payload = json.dumps({"delta": 1, "C": {"a": [1, 1, 0, 1], "b": [0, 1, 0, 1]}})
    code, report = invoke(capsys, "group", "sigma", payload)
    assert code == EXIT_OK
    assert report["count"] == len(report["solutions"]) > 0
    assert all(s["delta"] == 1 for s in report["solutions"])


def test_out_writes_file(capsys, tmp_path):
    out = tmp_path / "kappa.json"
    code = run(["kappa", "--fixture", "quadric_elliptic", "--out", str(out)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text()) == {"kappa": 0}


def test_normalize_source_file(capsys, tmp_path, load_fixture):
    source = tmp_path / "series.json"
    source.write_text(json.dumps(load_fixture("quadric_hyperbolic")))
    code, report = invoke(capsys, "normalize", str(source), "--bound", "4")
    assert code == EXIT_OK
    assert report["series"]["bound"] == 4
    assert report["report"]["satisfied"] is True
