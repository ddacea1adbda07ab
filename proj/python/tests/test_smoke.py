import os
import pathlib

import pytest

import leibcheck

FIXTURES = pathlib.Path(os.environ.get("LEIBCHECK_FIXTURES", "fixtures"))


def stirling(n, j):
    if n == 0 and j == 0:
        return 1
    if n == 0 or j == 0 or j > n:
        return 0
    return j * stirling(n - 1, j) + stirling(n - 1, j - 1)


def test_respectful_counts_match_stirling():
    for n in range(1, 8):
        for j in range(1, n + 1):
            assert leibcheck.respectful_count(n, j) == stirling(n, j)
    blocks = leibcheck.respectful_blocks(3, 2)
    assert [[1], [2, 3]] in blocks
    assert len(blocks) == 3


def test_koszul_signs():
    assert leibcheck.koszul_sign([1, 1], [[2], [1]]) == -1
    assert leibcheck.koszul_sign([0, 2], [[2], [1]]) == 1
    assert leibcheck.insertion_sign([1, 0, 1], 1, [1]) == 1
    assert leibcheck.insertion_sign([1, 0, 1], 1, [2]) == -1


def test_full_run_on_identity_fixture():
    report = leibcheck.run(FIXTURES / "g4_identity.json", suites=["theorem", "mc-image"])
    assert report["exit_code"] == 0
    suites = {s["suite"]: s for s in report["suites"]}
    assert suites["theorem"]["checks"]
    for check in suites["theorem"]["checks"]:
        assert check["status"] == "pass"


def test_validation_failure_raises():
    with pytest.raises(leibcheck.ValidationError):
        leibcheck.run(FIXTURES / "broken_leibniz.json")
    # suppressing validation loads it, and the structure suite reports failures
    report = leibcheck.run(FIXTURES / "broken_leibniz.json", suites=["structure"], validate=False)
    assert report["exit_code"] == 1


def test_parse_error_raises():
    with pytest.raises(leibcheck.DescriptionError):
        leibcheck.run(FIXTURES / "no_such_file.json")


def test_b_tables_of_identity_fixture():
    tables = leibcheck.b_tables(FIXTURES / "g4_identity.json", max_arity=3)
    taylor = tables["b_tables"]["taylor"]
    # the identity morphism transfers to the letterwise identity
    assert {entry["inputs"][0] for entry in taylor["1"]} == {"e0", "e1", "e2", "e3"}
    for entry in taylor["1"]:
        assert entry["output"] == [{"basis": entry["inputs"][0], "coeff": "1"}]
    assert taylor["2"] == []
    assert taylor["3"] == []


def test_session_roundtrip():
    doc = leibcheck.session(FIXTURES / "nilpotent3.json")
    assert doc["truncation_order"] == 4
    assert "n3" in doc["structures"]
