from fractions import Fraction
from pathlib import Path

import pytest

import tdlab

DATA = Path(__file__).resolve().parent.parent / "data"


def fixture(name):
    return (DATA / f"{name}.json").read_text()


def test_generate_matches_fixture():
    assert tdlab.generate() == fixture("w1")
    assert tdlab.generate(d=2) == fixture("d2")


def test_search_phi():
    assert tdlab.search_phi(2) == [["-125", "1"]]


@pytest.mark.parametrize("name", ["w1", "d2", "d3", "t121"])
def test_full_suite_passes(name):
    records = tdlab.verify(fixture(name))
    assert len(records) >= 100
    assert all(r["pass"] for r in records)


def test_suite_selection():
    records = tdlab.verify(fixture("w1"), suite="thm.KBquad")
    assert [r["check_id"] for r in records] == ["thm.KBquad"]
    assert tdlab.verify(fixture("w1"), suite="") == []


def test_export_w1():
    ops = tdlab.export(fixture("w1"))
    assert ops["psi"] == [[0, Fraction(9, 4)], [0, 0]]
    assert ops["K"] == [[2, 0], [0, Fraction(1, 2)]]
    assert ops["Lambda"] == [[Fraction(17, 4), 0], [0, Fraction(17, 4)]]


def test_decompose_t121():
    labels = [c["label"] for c in tdlab.decompose(fixture("t121"))]
    assert labels == ["L(2,1)", "L(0,1)"]


def test_canonical_round_trip():
    for name in ["w1", "d2", "d3", "t121"]:
        assert tdlab.canonical(fixture(name)) == fixture(name)


def test_errors():
    with pytest.raises(tdlab.ParseError):
        tdlab.verify("{")
    with pytest.raises(tdlab.ValidationError):
        tdlab.generate(d=2, phi=["1", "1"])
    with pytest.raises(tdlab.ParameterError):
        tdlab.generate(q="1")
    with pytest.raises(tdlab.Error):
        tdlab.export(fixture("w1"), what="nothing")
