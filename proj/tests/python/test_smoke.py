import json
import math
import os
import pathlib

import pytest

import hsikit

DATA = pathlib.Path(os.environ.get("HSI_TEST_DATA", pathlib.Path(__file__).parent.parent / "data"))


def test_lens_and_s2s1():
    assert hsikit.lens(5, 1)["total_rank"] == 5
    assert hsikit.lens_intersection(3, 1)["perturbed_count"] == 3
    assert hsikit.s2s1()["total_rank"] == 2
    assert hsikit.s2s1(1)["total_rank"] == 0


def test_kunneth_round_trip():
    a = hsikit.lens(3, 1)
    b = hsikit.lens(4, 1)
    assert hsikit.kunneth(a, b)["total_rank"] == 12


def test_matrices():
    assert hsikit.euler([[2, 1], [1, 2]]) == 3
    assert hsikit.h1_order([[0]]) is None
    assert hsikit.smith([[2, 4], [6, 8]])["diagonal"] == [2, 4]
    m = hsikit.presentation_matrix({"family": "lens", "p": 7, "q": 2})
    assert abs(m[0][0]) == 7


def test_files():
    tree = json.loads((DATA / "chain22.json").read_text())
    assert hsikit.plumbing(tree) == {"minimal": True, "h1": 3}
    assert hsikit.qa(json.loads((DATA / "trefoil.json").read_text()))["verified"]
    assert not hsikit.qa(json.loads((DATA / "trefoil_bad.json").read_text()))["verified"]
    pair = json.loads((DATA / "birth_death.json").read_text())
    assert hsikit.intersect(pair["first"], pair["second"], samples=3)["pass"]


def test_normalize_and_compose():
    req = json.loads((DATA / "cerf.json").read_text())
    out = hsikit.normalize(req["word"], req["moves"])
    assert len(out["word"]["pieces"]) == 2
    c = hsikit.compose({"kind": "handle1", "genus": 1, "curve": "b1"}, {"kind": "handle2", "genus": 2, "curve": "a1"})
    assert c["source_genus"] == 1 and c["target_genus"] == 1


def test_fiber_intersection():
    u, v = hsikit.fiber_intersection([1, 0, 0, 0], [0, 1, 0, 0])
    assert math.isclose(math.hypot(*u), 0.5, rel_tol=1e-9)
    assert v == [0, 1, 0, 0]


def test_errors():
    with pytest.raises(hsikit.HsiError, match="InvalidParams"):
        hsikit.lens(4, 2)
    with pytest.raises(hsikit.HsiError, match="Schema"):
        hsikit.plumbing({"weights": "heavy"})
