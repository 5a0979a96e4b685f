import json
import random
from pathlib import Path

import pytest

from asgder import io
from asgder.deformation import DeformationTrunc, check_def_equations
from asgder.errors import InputError
from asgder.random_data import random_homotopy, random_module, random_triple
from asgder.triples import validate_module, validate_morphism, validate_triple

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.mark.parametrize("seed", range(10))
def test_triple_round_trip(seed):
    t = random_triple(random.Random(seed), 3)
    back = io.triple_from_json(json.loads(io.dumps(io.triple_to_json(t))))
    assert io.triple_to_json(back) == io.triple_to_json(t)
    assert (back.mu, back.h, back.delta) == (t.mu, t.h, t.delta)
    assert validate_triple(back) == []


@pytest.mark.parametrize("seed", range(6))
def test_module_round_trip(seed):
    rng = random.Random(seed)
    t = random_triple(rng, 2)
    m = random_module(t, rng)
    js = io.module_to_json(m, t.dim)
    back = io.module_from_json(json.loads(io.dumps(js)), t.dim)
    assert io.module_to_json(back, t.dim) == js
    assert validate_module(t, back) == []


@pytest.mark.parametrize("seed", range(6))
def test_homotopy_round_trip(seed):
    H = random_homotopy(random.Random(seed))
    js = io.homotopy_to_json(H)
    back = io.homotopy_from_json(json.loads(io.dumps(js)))
    assert io.homotopy_to_json(back) == js


def test_deformation_round_trip():
    t = io.triple_from_json(io.load_json(SAMPLES / "dual_numbers.json"))
    d = io.deformation_from_json(io.load_json(SAMPLES / "dual_numbers_deformation.json"), t)
    assert isinstance(d, DeformationTrunc) and check_def_equations(d).holds
    again = io.deformation_from_json(json.loads(io.dumps(io.deformation_to_json(d))), t)
    assert io.deformation_to_json(again) == io.deformation_to_json(d)


def test_rationals_are_strings():
    t = io.triple_from_json({"dim": 1, "mu": [[["1/2"]]], "h": [["0"]], "delta": [[0]]})
    assert io.triple_to_json(t)["mu"] == [[["1/2"]]]


@pytest.mark.parametrize("obj, where", [
    ({"dim": 1, "mu": [[["1/0"]]], "h": [["0"]], "delta": [["0"]]}, "triple.mu[0][0][0]"),
    ({"dim": 1, "mu": [[["x"]]], "h": [["0"]], "delta": [["0"]]}, "triple.mu[0][0][0]"),
    ({"dim": 2, "mu": [[["0"]]], "h": [["0"]], "delta": [["0"]]}, "triple.mu"),
    ({"dim": 1, "mu": [[["0"]]], "h": [["0", "1"]], "delta": [["0"]]}, "triple.h[0]"),
    ({"dim": 1, "mu": [[["0"]]], "h": [["0"]]}, "triple"),
    ({"dim": -1, "mu": [], "h": [], "delta": []}, "triple.dim"),
    ({"dim": 1, "basis": ["a", "b"], "mu": [[["0"]]], "h": [["0"]], "delta": [["0"]]}, "triple.basis"),
    ({"dim": 1, "mu": [[["0"]]], "h": [["0"]], "delta": [["0"]], "unit": 3}, "triple.unit"),
])
def test_errors_carry_a_path(obj, where):
    with pytest.raises(InputError) as exc:
        io.triple_from_json(obj)
    assert str(exc.value).startswith(where)


def test_invalid_json_reports_the_position():
    with pytest.raises(InputError) as exc:
        io.loads('{"dim": 1,\n  "mu": [}', "f.json")
    assert "f.json:2:" in str(exc.value)


def test_missing_file():
    with pytest.raises(InputError):
        io.load_json(SAMPLES / "does_not_exist.json")


def test_morphism_from_json():
    t = io.triple_to_json(io.triple_from_json(io.load_json(SAMPLES / "nilpotent.json")))
    f = io.morphism_from_json({"source": t, "target": t, "map": [["1"]]})
    assert validate_morphism(f) == []


def test_dumps_is_deterministic():
    obj = {"b": [1, {"z": 1, "a": 2}], "a": "é"}
    assert io.dumps(obj) == io.dumps(json.loads(io.dumps(obj)))
    assert io.dumps(obj).index('"a"') < io.dumps(obj).index('"b"')
