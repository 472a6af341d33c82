import json

import pytest

from trialg.specfile import SpecFileError, algebra_document, load, load_document, parse_algebra, store
from trialg.trialgebra import build_phi_model, build_split_model, random_perturbation


@pytest.mark.parametrize("A", [build_phi_model(3), build_split_model(), random_perturbation(build_phi_model(2), 4)])
def test_round_trip(tmp_path, A):
    p = tmp_path / "a.json"
    store(A, p)
    B = load(p)
    assert B.tensors() == A.tensors() and B.identity == A.identity
    assert all(dict(s.entries) == dict(t.entries) for s, t in zip(A.tensors(), B.tensors()))
    store(B, tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_model_reference():
    A = parse_algebra({"model": {"family": "phi_upper_triangular", "n": 2}})
    assert A == build_phi_model(2)
    C = parse_algebra({"model": {"family": "collapse", "n": 2}})
    assert C.sharp == C.left == C.right


def test_model_and_tensors_exclusive():
    with pytest.raises(SpecFileError):
        parse_algebra({"model": {"family": "phi_upper_triangular", "n": 2}, "sharp": []})


def base_doc():
    return algebra_document(build_phi_model(2))


def test_zero_denominator():
    doc = base_doc()
    doc["sharp"][0][3] = "1/0"
    with pytest.raises(SpecFileError) as info:
        parse_algebra(doc)
    assert info.value.where == "sharp[0]"


def test_index_out_of_range():
    doc = base_doc()
    doc["left"].append([0, 0, 3, "1"])
    with pytest.raises(SpecFileError):
        parse_algebra(doc)


def test_json_error_has_position(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{\n "dimension": 2,\n}')
    with pytest.raises(SpecFileError) as info:
        load_document(p)
    assert info.value.where.startswith("line 3")


def test_float_mode():
    doc = json.loads(json.dumps(base_doc()))
    A = parse_algebra(doc, "float64")
    assert A.mode == "float64" and isinstance(A.identity[0], float)
