"""Tests for polytope documents."""

import json
from fractions import Fraction

import pytest

from facet_families import InvalidParameters
from polytope_document import (
    DocumentError,
    PolytopeDocument,
    compute_invariants,
    generate_document,
    incidence_rows,
    load_document,
    save_document,
)
from rational_geometry import realize_braxtope


def test_generated_braxtope_document():
    document = generate_document("braxtope", 4, 6)
    data = document.to_dict()
    assert data["kind"] == "braxtope"
    assert data["parameters"] == {"r": None, "d": 4, "n": 6}
    assert len(data["facets"]) == 9
    assert "vertices" not in data


def test_rd_braxtope_needs_r():
    with pytest.raises(InvalidParameters):
        generate_document("rd-braxtope", 4, 5)
    assert len(generate_document("rd-braxtope", 4, 5, r=2).facets) == 8


def test_save_and_load(tmp_path):
    path = tmp_path / "q34.json"
    document = generate_document("multiplex", 3, 4)
    save_document(document, str(path))
    assert load_document(str(path)) == document


def test_document_with_vertices_is_checked():
    real = realize_braxtope(3, 5)
    document = PolytopeDocument.from_family(generate_document("braxtope", 3, 5).family(), vertices=real)
    data = document.to_dict()
    assert PolytopeDocument.from_dict(data).vertices == real

    data["facets"] = data["facets"][:-1] + [[0, 1, 5]]
    with pytest.raises(DocumentError):
        PolytopeDocument.from_dict(data)


@pytest.mark.parametrize("data", [
    [],
    {"kind": "prism", "parameters": {"d": 3, "n": 4}, "facets": [[0, 1, 2]]},
    {"kind": "custom", "parameters": {"d": 3}, "facets": [[0, 1, 2]]},
    {"kind": "custom", "parameters": {"d": 2, "n": 2}, "facets": []},
    {"kind": "custom", "parameters": {"d": 2, "n": 2}, "facets": [[1, 0], [1, 2], [0, 2]]},
    {"kind": "custom", "parameters": {"d": 2, "n": 2}, "facets": [[0, 1], [1, 2], [0, 3]]},
    {"kind": "custom", "parameters": {"d": 2, "n": 2}, "facets": [[0, 1], [0, 1, 2]]},
    {"kind": "custom", "parameters": {"d": 2, "n": 2}, "facets": [[0, 1], [1, 2], [0, 2]],
     "vertices": [["0", "0"], ["1", "0"]]},
    {"kind": "custom", "parameters": {"d": 2.7, "n": 2}, "facets": [[0, 1], [1, 2], [0, 2]]},
    {"kind": "custom", "parameters": {"d": True, "n": 1}, "facets": [[0], [1]]},
    {"kind": "custom", "parameters": {"d": 2, "n": "2"}, "facets": [[0, 1], [1, 2], [0, 2]]},
    {"kind": "custom", "parameters": {"d": 2, "n": 2}, "facets": [[0, 1], [1, 2], [0, 2]],
     "vertices": [[0.5, 0], [1, 0], [0, 1]]},
    {"kind": "custom", "parameters": {"d": 2, "n": 2}, "facets": [[0, 1], [1, 2], [0, 2]],
     "vertices": ["0 0", [1, 0], [0, 1]]},
])
def test_malformed_documents(data):
    with pytest.raises(DocumentError):
        PolytopeDocument.from_dict(data)


def test_load_rejects_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(DocumentError):
        load_document(str(path))
    with pytest.raises(DocumentError):
        load_document(str(tmp_path / "missing.json"))


def test_invariants_of_braxtope():
    invariants = compute_invariants(generate_document("braxtope", 4, 6))
    assert invariants["f"] == [1, 7, 18, 20, 9, 1]
    assert invariants["flags"]["0,2"] == 60
    assert invariants["flags"][""] == 1
    assert invariants["h"] == [1, 3, 3, 3, 1]


def test_invariants_of_simplicial_and_custom_families():
    assert compute_invariants(generate_document("cyclic", 4, 5))["h"] == [1, 2, 3, 2, 1]
    square = PolytopeDocument.from_dict(
        {"kind": "custom", "parameters": {"d": 2, "n": 3}, "facets": [[0, 1], [0, 2], [1, 3], [2, 3]]})
    assert compute_invariants(square)["h"] == [1, 2, 1]
    pyramid = PolytopeDocument.from_dict(
        {"kind": "custom", "parameters": {"d": 3, "n": 4},
         "facets": [[0, 1, 2, 3], [0, 1, 4], [0, 2, 4], [1, 3, 4], [2, 3, 4]]})
    assert compute_invariants(pyramid)["h"] is None


def test_incidence_rows_in_colex_order():
    rows = incidence_rows(generate_document("braxtope", 3, 4))
    assert rows == [
        "1 1 1 0 0",
        "1 1 0 1 0",
        "0 1 1 1 0",
        "1 0 1 0 1",
        "1 0 0 1 1",
        "0 0 1 1 1",
    ]


def test_round_trip_preserves_invariants(tmp_path):
    document = generate_document("braxtope", 3, 6)
    document.invariants = compute_invariants(document)
    path = tmp_path / "q36.json"
    save_document(document, str(path))
    loaded = load_document(str(path))
    assert json.loads(json.dumps(loaded.invariants)) == compute_invariants(loaded)


def test_unused_vertex_is_rejected_before_building_the_family():
    data = {"kind": "custom", "parameters": {"d": 2, "n": 10 ** 12}, "facets": [[0, 1], [1, 2], [0, 2]]}
    with pytest.raises(DocumentError, match="vertex 3 lies in no facet"):
        PolytopeDocument.from_dict(data)


def test_exact_string_coordinates_are_accepted():
    data = {"kind": "custom", "parameters": {"d": 2, "n": 2}, "facets": [[0, 1], [0, 2], [1, 2]],
            "vertices": [["0", "0"], ["1/10", 0], [0, "1"]]}
    document = PolytopeDocument.from_dict(data)
    assert document.vertices[1] == (Fraction(1, 10), 0)
