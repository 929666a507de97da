"""Tests for exact realizations and the convex hull oracle."""

from fractions import Fraction

import pytest

import rational_geometry
from face_lattice import build_lattice
from facet_families import InvalidParameters, braxtope_facets
from rational_geometry import (
    NotFullDimensional,
    Position,
    Realization,
    SearchFailed,
    affine_rank,
    classify,
    default_seed,
    hull_facets,
    orientation,
    realize_braxtope,
    realize_step,
    simplex_volume,
    standard_simplex,
    to_fraction,
)

F = Fraction


def points(*coords):
    return tuple(tuple(F(x) for x in point) for point in coords)


def test_orientation_signs():
    triangle = points((0, 0), (1, 0), (0, 1))
    assert orientation(triangle) == 1
    assert orientation((triangle[1], triangle[0], triangle[2])) == -1
    assert orientation((triangle[0], triangle[0], triangle[2])) == 0


def test_affine_rank():
    assert affine_rank(standard_simplex(3).points) == 3
    assert affine_rank(points((0, 0), (1, 1), (2, 2))) == 1


def test_hull_of_simplex_and_square():
    assert len(hull_facets(standard_simplex(4))) == 5
    square = Realization(2, points((0, 0), (1, 0), (0, 1), (1, 1)))
    assert hull_facets(square).facet_set() == {(0, 1), (0, 2), (1, 3), (2, 3)}


def test_hull_rejects_flat_point_sets():
    with pytest.raises(NotFullDimensional):
        hull_facets(Realization(2, points((0, 0), (1, 1), (2, 2))))


def test_classify_positions():
    triangle = standard_simplex(2)
    left_side = (0, 2)
    assert classify((F(1, 3), F(1, 3)), left_side, triangle) is Position.BENEATH
    assert classify(triangle[2], left_side, triangle) is Position.ON
    assert classify((F(-1, 3), F(1, 3)), left_side, triangle) is Position.BEYOND


def test_simplex_volume():
    assert simplex_volume(standard_simplex(3).points) == F(1, 6)


def test_realization_rejects_repeated_points():
    with pytest.raises(InvalidParameters):
        Realization(2, points((0, 0), (0, 0), (1, 0)))


def test_inexact_coordinates_are_rejected():
    assert to_fraction("1/10") == F(1, 10)
    for value in (0.1, 1.0, True):
        with pytest.raises(TypeError):
            to_fraction(value)
    with pytest.raises(TypeError):
        Realization.from_dict({"d": 2, "points": [[0.1, 0], [1, 0], [0, 1]]})


def test_realization_json_form():
    real = Realization(2, points((0, 0), (F(1, 2), 0), (0, F(-2, 3))))
    data = real.to_dict()
    assert data["points"][2] == ["0/1", "-2/3"]
    assert Realization.from_dict(data) == real


@pytest.mark.parametrize("d,n", [(3, 4), (3, 5), (4, 5), (4, 6), (5, 7)])
def test_realization_matches_braxtope(d, n):
    real = realize_braxtope(d, n)
    hull = hull_facets(real)
    assert hull.same_facets(braxtope_facets(d, n))
    assert len(hull) == 2 * n - d + 1


def test_step_crosses_exactly_one_facet():
    q35 = realize_braxtope(3, 5)
    q36 = realize_step(q35)
    beyond = [facet for facet in braxtope_facets(3, 5)
              if classify(q36[6], facet, q35) is Position.BEYOND]
    assert beyond == [braxtope_facets(3, 5).facet_labelled("E_5")]


def test_consecutive_vertices_are_independent():
    real = realize_braxtope(4, 7)
    for t in range(7 - 4 + 1):
        assert affine_rank(real.subset(range(t, t + 5))) == 4


def test_seed_changes_start_but_not_combinatorics():
    real = realize_braxtope(3, 6, seed=7)
    assert hull_facets(real).same_facets(braxtope_facets(3, 6))


def test_bad_seed_in_environment(monkeypatch):
    monkeypatch.setenv("BRAX_SEED", "seven")
    with pytest.raises(InvalidParameters):
        default_seed()
    monkeypatch.setenv("BRAX_SEED", "11")
    assert default_seed() == 11


def test_realize_rejects_small_dimension():
    with pytest.raises(InvalidParameters):
        realize_braxtope(2, 4)


@pytest.mark.slow
def test_realize_3_7():
    real = realize_braxtope(3, 7)
    assert len(real.points) == 8
    assert len(hull_facets(real)) == 12


@pytest.mark.slow
def test_realize_4_8_has_triangular_2_faces():
    real = realize_braxtope(4, 8)
    hull = hull_facets(real)
    assert len(hull) == 13
    lattice = build_lattice(9, hull)
    assert all(len(face) == 3 for face in lattice.faces_of_dim(2))


@pytest.mark.slow
def test_realize_5_9():
    hull = hull_facets(realize_braxtope(5, 9))
    assert hull.same_facets(braxtope_facets(5, 9))
    assert len(hull) == 14


def _failing_step_in_dimension(monkeypatch, d):
    """Make every inductive step in dimension d fail; lower dimensions still step normally."""
    original = rational_geometry.realize_step

    def step(prev, seed=None):
        if prev.d == d:
            raise SearchFailed(f"step refused in dimension {d}")
        return original(prev, seed)

    monkeypatch.setattr(rational_geometry, "realize_step", step)


@pytest.mark.parametrize("d,n", [(4, 5), (5, 6), (5, 7)])
def test_failed_step_falls_back_to_pyramid(monkeypatch, d, n):
    _failing_step_in_dimension(monkeypatch, d)
    real = realize_braxtope(d, n)
    assert len(real.points) == n + 1
    assert hull_facets(real).same_facets(braxtope_facets(d, n))


def test_pyramid_places_apices_on_unit_vectors(monkeypatch):
    _failing_step_in_dimension(monkeypatch, 5)
    real = realize_braxtope(5, 6)
    # k = 3: apices x_3, x_4 sit on e_3, e_4
    assert real[3] == (0, 0, 0, 1, 0)
    assert real[4] == (0, 0, 0, 0, 1)


def test_failed_step_beyond_pyramid_range_is_raised(monkeypatch):
    _failing_step_in_dimension(monkeypatch, 3)
    with pytest.raises(SearchFailed):
        realize_braxtope(3, 7)
