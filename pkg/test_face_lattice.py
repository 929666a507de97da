"""Tests for face lattices and their counting invariants."""

import pytest
from hypothesis import example, given, settings, strategies as st

from face_lattice import (
    FVector,
    IsolatedVertex,
    NotFaces,
    NotGraded,
    VertexAbsent,
    bipyramid_lattice,
    braxtope_closed_forms,
    build_lattice,
    f_vector,
    flag_vector,
    h_from_f_simplicial,
    interval_is_boolean,
    polygon_lattice,
    pyramid_lattice,
    reference_comparand,
    simplicial_lattice,
    vertex_figure,
)
from facet_families import braxtope_facets, cube_facets, family_from_facets, simplex_facets

grid = st.integers(3, 6).flatmap(lambda d: st.tuples(st.just(d), st.integers(d, d + 6)))


@pytest.fixture(scope="module")
def q46():
    return build_lattice(7, braxtope_facets(4, 6))


def test_q46_f_vector(q46):
    f = f_vector(q46)
    assert f.proper() == (7, 18, 20, 9)
    assert str(f) == "f = (7, 18, 20, 9)"
    assert f.euler_holds()


def test_q46_flags(q46):
    flags = flag_vector(q46)
    assert flags[(0, 2)] == 60
    assert flags[(0, 3)] == 38
    assert flags[()] == 1
    assert len(flags.entries) == 2 ** 4


def test_q46_structure(q46):
    assert q46.d == 4
    assert q46.top == tuple(range(7))
    assert q46.bottom == ()
    assert set(q46.facets()) == braxtope_facets(4, 6).facet_set()
    assert q46.is_edge(0, 6)
    assert not q46.is_edge(1, 6)
    assert q46.closure((0, 3, 4)) == (0, 3, 4)
    assert q46.closure((0, 3, 5)) == (0, 2, 3, 5, 6)
    assert q46.closure((1, 6)) == q46.top


@settings(deadline=None, max_examples=25)
@given(grid)
@example((3, 5))
@example((4, 6))
def test_lattice_matches_closed_form(dn):
    d, n = dn
    f = f_vector(build_lattice(n + 1, braxtope_facets(d, n)))
    closed, _ = braxtope_closed_forms(d, n)
    assert f == closed
    assert f.euler_holds()


def test_closed_forms_for_simplex():
    f, h = braxtope_closed_forms(3, 3)
    assert f.counts == (1, 4, 6, 4, 1)
    assert h.entries == (1, 1, 1, 1)


def test_closed_form_h_vector():
    _, h = braxtope_closed_forms(4, 6)
    assert str(h) == "h = (1, 3, 3, 3, 1)"


def test_h_of_simplex_boundary():
    f = FVector(3, (1, 4, 6, 4, 1))
    assert h_from_f_simplicial(f, 3).entries == (1, 1, 1, 1)


def test_vertex_figure_of_q34_is_a_quadrilateral():
    lattice = build_lattice(5, braxtope_facets(3, 4))
    figure = vertex_figure(lattice, 0)
    assert figure.d == 2
    assert figure.vertices == (1, 2, 3, 4)
    assert f_vector(figure).proper() == (4, 4)
    with pytest.raises(VertexAbsent):
        vertex_figure(lattice, 9)


def test_vertex_figure_of_q46_at_x0(q46):
    figure = vertex_figure(q46, 0)
    assert set(figure.facets()) == {
        (1, 2, 3), (1, 3, 4), (1, 2, 4, 5), (2, 3, 5, 6), (3, 4, 6), (4, 5, 6),
    }


def test_boolean_interval_in_pulling_triangulation_of_q46():
    delta = simplicial_lattice([(0, 1, 2, 3, 4), (0, 2, 3, 4, 5), (0, 3, 4, 5, 6)])
    assert interval_is_boolean(delta, (5,), (0, 2, 3, 4, 5))
    assert interval_is_boolean(delta, (), (0, 3, 4, 5, 6))


def test_boolean_intervals_in_square_pyramid():
    pyramid = pyramid_lattice(polygon_lattice(4))
    apex = 4
    assert not interval_is_boolean(pyramid, (apex,), pyramid.top)
    assert interval_is_boolean(pyramid, (0,), (0, 1, 2, 3))
    assert interval_is_boolean(pyramid, (), (0, 1, apex))
    with pytest.raises(NotFaces):
        pyramid.interval((0, 2), pyramid.top)


def test_comparand_constructions():
    assert f_vector(polygon_lattice(5)).proper() == (5, 5)
    assert f_vector(bipyramid_lattice(polygon_lattice(3))).proper() == (5, 9, 6)
    octahedron = reference_comparand(3, 5)
    assert f_vector(octahedron).proper() == (6, 12, 8)


def test_cube_lattice():
    cube = build_lattice(8, cube_facets(3))
    assert f_vector(cube).proper() == (8, 12, 6)
    assert cube.closure((0, 7)) == cube.top


def test_simplicial_lattice_of_two_triangles():
    lattice = simplicial_lattice([(0, 1, 2), (1, 2, 3)])
    assert lattice.d == 3
    assert f_vector(lattice).counts == (1, 4, 5, 2, 1)


def test_isolated_vertex_is_rejected():
    with pytest.raises(IsolatedVertex):
        build_lattice(5, simplex_facets(3))


def test_non_polytopal_family_is_rejected():
    with pytest.raises(NotGraded):
        build_lattice(4, family_from_facets(2, 3, [[0, 1, 2], [2, 3]]))
