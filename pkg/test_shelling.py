"""Tests for pulling triangulations, shellings and the antistar of x_0."""

from fractions import Fraction as F

import pytest
from hypothesis import example, given, settings, strategies as st

from check_reports import Verdict
from face_lattice import build_lattice, h_from_f_simplicial, polygon_lattice, pyramid_lattice
from facet_families import braxtope_facets, cube_facets, cyclic_facets
from rational_geometry import Realization
from shelling import (
    NotShelling,
    PropertyFails,
    SimplicialComplexOrdered,
    antistar_check,
    colex_order,
    colex_shelling_props,
    complex_f_vector,
    pull_lattice,
    pulling_triangulation,
    shallow_check,
    shelling_check,
    shelling_h,
    volume_cover_check,
)
from theorem_checks import shallow_triangulation_check

grid = st.integers(3, 6).flatmap(lambda d: st.tuples(st.just(d), st.integers(d, d + 6)))


def braxtope_lattice(d, n):
    return build_lattice(n + 1, braxtope_facets(d, n))


def test_pulling_triangulation_q46():
    delta = pulling_triangulation(4, 6)
    assert delta.facets == ((0, 1, 2, 3, 4), (0, 2, 3, 4, 5), (0, 3, 4, 5, 6))
    cert = shelling_check(delta)
    assert cert.minimal_faces == [(), (5,), (6,)]
    assert shelling_h(cert, 5).entries == (1, 2, 0, 0, 0, 0)
    assert complex_f_vector(delta).proper() == (7, 18, 22, 13, 3)


@settings(deadline=None, max_examples=30)
@given(grid)
@example((3, 3))
@example((3, 4))
def test_shelling_h_of_pulling_triangulation(dn):
    d, n = dn
    delta = pulling_triangulation(d, n)
    h = shelling_h(shelling_check(delta), d + 1)
    assert h.entries == (1, n - d) + (0,) * d
    assert h_from_f_simplicial(complex_f_vector(delta), d + 1) == h


@settings(deadline=None, max_examples=15)
@given(grid)
def test_pull_lattice_recovers_pulling_triangulation(dn):
    d, n = dn
    pulled = pull_lattice(braxtope_lattice(d, n))
    assert set(pulled) == set(pulling_triangulation(d, n))


def test_non_shelling_order_is_rejected():
    complex_ = SimplicialComplexOrdered(((0, 1, 2), (3, 4, 5)))
    with pytest.raises(NotShelling) as error:
        shelling_check(complex_)
    assert error.value.step == 2
    assert error.value.minimal_faces == [(3,), (4,), (5,)]
    assert not shelling_check(complex_, strict=False).ok


@settings(deadline=None, max_examples=15)
@given(grid)
@example((4, 6))
def test_pulling_triangulation_is_shallow(dn):
    d, n = dn
    assert shallow_check(pulling_triangulation(d, n), braxtope_lattice(d, n))


def test_pulled_cube_is_not_shallow():
    cube = build_lattice(8, cube_facets(3))
    pulled = pull_lattice(cube)
    assert len(pulled) == 6
    result = shallow_check(pulled, cube)
    assert not result
    assert result.witness == (0, 7)
    assert result.carrier_dim == 3


def test_colex_order_q34():
    assert colex_order(braxtope_facets(3, 4)) == (
        (0, 1, 2), (0, 1, 3), (1, 2, 3), (0, 2, 4), (0, 3, 4), (2, 3, 4))


@settings(deadline=None, max_examples=15)
@given(grid)
@example((4, 6))
def test_colex_shelling_properties(dn):
    d, n = dn
    family = braxtope_facets(d, n)
    steps = colex_shelling_props(braxtope_lattice(d, n), family, strict=True)
    assert len(steps) == 2 * n - d + 1
    assert steps[0].minimal_face == ()


def test_colex_shelling_of_square_pyramid_fails_quotient():
    pyramid = pyramid_lattice(polygon_lattice(4))
    with pytest.raises(PropertyFails) as error:
        colex_shelling_props(pyramid, pyramid.facets(), strict=True)
    assert error.value.step == 1
    assert error.value.which == "c"


@settings(deadline=None, max_examples=15)
@given(grid)
@example((3, 4))
@example((4, 6))
def test_antistar_triangulates_multiplex(dn):
    d, n = dn
    report = antistar_check(d, n)
    assert report.verdict is Verdict.PASS, report.witnesses


def test_volume_cover_q35():
    report = volume_cover_check(3, 5)
    assert report.verdict is Verdict.PASS, report.witnesses


def test_antistar_check_on_cyclic_lattice():
    report = antistar_check(4, 6, build_lattice(7, cyclic_facets(4, 6)))
    assert report.verdict is Verdict.FAIL
    assert "maximal antistar face mismatch {1,2,4,5}" in report.witnesses


def test_volume_cover_on_moment_curve():
    # J_i volumes on (t, t^2, t^3) sum to 180/6, the cyclic hull has 420/6
    moment = Realization(3, tuple((F(t), F(t * t), F(t ** 3)) for t in range(6)))
    report = volume_cover_check(3, 5, moment)
    assert report.verdict is Verdict.FAIL
    assert report.witnesses == ["vol(Delta) = 30 but vol(Q) = 70"]


def test_shallow_check_on_cyclic_lattice():
    report = shallow_triangulation_check(3, 5, build_lattice(6, cyclic_facets(3, 5)))
    assert report.verdict is Verdict.FAIL
    assert "lies only in the 3-face {0,1,2,3,4,5}" in report.witnesses[0]
