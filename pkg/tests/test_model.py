from fractions import Fraction

import pytest

from quatval.catalog import primitives, relations
from quatval.model import (GENERATORS, UNITS, ambient_generators, base_generators,
                           orthocomplement, special_plane, sphere_moment, to_coord)
from quatval.scalars import sphere_volume


def test_quaternion_units():
    i, j, k = UNITS["i"], UNITS["j"], UNITS["k"]
    assert i * j == k and j * k == i and k * i == j


def test_seventeen_generators():
    g = base_generators()
    assert len(GENERATORS) == 17
    assert set(GENERATORS) <= set(g)


def test_projector_and_frame_routes_agree():
    a, b = base_generators("projector"), base_generators("fast")
    for name in GENERATORS:
        assert a[name] == b[name], name


@pytest.mark.parametrize("zeta", [
    [Fraction(3, 5), Fraction(4, 5), 0, 0, 0, 0, 0, 0],
    [0, 0, Fraction(5, 13), 0, Fraction(12, 13), 0, 0, 0],
    [Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 0, 0, 0, 0, Fraction(1, 2)],
])
def test_relations_hold_away_from_base_point(zeta):
    g = ambient_generators(zeta)
    assert [label for label, expr in relations(g) if expr] == []


@pytest.mark.parametrize("m", range(2, 9))
def test_sphere_moments_sum_to_area(m):
    total = sum((sphere_moment(tuple(2 * (j == i) for j in range(m))) for i in range(m)),
                sphere_moment((0,) * m) * 0)
    assert total == sphere_volume(m)


def test_orthocomplement_is_orthogonal():
    E = special_plane([(Fraction(3, 5), Fraction(4, 5)), (1, 0)])
    F = orthocomplement(E)
    assert F.dim == 6
    for u in E.frame:
        for v in F.frame:
            assert sum(a * b for a, b in zip(u, v)) == 0


def test_off_circle_angle_rejected():
    with pytest.raises(ValueError):
        special_plane([(1, 1)])
