from fractions import Fraction

import pytest

from quatval.exterior import (ALPHA, DALPHA, CoordForm, Form, dz, dzeta, hodge_star_1,
                              hodge_star_1_inverse, ideal_reduce, lefschetz, lefschetz_solve,
                              primitive_part, reeb_contract)


def test_anticommuting():
    a, b = dz(2), dzeta(3)
    assert a * b == -(b * a)
    assert not a * a


def test_symplectic_power():
    top = DALPHA ** 7
    assert top and top.degree == 14
    assert not DALPHA ** 8
    assert (ALPHA * top).degree == 15


def test_reeb_contraction_of_alpha():
    assert reeb_contract(ALPHA * dz(2)) == dz(2)
    assert not reeb_contract(DALPHA)


def test_lefschetz_solve_inverts_on_image():
    x = dz(2) * dz(3) * dzeta(4) * dzeta(5) * dz(6) * dz(7) + dz(2) * dzeta(2) * dz(3) * dzeta(4) * dz(5) * dzeta(8)
    b = lefschetz(x)
    assert b == DALPHA * x
    y = lefschetz_solve(b)
    assert DALPHA * y == b


def test_primitive_part_is_primitive():
    x = dz(2) * dzeta(2) * dz(3) * dz(4) * dzeta(5) * dz(6) * dz(7)
    p = primitive_part(x)
    assert p and not DALPHA * p
    # the difference lies in the image of dalpha
    assert not primitive_part(x - p)


def test_ideal_reduce_kills_multiples():
    x = dz(2) * dzeta(5) * dz(3) * dzeta(4) * dz(6)
    assert not ideal_reduce(DALPHA * x)
    assert not ideal_reduce(ALPHA * x * dz(7))


@pytest.mark.parametrize("form", [dz(2) * dzeta(3), dz(1) * dz(5) * dzeta(8), DALPHA])
def test_star_round_trip(form):
    assert hodge_star_1_inverse(hodge_star_1(form)) == form


def test_json_round_trip():
    f = dz(2) * dzeta(3) * Fraction(3, 7) + DALPHA
    assert CoordForm.from_json(f.to_json()) == f
