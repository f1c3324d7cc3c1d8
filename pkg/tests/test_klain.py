import pytest

from quatval.catalog import lambda_measure
from quatval.klain import (VAL_DIMS, Valuation, calibration_check, f_basis, fourier,
                           klain_coordinates, lambda_klain, sample_planes)
from quatval.model import orthocomplement, special_plane
from quatval.scalars import ExactScalar
from quatval.valgebra import named, unit


def test_sample_plane_counts_exceed_dimension():
    for k in range(1, 8):
        assert len(sample_planes(k)) >= VAL_DIMS[k] + 2


def test_orientation_calibration():
    assert calibration_check()
    E5 = orthocomplement(special_plane([(1, 0), (0, 1), (1, 0)]))
    assert E5.dim == 5


def test_klain_solution_is_consistent_on_all_planes():
    # coordinates are solved on a subset of planes; the rest act as residual checks
    for k in (3, 4, 5):
        for i in (1, 2):
            v = klain_coordinates(lambda_measure(k, i))
            for E in sample_planes(k):
                assert v.klain_at(E, k) == lambda_klain(k, i, E)


def test_valuation_dimension_guard():
    with pytest.raises(ValueError):
        Valuation({4: (ExactScalar.parse("1"),)})


@pytest.mark.parametrize("k", range(9))
def test_fourier_is_an_involution(k):
    for i in range(VAL_DIMS[k]):
        v = unit(k, i)
        Fv = fourier(v)
        assert Fv.degrees() == [8 - k]
        assert fourier(Fv) == v


def test_fourier_fixes_degree_four():
    for i in range(5):
        assert fourier(unit(4, i)) == unit(4, i)


def test_fourier_of_euler_characteristic_is_volume():
    assert fourier(named("χ")) == named("vol")
