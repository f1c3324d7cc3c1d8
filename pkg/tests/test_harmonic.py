from fractions import Fraction
from itertools import product

import pytest

from quatval.harmonic import (MULTIPLIER_TABLE, MODULES_BY_DEGREE, Gaussian, RepSum, WeightVector,
                              clebsch_gordan_product, multiplier_rows, curv_decomposition,
                              fourier_weight_multiplier, highest_weight, highest_weight_eval,
                              lambda_l_multiplier, lambda_l_power_multiplier, omega_decomposition,
                              operator_multiplier, operator_spectrum, predicted_spectrum,
                              radon_square_multiplier, stiefel_E0, stiefel_E0_perp, v0_consistency)
from quatval.scalars import ExactScalar, flag_coeff

from conftest import numeric


def test_multiplier_rows():
    rows = multiplier_rows()
    assert len(rows) == len(MULTIPLIER_TABLE) == 11
    assert all(r.ok for r in rows)


def test_module_occurrence():
    assert MODULES_BY_DEGREE[0] == ((0, 0, 0, 0),)
    assert len(MODULES_BY_DEGREE[4]) == 5


def test_weight_admissibility():
    with pytest.raises(ValueError):
        WeightVector((2, 4, 0, 0))  # not dominant
    with pytest.raises(ValueError):
        operator_multiplier("ΛL", 8, 3, (2, 1, 1, 0))


def test_radon_multiplier_matches_lambda_l():
    for k in range(4):
        for lam in MODULES_BY_DEGREE[k]:
            x = radon_square_multiplier(8, k, lam)
            assert numeric(x) > 0
            lhs = x * flag_coeff(8 - k, 1) * flag_coeff(k + 1, 1) * 2
            assert lhs == lambda_l_multiplier("ΛL", 8, k, lam)
        assert radon_square_multiplier(8, k, (0, 0, 0, 0)) == ExactScalar.parse("1")


def test_radon_multiplier_needs_admissible_degree():
    with pytest.raises(ValueError):
        radon_square_multiplier(8, 1, (2, 2, 0, 0))


def test_lambda_l_is_flag_product_on_constants():
    for k in range(8):
        lhs = lambda_l_multiplier("ΛL", 8, k, (0, 0, 0, 0))
        assert lhs == flag_coeff(8 - k, 1) * flag_coeff(k + 1, 1) * 2


def test_power_is_product_of_steps():
    lam = (4, 2, 2, 0)
    step2 = lambda_l_multiplier("ΛL", 8, 3, lam) * lambda_l_multiplier("ΛL", 8, 4, lam)
    assert lambda_l_power_multiplier(2, 8, 3, lam) == step2


@pytest.mark.parametrize("op,k", [("ΛL", 2), ("ΛL", 3), ("ΛL", 4), ("LΛ", 5), ("Λ²F", 3),
                                  ("Λ⁴F", 2), ("Λ⁶F", 1), ("Λ⁸F", 0), ("F", 4)])
def test_spectrum_from_algebra(op, k):
    assert operator_spectrum(op, k) == predicted_spectrum(op, k)


def test_gaussian_arithmetic():
    i = Gaussian(Fraction(0), Fraction(1))
    assert i * i == Gaussian(Fraction(-1))
    assert (i + Gaussian(Fraction(1))).conj() == Gaussian(Fraction(1), Fraction(-1))


def test_highest_weight_values():
    X0, X1 = stiefel_E0(4), stiefel_E0_perp(4)
    one = Gaussian(Fraction(1))
    for r in product(range(3), repeat=3):
        for s in (0, 2, 4):
            for sign in (1, -1):
                assert highest_weight_eval(4, r, s, X0, sign) == one
                c = (-1) ** (r[0] + 2 * r[1] + 3 * r[2] + 2 * s)
                assert highest_weight_eval(4, r, s, X1, sign) == Gaussian(Fraction(c))
                assert fourier_weight_multiplier(highest_weight(4, r, s, sign)) == c


def test_clebsch_gordan_dimensions_multiply():
    for a, b in product(range(0, 9, 2), repeat=2):
        prod = clebsch_gordan_product({a: 1}, {b: 1})
        assert prod.dim == (a + 1) * (b + 1)


def test_rep_sum_render_and_subtraction():
    x = RepSum.of((0, 7), (2, 8), (4, 7), (6, 1))
    assert x.render() == "7V0+8V2+7V4+V6"
    with pytest.raises(ValueError):
        RepSum.of((0, 1)) - RepSum.of((2, 1))


def test_decomposition_tables():
    assert omega_decomposition(2, 5).render() == "7V0+8V2+7V4+V6"
    assert curv_decomposition(3).render() == "7V0+3V2+6V4+V6+V8"
    assert all(r.ok for r in v0_consistency())
