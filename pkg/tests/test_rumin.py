import pytest

from quatval.catalog import LAMBDA_INDEX, lambda_coord, lambda_names, lambda_measure
from quatval.exterior import ALPHA, horizontal, reeb_contract
from quatval.model import GENERATORS, base_generators
from quatval.rumin import (check_commutation, check_eigen_table, derivation_L, derivation_table,
                           eigensystem_P, lie_d, rumin_D, structural_d, structural_table)


@pytest.mark.parametrize("name", GENERATORS)
def test_d_squared_on_generators(name):
    g = base_generators()
    assert not lie_d(lie_d(g[name]))
    assert structural_table()[name].evaluate() == lie_d(g[name])


def test_d_alpha_is_symplectic_form():
    g = base_generators()
    assert lie_d(g["alpha"]) == g["dalpha"]


@pytest.mark.parametrize("k,i", lambda_names())
def test_rumin_differential_is_vertical(k, i):
    r = rumin_D(lambda_coord(k, i))
    assert r.certified
    assert not horizontal(r.D)
    assert r.D == ALPHA * reeb_contract(r.D)


def test_rumin_rejects_wrong_degree():
    with pytest.raises(ValueError):
        rumin_D(ALPHA)


def test_derivation_lowers_degree():
    for k in range(1, 8):
        for i in LAMBDA_INDEX[k]:
            assert derivation_L(lambda_measure(k, i)).k == k - 1


def test_derivation_table_has_27_lines():
    assert len(derivation_table("lambda")) == 27
    assert len(derivation_table("v")) == 27
    assert derivation_table("v")[0] == ("v1^1", "7v1^0")


@pytest.mark.parametrize("k", range(8))
def test_eigen_tables(k):
    assert all(ok for _, _, ok in check_eigen_table(k))
    assert check_commutation(k)


def test_eigenvalues_of_P3():
    vals = sorted(p.value for p in eigensystem_P(3) for _ in p.vectors)
    assert vals == sorted([-4, 0, -18, 0, 46, -24, -80])
