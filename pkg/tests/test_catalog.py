import pytest

from quatval.catalog import (LAMBDA_INDEX, V_INDEX, build_v, invariant_span, lambda_coord,
                             lambda_names, printed_sign_variant, stabilizer_invariant_dimension,
                             verify_relations_and_primitivity)
from quatval.exterior import DALPHA
from quatval.model import base_generators


def test_catalog_sizes():
    assert len(lambda_names()) == 28
    assert [len(LAMBDA_INDEX[k]) for k in range(8)] == [1, 2, 4, 7, 7, 4, 2, 1]
    assert sum(len(V_INDEX[k]) for k in range(8)) == 28


def test_relations_and_primitivity():
    rep = verify_relations_and_primitivity()
    assert rep.ok, rep.failed
    assert len(rep.passed) > 60


def test_perturbed_generators_are_caught():
    g = dict(base_generators())
    g["theta1_i"] = g["theta1_i"].scale(2)
    rep = verify_relations_and_primitivity(g)
    assert not rep.ok
    assert all(label for label, _ in rep.failed)


def test_printed_sign_of_one_relation_fails():
    # one printed relation only holds with the opposite sign
    assert any(expr for _, expr in printed_sign_variant(base_generators()))


@pytest.mark.parametrize("k,i", lambda_names())
def test_lambda_forms_are_primitive(k, i):
    w = lambda_coord(k, i)
    assert w and w.degree == 7
    assert not DALPHA * w


@pytest.mark.parametrize("p,q", [(0, 7), (1, 6), (2, 5), (3, 4), (4, 3), (1, 1), (2, 2)])
def test_span_rank_matches_stabilizer_invariants(p, q):
    # two independent routes: span of generator words vs kernel of the infinitesimal stabilizer action
    assert invariant_span(p, q).rank == stabilizer_invariant_dimension(p, q)


def test_v_basis_rows_are_independent():
    from quatval.linalg import rank

    for k in range(8):
        rows = [build_v(k, i).coeffs for i in V_INDEX[k]]
        assert rank(rows) == len(LAMBDA_INDEX[k])
