"""Tampering with a published value must turn the matching check into a failure."""

import pytest

from quatval import reference as ref
from quatval.verify import exit_code, run_verification


def _failed(target):
    reports = run_verification(target)
    return [c.name for r in reports for c in r.checks if c.status == "fail"], exit_code(reports)


def test_clean_targets_pass():
    for target in ("relations", "eigen", "globalization"):
        assert _failed(target) == ([], 0)


def test_tampered_kinematic_coefficient(monkeypatch):
    table = dict(ref.KINEMATIC_PHI)
    table["φ4,4", "φ4,4"] = "7/2561"
    monkeypatch.setattr(ref, "KINEMATIC_PHI", table)
    names, code = _failed("kinematic")
    assert code == 1 and names == ["7/2561 φ4,4⊙φ4,4"]


def test_dropped_kinematic_term_is_reported(monkeypatch):
    table = dict(ref.KINEMATIC_PHI)
    del table["φ0,0", "φ8,0"]
    monkeypatch.setattr(ref, "KINEMATIC_PHI", table)
    names, _ = _failed("kinematic")
    assert names == ["no further terms in k(χ)"]


def test_tampered_derivation_line(monkeypatch):
    table = dict(ref.DERIVATION_LAMBDA)
    table[2, 2] = {1: "-4", 2: "11"}
    monkeypatch.setattr(ref, "DERIVATION_LAMBDA", table)
    names, _ = _failed("rumin")
    assert names == ["LΛ2,2"]


def test_tampered_klain_row(monkeypatch):
    table = dict(ref.KLAIN)
    factor, coeffs = table[0, 1]
    table[0, 1] = ("2·π^4", coeffs)
    monkeypatch.setattr(ref, "KLAIN", table)
    names, _ = _failed("klain")
    assert names == ["Kl glob v1^0"]


def test_tampered_product(monkeypatch):
    table = dict(ref.PRODUCTS)
    table["κ₂", "κ₄"] = {"t⁴κ₂": "49/4·π"}
    monkeypatch.setattr(ref, "PRODUCTS", table)
    names, _ = _failed("algebra")
    assert names == ["κ₂·κ₄"]


def test_report_json_and_text():
    (rep,) = run_verification("eigen")
    data = rep.to_json()
    assert data["counts"]["pass"] == len(rep.checks)
    assert rep.render().splitlines()[-1].startswith("eigen: ")


def test_unknown_target():
    with pytest.raises(KeyError):
        run_verification("nope")
