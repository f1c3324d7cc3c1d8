import json

import pytest

from quatval import cli, verify
from quatval.linalg import InconsistentSystem


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_klain_degree_zero_row(capsys):
    code, out, _ = run(capsys, "emit", "table", "klain", "--degree", "0")
    assert code == 0
    assert out == "v_1^0: -2·π^4\n"


def test_kinematic_latex_lines(capsys):
    code, out, _ = run(capsys, "emit", "table", "kinematic", "--basis", "phi", "--format", "latex")
    lines = out.splitlines()
    assert "7/2560 φ_{4,4}⊙φ_{4,4}" in lines
    assert "64/35\\pi^{-1} φ_{1,0}⊙φ_{7,0}" in lines
    assert len(lines) == 30


def test_pd_table(capsys):
    code, out, _ = run(capsys, "emit", "table", "pd", "--basis", "tkn", "--format", "json")
    data = json.loads(out)
    assert len(data["rows"]) == 19 and all(len(r["row"]) == 19 for r in data["rows"])
    k4 = data["labels"].index("κ₄")
    assert data["rows"][k4]["row"][k4] == "1680"


@pytest.mark.parametrize("name", ["derivation", "klain", "pd", "kinematic", "multipliers",
                                  "dimensions", "lambda-catalog"])
def test_json_round_trip(capsys, name):
    code, out, _ = run(capsys, "emit", "table", name, "--format", "json")
    assert code == 0
    again = cli.render_table(json.loads(out), "json")
    assert again == out


def test_emit_is_deterministic(capsys):
    first = run(capsys, "emit", "table", "derivation", "--basis", "v")[1]
    assert run(capsys, "emit", "table", "derivation", "--basis", "v")[1] == first
    assert first.splitlines()[0] == "L(v1^1) = 7v1^0"


def test_products_table_degree_filter(capsys):
    code, out, _ = run(capsys, "emit", "table", "products", "--basis", "tkn", "--degree", "4")
    assert code == 0
    lines = out.splitlines()
    assert "κ₂·κ₂ = 8/5·π^2·t⁴ - 59/8·π·t²κ₂ + 98/5·κ₄ - 49/30·tν₃" in lines
    assert "t²·t² = t⁴" in lines


def test_unknown_table_exit_2(capsys):
    code, _, err = run(capsys, "emit", "table", "nope")
    assert code == 2
    assert "usage" in err


def test_unknown_target_exit_2(capsys):
    assert run(capsys, "verify", "nope")[0] == 2


def test_output_file(tmp_path, capsys):
    out = tmp_path / "m.txt"
    assert run(capsys, "emit", "table", "multipliers", "--out", str(out))[0] == 0
    assert out.read_text().count("[pass]") == 11


def test_verify_writes_json(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "eigen", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data[0]["target"] == "eigen" and data[0]["counts"]["fail"] == 0


def test_verify_fault_injection(monkeypatch, capsys):
    import quatval.catalog as catalog

    real = catalog.base_generators

    def perturbed(route="projector"):
        g = dict(real(route))
        g["theta_s"] = g["theta_s"].scale(3)
        return g

    monkeypatch.setattr(catalog, "base_generators", perturbed)
    code, out, _ = run(capsys, "verify", "relations")
    assert code == 1
    assert "[FAIL ]" in out and "θs" in out


def test_internal_error_exit_2(monkeypatch, capsys):
    def broken():
        raise InconsistentSystem("nonzero residual")

    monkeypatch.setitem(verify.TARGETS, "eigen", broken)
    code, out, _ = run(capsys, "verify", "eigen")
    assert code == 2
    assert "nonzero residual" in out


def test_klain_at_plane(capsys):
    plane = '{"k": 1, "angles": [["1", "0"]], "complement": true}'
    code, out, _ = run(capsys, "klain", "t⁷", plane)
    assert code == 0 and out.strip() == "768·π^(-4)"
    # numerator/denominator pairs describe the same circle point
    a = run(capsys, "klain", "κ₂", '{"k": 2, "angles": [["1","0"],["3/5","4/5"]]}')[1]
    b = run(capsys, "klain", "κ₂", '{"k": 2, "angles": [["1","1"],["0","1"],["3","5"],["4","5"]]}')[1]
    assert a == b


def test_bad_plane(capsys):
    assert run(capsys, "klain", "t", '{"k": 1, "angles": [["1", "1"]]}')[0] == 2
