"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import time

import pytest

from quatval import reference as ref
from quatval.verify import run_verification


def _run(*targets):
    t0 = time.perf_counter()
    checks = [c for t in targets for r in run_verification(t) for c in r.checks]
    return checks, time.perf_counter() - t0


def _failures(checks):
    return [f"{c.name}: {c.witness}" for c in checks if c.status != "pass"]


def _count(checks, anchor, prefix=""):
    return sum(1 for c in checks if c.anchor == anchor and c.name.startswith(prefix) and c.status == "pass")


def criterion_1():
    checks, dt = _run("relations")
    prim = sum(1 for c in checks if c.name.endswith("∧θs=0") and c.status == "pass")
    lam = sum(1 for c in checks if c.name.endswith("∧dα=0") and c.status == "pass")
    ok = not _failures(checks) and prim == 10 and lam == 28 and len(checks) - prim - lam >= 30 and dt < 5
    return ok, f"{len(checks) - prim - lam} relations, {prim} primitives, {lam} Λ primitive, {dt:.1f}s"


def criterion_2():
    checks, dt = _run("differentials")
    ok = not _failures(checks) and any(c.name == "dα=-φ11-θs" for c in checks) and dt < 5
    return ok, f"{len(checks)} checks, {dt:.1f}s"


def criterion_3():
    checks, dt = _run("rumin")
    lam = _count(checks, "derivation operator")
    v = _count(checks, "derivation operator on v")
    cert = _count(checks, "Rumin differential")
    ok = not _failures(checks) and lam == 27 and v == 27 and cert == 28 and dt < 60
    return ok, f"{lam}/27 Λ lines, {v}/27 v lines, {cert} certificates, {dt:.1f}s"


def criterion_4():
    checks, dt = _run("eigen")
    eig = _count(checks, "eigen tables", "P")
    comm = _count(checks, "commutation")
    ok = not _failures(checks) and eig == 28 and comm == 8 and dt < 10
    return ok, f"{eig} eigenvectors, {comm} commutations, {dt:.1f}s"


def criterion_5():
    checks, dt = _run("dimensions")
    ok = not _failures(checks) and dt < 30
    return ok, f"Curv {ref.CURV_DIMS}, Val {ref.VAL_DIMS}, {dt:.1f}s"


def criterion_6():
    checks, dt = _run("klain")
    rows = _count(checks, "Klain tables")
    inter = _count(checks, "globalization intertwines")
    ok = not _failures(checks) and rows == 28 and inter == 27 and dt < 180
    return ok, f"{rows} rows, {inter} intertwining checks, {dt:.1f}s"


def criterion_7():
    checks, dt = _run("multipliers")
    rows = sum(1 for c in checks if c.anchor == "multiplier table" and " on Val" in c.name
               and c.status == "pass")
    hw = _count(checks, "highest weight vectors")
    ok = not _failures(checks) and rows == 11 and hw == 3 and dt < 5
    return ok, f"{rows}/11 rows, {hw} highest-weight checks, {dt:.1f}s"


def criterion_8():
    checks, dt = _run("fourier", "globalization")
    glob = _count(checks, "globalization table")
    four = _count(checks, "Fourier table", "F ")
    ok = not _failures(checks) and glob == len(ref.GLOBALIZATION) and four == 6 and dt < 60
    return ok, f"{glob} globalization rows, {four}/6 Fourier rows, {dt:.1f}s"


def criterion_9():
    checks, dt = _run("algebra")
    prods = _count(checks, "product table")
    ok = not _failures(checks) and prods == 10 and dt < 120
    assoc = next(c.note for c in checks if c.name.startswith("associativity"))
    return ok, f"{prods}/10 products, associativity on {assoc}, {dt:.1f}s"


def criterion_10():
    checks, dt = _run("kinematic")
    main = _count(checks, "principal kinematic formula") - 1
    ok = not _failures(checks) and main == len(ref.KINEMATIC_PHI) and dt < 60
    return ok, f"{main} printed coefficients, no extra terms, {dt:.1f}s"


def criterion_11():
    checks, dt = _run("ideal")
    gens = sum(1 for c in checks if c.name.startswith("generator") and c.status == "pass")
    ok = not _failures(checks) and gens == 13 and dt < 30
    return ok, f"{gens}/13 generators vanish, {dt:.1f}s"


def criterion_12():
    checks, _ = _run("ideal")
    (s,) = [c for c in checks if c.name == "s in φ basis"]
    ok = s.status == "pass" and "typo" in (s.note or "")
    return ok, "s = 3/8 φ2,0 + 1/8 φ2,1; printed φ2,2 flagged"


CRITERIA = [
    (1, "relations and primitivity", criterion_1),
    (2, "differentials", criterion_2),
    (3, "Rumin differential and derivation tables", criterion_3),
    (4, "eigen tables and commutation", criterion_4),
    (5, "dimensions and V0 counts", criterion_5),
    (6, "Klain tables and orientation", criterion_6),
    (7, "multiplier table and highest weights", criterion_7),
    (8, "Fourier and globalization tables", criterion_8),
    (9, "algebra structure", criterion_9),
    (10, "kinematic formulas", criterion_10),
    (11, "ideal of relations", criterion_11),
    (12, "expansion of s and the index typo", criterion_12),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, criterion):
    ok, detail = fn()
    criterion(number, title, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    import sys

    failed = 0
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {number:2d}. {title}  ({detail})", flush=True)
    sys.exit(1 if failed else 0)
