"""Rumin differential, the derivation operator on curvature measures, and I*.

Two exterior derivatives are available.  :func:`lie_d` works on base-point
coordinates through the Maurer-Cartan structure of the isometry group and is
valid for invariant forms.  :func:`structural_d` works on symbolic words from
the differentials of the seventeen generators.  The tests check that they
agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import flint

from .catalog import (CYCLIC, IMAG, LAMBDA_INDEX, V_INDEX, CurvatureMeasure, InvariantForm,
                      _ODD, _symbolic, build_v, lambda_coord, phi)
from .exterior import (ALPHA, DALPHA, CoordForm, antiderivation, horizontal, ideal_reduce,
                       istar as istar_coord, lefschetz_solve, reeb_contract)
from .linalg import InconsistentSystem, nullspace
from .model import GENERATORS, lie_d_images

__all__ = [
    "structural_table",
    "structural_d",
    "lie_d",
    "RuminResult",
    "rumin_D",
    "in_lambda_basis",
    "derivation_L",
    "derivation_matrix",
    "istar",
    "istar_matrix",
    "v_matrix",
    "derivation_matrix_v",
    "P_matrix",
    "Eigenpair",
    "eigensystem_P",
    "EIGEN_TABLE",
    "check_eigen_table",
    "check_commutation",
    "derivation_table",
]

Q = flint.fmpq


# --- structural differential ---------------------------------------------------------

@lru_cache(maxsize=None)
def structural_table() -> Dict[str, InvariantForm]:
    """d of every generator as a symbolic form.

    d alpha, d beta_q, d gamma_q and d theta_{2,q} are the basic formulas; the
    differentials of theta_{0,q}, theta_{1,q} and theta_s follow from
    d^2 gamma_q = d^2 beta_q = d^2 alpha = 0.
    """
    g = _symbolic()
    a, ts = g["alpha"], g["theta_s"]
    b = {q: g[f"beta_{q}"] for q in IMAG}
    c = {q: g[f"gamma_{q}"] for q in IMAG}
    t1 = {q: g[f"theta1_{q}"] for q in IMAG}
    t0 = {q: g[f"theta0_{q}"] for q in IMAG}
    d: Dict[str, InvariantForm] = {"alpha": -phi(1, 1, g) - ts}
    two = Q(2)
    for i, j, k in CYCLIC:
        d[f"beta_{i}"] = a * c[i] - b[j] * c[k] + b[k] * c[j] + t1[i]
        d[f"gamma_{i}"] = -(c[j] * c[k]).scale(two) + t0[i].scale(two)
        d[f"theta2_{i}"] = b[i] * ts + b[k] * t1[j] - b[j] * t1[k] + a * t1[i]
    partial = dict(d)
    for i, j, k in CYCLIC:
        # 2 theta0_i = d gamma_i + 2 gamma_j gamma_k
        d[f"theta0_{i}"] = _dsym(c[j] * c[k], partial)
        # theta1_i = d beta_i - alpha gamma_i + beta_j gamma_k - beta_k gamma_j
        d[f"theta1_{i}"] = -_dsym(a * c[i] - b[j] * c[k] + b[k] * c[j], partial)
    # theta_s = -d alpha - phi_11
    d["theta_s"] = -_dsym(phi(1, 1, g), partial)
    return d


def _dsym(form: InvariantForm, table: Dict[str, InvariantForm]) -> InvariantForm:
    out = InvariantForm()
    for w, coef in form.terms.items():
        parity = 0
        for pos, x in enumerate(w):
            name = GENERATORS[x]
            if name not in table:
                raise KeyError(f"differential of {name} not yet known")
            left = InvariantForm({w[:pos]: Q(1)})
            right = InvariantForm({w[pos + 1:]: Q(1)})
            term = left * table[name] * right
            out = out + (term.scale(-coef) if parity else term.scale(coef))
            if x in _ODD:
                parity ^= 1
    return out


def structural_d(form: InvariantForm) -> InvariantForm:
    return _dsym(form, structural_table())


def lie_d(form: CoordForm) -> CoordForm:
    """Exterior derivative of an invariant form given at the base point."""
    return antiderivation(form, lie_d_images())


# --- Rumin differential ------------------------------------------------------------

@dataclass
class RuminResult:
    omega: CoordForm
    xi: CoordForm
    D: CoordForm
    residual: CoordForm  # dalpha ^ xi + (d omega)|_Q, must vanish

    @property
    def certified(self) -> bool:
        return not self.residual and not horizontal(self.D)


def rumin_D(omega) -> RuminResult:
    """D omega = d(omega + alpha ^ xi) with xi horizontal and D omega vertical.

    ``omega`` is an invariant 7-form, symbolic or in base-point coordinates.
    Multiplication by dalpha is injective on horizontal 6-forms, so xi is
    unique once its alpha-component is set to zero.
    """
    if isinstance(omega, InvariantForm):
        omega = omega.evaluate()
    if omega.terms and omega.degree != 7:
        raise ValueError("the Rumin differential acts on 7-forms here")
    d_omega = lie_d(omega)
    target = horizontal(d_omega)
    xi = lefschetz_solve(-target)
    residual = DALPHA.wedge(xi) + target
    D = d_omega + DALPHA.wedge(xi) - ALPHA.wedge(lie_d(xi))
    res = RuminResult(omega, xi, D, residual)
    if not res.certified:
        raise InconsistentSystem("division by dalpha left a nonzero residual")
    return res


@lru_cache(maxsize=None)
def _lambda_system(k: int):
    forms = [lambda_coord(k, i) for i in LAMBDA_INDEX[k]]
    masks = sorted({m for f in forms for m in f.terms})
    col = {m: j for j, m in enumerate(masks)}
    A = flint.fmpq_mat(len(masks), len(forms))
    for j, f in enumerate(forms):
        for m, c in f.terms.items():
            A[col[m], j] = c
    return A, masks, col


def in_lambda_basis(form: CoordForm, k: int) -> Tuple[Fraction, ...]:
    """Coordinates of a 7-form class in the Lambda_{k,.} basis (exact, residual checked)."""
    red = ideal_reduce(form)
    A, masks, col = _lambda_system(k)
    n = A.ncols()
    b = flint.fmpq_mat(A.nrows(), 1)
    for m, c in red.terms.items():
        if m not in col:
            raise InconsistentSystem(f"class is not in the span of Lambda_{{{k},.}}")
        b[col[m], 0] = c
    aug = flint.fmpq_mat(A.nrows(), n + 1)
    for r in range(A.nrows()):
        for j in range(n):
            aug[r, j] = A[r, j]
        aug[r, n] = b[r, 0]
    R, rank = aug.rref()
    x = [Fraction(0)] * n
    for row in range(rank):
        lead = next(j for j in range(n + 1) if R[row, j] != 0)
        if lead == n:
            raise InconsistentSystem(f"class is not in the span of Lambda_{{{k},.}}")
        v = R[row, n]
        x[lead] = Fraction(int(v.p), int(v.q))
    return tuple(x)


def _measure_coord(m) -> Tuple[int, CoordForm]:
    if isinstance(m, CurvatureMeasure):
        return m.k, m.coord()
    raise TypeError("expected a CurvatureMeasure")


def derivation_L(m: CurvatureMeasure) -> CurvatureMeasure:
    """The derivation operator: class of i_T D omega in degree k - 1."""
    k, omega = _measure_coord(m)
    if k == 0:
        raise ValueError("the derivation operator lowers the degree; k must be at least 1")
    L = reeb_contract(rumin_D(omega).D)
    return CurvatureMeasure(k - 1, in_lambda_basis(L, k - 1))


@lru_cache(maxsize=None)
def derivation_matrix(k: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Row i: coordinates of L(Lambda_{k,i}) in the Lambda_{k-1} basis."""
    rows = []
    for i in LAMBDA_INDEX[k]:
        omega = lambda_coord(k, i)
        L = reeb_contract(rumin_D(omega).D)
        rows.append(in_lambda_basis(L, k - 1))
    return tuple(rows)


def istar(m: CurvatureMeasure) -> CurvatureMeasure:
    k, omega = _measure_coord(m)
    return CurvatureMeasure(7 - k, in_lambda_basis(istar_coord(omega), 7 - k))


@lru_cache(maxsize=None)
def istar_matrix(k: int) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(in_lambda_basis(istar_coord(lambda_coord(k, i)), 7 - k) for i in LAMBDA_INDEX[k])


# --- matrices in the v basis ---------------------------------------------------------

def _mat(rows) -> flint.fmpq_mat:
    rows = [list(r) for r in rows]
    return flint.fmpq_mat(len(rows), len(rows[0]),
                          [flint.fmpq(x.numerator, x.denominator) for r in rows for x in r])


def _rows(M: flint.fmpq_mat) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(int(M[r, c].p), int(M[r, c].q)) for c in range(M.ncols()))
                 for r in range(M.nrows()))


def v_matrix(k: int) -> flint.fmpq_mat:
    """Row i: v_i^k in the Lambda_{k,.} basis."""
    return _mat([build_v(k, i).coeffs for i in V_INDEX[k]])


def derivation_matrix_v(k: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Row i: coordinates of L(v_i^k) in the v^{k-1} basis."""
    M = v_matrix(k) * _mat(derivation_matrix(k)) * v_matrix(k - 1).inv()
    return _rows(M)


def P_matrix(k: int) -> flint.fmpq_mat:
    """P_k in the Lambda basis, acting on row vectors (x -> x P)."""
    if k <= 3:
        M = _mat(istar_matrix(k))
        deg = 7 - k
        for _ in range(7 - 2 * k):
            M = M * _mat(derivation_matrix(deg))
            deg -= 1
        return M
    M = None
    deg = k
    for _ in range(2 * k - 7):
        D = _mat(derivation_matrix(deg))
        M = D if M is None else M * D
        deg -= 1
    return M * _mat(istar_matrix(deg))


@dataclass
class Eigenpair:
    value: Fraction
    vectors: List[Tuple[Fraction, ...]]  # in the v basis


def eigensystem_P(k: int) -> List[Eigenpair]:
    """Exact eigen-decomposition of P_k, with eigenvectors expressed in the v basis."""
    V = v_matrix(k)
    Pv = V * P_matrix(k) * V.inv()  # P in the v basis (row convention)
    n = Pv.nrows()
    poly = Pv.charpoly()
    _, factors = poly.factor()
    values = []
    for f, mult in factors:
        if f.degree() != 1:
            raise ArithmeticError(f"P_{k} has an irrational eigenvalue factor {f}")
        values.append((-f[0] / f[1], mult))
    rows = _rows(Pv)
    out = []
    for lam, mult in sorted(values, key=lambda t: _frac(t[0])):
        lam = _frac(lam)
        # left eigenvectors: x (Pv - lam) = 0, i.e. the kernel of the transpose
        At = [[rows[c][r] - (lam if r == c else 0) for c in range(n)] for r in range(n)]
        vecs = []
        for v in nullspace(At, n):
            lead = next(x for x in v if x)
            vecs.append(tuple(x / lead for x in v))
        if len(vecs) != mult:
            raise ArithmeticError(f"P_{k} is defective at eigenvalue {lam}")
        out.append(Eigenpair(lam, vecs))
    return out


def _frac(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


# P_k eigenvalue of each v_i^k, with the isotypical component it lies in
EIGEN_TABLE: Dict[Tuple[int, int], Tuple[int, str]] = {
    (0, 1): (5040, "Γ0000"),
    (1, 1): (-720, "Γ0000"), (1, 2): (-384, "Γ2200"),
    (2, 1): (60, "Γ0000"), (2, 2): (0, "Γ2200"), (2, 3): (102, "Γ2200"), (2, 4): (-90, "Γ4220"),
    (3, 1): (-4, "Γ0000"), (3, 2): (0, "Γ2200"), (3, 3): (-18, "Γ2200"), (3, 4): (0, "Γ4220"),
    (3, 5): (46, "Γ4220"), (3, 6): (-24, "Γ2222"), (3, 7): (-80, "Γ622-2"),
}
for (_k, _i), _row in list(EIGEN_TABLE.items()):
    EIGEN_TABLE[7 - _k, _i] = _row


def check_eigen_table(k: int) -> List[Tuple[int, Fraction, bool]]:
    """For each v_i^k: (i, tabulated eigenvalue, whether v P_k equals it times v)."""
    P = P_matrix(k)
    out = []
    for i in V_INDEX[k]:
        lam = Fraction(EIGEN_TABLE[k, i][0])
        v = _mat([build_v(k, i).coeffs])
        ok = _rows(v * P) == _rows(v * Q(lam.numerator, lam.denominator))
        out.append((i, lam, ok))
    return out


def check_commutation(k: int) -> bool:
    """I* o P_k = P_{7-k} o I* (row convention: P_k I = I P_{7-k})."""
    I = _mat(istar_matrix(k))
    return _rows(P_matrix(k) * I) == _rows(I * P_matrix(7 - k))


def _combo(coeffs: Sequence[Fraction], names: Sequence[str]) -> str:
    parts = []
    for c, n in zip(coeffs, names):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign} {n}" if mag == 1 else f"{sign} {mag}{n}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def derivation_table(basis: str = "lambda") -> List[Tuple[str, str]]:
    """Rows (source, image) of the derivation operator in the Lambda or v basis."""
    rows = []
    for k in range(1, 8):
        if basis == "lambda":
            M = derivation_matrix(k)
            src = [f"Λ{k},{i}" for i in LAMBDA_INDEX[k]]
            tgt = [f"Λ{k - 1},{i}" for i in LAMBDA_INDEX[k - 1]]
        else:
            M = derivation_matrix_v(k)
            src = [f"v{i}^{k}" for i in V_INDEX[k]]
            tgt = [f"v{i}^{k - 1}" for i in V_INDEX[k - 1]]
        rows.extend((s, _combo(r, tgt)) for s, r in zip(src, M))
    return rows
