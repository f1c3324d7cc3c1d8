"""The algebra of Sp(2)Sp(1)-invariant valuations on the quaternionic plane.

Valuations live in Klain coordinates (:class:`~quatval.klain.Valuation`).
Convolution is computed on differential forms: every Klain basis vector of
degree k <= 7 gets a rational backing curvature measure, and

    (w1, c1) * (w2, c2) = (*1^-1(*1 w1 ^ *1 D w2) + c1 w2 + c2 w1, c1 c2).

The Alesker product is then F(F a * F b).  Nothing in the product table is
hard-coded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .catalog import LAMBDA_INDEX, CurvatureMeasure, build_v
from .exterior import hodge_star_1, hodge_star_1_inverse
from .klain import VAL_DIMS, Valuation, f_basis, fourier, klain_coordinates, lambda_klain
from .linalg import InconsistentSystem, generic_inverse, generic_solve, rank as qrank, solve
from .model import f_value, special_plane
from .rumin import in_lambda_basis, rumin_D
from .scalars import ONE, PI, ZERO, ExactScalar, ScalarFraction, as_scalar, ball_volume

__all__ = [
    "globalize",
    "unit",
    "convolve",
    "multiply",
    "derivative",
    "pd_pairing",
    "T",
    "KAPPA_NU",
    "named",
    "ValuationBasis",
    "basis",
    "BASIS_NAMES",
    "change_of_basis",
    "coordinates",
    "pd_matrix",
    "KinematicTensor",
    "kinematic_operator",
    "Poly",
    "IDEAL_GENERATORS",
    "verify_ideal",
    "IdealReport",
    "s_expansion_check",
]


def globalize(m: CurvatureMeasure) -> Valuation:
    v = klain_coordinates(m)
    v.backing = (m, ZERO)
    return v


def unit(k: int, i: int) -> Valuation:
    """The valuation phi_{k,i} whose Klain coordinates form the i-th unit vector."""
    idx = f_basis(k).index(i) if k not in (0, 8) else 0
    return Valuation({k: tuple(ONE if j == idx else ZERO for j in range(VAL_DIMS[k]))})


# --- convolution on forms ------------------------------------------------------------

def _pi_half_power(values: Iterable[ExactScalar]) -> int:
    powers = set()
    for x in values:
        if x:
            if not x.is_monomial():
                raise ArithmeticError("globalization entries are not pi-homogeneous")
            powers.add(x.monomial()[0])
    if len(powers) != 1:
        raise ArithmeticError("globalization entries mix powers of pi")
    return powers.pop()


@lru_cache(maxsize=None)
def _unit_backing(k: int) -> Tuple[Tuple[Tuple[Fraction, ...], ...], ExactScalar]:
    """Rational Lambda_{k,.} coefficients x_j and a scale s with s glob(x_j) = phi_{k,j}."""
    if k == 0:
        rows = [[lambda_klain(0, 1)]]
    else:
        rows = [klain_coordinates(CurvatureMeasure(k, tuple(Fraction(int(j == i))
                                                          for j in LAMBDA_INDEX[k]))).coords(k)
                for i in LAMBDA_INDEX[k]]
    h = _pi_half_power(x for r in rows for x in r)
    R = [[x.terms.get(h, Fraction(0)) for x in r] for r in rows]
    d = VAL_DIMS[k]
    A = [[R[i][j] for i in range(len(R))] for j in range(d)]  # R^T
    X = solve(A, [[Fraction(int(a == b)) for b in range(d)] for a in range(d)])
    coeffs = tuple(tuple(X[i][j] for i in range(len(R))) for j in range(d))
    return coeffs, ExactScalar({-h: 1})


@lru_cache(maxsize=None)
def _star(k: int, j: int):
    coeffs, _ = _unit_backing(k)
    return hodge_star_1(CurvatureMeasure(k, coeffs[j]).coord())


@lru_cache(maxsize=None)
def _star_D(k: int, j: int):
    coeffs, _ = _unit_backing(k)
    return hodge_star_1(rumin_D(CurvatureMeasure(k, coeffs[j]).coord()).D)


@lru_cache(maxsize=None)
def _unit_convolution(k1: int, j1: int, k2: int, j2: int) -> Valuation:
    if k1 == 8:
        return _unit_index(k2, j2)
    if k2 == 8:
        return _unit_index(k1, j1)
    k = k1 + k2 - 8
    if k < 0:
        return Valuation()
    form = hodge_star_1_inverse(_star(k1, j1).wedge(_star_D(k2, j2)))
    m = CurvatureMeasure(k, in_lambda_basis(form, k))
    s = _unit_backing(k1)[1] * _unit_backing(k2)[1]
    return klain_coordinates(m).scale(s)


def _unit_index(k: int, j: int) -> Valuation:
    return Valuation({k: tuple(ONE if a == j else ZERO for a in range(VAL_DIMS[k]))})


def convolve(a: Valuation, b: Valuation) -> Valuation:
    out = Valuation()
    for k1, va in a.klain.items():
        for k2, vb in b.klain.items():
            if k1 + k2 < 8:
                continue
            for j1, x in enumerate(va):
                if not x:
                    continue
                for j2, y in enumerate(vb):
                    if y:
                        out = out + _unit_convolution(k1, j1, k2, j2).scale(x * y)
    return out


def multiply(a: Valuation, b: Valuation) -> Valuation:
    """Alesker product, as F(F a * F b)."""
    return fourier(convolve(fourier(a), fourier(b)))


def derivative(a: Valuation) -> Valuation:
    """Lambda phi = 2 phi * mu_7."""
    return convolve(a, unit(7, 0)).scale(2)


def pd_pairing(a: Valuation, b: Valuation) -> ExactScalar:
    return multiply(a, b).coords(8)[0]


# --- named valuations ------------------------------------------------------------------

def _t_power(i: int) -> Valuation:
    """t^i = i! omega_i / pi^i mu_i, with Kl(mu_i) = 1."""
    c = ball_volume(i) * factorial(i) / ExactScalar({2 * i: 1})
    return Valuation({i: tuple(c if j == 0 else ZERO for j in range(VAL_DIMS[i]))})


T = _t_power(1)

# Klain coordinates of kappa_2, nu_3, kappa_4, nu_4 over f_{k,0..}
KAPPA_NU: Dict[str, Tuple[int, Tuple[int, ...]]] = {
    "κ₂": (2, (-3, 7)),
    "ν₃": (3, (15, -17, 16)),
    "κ₄": (4, (0, -1, 6, 0, 0)),
    "ν₄": (4, (-210, 226, -194, -161, 63)),
}


@lru_cache(maxsize=None)
def _t_pow(n: int) -> Valuation:
    if n == 0:
        return unit(0, 0)
    if n == 1:
        return T
    return multiply(_t_pow(n - 1), T)


@lru_cache(maxsize=None)
def _u() -> Valuation:
    """u from pd(u, phi) = Kl_phi(H + 0) on Val_4."""
    H = special_plane([(1, 0)] * 4)
    units = [unit(4, i) for i in f_basis(4)]
    rhs = [[f_value(4, i, H)] for i in f_basis(4)]
    P = [[pd_pairing(a, b) for b in units] for a in units]
    x = generic_solve(P, rhs)
    return Valuation({4: tuple(as_scalar(r[0]) for r in x)})


@lru_cache(maxsize=None)
def named(name: str) -> Valuation:
    """Valuations by name: χ, vol, t, tⁿ, κ₂, ν₃, κ₄, ν₄, s, v, u, μ_k and products like t²κ₂."""
    if name in ("χ", "1"):
        return unit(0, 0)
    if name == "vol":
        return unit(8, 0)
    if name in KAPPA_NU:
        k, coeffs = KAPPA_NU[name]
        return Valuation({k: tuple(as_scalar(c) for c in coeffs)})
    if name == "u":
        return _u()
    if name == "v":
        return derivative(_u()).scale(Fraction(1, 2))
    if name == "s":
        return derivative(derivative(_u())).scale(ExactScalar({-2: Fraction(1, 2)}))
    if name.startswith("μ"):
        k = int(name[1:])
        return unit(k, 0)
    if name.startswith("φ"):
        k, i = (int(x) for x in name[1:].split(","))
        return unit(k, i)
    # products: optional power of t then a named factor
    power, rest = _split_t(name)
    if rest == "":
        return _t_pow(power)
    base = named(rest)
    return multiply(_t_pow(power), base) if power else base


_SUP = {"²": 2, "³": 3, "⁴": 4, "⁵": 5, "⁶": 6, "⁷": 7, "⁸": 8}


def _split_t(name: str) -> Tuple[int, str]:
    if not name.startswith("t"):
        raise KeyError(f"unknown valuation {name!r}")
    rest = name[1:]
    if rest and rest[0] in _SUP:
        return _SUP[rest[0]], rest[1:]
    return 1, rest


def _s_squared() -> Valuation:
    return multiply(named("s"), named("s"))


# --- bases -------------------------------------------------------------------------------

BASIS_NAMES: Dict[str, Tuple[str, ...]] = {
    "tkn": ("χ", "t", "t²", "κ₂", "t³", "tκ₂", "ν₃", "t⁴", "t²κ₂", "κ₄", "tν₃", "ν₄",
            "t⁵", "t³κ₂", "t²ν₃", "t⁶", "t⁴κ₂", "t⁷", "t⁸"),
    "phi": tuple(f"φ{k},{i}" for k in range(9) for i in ((0,) if k in (0, 8) else f_basis(k))),
    "tsuv": ("1", "t", "t²", "s", "t³", "ts", "v", "t⁴", "t²s", "s²", "tv", "u",
             "t⁵", "t²v", "t³s", "t⁶", "t⁴s", "t⁷", "t⁸"),
}


def _element(name: str) -> Valuation:
    if name == "s²":
        return _s_squared()
    return named(name)


@dataclass
class ValuationBasis:
    name: str
    labels: Tuple[str, ...]
    elements: Tuple[Valuation, ...]

    def degree(self, idx: int) -> int:
        return self.elements[idx].degree

    def by_degree(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for n, e in enumerate(self.elements):
            out.setdefault(e.degree, []).append(n)
        return out


@lru_cache(maxsize=None)
def basis(name: str) -> ValuationBasis:
    if name not in BASIS_NAMES:
        raise KeyError(f"unknown basis {name!r}; choose from {sorted(BASIS_NAMES)}")
    labels = BASIS_NAMES[name]
    elems = tuple(_element(l) for l in labels)
    B = ValuationBasis(name, labels, elems)
    for k, idx in B.by_degree().items():
        if len(idx) != VAL_DIMS[k]:
            raise InconsistentSystem(f"basis {name} has {len(idx)} elements in degree {k}")
        generic_inverse([list(elems[n].coords(k)) for n in idx])  # raises if singular
    return B


def coordinates(v: Valuation, target: str) -> Dict[str, object]:
    """Coefficients of a valuation in a registered basis (label -> scalar)."""
    B = basis(target)
    out: Dict[str, object] = {}
    for k, idx in B.by_degree().items():
        if k not in v.klain:
            continue
        A = [[B.elements[n].coords(k)[j] for n in idx] for j in range(VAL_DIMS[k])]
        x = generic_solve(A, [[c] for c in v.coords(k)])
        for n, row in zip(idx, x):
            if row[0]:
                out[B.labels[n]] = row[0]
    return out


def change_of_basis(source: str, target: str) -> List[List[object]]:
    """Matrix M with source_i = sum_j M[i][j] target_j."""
    S, Tb = basis(source), basis(target)
    M = [[ZERO] * len(Tb.labels) for _ in S.labels]
    col = {l: j for j, l in enumerate(Tb.labels)}
    for i, e in enumerate(S.elements):
        for l, c in coordinates(e, target).items():
            M[i][col[l]] = c
    # residual: recombine and compare Klain coordinates
    for i, e in enumerate(S.elements):
        back = Valuation()
        for j, c in enumerate(M[i]):
            if c:
                back = back + Tb.elements[j].scale(_scalar(c))
        if back != e:
            raise InconsistentSystem(f"change of basis residual for {S.labels[i]}")
    return M


def _scalar(c) -> ExactScalar:
    if isinstance(c, ScalarFraction):
        r = c.reduce()
        if isinstance(r, ExactScalar):
            return r
        raise ArithmeticError("coefficient is not a Laurent polynomial in sqrt(pi)")
    return as_scalar(c)


# --- Poincare pairing and kinematic formulas --------------------------------------------

@lru_cache(maxsize=None)
def pd_matrix(name: str) -> Tuple[Tuple[ExactScalar, ...], ...]:
    B = basis(name)
    n = len(B.labels)
    P = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            if B.degree(a) + B.degree(b) != 8:
                continue
            P[a][b] = P[b][a] = pd_pairing(B.elements[a], B.elements[b])
    return tuple(tuple(r) for r in P)


@dataclass
class KinematicTensor:
    """Symmetric tensor sum_{i<=j} c_ij b_i (.) b_j, with (.) the symmetrized tensor product."""

    basis: str
    labels: Tuple[str, ...]
    matrix: Tuple[Tuple[object, ...], ...]  # K with k = sum K_ij b_i (x) b_j

    def odot(self) -> Dict[Tuple[str, str], object]:
        out = {}
        n = len(self.labels)
        for i in range(n):
            for j in range(i, n):
                c = self.matrix[i][j] if i == j else self.matrix[i][j] * 2
                c = c.reduce() if isinstance(c, ScalarFraction) else c
                if c:
                    out[self.labels[i], self.labels[j]] = c
        return out

    def coefficient(self, a: str, b: str):
        i, j = self.labels.index(a), self.labels.index(b)
        if i > j:
            i, j = j, i
        return self.odot().get((self.labels[i], self.labels[j]), ZERO)


def kinematic_operator(name: str, phi: Optional[Valuation] = None) -> KinematicTensor:
    """k(phi) = (pd x pd)^-1 m* pd(phi); for phi = chi this is the inverse pd matrix."""
    B = basis(name)
    P = [list(r) for r in pd_matrix(name)]
    Pinv = generic_inverse(P)
    n = len(B.labels)
    if phi is None or phi == named("χ"):
        K = Pinv
    else:
        M = [[ZERO] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                if B.degree(a) + B.degree(b) + phi.degrees()[0] > 8 and len(phi.degrees()) == 1:
                    continue
                prod = multiply(B.elements[a], B.elements[b])
                M[a][b] = M[b][a] = pd_pairing(phi, prod)
        K = _matmul(_matmul(Pinv, M), Pinv)
    return KinematicTensor(name, B.labels, tuple(tuple(_clean(x) for x in r) for r in K))


def _clean(x):
    return x.reduce() if isinstance(x, ScalarFraction) else x


def _matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = ScalarFraction(ZERO)
            for k in range(m):
                if A[i][k] and B[k][j]:
                    acc = acc + _frac(A[i][k]) * _frac(B[k][j])
            row.append(acc)
        out.append(row)
    return out


def _frac(x) -> ScalarFraction:
    return x if isinstance(x, ScalarFraction) else ScalarFraction(as_scalar(x))


# --- polynomial relations in t, s, v, u ------------------------------------------------------

class Poly:
    """Polynomial in t, s, v, u with ExactScalar coefficients."""

    VARS = ("t", "s", "v", "u")

    def __init__(self, terms: Mapping[Tuple[int, int, int, int], object] | None = None):
        self.terms = {m: as_scalar(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, name: str) -> "Poly":
        e = [0, 0, 0, 0]
        e[cls.VARS.index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0, 0, 0): c})

    def __add__(self, other):
        other = other if isinstance(other, Poly) else Poly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly({m: c * as_scalar(other) for m, c in self.terms.items()})
        out: Dict[Tuple[int, ...], ExactScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, ZERO) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self) -> Valuation:
        total = Valuation()
        for m, c in self.terms.items():
            total = total + _monomial(m).scale(c)
        return total


_DEG = (1, 2, 3, 4)


@lru_cache(maxsize=None)
def _monomial(m: Tuple[int, int, int, int]) -> Valuation:
    if sum(e * d for e, d in zip(m, _DEG)) > 8:
        return Valuation()
    if not any(m):
        return named("χ")
    # peel one generator off the last nonzero slot
    idx = max(i for i, e in enumerate(m) if e)
    rest = list(m)
    rest[idx] -= 1
    return multiply(_monomial(tuple(rest)), named(Poly.VARS[idx]))


def _polys():
    t, s, v, u = (Poly.var(x) for x in Poly.VARS)
    pi = PI
    k2 = -12 * pi * t ** 2 + 56 * s
    k4 = (-Fraction(5, 2) * pi ** 2 * t ** 4 - 16 * pi * t ** 2 * s + 160 * s ** 2
          - Fraction(105, 2) * t * v)
    n3 = -63 * pi ** 2 * t ** 3 + 378 * pi * t * s - 630 * v
    n4 = (-2340 * pi ** 2 * t ** 4 + 17280 * pi * t ** 2 * s - 11520 * s ** 2
          - 31500 * t * v + 10080 * u)
    return t, k2, k4, n3, n4


def IDEAL_GENERATORS() -> List[Tuple[str, Poly]]:
    t, k2, k4, n3, n4 = _polys()
    pi = PI
    return [
        ("t k4", t * k4),
        ("t n4", t * n4),
        ("k2 n3 - 63/32 π² t³ k2 + 743/24 π t² n3",
         k2 * n3 - Fraction(63, 32) * pi ** 2 * t ** 3 * k2 + Fraction(743, 24) * pi * t ** 2 * n3),
        ("t³ n3", t ** 3 * n3),
        ("k2 k4 - 49/4 π² t⁴ k2", k2 * k4 - Fraction(49, 4) * pi ** 2 * t ** 4 * k2),
        ("k2 n4", k2 * n4),
        ("n3² + 27/14 π⁴ t⁶ - 33435/896 π³ t⁴ k2",
         n3 ** 2 + Fraction(27, 14) * pi ** 4 * t ** 6 - Fraction(33435, 896) * pi ** 3 * t ** 4 * k2),
        ("t⁵ k2", t ** 5 * k2),
        ("k4 n3", k4 * n3),
        ("n3 n4", n3 * n4),
        ("k4² - π⁴ t⁸", k4 ** 2 - pi ** 4 * t ** 8),
        ("k4 n4", k4 * n4),
        ("n4² - 864 π⁴ t⁸", n4 ** 2 - 864 * pi ** 4 * t ** 8),
    ]


@dataclass
class IdealReport:
    vanishing: List[Tuple[str, bool]]
    substitutions: List[Tuple[str, bool]]
    monomial_rank: int

    @property
    def ok(self) -> bool:
        return (all(ok for _, ok in self.vanishing) and all(ok for _, ok in self.substitutions)
                and self.monomial_rank == 19)


def verify_ideal() -> IdealReport:
    """Every printed generator vanishes and the 19 monomials in t, s, v, u are a basis."""
    _, k2, k4, n3, n4 = _polys()
    subs = [(name, poly.evaluate() == named(target))
            for name, poly, target in (("k2", k2, "κ₂"), ("k4", k4, "κ₄"),
                                       ("n3", n3, "ν₃"), ("n4", n4, "ν₄"))]
    vanish = [(name, not poly.evaluate()) for name, poly in IDEAL_GENERATORS()]
    return IdealReport(vanish, subs, _tsuv_rank())


def _tsuv_rank() -> int:
    """Rank of the t, s, v, u monomials, split along powers of pi."""
    total = 0
    elems = [_element(l) for l in BASIS_NAMES["tsuv"]]
    for k in range(9):
        rows = [e.coords(k) for e in elems if k in e.klain]
        powers = sorted({h for r in rows for x in r for h in x.terms})
        flat = [[x.terms.get(h, Fraction(0)) for x in r for h in powers] for r in rows]
        total += qrank(flat) if flat else 0
    return total


def s_expansion_check() -> Tuple[Dict[str, object], bool]:
    """Degree-2 expansion of s in the phi basis, and whether it is 3/8 phi_{2,0} + 1/8 phi_{2,1}."""
    coords = coordinates(named("s"), "phi")
    want = {"φ2,0": Fraction(3, 8), "φ2,1": Fraction(1, 8)}
    ok = set(coords) == set(want) and all(_scalar(coords[k]) == as_scalar(w) for k, w in want.items())
    return coords, ok
