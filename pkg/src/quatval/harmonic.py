"""Harmonic analysis on Grassmannians and Sp(1) bookkeeping.

Closed-form multipliers of Lambda∘L, L∘Lambda, Lambda^{n-2k}∘F and the
Radon square on isotypic components Val_k[Gamma_lambda], evaluation of
Strichartz highest weight vectors, and the Clebsch-Gordan expansion behind
the module decompositions of invariant forms, curvature measures and
valuations on the quaternionic plane.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .scalars import ONE, PI, ZERO, ExactScalar, flag_coeff, gamma_half

__all__ = [
    "WeightVector",
    "RepSum",
    "radon_square_multiplier",
    "lambda_l_multiplier",
    "lambda_l_power_multiplier",
    "lambda_pow_fourier_multiplier",
    "operator_multiplier",
    "fourier_weight_multiplier",
    "Gaussian",
    "stiefel_E0",
    "stiefel_E0_perp",
    "highest_weight",
    "highest_weight_eval",
    "clebsch_gordan_product",
    "R_TABLE",
    "omega_decomposition",
    "curv_decomposition",
    "VAL_DECOMPOSITION",
    "dimension_table",
    "v0_consistency",
    "MODULES",
    "MODULES_BY_DEGREE",
    "MULTIPLIER_TABLE",
    "multiplier_rows",
    "predicted_spectrum",
    "operator_spectrum",
]


# ---------------------------------------------------------------- weights

@dataclass(frozen=True)
class WeightVector:
    """Highest weight of SO(n) with floor(n/2) entries."""

    lam: Tuple[int, ...]

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        object.__setattr__(self, "lam", lam)
        if not lam:
            raise ValueError("empty weight")
        body = lam[:-1] + (abs(lam[-1]),)
        if any(body[j] < body[j + 1] for j in range(len(body) - 1)):
            raise ValueError(f"weight {lam} is not dominant")

    def check_val(self):
        """Weights occurring in Val: no entry of modulus 1 and |lambda_2| <= 2."""
        lam = self.lam
        if any(abs(x) == 1 for x in lam):
            raise ValueError(f"weight {lam} has an entry of modulus 1")
        if len(lam) > 1 and abs(lam[1]) > 2:
            raise ValueError(f"weight {lam} has |lambda_2| > 2")

    @property
    def a(self) -> int:
        return abs(self.lam[0])

    @property
    def depth(self) -> int:
        return sum(1 for x in self.lam if x != 0)

    @property
    def b_prime(self) -> int:
        return max(self.depth, 1)

    @property
    def size(self) -> int:
        return sum(self.lam)

    def label(self) -> str:
        return "Γ" + ",".join(str(x) for x in self.lam)


def _weight(lam) -> WeightVector:
    return lam if isinstance(lam, WeightVector) else WeightVector(tuple(lam))


def _check_degree(n: int, k: int, w: WeightVector):
    w.check_val()
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} out of range for n = {n}")
    if len(w.lam) != n // 2:
        raise ValueError(f"weight {w.lam} has the wrong length for n = {n}")
    if w.depth > min(k, n - k):
        raise ValueError(f"{w.label()} does not occur in degree {k}")


# ---------------------------------------------------------------- multipliers

def radon_square_multiplier(n: int, k: int, lam) -> ExactScalar:
    """R_{k,k+1}∘R_{k+1,k} on L^2(Gr_k)[Gamma_lambda], as a product of Gamma values."""
    w = _weight(lam)
    if not 2 * k + 1 <= n:
        raise ValueError("the Radon product formula needs 2k+1 <= n")
    if w.depth > k:
        raise ValueError(f"{w.label()} does not occur on Gr_{k}")
    lj = list(w.lam) + [0] * k
    num = gamma_half(k + 1) * gamma_half(n - k)
    den = gamma_half(1) * gamma_half(n - 2 * k)
    for j in range(1, k + 1):
        x = lj[j - 1]
        num = num * gamma_half(x + k + 1 - j) * gamma_half(x + n - k - j)
        den = den * gamma_half(x + k + 2 - j) * gamma_half(x + n - j - k + 1)
    return num / den


def _flag1(m: int) -> ExactScalar:
    return flag_coeff(m, 1)


def lambda_l_multiplier(direction: str, n: int, k: int, lam) -> ExactScalar:
    """Scalar of Lambda∘L ("ΛL") or L∘Lambda ("LΛ") on Val_k[Gamma_lambda].

    The closed forms hold for 2k+1 <= n; beyond that the Fourier relation
    Lambda∘F = 2 F∘L turns Lambda∘L on Val_k into L∘Lambda on Val_{n-k}.
    """
    w = _weight(lam)
    _check_degree(n, k, w)
    a, bp = w.a, w.b_prime
    if direction == "ΛL":
        if k == n:
            return ZERO
        if a == 0:
            # trivial module: the constant Klain function of mu_k
            return 2 * _flag1(n - k) * _flag1(k + 1)
        if 2 * k + 1 <= n:
            return PI ** 2 / (2 * _flag1(a + k) * _flag1(a + n - k - 1)) * ((k + 1 - bp) * (n - k - bp))
        return lambda_l_multiplier("LΛ", n, n - k, w)
    if direction == "LΛ":
        if k == 0:
            return ZERO
        if a == 0:
            return 2 * _flag1(n - k + 1) * _flag1(k)
        if 2 * k - 1 <= n:
            return PI ** 2 / (2 * _flag1(a + k - 1) * _flag1(a + n - k)) * ((k - bp) * (n + 1 - k - bp))
        return lambda_l_multiplier("ΛL", n, n - k, w)
    raise ValueError(f"unknown direction {direction!r}")


def lambda_l_power_multiplier(j: int, n: int, k: int, lam) -> ExactScalar:
    """Lambda^j∘L^j on Val_k[Gamma_lambda]: one Lambda∘L factor per intermediate degree."""
    w = _weight(lam)
    _check_degree(n, k, w)
    out = ONE
    for i in range(j):
        # once L^i leaves Val_k[Gamma] the composite vanishes
        if not out or k + i >= n or w.depth > n - k - i:
            return ZERO
        out = out * lambda_l_multiplier("ΛL", n, k + i, w)
    return out


def fourier_weight_multiplier(lam) -> int:
    """Action of the Fourier transform on Val_{n/2}[Gamma_lambda]."""
    w = _weight(lam)
    if w.size % 2:
        raise ValueError(f"{w.label()} has odd size")
    return -1 if (w.size // 2) % 2 else 1


def lambda_pow_fourier_multiplier(n: int, k: int, lam) -> ExactScalar:
    """Lambda^{n-2k}∘F on Val_k[Gamma_lambda], n even, k <= n/2."""
    w = _weight(lam)
    if n % 2 or 2 * k > n:
        raise ValueError("needs n even and k <= n/2")
    _check_degree(n, k, w)
    a, bp = w.a, w.b_prime
    nu = n // 2
    if a + k == 0:
        # flag(0, 1) is undefined; go through Lambda^{nu}∘F = 2^{nu} F∘L^{nu}
        out = ExactScalar({0: 2 ** nu * fourier_weight_multiplier(w)})
        return out * lambda_l_power_multiplier(nu, n, 0, w)
    out = ExactScalar({2 * (n - 2 * k): fourier_weight_multiplier(w)})
    for j in range(k, nu):
        out = out / (_flag1(a + j) * _flag1(a + n - j - 1))
    return out * Fraction(factorial(n - k - bp), factorial(k - bp))


_SUPERSCRIPT = {"": 1, "²": 2, "³": 3, "⁴": 4, "⁵": 5, "⁶": 6, "⁷": 7, "⁸": 8}


def _parse_op(op: str) -> Tuple[str, int]:
    """'ΛL', 'Λ³L³', 'LΛ', 'Λ²F' -> (kind, power)."""
    if op == "LΛ":
        return "LΛ", 1
    if op == "F":
        return "F", 0
    if op.endswith("F"):
        return "F", _SUPERSCRIPT[op[1:-1]]
    if op.startswith("Λ") and "L" in op:
        p, q = op[1:].split("L")
        if _SUPERSCRIPT[p] == _SUPERSCRIPT[q]:
            return "ΛL", _SUPERSCRIPT[p]
    raise ValueError(f"unknown operator {op!r}")


def operator_multiplier(op: str, n: int, k: int, lam) -> ExactScalar:
    kind, p = _parse_op(op)
    if kind == "LΛ":
        return lambda_l_multiplier("LΛ", n, k, lam)
    if kind == "ΛL":
        return lambda_l_power_multiplier(p, n, k, lam)
    if p != n - 2 * k:
        raise ValueError(f"{op} does not map Val_{k} to itself")
    return lambda_pow_fourier_multiplier(n, k, lam)


# Modules Gamma_lambda of SO(8) carrying Sp(2)Sp(1)-invariant valuations (reference data).
MODULES = ((0, 0, 0, 0), (2, 2, 0, 0), (4, 2, 2, 0), (2, 2, 2, 2), (6, 2, 2, -2))


def _modules_in(k: int) -> Tuple[Tuple[int, ...], ...]:
    m = min(k, 8 - k)
    return tuple(lam for lam in MODULES if WeightVector(lam).depth <= m)


MODULES_BY_DEGREE = {k: _modules_in(k) for k in range(9)}

# (operator, degree, module, printed scalar), n = 8
MULTIPLIER_TABLE = (
    ("ΛL", 2, (2, 2, 0, 0), "5/6·π"),
    ("Λ²L²", 2, (2, 2, 0, 0), "π^2"),
    ("Λ³L³", 2, (2, 2, 0, 0), "6/5·π^3"),
    ("Λ⁴L⁴", 2, (2, 2, 0, 0), "π^4"),
    ("ΛL", 3, (4, 2, 2, 0), "2/7·π"),
    ("Λ²L²", 3, (4, 2, 2, 0), "4/49·π^2"),
    ("Λ²F", 3, (0, 0, 0, 0), "8·π"),
    ("Λ²F", 3, (2, 2, 0, 0), "12/5·π"),
    ("Λ²F", 3, (4, 2, 2, 0), "4/7·π"),
    ("Λ⁴F", 2, (0, 0, 0, 0), "60·π^2"),
    ("Λ⁴F", 2, (2, 2, 0, 0), "4·π^2"),
)


@dataclass(frozen=True)
class MultiplierRow:
    op: str
    k: int
    module: Tuple[int, ...]
    printed: ExactScalar
    computed: ExactScalar

    @property
    def ok(self) -> bool:
        return self.printed == self.computed


def multiplier_rows() -> List[MultiplierRow]:
    return [MultiplierRow(op, k, lam, ExactScalar.parse(p), operator_multiplier(op, 8, k, lam))
            for op, k, lam, p in MULTIPLIER_TABLE]


# ---------------------------------------------------------------- spectra on invariant valuations

def predicted_spectrum(op: str, k: int) -> List[ExactScalar]:
    """Multipliers of op on the isotypic components containing invariants of degree k."""
    return sorted((operator_multiplier(op, 8, k, lam) for lam in MODULES_BY_DEGREE[k]), key=_sort_key)


def _sort_key(x: ExactScalar):
    if not x:
        return (0, Fraction(0))
    h, c = x.monomial()
    return (h, c)


def _apply(op: str, k: int, v):
    from . import valgebra
    from .klain import fourier

    kind, p = _parse_op(op)
    L = lambda x: valgebra.multiply(valgebra.named("μ1"), x)
    if kind == "LΛ":
        return L(valgebra.derivative(v))
    if kind == "ΛL":
        for _ in range(p):
            v = L(v)
        for _ in range(p):
            v = valgebra.derivative(v)
        return v
    v = fourier(v)
    for _ in range(p):
        v = valgebra.derivative(v)
    return v


def operator_spectrum(op: str, k: int) -> List[ExactScalar]:
    """Eigenvalues of op on invariant valuations of degree k, from the valuation algebra."""
    import flint

    from .klain import VAL_DIMS
    from .valgebra import unit

    n = VAL_DIMS[k]
    cols = [_apply(op, k, unit(k, i)).coords(k) for i in range(n)]
    powers = {c.monomial()[0] for col in cols for c in col if c}
    if len(powers) > 1:
        raise ArithmeticError(f"{op} on degree {k} is not homogeneous in pi")
    h = powers.pop() if powers else 0
    scale = ExactScalar({h: 1})

    def q(x):
        f = (x / scale).to_fraction()
        return flint.fmpq(f.numerator, f.denominator)

    M = flint.fmpq_mat(n, n, [q(cols[j][i]) for i in range(n) for j in range(n)])
    out = []
    for fac, mult in M.charpoly().factor()[1]:
        if fac.degree() != 1:
            raise ArithmeticError(f"{op} on degree {k} has an irrational eigenvalue")
        c = fac.coeffs()
        root = -Fraction(int(c[0].p), int(c[0].q)) / Fraction(int(c[1].p), int(c[1].q))
        out += [ExactScalar({h: root})] * mult
    return sorted(out, key=_sort_key)


# ---------------------------------------------------------------- highest weight vectors

@dataclass(frozen=True)
class Gaussian:
    """Exact element re + im·√-1 of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, o):
        o = _g(o)
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_g(o))

    def __mul__(self, o):
        o = _g(o)
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self):
        return Gaussian(self.re, -self.im)

    def inverse(self):
        n = self.re ** 2 + self.im ** 2
        if not n:
            raise ZeroDivisionError("Gaussian zero")
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * _g(o).inverse()

    def __pow__(self, e: int):
        out, base = Gaussian(Fraction(1)), self
        if e < 0:
            base, e = base.inverse(), -e
        for _ in range(e):
            out = out * base
        return out

    def __bool__(self):
        return bool(self.re or self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"{self.re}+{self.im}i"


def _g(x) -> Gaussian:
    return x if isinstance(x, Gaussian) else Gaussian(Fraction(x))


def _det(M: List[List[Gaussian]]) -> Gaussian:
    M = [row[:] for row in M]
    n, det = len(M), Gaussian(Fraction(1))
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return Gaussian()
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inverse()
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def stiefel_E0(nu: int) -> List[List[Fraction]]:
    """Stiefel matrix (n x nu) of span(e_1, e_3, ..., e_{2nu-1})."""
    return [[Fraction(int(r == 2 * j)) for j in range(nu)] for r in range(2 * nu)]


def stiefel_E0_perp(nu: int) -> List[List[Fraction]]:
    return [[Fraction(int(r == 2 * j + 1)) for j in range(nu)] for r in range(2 * nu)]


def _A(X, l: int) -> List[List[Gaussian]]:
    return [[Gaussian(Fraction(X[2 * j][c]), Fraction(X[2 * j + 1][c])) for c in range(len(X[0]))]
            for j in range(l)]


def _F_l(X, l: int) -> Gaussian:
    A = _A(X, l)
    AAt = [[sum((x * y for x, y in zip(A[i], A[j])), Gaussian()) for j in range(l)] for i in range(l)]
    return _det(AAt)


def highest_weight(nu: int, r: Sequence[int], s: int, sign: int = 1) -> Tuple[int, ...]:
    """Weight of G_±^s Π F_l^{r_l}."""
    if len(r) != nu - 1:
        raise ValueError(f"need {nu - 1} exponents r_l")
    lam = [s + 2 * sum(r[l - 1] for l in range(j, nu)) for j in range(1, nu)]
    return tuple(lam) + (sign * s,)


def highest_weight_eval(nu: int, r: Sequence[int], s: int, X, sign: int = 1,
                        part: Optional[int] = None) -> Gaussian:
    """F = G_±^s Π_l F_l^{r_l} at the plane with Stiefel matrix X.

    With ``part = l`` only F_l(X) is returned.
    """
    if part is not None:
        return _F_l(X, part)
    G = _det(_A(X, nu))
    if sign < 0:
        G = G.conj()
    out = G ** s
    for l, e in enumerate(r, start=1):
        out = out * _F_l(X, l) ** e
    return out


# ---------------------------------------------------------------- Sp(1) bookkeeping

class RepSum(Counter):
    """Formal sum of Sp(1)-modules V_n (dimension n+1), keyed by n."""

    @classmethod
    def of(cls, *pairs) -> "RepSum":
        out = cls()
        for n, m in pairs:
            out[n] += m
        return out

    def __mul__(self, other: "RepSum") -> "RepSum":
        return clebsch_gordan_product(self, other)

    def __add__(self, other):
        out = RepSum(self)
        out.update(other)
        return out

    def __sub__(self, other):
        out = RepSum(self)
        for n, m in other.items():
            out[n] -= m
            if out[n] < 0:
                raise ValueError(f"negative multiplicity of V_{n}")
        return RepSum({n: m for n, m in out.items() if m})

    @property
    def dim(self) -> int:
        return sum((n + 1) * m for n, m in self.items())

    @property
    def invariants(self) -> int:
        return self.get(0, 0)

    def render(self) -> str:
        items = [(n, m) for n, m in sorted(self.items()) if m]
        if not items:
            return "0"
        return "+".join(f"{m if m > 1 else ''}V{n}" for n, m in items)


def clebsch_gordan_product(a: Mapping[int, int], b: Mapping[int, int]) -> RepSum:
    out = RepSum()
    for k, m in a.items():
        for l, p in b.items():
            for j in range(abs(k - l), k + l + 1, 2):
                out[j] += m * p
    return RepSum({n: m for n, m in out.items() if m})


_V0, _V2 = RepSum.of((0, 1)), RepSum.of((2, 1))
_V0V2 = RepSum.of((0, 1), (2, 1))

# (Λ^a Ṽ* ⊗ Λ^b Ṽ*)^{Sp(1)} as modules of the second factor; zero when a+b is odd.
R_TABLE: Dict[Tuple[int, int], RepSum] = {}
for _ab in ((0, 0), (0, 4), (4, 0), (4, 4)):
    R_TABLE[_ab] = _V0
for _ab in ((0, 2), (2, 0), (2, 4), (4, 2)):
    R_TABLE[_ab] = _V2
for _ab in ((1, 1), (1, 3), (3, 1), (3, 3)):
    R_TABLE[_ab] = _V0V2
R_TABLE[(2, 2)] = RepSum.of((0, 2), (2, 1), (4, 1))

# Λ^i U* for U = V_2
_LAMBDA_U = (_V0, _V2, _V2, _V0)


def _R(a: int, b: int) -> RepSum:
    return R_TABLE.get((a, b), RepSum())


def omega_decomposition(k: int, l: int) -> RepSum:
    """Sp(2)-invariant horizontal forms of bidegree (k, l) at the base point."""
    out = RepSum()
    if k < 0 or l < 0:
        return out
    for i in range(4):
        for j in range(4):
            r = _R(k - i, l - j)
            if r:
                out = out + r * _LAMBDA_U[i] * _LAMBDA_U[j]
    return out


def curv_decomposition(k: int) -> RepSum:
    """Curv_k^{Sp(2)}: forms of bidegree (k, 7-k) modulo dα-multiples."""
    if k == 8:
        return RepSum(_V0)
    return omega_decomposition(k, 7 - k) - omega_decomposition(k - 1, 6 - k)


# Val_k^{Sp(2)} (reference data)
VAL_DECOMPOSITION: Dict[int, RepSum] = {
    0: _V0, 1: _V0,
    2: RepSum.of((0, 2), (4, 1)),
    3: RepSum.of((0, 3), (4, 2)),
    4: RepSum.of((0, 5), (4, 3), (8, 1)),
    5: RepSum.of((0, 3), (4, 2)),
    6: RepSum.of((0, 2), (4, 1)),
    7: _V0, 8: _V0,
}


def dimension_table() -> Dict[str, List[dict]]:
    """Both decomposition tables with the invariant dimensions."""
    forms = [{"k": k, "top": omega_decomposition(k, 7 - k).render(),
              "lower": omega_decomposition(k - 1, 6 - k).render()} for k in range(4)]
    modules = [{"k": k, "val": VAL_DECOMPOSITION[k].render(), "curv": curv_decomposition(k).render(),
                "dim_val": VAL_DECOMPOSITION[k].invariants, "dim_curv": curv_decomposition(k).invariants}
               for k in range(9)]
    return {"forms": forms, "modules": modules}


@dataclass(frozen=True)
class V0Row:
    k: int
    predicted_top: int
    rank_top: int
    predicted_lower: int
    rank_lower: int

    @property
    def ok(self) -> bool:
        return self.predicted_top == self.rank_top and self.predicted_lower == self.rank_lower


def v0_consistency() -> List[V0Row]:
    """V_0-multiplicities of the form spaces against exact ranks of invariant forms."""
    from .catalog import invariant_span

    rows = []
    for k in range(8):
        top = invariant_span(k, 7 - k).rank
        low = invariant_span(k - 1, 6 - k).rank if k >= 1 and k <= 6 else 0
        rows.append(V0Row(k, omega_decomposition(k, 7 - k).invariants, top,
                          omega_decomposition(k - 1, 6 - k).invariants, low))
    return rows
