"""Invariant forms on the sphere bundle of H^2: symbolic words and the Lambda catalog.

Builders such as :func:`lambda_form` are written against a generator mapping
``g`` (name -> object supporting ``+``, ``-``, wedge ``*`` and ``scale``).
Passing :func:`symbolic_generators` yields :class:`InvariantForm` words,
passing :func:`quatval.model.base_generators` yields base-point coordinate
forms, and passing a restricted generator set yields Klain integrands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

import flint

from .exterior import (CoordForm, DALPHA, Form, NCOV, indices_to_mask, mask_to_indices,
                       primitive_part)
from .model import GENERATORS, base_generators, sp2_lift, left_mul_matrix, UNITS, _unit

__all__ = [
    "InvariantForm",
    "symbolic_generators",
    "phi",
    "Theta",
    "Phi",
    "lambda_form",
    "LAMBDA_INDEX",
    "lambda_names",
    "build_lambda",
    "V_TABLE",
    "PRINTED_V",
    "v_coefficients",
    "build_v",
    "CurvatureMeasure",
    "relations",
    "primitives",
    "printed_sign_variant",
    "lambda_coord",
    "lambda_measure",
    "verify_relations_and_primitivity",
    "invariant_blocks",
    "invariant_span",
    "stabilizer_invariant_dimension",
    "lift",
]

Q = flint.fmpq
IMAG = ("i", "j", "k")
CYCLIC = (("i", "j", "k"), ("j", "k", "i"), ("k", "i", "j"))

_GEN_INDEX = {name: n for n, name in enumerate(GENERATORS)}
_ODD = frozenset(_GEN_INDEX[n] for n in GENERATORS if n.startswith(("alpha", "beta", "gamma")))


def _bidegree_of(name: str) -> Tuple[int, int]:
    if name in ("alpha",) or name.startswith("beta"):
        return (1, 0)
    if name.startswith("gamma"):
        return (0, 1)
    if name == "theta_s":
        return (1, 1)
    m = int(name[5])
    return (m, 2 - m)


_BIDEG = tuple(_bidegree_of(n) for n in GENERATORS)

_PRETTY = {
    "alpha": "α", "theta_s": "θs",
    **{f"beta_{q}": f"β{q}" for q in IMAG},
    **{f"gamma_{q}": f"γ{q}" for q in IMAG},
    **{f"theta{m}_{q}": f"θ{m}{q}" for m in range(3) for q in IMAG},
}


def _merge_words(u: Tuple[int, ...], v: Tuple[int, ...]):
    """Sorted concatenation with the graded sign; (0, ()) if an odd letter repeats."""
    sign = 1
    for y in v:
        if y in _ODD:
            if y in u:
                return 0, ()
            n = sum(1 for x in u if x > y and x in _ODD)
            if n & 1:
                sign = -sign
    return sign, tuple(sorted(u + v))


class InvariantForm:
    """Linear combination of words in the seventeen named generators.

    A word is a sorted tuple of generator indices (odd letters at most once).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[int, ...], object] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def generator(cls, name: str) -> "InvariantForm":
        return cls({(_GEN_INDEX[name],): Q(1)})

    @classmethod
    def one(cls) -> "InvariantForm":
        return cls({(): Q(1)})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return InvariantForm(out)

    __radd__ = __add__

    def __neg__(self):
        return InvariantForm({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return InvariantForm({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, InvariantForm):
            return self.scale(other)
        out: Dict[Tuple[int, ...], object] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                s, w = _merge_words(u, v)
                if s:
                    out[w] = out.get(w, 0) + (cu * cv if s > 0 else -(cu * cv))
        return InvariantForm(out)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int):
        out = InvariantForm.one()
        for _ in range(k):
            out = out * self
        return out

    def bidegrees(self) -> set:
        return {tuple(map(sum, zip((0, 0), *(_BIDEG[x] for x in w)))) for w in self.terms}

    def evaluate(self, gens: Mapping[str, Form] | None = None) -> Form:
        """Image under the algebra map sending each generator to ``gens[name]``."""
        if gens is None:
            gens = base_generators()
        cache: Dict[Tuple[int, ...], Form] = {}
        total = None
        for w, c in self.terms.items():
            f = _word_value(w, gens, cache)
            total = f.scale(c) if total is None else total + f.scale(c)
        if total is None:
            any_gen = gens["alpha"]
            return any_gen._new({})
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            mono = "∧".join(_PRETTY[GENERATORS[x]] for x in w) or "1"
            parts.append(f"{self.terms[w]}·{mono}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"word": [GENERATORS[x] for x in w], "coef": str(self.terms[w])}
                for w in sorted(self.terms)]

    def __repr__(self):
        return f"InvariantForm({self.render()})"


def _word_value(w, gens, cache):
    if w in cache:
        return cache[w]
    if len(w) == 1:
        val = gens[GENERATORS[w[0]]]
    elif not w:
        a = gens["alpha"]
        val = a._new({0: Q(1)})
    else:
        val = _word_value(w[:-1], gens, cache).wedge(gens[GENERATORS[w[-1]]])
    cache[w] = val
    return val


@lru_cache(maxsize=None)
def _symbolic() -> Dict[str, InvariantForm]:
    g = {n: InvariantForm.generator(n) for n in GENERATORS}
    g["dalpha"] = -phi(1, 1, g) - g["theta_s"]
    return g


def symbolic_generators() -> Dict[str, InvariantForm]:
    return dict(_symbolic())


# --- building blocks ------------------------------------------------------------

def _sum(items):
    items = list(items)
    out = items[0]
    for x in items[1:]:
        out = out + x
    return out


def phi(a: int, b: int, g):
    B = lambda q: g[f"beta_{q}"]
    C = lambda q: g[f"gamma_{q}"]
    if (a, b) == (1, 1):
        return _sum(B(q) * C(q) for q in IMAG)
    if (a, b) == (3, 0):
        return B("i") * B("j") * B("k")
    if (a, b) == (2, 1):
        return _sum(B(q) * B(r) * C(s) for q, r, s in CYCLIC)
    if (a, b) == (1, 2):
        return _sum(B(q) * C(r) * C(s) for q, r, s in CYCLIC)
    if (a, b) == (0, 3):
        return C("i") * C("j") * C("k")
    raise KeyError(f"no phi_{{{a},{b}}}")


def Theta(m: int, n: int, g):
    return _sum(g[f"theta{m}_{q}"] * g[f"theta{n}_{q}"] for q in IMAG)


def Phi(kind: str, g):
    """The Phi family, named like "gamma,theta0" or "beta,beta,theta2"."""
    parts = kind.split(",")
    if len(parts) == 2:
        x, t = parts
        return _sum(g[f"{x}_{q}"] * g[f"{t}_{q}"] for q in IMAG)
    if len(parts) == 3 and parts[0] == parts[1]:
        x, _, t = parts
        return _sum(g[f"{x}_{q}"] * g[f"{x}_{r}"] * g[f"{t}_{s}"] for q, r, s in CYCLIC)
    raise KeyError(f"unknown Phi kind {kind!r}")


LAMBDA_INDEX: Dict[int, Tuple[int, ...]] = {
    0: (1,), 1: (1, 2), 2: (1, 2, 3, 4), 3: tuple(range(1, 8)), 4: tuple(range(1, 8)),
    5: (1, 2, 3, 4), 6: (1, 2), 7: (1,),
}


def lambda_names() -> List[Tuple[int, int]]:
    return [(k, i) for k in range(8) for i in LAMBDA_INDEX[k]]


def lambda_form(k: int, i: int, g):
    """The primitive invariant 7-form Lambda_{k,i} built from generators ``g``."""
    da = g["dalpha"]
    half, sixth, third = Q(1, 2), Q(1, 6), Q(1, 3)
    corr = phi(1, 1, g).scale(half) + da.scale(sixth)  # [1/2 phi11 + 1/6 dalpha]
    da2 = da * da
    T = lambda m, n: Theta(m, n, g)
    p = lambda a, b: phi(a, b, g)
    P = lambda s: Phi(s, g)
    table: Dict[Tuple[int, int], Callable] = {
        (0, 1): lambda: p(0, 3) * T(0, 0),
        (1, 1): lambda: p(1, 2) * T(0, 0),
        (1, 2): lambda: p(0, 3) * T(0, 1),
        (2, 1): lambda: p(2, 1) * T(0, 0),
        (2, 2): lambda: p(1, 2) * T(0, 1),
        (2, 3): lambda: p(0, 3) * (T(0, 2) + da2.scale(half)),
        (2, 4): lambda: p(0, 3) * P("beta,beta,theta0") - P("gamma,theta0") * corr * da,
        (3, 1): lambda: p(3, 0) * T(0, 0),
        (3, 2): lambda: p(2, 1) * T(0, 1),
        (3, 3): lambda: p(1, 2) * (T(0, 2).scale(Q(4)) + da2.scale(Q(2))),
        (3, 4): lambda: P("beta,theta0") * P("gamma,gamma,theta2")
        + P("beta,theta2") * P("gamma,gamma,theta0") + (p(1, 2) * da * da).scale(third),
        (3, 5): lambda: p(0, 3) * T(1, 2),
        (3, 6): lambda: p(3, 0) * P("gamma,gamma,theta0") - P("beta,theta0") * da * corr,
        (3, 7): lambda: p(0, 3) * P("beta,beta,theta1") - P("gamma,theta1") * da * corr,
        (4, 1): lambda: p(3, 0) * T(0, 1),
        (4, 2): lambda: p(2, 1) * (T(0, 2) + da2.scale(half)),
        (4, 3): lambda: P("beta,beta,theta0") * P("gamma,theta2")
        + P("beta,beta,theta2") * P("gamma,theta0") + (p(2, 1) * da * da).scale(third),
        (4, 4): lambda: p(1, 2) * T(1, 2),
        (4, 5): lambda: p(0, 3) * T(2, 2),
        (4, 6): lambda: p(3, 0) * P("gamma,gamma,theta1") - P("beta,theta1") * da * corr,
        (4, 7): lambda: p(0, 3) * P("beta,beta,theta2") - P("gamma,theta2") * da * corr,
        (5, 1): lambda: p(3, 0) * (T(0, 2) + da2.scale(half)),
        (5, 2): lambda: p(2, 1) * T(1, 2),
        (5, 3): lambda: p(1, 2) * T(2, 2),
        (5, 4): lambda: p(3, 0) * P("gamma,gamma,theta2") - P("beta,theta2") * da * corr,
        (6, 1): lambda: p(3, 0) * T(1, 2),
        (6, 2): lambda: p(2, 1) * T(2, 2),
        (7, 1): lambda: p(3, 0) * T(2, 2),
    }
    if (k, i) not in table:
        raise KeyError(f"no Lambda_{{{k},{i}}} in the catalog")
    return table[k, i]()


@lru_cache(maxsize=None)
def _lambda_symbolic(k: int, i: int) -> InvariantForm:
    return lambda_form(k, i, _symbolic())


@lru_cache(maxsize=None)
def _lambda_coord(k: int, i: int) -> CoordForm:
    return lambda_form(k, i, base_generators())


def build_lambda(k: int, i: int) -> InvariantForm:
    return _lambda_symbolic(k, i)


def lambda_coord(k: int, i: int) -> CoordForm:
    """Lambda_{k,i} at the base point."""
    return _lambda_coord(k, i)


# --- the curvature measures v_i^k -----------------------------------------------

def _f(s: str) -> Fraction:
    return Fraction(s)


# v_i^k as coefficients over Lambda_{k,1..}
V_TABLE: Dict[Tuple[int, int], Tuple[str, ...]] = {
    (0, 1): ("1",),
    (1, 1): ("1", "2"),
    (1, 2): ("2", "-3"),
    (2, 1): ("-1", "-2", "-6", "0"),
    (2, 2): ("0", "-1/12", "1/2", "-1"),
    (2, 3): ("17/63", "-1/63", "-5/7", "-1"),
    (2, 4): ("-1/9", "1/9", "-1/3", "-1"),
    (3, 1): ("1/2", "1", "3/4", "0", "1", "0", "0"),
    # printed with coefficient 1 on Lambda_{3,2}; only 1/3 gives an eigenvector of P_3
    # and I*(v_2^3) = v_2^4
    (3, 2): ("0", "1/3", "0", "0", "-1", "2", "2"),
    (3, 3): ("-3/7", "-4/21", "3/28", "0", "1/7", "1", "1"),
    (3, 4): ("0", "1/3", "-1/2", "1", "1", "2", "2"),
    (3, 5): ("23/45", "-4/45", "1/180", "-4/15", "11/45", "1", "1"),
    (3, 6): ("2/5", "-1/5", "1/20", "3/10", "-1/5", "-2", "1"),
    (3, 7): ("-2/9", "1/9", "-1/36", "-1/6", "1/9", "-2", "1"),
    (4, 1): ("-1", "-3", "0", "-1", "-1/2", "0", "0"),
    (4, 2): ("1", "0", "0", "-1/3", "0", "-2", "-2"),
    (4, 3): ("-1/7", "-3/7", "0", "4/21", "3/7", "-1", "-1"),
    (4, 4): ("-1", "2", "-1", "-1/3", "0", "-2", "-2"),
    (4, 5): ("-11/45", "-1/45", "4/15", "4/45", "-23/45", "-1", "-1"),
    (4, 6): ("1/5", "-1/5", "-3/10", "1/5", "-2/5", "-1", "2"),
    (4, 7): ("-1/9", "1/9", "1/6", "-1/9", "2/9", "-1", "2"),
    (5, 1): ("6", "2", "1", "0"),
    (5, 2): ("-1/2", "1/12", "0", "1"),
    (5, 3): ("5/7", "1/63", "-17/63", "1"),
    (5, 4): ("1/3", "-1/9", "1/9", "1"),
    (6, 1): ("2", "1"),
    (6, 2): ("-3/2", "1"),
    (7, 1): ("1",),
}

# rows of the printed list that differ from V_TABLE
PRINTED_V: Dict[Tuple[int, int], Tuple[str, ...]] = {
    (3, 2): ("0", "1", "0", "0", "-1", "2", "2"),
}

V_INDEX: Dict[int, Tuple[int, ...]] = {k: tuple(i for (kk, i) in V_TABLE if kk == k) for k in range(8)}


def v_coefficients(k: int, i: int) -> List[Fraction]:
    if (k, i) not in V_TABLE:
        raise KeyError(f"no v_{i}^{k} in the list")
    return [_f(s) for s in V_TABLE[k, i]]


@dataclass(frozen=True)
class CurvatureMeasure:
    """An invariant curvature measure of degree k, stored by Lambda_{k,.} coordinates."""

    k: int
    coeffs: Tuple[Fraction, ...]
    name: str = ""

    def representative(self) -> InvariantForm:
        out = InvariantForm()
        for i, c in zip(LAMBDA_INDEX[self.k], self.coeffs):
            if c:
                out = out + build_lambda(self.k, i).scale(Q(c.numerator, c.denominator))
        return out

    def coord(self) -> CoordForm:
        out = CoordForm()
        for i, c in zip(LAMBDA_INDEX[self.k], self.coeffs):
            if c:
                out = out + lambda_coord(self.k, i).scale(Q(c.numerator, c.denominator))
        return out

    def __add__(self, other):
        if self.k != other.k:
            raise ValueError("degree mismatch")
        return CurvatureMeasure(self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "CurvatureMeasure":
        c = Fraction(c)
        return CurvatureMeasure(self.k, tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def lambda_measure(k: int, i: int) -> CurvatureMeasure:
    n = len(LAMBDA_INDEX[k])
    return CurvatureMeasure(k, tuple(Fraction(int(j == i)) for j in LAMBDA_INDEX[k]),
                            f"Λ_{{{k},{i}}}")


def build_v(k: int, i: int, printed: bool = False) -> CurvatureMeasure:
    """v_i^k; ``printed=True`` returns the row exactly as printed where it differs."""
    if printed and (k, i) in PRINTED_V:
        return CurvatureMeasure(k, tuple(_f(s) for s in PRINTED_V[k, i]), f"v_{i}^{k} (printed)")
    return CurvatureMeasure(k, tuple(v_coefficients(k, i)), f"v_{i}^{k}")


# --- relations and primitivity ---------------------------------------------------

def relations(g) -> List[Tuple[str, object]]:
    """The relations among the theta forms, as (label, expression expected to vanish)."""
    out = []
    t = lambda m, q: g[f"theta{m}_{q}"]
    ts = g["theta_s"]
    for i, j, k in CYCLIC:
        tag = f"({i}{j}{k})"
        out += [
            (f"θ0{i}²=θ0{j}² {tag}", t(0, i) * t(0, i) - t(0, j) * t(0, j)),
            (f"θ0{j}²=θ0{k}² {tag}", t(0, j) * t(0, j) - t(0, k) * t(0, k)),
            (f"θ0{i}θ0{j}=0 {tag}", t(0, i) * t(0, j)),
            (f"θ0{i}θ1{i}=θ0{j}θ1{j} {tag}", t(0, i) * t(1, i) - t(0, j) * t(1, j)),
            (f"θ0{j}θ1{j}=θ0{k}θ1{k} {tag}", t(0, j) * t(1, j) - t(0, k) * t(1, k)),
            (f"θ0{i}θ1{j}=-θ0{j}θ1{i} {tag}", t(0, i) * t(1, j) + t(0, j) * t(1, i)),
            (f"-θ0{j}θ1{i}=-θ0{k}θs {tag}", t(0, j) * t(1, i) - t(0, k) * ts),
            # printed with -θ1iθ1j; polarizing the θ1i² relation forces +
            (f"θ0{i}θ2{j}+θ0{j}θ2{i}+θ1{i}θ1{j}=0 {tag}",
             t(0, i) * t(2, j) + t(0, j) * t(2, i) + t(1, i) * t(1, j)),
            (f"θ0{i}θ2{j}-θ0{j}θ2{i}+θ1{k}θs=0 {tag}",
             t(0, i) * t(2, j) - t(0, j) * t(2, i) + t(1, k) * ts),
            (f"θ1{i}²-2θ0{j}θ2{j}-2θ0{k}θ2{k}-θs²=0 {tag}",
             t(1, i) * t(1, i) - (t(0, j) * t(2, j)).scale(Q(2)) - (t(0, k) * t(2, k)).scale(Q(2))
             - ts * ts),
            (f"θ1{i}θ2{i}=θ1{j}θ2{j} {tag}", t(1, i) * t(2, i) - t(1, j) * t(2, j)),
            (f"θ1{j}θ2{j}=θ1{k}θ2{k} {tag}", t(1, j) * t(2, j) - t(1, k) * t(2, k)),
            (f"θ1{i}θ2{j}=-θ1{j}θ2{i} {tag}", t(1, i) * t(2, j) + t(1, j) * t(2, i)),
            (f"-θ1{j}θ2{i}=-θ2{k}θs {tag}", t(1, j) * t(2, i) - t(2, k) * ts),
            (f"θ2{i}²=θ2{j}² {tag}", t(2, i) * t(2, i) - t(2, j) * t(2, j)),
            (f"θ2{j}²=θ2{k}² {tag}", t(2, j) * t(2, j) - t(2, k) * t(2, k)),
            (f"θ2{i}θ2{j}=0 {tag}", t(2, i) * t(2, j)),
        ]
    return out


def printed_sign_variant(g) -> List[Tuple[str, object]]:
    """The mixed theta0-theta2 relation with the sign as printed (it does not vanish)."""
    t = lambda m, q: g[f"theta{m}_{q}"]
    return [(f"θ0{i}θ2{j}+θ0{j}θ2{i}-θ1{i}θ1{j}", t(0, i) * t(2, j) + t(0, j) * t(2, i)
             - t(1, i) * t(1, j)) for i, j, _ in CYCLIC]


def primitives(g) -> List[Tuple[str, object]]:
    t = lambda m, q: g[f"theta{m}_{q}"]
    ts2 = (g["theta_s"] * g["theta_s"]).scale(Q(1, 3))
    out = [("Θ00", Theta(0, 0, g)), ("Θ01", Theta(0, 1, g))]
    out += [(f"θ1{q}θ1{r}", t(1, q) * t(1, r)) for q, r, _ in CYCLIC]
    out += [(f"θ1{q}²-θs²/3", t(1, q) * t(1, q) - ts2) for q in IMAG]
    out += [("Θ12", Theta(1, 2, g)), ("Θ22", Theta(2, 2, g))]
    return out


@dataclass
class CheckReport:
    passed: List[str]
    failed: List[Tuple[str, str]]

    @property
    def ok(self) -> bool:
        return not self.failed


def verify_relations_and_primitivity(gens: Mapping[str, Form] | None = None) -> CheckReport:
    """Check every relation, every primitive and dalpha-primitivity of each Lambda."""
    g = gens if gens is not None else base_generators()
    passed, failed = [], []
    for label, expr in relations(g):
        (passed.append(label) if not expr else failed.append((label, repr(expr))))
    ts = g["theta_s"]
    for label, expr in primitives(g):
        w = expr * ts
        (passed.append(f"{label}∧θs=0") if not w else failed.append((f"{label}∧θs=0", repr(w))))
    for k, i in lambda_names():
        w = lambda_form(k, i, g) * g["dalpha"]
        name = f"Λ{k}{i}∧dα=0"
        (passed.append(name) if not w else failed.append((name, repr(w))))
    return CheckReport(passed, failed)


# --- invariant spans --------------------------------------------------------------

_VEC = ("beta", "gamma", "theta0", "theta1", "theta2")
_VEC_ODD = {"beta": True, "gamma": True, "theta0": False, "theta1": False, "theta2": False}
_VEC_BIDEG = {"beta": (1, 0), "gamma": (0, 1), "theta0": (0, 2), "theta1": (1, 1), "theta2": (2, 0)}


@lru_cache(maxsize=None)
def invariant_blocks() -> Tuple[Tuple[str, Tuple[int, int], bool, InvariantForm], ...]:
    """Sp(1)-invariant building blocks: alpha, theta_s, dot and triple products.

    Returns (label, bidegree, odd, form) with nonzero forms only.
    """
    g = _symbolic()
    out = [("α", (1, 0), True, g["alpha"]), ("θs", (1, 1), False, g["theta_s"])]
    for x, y in combinations_with_replacement(_VEC, 2):
        f = _sum(g[f"{x}_{q}"] * g[f"{y}_{q}"] for q in IMAG)
        if f:
            bd = tuple(a + b for a, b in zip(_VEC_BIDEG[x], _VEC_BIDEG[y]))
            out.append((f"<{x},{y}>", bd, _VEC_ODD[x] ^ _VEC_ODD[y], f))
    perms = [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((1, 0, 2), -1), ((0, 2, 1), -1),
             ((2, 1, 0), -1)]
    for x, y, z in combinations_with_replacement(_VEC, 3):
        f = None
        for p, s in perms:
            term = g[f"{x}_{IMAG[p[0]]}"] * g[f"{y}_{IMAG[p[1]]}"] * g[f"{z}_{IMAG[p[2]]}"]
            term = term if s > 0 else -term
            f = term if f is None else f + term
        if f:
            bd = tuple(a + b + c for a, b, c in zip(_VEC_BIDEG[x], _VEC_BIDEG[y], _VEC_BIDEG[z]))
            out.append((f"[{x},{y},{z}]", bd, _VEC_ODD[x] ^ _VEC_ODD[y] ^ _VEC_ODD[z], f))
    return tuple(out)


@dataclass
class SpanResult:
    bidegree: Tuple[int, int]
    words: List[str]
    forms: List[InvariantForm]
    coords: List[CoordForm]
    rank: int
    basis: List[int]  # indices into words of an independent subset

    def matrix(self):
        return _coord_matrix([self.coords[b] for b in self.basis])


def _coord_matrix(forms: Sequence[CoordForm]):
    masks = sorted({m for f in forms for m in f.terms})
    col = {m: j for j, m in enumerate(masks)}
    M = flint.fmpq_mat(len(forms), max(len(masks), 1))
    for r, f in enumerate(forms):
        for m, c in f.terms.items():
            M[r, col[m]] = c
    return M, masks


def _independent(forms: Sequence[CoordForm]) -> List[int]:
    if not forms:
        return []
    M, _ = _coord_matrix(forms)
    # pivots of the transpose give an independent subset of rows
    R, r = M.transpose().rref()
    pivots = []
    row = 0
    for j in range(R.ncols()):
        if row < r and R[row, j] != 0:
            pivots.append(j)
            row += 1
    return pivots


@lru_cache(maxsize=None)
def invariant_span(p: int, q: int, horizontal: bool = True) -> SpanResult:
    """Products of invariant blocks of bidegree (p, q), with the exact rank.

    ``p`` counts dz-legs and ``q`` counts dzeta-legs.  With ``horizontal``
    the contact form alpha is excluded, giving forms on the contact plane.
    """
    blocks = [b for b in invariant_blocks() if not (horizontal and b[0] == "α")]
    base = base_generators()
    bcoord = [b[3].evaluate(base) for b in blocks]
    words, forms, coords = [], [], []

    def rec(start, bd, label, sym, crd):
        if bd == (p, q):
            words.append(label or "1")
            forms.append(sym)
            coords.append(crd)
            return
        for n in range(start, len(blocks)):
            name, b, odd, f = blocks[n]
            nb = (bd[0] + b[0], bd[1] + b[1])
            if nb[0] > p or nb[1] > q:
                continue
            nxt = n + 1 if odd else n
            new_crd = crd.wedge(bcoord[n])
            if not new_crd:
                continue
            rec(nxt, nb, f"{label}·{name}" if label else name, sym * f, new_crd)

    rec(0, (0, 0), "", InvariantForm.one(), CoordForm({0: Q(1)}))
    basis = _independent(coords)
    return SpanResult((p, q), words, forms, coords, len(basis), basis)


def lift(form: CoordForm, p: int | None = None, q: int | None = None) -> InvariantForm:
    """A symbolic preimage of an invariant coordinate form of bidegree (p, q)."""
    if p is None:
        bds = {(sum(1 for i in mask_to_indices(m) if i < 8), sum(1 for i in mask_to_indices(m) if i >= 8))
               for m in form.terms}
        if len(bds) != 1:
            raise ValueError("lift needs a form of a single bidegree")
        p, q = bds.pop()
    horizontal = not any(m & 1 for m in form.terms)
    span = invariant_span(p, q, horizontal)
    basis = [span.coords[b] for b in span.basis]
    M, masks = _coord_matrix(basis + [form])
    n = len(basis)
    A = M.transpose()  # columns = basis forms, last column = target
    R, r = A.rref()
    x = [Q(0)] * n
    for row in range(r):
        lead = next(j for j in range(A.ncols()) if R[row, j] != 0)
        if lead == n:
            raise ValueError("form is not in the invariant span")
        x[lead] = R[row, n]
    out = InvariantForm()
    for c, b in zip(x, span.basis):
        if c:
            out = out + span.forms[b].scale(c)
    return out


# --- independent oracle: invariants of the stabilizer ------------------------------

def _stabilizer_matrices() -> List[List[List[Fraction]]]:
    """Isotropy action of the stabilizer of (0, e1) on the 15 tangent directions."""
    zero = _unit()
    mats = []
    # (diag(p, 0), p) acting by x -> M x - x p
    for p in ("i", "j", "k"):
        L = left_mul_matrix([[UNITS[p], zero], [zero, zero]])
        R = _right_matrix(p)
        mats.append([[L[r][c] - R[r][c] for c in range(8)] for r in range(8)])
    # (diag(0, d), 0)
    for d in ("i", "j", "k"):
        mats.append(left_mul_matrix([[zero, zero], [zero, UNITS[d]]]))
    out = []
    for Y in mats:
        assert all(Y[r][0] == 0 for r in range(8)), "stabilizer must fix e1"
        # tangent basis: z-directions 0..7, zeta-directions e2..e8 -> 8..14
        T = [[Fraction(0)] * NCOV for _ in range(NCOV)]
        for r in range(8):
            for c in range(8):
                T[r][c] = Y[r][c]
        for r in range(1, 8):
            for c in range(1, 8):
                T[7 + r][7 + c] = Y[r][c]
        out.append(T)
    return out


def _right_matrix(q: str):
    from .model import right_mul
    cols = []
    for c in range(8):
        e = [Fraction(int(r == c)) for r in range(8)]
        cols.append(right_mul(e, q))
    return [[cols[c][r] for c in range(8)] for r in range(8)]


def _monomials(p: int, q: int, horizontal: bool) -> List[int]:
    zs = list(range(1 if horizontal else 0, 8))
    ss = list(range(8, 15))
    out = []
    for a in combinations(zs, p):
        for b in combinations(ss, q):
            out.append(indices_to_mask(a + b)[1])
    return out


def stabilizer_invariant_dimension(p: int, q: int, horizontal: bool = True) -> int:
    """Dimension of the forms of bidegree (p, q) fixed by the isotropy algebra.

    Computed as an iterated exact kernel, independently of the generators.
    """
    mons = _monomials(p, q, horizontal)
    pos = {m: n for n, m in enumerate(mons)}
    K = None  # current kernel basis, as an fmpz_mat with len(mons) rows
    for T in _stabilizer_matrices():
        # action on covectors: e^i -> -sum_j T[i][j] e^j
        rows: Dict[int, Dict[int, int]] = {}
        for col, m in enumerate(mons):
            legs = mask_to_indices(m)
            for i in legs:
                rest = m ^ (1 << i)
                for j in range(NCOV):
                    c = T[i][j]
                    if not c or rest & (1 << j):
                        continue
                    lo, hi = min(i, j), max(i, j)
                    between = (rest >> (lo + 1)) & ((1 << (hi - lo - 1)) - 1) if hi > lo else 0
                    sign = -1 if between.bit_count() & 1 else 1
                    target = rest | (1 << j)
                    r = pos.get(target)
                    if r is None:
                        continue
                    rows.setdefault(r, {})
                    rows[r][col] = rows[r].get(col, 0) - sign * int(c)
        A = flint.fmpz_mat(max(len(rows), 1), len(mons))
        for rr, (r, entries) in enumerate(sorted(rows.items())):
            for col, v in entries.items():
                A[rr, col] = v
        if K is not None:
            A = A * K
        N, nullity = A.nullspace()
        N = _cols(N, nullity)
        K = N if K is None else K * N
        if nullity == 0:
            return 0
    return K.ncols()


def _cols(N, n):
    out = flint.fmpz_mat(N.nrows(), n)
    for r in range(N.nrows()):
        for c in range(n):
            out[r, c] = N[r, c]
    return out
