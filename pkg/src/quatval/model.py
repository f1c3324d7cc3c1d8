"""Quaternionic linear algebra on H^2 and coordinate models of the invariant generators.

Conventions.  ``H^2 = R^8`` with coordinates ``(x1, x2)``, each quaternion
written in the basis ``1, i, j, k``.  ``Sp(1)`` acts by right multiplication,
``Sp(2)`` by left multiplication with quaternionic 2x2 matrices.

The seventeen generators at a point ``(z, zeta)`` of the sphere bundle are::

    alpha   = <dz, zeta>            beta_q = <dz, zeta q>      gamma_q = <dzeta, zeta q>
    theta_{0,q} = 1/2 <(P dzeta) q, P dzeta>
    theta_{1,q} =     <(P dzeta) q, P dz>
    theta_{2,q} = 1/2 <(P dz) q, P dz>
    theta_s     =    -<P dzeta, P dz>

where ``P`` is the orthogonal projection onto ``(zeta H)^perp`` and the
pairing of two vectors of 1-forms is ``sum_r a_r ^ b_r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import flint

from .exterior import CoordForm, Form, NCOV
from .scalars import ExactScalar, ZERO, as_scalar, gamma_half

__all__ = [
    "Quaternion",
    "UNITS",
    "GENERATORS",
    "right_mul",
    "left_mul_matrix",
    "generators_from",
    "expand_generator_at",
    "ambient_generators",
    "base_generators",
    "to_coord",
    "sp2_lift",
    "lie_d_images",
    "PYTHAGOREAN",
    "SpecialPlane",
    "special_plane",
    "orthocomplement",
    "f_value",
    "F_INDICES",
    "sphere_moment",
    "integrate_on_sphere",
    "RestrictedPlane",
]

Q = flint.fmpq


def _q(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    x = Fraction(x)
    return flint.fmpq(x.numerator, x.denominator)


@dataclass(frozen=True)
class Quaternion:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __add__(self, o):
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm2(self) -> Fraction:
        return self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2

    def components(self) -> Tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.d)


def _unit(a=0, b=0, c=0, d=0) -> Quaternion:
    return Quaternion(Fraction(a), Fraction(b), Fraction(c), Fraction(d))


UNITS = {"1": _unit(1), "i": _unit(0, 1), "j": _unit(0, 0, 1), "k": _unit(0, 0, 0, 1)}
IMAG = ("i", "j", "k")

GENERATORS = (
    ["alpha"]
    + [f"beta_{q}" for q in IMAG]
    + [f"gamma_{q}" for q in IMAG]
    + [f"theta{m}_{q}" for m in range(3) for q in IMAG]
    + ["theta_s"]
)

# right multiplication by a unit on one quaternion block (a, b, c, d): (sign, source)
_RIGHT = {
    "1": ((1, 0), (1, 1), (1, 2), (1, 3)),
    "i": ((-1, 1), (1, 0), (1, 3), (-1, 2)),
    "j": ((-1, 2), (-1, 3), (1, 0), (1, 1)),
    "k": ((-1, 3), (1, 2), (-1, 1), (1, 0)),
}


def right_mul(v: Sequence, q: str) -> List:
    """Right multiplication of an 8-vector (any ring, or 1-forms) by 1, i, j or k."""
    out = []
    for block in (0, 4):
        for sign, src in _RIGHT[q]:
            x = v[block + src]
            out.append(x if sign > 0 else -x)
    return out


def left_mul_matrix(m: Sequence[Sequence[Quaternion]]) -> List[List[Fraction]]:
    """Real 8x8 matrix of x -> M x for a quaternionic 2x2 matrix M."""
    cols = []
    for blk in range(2):
        for u in "1ijk":
            x = [_unit(), _unit()]
            x[blk] = UNITS[u]
            y = [m[r][0] * x[0] + m[r][1] * x[1] for r in range(2)]
            cols.append(list(y[0].components()) + list(y[1].components()))
    return [[cols[c][r] for c in range(8)] for r in range(8)]


# --- generators -----------------------------------------------------------------

def _pair(u: Sequence[Form], v: Sequence[Form]) -> Form:
    out = u[0].wedge(v[0])
    for a, b in zip(u[1:], v[1:]):
        out = out + a.wedge(b)
    return out


def _lin(coeffs: Sequence, forms: Sequence[Form]) -> Form:
    out = forms[0].scale(coeffs[0])
    for c, f in zip(coeffs[1:], forms[1:]):
        if c:
            out = out + f.scale(c)
    return out


def _project(vec: Sequence[Form], zeta: Sequence) -> List[Form]:
    # P v = v - sum_q (zeta q) <zeta q, v>
    out = list(vec)
    for q in "1ijk":
        zq = right_mul(zeta, q)
        comp = _lin(zq, vec)
        out = [o - comp.scale(c) if c else o for o, c in zip(out, zq)]
    return out


def generators_from(dz: Sequence[Form], dzeta: Sequence[Form], zeta: Sequence,
                    route: str = "projector") -> Dict[str, Form]:
    """All generators from the coordinate 1-forms and the point zeta.

    ``dz`` and ``dzeta`` are 8-vectors of 1-forms in some exterior algebra and
    ``zeta`` is an 8-vector over a coefficient ring (rational or polynomial).
    ``route`` selects the projector formulas or the equivalent closed-form
    corrections of the unprojected forms.
    """
    half = Q(1, 2)
    g: Dict[str, Form] = {}
    g["alpha"] = _lin(zeta, dz)
    zq = {q: right_mul(zeta, q) for q in IMAG}
    for q in IMAG:
        g[f"beta_{q}"] = _lin(zq[q], dz)
        g[f"gamma_{q}"] = _lin(zq[q], dzeta)
    g["dalpha"] = _pair(dzeta, dz)
    if route == "projector":
        pz, ps = _project(dz, zeta), _project(dzeta, zeta)
        for q in IMAG:
            g[f"theta0_{q}"] = _pair(right_mul(ps, q), ps).scale(half)
            g[f"theta1_{q}"] = _pair(right_mul(ps, q), pz)
            g[f"theta2_{q}"] = _pair(right_mul(pz, q), pz).scale(half)
        g["theta_s"] = -_pair(ps, pz)
    elif route == "fast":
        a = g["alpha"]
        b = {q: g[f"beta_{q}"] for q in IMAG}
        c = {q: g[f"gamma_{q}"] for q in IMAG}
        for q, r, s in (("i", "j", "k"), ("j", "k", "i"), ("k", "i", "j")):
            t0 = _pair(right_mul(dzeta, q), dzeta).scale(half)
            t1 = _pair(right_mul(dzeta, q), dz)
            t2 = _pair(right_mul(dz, q), dz).scale(half)
            g[f"theta0_{q}"] = t0 + c[r] * c[s]
            g[f"theta1_{q}"] = t1 - a * c[q] + b[r] * c[s] - b[s] * c[r]
            g[f"theta2_{q}"] = t2 - a * b[q] + b[r] * b[s]
        phi11 = sum((b[q] * c[q] for q in IMAG[1:]), b["i"] * c["i"])
        g["theta_s"] = -g["dalpha"] - phi11
    else:
        raise ValueError(f"unknown route {route!r}")
    return g


def ambient_generators(zeta: Sequence, route: str = "projector") -> Dict[str, Form]:
    """Generators at a rational unit vector zeta, on the 16 ambient covectors.

    Index 0..7 is dz1..dz8 and 8..15 is dzeta1..dzeta8.  The dzeta-legs are
    projected onto the tangent space of the sphere, so two expressions agree
    on the sphere bundle exactly when the returned forms are equal.
    """
    zeta = [_q(x) for x in zeta]
    if sum(x * x for x in zeta) != 1:
        raise ValueError("zeta must be a unit vector")
    dz = [Form.covector(16, r, Q(1)) for r in range(8)]
    raw = [Form.covector(16, 8 + r, Q(1)) for r in range(8)]
    # tangent projection dzeta -> dzeta - zeta <zeta, dzeta>
    radial = _lin(zeta, raw)
    dzeta = [raw[r] - radial.scale(zeta[r]) if zeta[r] else raw[r] for r in range(8)]
    return generators_from(dz, dzeta, zeta, route)


def to_coord(form: Form) -> CoordForm:
    """Restrict an ambient form at zeta = e1 to the 15 base-point covectors."""
    out = {}
    for m, c in form.terms.items():
        if m & (1 << 8):
            raise ValueError("dzeta1 leg at the base point")
        low = m & 0xFF
        high = m >> 9
        out[low | (high << 8)] = c
    return CoordForm(out)


def expand_generator_at(name: str, zeta: Sequence, route: str = "projector") -> Form:
    gens = ambient_generators(zeta, route)
    if name not in gens:
        raise KeyError(f"unknown generator {name!r}")
    return gens[name]


@lru_cache(maxsize=None)
def _base_generators(route: str) -> Dict[str, CoordForm]:
    e1 = [1, 0, 0, 0, 0, 0, 0, 0]
    return {k: to_coord(v) for k, v in ambient_generators(e1, route).items()}


def base_generators(route: str = "projector") -> Dict[str, CoordForm]:
    """Generators at the base point as CoordForms (shared, do not mutate)."""
    return _base_generators(route)


# --- Lie algebra structure -------------------------------------------------------

def sp2_lift(m: int) -> List[List[Fraction]]:
    """Real matrix of an element X_m of sp(2) with X_m e1 = e_m (m = 2..8)."""
    zero = _unit()
    if 2 <= m <= 4:
        a = UNITS["ijk"[m - 2]]
        M = [[a, zero], [zero, zero]]
    elif 5 <= m <= 8:
        u = UNITS["1ijk"[m - 5]]
        b = -u.conj()
        M = [[zero, b], [-b.conj(), zero]]
    else:
        raise ValueError("m must be in 2..8")
    return left_mul_matrix(M)


def _matvec(A, v):
    return [sum(A[r][c] * v[c] for c in range(8)) for r in range(8)]


@lru_cache(maxsize=None)
def lie_d_images() -> Tuple[CoordForm, ...]:
    """Exterior derivative of each base-point covector, as an invariant 1-form.

    With tangent basis ``d/dz_n`` (translations) and ``X_m . o = d/dzeta_m``,
    ``d e^i = - sum_{j<k} e^i([e_j, e_k]) e^j ^ e^k``.
    """
    X = {m: sp2_lift(m) for m in range(2, 9)}
    basis = [("z", n) for n in range(1, 9)] + [("s", m) for m in range(2, 9)]

    def bracket(u, v) -> List[Fraction]:
        """Tangent vector at o of [u, v], in base-point coordinates (15 entries)."""
        out = [Fraction(0)] * NCOV
        (ku, iu), (kv, iv) = u, v
        if ku == "z" and kv == "z":
            return out
        if ku == "s" and kv == "z":
            e = [Fraction(int(r == iv - 1)) for r in range(8)]
            w = _matvec(X[iu], e)
            out[:8] = w
            return out
        if ku == "z" and kv == "s":
            return [-x for x in bracket(v, u)]
        A, B = X[iu], X[iv]
        AB = [[sum(A[r][t] * B[t][c] for t in range(8)) - sum(B[r][t] * A[t][c] for t in range(8))
               for c in range(8)] for r in range(8)]
        w = [AB[r][0] for r in range(8)]
        if w[0]:
            raise AssertionError("bracket leaves the sphere")
        out[8:] = w[1:]
        return out

    images = [dict() for _ in range(NCOV)]
    for j, k in combinations(range(NCOV), 2):
        w = bracket(basis[j], basis[k])
        for i, c in enumerate(w):
            if c:
                mask = (1 << j) | (1 << k)
                images[i][mask] = images[i].get(mask, 0) - _q(c)
    return tuple(CoordForm(t) for t in images)


# --- special planes --------------------------------------------------------------

PYTHAGOREAN: Tuple[Tuple[Fraction, Fraction], ...] = tuple(
    (Fraction(c), Fraction(s))
    for c, s in [(1, 0), (0, 1), ("3/5", "4/5"), ("5/13", "12/13"), ("8/17", "15/17"),
                 ("20/29", "21/29"), ("7/25", "24/25")]
)


def _vec(c: Fraction, s: Fraction, q: str) -> Tuple[Fraction, ...]:
    u = UNITS[q]
    return tuple(c * x for x in u.components()) + tuple(s * x for x in u.components())


@dataclass(frozen=True)
class SpecialPlane:
    """A k-plane spanned by (c_p, s_p) q_p with q_p = 1, i, j, k in order.

    ``dim`` is the dimension of the subspace described by ``frame``.  For a
    complement, ``angles`` still refers to the special plane it complements.
    """

    angles: Tuple[Tuple[Fraction, Fraction], ...]
    frame: Tuple[Tuple[Fraction, ...], ...]
    complement_of: int | None = None

    @property
    def dim(self) -> int:
        return len(self.frame)

    @property
    def k(self) -> int:
        return len(self.angles)

    def lam(self, p: int, q: int) -> Fraction:
        (c1, s1), (c2, s2) = self.angles[p], self.angles[q]
        return c1 * c2 + s1 * s2

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "angles": [[str(c), str(s)] for c, s in self.angles],
            "complement": self.complement_of is not None,
        }


def special_plane(angles: Sequence[Tuple]) -> SpecialPlane:
    ang = tuple((Fraction(c), Fraction(s)) for c, s in angles)
    if not 1 <= len(ang) <= 4:
        raise ValueError("special planes have dimension 1..4")
    for c, s in ang:
        if c * c + s * s != 1:
            raise ValueError(f"({c}, {s}) is not on the unit circle")
    frame = tuple(_vec(c, s, q) for (c, s), q in zip(ang, "1ijk"))
    return SpecialPlane(ang, frame)


def orthocomplement(E: SpecialPlane) -> SpecialPlane:
    """Explicit orthonormal frame of the complement of a special plane."""
    if E.complement_of is not None:
        return special_plane(E.angles)
    frame = [_vec(-s, c, q) for (c, s), q in zip(E.angles, "1ijk")]
    for q in "1ijk"[E.k:]:
        frame.append(_vec(Fraction(1), Fraction(0), q))
        frame.append(_vec(Fraction(0), Fraction(1), q))
    F = SpecialPlane(E.angles, tuple(frame), complement_of=E.k)
    _check_orthonormal(E.frame, F.frame)
    return F


def _dot(u, v) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def _check_orthonormal(A, B):
    vecs = list(A) + list(B)
    for i, u in enumerate(vecs):
        for j in range(i, len(vecs)):
            want = 1 if i == j else 0
            if _dot(u, vecs[j]) != want:
                raise AssertionError("frame is not orthonormal")


F_INDICES: Dict[int, Tuple[int, ...]] = {0: (0,), 1: (0,), 2: (0, 1), 3: (0, 1, 2), 4: (0, 1, 2, 3, 4)}


def _f_poly(k: int, i: int, L) -> Fraction:
    # L(p, q) with 1-based indices
    if i == 0:
        return Fraction(1)
    l2 = {pq: L(*pq) ** 2 for pq in combinations(range(1, k + 1), 2)}
    if (k, i) == (2, 1):
        return l2[1, 2]
    if (k, i) == (3, 1):
        return l2[1, 2] + l2[1, 3] + l2[2, 3]
    if (k, i) == (3, 2):
        return l2[1, 2] * l2[2, 3] + l2[1, 3] * l2[2, 3] + l2[1, 2] * l2[1, 3]
    if (k, i) == (4, 1):
        return sum(l2.values())
    if (k, i) == (4, 2):
        return l2[1, 2] * l2[3, 4] + l2[1, 3] * l2[2, 4] + l2[1, 4] * l2[2, 3]
    if (k, i) == (4, 3):
        # products of two squared lambdas sharing exactly one index
        pairs = list(l2)
        return sum(l2[a] * l2[b] for a, b in combinations(pairs, 2) if len(set(a) & set(b)) == 1)
    if (k, i) == (4, 4):
        l = lambda p, q: L(p, q)
        return 2 * (
            l(1, 2) * l(1, 3) * l(2, 3) ** 2 * l(2, 4) * l(3, 4)
            + l(1, 2) * l(1, 3) * l(1, 4) ** 2 * l(2, 4) * l(3, 4)
            + l(1, 2) * l(2, 3) * l(1, 3) ** 2 * l(1, 4) * l(3, 4)
            + l(1, 2) * l(2, 3) * l(2, 4) ** 2 * l(1, 4) * l(3, 4)
            + l(2, 4) * l(2, 3) * l(1, 2) ** 2 * l(1, 4) * l(1, 3)
            + l(2, 4) * l(2, 3) * l(3, 4) ** 2 * l(1, 4) * l(1, 3)
        ) + 3 * (
            l2[1, 2] * l2[1, 3] * l2[1, 4] + l2[1, 2] * l2[2, 3] * l2[2, 4]
            + l2[1, 3] * l2[2, 3] * l2[3, 4] + l2[1, 4] * l2[2, 4] * l2[3, 4]
        )
    raise KeyError(f"unknown f index ({k}, {i})")


def f_value(k: int, i: int, plane: SpecialPlane) -> Fraction:
    """f_{k,i} at a special plane (for k >= 5 pass the special (8-k)-plane)."""
    kk = min(k, 8 - k)
    if i not in F_INDICES.get(kk, ()):
        raise KeyError(f"unknown f index ({k}, {i})")
    if kk == 0:
        return Fraction(1)
    if plane.k != kk:
        raise ValueError(f"f_{{{k},{i}}} needs a special {kk}-plane, got k={plane.k}")
    return _f_poly(kk, i, lambda p, q: plane.lam(p - 1, q - 1))


# --- sphere integrals ------------------------------------------------------------

@lru_cache(maxsize=None)
def sphere_moment(exponents: Tuple[int, ...]) -> ExactScalar:
    """Integral of x^a over the unit sphere S^{m-1} in R^m."""
    if any(a % 2 for a in exponents):
        return ZERO
    num = ExactScalar({0: 2})
    for a in exponents:
        num = num * gamma_half(a + 1)
    return num / gamma_half(sum(a + 1 for a in exponents))


def integrate_on_sphere(poly) -> ExactScalar:
    """Integral of an fmpq_mpoly over the unit sphere in its variables."""
    total = ZERO
    for mon, c in zip(poly.monoms(), poly.coeffs()):
        total = total + sphere_moment(tuple(int(e) for e in mon)) * as_scalar(c)
    return total


@lru_cache(maxsize=None)
def _poly_ctx(m: int):
    return flint.fmpq_mpoly_ctx.get(tuple(f"x{j + 1}" for j in range(m)), "lex")


class RestrictedPlane:
    """Generators restricted to ``E x S(E^perp)`` for a k-dimensional subspace E.

    The restricted algebra has 8 covectors: ``eps_1..eps_k`` dual to the frame
    of E (the dz-legs) followed by ``dx_1..dx_m`` dual to the frame of the
    complement (the dzeta-legs, m = 8 - k).  Coefficients are polynomials in
    the sphere variables x_1..x_m with ``zeta = sum_j x_j w_j``.
    """

    def __init__(self, e_frame: Sequence[Sequence], w_frame: Sequence[Sequence], route: str = "fast"):
        self.k = len(e_frame)
        self.m = len(w_frame)
        if self.k + self.m != 8:
            raise ValueError("frames must span R^8")
        self.e = [[_q(x) for x in v] for v in e_frame]
        self.w = [[_q(x) for x in v] for v in w_frame]
        M = flint.fmpq_mat(8, 8, [x for v in self.e + self.w for x in v])
        det = M.det()
        if det * det != 1:
            raise ValueError("frame is not orthonormal")
        if det < 0:
            # orient (e, w) positively by flipping the last complement vector
            self.w[-1] = [-x for x in self.w[-1]]
        self.ctx = _poly_ctx(self.m)
        xs = self.ctx.gens()
        one = self.ctx.from_dict({(0,) * self.m: 1})
        dz = []
        dzeta = []
        for r in range(8):
            dz.append(Form(8, {1 << a: self.e[a][r] * one for a in range(self.k) if self.e[a][r]}))
            dzeta.append(Form(8, {1 << (self.k + j): self.w[j][r] * one for j in range(self.m)
                                  if self.w[j][r]}))
        zeta = [sum((self.w[j][r] * xs[j] for j in range(self.m)), 0 * one) for r in range(8)]
        self.generators = generators_from(dz, dzeta, zeta, route)

    def flux_density(self, form: Form):
        """Polynomial g with form|_{E x S} = g vol_E ^ dsigma (orientation e then sphere)."""
        k, m = self.k, self.m
        eps_all = (1 << k) - 1
        total = None
        for j in range(m):
            mask = eps_all | (((1 << m) - 1) ^ (1 << j)) << k
            c = form.terms.get(mask)
            if not c:
                continue
            term = c * self.ctx.gens()[j]
            if j % 2:
                term = -term
            total = term if total is None else total + term
        return total if total is not None else self.ctx.from_dict({})
