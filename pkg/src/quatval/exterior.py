"""Exterior algebra on the cotangent space of the sphere bundle at the base point.

The base point is ``(z, zeta) = (0, e1)`` in ``R^8 x S^7``.  The cotangent
space there has 15 covectors, ordered as::

    index 0..7    dz1 .. dz8
    index 8..14   dzeta2 .. dzeta8

``dzeta1`` is missing because it vanishes on the tangent space of the unit
sphere at ``e1``.  The contact form is ``alpha = dz1`` and its differential is
``sum_{m>=2} dzeta_m ^ dz_m``.

:class:`Form` is a general sparse alternating form over ``n`` covectors with
coefficients in any commutative ring (rationals, exact scalars, or FLINT
polynomials).  Monomials are stored as bitmasks.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import flint

from .scalars import ExactScalar, ZERO, as_scalar

__all__ = [
    "Form",
    "CoordForm",
    "NCOV",
    "dz",
    "dzeta",
    "ALPHA",
    "DALPHA",
    "mask_to_indices",
    "indices_to_mask",
    "wedge",
    "interior_product",
    "evaluate_on_frame",
    "hodge_star_1",
    "hodge_star_1_inverse",
    "istar",
    "horizontal",
    "lefschetz",
    "lefschetz_solve",
    "primitive_part",
    "ideal_reduce",
    "reeb_contract",
    "antiderivation",
]

NCOV = 15


def mask_to_indices(mask: int) -> Tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_to_mask(idx: Iterable[int]) -> Tuple[int, int]:
    """Return ``(sign, mask)`` for the wedge of the given covector indices."""
    mask = 0
    sign = 1
    for i in idx:
        bit = 1 << i
        if mask & bit:
            return 0, 0
        if (mask >> (i + 1)).bit_count() & 1:
            sign = -sign
        mask |= bit
    return sign, mask


@lru_cache(maxsize=1 << 20)
def _merge_sign(a: int, b: int) -> int:
    # sign of e_a ^ e_b relative to e_{a|b}: count pairs (i in a, j in b, i > j)
    n = 0
    j = 0
    while b:
        if b & 1:
            n += (a >> (j + 1)).bit_count()
        b >>= 1
        j += 1
    return -1 if n & 1 else 1


def _is_zero(c) -> bool:
    return not c


class Form:
    """Sparse alternating form over ``n`` covectors.

    ``terms`` maps a bitmask monomial to its coefficient.  ``a * b`` is the
    wedge product when both operands are forms and scalar multiplication
    otherwise.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None, *, _clean=False):
        self.n = n
        if _clean:
            self.terms = dict(terms)
        else:
            self.terms = {m: c for m, c in (terms or {}).items() if not _is_zero(c)}

    # constructors -----------------------------------------------------
    def _new(self, terms, clean=True):
        return type(self)._make(self.n, terms, clean)

    @classmethod
    def _make(cls, n, terms, clean):
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms if clean else {m: c for m, c in terms.items() if not _is_zero(c)}
        return obj

    @classmethod
    def covector(cls, n: int, i: int, coef=1):
        return cls._make(n, {1 << i: coef}, True)

    @classmethod
    def scalar(cls, n: int, c=1):
        return cls._make(n, {0: c} if c else {}, True)

    @classmethod
    def monomial(cls, n: int, idx: Sequence[int], coef=1):
        sign, mask = indices_to_mask(idx)
        if not sign:
            return cls._make(n, {}, True)
        return cls._make(n, {mask: coef if sign > 0 else -coef}, True)

    # basic queries ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degrees(self) -> set:
        return {m.bit_count() for m in self.terms}

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if not ds:
            return 0
        if len(ds) > 1:
            raise ValueError(f"inhomogeneous form with degrees {sorted(ds)}")
        return ds.pop()

    def coefficient(self, idx: Sequence[int]):
        sign, mask = indices_to_mask(idx)
        c = self.terms.get(mask, 0)
        return c if sign >= 0 else -c

    def items(self):
        return self.terms.items()

    def part(self, degree: int) -> "Form":
        return self._new({m: c for m, c in self.terms.items() if m.bit_count() == degree})

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Form):
            if other == 0:
                return self
            other = self.scalar(self.n, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if _is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if isinstance(c, Fraction):
            c = flint.fmpq(c.numerator, c.denominator)
        if _is_zero(c):
            return self._new({})
        return self._new({m: v * c for m, v in self.terms.items()}, clean=False)

    def __mul__(self, other):
        if isinstance(other, Form):
            return self.wedge(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        if isinstance(c, int):
            c = flint.fmpq(c)
        return self._new({m: v / c for m, v in self.terms.items()})

    def __pow__(self, k: int):
        out = self.scalar(self.n, 1)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def wedge(self, other: "Form") -> "Form":
        if self.n != other.n:
            raise ValueError("forms live on different spaces")
        out: Dict[int, object] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                if a & b:
                    continue
                c = ca * cb
                if _merge_sign(a, b) < 0:
                    c = -c
                m = a | b
                v = out.get(m)
                out[m] = c if v is None else v + c
        return self._new(out, clean=False)

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.n == other.n and not (self - other).terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        raise TypeError("Form is not hashable")

    # contractions ------------------------------------------------------
    def interior(self, i: int) -> "Form":
        """Contract with the i-th dual basis vector."""
        bit = 1 << i
        below = bit - 1
        out = {}
        for m, c in self.terms.items():
            if m & bit:
                out[m ^ bit] = -c if (m & below).bit_count() & 1 else c
        return self._new(out)

    def contract(self, vector: Sequence) -> "Form":
        out = self._new({})
        for i, v in enumerate(vector):
            if v:
                out = out + self.interior(i).scale(v)
        return out

    def map_coefficients(self, fn) -> "Form":
        return self._new({m: fn(c) for m, c in self.terms.items()}, clean=False)

    def substitute(self, images: Sequence["Form"], n: int | None = None) -> "Form":
        """Apply the algebra map sending covector i to the 1-form images[i]."""
        n = images[0].n if images else self.n
        out = type(self)._make(n, {}, True)
        cache: Dict[int, Form] = {0: type(self)._make(n, {0: 1}, True)}

        def image_of(mask: int) -> Form:
            if mask in cache:
                return cache[mask]
            low = mask & -mask
            i = low.bit_length() - 1
            res = images[i].wedge(image_of(mask ^ low))
            cache[mask] = res
            return res

        for m, c in self.terms.items():
            out = out + image_of(m).scale(c)
        return out

    # rendering ---------------------------------------------------------
    def names(self) -> List[str]:
        return [f"e{i + 1}" for i in range(self.n)]

    def render(self) -> str:
        if not self.terms:
            return "0"
        names = self.names()
        parts = []
        for m in sorted(self.terms, key=lambda m: (m.bit_count(), mask_to_indices(m))):
            mono = "∧".join(names[i] for i in mask_to_indices(m)) or "1"
            parts.append(f"({self.terms[m]})·{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self.render()})"

    def to_json(self) -> dict:
        ds = self.degrees()
        return {
            "degree": ds.pop() if len(ds) == 1 else None,
            "terms": [
                {"idx": list(mask_to_indices(m)), "coef": as_scalar(self.terms[m]).to_json()}
                for m in sorted(self.terms, key=mask_to_indices)
            ],
        }


class CoordForm(Form):
    """A form on the 15-dimensional base-point cotangent space."""

    __slots__ = ()

    def __init__(self, terms: Mapping[int, object] | None = None):
        super().__init__(NCOV, terms)

    @classmethod
    def _make(cls, n, terms, clean):
        return Form._make.__func__(cls if n == NCOV else Form, n, terms, clean)

    def names(self):
        return [f"dz{i}" for i in range(1, 9)] + [f"dζ{i}" for i in range(2, 9)]

    @classmethod
    def from_json(cls, data: Mapping) -> "CoordForm":
        terms = {}
        for t in data["terms"]:
            sign, mask = indices_to_mask(t["idx"])
            c = ExactScalar.from_json(t["coef"])
            if c.is_rational():
                f = c.to_fraction()
                c = flint.fmpq(f.numerator, f.denominator)
            terms[mask] = c if sign > 0 else -c
        return cls(terms)


def dz(r: int) -> CoordForm:
    """dz_r for r = 1..8."""
    if not 1 <= r <= 8:
        raise ValueError("dz index out of range")
    return CoordForm({1 << (r - 1): flint.fmpq(1)})


def dzeta(r: int) -> CoordForm:
    """dzeta_r for r = 2..8 (dzeta_1 vanishes at the base point)."""
    if r == 1:
        return CoordForm()
    if not 2 <= r <= 8:
        raise ValueError("dzeta index out of range")
    return CoordForm({1 << (r + 6): flint.fmpq(1)})


ALPHA = dz(1)
DALPHA = sum((dzeta(m) * dz(m) for m in range(2, 9)), CoordForm())

_DZ_MASK = (1 << 8) - 1
_ALPHA_BIT = 1


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def interior_product(v: Sequence, a: Form) -> Form:
    return a.contract(v)


def reeb_contract(a: Form) -> Form:
    """Contraction with the Reeb field d/dz1."""
    return a.interior(0)


def evaluate_on_frame(a: Form, frame: Sequence[Sequence]) -> ExactScalar:
    """Value of the form on an ordered list of vectors (rational components)."""
    k = len(frame)
    degs = a.degrees()
    if degs and degs != {k}:
        raise ValueError(f"frame of length {k} does not match form degree {sorted(degs)}")
    if not a.terms:
        return ZERO
    flat = [[flint.fmpq(*_pq(x)) for x in vec] for vec in frame]
    total = flint.fmpq(0)
    for m, c in a.terms.items():
        cols = mask_to_indices(m)
        M = flint.fmpq_mat(k, k, [flat[r][j] for r in range(k) for j in cols])
        total += flint.fmpq(*_pq(c)) * M.det()
    return as_scalar(total)


def _pq(x):
    if isinstance(x, Fraction):
        return x.numerator, x.denominator
    if isinstance(x, int):
        return x, 1
    if isinstance(x, ExactScalar):
        f = x.to_fraction()
        return f.numerator, f.denominator
    return int(x.p), int(x.q)


# --- the *_1 operator ---------------------------------------------------------

def _star_sign(dz_mask: int) -> int:
    # (-1)^binom(8 - p, 2) * sign(I, I^c)
    p = dz_mask.bit_count()
    comp = _DZ_MASK ^ dz_mask
    s = _merge_sign(dz_mask, comp)
    if comb(8 - p, 2) & 1:
        s = -s
    return s


def hodge_star_1(a: CoordForm) -> CoordForm:
    """Hodge star on the dz-legs, identity on the dzeta-legs.

    ``*_1(dz_I ^ dzeta_J) = (-1)^binom(8-|I|, 2) sign(I, I^c) dz_{I^c} ^ dzeta_J``.
    """
    out = {}
    for m, c in a.terms.items():
        I = m & _DZ_MASK
        out[(m & ~_DZ_MASK) | (_DZ_MASK ^ I)] = c if _star_sign(I) > 0 else -c
    return CoordForm(out)


def hodge_star_1_inverse(a: CoordForm) -> CoordForm:
    out = {}
    for m, c in a.terms.items():
        I = _DZ_MASK ^ (m & _DZ_MASK)
        out[(m & ~_DZ_MASK) | I] = c if _star_sign(I) > 0 else -c
    return CoordForm(out)


# --- symmetry operator ----------------------------------------------------------

def horizontal(a: CoordForm) -> CoordForm:
    """Drop every monomial containing alpha = dz1."""
    return a._new({m: c for m, c in a.terms.items() if not m & _ALPHA_BIT})


@lru_cache(maxsize=None)
def _istar_images() -> Tuple[CoordForm, ...]:
    imgs = [CoordForm()]  # dz1 = alpha is killed
    for r in range(2, 9):
        imgs.append(-dzeta(r))
    for r in range(2, 9):
        imgs.append(dz(r))
    return tuple(imgs)


def istar(a: CoordForm) -> CoordForm:
    """Horizontal part with dz_r -> -dzeta_r and dzeta_r -> dz_r."""
    return horizontal(a).substitute(_istar_images(), NCOV)


def antiderivation(a: Form, images: Sequence[Form]) -> Form:
    """Extend e^i -> images[i] (even-degree images) as an odd derivation."""
    out = a._new({})
    for m, c in a.terms.items():
        pos = 0
        rest = m
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            img = images[i]
            if img:
                tail = a._new({m ^ low: -c if pos & 1 else c})
                out = out + img.wedge(tail)
            pos += 1
    return out


# --- Lefschetz decomposition on the contact plane -------------------------------
#
# The horizontal covectors split into seven symplectic planes
# (dz_m, dzeta_m), m = 2..8, with omega_m = dzeta_m ^ dz_m.  A monomial is a set
# of single legs S times a product omega_T over a set T of full planes.  The
# operator L = dalpha ^ acts only on T, as the subset-inclusion matrix over the
# planes that carry no single leg.

_PLANES = tuple(range(2, 9))


def _plane_bits(m: int) -> Tuple[int, int]:
    return 1 << (m - 1), 1 << (m + 6)


def _decompose(mask: int):
    singles = 0
    full = []
    free = []
    for m in _PLANES:
        bz, bs = _plane_bits(m)
        hz, hs = bool(mask & bz), bool(mask & bs)
        if hz and hs:
            full.append(m)
            free.append(m)
        elif hz or hs:
            singles |= bz if hz else bs
        else:
            free.append(m)
    return singles, tuple(free), tuple(full)


@lru_cache(maxsize=1 << 16)
def _block_monomial(singles: int, full: Tuple[int, ...]) -> Tuple[int, int]:
    """(sign, mask) of e_singles ^ prod_{m in full} omega_m."""
    sign, mask = 1, singles
    for m in full:
        bz, bs = _plane_bits(m)
        # omega_m = dzeta_m ^ dz_m
        s1 = _merge_sign(mask, bs)
        mask |= bs
        s2 = _merge_sign(mask, bz)
        mask |= bz
        sign *= s1 * s2
    return sign, mask


@lru_cache(maxsize=None)
def _subsets(f: int, t: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(combinations(range(f), t))


@lru_cache(maxsize=None)
def _inclusion(f: int, t: int) -> flint.fmpq_mat:
    """Matrix of L from t-subsets to (t+1)-subsets of f free planes."""
    src = _subsets(f, t)
    dst = _subsets(f, t + 1)
    pos = {s: i for i, s in enumerate(dst)}
    M = flint.fmpq_mat(len(dst), len(src))
    for j, s in enumerate(src):
        for p in range(f):
            if p not in s:
                M[pos[tuple(sorted(s + (p,)))], j] = 1
    return M


@lru_cache(maxsize=None)
def _solve_matrix(f: int, t: int) -> flint.fmpq_mat:
    """Inverse of L from t-subsets to (t+1)-subsets (requires f = 2t+1)."""
    return _inclusion(f, t).inv()


@lru_cache(maxsize=None)
def _primitive_projector(f: int, t: int) -> flint.fmpq_mat:
    """Projector 1 - L (L^2)^-1 L onto primitives, on t-subsets of f = 2t planes."""
    n = comb(f, t)
    eye = flint.fmpq_mat(n, n, [int(i == j) for i in range(n) for j in range(n)])
    if t == 0:
        return eye
    L_in = _inclusion(f, t - 1)
    L_out = _inclusion(f, t)
    L2 = L_out * L_in
    return eye - L_in * L2.inv() * L_out


def _sectors(a: CoordForm):
    sectors: Dict[int, Tuple[Tuple[int, ...], Dict[Tuple[int, ...], object]]] = {}
    for m, c in a.terms.items():
        if m & _ALPHA_BIT:
            raise ValueError("form is not horizontal")
        singles, free, full = _decompose(m)
        sign, _ = _block_monomial(singles, full)
        local = tuple(free.index(p) for p in full)
        entry = sectors.setdefault(singles, (free, {}))
        entry[1][local] = c if sign > 0 else -c
    return sectors


def _assemble(singles, free, t, vec, out):
    for idx, T in enumerate(_subsets(len(free), t)):
        c = vec[idx, 0]
        if c:
            full = tuple(free[p] for p in T)
            sign, mask = _block_monomial(singles, full)
            out[mask] = c if sign > 0 else -c


def _to_vector(coeffs, f, t):
    subs = _subsets(f, t)
    v = flint.fmpq_mat(len(subs), 1)
    for i, T in enumerate(subs):
        c = coeffs.get(T)
        if c:
            v[i, 0] = c
    return v


def lefschetz(a: CoordForm) -> CoordForm:
    """Wedge with the horizontal symplectic form dalpha."""
    return DALPHA.wedge(a)


def lefschetz_solve(b: CoordForm) -> CoordForm:
    """The unique horizontal 6-form x with dalpha ^ x = b, for b horizontal of degree 8."""
    if b.terms and b.degree != 8:
        raise ValueError("lefschetz_solve expects a horizontal 8-form")
    out = {}
    for singles, (free, coeffs) in _sectors(b).items():
        f = len(free)
        t = (f - 1) // 2
        vec = _solve_matrix(f, t) * _to_vector(coeffs, f, t + 1)
        _assemble(singles, free, t, vec, out)
    return CoordForm(out)


def primitive_part(a: CoordForm) -> CoordForm:
    """Primitive component of a horizontal 7-form in its Lefschetz decomposition."""
    if a.terms and a.degree != 7:
        raise ValueError("primitive_part expects a horizontal 7-form")
    out = {}
    for singles, (free, coeffs) in _sectors(a).items():
        f = len(free)
        t = f // 2
        vec = _primitive_projector(f, t) * _to_vector(coeffs, f, t)
        _assemble(singles, free, t, vec, out)
    return CoordForm(out)


def ideal_reduce(a: CoordForm) -> CoordForm:
    """Canonical representative of a 7-form modulo the ideal (alpha, dalpha).

    The representative is the primitive horizontal part, the unique element of
    the class annihilated by dalpha.
    """
    return primitive_part(horizontal(a))
