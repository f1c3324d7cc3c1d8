"""Klain functions of globalized curvature measures and the Fourier transform.

For a curvature measure given by a 7-form omega of bidegree (k, 7-k) and a
k-plane E, the Klain function of its globalization at E is the integral of
omega over (unit cube of E) x S(E^perp).  The restriction to E x S(E^perp)
is a polynomial flux density on the sphere, integrated exactly by moments.

Valuations are stored by Klain coordinates: for each degree k a vector over
the f-basis f_{min(k,8-k), i}.  Degrees 0 and 8 carry a single multiple of
the Euler characteristic and of the volume.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .catalog import LAMBDA_INDEX, CurvatureMeasure, build_lambda
from .linalg import InconsistentSystem, rank, solve_scalar_rhs
from .model import (F_INDICES, RestrictedPlane, SpecialPlane, f_value, integrate_on_sphere,
                    orthocomplement, special_plane)
from .scalars import ZERO, ExactScalar, as_scalar

__all__ = [
    "ORIENTATION",
    "VAL_DIMS",
    "SAMPLE_ANGLES",
    "f_basis",
    "sample_planes",
    "Valuation",
    "klain_eval",
    "lambda_klain",
    "klain_coordinates",
    "fourier",
    "calibration_check",
]

# dim Val_k^{Sp(2)Sp(1)}, k = 0..8
VAL_DIMS = (1, 1, 2, 3, 5, 3, 2, 1, 1)

# Global sign of the normal-cycle orientation, fixed by Kl(glob Lambda_{5,3})(E^5) = -24 pi.
ORIENTATION = 1

# Angles of the sample special planes in each dimension 1..4; degree k >= 5
# samples the complements of the (8-k)-dimensional ones.
SAMPLE_ANGLES: Dict[int, Tuple[Tuple[Tuple[str, str], ...], ...]] = {
    1: ((("1", "0"),), (("3/5", "4/5"),), (("5/13", "12/13"),)),
    2: (
        (("1", "0"), ("1", "0")),
        (("1", "0"), ("0", "1")),
        (("1", "0"), ("3/5", "4/5")),
        (("3/5", "4/5"), ("5/13", "12/13")),
    ),
    3: (
        (("1", "0"), ("1", "0"), ("1", "0")),
        (("1", "0"), ("0", "1"), ("3/5", "4/5")),
        (("1", "0"), ("3/5", "4/5"), ("5/13", "12/13")),
        (("0", "1"), ("1", "0"), ("1", "0")),
        (("8/17", "15/17"), ("3/5", "4/5"), ("0", "1")),
    ),
    4: (
        (("1", "0"), ("1", "0"), ("1", "0"), ("1", "0")),
        (("1", "0"), ("0", "1"), ("3/5", "4/5"), ("5/13", "12/13")),
        (("1", "0"), ("3/5", "4/5"), ("5/13", "12/13"), ("8/17", "15/17")),
        (("0", "1"), ("1", "0"), ("1", "0"), ("3/5", "4/5")),
        (("8/17", "15/17"), ("3/5", "4/5"), ("0", "1"), ("20/29", "21/29")),
        (("1", "0"), ("1", "0"), ("0", "1"), ("0", "1")),
        (("7/25", "24/25"), ("1", "0"), ("3/5", "4/5"), ("0", "1")),
    ),
}


def f_basis(k: int) -> Tuple[int, ...]:
    """Indices i of the basis functions f_{k,i} in degree k (empty list for 0 and 8 means one scalar)."""
    return F_INDICES[min(k, 8 - k)]


def _special(angles) -> SpecialPlane:
    return special_plane([(Fraction(c), Fraction(s)) for c, s in angles])


@lru_cache(maxsize=None)
def sample_planes(k: int) -> Tuple[SpecialPlane, ...]:
    """The fixed sample k-planes (complements of special planes for k >= 5)."""
    if k in (0, 8):
        return ()
    kk = min(k, 8 - k)
    planes = tuple(_special(a) for a in SAMPLE_ANGLES[kk])
    if k >= 5:
        planes = tuple(orthocomplement(P) for P in planes)
    return planes


def _reference(E: SpecialPlane) -> SpecialPlane:
    """The special plane whose lambdas define f at E."""
    if E.complement_of is None:
        return E
    if E.complement_of == 4:
        # the complement of a 4-dimensional special plane is special with angles (-s, c)
        return special_plane([(-s, c) for c, s in E.angles])
    return special_plane(E.angles)


def _frames(E: SpecialPlane):
    if E.complement_of is None:
        return E.frame, orthocomplement(E).frame
    return E.frame, special_plane(E.angles).frame


def _f_row(k: int, E: Optional[SpecialPlane]) -> List[Fraction]:
    if k in (0, 8):
        return [Fraction(1)]
    ref = _reference(E)
    return [f_value(k, i, ref) for i in f_basis(k)]


_IDENTITY = tuple(tuple(Fraction(int(a == b)) for a in range(8)) for b in range(8))


@lru_cache(maxsize=None)
def _lambda_klain_cached(k: int, i: int, E: Optional[SpecialPlane]) -> ExactScalar:
    if k == 0:
        R = RestrictedPlane((), _IDENTITY)
    else:
        e, w = _frames(E)
        if len(e) != k:
            raise ValueError(f"Lambda_{{{k},{i}}} needs a {k}-plane, got dimension {len(e)}")
        R = RestrictedPlane(e, w)
    form = build_lambda(k, i).evaluate(R.generators)
    raw = integrate_on_sphere(R.flux_density(form))
    return raw if (k % 2 == 0) == (ORIENTATION > 0) else -raw


def lambda_klain(k: int, i: int, E: Optional[SpecialPlane] = None) -> ExactScalar:
    """Klain function of glob Lambda_{k,i} at E (E is ignored for k = 0)."""
    return _lambda_klain_cached(k, i, None if k == 0 else E)


@dataclass
class Valuation:
    """An invariant valuation stored by Klain coordinates, degree by degree.

    ``klain[k]`` is a tuple of ExactScalar over f_basis(k) (one entry for k = 0, 8).
    """

    klain: Dict[int, Tuple[ExactScalar, ...]] = field(default_factory=dict)
    backing: Optional[Tuple[object, ExactScalar]] = None

    def __post_init__(self):
        clean = {}
        for k, vec in self.klain.items():
            vec = tuple(as_scalar(x) for x in vec)
            if len(vec) != VAL_DIMS[k]:
                raise ValueError(f"degree {k} needs {VAL_DIMS[k]} coordinates, got {len(vec)}")
            if any(vec):
                clean[k] = vec
        self.klain = clean

    @classmethod
    def homogeneous(cls, k: int, coords: Sequence) -> "Valuation":
        return cls({k: tuple(coords)})

    @classmethod
    def zero(cls) -> "Valuation":
        return cls({})

    def degrees(self) -> List[int]:
        return sorted(self.klain)

    def part(self, k: int) -> "Valuation":
        return Valuation({k: self.klain[k]}) if k in self.klain else Valuation()

    def coords(self, k: int) -> Tuple[ExactScalar, ...]:
        return self.klain.get(k, (ZERO,) * VAL_DIMS[k])

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("valuation is not homogeneous")
        return ds[0]

    def __add__(self, other: "Valuation") -> "Valuation":
        ks = set(self.klain) | set(other.klain)
        return Valuation({k: tuple(a + b for a, b in zip(self.coords(k), other.coords(k)))
                          for k in ks})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Valuation":
        c = as_scalar(c)
        return Valuation({k: tuple(c * x for x in v) for k, v in self.klain.items()})

    def __eq__(self, other):
        if not isinstance(other, Valuation):
            return NotImplemented
        return not (self - other).klain

    def __bool__(self):
        return bool(self.klain)

    def klain_at(self, E: Optional[SpecialPlane], k: int) -> ExactScalar:
        row = _f_row(k, E)
        return sum((c * f for c, f in zip(self.coords(k), row)), ZERO)

    def render(self) -> str:
        if not self.klain:
            return "0"
        parts = []
        for k in self.degrees():
            if k == 0:
                parts.append(f"({self.klain[0][0].render()})·χ")
                continue
            if k == 8:
                parts.append(f"({self.klain[8][0].render()})·vol")
                continue
            for i, c in zip(f_basis(k), self.klain[k]):
                if c:
                    parts.append(f"({c.render()})·f{k},{i}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {str(k): [c.render() for c in v] for k, v in sorted(self.klain.items())}

    __hash__ = None


def _measure_klain(m: CurvatureMeasure, E: Optional[SpecialPlane]) -> ExactScalar:
    total = ZERO
    for i, c in zip(LAMBDA_INDEX[m.k], m.coeffs):
        if c:
            total = total + lambda_klain(m.k, i, E) * c
    return total


def klain_eval(m, E: Optional[SpecialPlane]) -> ExactScalar:
    """Klain function at E of glob m (curvature measure) or of a homogeneous valuation."""
    if isinstance(m, CurvatureMeasure):
        return _measure_klain(m, E)
    if isinstance(m, Valuation):
        return m.klain_at(E, m.degree)
    raise TypeError("expected a CurvatureMeasure or a Valuation")


def _solve(k: int, values: Sequence[ExactScalar], planes) -> Tuple[ExactScalar, ...]:
    A = [_f_row(k, E) for E in planes]
    if rank(A) != VAL_DIMS[k]:
        raise InconsistentSystem(f"sample planes of degree {k} do not separate the f-basis")
    return tuple(solve_scalar_rhs(A, values))


def klain_coordinates(m) -> Valuation:
    """Klain coordinates of glob m, solved from the overdetermined sample set."""
    if isinstance(m, Valuation):
        return m
    k = m.k
    if k == 0:
        return Valuation({0: (_measure_klain(m, None),)})
    planes = sample_planes(k)
    values = [_measure_klain(m, E) for E in planes]
    return Valuation({k: _solve(k, values, planes)})


def fourier(v: Valuation) -> Valuation:
    """Alesker-Fourier transform, from Kl_{F phi}(E) = Kl_phi(E^perp)."""
    out = Valuation()
    for k in v.degrees():
        j = 8 - k
        if j in (0, 8):
            out = out + Valuation({j: v.klain[k]})
            continue
        planes = sample_planes(j)
        values = [v.klain_at(_perp(E), k) for E in planes]
        out = out + Valuation({j: _solve(j, values, planes)})
    return out


def _perp(E: SpecialPlane) -> SpecialPlane:
    if E.complement_of is not None:
        return special_plane(E.angles)
    return orthocomplement(E)


def calibration_check() -> bool:
    """Kl(glob Lambda_{5,3}) at the product of a quaternionic line and a real line is -24 pi."""
    E5 = orthocomplement(special_plane([(1, 0)] * 3))
    return lambda_klain(5, 3, E5) == ExactScalar({2: -24})
