"""Exact coefficients: Laurent polynomials in sqrt(pi) over the rationals.

An :class:`ExactScalar` is a finite sum ``sum_h c_h * pi**(h/2)`` with
rational ``c_h``.  Every constant that appears in the integral geometry of
the quaternionic plane (ball volumes, sphere moments, flag coefficients,
kinematic constants) lives in this ring.  :class:`ScalarFraction` is the
fraction field over it, used for elimination with non-monomial pivots.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Mapping, Union

__all__ = [
    "ExactScalar",
    "ScalarFraction",
    "PI",
    "SQRT_PI",
    "ONE",
    "ZERO",
    "as_scalar",
    "gamma_half",
    "ball_volume",
    "sphere_volume",
    "flag_coeff",
]

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    try:
        # flint.fmpq and friends
        return Fraction(int(x.p), int(x.q))
    except AttributeError:
        pass
    raise TypeError(f"cannot interpret {x!r} as a rational")


class ExactScalar:
    """Element of Q[pi^(1/2), pi^(-1/2)].

    Stored as a map from the half-power index ``h`` to the rational
    coefficient of ``pi**(h/2)``.  Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | None = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for h, c in terms.items():
                c = _frac(c)
                if c:
                    clean[int(h)] = c
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def rational(cls, c: Number) -> "ExactScalar":
        return cls({0: c})

    @classmethod
    def pi_power(cls, power: Number = 1, coeff: Number = 1) -> "ExactScalar":
        """``coeff * pi**power``; ``power`` may be a half-integer."""
        h = Fraction(power) * 2
        if h.denominator != 1:
            raise ValueError("pi power must be a multiple of 1/2")
        return cls({int(h): coeff})

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms.get(0, Fraction(0))

    def monomial(self):
        """Return ``(h, c)`` for a monomial scalar."""
        if len(self._terms) != 1:
            raise ValueError(f"{self} is not a monomial")
        return next(iter(self._terms.items()))

    def has_half_powers(self) -> bool:
        return any(h % 2 for h in self._terms)

    # arithmetic
    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for h, c in other._terms.items():
            out[h] = out.get(h, 0) + c
        return ExactScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar({h: -c for h, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return ExactScalar({h: c * other for h, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[int, Fraction] = {}
        for h1, c1 in self._terms.items():
            for h2, c2 in other._terms.items():
                out[h1 + h2] = out.get(h1 + h2, 0) + c1 * c2
        return ExactScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactScalar({h: c / other for h, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero scalar")
        if other.is_monomial():
            h0, c0 = other.monomial()
            return ExactScalar({h - h0: c / c0 for h, c in self._terms.items()})
        raise ValueError("non-monomial divisor; use ScalarFraction")

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # rendering
    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        return self.render("text")

    def render(self, fmt: str = "text") -> str:
        if not self._terms:
            return "0"
        parts = []
        for h in sorted(self._terms, reverse=True):
            parts.append(_render_monomial(self._terms[h], h, fmt))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    # serialization
    def to_json(self) -> Dict[str, list]:
        return {f"h:{h}": [str(c.numerator), str(c.denominator)]
                for h, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, Iterable[str]]) -> "ExactScalar":
        terms = {}
        for key, (num, den) in data.items():
            if not key.startswith("h:"):
                raise ValueError(f"bad scalar key {key!r}")
            terms[int(key[2:])] = Fraction(int(num), int(den))
        return cls(terms)

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Parse the text rendering produced by :meth:`render`."""
        text = text.replace(" ", "")
        if text == "0":
            return ZERO
        pos, out = 0, ZERO
        while pos < len(text):
            m = _TERM_RE.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse scalar {text!r}")
            sign, num, has_pi, pw = m.group(1), m.group(2), m.group(3), m.group(4)
            if not num and not has_pi:
                raise ValueError(f"cannot parse scalar {text!r}")
            coeff = Fraction(num) if num else Fraction(1)
            power = Fraction(pw.strip("()")) if pw else Fraction(1 if has_pi else 0)
            out = out + cls.pi_power(power, -coeff if sign == "-" else coeff)
            pos = m.end()
        return out


_TERM_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(?:·?(π)(?:\^(\(-?\d+(?:/2)?\)|\d+))?)?")


def _render_monomial(c: Fraction, h: int, fmt: str) -> str:
    sign = "-" if c < 0 else ""
    c = abs(c)
    power = Fraction(h, 2)
    if fmt == "latex":
        if h == 0:
            return sign + _latex_frac(c)
        pw = "\\pi" if abs(power) == 1 else "\\pi^{%s}" % _latex_power(abs(power))
        if power < 0:
            den = "" if c.denominator == 1 else str(c.denominator)
            return sign + "\\frac{%d}{%s%s}" % (c.numerator, den, pw)
        return sign + (pw if c == 1 else _latex_frac(c) + pw)
    if h == 0:
        return sign + _text_frac(c)
    pw = "π" if power == 1 else "π^" + _text_power(power)
    return sign + (pw if c == 1 else _text_frac(c) + "·" + pw)


def _text_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _text_power(p: Fraction) -> str:
    body = str(p.numerator) if p.denominator == 1 else f"{p.numerator}/2"
    return f"({body})" if p < 0 or p.denominator != 1 else body


def _latex_frac(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return "\\frac{%d}{%d}" % (c.numerator, c.denominator)


def _latex_power(p: Fraction) -> str:
    return str(p.numerator) if p.denominator == 1 else "%d/2" % p.numerator


def _coerce(x):
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar({0: x}) if x else ZERO
    if hasattr(x, "p") and hasattr(x, "q"):
        return ExactScalar({0: _frac(x)})
    return NotImplemented


def as_scalar(x) -> ExactScalar:
    """Coerce an int, Fraction, flint rational or ExactScalar."""
    if isinstance(x, ExactScalar):
        return x
    return ExactScalar({0: _frac(x)})


ZERO = ExactScalar()
ONE = ExactScalar({0: 1})
PI = ExactScalar({2: 1})
SQRT_PI = ExactScalar({1: 1})


class ScalarFraction:
    """Quotient ``num / den`` of exact scalars.

    Common monomial content is divided out so that fractions with a
    monomial denominator collapse to ``den == 1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = as_scalar(num) if not isinstance(num, ExactScalar) else num
        den = as_scalar(den) if not isinstance(den, ExactScalar) else den
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        if den.is_monomial():
            self.num, self.den = num / den, ONE
            return
        num, den = _cancel(num, den)
        if den.is_monomial():
            self.num, self.den = num / den, ONE
            return
        # divide out the lowest power of pi and normalize the leading coefficient
        h0 = min(den.terms)
        lead = den.terms[max(den.terms)]
        scale = ExactScalar({h0: lead})
        self.num, self.den = num / scale, den / scale

    def reduce(self):
        """Return an ExactScalar when the denominator is trivial, else self."""
        return self.num if self.den == ONE else self

    def _parts(self, other):
        if isinstance(other, ScalarFraction):
            return other.num, other.den
        if isinstance(other, (ExactScalar, int, Fraction)):
            return as_scalar(other), ONE
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        n, d = p
        if d == self.den:
            return ScalarFraction(self.num + n, d)
        return ScalarFraction(self.num * d + n * self.den, self.den * d)

    __radd__ = __add__

    def __neg__(self):
        return ScalarFraction(-self.num, self.den)

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self + ScalarFraction(-p[0], p[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return ScalarFraction(self.num * p[0], self.den * p[1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        if not p[0]:
            raise ZeroDivisionError("division by zero fraction")
        return ScalarFraction(self.num * p[1], self.den * p[0])

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return ScalarFraction(p[0], p[1]) / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.num * p[1] == p[0] * self.den

    def __hash__(self):
        r = self.reduce()
        return hash(r) if isinstance(r, ExactScalar) else hash((self.num, self.den))

    def __repr__(self):
        if self.den == ONE:
            return f"ScalarFraction({self.num})"
        return f"ScalarFraction(({self.num}) / ({self.den}))"


def _to_poly(x: ExactScalar):
    import flint

    h0 = min(x.terms)
    coeffs = [0] * (max(x.terms) - h0 + 1)
    for h, c in x.terms.items():
        coeffs[h - h0] = flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq_poly(coeffs), h0


def _from_poly(poly, shift: int) -> ExactScalar:
    return ExactScalar({j + shift: _frac(c) for j, c in enumerate(poly.coeffs()) if c != 0})


def _cancel(num: ExactScalar, den: ExactScalar):
    """Divide out the polynomial gcd (in sqrt(pi)) of numerator and denominator."""
    pn, hn = _to_poly(num)
    pd, hd = _to_poly(den)
    g = pn.gcd(pd)
    if g.degree() < 1:
        return num, den
    return _from_poly(pn // g, hn), _from_poly(pd // g, hd)


def gamma_half(m: int) -> ExactScalar:
    """Gamma(m/2) for a positive integer m."""
    if m < 1:
        raise ValueError("gamma_half needs m >= 1")
    if m % 2 == 0:
        return ExactScalar({0: factorial(m // 2 - 1)})
    # Gamma(1/2 + n) = (2n)! / (4^n n!) sqrt(pi)
    n = (m - 1) // 2
    return ExactScalar({1: Fraction(factorial(2 * n), 4 ** n * factorial(n))})


def ball_volume(n: int) -> ExactScalar:
    """Volume of the unit ball in R^n."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return ExactScalar({n: 1}) / gamma_half(n + 2)


def sphere_volume(m: int) -> ExactScalar:
    """Area of the unit sphere S^(m-1) in R^m."""
    if m < 1:
        raise ValueError("ambient dimension must be positive")
    return ExactScalar({m: 2}) / gamma_half(m)


def flag_coeff(n: int, k: int) -> ExactScalar:
    """binom(n, k) * omega_n / (omega_k * omega_{n-k})."""
    if not 0 <= k <= n:
        raise ValueError(f"flag coefficient needs 0 <= k <= n, got ({n}, {k})")
    return comb(n, k) * ball_volume(n) / (ball_volume(k) * ball_volume(n - k))
