"""Exact linear algebra helpers.

Rational systems go through FLINT's ``fmpq_mat`` (reduced row echelon form
in C).  Systems whose entries are :class:`~quatval.scalars.ExactScalar` or
:class:`~quatval.scalars.ScalarFraction` use a plain Gaussian elimination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

import flint

from .scalars import ExactScalar, ScalarFraction, ZERO, as_scalar

__all__ = [
    "InconsistentSystem",
    "to_fmpq_mat",
    "rank",
    "rref",
    "nullspace",
    "solve",
    "solve_scalar_rhs",
    "generic_inverse",
    "generic_solve",
]


class InconsistentSystem(ArithmeticError):
    """Raised when an exact linear system has no solution."""


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, ExactScalar):
        f = x.to_fraction()
        return flint.fmpq(f.numerator, f.denominator)
    raise TypeError(f"not a rational: {x!r}")


def _frac(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def to_fmpq_mat(rows: Sequence[Sequence], ncols: int | None = None) -> flint.fmpq_mat:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    flat = [_fmpq(x) for row in rows for x in row]
    return flint.fmpq_mat(nrows, ncols, flat)


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not len(rows[0]):
        return 0
    return to_fmpq_mat(rows).rank()


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Return ``(R, pivots)`` with ``R`` a list of Fraction rows."""
    if not rows:
        return [], []
    m, r = to_fmpq_mat(rows, ncols).rref()
    R = [[_frac(m[i, j]) for j in range(m.ncols())] for i in range(r)]
    pivots = []
    for row in R:
        pivots.append(next(j for j, x in enumerate(row) if x))
    return R, pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> List[List[Fraction]]:
    """Basis of ``{x : A x = 0}`` as Fraction vectors."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], B: Sequence[Sequence]) -> List[List[Fraction]]:
    """Particular solution X of A X = B (rational); free variables set to 0.

    ``B`` is given as a list of rows (one per equation).  Raises
    :class:`InconsistentSystem` if some column of B is not in the range of A.
    """
    n = len(A[0]) if A else 0
    k = len(B[0]) if B else 0
    aug = [list(a) + list(b) for a, b in zip(A, B)]
    R, pivots = rref(aug, n + k)
    X = [[Fraction(0)] * k for _ in range(n)]
    for row, p in zip(R, pivots):
        if p >= n:
            raise InconsistentSystem("right-hand side outside the column span")
        for c in range(k):
            X[p][c] = row[n + c]
    return X


def solve_scalar_rhs(A: Sequence[Sequence], b: Sequence[ExactScalar]) -> List[ExactScalar]:
    """Solve a rational system with ExactScalar right-hand side.

    The system splits along powers of sqrt(pi), so each power is solved
    separately over the rationals.
    """
    powers = sorted({h for x in b for h in as_scalar(x).terms})
    if not powers:
        return [ZERO] * (len(A[0]) if A else 0)
    B = [[as_scalar(x).terms.get(h, Fraction(0)) for h in powers] for x in b]
    X = solve(A, B)
    return [ExactScalar({h: row[c] for c, h in enumerate(powers)}) for row in X]


def _field(x):
    return x if isinstance(x, ScalarFraction) else ScalarFraction(as_scalar(x))


def generic_solve(A: Sequence[Sequence], B: Sequence[Sequence]):
    """Gaussian elimination over ScalarFraction for square nonsingular A."""
    n = len(A)
    k = len(B[0]) if B else 0
    M = [[_field(x) for x in A[i]] + [_field(x) for x in B[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise InconsistentSystem("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [[M[i][n + c].reduce() for c in range(k)] for i in range(n)]


def generic_inverse(A: Sequence[Sequence]):
    n = len(A)
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    return generic_solve(A, eye)
