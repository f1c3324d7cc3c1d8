import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quatval.scalars import (ONE, PI, SQRT_PI, ZERO, ExactScalar, ScalarFraction, ball_volume,
                             flag_coeff, gamma_half, sphere_volume)

from conftest import numeric

scalars = st.dictionaries(st.integers(-6, 6), st.fractions(max_denominator=50), max_size=3).map(ExactScalar)


def test_sqrt_pi_squares_to_pi():
    assert SQRT_PI * SQRT_PI == PI
    assert PI ** -1 * PI == ONE


def test_zero_terms_dropped():
    assert ExactScalar({2: 0, 0: 1}) == ONE
    assert not ExactScalar({4: Fraction(0)})


@pytest.mark.parametrize("m", range(1, 17))
def test_gamma_half_matches_float(m):
    assert numeric(gamma_half(m)) == pytest.approx(math.gamma(m / 2), rel=1e-12)


@pytest.mark.parametrize("n", range(0, 10))
def test_ball_volume(n):
    assert numeric(ball_volume(n)) == pytest.approx(math.pi ** (n / 2) / math.gamma(n / 2 + 1))


def test_sphere_is_n_times_ball():
    for n in range(1, 10):
        assert sphere_volume(n) == ball_volume(n) * n


def test_flag_coefficients():
    for n in range(1, 9):
        assert flag_coeff(n, 0) == ONE == flag_coeff(n, n)
        for k in range(n + 1):
            assert flag_coeff(n, k) == flag_coeff(n, n - k)
    for n in range(1, 9):
        for k in range(n + 1):
            omega = lambda m: math.pi ** (m / 2) / math.gamma(m / 2 + 1)
            expected = math.comb(n, k) * omega(n) / (omega(k) * omega(n - k))
            assert numeric(flag_coeff(n, k)) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("text", ["7/2560", "64/35·π^(-1)", "-2·π^4", "1680·π^(-4)", "π", "-π^(1/2)", "3/2·π^(-3/2)"])
def test_parse_render_round_trip(text):
    x = ExactScalar.parse(text)
    assert x.render() == text
    assert ExactScalar.from_json(x.to_json()) == x


def test_latex_rendering():
    assert ExactScalar.parse("7/2560").render("latex") == r"\frac{7}{2560}"
    assert ExactScalar.parse("64/35·π^(-1)").render("latex") == r"\frac{64}{35\pi}"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        ExactScalar.parse("two pi")


def test_fraction_cancels_common_factor():
    a = PI + ONE
    q = ScalarFraction(a * PI, a)
    assert q.reduce() == PI
    assert isinstance(ScalarFraction(ONE, a).reduce(), ScalarFraction)


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(scalars)
def test_json_round_trip(a):
    assert ExactScalar.from_json(a.to_json()) == a
