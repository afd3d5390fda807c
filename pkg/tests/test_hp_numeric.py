from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from hybrid_sums.hp_numeric import (
    PrecisionContext,
    default_bits,
    digamma,
    format_hp,
    hp_to_json,
    hurwitz_zeta,
    roots_of_unity,
    unit_exp,
)


def test_default_bits_rule():
    assert default_bits(3) == 192
    assert default_bits(2**10) == 208
    assert default_bits(10**6) == 128 + 8 * 20


def test_tolerance_is_half_precision():
    ctx = PrecisionContext(192)
    assert ctx.tol == ctx.mp.ldexp(1, -96)
    assert PrecisionContext(192, 1e-20).tol == ctx.mp.mpf(1e-20)


def test_rejects_low_precision_and_bad_tolerance():
    with pytest.raises(ValueError):
        PrecisionContext(32)
    with pytest.raises(ValueError):
        PrecisionContext(128, 0.0)


def test_contexts_are_independent():
    lo, hi = PrecisionContext(128), PrecisionContext(512)
    assert lo.mp.prec == 128 and hi.mp.prec == 512
    assert abs(hi.pi - hi.mp.pi) == 0
    assert abs(hi.pi - hi.convert(lo.pi)) > hi.mp.ldexp(1, -200)
    assert lo.doubled().bits == 256
    assert lo.meet(hi) is lo


@pytest.mark.parametrize("bits", [192, 384])
@pytest.mark.parametrize("s", [2, 3, 5, 7])
@pytest.mark.parametrize("x", [Fraction(1, 9), Fraction(1, 2), Fraction(8, 9), Fraction(5, 72)])
def test_hurwitz_zeta_against_mpmath(bits, s, x):
    ctx = PrecisionContext(bits)
    with mpmath.workprec(bits + 32):
        expected = mpmath.zeta(s, mpmath.mpf(x.numerator) / x.denominator)
    got = hurwitz_zeta(s, x, ctx)
    assert abs(got - expected) <= mpmath.mpf(2) ** (-(bits - 8)) * abs(expected)


@pytest.mark.parametrize("bits", [192, 384])
@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(2, 3), Fraction(1, 72), Fraction(71, 72), Fraction(1)])
def test_digamma_against_mpmath(bits, x):
    ctx = PrecisionContext(bits)
    with mpmath.workprec(bits + 32):
        expected = mpmath.psi(0, mpmath.mpf(x.numerator) / x.denominator)
    got = digamma(x, ctx)
    assert abs(got - expected) <= mpmath.mpf(2) ** (-(bits - 8)) * max(1, abs(expected))


def test_digamma_at_one_is_minus_euler_gamma():
    ctx = PrecisionContext(256)
    assert abs(digamma(Fraction(1), ctx) + ctx.mp.euler) < ctx.tol


def test_unit_exp_exact_quarter_points():
    ctx = PrecisionContext(192)
    assert unit_exp(Fraction(1, 4), ctx) == ctx.mpc(0, 1)
    assert unit_exp(Fraction(1, 2), ctx) == ctx.mpc(-1, 0)


def test_roots_of_unity_sum_to_zero():
    ctx = PrecisionContext(192)
    roots = roots_of_unity(12, ctx)
    assert len(roots) == 12
    assert abs(ctx.mp.fsum(roots)) < ctx.tol


def test_format_carries_precision():
    ctx = PrecisionContext(192)
    assert hp_to_json(ctx.mpf(2), ctx) == {"value": "2.0", "bits": 192}
    assert format_hp(ctx.pi, ctx).startswith("3.14159265358979323846")
    assert format_hp(ctx.mpc(1, -2), ctx) == "1.0-2.0j"
