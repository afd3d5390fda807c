from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import floor, gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from hybrid_sums.sums import classical_dedekind_sawtooth, dedekind, hardy, s1, s2, s3, s5, sawtooth

_x = sympy.Symbol("x")


@lru_cache(maxsize=None)
def _bbar(m: int, x: Fraction) -> Fraction:
    """Independent periodic Bernoulli function built on sympy polynomials."""
    if x.denominator == 1:
        return Fraction(0)
    frac = x - floor(x)
    v = sympy.bernoulli(m, _x).subs(_x, sympy.Rational(frac.numerator, frac.denominator))
    return Fraction(int(v.p), int(v.q))


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _naive(variant, h, m, n, k):
    total = Fraction(0)
    for j in range(1, k + 1):
        a, b = Fraction(j, k), Fraction(h * j, k)
        if variant == "S":
            total += _bbar(m, a) * _bbar(n, b)
        elif variant == "s1":
            total += _sign((h * j) // k) * _bbar(m, a)
        elif variant == "s2":
            total += _sign(j) * _bbar(m, a) * _bbar(n, b)
        elif variant == "s3":
            total += _sign(j) * _bbar(n, b)
        else:
            total += _sign(j + (h * j) // k) * _bbar(m, a)
    return total


def test_small_values():
    assert dedekind(1, 1, 1, 3) == Fraction(1, 18)
    assert dedekind(5, 2, 3, 1) == 0
    assert dedekind(1, 1, 1, 3) + dedekind(3, 1, 1, 1) == Fraction(1 + 9 + 1, 36) - Fraction(1, 4)
    assert s2(2, 1, 1, 4) == 2 * dedekind(4, 1, 1, 4) - dedekind(2, 1, 1, 4)
    assert s5(1, 1, 3) == 2 * dedekind(1, 1, 1, 3) - 4 * dedekind(2, 1, 1, 3)
    assert s3(2, 1, 3) == Fraction(-1, 3)


@given(st.integers(1, 14), st.integers(-40, 40), st.integers(1, 4), st.integers(1, 4), st.sampled_from(["S", "s1", "s2", "s3", "s5"]))
def test_against_independent_definitions(k, h, m, n, variant):
    got = dedekind(h, m, n, k) if variant == "S" else hardy(variant, h, m, n, k)
    assert got == _naive(variant, h, m, n, k)


@given(st.integers(1, 30), st.integers(0, 60), st.integers(1, 5), st.integers(1, 5))
def test_periodicity_in_h(k, h, m, n):
    assert dedekind(h + k, m, n, k) == dedekind(h, m, n, k)
    assert s1(h + 2 * k, m, k) == s1(h, m, k)
    assert s5(h + 2 * k, m, k) == s5(h, m, k)


def test_sign_sums_need_period_two_k():
    # reducing h mod k instead of mod 2k would flip these
    assert s1(4, 1, 3) != s1(1, 1, 3)
    assert s5(4, 1, 3) != s5(1, 1, 3)


def test_reciprocity_small_grid():
    for k in range(2, 41):
        for h in range(1, k):
            if gcd(h, k) == 1:
                assert dedekind(h, 1, 1, k) + dedekind(k, 1, 1, h) == Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4)


def test_sawtooth_equivalence():
    assert sawtooth(Fraction(3)) == 0
    assert sawtooth(Fraction(1, 3)) == Fraction(-1, 6)
    for k in range(1, 61):
        for h in range(1, k + 1):
            if gcd(h, k) == 1:
                assert dedekind(h, 1, 1, k) == classical_dedekind_sawtooth(h, k)


def test_rejects_nonpositive_modulus():
    with pytest.raises(ValueError):
        dedekind(1, 1, 1, 0)
    with pytest.raises(ValueError):
        hardy("s4", 1, 1, 1, 3)


def _vanishing_grid(condition):
    for q in range(1, 31):
        for h in range(1, 2 * q):
            if gcd(h, q) != 1:
                continue
            for m in range(1, 6):
                for n in range(1, 6):
                    yield from condition(h, m, n, q)


def _stated(h, m, n, q):
    if (h + m) % 2 == 0:
        yield "s1", (h, m, q), s1(h, m, q)
    if (h + m + q) % 2 == 1:
        yield "s2", (h, m, n, q), s2(h, m, n, q)
    if (h + q) % 2 == 1:
        yield "s3", (h, n, q), s3(h, n, q)
    if (h + m + q) % 2 == 0:
        yield "s5", (h, m, q), s5(h, m, q)


def _reflection(h, m, n, q):
    if (q + m + n) % 2 == 1:
        yield "s2", (h, m, n, q), s2(h, m, n, q)
    if (q + n) % 2 == 1:
        yield "s3", (h, n, q), s3(h, n, q)


def test_vanishing_under_stated_parity_conditions():
    """Literal parity conditions for s1, s2, s3, s5 over q <= 30, m, n <= 5."""
    bad = sorted({(name, args) for name, args, v in _vanishing_grid(_stated) if v != 0})
    assert not bad, f"{len(bad)} nonzero values, e.g. {bad[:3]}"


def test_s1_and_s5_vanishing_hold():
    bad = [(name, args) for name, args, v in _vanishing_grid(_stated) if name in ("s1", "s5") and v != 0]
    assert not bad


def test_s2_s3_vanish_under_reflection_parity():
    # j -> q - j maps the summand to (-1)^(q+m+n) (resp. (-1)^(q+n)) times itself
    bad = [(name, args) for name, args, v in _vanishing_grid(_reflection) if v != 0]
    assert not bad
