"""Generalized Dedekind sums and generalized Hardy sums, straight from their definitions.

All values are exact Fractions.  The Hardy sums s1 and s5 carry the sign
(-1)^floor(hj/k), which has period 2k in h, so h is reduced mod 2k there and
mod k everywhere else.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .rational_core import periodic_bernoulli_table

__all__ = [
    "HARDY_VARIANTS",
    "dedekind",
    "hardy",
    "s1",
    "s2",
    "s3",
    "s5",
    "sawtooth",
    "classical_dedekind_sawtooth",
]

HARDY_VARIANTS = ("s1", "s2", "s3", "s5")


def _check_k(k: int) -> None:
    if k <= 0:
        raise ValueError(f"k must be a positive integer, got {k}")


def dedekind(h: int, m: int, n: int, k: int) -> Fraction:
    """S(h, m, n, k) = sum_{j=1}^{k} Bbar_m(j/k) Bbar_n(hj/k)."""
    _check_k(k)
    bm = periodic_bernoulli_table(m, k)
    bn = periodic_bernoulli_table(n, k)
    h %= k
    # j = k contributes Bbar_m(1) = 0
    return sum((bm[j] * bn[h * j % k] for j in range(1, k)), Fraction(0))


def s1(h: int, m: int, k: int) -> Fraction:
    _check_k(k)
    bm = periodic_bernoulli_table(m, k)
    h %= 2 * k
    total = Fraction(0)
    for j in range(1, k):
        if (h * j // k) % 2:
            total -= bm[j]
        else:
            total += bm[j]
    return total


def s2(h: int, m: int, n: int, k: int) -> Fraction:
    _check_k(k)
    bm = periodic_bernoulli_table(m, k)
    bn = periodic_bernoulli_table(n, k)
    h %= k
    total = Fraction(0)
    for j in range(1, k):
        term = bm[j] * bn[h * j % k]
        total += -term if j % 2 else term
    return total


def s3(h: int, n: int, k: int) -> Fraction:
    _check_k(k)
    bn = periodic_bernoulli_table(n, k)
    h %= k
    total = Fraction(0)
    # j = k has hj/k an integer
    for j in range(1, k):
        v = bn[h * j % k]
        total += -v if j % 2 else v
    return total


def s5(h: int, m: int, k: int) -> Fraction:
    _check_k(k)
    bm = periodic_bernoulli_table(m, k)
    h %= 2 * k
    total = Fraction(0)
    for j in range(1, k):
        if (j + h * j // k) % 2:
            total -= bm[j]
        else:
            total += bm[j]
    return total


def hardy(variant: str, h: int, m: Optional[int], n: Optional[int], k: int) -> Fraction:
    """Dispatch on variant name.  s3 uses only ``n``; s1 and s5 only ``m``."""
    if variant == "s1":
        return s1(h, m, k)
    if variant == "s2":
        if n is None:
            raise ValueError("s2 needs both m and n")
        return s2(h, m, n, k)
    if variant == "s3":
        if n is None:
            raise ValueError("s3 needs n")
        return s3(h, n, k)
    if variant == "s5":
        return s5(h, m, k)
    raise ValueError(f"unknown Hardy sum variant {variant!r}")


def sawtooth(x: Fraction) -> Fraction:
    """((x)) = x - floor(x) - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def classical_dedekind_sawtooth(h: int, k: int) -> Fraction:
    """s(h, k) = sum_{j=1}^{k-1} ((j/k)) ((hj/k)), independent of the Bernoulli tables."""
    _check_k(k)
    return sum((sawtooth(Fraction(j, k)) * sawtooth(Fraction(h * j, k)) for j in range(1, k)), Fraction(0))
