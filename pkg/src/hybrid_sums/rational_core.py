"""Exact rational arithmetic and Bernoulli data.

``Rational`` is :class:`fractions.Fraction`: it normalises at construction
(positive denominator, reduced form) and hashes consistently, which is all
this package needs from a big-rational type.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, floor
from typing import List, Union

__all__ = [
    "Rational",
    "PiPower",
    "as_rational",
    "format_rational",
    "parse_rational",
    "binomial",
    "bernoulli_number",
    "bernoulli_polynomial",
    "periodic_bernoulli",
    "periodic_bernoulli_table",
    "r_coefficient",
]

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Fraction | int) -> str:
    """Serialise as ``"num/den"``; integers keep the ``/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip().replace("−", "-"))


binomial = comb


@dataclass(frozen=True)
class PiPower:
    """The exact value ``coeff * pi**exponent``."""

    coeff: Fraction
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("pi exponent must be non-negative")
        object.__setattr__(self, "coeff", as_rational(self.coeff))

    def __add__(self, other: "PiPower") -> "PiPower":
        if not isinstance(other, PiPower):
            return NotImplemented
        if other.coeff == 0:
            return self
        if self.coeff == 0:
            return other
        if other.exponent != self.exponent:
            raise ValueError("cannot add pi powers of different exponent exactly")
        return PiPower(self.coeff + other.coeff, self.exponent)

    def __sub__(self, other: "PiPower") -> "PiPower":
        return self + (-other)

    def __neg__(self) -> "PiPower":
        return PiPower(-self.coeff, self.exponent)

    def scale(self, factor: RationalLike) -> "PiPower":
        return PiPower(self.coeff * as_rational(factor), self.exponent)

    def is_rational(self) -> bool:
        return self.exponent == 0 or self.coeff == 0

    def to_hp(self, ctx):
        """Numeric value in the given :class:`~hybrid_sums.hp_numeric.PrecisionContext`."""
        return ctx.from_rational(self.coeff) * ctx.pi ** self.exponent

    def to_json(self) -> dict:
        return {"coeff": format_rational(self.coeff), "pi_pow": self.exponent}

    def __str__(self) -> str:
        return f"({format_rational(self.coeff)})*pi^{self.exponent}"


# Bernoulli numbers, B_1 = -1/2.  The table only ever grows, under a lock,
# so readers never observe a partially built entry.
_bernoulli: List[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli_number(m: int) -> Fraction:
    if m < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if m < len(_bernoulli):
        return _bernoulli[m]
    with _bernoulli_lock:
        table = _bernoulli
        for k in range(len(table), m + 1):
            if k > 1 and k % 2 == 1:
                table.append(Fraction(0))
                continue
            # sum_{j=0}^{k} C(k+1, j) B_j = 0
            s = sum(comb(k + 1, j) * table[j] for j in range(k))
            table.append(-s / (k + 1))
    return _bernoulli[m]


def bernoulli_polynomial(m: int, x: RationalLike) -> Fraction:
    if m < 0:
        raise ValueError("Bernoulli index must be >= 0")
    x = as_rational(x)
    # Horner on sum_k C(m,k) B_k x^(m-k)
    acc = Fraction(0)
    for k in range(m + 1):
        acc = acc * x + comb(m, k) * bernoulli_number(k)
    return acc


def periodic_bernoulli(m: int, x: RationalLike) -> Fraction:
    """B_m(x - floor(x)) off the integers and 0 on them, for every m >= 1."""
    if m < 1:
        raise ValueError("periodic Bernoulli function needs m >= 1")
    x = as_rational(x)
    if x.denominator == 1:
        return Fraction(0)
    return bernoulli_polynomial(m, x - floor(x))


@lru_cache(maxsize=4096)
def periodic_bernoulli_table(m: int, k: int) -> tuple:
    """``table[r] == periodic_bernoulli(m, r/k)`` for r in [0, k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return tuple(periodic_bernoulli(m, Fraction(r, k)) for r in range(k))


@lru_cache(maxsize=None)
def r_coefficient(m: int, n: int, l: int) -> Fraction:
    """The Bernoulli-binomial coefficient attached to q^l in the mean-value closed forms."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if not 0 <= l <= m + n:
        raise ValueError(f"l={l} outside [0, {m + n}]")
    top = m + n - l
    inner = Fraction(0)
    for a in range(m + 1):
        for b in range(n + 1):
            if a + b < top:
                continue
            inner += (
                bernoulli_number(m - a)
                * bernoulli_number(n - b)
                * Fraction(comb(m, a) * comb(n, b) * comb(a + b + 1, top), a + b + 1)
            )
    return bernoulli_number(top) * inner
