"""High-precision real/complex kernels.

Values are mpmath numbers owned by a per-instance mpmath context, so two
:class:`PrecisionContext` objects never interfere through mpmath's global
precision.  A value is "tagged" with the bits of the context that made it;
mixing contexts goes through :meth:`PrecisionContext.meet`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from mpmath.ctx_mp import MPContext

from .rational_core import as_rational, bernoulli_number

__all__ = [
    "PrecisionContext",
    "EulerMaclaurinError",
    "default_bits",
    "unit_exp",
    "roots_of_unity",
    "hurwitz_zeta",
    "digamma",
    "format_hp",
    "hp_to_json",
]

GUARD_BITS = 24


class EulerMaclaurinError(ArithmeticError):
    """An asymptotic expansion failed to reach its truncation bound."""


def default_bits(q: int) -> int:
    """Working precision for sums over residues mod q."""
    return max(192, 128 + 8 * math.ceil(math.log2(max(q, 2))))


@dataclass(frozen=True)
class PrecisionContext:
    bits: int
    tol_override: Optional[float] = None
    mp: MPContext = field(init=False, repr=False, compare=False)
    pi: object = field(init=False, repr=False, compare=False)
    tol: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError("precision must be at least 64 bits")
        if self.tol_override is not None and not self.tol_override > 0:
            raise ValueError("tolerance must be positive")
        mp = MPContext()
        mp.prec = self.bits
        object.__setattr__(self, "mp", mp)
        object.__setattr__(self, "pi", +mp.pi)
        if self.tol_override is None:
            tol = mp.ldexp(mp.mpf(1), -(self.bits // 2))
        else:
            tol = mp.mpf(self.tol_override)
        object.__setattr__(self, "tol", tol)

    @classmethod
    def for_modulus(cls, q: int, bits: Optional[int] = None, tol: Optional[float] = None):
        return cls(bits or default_bits(q), tol)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.bits, self.tol_override)

    def meet(self, other: "PrecisionContext") -> "PrecisionContext":
        """Context to use when combining values from ``self`` and ``other``."""
        return self if self.bits <= other.bits else other

    def mpf(self, x):
        if isinstance(x, Fraction):
            return self.from_rational(x)
        return self.mp.mpf(x)

    def mpc(self, re, im=0):
        return self.mp.mpc(re, im)

    def from_rational(self, x) -> object:
        x = as_rational(x)
        return self.mp.mpf(x.numerator) / x.denominator

    def convert(self, value):
        """Round a value from any context into this one."""
        return +self.mp.convert(value)

    def close(self, a, b, tol=None) -> bool:
        tol = self.tol if tol is None else tol
        return abs(a - b) <= tol * max(1, abs(b))


def unit_exp(t, ctx: PrecisionContext):
    """e(t) = exp(2 pi i t) for exact rational t."""
    t = as_rational(t)
    t = t - math.floor(t)
    mp = ctx.mp
    if t == 0:
        return mp.mpc(1, 0)
    x = mp.mpf(2 * t.numerator) / t.denominator
    return mp.mpc(mp.cospi(x), mp.sinpi(x))


@lru_cache(maxsize=128)
def _roots(q: int, bits: int, tol_override) -> tuple:
    ctx = PrecisionContext(bits, tol_override)
    return tuple(unit_exp(Fraction(k, q), ctx) for k in range(q))


def roots_of_unity(q: int, ctx: PrecisionContext) -> tuple:
    """``out[k] == e(k/q)`` for k in [0, q)."""
    return _roots(q, ctx.bits, ctx.tol_override)


def hurwitz_zeta(s: int, x, ctx: PrecisionContext):
    """zeta(s, x) = sum_{k>=0} (k+x)^-s for integer s >= 2 and rational 0 < x <= 1.

    Direct sum over N = max(bits, 2s) terms, then the Euler-Maclaurin tail.
    For real s and real N + x the error after stopping is at most the first
    omitted correction, so corrections are added until one drops below
    2^-(bits+guard).
    """
    if not isinstance(s, int) or s < 2:
        raise ValueError("hurwitz_zeta needs an integer s >= 2")
    x = as_rational(x)
    if not 0 < x <= 1:
        raise ValueError("hurwitz_zeta needs 0 < x <= 1")
    mp = ctx.mp
    with mp.extraprec(GUARD_BITS):
        eps = mp.ldexp(mp.mpf(1), -(ctx.bits + GUARD_BITS))
        xm = mp.mpf(x.numerator) / x.denominator
        n_terms = max(ctx.bits, 2 * s)
        head = mp.fsum((k + xm) ** (-s) for k in range(n_terms))
        w = n_terms + xm
        tail = w ** (1 - s) / (s - 1) + w ** (-s) / 2
        # term_j = B_2j/(2j)! * s(s+1)...(s+2j-2) * w^(-s-2j+1)
        rising = mp.mpf(s)
        wpow = w ** (-s - 1)
        inv_w2 = 1 / (w * w)
        prev = None
        for j in range(1, 4 * ctx.bits):
            b = bernoulli_number(2 * j)
            term = mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * j) * rising * wpow
            mag = abs(term)
            if prev is not None and mag > prev:
                raise EulerMaclaurinError(f"hurwitz_zeta({s}, {x}): corrections grew at j={j}")
            tail += term
            if mag < eps:
                break
            prev = mag
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            wpow *= inv_w2
        else:
            raise EulerMaclaurinError(f"hurwitz_zeta({s}, {x}) did not converge")
        result = head + tail
    return +result


def _digamma_shift(bits: int) -> int:
    # smallest asymptotic term is about exp(-2 pi x)
    return max(8, math.ceil((bits + GUARD_BITS) * math.log(2) / (2 * math.pi)) + 4)


def digamma(x, ctx: PrecisionContext):
    """psi(x) for rational x > 0: shift up with psi(x+1) = psi(x) + 1/x, then
    the asymptotic series ln y - 1/(2y) - sum B_2j / (2j y^2j)."""
    x = as_rational(x)
    if x <= 0:
        raise ValueError("digamma needs x > 0")
    mp = ctx.mp
    shift = max(0, math.ceil(_digamma_shift(ctx.bits) - x))
    correction = sum((Fraction(1) / (x + i) for i in range(shift)), Fraction(0))
    y = x + shift
    with mp.extraprec(GUARD_BITS):
        eps = mp.ldexp(mp.mpf(1), -(ctx.bits + GUARD_BITS))
        ym = mp.mpf(y.numerator) / y.denominator
        acc = mp.log(ym) - 1 / (2 * ym)
        inv_y2 = 1 / (ym * ym)
        ypow = inv_y2
        prev = None
        for j in range(1, 4 * ctx.bits):
            b = bernoulli_number(2 * j)
            term = mp.mpf(b.numerator) / b.denominator / (2 * j) * ypow
            mag = abs(term)
            if prev is not None and mag > prev:
                raise EulerMaclaurinError(f"digamma({x}): asymptotic terms grew at j={j}")
            acc -= term
            if mag < eps:
                break
            prev = mag
            ypow *= inv_y2
        else:
            raise EulerMaclaurinError(f"digamma({x}) did not converge")
        acc -= mp.mpf(correction.numerator) / correction.denominator
    return +acc


def format_hp(value, ctx: PrecisionContext) -> str:
    digits = max(15, ctx.bits // 3)
    mp = ctx.mp
    if isinstance(value, mp.mpc) or hasattr(value, "imag") and not isinstance(value, mp.mpf):
        re = mp.nstr(mp.mpf(value.real), digits, min_fixed=-6, max_fixed=20)
        im = mp.nstr(mp.mpf(value.imag), digits, min_fixed=-6, max_fixed=20)
        return f"{re}{'' if im.startswith('-') else '+'}{im}j"
    return mp.nstr(mp.mpf(value), digits, min_fixed=-6, max_fixed=20)


def hp_to_json(value, ctx: PrecisionContext) -> dict:
    return {"value": format_hp(value, ctx), "bits": ctx.bits}
