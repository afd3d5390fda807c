"""Dirichlet L-values and exact closed forms for character-averaged L-products.

L(m, chi) for chi mod d is evaluated as

    d^-m sum_a chi(a) zeta(m, a/d)          (m >= 2)
    -d^-1 sum_a chi(a) psi(a/d)             (m = 1, chi non-principal)

Closed forms are :class:`PiPower` values; all of them share the prefactor
-(2 pi i)^(m+n) / (4 m! n!), which is real because m + n is even.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Callable, Optional

from .arith import euler_phi, factorize, is_square_full, phi_l, reduced_residues
from .characters import DirichletCharacter, character_group, induce
from .hp_numeric import PrecisionContext, digamma, hurwitz_zeta, unit_exp
from .rational_core import PiPower, bernoulli_number, r_coefficient

__all__ = [
    "l_value",
    "lseries_prefactor",
    "euler_triple_product",
    "odd_LL_closed",
    "primitive_odd_LL_closed",
    "twisted_primitive_odd_LL_closed",
    "lemma28_statement_factor",
    "lemma28_proof_factor",
    "brute_LL_sum",
    "weight_conj_at",
    "weight_at",
    "WEIGHTS",
]


@lru_cache(maxsize=65536)
def _hurwitz(s: int, x: Fraction, bits: int, tol):
    return hurwitz_zeta(s, x, PrecisionContext(bits, tol))


@lru_cache(maxsize=65536)
def _digamma(x: Fraction, bits: int, tol):
    return digamma(x, PrecisionContext(bits, tol))


def l_value(m: int, chi: DirichletCharacter, ctx: PrecisionContext):
    """L(m, chi) for a non-principal character chi mod d and integer m >= 1."""
    if m < 1:
        raise ValueError("l_value needs m >= 1")
    if chi.is_principal():
        raise ValueError("l_value is only implemented for non-principal characters")
    return _l_value(m, chi, ctx.bits, ctx.tol_override)


@lru_cache(maxsize=16384)
def _l_value(m, chi, bits, tol):
    ctx = PrecisionContext(bits, tol)
    mp = ctx.mp
    d = chi.modulus
    re_terms, im_terms = [], []
    for a in reduced_residues(d):
        x = Fraction(a, d)
        if m == 1:
            if a == d:
                continue
            base = _digamma(x, bits, tol)
        else:
            base = _hurwitz(m, x, bits, tol)
        z = unit_exp(chi.angle(a), ctx) * base
        re_terms.append(z.real)
        im_terms.append(z.imag)
    total = mp.mpc(mp.fsum(re_terms), mp.fsum(im_terms))
    if m == 1:
        return -total / d
    return total / mp.mpf(d) ** m


def lseries_prefactor(m: int, n: int) -> PiPower:
    """-(2 pi i)^(m+n) / (4 m! n!) for m + n even."""
    if (m + n) % 2:
        raise ValueError("m + n must be even")
    k = m + n
    sign = -1 if (k // 2) % 2 else 1  # i^k
    return PiPower(Fraction(-sign * 2**k, 4 * factorial(m) * factorial(n)), k)


def euler_triple_product(q: int, l: int, k: int) -> Fraction:
    """prod_{p | q} (1 - 1/p)(1 - 1/p^l)(1 - 1/p^k)."""
    out = Fraction(1)
    for p, _ in factorize(q):
        out *= (1 - Fraction(1, p)) * (1 - Fraction(p) ** (-l)) * (1 - Fraction(p) ** (-k))
    return out


def _check_odd(m: int, n: int) -> None:
    if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
        raise ValueError(f"m and n must be odd positive integers, got m={m}, n={n}")


def odd_LL_closed(q: int, m: int, n: int) -> PiPower:
    """Closed form of sum over odd chi mod q of L(m, chi) L(n, conj chi)."""
    if q < 2:
        raise ValueError("q must be >= 2")
    _check_odd(m, n)
    s = sum(
        (r_coefficient(m, n, l) * phi_l(q, l) * Fraction(q) ** (l - m - n) for l in range(m + n + 1)),
        Fraction(0),
    )
    s -= bernoulli_number(m) * bernoulli_number(n) * phi_l(q, m + n - 1) / q
    return lseries_prefactor(m, n).scale(euler_phi(q) * s)


def _primitive_sum(q: int, m: int, n: int, factor: Callable[[int], Fraction]) -> PiPower:
    s = Fraction(0)
    for l in range(m + n + 1):
        s += (
            r_coefficient(m, n, l)
            * factor(l)
            * Fraction(q) ** (l - m - n + 1)
            * euler_triple_product(q, l, l - m - n + 1)
        )
    return lseries_prefactor(m, n).scale(s)


def primitive_odd_LL_closed(q: int, m: int, n: int) -> PiPower:
    """Closed form of the same sum restricted to odd primitive chi; q square-full."""
    if q < 2 or not is_square_full(q):
        raise ValueError(f"q={q} is not square-full")
    _check_odd(m, n)
    return _primitive_sum(q, m, n, lambda l: Fraction(1))


def lemma28_statement_factor(l: int, m: int, n: int) -> Fraction:
    return Fraction(2**l - 2 ** (m + n) - 2, 2**m + 2**n)


def lemma28_proof_factor(l: int, m: int, n: int) -> Fraction:
    two = Fraction(2)
    return (two ** (l - 1) - two ** (m + n - 1) - 1) / (two ** (m - 1) + two ** (n - 1))


def twisted_primitive_odd_LL_closed(q: int, m: int, n: int, weight: str = "plain", form: str = "statement") -> PiPower:
    """Weighted primitive sums.

    ``twist2``: L-values of chi times the principal character mod 2.
    ``char2bar``: weight conj(chi)(2); q must be odd.  ``form`` selects the
    printed statement factor or the proof-final factor (equal as rationals).
    """
    if weight == "plain":
        return primitive_odd_LL_closed(q, m, n)
    if q < 2 or not is_square_full(q):
        raise ValueError(f"q={q} is not square-full")
    _check_odd(m, n)
    if weight == "twist2":
        return _primitive_sum(q, m, n, lambda l: (1 - Fraction(1, 2**l)) * Fraction(2) ** (l - m - n))
    if weight == "char2bar":
        if q % 2 == 0:
            raise ValueError("the conj(chi)(2) weighted form needs odd q")
        fac = lemma28_statement_factor if form == "statement" else lemma28_proof_factor
        return _primitive_sum(q, m, n, lambda l: fac(l, m, n))
    raise ValueError(f"unknown weight {weight!r}")


def weight_conj_at(a: int) -> Callable:
    """chi -> conj(chi)(a), with 0 when gcd(a, q) > 1."""

    def w(chi: DirichletCharacter, ctx: PrecisionContext):
        return chi.conj().value(a, ctx)

    w.__name__ = f"conj_chi({a})"
    return w


def weight_at(a: int) -> Callable:
    def w(chi: DirichletCharacter, ctx: PrecisionContext):
        return chi.value(a, ctx)

    w.__name__ = f"chi({a})"
    return w


WEIGHTS = {"plain": None, "char2bar": weight_conj_at(2)}


def brute_LL_sum(
    q: int,
    m: int,
    n: int,
    ctx: PrecisionContext,
    weight: Optional[Callable] = None,
    primitive_only: bool = False,
    twist_modulus: Optional[int] = None,
):
    """sum over odd chi mod q (optionally primitive only) of
    weight(chi) L(m, chi') L(n, conj chi'), where chi' is chi induced to
    lcm(q, twist_modulus) when a twist modulus is given and chi otherwise."""
    if q < 2:
        raise ValueError("q must be >= 2")
    mp = ctx.mp
    total = mp.mpc(0)
    for chi in character_group(q).odd_characters(primitive_only):
        w = 1 if weight is None else weight(chi, ctx)
        if w == 0:
            continue
        psi = chi if twist_modulus is None else induce(chi, lcm(q, twist_modulus))
        total += w * l_value(m, psi, ctx) * l_value(n, psi.conj(), ctx)
    return total
