"""Kloosterman sums, Gauss sums and the character-twisted Kloosterman sum."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from .arith import reduced_residues
from .characters import DirichletCharacter
from .hp_numeric import PrecisionContext, roots_of_unity, unit_exp

__all__ = [
    "ImaginaryResidueError",
    "kloosterman",
    "kloosterman_table",
    "kloosterman_complex",
    "gauss_sum",
    "twisted_kloosterman",
]


class ImaginaryResidueError(ArithmeticError):
    """A quantity that must be real came out with a non-negligible imaginary part."""


def kloosterman_complex(n: int, q: int, ctx: PrecisionContext):
    if q < 2:
        raise ValueError("Kloosterman sums need q >= 2")
    roots = roots_of_unity(q, ctx)
    return ctx.mp.fsum(roots[(n * c + pow(c, -1, q)) % q] for c in reduced_residues(q))


def kloosterman(n: int, q: int, ctx: PrecisionContext):
    """K(n, q) as a real number; raises if the imaginary part exceeds tolerance."""
    z = kloosterman_complex(n, q, ctx)
    if abs(z.imag) >= ctx.tol:
        raise ImaginaryResidueError(f"K({n},{q}) has imaginary part {z.imag}")
    return +z.real


@lru_cache(maxsize=64)
def _table(q: int, bits: int, tol_override) -> tuple:
    ctx = PrecisionContext(bits, tol_override)
    roots = roots_of_unity(q, ctx)
    units = reduced_residues(q)
    inverses = [pow(c, -1, q) for c in units]
    out = []
    fsum = ctx.mp.fsum
    for n in range(q):
        z = fsum(roots[(n * c + ci) % q] for c, ci in zip(units, inverses))
        if abs(z.imag) >= ctx.tol:
            raise ImaginaryResidueError(f"K({n},{q}) has imaginary part {z.imag}")
        out.append(+z.real)
    return tuple(out)


def kloosterman_table(q: int, ctx: PrecisionContext) -> tuple:
    """``table[n] == K(n, q)`` for n in [0, q), built once per (q, precision)."""
    return _table(q, ctx.bits, ctx.tol_override)


def _grouped_sum(weights: dict, ctx: PrecisionContext):
    """sum_t weights[t] * e(t), converting each distinct angle once."""
    mp = ctx.mp
    terms = [unit_exp(t, ctx) * w for t, w in sorted(weights.items())]
    return mp.mpc(mp.fsum(z.real for z in terms), mp.fsum(z.imag for z in terms))


def gauss_sum(chi: DirichletCharacter, ctx: PrecisionContext):
    """tau(chi) = sum_{a=1}^{q} chi(a) e(a/q)."""
    q = chi.modulus
    counts: dict = defaultdict(int)
    for a in reduced_residues(q):
        t = chi.angle(a) + Fraction(a, q)
        counts[t - (t.numerator // t.denominator)] += 1
    return _grouped_sum(counts, ctx)


def twisted_kloosterman(chi: DirichletCharacter, ctx: PrecisionContext):
    """sum over units a of chi(a) K(a, q); chi must be non-principal."""
    if chi.is_principal():
        raise ValueError("twisted Kloosterman sum is only defined here for non-principal characters")
    q = chi.modulus
    table = kloosterman_table(q, ctx)
    weights: dict = defaultdict(lambda: ctx.mpf(0))
    for a in reduced_residues(q):
        weights[chi.angle(a)] += table[a % q]
    return _grouped_sum(dict(weights), ctx)
