"""Factorisation and multiplicative functions on small moduli."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import List, Tuple

__all__ = [
    "NotInvertibleError",
    "Factorization",
    "factorize",
    "is_square_full",
    "euler_phi",
    "moebius",
    "phi_l",
    "mod_inverse",
    "reduced_residues",
    "divisors",
    "divisor_moebius_sum",
    "moebius_product_formula",
    "square_full_upto",
]

Factorization = Tuple[Tuple[int, int], ...]


class NotInvertibleError(ValueError):
    """Raised when a residue has no inverse modulo q."""


def _check_positive(q: int) -> None:
    if q <= 0:
        raise ValueError(f"expected a positive integer, got {q}")


@lru_cache(maxsize=None)
def factorize(q: int) -> Factorization:
    """Prime factorisation as increasing ``(p, e)`` pairs; ``factorize(1) == ()``."""
    _check_positive(q)
    out = []
    n = q
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # 2*3*5 wheel
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    p, i = 7, 0
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += steps[i]
        i = (i + 1) % 8
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_square_full(q: int) -> bool:
    return all(e >= 2 for _, e in factorize(q))


def euler_phi(q: int) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in factorize(q))


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def phi_l(q: int, l: int) -> Fraction:
    """prod over primes p | q of (1 - p^-l); any integer l is allowed."""
    out = Fraction(1)
    for p, _ in factorize(q):
        out *= 1 - Fraction(p) ** (-l)
    return out


def mod_inverse(a: int, q: int) -> int:
    if q < 2:
        raise ValueError("modulus must be >= 2")
    if gcd(a, q) != 1:
        raise NotInvertibleError(f"{a} is not invertible modulo {q}")
    return pow(a, -1, q)


@lru_cache(maxsize=256)
def reduced_residues(q: int) -> tuple:
    _check_positive(q)
    if q == 1:
        return (1,)
    return tuple(a for a in range(1, q + 1) if gcd(a, q) == 1)


@lru_cache(maxsize=256)
def divisors(q: int) -> tuple:
    _check_positive(q)
    divs = [1]
    for p, e in factorize(q):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def divisor_moebius_sum(q: int, l: int, s: int) -> Fraction:
    """sum_{d | q} mu(d) phi(q/d) phi_l(q/d) (q/d)^s, evaluated term by term."""
    total = Fraction(0)
    for d in divisors(q):
        mu = moebius(d)
        if mu == 0:
            continue
        e = q // d
        total += mu * euler_phi(e) * phi_l(e, l) * Fraction(e) ** s
    return total


def moebius_product_formula(q: int, l: int, s: int) -> Fraction:
    """Closed form of :func:`divisor_moebius_sum` valid for square-full q:
    q^(s+1) prod_p (1 - 1/p)(1 - 1/p^l)(1 - 1/p^(s+1))."""
    out = Fraction(q) ** (s + 1)
    for p, _ in factorize(q):
        out *= (1 - Fraction(1, p)) * (1 - Fraction(p) ** (-l)) * (1 - Fraction(p) ** (-(s + 1)))
    return out


def square_full_upto(n: int, start: int = 2) -> List[int]:
    return [q for q in range(max(start, 1), n + 1) if is_square_full(q)]
