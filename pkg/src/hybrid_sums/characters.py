"""Dirichlet characters mod q with exact root-of-unity values.

A character is stored as one exponent per generator of (Z/qZ)*; its value at a
unit a is e(t) for the exact rational angle t returned by :meth:`angle`.
Non-units evaluate to ``None`` (the zero marker).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod
from typing import Dict, Iterator, List, Optional, Tuple

from .arith import divisors, euler_phi, factorize, reduced_residues
from .hp_numeric import PrecisionContext, unit_exp

__all__ = [
    "Component",
    "CharacterGroup",
    "DirichletCharacter",
    "character_group",
    "char_eval",
    "char_parity",
    "conductor",
    "is_primitive",
    "induce",
]


@dataclass(frozen=True)
class Component:
    """One cyclic factor of (Z/qZ)*: a generator of (Z/p^e)* of the given order,
    and the same generator lifted to an integer mod q (1 on the other prime powers)."""

    prime_power: int
    generator: int
    order: int
    lifted: int


def _primitive_root(pe: int, p: int) -> int:
    order = euler_phi(pe)
    primes = [r for r, _ in factorize(order)]
    for g in range(2, pe):
        if g % p and all(pow(g, order // r, pe) != 1 for r in primes):
            return g
    raise AssertionError(f"no primitive root mod {pe}")


def _crt_lift(residue: int, pe: int, q: int) -> int:
    """x mod q with x = residue mod pe and x = 1 mod q/pe."""
    rest = q // pe
    if rest == 1:
        return residue % q
    # x = 1 + rest * k, need 1 + rest*k = residue (mod pe)
    k = ((residue - 1) * pow(rest, -1, pe)) % pe
    return (1 + rest * k) % q


class CharacterGroup:
    """The dual group of (Z/qZ)* with precomputed discrete logarithms."""

    def __init__(self, q: int):
        if q <= 0:
            raise ValueError(f"modulus must be positive, got {q}")
        self.q = q
        self.factorization = factorize(q)
        comps: List[Component] = []
        local_logs: List[Tuple[int, Dict[int, Tuple[int, ...]]]] = []
        for p, e in self.factorization:
            pe = p**e
            if p == 2:
                if e == 1:
                    continue
                gens = [(3, 2)] if e == 2 else [(pe - 1, 2), (5, 2 ** (e - 2))]
            else:
                gens = [(_primitive_root(pe, p), (p - 1) * p ** (e - 1))]
            table: Dict[int, Tuple[int, ...]] = {}
            for exps in product(*(range(o) for _, o in gens)):
                v = 1
                for (g, _), x in zip(gens, exps):
                    v = v * pow(g, x, pe) % pe
                table[v] = exps
            local_logs.append((pe, table))
            comps.extend(Component(pe, g, o, _crt_lift(g, pe, q)) for g, o in gens)
        self.components: Tuple[Component, ...] = tuple(comps)
        self.orders: Tuple[int, ...] = tuple(c.order for c in comps)
        self.order = prod(self.orders)
        assert self.order == euler_phi(q)
        self._logs: Dict[int, Tuple[int, ...]] = {}
        for a in reduced_residues(q):
            exps: Tuple[int, ...] = ()
            for pe, table in local_logs:
                exps += table[a % pe]
            self._logs[a % q] = exps

    def __repr__(self) -> str:
        return f"CharacterGroup(q={self.q}, orders={self.orders})"

    def log(self, a: int) -> Optional[Tuple[int, ...]]:
        """Generator exponents of the unit a, or None if gcd(a, q) > 1."""
        return self._logs.get(a % self.q)

    def character(self, exponents) -> "DirichletCharacter":
        exponents = tuple(int(x) for x in exponents)
        if len(exponents) != len(self.orders):
            raise ValueError("wrong number of exponents")
        if any(not 0 <= x < o for x, o in zip(exponents, self.orders)):
            raise ValueError("exponent out of range")
        return DirichletCharacter(self, exponents)

    def principal(self) -> "DirichletCharacter":
        return DirichletCharacter(self, (0,) * len(self.orders))

    def __iter__(self) -> Iterator["DirichletCharacter"]:
        for exps in product(*(range(o) for o in self.orders)):
            yield DirichletCharacter(self, exps)

    def __len__(self) -> int:
        return self.order

    def by_index(self, index: int) -> "DirichletCharacter":
        if not 0 <= index < self.order:
            raise IndexError(f"character index {index} out of range for q={self.q}")
        exps = []
        for o in reversed(self.orders):
            index, r = divmod(index, o)
            exps.append(r)
        return DirichletCharacter(self, tuple(reversed(exps)))

    def odd_characters(self, primitive_only: bool = False) -> List["DirichletCharacter"]:
        return [c for c in self if c.is_odd() and (not primitive_only or c.is_primitive())]


@lru_cache(maxsize=128)
def character_group(q: int) -> CharacterGroup:
    return CharacterGroup(q)


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    group: CharacterGroup
    exponents: Tuple[int, ...]

    def __eq__(self, other):
        return (
            isinstance(other, DirichletCharacter)
            and self.group.q == other.group.q
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.group.q, self.exponents))

    def __repr__(self) -> str:
        return f"DirichletCharacter(q={self.modulus}, exponents={self.exponents})"

    @property
    def modulus(self) -> int:
        return self.group.q

    @property
    def index(self) -> int:
        """Position in lexicographic order of exponent tuples."""
        idx = 0
        for x, o in zip(self.exponents, self.group.orders):
            idx = idx * o + x
        return idx

    def angle(self, a: int) -> Optional[Fraction]:
        logs = self.group.log(a)
        if logs is None:
            return None
        t = sum(
            (Fraction(x * k, o) for x, k, o in zip(logs, self.exponents, self.group.orders)),
            Fraction(0),
        )
        return t - (t.numerator // t.denominator)

    def value(self, a: int, ctx: PrecisionContext):
        t = self.angle(a)
        if t is None:
            return ctx.mpc(0, 0)
        return unit_exp(t, ctx)

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(
            self.group, tuple((-x) % o for x, o in zip(self.exponents, self.group.orders))
        )

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise ValueError("characters have different moduli")
        return DirichletCharacter(
            self.group,
            tuple((x + y) % o for x, y, o in zip(self.exponents, other.exponents, self.group.orders)),
        )

    def is_principal(self) -> bool:
        return not any(self.exponents)

    def is_odd(self) -> bool:
        return self.angle(self.modulus - 1) == Fraction(1, 2)

    def parity(self) -> str:
        return "odd" if self.is_odd() else "even"

    def conductor(self) -> int:
        q = self.modulus
        units = reduced_residues(q)
        for f in divisors(q):
            # induced from mod f  <=>  trivial on units congruent to 1 mod f
            if all(self.angle(a) == 0 for a in units if a % f == 1 % f):
                return f
        return q

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    def values(self) -> Tuple[Optional[Fraction], ...]:
        return tuple(self.angle(a) for a in range(self.modulus))

    def to_json(self) -> dict:
        return {"q": self.modulus, "exponents": list(self.exponents), "index": self.index}


def char_eval(chi: DirichletCharacter, a: int) -> Optional[Fraction]:
    return chi.angle(a)


def char_parity(chi: DirichletCharacter) -> str:
    return chi.parity()


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor()


def is_primitive(chi: DirichletCharacter) -> bool:
    return chi.is_primitive()


def induce(chi: DirichletCharacter, q: int) -> DirichletCharacter:
    """The character mod q agreeing with chi on units of q."""
    d = chi.modulus
    if q % d:
        raise ValueError(f"cannot induce from modulus {d} to {q}: {d} does not divide {q}")
    group = character_group(q)
    exps = []
    for comp in group.components:
        t = chi.angle(comp.lifted)
        assert t is not None
        k = t * comp.order
        assert k.denominator == 1
        exps.append(int(k) % comp.order)
    return DirichletCharacter(group, tuple(exps))
