"""Rees algebra presentations, reductions and integral dependence.

Integral dependence is decided through reductions: ``f`` is integral
over ``I`` iff ``I`` is a reduction of ``I + (f)``, i.e. iff
``f^(n+1) ∈ I·(I, f)^n`` for some ``n``.  A search bounded by ``cap``
can only certify, so negative answers are reported as ``UnknownUpTo``.
All tests accept an optional ``modulus`` ideal ``K`` and then work in
``R/K`` (used for quotients by a generic element).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import NotMPrimary, NotSubideal, NotZeroDimensional, ZeroIdeal
from .groebner import (
    Ideal,
    colength_0dim,
    eliminate,
    ideal_combine,
    is_origin_primary,
    origin_component,
)
from .poly import Polynomial, Ring

__all__ = [
    "Yes",
    "NoUpTo",
    "Integral",
    "UnknownUpTo",
    "GenericExtension",
    "rees_presentation",
    "is_reduction",
    "is_integral_element",
    "multiplicity_2d",
    "local_colength",
    "generic_element",
    "DEFAULT_CAP",
    "DEFAULT_Z_BOUND",
]

DEFAULT_CAP = 6
DEFAULT_Z_BOUND = 10**4


@dataclass(frozen=True)
class Yes:
    n: int

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NoUpTo:
    cap: int

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Integral:
    n: int

    def __bool__(self):
        return True


@dataclass(frozen=True)
class UnknownUpTo:
    cap: int

    def __bool__(self):
        return False


def rees_presentation(I: Ideal) -> Ideal:
    """Kernel of ``R[T_1..T_n] -> R[It]``, ``T_i -> a_i t``."""
    ring = I.ring
    if I.is_zero():
        raise ZeroIdeal("Rees algebra of the zero ideal")
    n = len(I.gens)
    tnames = ring.fresh_names("T", n)
    t = Ring(ring.variables + tuple(tnames)).fresh_name("t")
    big = Ring(ring.variables + tuple(tnames) + (t,), ring.field)
    pos = range(ring.nvars)
    tv = big.gen(t)
    rel = [big.gen(T) - a.embed(big, pos) * tv for T, a in zip(tnames, I.gens)]
    kernel = eliminate(Ideal(big, rel), [t])
    return kernel


def _add_modulus(J: Ideal, K: Ideal | None) -> Ideal:
    return J if K is None else Ideal(J.ring, J.gens + K.gens)


def is_reduction(U: Ideal, I: Ideal, cap: int = DEFAULT_CAP, modulus: Ideal | None = None):
    """``Yes(n)`` for the least ``n <= cap`` with ``I^(n+1) = U·I^n`` (mod K),
    else ``NoUpTo(cap)``.  ``U ⊆ I`` is required."""
    if not _add_modulus(I, modulus).contains_ideal(U):
        raise NotSubideal("U is not contained in I")
    power = Ideal.unit(I.ring)  # I^n
    for n in range(cap + 1):
        nxt = ideal_combine(power, I, "product")
        target = _add_modulus(ideal_combine(U, power, "product"), modulus)
        if target.contains_ideal(nxt):
            return Yes(n)
        power = Ideal(I.ring, nxt.groebner())
    return NoUpTo(cap)


def is_integral_element(f: Polynomial, I: Ideal, cap: int = DEFAULT_CAP, modulus: Ideal | None = None):
    """Certificate search for ``f`` integral over ``I`` (mod K).

    ``Integral(n)`` means ``f^(n+1) ∈ I·(I, f)^n``; ``UnknownUpTo`` is not
    a disproof."""
    f = I.ring(f)
    base = _add_modulus(I, modulus)
    if base.contains(f):
        return Integral(0)
    J = Ideal(I.ring, I.gens + (f,))
    # I(I,f)^n ⊇ I^(n+1) already, so only f^(n+1) needs checking
    power = Ideal.unit(I.ring)  # (I,f)^n
    fp = f
    for n in range(cap + 1):
        if n:
            fp = fp * f
            power = Ideal(I.ring, ideal_combine(power, J, "product").groebner())
            if _add_modulus(ideal_combine(I, power, "product"), modulus).contains(fp):
                return Integral(n)
    return UnknownUpTo(cap)


def local_colength(J: Ideal) -> int:
    """Length of ``R/J`` localized at the origin (J zero-dimensional there)."""
    return colength_0dim(origin_component(J))


def _random_combination(I: Ideal, rng: random.Random, bound: int) -> Polynomial:
    ring = I.ring
    while True:
        g = ring.zero()
        for a in I.gens:
            g = g + a.scale(ring.field(rng.randint(-bound, bound)))
        if g:
            return g


def multiplicity_2d(I: Ideal, trials: int = 3, seed: int = 0, bound: int = DEFAULT_Z_BOUND) -> int:
    """Hilbert-Samuel multiplicity of an 𝔪-primary ideal of k[x,y]: the
    minimum over random pairs of general combinations of the local colength
    of the pair."""
    if I.ring.nvars != 2:
        raise NotMPrimary("multiplicity_2d needs a ring in two variables")
    if not is_origin_primary(I):
        raise NotMPrimary(f"{I} is not primary to the origin")
    rng = random.Random(seed)
    best = None
    for _ in range(trials):
        g1 = _random_combination(I, rng, bound)
        g2 = _random_combination(I, rng, bound)
        J = Ideal(I.ring, [g1, g2])
        try:
            e = local_colength(J)
        except (NotMPrimary, NotZeroDimensional):  # common factor: not a parameter pair
            continue
        if best is None or e < best:
            best = e
    if best is None:
        raise NotMPrimary("no random pair formed a system of parameters")
    return best


@dataclass
class GenericExtension:
    """A generic element ``x = sum z_i a_i`` of an ideal.

    In symbolic mode the ``z_i`` are fresh variables of ``ring``; in random
    mode they are integers drawn from ``[-bound, bound]`` with ``seed`` and
    ``ring`` is the base ring.
    """

    base_ring: Ring
    z_count: int
    mode: str
    seed: int | None
    bound: int
    ring: Ring
    element: Polynomial
    z_names: tuple = ()
    z_values: tuple = ()
    generators: tuple = field(default=(), repr=False)

    def lift(self, f: Polynomial) -> Polynomial:
        """Image of a base-ring polynomial in ``ring``."""
        if self.ring is self.base_ring:
            return f
        return f.embed(self.ring, range(self.base_ring.nvars))

    def lift_ideal(self, I: Ideal) -> Ideal:
        return Ideal(self.ring, [self.lift(g) for g in I.gens])

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "seed": self.seed,
            "bound": self.bound,
            "z_names": list(self.z_names),
            "z_values": [str(v) for v in self.z_values],
            "element": str(self.element),
        }


def generic_element(I: Ideal, mode: str = "random", seed: int = 0, bound: int = DEFAULT_Z_BOUND,
                    values=None) -> GenericExtension:
    """Build ``x = sum z_i a_i`` over the generators of ``I``.

    ``values`` overrides the random draw (recorded as given)."""
    if I.is_zero():
        raise ZeroIdeal("generic element of the zero ideal")
    ring = I.ring
    n = len(I.gens)
    if mode == "symbolic":
        names = tuple(ring.fresh_names("z", n))
        big = Ring(ring.variables + names, ring.field, ring.order)
        pos = range(ring.nvars)
        x = big.zero()
        for zname, a in zip(names, I.gens):
            x = x + big.gen(zname) * a.embed(big, pos)
        return GenericExtension(ring, n, mode, None, bound, big, x, z_names=names, generators=I.gens)
    if mode != "random":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    while True:
        if values is not None:
            vals = tuple(ring.field(v) for v in values)
        else:
            vals = tuple(ring.field(rng.randint(-bound, bound)) for _ in range(n))
        x = ring.zero()
        for c, a in zip(vals, I.gens):
            x = x + a.scale(c)
        if x:
            return GenericExtension(ring, n, mode, seed, bound, ring, x, z_values=vals, generators=I.gens)
        if values is not None:
            raise ZeroIdeal("the given specialization makes the element zero")
