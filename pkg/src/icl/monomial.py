"""Integral closures of monomial ideals via Newton polyhedra.

``x^v`` lies in the closure of ``I^n`` exactly when ``v`` lies in ``n`` times
the Newton polyhedron ``NP(I) = conv(gens) + R_{>=0}^d``.  The polyhedron is
turned into inequalities ``w.u + c >= 0`` by Fourier-Motzkin elimination of
the convex weights; membership is then integer arithmetic.  An exact simplex
decides the same LP directly and is used in high dimension and as a check.

Minimal generators of the closure of ``I^n`` lie in the box
``0 <= v_j <= n * max_g g_j``: if ``v`` is in ``n*NP`` with
``v_j > n * max g_j`` then ``v - e_j`` still dominates the same convex
combination, so ``v`` was not minimal.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import kernels
from .errors import ArityMismatch, ZeroIdeal
from .poly import Ring

__all__ = [
    "MonomialIdeal",
    "default_ring",
    "newton_inequalities",
    "np_membership",
    "simplex_membership",
    "monomial_closure_power",
    "is_monomial_closed",
    "oracle_membership",
    "oracle_closure",
]

FM_MAX_DIM = 4


def default_ring(d: int) -> Ring:
    names = ("x", "y", "z", "w")[:d] if d <= 4 else tuple(f"x{i + 1}" for i in range(d))
    return Ring(names)


class MonomialIdeal:
    """Monomial ideal stored as its minimal antichain of exponent vectors."""

    __slots__ = ("gens", "nvars", "ring", "__dict__")

    def __init__(self, gens: Iterable[Sequence[int]], ring: Ring | None = None, nvars: int | None = None):
        gens = [tuple(int(a) for a in g) for g in gens]
        if ring is not None:
            nvars = ring.nvars
        elif nvars is None:
            if not gens:
                raise ValueError("nvars or ring needed for the zero ideal")
            nvars = len(gens[0])
        for g in gens:
            if len(g) != nvars or min(g, default=0) < 0:
                raise ArityMismatch(f"bad exponent vector {g} for {nvars} variables")
        self.nvars = nvars
        self.ring = ring if ring is not None else default_ring(nvars)
        self.gens = tuple(kernels.antichain_minimize(gens))

    @classmethod
    def from_ideal(cls, I) -> "MonomialIdeal":
        """From an Ideal whose generators are monomials."""
        exps = []
        for g in I.gens:
            if not g.is_monomial():
                raise ValueError(f"{g} is not a monomial")
            exps.append(next(iter(g.terms)))
        return cls(exps, ring=I.ring)

    def to_ideal(self):
        from .groebner import Ideal

        return Ideal(self.ring, [self.ring.monomial(g) for g in self.gens])

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def contains(self, v) -> bool:
        return kernels.dominates_any(tuple(v), self.gens)

    __contains__ = contains

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(kernels.antichain_sum(self.gens, other.gens), ring=self.ring)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.gens + other.gens, ring=self.ring)

    def __pow__(self, n: int) -> "MonomialIdeal":
        acc = [(0,) * self.nvars]
        for _ in range(n):
            acc = kernels.antichain_sum(acc, self.gens)
        return MonomialIdeal(acc, ring=self.ring)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.nvars == other.nvars and self.gens == other.gens

    def __hash__(self):
        return hash((self.nvars, self.gens))

    def __repr__(self):
        return f"MonomialIdeal({list(self.gens)})"

    def __str__(self):
        return str(self.to_ideal())

    @cached_property
    def inequalities(self) -> tuple:
        return newton_inequalities(self)


# ---------------------------------------------------------------------------
# Fourier-Motzkin

def _normalize(row):
    g = 0
    for a in row:
        g = gcd(g, a)
    if g > 1:
        row = tuple(a // g for a in row)
    return row


def _fourier_motzkin(rows, nelim):
    """Eliminate the first ``nelim`` variables from integer rows
    ``(a_1..a_k, c)`` meaning ``sum a_i v_i + c >= 0``.

    Chernikov's rule bounds the history of every surviving row by the
    number of eliminated variables plus one, which discards most
    redundant combinations.
    """
    cur = {}
    for idx, r in enumerate(rows):
        r = _normalize(tuple(r))
        if r not in cur:
            cur[r] = frozenset([idx])
    for s in range(nelim):
        pos, neg, keep = [], [], {}
        for r, h in cur.items():
            a = r[s]
            if a > 0:
                pos.append((r, h))
            elif a < 0:
                neg.append((r, h))
            else:
                keep[r] = h
        limit = s + 2
        for rp, hp in pos:
            for rn, hn in neg:
                h = hp | hn
                if len(h) > limit:
                    continue
                ap, an = rp[s], -rn[s]
                new = _normalize(tuple(an * x + ap * y for x, y in zip(rp, rn)))
                old = keep.get(new)
                if old is None or len(h) < len(old):
                    keep[new] = h
        cur = keep
    return [r[nelim:] for r in cur]


def newton_inequalities(I: MonomialIdeal) -> tuple:
    """Integer pairs ``(w, c)`` with ``NP(I) = {u : w.u + c >= 0 for all}``.

    Every ``w`` is non-negative.  The zero ideal has no polyhedron and
    raises ZeroIdeal.
    """
    if I.is_zero():
        raise ZeroIdeal("the zero ideal has an empty Newton polyhedron")
    gens = I.gens
    m, d = len(gens), I.nvars
    last = gens[-1]
    k = m - 1
    # variables: lambda_1..lambda_k, u_1..u_d ; lambda_m = 1 - sum lambda_i
    rows = []
    for i in range(k):
        r = [0] * (k + d) + [0]
        r[i] = 1
        rows.append(r)
    rows.append([-1] * k + [0] * d + [1])
    for j in range(d):
        r = [-(gens[i][j] - last[j]) for i in range(k)] + [0] * d + [-last[j]]
        r[k + j] = 1
        rows.append(r)
    out = set()
    for r in _fourier_motzkin(rows, k):
        w, c = tuple(r[:d]), r[d]
        if not any(w):
            continue
        if min(w) < 0:
            raise AssertionError("Newton polyhedron inequality with a negative weight")
        out.add((w, c))
    return tuple(sorted(_prune(out, gens)))


def _prune(ineqs, gens):
    """Drop inequalities not tight at any generator (they are implied)."""
    keep = []
    for w, c in ineqs:
        if any(sum(a * b for a, b in zip(w, g)) + c == 0 for g in gens):
            keep.append((w, c))
    return keep


# ---------------------------------------------------------------------------
# exact simplex

def _simplex_feasible(A, b):
    """Is ``{x >= 0 : A x = b}`` nonempty?  ``b >= 0`` required.

    Phase one of the simplex method with Bland's rule over Fractions.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    T = [[Fraction(a) for a in row] + [Fraction(int(i == r)) for r in range(m)] + [Fraction(b[i])]
         for i, row in enumerate(A)]
    basis = [n + i for i in range(m)]
    width = n + m
    obj = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(n):
            obj[j] -= row[j]
        obj[width] -= row[width]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break
        prow = T[leave]
        piv = prow[enter]
        prow[:] = [x / piv for x in prow]
        for i, row in enumerate(T):
            if i != leave and row[enter]:
                f = row[enter]
                row[:] = [x - f * y for x, y in zip(row, prow)]
        f = obj[enter]
        obj[:] = [x - f * y for x, y in zip(obj, prow)]
        basis[leave] = enter
    return obj[width] == 0


def simplex_membership(v, I: MonomialIdeal, n: int = 1) -> bool:
    """Decide ``v in n*NP(I)`` by LP feasibility of
    ``lambda >= 0, sum lambda = n, sum lambda_i g_i <= v``."""
    if I.is_zero():
        return False
    gens = I.gens
    d = I.nvars
    m = len(gens)
    A, b = [], []
    for j in range(d):
        A.append([g[j] for g in gens] + [int(k == j) for k in range(d)])
        b.append(v[j])
    A.append([1] * m + [0] * d)
    b.append(n)
    return _simplex_feasible(A, b)


def np_membership(v, I: MonomialIdeal, n: int = 1, method: str = "auto") -> bool:
    """Is ``x^v`` in the integral closure of ``I^n``?"""
    v = tuple(v)
    if len(v) != I.nvars:
        raise ArityMismatch(f"vector {v} has the wrong length")
    if n < 1:
        raise ValueError("power must be positive")
    if I.is_zero():
        return False
    if method == "simplex" or (method == "auto" and I.nvars > FM_MAX_DIM):
        return simplex_membership(v, I, n)
    return all(sum(a * b for a, b in zip(w, v)) + n * c >= 0 for w, c in I.inequalities)


def monomial_closure_power(I: MonomialIdeal, n: int = 1) -> MonomialIdeal:
    """Minimal generators of the integral closure of ``I^n``."""
    if I.is_zero():
        raise ZeroIdeal("closure of the zero ideal")
    if n < 1:
        raise ValueError("power must be positive")
    if I.is_unit():
        return MonomialIdeal([(0,) * I.nvars], ring=I.ring)
    bounds = tuple(n * max(g[j] for g in I.gens) for j in range(I.nvars))
    if I.nvars > FM_MAX_DIM:
        pts = _box_points(bounds)
        return MonomialIdeal([v for v in pts if simplex_membership(v, I, n)], ring=I.ring)
    return MonomialIdeal(kernels.closure_points(I.inequalities, bounds, n), ring=I.ring)


def _box_points(bounds):
    import itertools

    return itertools.product(*(range(b + 1) for b in bounds))


def is_monomial_closed(I: MonomialIdeal) -> bool:
    if I.is_zero() or I.is_unit():
        return True
    return monomial_closure_power(I, 1) == I


# ---------------------------------------------------------------------------
# brute-force integer oracle

class _PowerTable:
    def __init__(self, I: MonomialIdeal):
        self.I = I
        self.powers = [[(0,) * I.nvars]]

    def get(self, k):
        while len(self.powers) <= k:
            self.powers.append(kernels.antichain_sum(self.powers[-1], self.I.gens))
        return self.powers[k]


def oracle_membership(v, I: MonomialIdeal, n: int = 1, kmax: int = 24, _table=None) -> bool:
    """``exists k <= kmax : k*v in I^(n*k)``, by monomial division only.

    If ``k*v`` works then so does every multiple, so only
    ``k in (kmax//2, kmax]`` needs testing.
    """
    if I.is_zero():
        return False
    table = _table or _PowerTable(I)
    for k in range(kmax // 2 + 1, kmax + 1):
        if kernels.dominates_any(tuple(k * a for a in v), table.get(n * k)):
            return True
    return False


def oracle_closure(I: MonomialIdeal, n: int = 1, kmax: int = 24) -> MonomialIdeal:
    """Closure of ``I^n`` by testing every box point with the integer oracle."""
    if I.is_zero():
        raise ZeroIdeal("closure of the zero ideal")
    if I.is_unit():
        return MonomialIdeal([(0,) * I.nvars], ring=I.ring)
    bounds = tuple(n * max(g[j] for g in I.gens) for j in range(I.nvars))
    table = _PowerTable(I)
    inside = []
    # points dominating a known member are members; test in degree order
    for v in sorted(_box_points(bounds), key=lambda p: (sum(p), p)):
        if kernels.dominates_any(v, inside):
            continue
        if oracle_membership(v, I, n, kmax, table):
            inside.append(v)
    return MonomialIdeal(inside, ring=I.ring)
