"""Buchberger Groebner bases and the ideal arithmetic built on them.

Submodules of free modules use the same engine: a vector with entries in
a ring of ``n`` variables is encoded as a polynomial whose exponent tuples
carry a one-hot position block of length ``npos`` in front of the ring
exponents, ordered position-over-term.  S-pairs are only formed between
elements with the same leading position.
"""
from __future__ import annotations

import contextlib
import itertools
from collections import OrderedDict
from typing import Iterable, Sequence

from . import kernels
from .errors import (
    NotMPrimary,
    NotZeroDimensional,
    OrderMismatch,
    RingMismatch,
    UnitIdeal,
)
from .poly import GREVLEX, MonomialOrder, Polynomial, Ring, exact_divide

__all__ = [
    "Ideal",
    "groebner_basis",
    "normal_form",
    "ideal_member",
    "ideal_intersect",
    "ideal_quotient",
    "eliminate",
    "krull_dim",
    "colength_0dim",
    "ideal_combine",
    "ideal_equal",
    "saturate",
    "origin_component",
    "syzygies",
    "module_groebner",
    "module_member",
    "module_colength",
    "reduction_budget",
    "set_basis_store",
    "is_reduced_basis",
]

DEFAULT_BUDGET = 10**6
_budget = [DEFAULT_BUDGET]


@contextlib.contextmanager
def reduction_budget(steps: int):
    """Temporarily change the per-computation reduction step budget."""
    old = _budget[0]
    _budget[0] = steps
    try:
        yield
    finally:
        _budget[0] = old


# ---------------------------------------------------------------------------
# raw engine on dict polynomials

def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _monic(f, lm, p):
    c = f[lm]
    if c == 1:
        return f
    if p:
        inv = pow(c, -1, p)
        return {m: v * inv % p for m, v in f.items()}
    return {m: v / c for m, v in f.items()}


def _shift_sub(f, qf, g, qg, p):
    """f*x^qf - g*x^qg for monic f, g."""
    out = {}
    for m, c in f.items():
        out[tuple(a + b for a, b in zip(m, qf))] = c
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, qg))
        v = out.get(mm)
        if v is None:
            out[mm] = (p - c) % p if p else -c
        else:
            nv = (v - c) % p if p else v - c
            if nv:
                out[mm] = nv
            else:
                del out[mm]
    return out


_CACHE: OrderedDict = OrderedDict()
_CACHE_SIZE = 4096
_STORE = [None]


def set_basis_store(store):
    """Install a persistent basis store (``load``/``save`` methods) or None.

    Returns the previous store."""
    old = _STORE[0]
    _STORE[0] = store
    return old


def _cache_key(polys, order, p, npos):
    return (p, npos, order, frozenset(frozenset(f.items()) for f in polys))


def _buchberger(polys, order: MonomialOrder, p: int, npos: int = 0, budget=None):
    """Reduced monic Groebner basis of dict polynomials, sorted descending.

    Pair selection is by sugar, then by the lcm in the monomial order, then
    by creation index, so the result is deterministic.
    """
    polys = [f for f in polys if f]
    ck = _cache_key(polys, order, p, npos)
    hit = _CACHE.get(ck)
    if hit is not None:
        _CACHE.move_to_end(ck)
        return hit
    store = _STORE[0]
    result = store.load(polys, order, p, npos) if store is not None else None
    if result is None:
        result = _compute_basis(polys, order, p, npos, budget)
        if store is not None:
            store.save(polys, order, p, npos, result)
    _CACHE[ck] = result
    if len(_CACHE) > _CACHE_SIZE:
        _CACHE.popitem(last=False)
    return result


def _compute_basis(polys, order, p, npos, budget):
    key = order.key(npos)
    hk = order.heapkey(npos)
    budget = _budget[0] if budget is None else budget
    counter = [0]

    def deg(m):
        return sum(m[npos:])

    def coprime(a, b):
        for x, y in zip(a[npos:], b[npos:]):
            if x and y:
                return False
        return True

    polyl: list = []
    leads: list = []
    sugar: list = []
    active: list = []
    pairs: dict = {}
    seq = itertools.count()

    def nf(f):
        return kernels.normal_form(
            f, [leads[i] for i in active], [polyl[i] for i in active], hk, p, counter, budget
        )

    def add(h, s):
        lh = max(h, key=key)
        h = _monic(h, lh, p)
        idx = len(polyl)
        polyl.append(h)
        leads.append(lh)
        sugar.append(s)
        pos = lh[:npos]
        cands = [g for g in active if leads[g][:npos] == pos]
        new = [(g, _lcm(leads[g], lh)) for g in cands]
        kept = []
        for g, l in new:
            if any(l2 != l and kernels.divides(l2, l) for _, l2 in new):
                continue
            kept.append((g, l))
        groups: dict = {}
        for g, l in kept:
            groups.setdefault(l, []).append(g)
        for (i, j), (s_, l, _) in list(pairs.items()):
            if (
                kernels.divides(lh, l)
                and _lcm(leads[i], lh) != l
                and _lcm(leads[j], lh) != l
            ):
                del pairs[(i, j)]
        for l, gs in groups.items():
            if npos == 0 and any(coprime(leads[g], lh) for g in gs):
                continue
            g = min(gs)
            d = deg(l)
            ps = max(sugar[g] + d - deg(leads[g]), s + d - deg(lh))
            pairs[(g, idx)] = (ps, l, next(seq))
        active[:] = [g for g in active if not kernels.divides(lh, leads[g])]
        active.append(idx)

    work = []
    for f in polys:
        lm = max(f, key=key)
        work.append((key(lm), _monic(f, lm, p), max(deg(m) for m in f)))
    work.sort(key=lambda t: t[0])
    for _, f, s in work:
        h = nf(f)
        if h:
            add(h, s)

    while pairs:
        (i, j), (s, l, _) = min(pairs.items(), key=lambda kv: (kv[1][0], key(kv[1][1]), kv[1][2]))
        del pairs[(i, j)]
        qi = tuple(a - b for a, b in zip(l, leads[i]))
        qj = tuple(a - b for a, b in zip(l, leads[j]))
        sp = _shift_sub(polyl[i], qi, polyl[j], qj, p)
        if not sp:
            continue
        h = nf(sp)
        if h:
            add(h, s)

    basis_leads = [leads[i] for i in active]
    basis = [polyl[i] for i in active]
    out = []
    for k, (lm, g) in enumerate(zip(basis_leads, basis)):
        tail = dict(g)
        c = tail.pop(lm)
        others_l = basis_leads[:k] + basis_leads[k + 1:]
        others_p = basis[:k] + basis[k + 1:]
        red = kernels.normal_form(tail, others_l, others_p, hk, p, counter, budget)
        red[lm] = c
        out.append((lm, red))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return [g for _, g in out]


def _reduce_raw(f, basis, order, p, npos=0):
    key = order.key(npos)
    leads = [max(g, key=key) for g in basis]
    counter = [0]
    return kernels.normal_form(f, leads, basis, order.heapkey(npos), p, counter, _budget[0])


def is_reduced_basis(polys, basis, order: MonomialOrder, p: int, npos: int = 0) -> bool:
    """Check that ``basis`` is a reduced monic Groebner basis containing
    every element of ``polys`` in its span (Buchberger's S-pair test)."""
    key = order.key(npos)
    leads = []
    for g in basis:
        if not g:
            return False
        lm = max(g, key=key)
        if g[lm] != 1:
            return False
        leads.append(lm)
    if [key(l) for l in leads] != sorted((key(l) for l in leads), reverse=True):
        return False
    for k, g in enumerate(basis):
        others = leads[:k] + leads[k + 1:]
        for m in g:
            if any(kernels.divides(l, m) for l in others):
                return False
    for f in polys:
        if f and _reduce_raw(f, basis, order, p, npos):
            return False
    for i, j in itertools.combinations(range(len(basis)), 2):
        if leads[i][:npos] != leads[j][:npos]:
            continue
        l = _lcm(leads[i], leads[j])
        qi = tuple(a - b for a, b in zip(l, leads[i]))
        qj = tuple(a - b for a, b in zip(l, leads[j]))
        sp = _shift_sub(basis[i], qi, basis[j], qj, p)
        if sp and _reduce_raw(sp, basis, order, p, npos):
            return False
    return True


# ---------------------------------------------------------------------------
# ideals

class Ideal:
    """An ideal of a polynomial ring given by generators.

    Reduced Groebner bases are cached per monomial order; the object is
    otherwise immutable.
    """

    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring: Ring, generators: Iterable = ()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g)
            if g:
                gens.append(g)
        self.gens = tuple(gens)
        self._gb: dict = {}

    @classmethod
    def parse(cls, ring: Ring, text: str) -> "Ideal":
        """Comma separated generators, e.g. ``"x^2, x*y, y^2"``."""
        parts = _split_top_level(text)
        return cls(ring, [ring.parse(t) for t in parts if t.strip()])

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: Ring) -> "Ideal":
        """The ideal generated by all variables."""
        return cls(ring, ring.gens())

    def groebner(self, order: MonomialOrder | None = None) -> tuple:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            raw = _buchberger([g.terms for g in self.gens], order, self.ring.characteristic)
            gb = tuple(Polynomial(self.ring, f, clean=False) for f in raw)
            self._gb[order] = gb
        return gb

    def normal_form(self, f, order: MonomialOrder | None = None) -> Polynomial:
        order = order or self.ring.order
        f = self.ring(f)
        basis = [g.terms for g in self.groebner(order)]
        return Polynomial(self.ring, _reduce_raw(f.terms, basis, order, self.ring.characteristic), clean=False)

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.groebner())

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def leading_monomials(self, order: MonomialOrder | None = None) -> list:
        order = order or self.ring.order
        return [g.lead_monomial(order) for g in self.groebner(order)]

    def minimal_generators(self) -> "Ideal":
        """Drop generators lying in the ideal of the others (greedy, in order)."""
        gens = list(self.gens)
        i = 0
        while i < len(gens):
            rest = gens[:i] + gens[i + 1:]
            if rest and Ideal(self.ring, rest).contains(gens[i]):
                gens = rest
            else:
                i += 1
        return Ideal(self.ring, gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash((self.ring, frozenset(self.groebner())))

    def __add__(self, other):
        return ideal_combine(self, other, "sum")

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.gens])
        return ideal_combine(self, other, "product")

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return ideal_combine(self, None, ("power", n))

    def map(self, fn, ring: Ring | None = None) -> "Ideal":
        return Ideal(ring or self.ring, [fn(g) for g in self.gens])

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")" if self.gens else "(0)"

    def __repr__(self):
        return f"Ideal({str(self)!r}, ring={str(self.ring)!r})"

    def to_strings(self, reduced: bool = True) -> list[str]:
        gens = self.groebner() if reduced else self.gens
        return [str(g) for g in gens]


def _split_top_level(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _same_ring(I, J):
    if I.ring != J.ring:
        raise RingMismatch(f"ideals live in {I.ring} and {J.ring}")


def groebner_basis(I: Ideal, order: MonomialOrder | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of ``I`` (monic, sorted by descending leading term)."""
    return list(I.groebner(order))


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder | None = None) -> Polynomial:
    return I.normal_form(f, order)


def ideal_member(f, I: Ideal) -> bool:
    return I.contains(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return I.groebner() == J.groebner()


def ideal_combine(I: Ideal, J: Ideal | None, op) -> Ideal:
    """``"sum"``, ``"product"`` or ``("power", n)``; generator-level combination."""
    if op == "sum":
        _same_ring(I, J)
        return Ideal(I.ring, I.gens + J.gens)
    if op == "product":
        _same_ring(I, J)
        return Ideal(I.ring, _dedupe(f * g for f in I.gens for g in J.gens))
    if isinstance(op, tuple) and op[0] == "power":
        n = op[1]
        if n < 0:
            raise ValueError("ideal powers need n >= 0")
        result = Ideal.unit(I.ring)
        for _ in range(n):
            result = Ideal(I.ring, _dedupe(f * g for f in result.groebner() for g in I.gens))
        return result
    raise ValueError(f"unknown ideal operation {op!r}")


def _dedupe(polys):
    seen, out = set(), []
    for f in polys:
        if f and f not in seen:
            seen.add(f)
            out.append(f)
    return out


def _monomial_lcm_intersection(I, J):
    ring = I.ring
    gens = kernels.antichain_minimize(
        [_lcm(next(iter(f.terms)), next(iter(g.terms))) for f in I.gens for g in J.gens]
    )
    return Ideal(ring, [ring.monomial(m) for m in gens])


def ideal_intersect(I: Ideal, J: Ideal, method: str = "auto") -> Ideal:
    """I ∩ J by eliminating ``t`` from ``t*I + (1-t)*J``.

    Monomial inputs take the lcm shortcut unless ``method="elimination"``.
    """
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    if method == "auto" and I.is_monomial() and J.is_monomial():
        return _monomial_lcm_intersection(I, J)
    t = ring.fresh_name("t")
    big = Ring((t,) + ring.variables, ring.field, MonomialOrder("block", 1))
    pos = range(1, ring.nvars + 1)
    tv = big.gen(t)
    gens = [tv * f.embed(big, pos) for f in I.gens]
    gens += [(1 - tv) * g.embed(big, pos) for g in J.gens]
    gb = Ideal(big, gens).groebner()
    keep = [g for g in gb if not any(m[0] for m in g.terms)]
    return Ideal(ring, [Polynomial(ring, {m[1:]: c for m, c in g.terms.items()}, clean=False) for g in keep])


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    it = iter(ideals)
    acc = next(it)
    for J in it:
        acc = ideal_intersect(acc, J)
    return acc


def _quotient_by_element(I: Ideal, g: Polynomial) -> Ideal:
    ring = I.ring
    if I.is_monomial() and g.is_monomial():
        (gm,) = g.terms
        return Ideal(ring, [ring.monomial(tuple(max(a - b, 0) for a, b in zip(m, gm)))
                            for f in I.gens for m in f.terms])
    inter = ideal_intersect(I, Ideal(ring, [g]))
    return Ideal(ring, [exact_divide(h, g) for h in inter.groebner()])


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """The colon ideal I : J = {f : f*J ⊆ I}."""
    _same_ring(I, J)
    if J.is_zero():
        return Ideal.unit(I.ring)
    return intersect_all([_quotient_by_element(I, g) for g in J.gens])


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^∞ by iterated quotients."""
    cur = I
    while True:
        nxt = ideal_quotient(cur, J)
        if ideal_equal(nxt, cur):
            return cur
        cur = nxt


def eliminate(I: Ideal, drop_vars: Iterable[str], order: MonomialOrder | None = None) -> Ideal:
    """I ∩ k[remaining variables], returned in the subring.

    The dropped variables are moved to the front of a block order; an
    explicit ``order`` must eliminate them or OrderMismatch is raised.
    """
    ring = I.ring
    drop = [v for v in ring.variables if v in set(drop_vars)]
    unknown = set(drop_vars) - set(ring.variables)
    if unknown:
        raise OrderMismatch(f"cannot eliminate unknown variables {sorted(unknown)}")
    keep = [v for v in ring.variables if v not in drop]
    k = len(drop)
    order = order or MonomialOrder("block", k)
    if not order.eliminates(k):
        raise OrderMismatch(f"order {order} does not eliminate the first {k} variables")
    big = Ring(tuple(drop) + tuple(keep), ring.field, order)
    perm = [big.variables.index(v) for v in ring.variables]
    gb = Ideal(big, [g.embed(big, perm) for g in I.gens]).groebner()
    sub = Ring(tuple(keep), ring.field, ring.order) if keep else None
    out = []
    for g in gb:
        if any(any(m[:k]) for m in g.terms):
            continue
        out.append({m[k:]: c for m, c in g.terms.items()})
    if sub is None:
        raise OrderMismatch("cannot eliminate every variable")
    return Ideal(sub, [Polynomial(sub, f, clean=False) for f in out])


def _independent_dim(leads, n):
    if not leads:
        return n
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            Sset = set(S)
            if all(any(e and i not in Sset for i, e in enumerate(m)) for m in leads):
                return size
    return 0


def krull_dim(I: Ideal) -> int:
    """dim R/I via maximal independent sets modulo the leading-term ideal."""
    if I.is_unit():
        raise UnitIdeal("the unit ideal has no dimension")
    return _independent_dim(I.leading_monomials(GREVLEX), I.ring.nvars)


def _count_standard(leads, n):
    """Number of monomials in n variables divisible by no element of ``leads``
    (assumed finite)."""
    if n == 0:
        return 0 if any(True for _ in leads) else 1
    if any(not any(m) for m in leads):
        return 0
    # bound on the last variable from its pure power
    bound = min(m[-1] for m in leads if not any(m[:-1]))
    total = 0
    for e in range(bound):
        sub = [m[:-1] for m in leads if m[-1] <= e]
        total += _count_standard(kernels.antichain_minimize(sub), n - 1)
    return total


def colength_0dim(I: Ideal, order: MonomialOrder | None = None) -> int:
    """λ(R/I): the number of standard monomials of a zero-dimensional ideal.

    Any monomial order gives the same count; grevlex is the default."""
    if I.is_unit():
        return 0
    leads = I.leading_monomials(order or GREVLEX)
    if _independent_dim(leads, I.ring.nvars) != 0:
        raise NotZeroDimensional(f"{I} is not zero-dimensional")
    return _count_standard(leads, I.ring.nvars)


def is_origin_primary(I: Ideal) -> bool:
    """True when √I is the ideal of all variables (I ≠ R)."""
    if I.is_unit() or I.is_zero():
        return False
    leads = I.leading_monomials(GREVLEX)
    if _independent_dim(leads, I.ring.nvars) != 0:
        return False
    lam = _count_standard(leads, I.ring.nvars)
    return all(I.contains(v**lam) for v in I.ring.gens())


def origin_component(I: Ideal) -> Ideal:
    """The primary component of I at the origin, or the unit ideal when the
    origin is not on V(I).  The origin must be an isolated point of V(I).

    For zero-dimensional I the component is ``I + 𝔪^N`` for the first N with
    ``λ(R/(I + 𝔪^N)) = λ(R/(I + 𝔪^(N+1)))``: equality forces ``𝔪^N`` into
    the component by Nakayama."""
    ring = I.ring
    if I.is_unit() or any(g.constant_coefficient() != 0 for g in I.gens):
        return Ideal.unit(ring)
    m = Ideal.maximal(ring)
    leads = I.leading_monomials(GREVLEX)
    if _independent_dim(leads, ring.nvars) == 0:
        lam = _count_standard(leads, ring.nvars)
        if all(I.contains(v**lam) for v in ring.gens()):
            return Ideal(ring, I.groebner())
        n = 1
        while True:
            lo = I + m**n
            if colength_0dim(lo) == colength_0dim(I + m ** (n + 1)):
                return Ideal(ring, lo.groebner())
            n *= 2
    comp = ideal_quotient(I, saturate(I, m))
    if not is_origin_primary(comp):
        raise NotMPrimary("the origin is not an isolated point of V(I)")
    return Ideal(ring, comp.groebner())


# ---------------------------------------------------------------------------
# submodules of free modules

def _encode(vector, npos, n):
    out = {}
    for i, f in enumerate(vector):
        pos = (0,) * i + (1,) + (0,) * (npos - i - 1)
        for m, c in f.terms.items():
            out[pos + m] = c
    return out


def _decode(f, ring, npos):
    comps = [dict() for _ in range(npos)]
    for m, c in f.items():
        i = m[:npos].index(1)
        comps[i][m[npos:]] = c
    return tuple(Polynomial(ring, d, clean=False) for d in comps)


def module_groebner(vectors: Sequence[Sequence[Polynomial]], ring: Ring, rank: int,
                    order: MonomialOrder | None = None) -> list[tuple]:
    """Reduced Groebner basis (position over term) of the submodule of R^rank
    spanned by ``vectors``."""
    order = order or ring.order
    enc = [_encode(v, rank, ring.nvars) for v in vectors]
    raw = _buchberger(enc, order, ring.characteristic, npos=rank)
    return [_decode(f, ring, rank) for f in raw]


def module_member(v: Sequence[Polynomial], vectors, ring: Ring, rank: int) -> bool:
    order = ring.order
    raw = _buchberger([_encode(u, rank, ring.nvars) for u in vectors], order, ring.characteristic, npos=rank)
    rem = _reduce_raw(_encode(v, rank, ring.nvars), raw, order, ring.characteristic, npos=rank)
    return not rem


def syzygies(columns: Sequence[Sequence[Polynomial]], ring: Ring) -> list[tuple]:
    """Generators of the relations among ``columns`` (vectors of length e).

    Computed from the basis of the module spanned by ``(col_i, unit_i)``
    in R^(e+n), keeping elements with zero in the first e slots.
    """
    n = len(columns)
    if n == 0:
        return []
    e = len(columns[0])
    zero = ring.zero()
    aug = []
    for i, col in enumerate(columns):
        unit = [zero] * n
        unit[i] = ring.one()
        aug.append(tuple(col) + tuple(unit))
    raw = _buchberger([_encode(v, e + n, ring.nvars) for v in aug], ring.order, ring.characteristic, npos=e + n)
    out = []
    for f in raw:
        lead_pos = max(f, key=ring.order.key(e + n))[: e + n].index(1)
        if lead_pos >= e:
            out.append(_decode(f, ring, e + n)[e:])
    return out


def module_colength(vectors, ring: Ring, rank: int) -> int:
    """λ(R^rank / M) for a submodule of finite colength."""
    gb = _buchberger([_encode(v, rank, ring.nvars) for v in vectors], ring.order, ring.characteristic, npos=rank)
    key = ring.order.key(rank)
    per_pos: list[list] = [[] for _ in range(rank)]
    for f in gb:
        lm = max(f, key=key)
        per_pos[lm[:rank].index(1)].append(lm[rank:])
    total = 0
    for leads in per_pos:
        if _independent_dim(leads, ring.nvars) != 0:
            raise NotZeroDimensional("quotient module does not have finite length")
        total += _count_standard(kernels.antichain_minimize(leads), ring.nvars)
    return total
