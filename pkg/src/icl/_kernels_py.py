"""Pure-Python hot kernels.

This module and the compiled ``_kernels`` extension expose the same
functions with the same semantics; ``icl.kernels`` picks one at import.
Exponent vectors are tuples of non-negative ints.  Polynomials are dicts
mapping exponent tuples to coefficients: ``Fraction`` when ``p == 0``,
ints in ``range(p)`` otherwise.
"""
from heapq import heapify, heappop, heappush

from .errors import BudgetExceeded

IMPLEMENTATION = "python"


def divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def find_divisor(leads, m):
    """Index of the first exponent vector in ``leads`` dividing ``m``, else -1."""
    for i, lm in enumerate(leads):
        for x, y in zip(lm, m):
            if x > y:
                break
        else:
            return i
    return -1


def normal_form(f, leads, polys, heapkey, p, counter, budget):
    """Full reduction of ``f`` by a list of monic polynomials.

    ``heapkey(m)`` must sort ascending in *descending* monomial order.
    ``counter[0]`` is incremented once per reduction step; exceeding
    ``budget`` raises BudgetExceeded.
    """
    f = dict(f)
    heap = [(heapkey(m), m) for m in f]
    heapify(heap)
    rem = {}
    while heap:
        m = heappop(heap)[1]
        c = f.get(m)
        if c is None:
            continue
        i = find_divisor(leads, m)
        del f[m]
        if i < 0:
            rem[m] = c
            continue
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded(f"reduction budget of {budget} steps exhausted")
        lm = leads[i]
        q = tuple(x - y for x, y in zip(m, lm))
        for gm, gc in polys[i].items():
            if gm == lm:
                continue
            mm = tuple(x + y for x, y in zip(gm, q))
            v = f.get(mm)
            if p:
                prod = c * gc % p
                if v is None:
                    f[mm] = p - prod
                    heappush(heap, (heapkey(mm), mm))
                else:
                    nv = (v - prod) % p
                    if nv:
                        f[mm] = nv
                    else:
                        del f[mm]
            else:
                prod = c * gc
                if v is None:
                    f[mm] = -prod
                    heappush(heap, (heapkey(mm), mm))
                else:
                    nv = v - prod
                    if nv:
                        f[mm] = nv
                    else:
                        del f[mm]
    return rem


def antichain_minimize(points):
    """Minimal elements under componentwise <=, deduplicated, sorted ascending."""
    pts = sorted(set(points), key=lambda v: (sum(v), v))
    kept = []
    for v in pts:
        for u in kept:
            for a, b in zip(u, v):
                if a > b:
                    break
            else:
                break
        else:
            kept.append(v)
    kept.sort()
    return kept


def antichain_sum(a, b):
    """Minimal elements of the Minkowski sum of two exponent sets."""
    return antichain_minimize([tuple(x + y for x, y in zip(u, v)) for u in a for v in b])


def dominates_any(v, points):
    """True when some element of ``points`` is componentwise <= ``v``."""
    for u in points:
        for a, b in zip(u, v):
            if a > b:
                break
        else:
            return True
    return False


def _ceil_div(a, b):
    return -((-a) // b)


def closure_points(ineqs, bounds, n):
    """Minimal lattice points ``v`` of the box ``0 <= v <= bounds`` satisfying
    ``sum(w*v) + n*c >= 0`` for every integer inequality ``(w, c)``.

    Every ``w`` must be non-negative.  The sweep fixes all but the last
    coordinate and solves for the least admissible last coordinate.
    """
    d = len(bounds)
    if d == 0:
        return []
    last = d - 1
    cands = []

    def sweep(prefix):
        if len(prefix) == last:
            lo = 0
            for w, c in ineqs:
                s = n * c
                for wi, vi in zip(w, prefix):
                    s += wi * vi
                if w[last] == 0:
                    if s < 0:
                        return
                elif s < 0:
                    need = _ceil_div(-s, w[last])
                    if need > lo:
                        lo = need
            if lo <= bounds[last]:
                cands.append(tuple(prefix) + (lo,))
            return
        for x in range(bounds[len(prefix)] + 1):
            prefix.append(x)
            sweep(prefix)
            prefix.pop()

    sweep([])
    return antichain_minimize(cands)
