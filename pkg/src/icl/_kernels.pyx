# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same functions and results as ``_kernels_py``.

Exponent comparisons run over C arrays of longs.  Coefficients stay
Python objects (Fraction or int), so arithmetic is exact either way.
"""
from heapq import heapify, heappop, heappush

from libc.stdlib cimport free, malloc

from .errors import BudgetExceeded

IMPLEMENTATION = "cython"


cdef inline bint _le(long *a, long *b, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t k
    for k in range(n):
        if a[k] > b[k]:
            return False
    return True


cdef long *_pack(seq, Py_ssize_t count, Py_ssize_t n) except NULL:
    """Copy ``count`` exponent tuples of length ``n`` into one C block."""
    cdef long *buf = <long *>malloc((count * n + 1) * sizeof(long))
    cdef Py_ssize_t i, k
    if buf == NULL:
        raise MemoryError()
    i = 0
    for v in seq:
        for k in range(n):
            buf[i * n + k] = v[k]
        i += 1
    return buf


def divides(tuple a, tuple b):
    cdef Py_ssize_t k, n = min(len(a), len(b))
    for k in range(n):
        if <long>a[k] > <long>b[k]:
            return False
    return True


def find_divisor(list leads, tuple m):
    """Index of the first exponent vector in ``leads`` dividing ``m``, else -1."""
    cdef Py_ssize_t count = len(leads)
    if count == 0:
        return -1
    cdef Py_ssize_t n = len(m), i
    cdef long *L = _pack(leads, count, n)
    cdef long *M = _pack((m,), 1, n)
    try:
        for i in range(count):
            if _le(L + i * n, M, n):
                return i
        return -1
    finally:
        free(L)
        free(M)


def normal_form(f, list leads, list polys, heapkey, long p, list counter, long budget):
    """Full reduction of ``f`` by a list of monic polynomials (see ``_kernels_py``)."""
    cdef dict g = dict(f)
    cdef dict rem = {}
    cdef Py_ssize_t nl = len(leads)
    if not g:
        return rem
    cdef Py_ssize_t n = len(next(iter(g)))
    cdef long *L = _pack(leads, nl, n) if nl else NULL
    cdef long *M = <long *>malloc((n + 1) * sizeof(long))
    cdef long *Q = <long *>malloc((n + 1) * sizeof(long))
    cdef Py_ssize_t i, k, found
    cdef long steps = counter[0]
    cdef tuple m, lm, gm, mm
    if M == NULL or Q == NULL:
        free(L); free(M); free(Q)
        raise MemoryError()
    try:
        heap = [(heapkey(m), m) for m in g]
        heapify(heap)
        while heap:
            m = heappop(heap)[1]
            c = g.get(m)
            if c is None:
                continue
            for k in range(n):
                M[k] = m[k]
            found = -1
            for i in range(nl):
                if _le(L + i * n, M, n):
                    found = i
                    break
            del g[m]
            if found < 0:
                rem[m] = c
                continue
            steps += 1
            if steps > budget:
                counter[0] = steps
                raise BudgetExceeded(f"reduction budget of {budget} steps exhausted")
            for k in range(n):
                Q[k] = M[k] - L[found * n + k]
            lm = leads[found]
            for gm, gc in (<dict>polys[found]).items():
                if gm == lm:
                    continue
                mm = tuple([<long>gm[k] + Q[k] for k in range(n)])
                v = g.get(mm)
                if p:
                    prod = c * gc % p
                    if v is None:
                        g[mm] = p - prod
                        heappush(heap, (heapkey(mm), mm))
                    else:
                        nv = (v - prod) % p
                        if nv:
                            g[mm] = nv
                        else:
                            del g[mm]
                else:
                    prod = c * gc
                    if v is None:
                        g[mm] = -prod
                        heappush(heap, (heapkey(mm), mm))
                    else:
                        nv = v - prod
                        if nv:
                            g[mm] = nv
                        else:
                            del g[mm]
        counter[0] = steps
        return rem
    finally:
        free(L)
        free(M)
        free(Q)


def antichain_minimize(points):
    """Minimal elements under componentwise <=, deduplicated, sorted ascending."""
    cdef list pts = sorted(set(points), key=lambda v: (sum(v), v))
    cdef Py_ssize_t count = len(pts)
    if count == 0:
        return []
    cdef Py_ssize_t n = len(pts[0]), i, j, nk = 0
    cdef long *P = _pack(pts, count, n)
    cdef Py_ssize_t *kept = <Py_ssize_t *>malloc(count * sizeof(Py_ssize_t))
    cdef bint dominated
    if kept == NULL:
        free(P)
        raise MemoryError()
    try:
        for i in range(count):
            dominated = False
            for j in range(nk):
                if _le(P + kept[j] * n, P + i * n, n):
                    dominated = True
                    break
            if not dominated:
                kept[nk] = i
                nk += 1
        out = [pts[kept[j]] for j in range(nk)]
    finally:
        free(P)
        free(kept)
    out.sort()
    return out


def antichain_sum(a, b):
    """Minimal elements of the Minkowski sum of two exponent sets."""
    return antichain_minimize([tuple([x + y for x, y in zip(u, v)]) for u in a for v in b])


def dominates_any(v, points):
    """True when some element of ``points`` is componentwise <= ``v``."""
    cdef Py_ssize_t k, n = len(v)
    for u in points:
        for k in range(n):
            if <long>u[k] > <long>v[k]:
                break
        else:
            return True
    return False


cdef inline long _ceil_div(long a, long b) noexcept nogil:
    # a > 0, b > 0; C division truncates, so no negation trick here
    return (a + b - 1) / b


def closure_points(ineqs, bounds, long n):
    """Minimal lattice points ``v`` of the box ``0 <= v <= bounds`` with
    ``sum(w*v) + n*c >= 0`` for every inequality ``(w, c)``; ``w >= 0``."""
    cdef Py_ssize_t d = len(bounds), ni = len(ineqs), i, k, last
    if d == 0:
        return []
    last = d - 1
    cdef long *W = <long *>malloc((ni * d + 1) * sizeof(long))
    cdef long *C = <long *>malloc((ni + 1) * sizeof(long))
    cdef long *B = <long *>malloc(d * sizeof(long))
    cdef long *V = <long *>malloc(d * sizeof(long))
    cdef long s, lo, need
    cdef bint ok
    cdef list cands = []
    if W == NULL or C == NULL or B == NULL or V == NULL:
        free(W); free(C); free(B); free(V)
        raise MemoryError()
    try:
        for i, (w, c) in enumerate(ineqs):
            for k in range(d):
                W[i * d + k] = w[k]
            C[i] = c
        for k in range(d):
            B[k] = bounds[k]
            V[k] = 0
        while True:
            # V[0..last-1] is the prefix; find the least admissible last coordinate
            lo = 0
            ok = True
            for i in range(ni):
                s = n * C[i]
                for k in range(last):
                    s += W[i * d + k] * V[k]
                if W[i * d + last] == 0:
                    if s < 0:
                        ok = False
                        break
                elif s < 0:
                    need = _ceil_div(-s, W[i * d + last])
                    if need > lo:
                        lo = need
            if ok and lo <= B[last]:
                cands.append(tuple([V[k] for k in range(last)]) + (lo,))
            # odometer over the prefix, last prefix coordinate fastest
            k = last - 1
            while k >= 0:
                if V[k] < B[k]:
                    V[k] += 1
                    break
                V[k] = 0
                k -= 1
            if k < 0:
                break
    finally:
        free(W)
        free(C)
        free(B)
        free(V)
    return antichain_minimize(cands)
