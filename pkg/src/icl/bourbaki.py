"""Torsionfree modules over k[x,y] given by generators in a free module.

A module ``E ⊆ R^e`` is stored by its generating columns ``a_1..a_n``.
Its presentation ``φ`` (n x m) is the matrix of syzygies among the
columns, and ``Fitt_i(E)`` is the ideal of ``(n-i)``-minors of ``φ``.

Bourbaki ideals.  For ``e - 1`` general elements ``x_j = Σ z_ij a_i`` the
quotient ``E/F`` is torsionfree of rank one.  Three constructions are
offered, all local at the origin:

* ``iterated``: the functional ``v -> det[x_1 .. x_{e-1} | v]`` kills ``F``
  and maps ``E/F`` isomorphically onto an ideal; dividing by the gcd of the
  images gives an ideal of grade two.
* ``minors``: ``E/F`` is presented by ``[Z | φ]``; its first Fitting ideal,
  the ``(n-1)``-minors, is the same grade-two ideal.
* ``fitting``: ``Fitt_e(E)`` itself, valid only for contracted ``E``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    GenericityFailure,
    NotContracted,
    NotMPrimary,
    NotTorsionfree,
    RingError,
    ZeroIdeal,
)
from .groebner import (
    Ideal,
    is_origin_primary,
    krull_dim,
    module_colength,
    module_member,
    origin_component,
    syzygies,
)
from .poly import Ring, polynomial_gcd, ring_map_apply
from .rees import DEFAULT_Z_BOUND, multiplicity_2d
from .rlr2 import QuadraticChart, is_integrally_closed_2d, nu_local, order_local

__all__ = [
    "FModule",
    "BourbakiResult",
    "fitting_ideal",
    "minors_ideal",
    "embed_into_free",
    "EmbeddingResult",
    "order_module",
    "nu_module",
    "is_contracted_module",
    "generic_bourbaki_ideal",
    "bourbaki_invariants",
    "is_integrally_closed_module",
    "module_transform",
    "direct_sum",
]

MAX_SYMBOLIC_STEPS = 2


# ---------------------------------------------------------------------------
# determinants

def _det(mat, ring):
    """Determinant of a square matrix of polynomials (rows of lists)."""
    n = len(mat)
    memo = {}

    def rec(row, cols):
        if row == n:
            return ring.one()
        key = (row, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = ring.zero()
        sign = 1
        for idx, c in enumerate(cols):
            entry = mat[row][c]
            if entry:
                sub = rec(row + 1, cols[:idx] + cols[idx + 1:])
                if sub:
                    term = entry * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return rec(0, tuple(range(n)))


def minors_ideal(rows, k: int, ring: Ring) -> Ideal:
    """Ideal of ``k x k`` minors; ``k <= 0`` gives (1), ``k`` too large gives (0)."""
    if k <= 0:
        return Ideal.unit(ring)
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    if k > min(nr, nc):
        return Ideal(ring)
    out = []
    seen = set()
    for rs in itertools.combinations(range(nr), k):
        for cs in itertools.combinations(range(nc), k):
            d = _det([[rows[r][c] for c in cs] for r in rs], ring)
            if d and d not in seen:
                seen.add(d)
                out.append(d)
    return Ideal(ring, out)


# ---------------------------------------------------------------------------
# modules

class FModule:
    """Submodule of ``R^e`` spanned by the given columns."""

    def __init__(self, ring: Ring, columns, rank: int | None = None):
        cols = [tuple(ring(v) for v in col) for col in columns]
        if rank is None:
            if not cols:
                raise RingError("ambient rank needed for a module without generators")
            rank = len(cols[0])
        for col in cols:
            if len(col) != rank:
                raise RingError("all generators need the same length")
        cols = [c for c in cols if any(c)]
        self.ring = ring
        self.ambient_rank = rank
        self.columns = tuple(cols)

    @classmethod
    def parse(cls, ring: Ring, columns) -> "FModule":
        """Columns as lists of polynomial strings."""
        return cls(ring, [[ring.parse(s) if isinstance(s, str) else s for s in col] for col in columns])

    @property
    def ngens(self) -> int:
        return len(self.columns)

    def rows(self):
        """Generator matrix, e rows by n columns."""
        return [[col[i] for col in self.columns] for i in range(self.ambient_rank)]

    @cached_property
    def presentation(self) -> tuple:
        """Columns (length n) generating the syzygies of the generators."""
        return tuple(syzygies(self.columns, self.ring))

    def presentation_rows(self):
        n = self.ngens
        return [[col[i] for col in self.presentation] for i in range(n)]

    def has_full_rank(self) -> bool:
        return not minors_ideal(self.rows(), self.ambient_rank, self.ring).is_zero()

    def check_rank(self):
        if not self.has_full_rank():
            raise NotTorsionfree("generators do not span a module of full rank")

    def contains(self, v) -> bool:
        return module_member(tuple(self.ring(c) for c in v), self.columns, self.ring, self.ambient_rank)

    def maximal_times(self) -> "FModule":
        return FModule(self.ring, [tuple(g * c for c in col) for g in self.ring.gens() for col in self.columns],
                       self.ambient_rank)

    def is_free_in_ambient(self) -> bool:
        return minors_ideal(self.rows(), self.ambient_rank, self.ring).is_unit()

    def cokernel_colength(self) -> int:
        return module_colength(self.columns, self.ring, self.ambient_rank)

    def to_strings(self):
        return [[str(c) for c in col] for col in self.columns]

    def __repr__(self):
        return f"FModule({self.to_strings()}, ring={str(self.ring)!r})"


def direct_sum(*ideals: Ideal) -> FModule:
    """``I_1 ⊕ ... ⊕ I_k`` inside ``R^k``."""
    ring = ideals[0].ring
    k = len(ideals)
    cols = []
    for i, I in enumerate(ideals):
        for g in I.gens:
            col = [ring.zero()] * k
            col[i] = g
            cols.append(tuple(col))
    return FModule(ring, cols, k)


def fitting_ideal(M: FModule, i: int) -> Ideal:
    """``Fitt_i(M)``: the ``(n - i)``-minors of the presentation."""
    n = M.ngens
    if i < 0:
        raise ValueError("Fitting index must be non-negative")
    k = n - i
    if k <= 0:
        return Ideal.unit(M.ring)
    return minors_ideal(M.presentation_rows(), k, M.ring)


def _local(I: Ideal) -> Ideal:
    """Component at the origin, which must be primary to it or the unit ideal."""
    if I.is_zero():
        raise ZeroIdeal("ideal is zero at the origin")
    J = origin_component(I)
    if not (J.is_unit() or is_origin_primary(J)):
        raise NotMPrimary(f"{I} is not primary to the origin")
    return J


def order_module(M: FModule) -> int:
    """``o(E) = o(Fitt_e(E))`` at the origin (0 for the unit ideal)."""
    F = _local(fitting_ideal(M, M.ambient_rank))
    return 0 if F.is_unit() else order_local(F)


def nu_module(M: FModule) -> int:
    """``dim_k E/𝔪E = n − rank φ(0)``, ``φ`` the presentation."""
    n = M.ngens
    field = M.ring.field
    rows = [[field(p.constant_coefficient()) for p in col] for col in M.presentation]
    return n - _rank(rows, field)


def _rank(rows, field) -> int:
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncol = len(rows[0]) if rows else 0
    for c in range(ncol):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][c])
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = field(rows[i][c] * inv)
                rows[i] = [field(a - f * b) for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def is_contracted_module(M: FModule) -> bool:
    """``ν(E) = o(E) + e``."""
    return nu_module(M) == order_module(M) + M.ambient_rank


# ---------------------------------------------------------------------------
# embeddings

@dataclass
class EmbeddingResult:
    module: FModule
    rank: int
    cyclic_in_codim_one: bool


def embed_into_free(presentation, ngens: int, ring: Ring) -> EmbeddingResult:
    """Embed ``coker φ`` into a free module through its double dual.

    ``presentation`` lists the relation columns (each of length ``ngens``).
    The dual ``E* = ker φ^T`` is computed as a syzygy module; a minimal
    generating set ``u_1..u_e`` of it gives ``a_i -> (u_1[i], .., u_e[i])``.
    Raises NotTorsionfree when this map is not injective.
    """
    phi = [tuple(ring(c) for c in col) for col in presentation]
    if not phi:
        cols = [tuple(ring.one() if i == j else ring.zero() for i in range(ngens)) for j in range(ngens)]
        return EmbeddingResult(FModule(ring, cols, ngens), ngens, True)
    rows_as_vectors = [tuple(col[i] for col in phi) for i in range(ngens)]
    dual = syzygies(rows_as_vectors, ring)
    dual = _trim(dual, ring, ngens)
    e = len(dual)
    if e == 0:
        raise NotTorsionfree("the module is torsion")
    cols = [tuple(u[i] for u in dual) for i in range(ngens)]
    M = FModule(ring, cols, e) if any(any(c) for c in cols) else None
    if M is None:
        raise NotTorsionfree("the module is torsion")
    # injectivity: relations of the image are relations of the module
    image_rel = syzygies([tuple(u[i] for u in dual) for i in range(ngens)], ring)
    for rel in image_rel:
        if not module_member(rel, phi, ring, ngens):
            raise NotTorsionfree("the module has torsion")
    fitt = minors_ideal(M.rows(), e - 1, ring) + minors_ideal(M.rows(), e, ring)
    cyclic = fitt.is_unit() or krull_dim(fitt) <= 0
    return EmbeddingResult(M, e, cyclic)


def _trim(vectors, ring, rank):
    vecs = list(vectors)
    i = 0
    while i < len(vecs):
        rest = vecs[:i] + vecs[i + 1:]
        if rest and module_member(vecs[i], rest, ring, rank):
            vecs = rest
        else:
            i += 1
    return vecs


# ---------------------------------------------------------------------------
# Bourbaki ideals

@dataclass
class BourbakiResult:
    ideal: Ideal
    path: str
    seed: int | None
    specialization: list = field(default_factory=list)
    mode: str = "random"

    def to_dict(self) -> dict:
        return {
            "ideal": self.ideal.to_strings(),
            "path": self.path,
            "mode": self.mode,
            "seed": self.seed,
            "specialization": [[str(v) for v in row] for row in self.specialization],
        }


def _draw(rng, n, steps, field, bound):
    return [[field(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(steps)]


def _functional_images(M: FModule, xs) -> list:
    e = M.ambient_rank
    out = []
    for col in M.columns:
        mat = [[x[i] for x in xs] + [col[i]] for i in range(e)]
        out.append(_det(mat, M.ring))
    return out


def _grade_two(images, ring) -> Ideal:
    nz = [f for f in images if f]
    if not nz:
        raise GenericityFailure("the chosen elements do not span a free submodule of rank e-1")
    g = polynomial_gcd(nz)
    from .poly import exact_divide

    return Ideal(ring, [exact_divide(f, g) for f in nz])


def generic_bourbaki_ideal(M: FModule, U: FModule | None = None, mode: str = "random", seed: int = 0,
                           path: str = "iterated", bound: int = DEFAULT_Z_BOUND, values=None) -> BourbakiResult:
    """A Bourbaki ideal of ``M`` with respect to the reduction ``U`` (default ``M``).

    ``values`` fixes the coefficient rows ``z_j`` (one per step, each of
    length ``ngens(U)``) instead of drawing them from ``seed``."""
    ring = M.ring
    e = M.ambient_rank
    U = U or M
    if path == "fitting":
        if not is_contracted_module(M):
            raise NotContracted("the Fitting shortcut needs a contracted module")
        return BourbakiResult(_local(fitting_ideal(M, e)), path, seed, [], mode)
    steps = e - 1
    if mode == "symbolic":
        if steps > MAX_SYMBOLIC_STEPS:
            raise ValueError(f"symbolic mode supports at most {MAX_SYMBOLIC_STEPS} steps")
        names = Ring(ring.variables).fresh_names("z", steps * U.ngens)
        big = Ring(ring.variables + tuple(names), ring.field, ring.order)
        pos = range(ring.nvars)
        zs = [[big.gen(names[j * U.ngens + i]) for i in range(U.ngens)] for j in range(steps)]
        BM = FModule(big, [tuple(c.embed(big, pos) for c in col) for col in M.columns], e)
        BU = [tuple(c.embed(big, pos) for c in col) for col in U.columns]
        xs = [tuple(sum((z * col[i] for z, col in zip(row, BU)), big.zero()) for i in range(e)) for row in zs]
        ideal = _grade_two(_functional_images(BM, xs), big)
        return BourbakiResult(ideal, path, None, [[str(z) for z in row] for row in zs], mode)
    if values is not None:
        Z = [[ring.field(v) for v in row] for row in values]
    else:
        Z = _draw(random.Random(seed), U.ngens, steps, ring.field, bound)
    xs = [tuple(sum((col[i].scale(z) for z, col in zip(row, U.columns)), ring.zero()) for i in range(e))
          for row in Z]
    if path == "iterated":
        ideal = _grade_two(_functional_images(M, xs), ring)
    elif path == "minors":
        if U is not M:
            raise ValueError("the minors route needs U = M")
        rows = M.presentation_rows()
        n = M.ngens
        rows = [[Z[j][i] for j in range(steps)] + rows[i] for i in range(n)]
        rows = [[ring(c) for c in r] for r in rows]
        ideal = minors_ideal(rows, n - 1, ring)
    else:
        raise ValueError(f"unknown construction path {path!r}")
    return BourbakiResult(_local(ideal), path, seed, Z, mode)


def bourbaki_invariants(I: Ideal, seed: int = 0) -> tuple:
    """``(o, ν, e, closed)`` of an ideal primary to the origin."""
    if I.is_unit():
        return (0, 1, 0, True)
    return (order_local(I), nu_local(I), multiplicity_2d(I, seed=seed), is_integrally_closed_2d(I))


def is_integrally_closed_module(M: FModule, seed: int = 0, retries: int = 3) -> bool:
    """Closedness of ``M`` through generic Bourbaki ideals, two seeds agreeing.

    Rank one modules are ideals and are tested directly (after removing
    the gcd of the generators)."""
    if M.ambient_rank == 1:
        I = _local(_grade_two([col[0] for col in M.columns], M.ring))
        return is_integrally_closed_2d(I)
    for attempt in range(retries + 1):
        s1, s2 = seed + 2 * attempt, seed + 2 * attempt + 1
        try:
            r1 = is_integrally_closed_2d(generic_bourbaki_ideal(M, seed=s1).ideal)
            r2 = is_integrally_closed_2d(generic_bourbaki_ideal(M, seed=s2).ideal)
        except GenericityFailure:
            continue
        if r1 == r2:
            return r1
    raise GenericityFailure("Bourbaki ideals for different seeds disagree")


def module_transform(M: FModule, chart: QuadraticChart) -> FModule:
    """Columns pushed through the chart substitution (no division)."""
    sub = chart.substitution()
    cols = [tuple(ring_map_apply(c, sub, chart.target) for c in col) for col in M.columns]
    return FModule(chart.target, cols, M.ambient_rank)
