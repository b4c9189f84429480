"""𝔪-primary ideals of k[x,y] localized at the origin.

Orders, minimal numbers of generators, contractedness, quadratic
transforms, base points, and recursive closure and closedness tests.

Charts.  A chart is an invertible linear change ``(a, b) = M (x, y)``
followed by ``b = a (t + c)``; the chart ring is ``k[a, t]``.  Two charts
cover the exceptional line: the x-chart (``a = x``, every finite ``t``)
and the y-chart (``a = y``, ``x = y s``), of which only the origin
``s = 0`` is new.

Closure.  For ``I`` of order ``r`` with transform ``Í`` (``IS = a^r Í``)
and base points ``p``::

    Ī = ∩_p { f : f ∈ a^r · cl(Q_p) in the chart of p }

where ``Q_p`` is the component of the translated transform at ``p``.
When there are no base points ``Ī = 𝔪^r``.  This follows from the
valuative criterion: a valuation centred at the origin is either the
order valuation (giving ``f ∈ 𝔪^r``, already implied by every term
above) or is centred at a point of the exceptional line, where ``Í`` is
a unit unless the point is a base point.  Each ``cl(Q_p)`` is primary to
the point, so its polynomial and local versions agree.

Closedness.  ``I`` is integrally closed iff it is contracted
(``ν = o + 1``) and every ``Q_p`` is integrally closed.  Multiplicities
drop strictly along the recursion.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    GenericityFailure,
    NonRationalBasePoint,
    NotMPrimary,
    OrderDrop,
    RingError,
    ZeroIdeal,
)
from .groebner import (
    Ideal,
    colength_0dim,
    eliminate,
    ideal_equal,
    intersect_all,
    is_origin_primary,
    origin_component,
)
from .poly import Polynomial, Ring, lowest_degree_form, ring_map_apply

__all__ = [
    "LocalIdeal2D",
    "QuadraticChart",
    "BasePoint",
    "BasePointTree",
    "order_local",
    "nu_local",
    "is_contracted",
    "is_contracted_direct",
    "quadratic_transform",
    "base_points",
    "base_point_tree",
    "is_integrally_closed_2d",
    "integral_closure_2d",
    "contract_back",
]


@dataclass(frozen=True)
class LocalIdeal2D:
    """An ideal of k[x,y] primary to the origin, with the power ``N``
    certifying ``x^N, y^N ∈ I``."""

    ideal: Ideal
    certificate: int

    @classmethod
    def certify(cls, I, localize: bool = False) -> "LocalIdeal2D":
        if isinstance(I, LocalIdeal2D):
            return I
        if I.ring.nvars != 2:
            raise RingError("a ring in exactly two variables is required")
        if I.is_zero():
            raise ZeroIdeal("the zero ideal is not primary to the origin")
        if localize:
            I = origin_component(I)
        if I.is_unit():
            return cls(I, 0)
        if not is_origin_primary(I):
            raise NotMPrimary(f"{I} is not primary to the origin")
        lam = colength_0dim(I)
        x, y = I.ring.gens()
        n = next(k for k in range(1, lam + 1) if I.contains(x**k) and I.contains(y**k))
        return cls(I, n)

    @property
    def ring(self) -> Ring:
        return self.ideal.ring


def _ideal(I) -> Ideal:
    return LocalIdeal2D.certify(I).ideal


# ---------------------------------------------------------------------------
# numeric invariants

def _order(I: Ideal) -> int:
    return min(lowest_degree_form(g)[0] for g in I.gens)


def _maximal_times(I: Ideal) -> Ideal:
    return Ideal(I.ring, [v * g for v in I.ring.gens() for g in I.groebner()])


def order_local(I) -> int:
    """Largest ``r`` with ``I ⊆ 𝔪^r``."""
    I = I.ideal if isinstance(I, LocalIdeal2D) else I
    if I.is_zero():
        raise ZeroIdeal("the zero ideal has no order")
    return _order(I)


def nu_local(I) -> int:
    """Minimal number of generators, ``λ(R/𝔪I) − λ(R/I)``."""
    I = _ideal(I)
    if I.is_unit():
        return 1
    return colength_0dim(_maximal_times(I)) - colength_0dim(I)


def is_contracted(I) -> bool:
    """The numerical criterion ``ν(I) = o(I) + 1``."""
    I = _ideal(I)
    if I.is_unit():
        return True
    return nu_local(I) == _order(I) + 1


# ---------------------------------------------------------------------------
# charts

def _det_inverse(M, field):
    (a, b), (c, d) = M
    det = a * d - b * c
    if det == 0:
        raise RingError("chart matrix is singular")
    inv = field.inv(field(det))
    return ((field(d * inv), field(-b * inv)), (field(-c * inv), field(a * inv)))


@dataclass(frozen=True)
class QuadraticChart:
    """``(a, b) = M (x, y)``, ``b = a (t + shift)``; chart ring ``k[a, t]``."""

    source: Ring
    matrix: tuple
    shift: object
    target: Ring

    @classmethod
    def make(cls, source: Ring, matrix, shift=0, a_name=None, t_stem="t") -> "QuadraticChart":
        f = source.field
        M = tuple(tuple(f(v) for v in row) for row in matrix)
        _det_inverse(M, f)
        if a_name is None:
            a_name = source.variables[0] if M[0][0] else source.variables[1]
        taken = Ring((a_name,))
        t_name = taken.fresh_name(t_stem)
        return cls(source, M, f(shift), Ring((a_name, t_name), f, source.order))

    @classmethod
    def x_chart(cls, source: Ring, shift=0) -> "QuadraticChart":
        return cls.make(source, ((1, 0), (0, 1)), shift, source.variables[0], "t")

    @classmethod
    def y_chart(cls, source: Ring, shift=0) -> "QuadraticChart":
        return cls.make(source, ((0, 1), (1, 0)), shift, source.variables[1], "s")

    @classmethod
    def pivot_chart(cls, source: Ring, c, shift=0) -> "QuadraticChart":
        """Pivot ``a = x + c*y``."""
        return cls.make(source, ((1, c), (0, 1)), shift, source.variables[0], "t")

    def translated(self, c) -> "QuadraticChart":
        return QuadraticChart(self.source, self.matrix, self.source.field(c), self.target)

    @property
    def kind(self) -> str:
        M = self.matrix
        if M == ((1, 0), (0, 1)):
            return "x"
        if M == ((0, 1), (1, 0)):
            return "y"
        return "pivot"

    def pivot(self) -> Polynomial:
        x, y = self.source.gens()
        (m00, m01), _ = self.matrix
        return x.scale(m00) + y.scale(m01)

    def substitution(self) -> dict:
        """Images of the source variables in the chart ring."""
        a, t = self.target.gens()
        b = a * (t + self.target.constant(self.shift))
        inv = _det_inverse(self.matrix, self.source.field)
        vx, vy = self.source.variables
        return {
            vx: a.scale(inv[0][0]) + b.scale(inv[0][1]),
            vy: a.scale(inv[1][0]) + b.scale(inv[1][1]),
        }

    def apply(self, f: Polynomial) -> Polynomial:
        return ring_map_apply(f, self.substitution(), self.target)

    def complementary(self) -> "QuadraticChart":
        """Chart with the roles of ``a`` and ``b`` swapped (its origin is
        the point of the exceptional line this chart misses)."""
        M = self.matrix
        return QuadraticChart.make(self.source, (M[1], M[0]), 0, t_stem="s")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "matrix": [[str(v) for v in row] for row in self.matrix],
            "shift": str(self.shift),
            "ring": str(self.target),
        }


def _divide_pivot_power(g: Polynomial, r: int) -> Polynomial:
    out = {}
    for m, c in g.terms.items():
        if m[0] < r:
            raise AssertionError("transform generator not divisible by a^r")
        out[(m[0] - r,) + m[1:]] = c
    return Polynomial(g.ring, out, clean=False)


def quadratic_transform(I, chart: QuadraticChart, require_generic: bool = False) -> Ideal:
    """``Í`` with ``IS = a^r Í``, ``r = o(I)``.

    With ``require_generic`` an OrderDrop is raised when the point of the
    exceptional line missed by the chart is a base point of ``I``."""
    I = I.ideal if isinstance(I, LocalIdeal2D) else I
    if I.is_unit():
        return Ideal.unit(chart.target)
    r = _order(I)
    if require_generic and _misses_base_point(I, chart, r):
        raise OrderDrop("the chart misses a base point; choose another pivot")
    return Ideal(chart.target, [_divide_pivot_power(chart.apply(g), r) for g in I.gens])


def _initial_gcd_vanishes_at(I: Ideal, r: int, direction) -> bool:
    """Do all degree-r initial forms vanish at ``direction`` in P^1?"""
    dx, dy = direction
    for g in I.gens:
        o, form = lowest_degree_form(g)
        if o != r:
            continue
        val = 0
        for (i, j), c in form.terms.items():
            val += c * dx**i * dy**j
        if I.ring.characteristic:
            val %= I.ring.characteristic
        if val:
            return False
    return True


def _misses_base_point(I: Ideal, chart: QuadraticChart, r: int) -> bool:
    # the missed point is the direction on which the pivot vanishes
    (m00, m01), _ = chart.matrix
    return _initial_gcd_vanishes_at(I, r, (-m01, m00))


def contract_back(J: Ideal, chart: QuadraticChart) -> Ideal:
    """``{f ∈ R : f maps into J}`` by eliminating ``t`` from
    ``J(ℓ₁, t) + (ℓ₂ − ℓ₁(t + c))`` where ``(ℓ₁, ℓ₂) = M (x, y)``."""
    src = chart.source
    if J.is_unit():
        return Ideal.unit(src)
    t = src.fresh_name("t")
    big = Ring((t,) + src.variables, src.field, src.order)
    x, y = (big.gen(v) for v in src.variables)
    tv = big.gen(t)
    (m00, m01), (m10, m11) = chart.matrix
    l1 = x.scale(m00) + y.scale(m01)
    l2 = x.scale(m10) + y.scale(m11)
    av, cv = chart.target.variables
    gens = [ring_map_apply(g, {av: l1, cv: tv}, big) for g in J.gens]
    gens.append(l2 - l1 * (tv + big.constant(chart.shift)))
    out = eliminate(Ideal(big, gens), [t])
    return Ideal(src, [Polynomial(src, g.terms, clean=False) for g in out.gens])


def is_contracted_direct(I, seed: int = 0, attempts: int = 5, bound: int = 10**4) -> bool:
    """``I == (a^o Í) ∩ R`` for a random pivot ``a = x + c*y``."""
    I = _ideal(I)
    if I.is_unit():
        return True
    rng = random.Random(seed)
    r = _order(I)
    for _ in range(attempts):
        c = rng.randint(1, bound)
        chart = QuadraticChart.pivot_chart(I.ring, c)
        try:
            It = quadratic_transform(I, chart, require_generic=True)
        except OrderDrop:
            continue
        a = chart.target.gens()[0]
        J = Ideal(chart.target, [a**r * g for g in It.gens])
        return ideal_equal(contract_back(J, chart), I)
    raise GenericityFailure("every random pivot missed a base point")


# ---------------------------------------------------------------------------
# base points

def _upoly_gcd(f: dict, g: dict, field) -> dict:
    """gcd of univariate polynomials {degree: coeff}, monic."""
    def trim(h):
        return {k: v for k, v in h.items() if v}

    def divmod_(a, b):
        a = dict(a)
        db = max(b)
        lb = field.inv(b[db])
        while a and max(a) >= db:
            da = max(a)
            q = a[da] * lb
            for k, v in b.items():
                nv = field(a.get(da - db + k, 0) - q * v)
                if nv:
                    a[da - db + k] = nv
                else:
                    a.pop(da - db + k, None)
        return a

    f, g = trim(f), trim(g)
    while g:
        f, g = g, divmod_(f, g)
    if not f:
        return {}
    lc = field.inv(f[max(f)])
    return {k: field(v * lc) for k, v in f.items()}


def _rational_roots(h: dict, field) -> list:
    """Distinct roots in the field of the univariate polynomial ``h``."""
    deg = max(h)
    if deg == 0:
        return []
    if len(h) == 1:
        return [field(0)]
    if deg == 1:
        return [field(-h.get(0, 0) * field.inv(h[1]))]
    import sympy

    t = sympy.Symbol("t")
    p = field.characteristic
    coeffs = [h.get(k, 0) for k in range(deg, -1, -1)]
    if p:
        poly = sympy.Poly([int(c) for c in coeffs], t, modulus=p)
    else:
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], t, domain="QQ")
    roots = []
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() == 1:
            c1, c0 = fac.all_coeffs()
            if p:
                roots.append(field(-int(c0) * pow(int(c1), -1, p)))
            else:
                r = -sympy.Rational(c0) / sympy.Rational(c1)
                roots.append(Fraction(int(r.p), int(r.q)))
        elif fac.degree() > 1:
            raise NonRationalBasePoint(str(fac.as_expr()))
    return sorted(set(roots))


@dataclass(frozen=True)
class BasePoint:
    chart: QuadraticChart
    point: object
    ideal: Ideal  # component at the point, moved to the origin of the chart ring

    def to_dict(self) -> dict:
        return {"chart": self.chart.kind, "point": str(self.point), "ideal": self.ideal.to_strings()}


def base_points(I) -> list[BasePoint]:
    """Base points of ``I`` on the exceptional line, x-chart points first
    (ascending), then the y-chart origin if it is one."""
    I = _ideal(I)
    if I.is_unit():
        return []
    ring = I.ring
    field = ring.field
    r = _order(I)
    out = []
    xc = QuadraticChart.x_chart(ring)
    It = quadratic_transform(I, xc)
    h = {}
    for g in It.gens:
        restr = {}
        for (i, j), c in g.terms.items():
            if i == 0:
                restr[j] = c
        h = _upoly_gcd(h, restr, field) if h else _upoly_gcd(restr, {}, field)
        if h == {0: field(1)}:
            break
    for c in _rational_roots(h, field):
        chart = xc.translated(c)
        T = quadratic_transform(I, chart) if c else It
        out.append(BasePoint(chart, c, origin_component(T)))
    if _initial_gcd_vanishes_at(I, r, (0, 1)):
        yc = QuadraticChart.y_chart(ring)
        out.append(BasePoint(yc, field(0), origin_component(quadratic_transform(I, yc))))
    return out


# ---------------------------------------------------------------------------
# recursion

_CLOSURE_CACHE: dict = {}
_CLOSED_CACHE: dict = {}


def _key(I: Ideal):
    return (I.ring.field, I.ring.order, frozenset(frozenset(g.terms.items()) for g in I.groebner()))


def _closure(I: Ideal) -> Ideal:
    if I.is_unit():
        return I
    k = _key(I)
    hit = _CLOSURE_CACHE.get(k)
    if hit is not None:
        return Ideal(I.ring, [Polynomial(I.ring, t, clean=False) for t in hit])
    r = _order(I)
    parts = []
    for bp in base_points(I):
        Q = _closure(bp.ideal)
        if Q.is_unit():
            continue
        a = bp.chart.target.gens()[0]
        J = Ideal(bp.chart.target, [a**r * g for g in Q.groebner()])
        parts.append(contract_back(J, bp.chart))
    if parts:
        res = intersect_all(parts)
    else:
        res = Ideal(I.ring, I.ring.gens()) ** r
    res = Ideal(I.ring, res.groebner())
    _CLOSURE_CACHE[k] = tuple(dict(g.terms) for g in res.gens)
    return res


def _is_closed(I: Ideal) -> bool:
    if I.is_unit():
        return True
    k = _key(I)
    hit = _CLOSED_CACHE.get(k)
    if hit is not None:
        return hit
    res = is_contracted(I) and all(_is_closed(bp.ideal) for bp in base_points(I))
    _CLOSED_CACHE[k] = res
    return res


def _random_linear(ring: Ring, c):
    x, y = ring.gens()
    fwd = {ring.variables[0]: x + y.scale(ring.field(c)), ring.variables[1]: y}
    back = {ring.variables[0]: x - y.scale(ring.field(c)), ring.variables[1]: y}
    return fwd, back


def _change(I: Ideal, mapping) -> Ideal:
    return Ideal(I.ring, [ring_map_apply(g, mapping, I.ring) for g in I.gens])


def is_integrally_closed_2d(I, crosscheck: bool = False, seed: int = 0) -> bool:
    """Recursive test: contracted, and closed at every base point.

    ``crosscheck`` repeats the test after a random linear change of
    coordinates and raises GenericityFailure on disagreement."""
    I = _ideal(I)
    res = _is_closed(I)
    if crosscheck:
        c = random.Random(seed).randint(1, 10**4)
        fwd, _ = _random_linear(I.ring, c)
        if _is_closed(_change(I, fwd)) != res:
            raise GenericityFailure("closedness differs after a linear change of coordinates")
    return res


def integral_closure_2d(I, crosscheck: bool = False, seed: int = 0) -> Ideal:
    """Integral closure of an ideal primary to the origin of k[x,y]."""
    L = LocalIdeal2D.certify(I)
    res = _closure(L.ideal)
    if crosscheck:
        c = random.Random(seed).randint(1, 10**4)
        fwd, back = _random_linear(L.ring, c)
        other = _change(_closure(_change(L.ideal, fwd)), back)
        if not ideal_equal(other, res):
            raise GenericityFailure("closure differs after a linear change of coordinates")
    return res


@dataclass
class BasePointTree:
    """Infinitely near base points with the ideal, order and multiplicity
    at each node."""

    ideal: Ideal
    order: int
    multiplicity: int
    chart: QuadraticChart | None = None
    point: object = None
    children: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {
            "ideal": self.ideal.to_strings(),
            "order": self.order,
            "multiplicity": self.multiplicity,
            "children": [c.to_dict() for c in self.children],
        }
        if self.chart is not None:
            d["chart"] = self.chart.to_dict()
            d["point"] = str(self.point)
        return d

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def base_point_tree(I, seed: int = 0) -> BasePointTree:
    """Build the tree, asserting strict multiplicity drop on every edge."""
    from .rees import multiplicity_2d

    def build(J: Ideal, chart, point) -> BasePointTree:
        if J.is_unit():
            return BasePointTree(J, 0, 0, chart, point)
        e = multiplicity_2d(J, seed=seed)
        node = BasePointTree(J, _order(J), e, chart, point)
        for bp in base_points(J):
            child = build(bp.ideal, bp.chart, bp.point)
            if child.multiplicity >= e:
                raise AssertionError(
                    f"multiplicity did not drop: {child.multiplicity} >= {e} at {bp.to_dict()}"
                )
            node.children.append(child)
        return node

    return build(_ideal(I), None, None)
