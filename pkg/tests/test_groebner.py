import json

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from icl import groebner as gb_mod
from icl.cache import basis_store
from icl.errors import BudgetExceeded, NotZeroDimensional, OrderMismatch, UnitIdeal
from icl.groebner import (
    Ideal,
    colength_0dim,
    eliminate,
    groebner_basis,
    ideal_combine,
    ideal_equal,
    ideal_intersect,
    ideal_member,
    ideal_quotient,
    is_reduced_basis,
    krull_dim,
    module_colength,
    module_member,
    normal_form,
    origin_component,
    reduction_budget,
    saturate,
    syzygies,
)
from icl.poly import GREVLEX, LEX, QQ, Field, MonomialOrder, Polynomial, Ring

from .strategies import polynomials

RING = Ring(("x", "y"))
RLEX = Ring(("x", "y"), QQ, LEX)
F7 = Ring(("x", "y"), Field(7))
ORDERS = [GREVLEX, LEX, MonomialOrder("block", 1)]


def I(ring, text):
    return Ideal.parse(ring, text)


def small_ideals(ring, max_gens=3):
    return st.lists(polynomials(ring, max_terms=3, max_deg=3, nonzero=True), min_size=1, max_size=max_gens).map(
        lambda gs: Ideal(ring, gs)
    )


# --- Groebner bases -------------------------------------------------------

def test_basis_example_lex_x_first():
    # with x > y the pair x^2 - y, y^2 is already a reduced basis
    assert I(RLEX, "x^2 - y, y^2").groebner() == (RLEX.parse("x^2 - y"), RLEX.parse("y^2"))


def test_basis_example_lex_y_first():
    S = Ring(("y", "x"), QQ, LEX)
    assert I(S, "x^2 - y, y^2").groebner() == (S.parse("y - x^2"), S.parse("x^4"))


def test_trivial_bases(R):
    assert groebner_basis(I(R, "1, x")) == [R.one()]
    for order in ORDERS:
        assert set(groebner_basis(I(R, "x, y"), order)) == {R.parse("x"), R.parse("y")}
    assert groebner_basis(Ideal(R, [R.zero()])) == []


def _sympy_basis(ideal, order, name):
    ring = ideal.ring
    syms = sympy.symbols(ring.variables)
    exprs = [sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(ring.variables, syms))) for g in ideal.gens]
    G = sympy.groebner(exprs, *syms, order=name, domain="QQ")
    out = set()
    for p in G.polys:
        d = p.as_dict()
        lc = d[max(d, key=order.key(0))]
        out.add(frozenset((m, c / lc) for m, c in d.items()))
    return out


@given(small_ideals(RING))
def test_basis_matches_independent_implementation(ideal):
    for order, name in ((GREVLEX, "grevlex"), (LEX, "lex")):
        ours = {frozenset((m, sympy.Rational(c.numerator, c.denominator)) for m, c in g.terms.items())
                for g in ideal.groebner(order)}
        assert ours == _sympy_basis(ideal, order, name)


@given(small_ideals(RING), st.sampled_from(ORDERS))
def test_basis_is_reduced(ideal, order):
    raw = [g.terms for g in ideal.gens]
    basis = [g.terms for g in ideal.groebner(order)]
    assert is_reduced_basis(raw, basis, order, 0)
    assert all(ideal.normal_form(g, order) == RING.zero() for g in ideal.gens)


@given(small_ideals(F7))
def test_basis_is_reduced_mod_p(ideal):
    raw = [g.terms for g in ideal.gens]
    assert is_reduced_basis(raw, [g.terms for g in ideal.groebner()], GREVLEX, 7)


def test_is_reduced_basis_rejects_non_bases():
    raw = [RLEX.parse("x^2 - y").terms, RLEX.parse("x*y - 1").terms]
    assert not is_reduced_basis(raw, raw, LEX, 0)
    good = [g.terms for g in I(RLEX, "x^2 - y, x*y - 1").groebner()]
    assert is_reduced_basis(raw, good, LEX, 0)
    assert not is_reduced_basis(raw, good[1:], LEX, 0)


def test_basis_is_deterministic():
    a = I(RING, "x^3 - y*x, y^2 - x + 1, x*y^2").groebner()
    gb_mod._CACHE.clear()
    b = I(RING, "y^2 - x + 1, x*y^2, x^3 - y*x").groebner()
    assert a == b


def test_budget_is_enforced():
    R3 = Ring(("a", "b", "c", "d"))
    cyclic = I(R3, "a+b+c+d, a*b+b*c+c*d+d*a, a*b*c+b*c*d+c*d*a+d*a*b, a*b*c*d-1")
    gb_mod._CACHE.clear()
    with reduction_budget(20):
        with pytest.raises(BudgetExceeded):
            cyclic.groebner()
    assert len(cyclic.groebner()) > 0


# --- normal forms and membership -----------------------------------------

def test_normal_form_examples(R, Rlex):
    assert normal_form(R.parse("x^2"), I(R, "x")) == R.zero()
    assert normal_form(Rlex.parse("x + y"), I(Rlex, "x - y")) == Rlex.parse("2*y")
    assert normal_form(R.one(), I(R, "x, y")) == R.one()


def test_membership_examples(R):
    assert ideal_member(R.parse("x*y"), I(R, "x^2, x*y, y^2"))
    assert not ideal_member(R.parse("x*y"), I(R, "x^2, y^2"))
    assert ideal_member(R.zero(), I(R, "x^3 + y"))


@given(small_ideals(RING, max_gens=2), polynomials(RING, max_terms=3), polynomials(RING, max_terms=3))
def test_membership_is_order_independent(ideal, a, b):
    f = a * ideal.gens[0] + b
    answers = {ideal.normal_form(f, order).is_zero() for order in ORDERS}
    assert len(answers) == 1
    assert ideal.normal_form(a * ideal.gens[0], GREVLEX).is_zero()


# --- intersection, quotient, combinations ---------------------------------

def test_intersection_examples(R):
    assert ideal_equal(ideal_intersect(I(R, "x"), I(R, "y")), I(R, "x*y"))
    assert ideal_equal(ideal_intersect(I(R, "x^2, y"), I(R, "x")), I(R, "x^2, x*y"))
    J = I(R, "x^2 + y^3, x*y - 1")
    assert ideal_equal(ideal_intersect(J, J), J)


@given(small_ideals(RING, 2), small_ideals(RING, 2))
@settings(max_examples=25)
def test_intersection_and_product_containments(A, B):
    C = ideal_intersect(A, B)
    assert A.contains_ideal(C) and B.contains_ideal(C)
    assert C.contains_ideal(ideal_combine(A, B, "product"))


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any), min_size=1, max_size=3),
       st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any), min_size=1, max_size=3))
def test_monomial_intersection_shortcut_matches_elimination(a, b):
    A = Ideal(RING, [RING.monomial(m) for m in a])
    B = Ideal(RING, [RING.monomial(m) for m in b])
    assert ideal_equal(ideal_intersect(A, B), ideal_intersect(A, B, method="elimination"))


def test_quotient_examples(R):
    assert ideal_equal(ideal_quotient(I(R, "x^2"), I(R, "x")), I(R, "x"))
    T = Ring(("x", "t"))
    assert ideal_quotient(I(T, "x^2*t^2, x^2"), I(T, "x^2")).is_unit()
    assert ideal_equal(ideal_quotient(I(R, "x*y, y^2"), I(R, "y")), I(R, "x, y"))


@given(small_ideals(RING, 2), small_ideals(RING, 1))
@settings(max_examples=25)
def test_quotient_times_divisor_lands_in_ideal(A, B):
    Q = ideal_quotient(A, B)
    assert A.contains_ideal(ideal_combine(Q, B, "product"))
    assert Q.contains_ideal(A)


def test_saturation():
    J = I(RING, "x^2*y, x*y^2")
    assert ideal_equal(saturate(J, I(RING, "x, y")), I(RING, "x*y"))


def test_combinations(R):
    assert ideal_equal(ideal_combine(I(R, "x"), I(R, "y"), "product"), I(R, "x*y"))
    assert ideal_equal(ideal_combine(I(R, "x, y"), None, ("power", 2)), I(R, "x^2, x*y, y^2"))
    assert ideal_combine(I(R, "x, y"), None, ("power", 0)).is_unit()
    J = I(R, "x^2 + y")
    assert ideal_equal(ideal_combine(J, Ideal(R, []), "sum"), J)


# --- elimination ----------------------------------------------------------

def test_elimination_examples():
    T = Ring(("t", "x", "y"))
    assert eliminate(I(T, "y - x*t"), ["t"]).is_zero()
    out = eliminate(I(T, "y - x*t, t^2"), ["t"])
    assert out.ring.variables == ("x", "y")
    assert ideal_equal(out, I(out.ring, "y^2"))
    assert eliminate(Ideal.unit(T), ["t"]).is_unit()


def test_elimination_rejects_bad_order():
    T = Ring(("t", "x", "y"))
    with pytest.raises(OrderMismatch):
        eliminate(I(T, "y - x*t"), ["t"], order=GREVLEX)
    with pytest.raises(OrderMismatch):
        eliminate(I(T, "y - x*t"), ["s"])


@given(small_ideals(Ring(("x", "y", "z")), 2))
@settings(max_examples=20)
def test_elimination_is_a_contraction(ideal):
    out = eliminate(ideal, ["z"])
    big = ideal.ring
    for g in out.gens:
        lifted = Polynomial(big, {m + (0,): c for m, c in g.terms.items()})
        assert ideal.contains(lifted)


# --- dimension and colength -----------------------------------------------

def test_dimension_examples(R):
    assert krull_dim(I(R, "x, y")) == 0
    assert krull_dim(I(R, "x")) == 1
    assert krull_dim(I(R, "x^2, x*y")) == 1
    assert krull_dim(Ideal(R, [])) == 2
    with pytest.raises(UnitIdeal):
        krull_dim(I(R, "x, 1 + x"))


def test_colength_examples(R):
    assert colength_0dim(I(R, "x, y")) == 1
    assert colength_0dim(I(R, "x^2, y^2")) == 4
    assert colength_0dim(I(R, "x^2, x*y, y^2")) == 3
    assert colength_0dim(I(R, "x^3 + y^2, x*y")) == 5
    with pytest.raises(NotZeroDimensional):
        colength_0dim(I(R, "x^2"))


zero_dim = st.tuples(st.integers(1, 4), st.integers(1, 4), st.lists(polynomials(RING, 3, 3), max_size=2))


@given(zero_dim)
@settings(max_examples=50)
def test_colength_is_order_independent(data):
    a, b, extra = data
    gens = [RING.parse(f"x^{a}"), RING.parse(f"y^{b}")] + list(extra)
    ideal = Ideal(RING, gens)
    lengths = {colength_0dim(ideal, order) for order in ORDERS}
    assert len(lengths) == 1


# --- origin component -----------------------------------------------------

def test_origin_component(R):
    assert ideal_equal(origin_component(I(R, "x^2 - x, y")), I(R, "x, y"))
    assert ideal_equal(origin_component(I(R, "x^2, y")), I(R, "x^2, y"))
    assert origin_component(I(R, "x - 1, y")).is_unit()
    comp = origin_component(I(R, "x^2*(x-1), y*(y-1), x*y"))
    assert ideal_equal(comp, I(R, "x^2, y"))


# --- modules --------------------------------------------------------------

def test_syzygies_of_two_variables(R):
    x, y = R.gens()
    syz = syzygies([(x,), (y,)], R)
    assert len(syz) == 1
    a, b = syz[0]
    assert a * x + b * y == R.zero()
    assert {a, b} == {y, -x} or {a, b} == {-y, x}


@given(st.lists(st.tuples(polynomials(RING, 2, 2), polynomials(RING, 2, 2)), min_size=2, max_size=3))
@settings(max_examples=20)
def test_syzygies_are_relations(cols):
    for s in syzygies(cols, RING):
        for row in range(2):
            assert sum((c * col[row] for c, col in zip(s, cols)), RING.zero()) == RING.zero()


def test_module_colength_and_membership(R):
    x, y = R.gens()
    zero = R.zero()
    # m (+) m inside R^2
    vecs = [(x, zero), (y, zero), (zero, x), (zero, y)]
    assert module_colength(vecs, R, 2) == 2
    assert module_member((x * y, y), vecs, R, 2)
    assert not module_member((R.one(), zero), vecs, R, 2)


# --- persistent store -----------------------------------------------------

def test_basis_store_round_trip_and_tamper(tmp_path):
    ideal_text = "x^3 - 2*x*y, x^2*y - 2*y^2 + x"
    gb_mod._CACHE.clear()
    with basis_store(tmp_path) as store:
        first = I(RING, ideal_text).groebner()
        assert store.misses == 1
        gb_mod._CACHE.clear()
        assert I(RING, ideal_text).groebner() == first
        assert store.hits == 1
    (entry,) = list(tmp_path.glob("*.json"))
    data = json.loads(entry.read_text())
    data["basis"] = data["basis"][:-1]
    entry.write_text(json.dumps(data))
    gb_mod._CACHE.clear()
    with basis_store(tmp_path) as store:
        assert I(RING, ideal_text).groebner() == first
        assert store.rejected == 1
