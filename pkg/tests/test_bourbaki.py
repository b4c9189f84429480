import pytest

from icl.bourbaki import (
    FModule,
    bourbaki_invariants,
    direct_sum,
    embed_into_free,
    fitting_ideal,
    generic_bourbaki_ideal,
    is_contracted_module,
    is_integrally_closed_module,
    module_transform,
    nu_module,
    order_module,
)
from icl.errors import NotContracted, NotTorsionfree
from icl.groebner import Ideal, ideal_equal, origin_component
from icl.poly import Ring
from icl.rlr2 import QuadraticChart, integral_closure_2d, is_contracted, quadratic_transform

from .suites import MODULE_SUITE, NOT_CLOSED_MODULE

RING = Ring(("x", "y"))
X, Y = RING.gens()
ZERO, ONE = RING.zero(), RING.one()


def I(text):
    return Ideal.parse(RING, text)


def module(name):
    return FModule.parse(RING, MODULE_SUITE[name])


# --- Fitting ideals and invariants ----------------------------------------

def test_fitting_examples():
    M = module("m+R")
    assert len(M.presentation) == 1
    assert ideal_equal(fitting_ideal(M, 2), I("x, y"))
    assert fitting_ideal(module("R2"), 2).is_unit()
    m = FModule(RING, [(X,), (Y,)])
    assert ideal_equal(fitting_ideal(m, 1), I("x, y"))
    assert fitting_ideal(m, 2).is_unit()


def test_presentation_is_a_relation_matrix():
    for name in MODULE_SUITE:
        M = module(name)
        for rel in M.presentation:
            for row in M.rows():
                assert sum((c * a for c, a in zip(rel, row)), ZERO) == ZERO


@pytest.mark.parametrize("name,o,nu,contracted", [
    ("m+R", 1, 3, True),
    ("R2", 0, 2, True),
    ("R3", 0, 3, True),
    ("m2+R", 2, 4, True),
    ("m+m", 2, 4, True),
    ("twisted", 2, 3, False),
])
def test_module_invariants(name, o, nu, contracted):
    M = module(name)
    assert (order_module(M), nu_module(M), is_contracted_module(M)) == (o, nu, contracted)


def test_direct_sum_matches_columns():
    M = direct_sum(I("x, y"), Ideal.unit(RING))
    assert M.ambient_rank == 2 and M.ngens == 3
    assert order_module(M) == 1


def test_rank_check():
    assert module("m+m").has_full_rank()
    with pytest.raises(NotTorsionfree):
        FModule(RING, [(X, Y), (X * X, X * Y)]).check_rank()


# --- embeddings -----------------------------------------------------------

def test_embedding_of_maximal_ideal():
    emb = embed_into_free([(Y, -X)], 2, RING)
    assert emb.rank == 1
    assert ideal_equal(Ideal(RING, [c[0] for c in emb.module.columns]), I("x, y"))


def test_embedding_of_sum_of_maximal_ideals():
    pres = [(Y, -X, ZERO, ZERO), (ZERO, ZERO, Y, -X)]
    emb = embed_into_free(pres, 4, RING)
    assert emb.rank == 2
    assert emb.module.cokernel_colength() == 2
    assert emb.cyclic_in_codim_one


def test_embedding_of_free_module_is_identity():
    emb = embed_into_free([], 3, RING)
    assert emb.rank == 3 and emb.module.is_free_in_ambient()


def test_embedding_rejects_torsion():
    with pytest.raises(NotTorsionfree):
        embed_into_free([(X,)], 1, RING)


# --- Bourbaki ideals ------------------------------------------------------

def test_bourbaki_examples():
    B = generic_bourbaki_ideal(module("m+R"), seed=0)
    assert bourbaki_invariants(B.ideal)[:2] == (1, 2)
    assert is_contracted(B.ideal)
    assert generic_bourbaki_ideal(module("R2"), seed=0).ideal.is_unit()
    B = generic_bourbaki_ideal(module("m+m"), seed=0)
    o, nu, _, closed = bourbaki_invariants(B.ideal)
    assert (o, nu, closed) == (2, 3, True)
    assert is_contracted(B.ideal)


@pytest.mark.parametrize("name", sorted(MODULE_SUITE))
def test_bourbaki_paths_agree(name):
    M = module(name)
    o = order_module(M)
    contracted = is_contracted_module(M)
    paths = ["iterated", "minors"] + (["fitting"] if contracted else [])
    tuples = set()
    for path in paths:
        for seed in (0, 1):
            B = generic_bourbaki_ideal(M, seed=seed, path=path)
            inv = bourbaki_invariants(B.ideal, seed=seed)
            assert inv[0] == o
            if contracted:
                assert B.ideal.is_unit() or is_contracted(B.ideal)
            tuples.add(inv)
    assert len(tuples) == 1


def test_fitting_shortcut_needs_contracted_module():
    with pytest.raises(NotContracted):
        generic_bourbaki_ideal(module("twisted"), path="fitting")


def test_symbolic_bourbaki_ideal():
    B = generic_bourbaki_ideal(module("m+R"), mode="symbolic")
    assert B.ideal.ring.nvars == 2 + 3
    assert B.mode == "symbolic" and len(B.specialization) == 1
    R4 = FModule(RING, [tuple(ONE if i == j else ZERO for i in range(4)) for j in range(4)])
    with pytest.raises(ValueError):
        generic_bourbaki_ideal(R4, mode="symbolic")


def test_recorded_specialization_is_reproducible():
    a = generic_bourbaki_ideal(module("m+m"), seed=5)
    b = generic_bourbaki_ideal(module("m+m"), values=a.specialization)
    assert ideal_equal(a.ideal, b.ideal)
    assert a.to_dict()["seed"] == 5


# --- closedness -----------------------------------------------------------

def test_closed_module_examples():
    assert is_integrally_closed_module(module("m+m"))
    assert not is_integrally_closed_module(FModule.parse(RING, NOT_CLOSED_MODULE))
    assert is_integrally_closed_module(module("R3"))


@pytest.mark.parametrize("a,b", [("x^2, y^2", "x^3, y^2"), ("x^2 + y^3, x*y", "x, y^2")])
def test_sums_of_closed_ideals_are_closed(a, b):
    M = direct_sum(integral_closure_2d(I(a)), integral_closure_2d(I(b)))
    assert is_integrally_closed_module(M, seed=0)
    assert is_integrally_closed_module(M, seed=7)


def test_rank_one_modules_are_ideals():
    assert is_integrally_closed_module(FModule(RING, [(X * X,), (X * Y,), (Y * Y,)]))
    assert not is_integrally_closed_module(FModule(RING, [(X * X * Y,), (Y * Y * Y,)]))


# --- transforms -----------------------------------------------------------

def test_module_transform_example():
    xc = QuadraticChart.x_chart(RING)
    T = module_transform(module("m+R"), xc)
    S = xc.target
    expected = FModule.parse(S, [["x", "0"], ["x*t", "0"], ["0", "1"]])
    assert T.columns == expected.columns
    assert module_transform(module("R2"), xc).is_free_in_ambient()


@pytest.mark.parametrize("cols", [
    MODULE_SUITE["m2+R"],
    MODULE_SUITE["m+m"],
    [["x^3", "0"], ["x^2*y", "0"], ["y^2", "0"], ["0", "x"], ["0", "y"]],
])
@pytest.mark.parametrize("chart", ["x", "y"])
def test_transform_commutes_with_bourbaki_ideal(cols, chart):
    M = FModule.parse(RING, cols)
    ch = QuadraticChart.x_chart(RING) if chart == "x" else QuadraticChart.y_chart(RING)
    B = generic_bourbaki_ideal(M, seed=1).ideal
    left = origin_component(quadratic_transform(B, ch))
    right = generic_bourbaki_ideal(module_transform(M, ch), seed=1).ideal
    assert bourbaki_invariants(left) == bourbaki_invariants(right)
