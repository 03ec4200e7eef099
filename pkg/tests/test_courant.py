from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from courant_shla.algebroid import ConstructionError, LieBialgebroidPair
from courant_shla.cartan import POISSON_DSTAR_SIGN, one_form, sharp
from courant_shla.courant import (
    D_op,
    Section,
    T_op,
    bialgebroid_double,
    check_axiom,
    check_lemma_a1,
    check_lemma_a2,
    check_prop_main,
    double_bracket,
    drinfeld_double,
    is_zero_defect,
    jacobiator,
    lemma_a2_terms,
    pairing_pm,
    quadratic_lie_algebra,
    so3,
    standard_instance,
)
from courant_shla.poly import Poly, parse_poly

from conftest import SO3_PI, bivector, polys, sections

AFFINE = [[[0, 0], [0, 1]], [[0, -1], [0, 0]]]
ABELIAN2 = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]

INSTANCES = {
    "standard": lambda: standard_instance(3),
    "poisson_const": lambda: bialgebroid_double(LieBialgebroidPair.poisson(bivector({(1, 2): 1}))),
    "poisson_so3": lambda: bialgebroid_double(LieBialgebroidPair.poisson(bivector(SO3_PI))),
    "tangent_zero": lambda: bialgebroid_double(LieBialgebroidPair.tangent_zero(3)),
    "drinfeld": lambda: drinfeld_double(AFFINE, ABELIAN2),
    "so3": lambda: so3(),
}


def std_section(*coords, n=3):
    return Section(parse_poly(str(c), n) for c in coords)


def const_section(*coords):
    return Section(Poly.const(0, c) for c in coords)


def inst_sections(C, k, max_degree=2):
    return st.tuples(*[sections(C.rank, C.nvars, max_degree)] * k)


# pairing ------------------------------------------------------------------------------


def test_pairing_pm_examples():
    d1, dx1 = std_section(1, 0, 0, 0, 0, 0), std_section(0, 0, 0, 1, 0, 0)
    assert pairing_pm(d1, dx1, +1, 3) == Fraction(1, 2)
    assert pairing_pm(d1, dx1, -1, 3) == Fraction(-1, 2)
    X, Y = std_section("x1", 2, 0, 0, 0, 0), std_section(0, "x3", 1, 0, 0, 0)
    assert pairing_pm(X, Y, +1, 3).is_zero() and pairing_pm(X, Y, -1, 3).is_zero()


def test_pairing_must_be_symmetric_and_invertible():
    with pytest.raises(ConstructionError):
        quadratic_lie_algebra(ABELIAN2, [[1, 1], [0, 1]])
    with pytest.raises(ConstructionError):
        quadratic_lie_algebra(ABELIAN2, [[1, 1], [1, 1]])


# D ------------------------------------------------------------------------------------


def test_D_examples():
    C = standard_instance(3)
    assert D_op(C, parse_poly("x1", 3)) == std_section(0, 0, 0, 1, 0, 0)
    assert D_op(so3(), Poly.const(0, 7)).is_zero()
    pi = bivector({(1, 2): 1})
    P = bialgebroid_double(LieBialgebroidPair.poisson(pi))
    vec = sharp(pi, one_form([1, 0, 0], 3)).scale(POISSON_DSTAR_SIGN).to_vector()
    assert D_op(P, parse_poly("x1", 3)) == Section(vec + (Poly.const(3, 1), Poly.zero(3), Poly.zero(3)))
    assert D_op(P, parse_poly("x1", 3)) == std_section(0, -1, 0, 1, 0, 0)


@pytest.mark.parametrize("name", INSTANCES)
def test_D_defining_identity(name):
    C = INSTANCES[name]()

    @given(sections(C.rank, C.nvars), polys(C.nvars))
    def run(e, f):
        assert C.pairing(C.D(f), e) == C.act(e, f).scale(Fraction(1, 2))

    run()


# brackets ---------------------------------------------------------------------------------


def test_standard_bracket_example():
    C = standard_instance(3)
    got = C.bracket(std_section(1, 0, 0, 0, 0, 0), std_section(0, 0, 0, 0, "x1", 0))
    assert got == std_section(0, 0, 0, 0, 1, 0)


def test_standard_matches_double_of_tangent_zero():
    C, Dd = INSTANCES["standard"](), INSTANCES["tangent_zero"]()

    @given(inst_sections(C, 2))
    def run(es):
        assert C.bracket(*es) == Dd.bracket(*es)

    run()


def test_drinfeld_bracket_is_the_classical_double():
    pair = LieBialgebroidPair.lie_bialgebra(AFFINE, [[[0, 0], [1, 0]], [[-1, 0], [0, 0]]])
    g, gs = pair.A, pair.A_star
    m = 2

    def coad(L, a, xi):
        # <ad*_a xi, b> = -<xi, [a, b]>
        return tuple(-sum((x * y for x, y in zip(xi, L.bracket(a, L.frame[k]))), Poly.zero(0)) for k in range(m))

    def add(*vs):
        return tuple(sum(c, Poly.zero(0)) for c in zip(*vs))

    def neg(v):
        return tuple(-c for c in v)

    frame = [const_section(*[int(i == j) for j in range(2 * m)]) for i in range(2 * m)]
    for e1 in frame:
        for e2 in frame:
            X1, x1 = e1.split(m)
            X2, x2 = e2.split(m)
            vec = add(g.bracket(X1, X2), coad(gs, x1, X2), neg(coad(gs, x2, X1)))
            cov = add(gs.bracket(x1, x2), coad(g, X1, x2), neg(coad(g, X2, x1)))
            assert double_bracket(pair, e1, e2) == Section(vec + cov)


@pytest.mark.parametrize("name", INSTANCES)
def test_bracket_antisymmetric(name):
    C = INSTANCES[name]()

    @given(inst_sections(C, 2))
    def run(es):
        e1, e2 = es
        assert (C.bracket(e1, e2) + C.bracket(e2, e1)).is_zero()
        assert C.bracket(e1, e1).is_zero()

    run()


# T and the Jacobiator -------------------------------------------------------------------


def test_T_examples():
    S = so3()
    e1, e2, e3 = S.frame
    assert T_op(S, e1, e2, e3) == 1
    C = standard_instance(3)
    consts = C.frame
    for a in consts:
        for b in consts:
            for c in consts:
                assert T_op(C, a, b, c).is_zero()


@pytest.mark.parametrize("name", INSTANCES)
def test_T_and_J_vanish_on_repeated_argument(name):
    C = INSTANCES[name]()

    @settings(max_examples=15)
    @given(inst_sections(C, 2))
    def run(es):
        e, e3 = es
        assert T_op(C, e, e, e3).is_zero()
        assert jacobiator(C, e, e, e3).is_zero()

    run()


@pytest.mark.parametrize("name", ["so3", "drinfeld"])
def test_quadratic_jacobiator_vanishes(name):
    C = INSTANCES[name]()

    @given(inst_sections(C, 3))
    def run(es):
        assert jacobiator(C, *es).is_zero()

    run()


# axioms -------------------------------------------------------------------------------------


def test_axiom_examples():
    C = standard_instance(3)
    x1, x2 = parse_poly("x1", 3), parse_poly("x2", 3)
    assert is_zero_defect(check_axiom(C, 4, functions=[x1, x2]))
    S = so3()
    assert is_zero_defect(check_axiom(S, 2, S.frame[:2]))
    d1, dx1 = std_section(1, 0, 0, 0, 0, 0), std_section(0, 0, 0, 1, 0, 0)
    assert is_zero_defect(check_axiom(C, 3, [d1, dx1], [x2]))


def test_axiom_arity():
    C = standard_instance(3)
    with pytest.raises(ValueError):
        check_axiom(C, 1, C.frame[:2])
    with pytest.raises(ValueError):
        check_axiom(C, 6)


def test_prop_main_examples():
    C = standard_instance(3)
    g = parse_poly("x1*x3 - x2^2", 3)
    f = parse_poly("x1*x2", 3)
    assert check_prop_main(C, C.D(g), f).is_zero()
    assert check_prop_main(C, std_section("x2", 0, 0, 0, 0, 0), f).is_zero()
    S = so3()
    assert check_prop_main(S, S.frame[0], Poly.const(0, 3)).is_zero()


def test_lemma_examples():
    S = so3()
    e = S.frame
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    J, K = lemma_a2_terms(S, e[a], e[b], e[c], e[d])
                    assert J.is_zero() and K.is_zero()
    C = standard_instance(3)
    for a in C.frame:
        for b in C.frame:
            assert check_lemma_a1(C, a, b, parse_poly("x1^2*x3", 3)).is_zero()


@pytest.mark.parametrize("name", INSTANCES)
def test_courant_identities(name):
    C = INSTANCES[name]()
    n = C.nvars

    @settings(max_examples=12)
    @given(inst_sections(C, 4), polys(n), polys(n))
    def run(es, f, g):
        e1, e2, e3, e4 = es
        assert is_zero_defect(check_axiom(C, 1, [e1, e2, e3]))
        assert is_zero_defect(check_axiom(C, 2, [e1, e2]))
        assert is_zero_defect(check_axiom(C, 3, [e1, e2], [f]))
        assert is_zero_defect(check_axiom(C, 4, functions=[f, g]))
        assert is_zero_defect(check_axiom(C, 5, [e1, e2, e3]))
        assert check_prop_main(C, e1, f).is_zero()
        assert check_lemma_a1(C, e1, e2, f).is_zero()
        assert check_lemma_a2(C, e1, e2, e3, e4).is_zero()

    run()


# Drinfeld doubles -----------------------------------------------------------------------------


def test_abelian_double():
    C = drinfeld_double(ABELIAN2, ABELIAN2)
    e = C.frame
    assert all(C.bracket(a, b).is_zero() for a in e for b in e)
    half = Fraction(1, 2)
    assert C.G == [[0, 0, half, 0], [0, 0, 0, half], [half, 0, 0, 0], [0, half, 0, 0]]


def test_affine_double():
    C = drinfeld_double(AFFINE, ABELIAN2)
    assert C.rank == 4
    e = C.frame
    for a in e:
        for b in e:
            for c in e:
                assert jacobiator(C, a, b, c).is_zero()
                assert check_axiom(C, 5, [a, b, c]).is_zero()


def test_invalid_bialgebra_rejected():
    s = so3().structure
    with pytest.raises(ConstructionError):
        drinfeld_double(s, s)


def test_mutations_are_validated():
    with pytest.raises(ValueError):
        standard_instance(3, mutations=["no_such_fault"])
