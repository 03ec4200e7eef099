import pytest
from hypothesis import given
from hypothesis import strategies as st

from courant_shla.algebroid import (
    ConstructionError,
    LieAlgebroid,
    LieBialgebroidPair,
    algebroid_d,
    bialgebroid_compat_check,
    cotangent_bracket,
    lie_derivative_mixed,
    pair_dual,
    section_is_zero,
)
from courant_shla.cartan import POISSON_DSTAR_SIGN, Multivector, one_form, sharp
from courant_shla.poly import Poly, parse_poly

from conftest import SO3_PI, bivector, forms, sections

N = 3
SO3 = [[[1 if (i, j, k) in {(0, 1, 2), (1, 2, 0), (2, 0, 1)} else -1 if (i, j, k) in {(1, 0, 2), (2, 1, 0), (0, 2, 1)} else 0 for k in range(3)] for j in range(3)] for i in range(3)]
AFFINE = [[[0, 0], [0, 1]], [[0, -1], [0, 0]]]  # [e1, e2] = e2


def vec(*cs):
    return tuple(parse_poly(str(c), N) for c in cs)


ALGEBROIDS = {
    "tangent": lambda: LieAlgebroid.tangent(N),
    "zero_cotangent": lambda: LieAlgebroid.zero_bracket_cotangent(N),
    "poisson_const": lambda: LieAlgebroid.cotangent_poisson(bivector({(1, 2): 1})),
    "poisson_so3": lambda: LieAlgebroid.cotangent_poisson(bivector(SO3_PI)),
}
POINTS = {"so3": SO3, "affine": AFFINE}


def point_sections(m):
    from conftest import coefficients

    return st.lists(coefficients(), min_size=m, max_size=m).map(lambda cs: tuple(Poly.const(0, c) for c in cs))


# d_A on functions ---------------------------------------------------------------


def test_d_tangent_coordinate():
    assert algebroid_d(LieAlgebroid.tangent(N), parse_poly("x1", N)) == vec(1, 0, 0)


def test_d_point_algebra_vanishes():
    alg = LieAlgebroid.point_lie_algebra(SO3)
    assert section_is_zero(algebroid_d(alg, Poly.const(0, 5)))


def test_d_poisson_is_signed_sharp():
    pi = bivector({(1, 2): 1})
    got = algebroid_d(LieAlgebroid.cotangent_poisson(pi), parse_poly("x1", N))
    expect = sharp(pi, one_form([1, 0, 0], N)).scale(POISSON_DSTAR_SIGN).to_vector()
    assert got == expect == vec(0, -1, 0)


@pytest.mark.parametrize("name", ALGEBROIDS)
def test_d_pairs_with_anchor(name):
    alg = ALGEBROIDS[name]()

    @given(sections(N, N), forms(N, 0).map(lambda w: w.scalar_part()))
    def run(a, f):
        assert pair_dual(algebroid_d(alg, f), a) == alg.act(a, f)

    run()


# cotangent bracket -------------------------------------------------------------------


def test_cotangent_bracket_examples():
    pi = bivector({(1, 2): 1})
    dx1, dx2 = one_form([1, 0, 0], N), one_form([0, 1, 0], N)
    assert cotangent_bracket(pi, dx1, dx2).is_zero()
    assert cotangent_bracket(pi, dx1, one_form([0, "x1", 0], N)).is_zero()
    # so(3): [dx1, x1 dx2] = x1 d{x1, x2} + ({x1, x1}) dx2 = x1 dx3
    assert cotangent_bracket(bivector(SO3_PI), dx1, one_form([0, "x1", 0], N)).key() == one_form([0, 0, "x1"], N).key()


@given(forms(N, 1))
def test_cotangent_bracket_self_is_zero(a):
    assert cotangent_bracket(bivector(SO3_PI), a, a).is_zero()


def test_non_poisson_rejected():
    bad = bivector({(1, 2): 1, (2, 3): "x2"})
    with pytest.raises(ConstructionError):
        LieAlgebroid.cotangent_poisson(bad)
    with pytest.raises(ConstructionError):
        LieBialgebroidPair.poisson(bad)
    with pytest.raises(ConstructionError):
        cotangent_bracket(bad, one_form([1, 0, 0], N), one_form([0, 1, 0], N))


def test_point_algebra_validation():
    with pytest.raises(ConstructionError):
        LieAlgebroid.point_lie_algebra([[[0, 1], [0, 0]], [[0, 0], [0, 0]]])
    broken = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    broken[0][1] = [0, 0, 1]
    broken[1][0] = [0, 0, -1]
    broken[0][2] = [1, 0, 0]
    broken[2][0] = [-1, 0, 0]
    with pytest.raises(ConstructionError):
        LieAlgebroid.point_lie_algebra(broken)


# algebroid axioms ---------------------------------------------------------------------


@pytest.mark.parametrize("name", ALGEBROIDS)
def test_algebroid_axioms(name):
    alg = ALGEBROIDS[name]()

    @given(sections(N, N), sections(N, N), sections(N, N), forms(N, 0).map(lambda w: w.scalar_part()))
    def run(a, b, c, f):
        assert section_is_zero(alg.jacobiator(a, b, c))
        # anchor is a morphism of brackets
        for g in (f, parse_poly("x1*x2 - x3^2", N)):
            lhs = alg.act(alg.bracket(a, b), g)
            rhs = alg.act(a, alg.act(b, g)) - alg.act(b, alg.act(a, g))
            assert lhs == rhs
        # Leibniz
        fb = tuple(f * x for x in b)
        expect = tuple(f * x + alg.act(a, f) * y for x, y in zip(alg.bracket(a, b), b))
        assert alg.bracket(a, fb) == expect
        # d squared on functions and on dual 1-sections
        assert alg.d(alg.d(Multivector.scalar(f))).is_zero()
        assert alg.d(alg.d(Multivector.from_vector(c, N))).is_zero()

    run()


@pytest.mark.parametrize("name", POINTS)
def test_point_algebra_axioms(name):
    alg = LieAlgebroid.point_lie_algebra(POINTS[name])
    m = alg.rank

    @given(point_sections(m), point_sections(m), point_sections(m))
    def run(a, b, c):
        assert section_is_zero(alg.jacobiator(a, b, c))
        assert section_is_zero(tuple(x + y for x, y in zip(alg.bracket(a, b), alg.bracket(b, a))))

    run()


# mixed Lie derivative ---------------------------------------------------------------------


@pytest.mark.parametrize("name", ["poisson_const", "poisson_so3", "zero_cotangent"])
def test_mixed_lie_derivative_defining_identity(name):
    Ls = ALGEBROIDS[name]()

    @given(sections(N, N), sections(N, N), sections(N, N))
    def run(xi, X, eta):
        lhs = pair_dual(lie_derivative_mixed(Ls, xi, X), eta)
        rhs = Ls.act(xi, pair_dual(X, eta)) - pair_dual(X, Ls.bracket(xi, eta))
        assert lhs == rhs

    run()


def test_mixed_lie_derivative_point_is_coadjoint():
    Ls = LieAlgebroid.point_lie_algebra(SO3)
    for i in range(3):
        for j in range(3):
            xi, X = Ls.frame[i], Ls.frame[j]
            got = lie_derivative_mixed(Ls, xi, X)
            # ad*_xi X paired with e_k is -<X, [xi, e_k]>
            assert got == tuple(-pair_dual(X, Ls.bracket(xi, Ls.frame[k])) for k in range(3))


def test_mixed_lie_derivative_zero_structure():
    Ls = LieAlgebroid.zero_bracket_cotangent(N)
    assert section_is_zero(lie_derivative_mixed(Ls, vec("x1", 2, "x3^2"), vec("x2", 0, 1)))


# bialgebroid compatibility --------------------------------------------------------------


PAIRS = {
    "tangent_zero": lambda: LieBialgebroidPair.tangent_zero(N),
    "poisson_const": lambda: LieBialgebroidPair.poisson(bivector({(1, 2): 1})),
    "poisson_so3": lambda: LieBialgebroidPair.poisson(bivector(SO3_PI)),
}


@pytest.mark.parametrize("name", PAIRS)
def test_compat_vanishes(name):
    pair = PAIRS[name]()

    @given(sections(N, N), sections(N, N))
    def run(X, Y):
        assert bialgebroid_compat_check(pair, X, Y).is_zero()
        assert bialgebroid_compat_check(pair.swapped(), X, Y).is_zero()

    run()


def test_compat_detects_a_non_bialgebra():
    # so(3) with the so(3) bracket on its dual fails the cocycle condition
    pair = LieBialgebroidPair.lie_bialgebra(SO3, SO3)
    e = pair.A.frame
    defect = bialgebroid_compat_check(pair, e[0], e[1])
    assert str(defect) == "(1)*d1^d2"
