import pytest
from hypothesis import given
from hypothesis import strategies as st

from courant_shla.cartan import (
    POISSON_DSTAR_SIGN,
    DiffForm,
    Multivector,
    apply_vector,
    bivector_eval,
    de_rham_d,
    interior_product,
    is_poisson,
    lie_derivative,
    one_form,
    pair,
    parse_components,
    schouten_bracket,
    sharp,
    vector_field,
    vf_bracket,
)
from courant_shla.poly import Poly, parse_poly

from conftest import SO3_PI, bivector, forms, multivectors, polys, two_form

N = 3


def x(i):
    return Poly.var(N, i - 1)


def dx(i):
    return one_form([1 if j == i else 0 for j in range(1, N + 1)], N)


def d_(i, c=1):
    return vector_field([c if j == i else 0 for j in range(1, N + 1)], N)


def f0(p):
    return DiffForm.scalar(p)


# exterior derivative ---------------------------------------------------------


def test_d_of_coordinate():
    assert de_rham_d(f0(x(1))).key() == dx(1).key()


def test_d_reorders_to_increasing_indices():
    omega = two_form({(1, 2): "x3"})
    assert de_rham_d(omega).key() == parse_components({(1, 2, 3): 1}, 3, N, DiffForm).key()


def test_d_of_constant_form_is_zero():
    assert de_rham_d(two_form({(1, 2): 1})).is_zero()


def test_d_of_top_form_is_empty():
    top = parse_components({(1, 2, 3): "x1"}, 3, N, DiffForm)
    out = de_rham_d(top)
    assert out.is_zero() and out.degree == 4


@pytest.mark.parametrize("k", [0, 1, 2])
def test_d_squared_zero(k):
    @given(forms(N, k, max_degree=3))
    def run(w):
        assert de_rham_d(de_rham_d(w)).is_zero()

    run()


# vector fields -----------------------------------------------------------------


def test_vf_bracket_examples():
    assert vf_bracket(d_(1), d_(2)).is_zero()
    assert vf_bracket(d_(1), d_(2, x(1))).key() == d_(2).key()


@given(multivectors(N, 1))
def test_vf_bracket_self_is_zero(X):
    assert vf_bracket(X, X).is_zero()


@given(multivectors(N, 1), multivectors(N, 1), polys(N))
def test_vf_bracket_is_commutator(X, Y, f):
    assert apply_vector(vf_bracket(X, Y), f) == apply_vector(X, apply_vector(Y, f)) - apply_vector(Y, apply_vector(X, f))


# Lie derivative and contraction --------------------------------------------------


def test_lie_derivative_examples():
    assert lie_derivative(d_(1), one_form([0, x(1), 0], N)).key() == dx(2).key()
    assert lie_derivative(d_(1), dx(2)).is_zero()
    X = vector_field(["x2", "x1*x3", "1"], N)
    f = parse_poly("x1*x2 + x3^2", N)
    assert lie_derivative(X, f0(f)).scalar_part() == apply_vector(X, f)


def test_interior_examples():
    assert interior_product(d_(1), dx(1)).scalar_part() == 1
    assert interior_product(d_(2), two_form({(1, 2): 1})).key() == (-dx(1)).key()
    assert interior_product(d_(1, x(2)), dx(1)).scalar_part() == x(2)
    with pytest.raises(ValueError):
        interior_product(d_(1), f0(x(1)))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_cartan_formula(k):
    @given(multivectors(N, 1), forms(N, k))
    def run(X, w):
        lhs = lie_derivative(X, w)
        rhs = interior_product(X, de_rham_d(w)) + de_rham_d(interior_product(X, w))
        assert (lhs - rhs).is_zero()
        if k >= 2:
            assert interior_product(X, interior_product(X, w)).is_zero()

    run()


@given(multivectors(N, 1), forms(N, 1), forms(N, 1))
def test_lie_derivative_of_wedge(X, a, b):
    lhs = lie_derivative(X, a.wedge(b))
    rhs = lie_derivative(X, a).wedge(b) + a.wedge(lie_derivative(X, b))
    assert (lhs - rhs).is_zero()


@given(multivectors(N, 1), multivectors(N, 1), st.integers(0, 2).flatmap(lambda k: forms(N, k)))
def test_lie_derivative_of_bracket(X, Y, w):
    lhs = lie_derivative(vf_bracket(X, Y), w)
    rhs = lie_derivative(X, lie_derivative(Y, w)) - lie_derivative(Y, lie_derivative(X, w))
    assert (lhs - rhs).is_zero()


# Schouten bracket -------------------------------------------------------------------------


def test_schouten_bivector_function():
    f = parse_poly("x1^2*x2 + x2*x3", N)
    P = bivector({(1, 2): 1})
    expect = vector_field([f.diff(1), -f.diff(0), 0], N)
    assert schouten_bracket(P, Multivector.scalar(f)).key() == expect.key()


@pytest.mark.parametrize("comps", [{(1, 2): 1}, SO3_PI, {(1, 2): "x3", (2, 3): 1}])
def test_poisson_examples(comps):
    pi = bivector(comps)
    assert schouten_bracket(pi, pi).is_zero()
    assert is_poisson(pi)


def test_non_poisson_example():
    pi = bivector({(1, 2): 1, (2, 3): "x2"})
    assert schouten_bracket(pi, pi).key() == parse_components({(1, 2, 3): 2}, 3, N).key()


mixed = st.integers(0, 3).flatmap(lambda k: multivectors(N, k, max_degree=2))


@given(mixed, mixed)
def test_schouten_graded_antisymmetry(P, Q):
    s = (-1) ** ((P.degree - 1) * (Q.degree - 1))
    assert (schouten_bracket(P, Q) + schouten_bracket(Q, P).scale(s)).is_zero()


@given(mixed, mixed, mixed)
def test_schouten_graded_jacobi(P, Q, R):
    def sgn(a, b):
        return (-1) ** ((a.degree - 1) * (b.degree - 1))

    total = (
        schouten_bracket(P, schouten_bracket(Q, R)).scale(sgn(P, R))
        + schouten_bracket(Q, schouten_bracket(R, P)).scale(sgn(Q, P))
        + schouten_bracket(R, schouten_bracket(P, Q)).scale(sgn(R, Q))
    )
    assert total.is_zero()


@given(mixed, mixed, mixed)
def test_schouten_leibniz(P, Q, R):
    lhs = schouten_bracket(P, Q.wedge(R))
    s = (-1) ** ((P.degree - 1) * Q.degree)
    rhs = schouten_bracket(P, Q).wedge(R) + Q.wedge(schouten_bracket(P, R)).scale(s)
    assert (lhs - rhs).is_zero()


@given(multivectors(N, 1), multivectors(N, 1), polys(N))
def test_schouten_extends_vector_calculus(X, Y, f):
    assert schouten_bracket(X, Y).key() == vf_bracket(X, Y).key()
    assert schouten_bracket(X, Multivector.scalar(f)).scalar_part() == apply_vector(X, f)


# sharp ------------------------------------------------------------------------------------


def test_sharp_examples():
    assert sharp(bivector({(1, 2): 1}), dx(1)).key() == d_(2).key()
    assert sharp(Multivector.zero(N, 2), dx(1)).is_zero()
    assert POISSON_DSTAR_SIGN in (1, -1)


@given(multivectors(N, 2), forms(N, 1), forms(N, 1))
def test_sharp_defining_identity(pi, a, b):
    assert pair(b, sharp(pi, a)) == bivector_eval(pi, a, b)
    assert pair(a, sharp(pi, a)).is_zero()
