import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from courant_shla.algebroid import LieBialgebroidPair
from courant_shla.courant import bialgebroid_double, drinfeld_double, so3, standard_instance
from courant_shla.generate import random_poly, random_word
from courant_shla.graded import GradedSum
from courant_shla.linfty import Resolution, ResolutionError, collapse, l1, l2, l3, shla_defect
from courant_shla.poly import Poly, parse_poly

from conftest import SO3_PI, bivector, dense_section, polys

STD = standard_instance(3)
R = Resolution(STD)

INSTANCES = {
    "standard": lambda: STD,
    "poisson_const": lambda: bialgebroid_double(LieBialgebroidPair.poisson(bivector({(1, 2): 1}))),
    "poisson_so3": lambda: bialgebroid_double(LieBialgebroidPair.poisson(bivector(SO3_PI))),
    "drinfeld": lambda: drinfeld_double([[[0, 0], [0, 1]], [[0, -1], [0, 0]]], [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]),
    "so3": lambda: so3(),
}


def sec(*coords):
    return R.section(STD.section(coords))


def fn(text):
    return R.function(parse_poly(text, 3))


def polys_dense(rng):
    return random_poly(3, 2, 3, rng)


def partial(R, word, pairs):
    total = GradedSum()
    for i, j, part in R.shla_terms(len(word), word):
        if (i, j) in pairs:
            total.add_sum(part)
    return collapse(total)


# structure maps ---------------------------------------------------------------------


def test_l1_examples():
    out = l1(R, fn("x1"))
    assert out.degree == 0 and out.payload == STD.section([0, 0, 0, 1, 0, 0])
    c = R.kernel(Poly.const(3, 5))
    assert l1(R, c).degree == 1 and l1(R, c).payload == 5
    assert l1(R, l1(R, c)).is_zero()
    assert l1(R, sec(1, 0, 0, 0, 0, 0)) is None


def test_kernel_membership_is_checked():
    with pytest.raises(ResolutionError):
        R.kernel(parse_poly("x1", 3))
    assert R.in_kernel(Poly.const(3, -2))


@given(polys(3))
def test_kernel_is_the_constants(f):
    assert R.in_kernel(f) == f.is_constant()


def test_l2_examples():
    d1, d2 = sec(1, 0, 0, 0, 0, 0), sec(0, 1, 0, 0, 0, 0)
    assert l2(R, d1, d2).is_zero()
    v = l2(R, d1, fn("x1"))
    assert v.degree == 1 and v.payload == Fraction(1, 2)
    c = R.kernel(Poly.const(3, 1))
    assert l2(R, fn("x1"), fn("x2")) is None
    assert l2(R, c, d1) is None


def test_l2_graded_antisymmetry():
    rng = random.Random(3)
    for _ in range(10):
        e, f = R.section(dense_section(STD, rng)), R.function(polys_dense(rng))
        assert l2(R, f, e).payload == -l2(R, e, f).payload
        e2 = R.section(dense_section(STD, rng))
        assert l2(R, e, e2).payload == -l2(R, e2, e).payload


def test_l3_examples():
    S = so3()
    RS = Resolution(S)
    e1, e2, e3 = (RS.section(e) for e in S.frame)
    v = l3(RS, e1, e2, e3)
    assert v.degree == 1 and v.payload == -1
    assert l3(RS, e1, e2, RS.function(Poly.const(0, 1))) is None
    assert l3(RS, e1, e2, RS.kernel(Poly.const(0, 1))) is None
    assert l3(RS, e1, e1, e3).is_zero()


# the relations ------------------------------------------------------------------------


def test_relation_n1_on_kernel():
    assert shla_defect(R, 1, [R.kernel(Poly.const(3, 4))]).is_zero()


def test_lemma_partial_sums():
    rng = random.Random(11)
    for _ in range(3):
        e1, e2 = (R.section(dense_section(STD, rng)) for _ in range(2))
        f = R.function(polys_dense(rng))
        assert partial(R, [e1, e2, f], {(2, 2), (1, 3)}).is_zero()
        es = [R.section(dense_section(STD, rng)) for _ in range(4)]
        assert partial(R, es, {(2, 3), (3, 2)}).is_zero()


def test_partial_sums_are_not_trivially_zero():
    # each half of the lemma is nonzero on its own
    rng = random.Random(5)
    e1, e2 = (R.section(dense_section(STD, rng)) for _ in range(2))
    f = R.function(polys_dense(rng))
    assert not partial(R, [e1, e2, f], {(2, 2)}).is_zero()
    assert not partial(R, [e1, e2, f], {(1, 3)}).is_zero()


@pytest.mark.parametrize("name", INSTANCES)
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_shla_relations(name, n):
    C = INSTANCES[name]()
    RC = Resolution(C)

    @settings(max_examples=8 if n < 4 else 4)
    @given(st.randoms(use_true_random=False))
    def run(rnd):
        word = random_word(RC, n, 1 if n == 5 else 2, 3, rnd)
        assert shla_defect(RC, n, word).is_zero()

    run()


@pytest.mark.parametrize("name", INSTANCES)
def test_l1_l3_is_minus_jacobiator(name):
    C = INSTANCES[name]()
    RC = Resolution(C)
    rng = random.Random(2)
    for _ in range(3):
        es = [dense_section(C, rng) for _ in range(3)]
        val = RC.l1((RC.l3(tuple(RC.section(e) for e in es)),))
        assert (val.payload + C.jacobiator(*es)).is_zero()


@given(polys(3), st.integers(-3, 3))
def test_l1_squared_vanishes(f, c):
    assert l1(R, l1(R, R.function(f))) is None
    assert l1(R, l1(R, R.kernel(Poly.const(3, c)))).is_zero()


def test_relation_n2_on_low_words():
    rng = random.Random(8)
    for _ in range(5):
        e = R.section(dense_section(STD, rng))
        f, g = R.function(polys_dense(rng)), R.function(polys_dense(rng))
        c = R.kernel(Poly.const(3, rng.randint(1, 3)))
        for word in ([e, f], [f, g], [c, e], [c, f], [e, R.section(dense_section(STD, rng))]):
            assert shla_defect(R, 2, word).is_zero()
