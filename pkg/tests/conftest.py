import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from courant_shla.cartan import DiffForm, Multivector, parse_components
from courant_shla.courant import Section
from courant_shla.generate import monomials, random_poly
from courant_shla.poly import Poly

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", 40)),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

SO3_PI = {(2, 3): "x1", (3, 1): "x2", (1, 2): "x3"}


def coefficients(small=5):
    ints = st.integers(-small, small)
    fracs = st.builds(Fraction, st.integers(-small, small), st.integers(1, 4))
    return st.one_of(ints, ints, fracs)


def polys(n, max_degree=2, max_terms=4):
    exps = st.sampled_from(monomials(n, max_degree))
    return st.dictionaries(exps, coefficients(), max_size=max_terms).map(lambda t: Poly(n, t))


def forms(n, k, cls=DiffForm, max_degree=2):
    from itertools import combinations

    idx = list(combinations(range(n), k))
    return st.lists(polys(n, max_degree, 3), min_size=len(idx), max_size=len(idx)).map(
        lambda cs: cls(n, n, k, dict(zip(idx, cs)))
    )


def multivectors(n, k, max_degree=2):
    return forms(n, k, Multivector, max_degree)


def sections(rank, n, max_degree=2):
    return st.lists(polys(n, max_degree, 3), min_size=rank, max_size=rank).map(Section)


def bivector(comps, n=3):
    return parse_components(comps, 2, n)


def two_form(comps, n=3):
    return parse_components(comps, 2, n, DiffForm)


@pytest.fixture
def rng():
    return random.Random(20240601)


def dense_section(C, rng, degree=2, coeff=3):
    return Section(random_poly(C.nvars, degree, coeff, rng) for _ in range(C.rank))


def dense_poly(n, rng, degree=2, coeff=3):
    return random_poly(n, degree, coeff, rng)

