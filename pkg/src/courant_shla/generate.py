"""Seeded random polynomials, sections and resolution words.

Every trial gets its own ``random.Random`` seeded from a sha256 digest of
(seed, instance, check, trial), so any single trial can be replayed without
running the ones before it.
"""

from __future__ import annotations

import hashlib
import random
from itertools import product

from .courant import CourantInstance, Section
from .poly import Poly


def trial_rng(seed: int, instance: str, check: str, trial: int) -> random.Random:
    h = hashlib.sha256(f"{seed}\x00{instance}\x00{check}\x00{trial}".encode()).digest()
    return random.Random(int.from_bytes(h[:16], "big"))


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree <= degree, by degree then lexicographically."""
    out = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) <= degree]
    out.sort(key=lambda e: (sum(e), e))
    return out


def random_poly(nvars: int, degree: int, coeff: int, rng: random.Random) -> Poly:
    """Dense polynomial: every monomial of total degree <= degree gets an integer in [-coeff, coeff]."""
    if degree < 0 or coeff < 0:
        raise ValueError("bounds must be >= 0")
    return Poly(nvars, {e: rng.randint(-coeff, coeff) for e in monomials(nvars, degree)})


def random_section(C: CourantInstance, degree: int, coeff: int, rng: random.Random) -> Section:
    return Section(random_poly(C.nvars, degree, coeff, rng) for _ in range(C.rank))


def random_vector(rank: int, nvars: int, degree: int, coeff: int, rng: random.Random) -> tuple:
    return tuple(random_poly(nvars, degree, coeff, rng) for _ in range(rank))


def random_word(R, n: int, degree: int, coeff: int, rng: random.Random) -> list:
    """n resolution elements with degrees drawn uniformly from {0, 1, 2}.

    Degree-2 elements are nonzero constants (ker D in every shipped instance).
    """
    C = R.C
    word = []
    for _ in range(n):
        d = rng.randrange(3)
        if d == 0:
            word.append(R.section(random_section(C, degree, coeff, rng)))
        elif d == 1:
            word.append(R.function(random_poly(C.nvars, degree, coeff, rng)))
        else:
            c = rng.randint(1, max(coeff, 1)) * rng.choice((-1, 1))
            word.append(R.kernel(Poly.const(C.nvars, c)))
    return word
