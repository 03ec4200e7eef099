"""The three-term resolution of a Courant algebroid and its L-infinity structure.

    X_2 = ker D  --inclusion-->  X_1 = functions  --D-->  X_0 = sections

Degrees are homological (X_i in degree i); l_k has degree k-2. Nonzero
structure maps:

    l1 = inclusion on X_2, D on X_1
    l2(e1 ^ e2) = [e1, e2],   l2(e ^ f) = <e, D f>
    l3(e1 ^ e2 ^ e3) = -T(e1, e2, e3)

Over R^n, D f = 0 forces f constant, so X_2 is the constants; over a point
D = 0 and X_2 = X_1 = the scalars. Membership is checked on construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .courant import CourantInstance, Section
from .graded import GradedSum, compose
from .poly import Poly, format_poly


class ResolutionError(ValueError):
    pass


class ResElement:
    __slots__ = ("degree", "payload")

    def __init__(self, degree: int, payload):
        self.degree = degree
        self.payload = payload

    def sort_key(self):
        return self.payload.key()

    def is_zero(self) -> bool:
        return self.payload.is_zero()

    def __eq__(self, other):
        return isinstance(other, ResElement) and self.degree == other.degree and self.payload == other.payload

    def __hash__(self):
        return hash((self.degree, self.sort_key()))

    def __repr__(self):
        tag = "ecx"[self.degree] if 0 <= self.degree <= 2 else f"d{self.degree}"
        body = format_poly(self.payload) if isinstance(self.payload, Poly) else str(self.payload)
        return f"{tag}<{body}>"


class Resolution:
    """Structure maps l_1, l_2, l_3 on the resolution of a Courant instance."""

    def __init__(self, C: CourantInstance):
        self.C = C

    # elements ---------------------------------------------------------------

    def section(self, e: Section) -> ResElement:
        if len(e) != self.C.rank:
            raise ResolutionError("section has the wrong rank")
        return ResElement(0, e)

    def function(self, f: Poly) -> ResElement:
        return ResElement(1, f)

    def kernel(self, c: Poly) -> ResElement:
        if not self.C.D(c).is_zero():
            raise ResolutionError(f"{format_poly(c)} is not in ker D")
        return ResElement(2, c)

    def in_kernel(self, f: Poly) -> bool:
        return self.C.D(f).is_zero()

    # structure maps ----------------------------------------------------------------

    def l1(self, args: Sequence[ResElement]):
        (x,) = args
        if x.degree == 2:
            return ResElement(1, x.payload)
        if x.degree == 1:
            return ResElement(0, self.C.D(x.payload))
        return None

    def l2(self, args: Sequence[ResElement]):
        x, y = args
        dx, dy = x.degree, y.degree
        if dx == 0 and dy == 0:
            return ResElement(0, self.C.bracket(x.payload, y.payload))
        if dx == 0 and dy == 1:
            return ResElement(1, self.C.pairing(x.payload, self.C.D(y.payload)))
        if dx == 1 and dy == 0:
            return ResElement(1, -self.C.pairing(y.payload, self.C.D(x.payload)))
        return None

    def l3(self, args: Sequence[ResElement]):
        x, y, z = args
        if x.degree == 0 and y.degree == 0 and z.degree == 0:
            return ResElement(1, -self.C.T(x.payload, y.payload, z.payload))
        return None

    def structure_map(self, k: int):
        return {1: self.l1, 2: self.l2, 3: self.l3}.get(k)

    # identities ----------------------------------------------------------------------

    def shla_terms(self, n: int, word: Sequence[ResElement]) -> list[tuple[int, int, GradedSum]]:
        """(i, j, (-1)**(i(j-1)) l_j l_i (word)) for each i + j = n + 1 with both maps nonzero."""
        if len(word) != n:
            raise ValueError("word length must equal n")
        out = []
        for i in range(1, n + 1):
            j = n + 1 - i
            li, lj = self.structure_map(i), self.structure_map(j)
            if li is None or lj is None:
                continue
            part = compose(lj, j, li, i, word)
            if (i * (j - 1)) & 1:
                neg = GradedSum()
                neg.add_sum(part, -1)
                part = neg
            out.append((i, j, part))
        return out

    def shla_defect(self, n: int, word: Sequence[ResElement]) -> GradedSum:
        """sum_{i+j=n+1} (-1)**(i(j-1)) l_j l_i applied to the word, summed to elements."""
        total = GradedSum()
        for _, _, part in self.shla_terms(n, word):
            total.add_sum(part)
        return collapse(total)


def collapse(gs: GradedSum) -> GradedSum:
    """Sum the length-1 words of ``gs`` into one element per degree."""
    summed = gs.collapse(
        add=lambda a, b: ResElement(a.degree, a.payload + b.payload),
        scale=lambda x, c: ResElement(x.degree, x.payload.scale(c) if c != 1 else x.payload),
    )
    out = GradedSum()
    for deg in sorted(summed):
        el = summed[deg]
        if not el.is_zero():
            out.add(Fraction(1), (el,))
    return out


def l1(R: Resolution, x: ResElement):
    return R.l1((x,))


def l2(R: Resolution, x: ResElement, y: ResElement):
    return R.l2((x, y))


def l3(R: Resolution, x: ResElement, y: ResElement, z: ResElement):
    return R.l3((x, y, z))


def shla_defect(R: Resolution, n: int, word: Sequence[ResElement]) -> GradedSum:
    return R.shla_defect(n, word)
