"""Dirac subbundles of a Courant instance.

A candidate is given by a global frame of sections. Isotropy is checked on
frame pairs; integrability of a maximal isotropic L uses L = L^perp, so
[s_i, s_j] lies in L iff it pairs to zero with every s_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import cartan
from .algebroid import ConstructionError, LieAlgebroid, LieBialgebroidPair
from .cartan import DiffForm, Multivector
from .courant import CourantInstance, Section, _invert
from .poly import Poly, format_poly


@dataclass(frozen=True)
class Witnessed:
    """A boolean verdict, with the first failing index tuple and value when false."""

    ok: bool
    where: tuple = ()
    value: Poly | None = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"at {tuple(i + 1 for i in self.where)}: {format_poly(self.value)}"


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


class DiracCandidate:
    def __init__(self, C: CourantInstance, frame: Sequence[Section], name: str = ""):
        self.C = C
        self.frame = tuple(s if isinstance(s, Section) else C.section(s) for s in frame)
        self.name = name
        for s in self.frame:
            if len(s) != C.rank:
                raise ConstructionError(f"frame section has rank {len(s)}, bundle has rank {C.rank}")
        if self.frame:
            lead = [[c.terms().get((0,) * C.nvars, Fraction(0)) for c in s] for s in self.frame]
            if _rank(lead) < len(self.frame):
                raise ConstructionError("frame is not pointwise independent (constant parts are dependent)")

    @property
    def rank(self) -> int:
        return len(self.frame)

    def __repr__(self):
        return f"DiracCandidate({self.name or '?'}, rank={self.rank})"


def is_isotropic(L: DiracCandidate) -> Witnessed:
    """All frame pairings vanish and rank is half the bundle rank."""
    C, fr = L.C, L.frame
    for i in range(len(fr)):
        for j in range(i, len(fr)):
            v = C.pairing(fr[i], fr[j])
            if v:
                return Witnessed(False, (i, j), v)
    if 2 * L.rank != C.rank:
        return Witnessed(False, (), Poly.const(C.nvars, L.rank))
    return Witnessed(True)


def is_integrable(L: DiracCandidate) -> Witnessed:
    """<[s_i, s_j], s_k> = 0 for every frame triple."""
    iso = is_isotropic(L)
    if not iso:
        raise ConstructionError(f"candidate is not maximally isotropic ({iso.describe()})")
    C, fr = L.C, L.frame
    r = len(fr)
    for i in range(r):
        for j in range(i + 1, r):
            b = C.bracket(fr[i], fr[j])
            for k in range(r):
                v = C.pairing(b, fr[k])
                if v:
                    return Witnessed(False, (i, j, k), v)
    return Witnessed(True)


def is_dirac(L: DiracCandidate) -> bool:
    return bool(is_isotropic(L)) and bool(is_integrable(L))


# -- standard candidates on TM + T*M -----------------------------------------------


def _split_n(C: CourantInstance) -> int:
    if C.split_rank is None or C.split_rank != C.nvars or C.rank != 2 * C.nvars:
        raise ConstructionError("graphs need an instance of the form TM + T*M")
    return C.nvars


def tangent_subbundle(C: CourantInstance) -> DiracCandidate:
    n = _split_n(C)
    one, z = Poly.const(n, 1), Poly.zero(n)
    return DiracCandidate(C, [Section(one if j == i else z for j in range(2 * n)) for i in range(n)], "TM")


def cotangent_subbundle(C: CourantInstance) -> DiracCandidate:
    n = _split_n(C)
    one, z = Poly.const(n, 1), Poly.zero(n)
    return DiracCandidate(C, [Section(one if j == n + i else z for j in range(2 * n)) for i in range(n)], "T*M")


def graph_2form(C: CourantInstance, omega: DiffForm) -> DiracCandidate:
    """Frame d_i + i_{d_i} omega."""
    n = _split_n(C)
    if omega.degree != 2 or omega.rank != n:
        raise ConstructionError("graph_2form needs a 2-form on the base")
    frame = []
    for i in range(n):
        X = cartan.vector_field([1 if j == i else 0 for j in range(n)], n)
        xi = cartan.interior_product(X, omega).to_vector()
        frame.append(Section(X.to_vector() + xi))
    return DiracCandidate(C, frame, "graph(omega)")


def graph_bivector(C: CourantInstance, pi: Multivector) -> DiracCandidate:
    """Frame dx^i + sharp(pi) dx^i."""
    n = _split_n(C)
    if pi.degree != 2 or pi.rank != n:
        raise ConstructionError("graph_bivector needs a bivector on the base")
    frame = []
    for i in range(n):
        a = cartan.one_form([1 if j == i else 0 for j in range(n)], n)
        frame.append(Section(cartan.sharp(pi, a).to_vector() + a.to_vector()))
    return DiracCandidate(C, frame, "graph(pi)")


# -- extraction of a bialgebroid from a transversal Dirac pair -----------------------


def _cross_matrix(L1: DiracCandidate, L2: DiracCandidate) -> list[list[Fraction]]:
    C = L1.C
    M = []
    for s in L1.frame:
        row = []
        for t in L2.frame:
            v = C.pairing(s, t).scale(2)
            if not v.is_constant():
                raise ConstructionError("cross pairing 2<L1, L2> is not constant on the given frames")
            row.append(v.constant_value())
        M.append(row)
    return M


def _combine(C: CourantInstance, frame, coeffs) -> Section:
    out = C.zero()
    for c, s in zip(coeffs, frame):
        if c:
            out = out + s.scale(c)
    return out


def _restriction(C: CourantInstance, frame, dual_frame, name) -> LieAlgebroid:
    """Bracket and anchor of C restricted to span(frame), coordinates read off by 2<., dual_frame>."""
    r = len(frame)

    def coords(s: Section) -> tuple:
        return tuple(C.pairing(s, t).scale(2) for t in dual_frame)

    def bracket(a, b):
        return coords(C.bracket(_combine(C, frame, a), _combine(C, frame, b)))

    def anchor(a):
        return C.anchor(_combine(C, frame, a))

    alg = LieAlgebroid("dirac_restriction", C.nvars, r, bracket, anchor, data=name)
    return alg


def extract_bialgebroid(L1: DiracCandidate, L2: DiracCandidate) -> LieBialgebroidPair:
    """(L1, L2) with L2 identified with L1* through 2<., .>.

    L2's frame is replaced by the dual frame c'_j = sum_k c_k (M^-1)_kj with
    M_ij = 2<b_i, c_j>, so the returned pair uses dual global frames.
    """
    if L1.C is not L2.C:
        raise ConstructionError("candidates live in different instances")
    C = L1.C
    for L in (L1, L2):
        iso = is_isotropic(L)
        if not iso:
            raise ConstructionError(f"{L.name or 'candidate'} is not maximally isotropic ({iso.describe()})")
        integ = is_integrable(L)
        if not integ:
            raise ConstructionError(f"{L.name or 'candidate'} is not integrable ({integ.describe()})")
    M = _cross_matrix(L1, L2)
    try:
        Minv = _invert(M)
    except ConstructionError:
        raise ConstructionError("subbundles are not transversal") from None
    r = L1.rank
    dual = tuple(_combine(C, L2.frame, [Minv[k][j] for k in range(r)]) for j in range(r))
    A = _restriction(C, L1.frame, dual, L1.name)
    A_star = _restriction(C, dual, L1.frame, L2.name)
    pair = LieBialgebroidPair(A, A_star, name=f"{L1.name or 'L1'}/{L2.name or 'L2'}")
    pair.ambient = C
    pair.frames = (L1.frame, dual)
    return pair


def to_split(pair: LieBialgebroidPair, e: Section) -> Section:
    """Coordinates of an ambient section in the frame (b_i, c'_j) of an extracted pair."""
    b, c = pair.frames
    C = pair.ambient
    return Section(tuple(C.pairing(e, t).scale(2) for t in c) + tuple(C.pairing(e, s).scale(2) for s in b))


def from_split(pair: LieBialgebroidPair, e: Section) -> Section:
    b, c = pair.frames
    C = pair.ambient
    r = pair.rank
    return _combine(C, b, e.coords[:r]) + _combine(C, c, e.coords[r:])


def roundtrip_defect(pair: LieBialgebroidPair, double: CourantInstance, e1: Section, e2: Section) -> Section:
    """Ambient [e1,e2] minus the double's bracket transported back to the ambient frame."""
    C = pair.ambient
    got = from_split(pair, double.bracket(to_split(pair, e1), to_split(pair, e2)))
    return C.bracket(e1, e2) - got
