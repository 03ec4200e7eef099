"""Lie algebroids over R^n (or a point) and Lie bialgebroid pairs.

Sections are tuples of :class:`Poly` coordinates in the algebroid's global
frame e_0..e_{r-1}; dual sections use the dual frame. Multisections of the
exterior powers of L (or L*) are :class:`Multivector` objects of that rank.

The bracket of each kind is closed-form. Everything derived from it
(differential on the dual exterior algebra, Schouten bracket, Lie derivative
on dual sections) goes through the frame structure functions
c_ij = [e_i, e_j] and anchors rho(e_i), computed once and cached.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Callable, Sequence

from . import cartan
from .cartan import DiffForm, Multivector, sort_indices
from .poly import Poly

Section = tuple  # tuple[Poly, ...]


class ConstructionError(ValueError):
    """Raised when declared data does not define the requested structure."""


def zero_section(rank: int, nvars: int) -> Section:
    z = Poly.zero(nvars)
    return (z,) * rank


def add_sections(a: Section, b: Section) -> Section:
    return tuple(x + y for x, y in zip(a, b))


def sub_sections(a: Section, b: Section) -> Section:
    return tuple(x - y for x, y in zip(a, b))


def scale_section(f, a: Section) -> Section:
    if isinstance(f, Poly):
        return tuple(f * x for x in a)
    return tuple(x.scale(f) for x in a)


def pair_dual(xi: Section, x: Section) -> Poly:
    if not x:
        return None
    return Poly.dot(x[0].nvars, list(zip(xi, x)))


def section_is_zero(a: Section) -> bool:
    return all(x.is_zero() for x in a)


class LieAlgebroid:
    """One of the shipped algebroid kinds.

    kinds: ``tangent``, ``zero_bracket_cotangent``, ``cotangent_poisson``,
    ``point_lie_algebra`` and ``dirac_restriction`` (built by :mod:`dirac`).
    """

    def __init__(self, kind: str, nvars: int, rank: int, bracket: Callable, anchor: Callable, data=None):
        self.kind = kind
        self.nvars = nvars
        self.rank = rank
        self._bracket = bracket
        self._anchor = anchor
        self.data = data

    # constructors -----------------------------------------------------------

    @classmethod
    def tangent(cls, n: int) -> "LieAlgebroid":
        def bracket(a, b):
            return cartan.vf_bracket(Multivector.from_vector(a, n), Multivector.from_vector(b, n)).to_vector()

        return cls("tangent", n, n, bracket, lambda a: tuple(a))

    @classmethod
    def zero_bracket_cotangent(cls, n: int) -> "LieAlgebroid":
        z = zero_section(n, n)
        return cls("zero_bracket_cotangent", n, n, lambda a, b: z, lambda a: z)

    @classmethod
    def cotangent_poisson(cls, pi: Multivector) -> "LieAlgebroid":
        n = pi.rank
        if pi.degree != 2:
            raise ConstructionError("Poisson structure must be a bivector")
        defect = cartan.schouten_bracket(pi, pi)
        if not defect.is_zero():
            raise ConstructionError(f"bivector is not Poisson: [pi,pi] = {defect}")

        def anchor(alpha):
            return cartan.sharp(pi, DiffForm.from_vector(alpha, n)).to_vector()

        def bracket(alpha, beta):
            return cotangent_bracket(pi, DiffForm.from_vector(alpha, n), DiffForm.from_vector(beta, n)).to_vector()

        return cls("cotangent_poisson", n, n, bracket, anchor, data=pi)

    @classmethod
    def point_lie_algebra(cls, structure: Sequence[Sequence[Sequence]]) -> "LieAlgebroid":
        """``structure[i][j][k]`` is the coefficient of e_k in [e_i, e_j]."""
        m = len(structure)
        consts = [[tuple(Poly.const(0, structure[i][j][k]) for k in range(m)) for j in range(m)] for i in range(m)]
        for i in range(m):
            for j in range(m):
                if any(consts[i][j][k] + consts[j][i][k] for k in range(m)):
                    raise ConstructionError(f"structure constants not antisymmetric at ({i + 1},{j + 1})")

        def bracket(a, b):
            out = [Poly.zero(0)] * m
            for i, ai in enumerate(a):
                if not ai:
                    continue
                for j, bj in enumerate(b):
                    if not bj:
                        continue
                    w = ai * bj
                    row = consts[i][j]
                    for k in range(m):
                        if row[k]:
                            out[k] = out[k] + w * row[k]
            return tuple(out)

        alg = cls("point_lie_algebra", 0, m, bracket, lambda a: (), data=structure)
        for i, j, k in combinations(range(m), 3):
            e = alg.frame
            jac = add_sections(
                add_sections(alg.bracket(alg.bracket(e[i], e[j]), e[k]), alg.bracket(alg.bracket(e[j], e[k]), e[i])),
                alg.bracket(alg.bracket(e[k], e[i]), e[j]),
            )
            if not section_is_zero(jac):
                raise ConstructionError(f"structure constants violate Jacobi on (e{i + 1},e{j + 1},e{k + 1})")
        return alg

    # evaluation ---------------------------------------------------------------

    def bracket(self, a: Section, b: Section) -> Section:
        return self._bracket(a, b)

    def anchor(self, a: Section) -> tuple:
        """rho(a) as a tuple of vector-field components on R^nvars."""
        return self._anchor(a)

    def act(self, a: Section, f: Poly) -> Poly:
        if not f:
            return f
        return Poly.dot(self.nvars, [(c, f.diff(k)) for k, c in enumerate(self.anchor(a)) if c])

    def zero(self) -> Section:
        return zero_section(self.rank, self.nvars)

    @cached_property
    def frame(self) -> tuple[Section, ...]:
        one, z = Poly.const(self.nvars, 1), Poly.zero(self.nvars)
        return tuple(tuple(one if i == j else z for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def structure_functions(self) -> list[list[Section]]:
        e = self.frame
        return [[self.bracket(e[i], e[j]) for j in range(self.rank)] for i in range(self.rank)]

    @cached_property
    def frame_anchors(self) -> list[tuple]:
        return [self.anchor(x) for x in self.frame]

    def act_frame(self, i: int, f: Poly) -> Poly:
        if not f:
            return f
        return Poly.dot(self.nvars, [(c, f.diff(k)) for k, c in enumerate(self.frame_anchors[i]) if c])

    def bracket_via_frame(self, a: Section, b: Section) -> Section:
        """The bracket rebuilt from structure functions and the Leibniz rule."""
        out = list(self.zero())
        c = self.structure_functions
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                w = ai * bj
                for k, ck in enumerate(c[i][j]):
                    if ck:
                        out[k] = out[k] + w * ck
        for j, bj in enumerate(b):
            out[j] = out[j] + self.act(a, bj)
        for i, ai in enumerate(a):
            out[i] = out[i] - self.act(b, ai)
        return tuple(out)

    # derived operators ------------------------------------------------------------

    def d_function(self, f: Poly) -> Section:
        """d_L f as a dual section: <d_L f, e_i> = rho(e_i) f."""
        return tuple(self.act_frame(i, f) for i in range(self.rank))

    def d(self, P: Multivector) -> Multivector:
        """Differential of the algebroid on multisections of the dual bundle."""
        r = self.rank
        k = P.degree
        if k == 0:
            return Multivector.from_vector(self.d_function(P.scalar_part()), self.nvars)
        c = self.structure_functions
        out = {}
        for idx in combinations(range(r), k + 1):
            total = Poly.zero(self.nvars)
            for a, ia in enumerate(idx):
                rest = idx[:a] + idx[a + 1:]
                coeff = P.comps.get(rest)
                if coeff is not None:
                    t = self.act_frame(ia, coeff)
                    total = total - t if a & 1 else total + t
            for a, b in combinations(range(k + 1), 2):
                rest = idx[:a] + idx[a + 1:b] + idx[b + 1:]
                br = c[idx[a]][idx[b]]
                for m, cm in enumerate(br):
                    if not cm:
                        continue
                    sign, key = sort_indices((m,) + rest)
                    coeff = P.comps.get(key) if sign else None
                    if coeff is None:
                        continue
                    t = cm * coeff
                    if (a + b) & 1:
                        sign = -sign
                    total = total + t if sign > 0 else total - t
            if total:
                out[idx] = total
        return Multivector._raw(r, self.nvars, k + 1, out)

    def lie_derivative_dual(self, a: Section, xi: Section) -> Section:
        """L_a xi on dual sections: <L_a xi, b> = rho(a)<xi, b> - <xi, [a, b]>.

        In the frame: rho(a) xi_i - sum_jk a^j xi_k c_ji^k + sum_j xi_j rho(e_i) a^j.
        """
        r, n = self.rank, self.nvars
        c = self.structure_functions
        rho_a = [(m, v) for m, v in enumerate(self.anchor(a)) if v]
        negprods = [(j, k, -(aj * xk)) for j, aj in enumerate(a) if aj for k, xk in enumerate(xi) if xk]
        # w_m = sum_j xi_j d_m a^j
        w = [Poly.dot(n, [(xj, aj.diff(m)) for xj, aj in zip(xi, a) if xj and aj]) for m in range(n)]
        out = []
        for i in range(r):
            terms = [(v, xi[i].diff(m)) for m, v in rho_a] if xi[i] else []
            terms += [(p, c[j][i][k]) for j, k, p in negprods if c[j][i][k]]
            terms += [(rho, w[m]) for m, rho in enumerate(self.frame_anchors[i]) if rho and w[m]]
            out.append(Poly.dot(n, terms))
        return tuple(out)

    def schouten(self, P: Multivector, Q: Multivector) -> Multivector:
        """Schouten bracket on multisections of L (same conventions as cartan)."""
        r, n = self.rank, self.nvars
        p, q = P.degree, Q.degree
        deg = p + q - 1
        if deg < 0:
            return Multivector.zero(r, 0, n)
        total = Multivector.zero(r, deg, n)
        c = self.structure_functions
        for I, f in P.comps.items():
            for J, g in Q.comps.items():
                eI = Multivector._raw(r, n, p, {I: Poly.const(n, 1)})
                eJ = Multivector._raw(r, n, q, {J: Poly.const(n, 1)})
                # f [e_I, g] ^ e_J
                for k, ik in enumerate(I):
                    t = self.act_frame(ik, g)
                    if t:
                        rest = Multivector._raw(r, n, p - 1, {I[:k] + I[k + 1:]: f * t})
                        term = rest.wedge(eJ)
                        total = total - term if (p - 1 - k) & 1 else total + term
                # f g [e_I, e_J]
                fg = f * g
                for k, ik in enumerate(I):
                    for l, jl in enumerate(J):
                        br = c[ik][jl]
                        if section_is_zero(br):
                            continue
                        term = (
                            Multivector.from_vector(tuple(fg * x for x in br), n)
                            .wedge(Multivector._raw(r, n, p - 1, {I[:k] + I[k + 1:]: Poly.const(n, 1)}))
                            .wedge(Multivector._raw(r, n, q - 1, {J[:l] + J[l + 1:]: Poly.const(n, 1)}))
                        )
                        total = total - term if (k + l) & 1 else total + term
                # (-1)^{(q-1)p} g [f, e_J] ^ e_I, with [f, e_J] = (-1)^q [e_J, f]
                for l, jl in enumerate(J):
                    t = self.act_frame(jl, f)
                    if t:
                        rest = Multivector._raw(r, n, q - 1, {J[:l] + J[l + 1:]: g * t})
                        term = rest.wedge(eI)
                        sign = ((q - 1) * p + q + (q - 1 - l)) & 1
                        total = total - term if sign else total + term
        if total.degree != deg:
            return Multivector.zero(r, deg, n)
        return total

    def jacobiator(self, a: Section, b: Section, c: Section) -> Section:
        br = self.bracket
        return add_sections(add_sections(br(br(a, b), c), br(br(b, c), a)), br(br(c, a), b))

    def __repr__(self):
        return f"LieAlgebroid({self.kind}, n={self.nvars}, rank={self.rank})"


def cotangent_bracket(pi: Multivector, alpha: DiffForm, beta: DiffForm) -> DiffForm:
    """[a, b] = L_{sharp a} b - L_{sharp b} a - d(pi(a, b))."""
    if not cartan.is_poisson(pi):
        raise ConstructionError("bivector is not Poisson")
    return _cotangent_bracket(pi, alpha, beta)


def _cotangent_bracket(pi, alpha, beta):
    pa, pb = cartan.sharp(pi, alpha), cartan.sharp(pi, beta)
    return (
        cartan.lie_derivative(pa, beta)
        - cartan.lie_derivative(pb, alpha)
        - cartan.differential(cartan.bivector_eval(pi, alpha, beta))
    )


def algebroid_d(L: LieAlgebroid, f: Poly) -> Section:
    return L.d_function(f)


def lie_derivative_mixed(L_star: LieAlgebroid, xi: Section, X: Section) -> Section:
    """L_xi X for xi in Gamma(A*), X in Gamma(A): <L_xi X, eta> = a_*(xi)<X, eta> - <X, [xi, eta]_*>."""
    return L_star.lie_derivative_dual(xi, X)


class LieBialgebroidPair:
    """(A, A*) with dual global frames; A_star's differential acts on multisections of A."""

    def __init__(self, A: LieAlgebroid, A_star: LieAlgebroid, name: str = ""):
        if A.rank != A_star.rank or A.nvars != A_star.nvars:
            raise ConstructionError("A and A* must have equal rank over the same base")
        self.A = A
        self.A_star = A_star
        self.name = name
        # set when the pair was extracted from Dirac subbundles of an ambient instance
        self.ambient = None
        self.frames = None

    @property
    def rank(self):
        return self.A.rank

    @property
    def nvars(self):
        return self.A.nvars

    def d_star(self, P: Multivector) -> Multivector:
        return self.A_star.d(P)

    def swapped(self) -> "LieBialgebroidPair":
        return LieBialgebroidPair(self.A_star, self.A, name=f"{self.name}*" if self.name else "")

    @classmethod
    def tangent_zero(cls, n: int) -> "LieBialgebroidPair":
        return cls(LieAlgebroid.tangent(n), LieAlgebroid.zero_bracket_cotangent(n), name="tangent/zero")

    @classmethod
    def poisson(cls, pi: Multivector) -> "LieBialgebroidPair":
        return cls(LieAlgebroid.tangent(pi.rank), LieAlgebroid.cotangent_poisson(pi), name="tangent/poisson")

    @classmethod
    def lie_bialgebra(cls, g, gstar) -> "LieBialgebroidPair":
        return cls(LieAlgebroid.point_lie_algebra(g), LieAlgebroid.point_lie_algebra(gstar), name="bialgebra")


def bialgebroid_compat_check(pair: LieBialgebroidPair, X: Section, Y: Section) -> Multivector:
    """d_*[X, Y] - [d_* X, Y] - [X, d_* Y] on sections of A (zero for a Lie bialgebroid)."""
    A, n = pair.A, pair.nvars
    mX, mY = Multivector.from_vector(X, n), Multivector.from_vector(Y, n)
    lhs = pair.d_star(Multivector.from_vector(A.bracket(X, Y), n))
    return lhs - A.schouten(pair.d_star(mX), mY) - A.schouten(mX, pair.d_star(mY))
