"""Polynomial Cartan calculus on R^n.

Multivector fields and differential forms share one sparse representation:
a map from strictly increasing 0-based index tuples to nonzero :class:`Poly`
coefficients. Degrees above the rank are the (empty) zero element.

Sign conventions, fixed here and used everywhere downstream:

* Schouten bracket: [X, f] = X(f), [X, Y] is the Lie bracket, and
  [P, Q^R] = [P, Q]^R + (-1)**((p-1)*q) Q^[P, R]; graded antisymmetry is
  [P, Q] = -(-1)**((p-1)*(q-1)) [Q, P].  Computed as the odd Poisson bracket
  sum_i (dP/dtheta_i)_right (dQ/dx_i) - (dP/dx_i) (dQ/dtheta_i)_left.
* sharp: <sharp(pi, a), b> = pi(a, b), with pi(a, b) = sum_{i<j} pi^{ij}
  (a_i b_j - a_j b_i).
* With those, [pi, f] = POISSON_DSTAR_SIGN * sharp(pi, df).
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .poly import DimensionError, Poly, format_poly

POISSON_DSTAR_SIGN = -1


def _merge_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of sorting the concatenation a+b (both increasing, disjoint)."""
    inv = 0
    for i in a:
        for j in b:
            if i > j:
                inv += 1
    return -1 if inv & 1 else 1


def sort_indices(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """(sign, sorted tuple) for an arbitrary index sequence; sign 0 on repeats."""
    if len(set(idx)) != len(idx):
        return 0, ()
    lst = list(idx)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(lst)


class _Alternating:
    __slots__ = ("rank", "nvars", "degree", "comps", "_key")

    def __init__(self, rank: int, nvars: int, degree: int, comps: Mapping[tuple, Poly] | None = None):
        self.rank = rank
        self.nvars = nvars
        self.degree = degree
        clean = {}
        if comps:
            for idx, c in comps.items():
                if not isinstance(c, Poly):
                    c = Poly.const(nvars, c)
                elif c.nvars != nvars:
                    raise DimensionError("coefficient dimension mismatch")
                if len(idx) != degree:
                    raise ValueError(f"index {idx} does not match degree {degree}")
                if any(not 0 <= i < rank for i in idx):
                    raise IndexError(f"index {idx} out of range for rank {rank}")
                sign, key = sort_indices(idx)
                if sign == 0 or not c:
                    continue
                prev = clean.get(key)
                c = c if sign == 1 else -c
                c = c if prev is None else prev + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self.comps = clean
        self._key = None

    @classmethod
    def _raw(cls, rank, nvars, degree, comps):
        obj = cls.__new__(cls)
        obj.rank = rank
        obj.nvars = nvars
        obj.degree = degree
        obj.comps = {k: v for k, v in comps.items() if v}
        obj._key = None
        return obj

    @classmethod
    def zero(cls, rank: int, degree: int, nvars: int | None = None):
        return cls._raw(rank, rank if nvars is None else nvars, degree, {})

    @classmethod
    def scalar(cls, f: Poly, rank: int | None = None):
        return cls._raw(f.nvars if rank is None else rank, f.nvars, 0, {(): f})

    @classmethod
    def from_vector(cls, coords: Sequence[Poly], nvars: int | None = None):
        nv = coords[0].nvars if coords else (nvars or 0)
        return cls._raw(len(coords), nv, 1, {(i,): c for i, c in enumerate(coords)})

    def to_vector(self) -> tuple[Poly, ...]:
        if self.degree != 1:
            raise ValueError("not of degree 1")
        z = Poly.zero(self.nvars)
        return tuple(self.comps.get((i,), z) for i in range(self.rank))

    def scalar_part(self) -> Poly:
        if self.degree != 0:
            raise ValueError("not of degree 0")
        return self.comps.get((), Poly.zero(self.nvars))

    def component(self, idx: Sequence[int]) -> Poly:
        sign, key = sort_indices(idx)
        c = self.comps.get(key)
        if sign == 0 or c is None:
            return Poly.zero(self.nvars)
        return c if sign == 1 else -c

    def is_zero(self) -> bool:
        return not self.comps

    def key(self):
        if self._key is None:
            self._key = (type(self).__name__, self.rank, self.degree, tuple(sorted((k, v.key()) for k, v in self.comps.items())))
        return self._key

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.rank != self.rank or other.nvars != self.nvars:
            raise DimensionError("rank/dimension mismatch")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.rank, self.nvars, self.degree, self.comps) == (other.rank, other.nvars, other.degree, other.comps)

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise ValueError("cannot add elements of different degree")
        out = dict(self.comps)
        for k, v in other.comps.items():
            prev = out.get(k)
            out[k] = v if prev is None else prev + v
        return type(self)._raw(self.rank, self.nvars, self.degree, out)

    def __neg__(self):
        return type(self)._raw(self.rank, self.nvars, self.degree, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "_Alternating":
        """Multiply by a function (Poly) or a rational number."""
        if isinstance(f, Poly):
            return type(self)._raw(self.rank, self.nvars, self.degree, {k: f * v for k, v in self.comps.items()})
        return type(self)._raw(self.rank, self.nvars, self.degree, {k: v.scale(f) for k, v in self.comps.items()})

    def wedge(self, other):
        self._check(other)
        deg = self.degree + other.degree
        out: dict[tuple, Poly] = {}
        if deg <= self.rank:
            for a, ca in self.comps.items():
                for b, cb in other.comps.items():
                    if set(a) & set(b):
                        continue
                    sign = _merge_sign(a, b)
                    key = tuple(sorted(a + b))
                    term = ca * cb
                    if sign < 0:
                        term = -term
                    prev = out.get(key)
                    out[key] = term if prev is None else prev + term
        return type(self)._raw(self.rank, self.nvars, deg, out)

    def map_coeffs(self, fn):
        return type(self)._raw(self.rank, self.nvars, self.degree, {k: fn(v) for k, v in self.comps.items()})

    def __str__(self):
        if not self.comps:
            return "0"
        sym = self._symbol
        parts = []
        for idx in sorted(self.comps):
            basis = "^".join(f"{sym}{i + 1}" for i in idx) or "1"
            parts.append(f"({format_poly(self.comps[idx])})*{basis}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}(deg={self.degree}, {self})"


class Multivector(_Alternating):
    """Section of the k-th exterior power of a frame bundle (TM by default)."""

    __slots__ = ()
    _symbol = "d"


class DiffForm(_Alternating):
    """Differential form with Poly coefficients of dx_{i1}^...^dx_{ik}."""

    __slots__ = ()
    _symbol = "dx"


def vector_field(coords: Sequence, nvars: int) -> Multivector:
    from .poly import as_poly

    return Multivector.from_vector([as_poly(c, nvars) for c in coords], nvars)


def one_form(coords: Sequence, nvars: int) -> DiffForm:
    from .poly import as_poly

    return DiffForm.from_vector([as_poly(c, nvars) for c in coords], nvars)


def function(f: Poly) -> DiffForm:
    return DiffForm.scalar(f)


# -- basic pairings ------------------------------------------------------------


def apply_vector(X: Multivector, f: Poly) -> Poly:
    """X(f) for a vector field X."""
    return Poly.dot(f.nvars, [(c, f.diff(i)) for (i,), c in X.comps.items()])


def pair(alpha: DiffForm, X: Multivector) -> Poly:
    """<alpha, X> for a 1-form and a vector field."""
    return Poly.dot(alpha.nvars, [(c, X.comps[idx]) for idx, c in alpha.comps.items() if idx in X.comps])


def bivector_eval(pi: Multivector, alpha: DiffForm, beta: DiffForm) -> Poly:
    out = Poly.zero(pi.nvars)
    z = Poly.zero(pi.nvars)
    for (i, j), c in pi.comps.items():
        ai, aj = alpha.comps.get((i,), z), alpha.comps.get((j,), z)
        bi, bj = beta.comps.get((i,), z), beta.comps.get((j,), z)
        t = ai * bj - aj * bi
        if t:
            out = out + c * t
    return out


# -- operators -------------------------------------------------------------------


def de_rham_d(omega: DiffForm) -> DiffForm:
    n = omega.rank
    out: dict[tuple, Poly] = {}
    for idx, c in omega.comps.items():
        for k in range(n):
            if k in idx:
                continue
            dc = c.diff(k)
            if not dc:
                continue
            pos = sum(1 for i in idx if i < k)
            key = idx[:pos] + (k,) + idx[pos:]
            if pos & 1:
                dc = -dc
            prev = out.get(key)
            out[key] = dc if prev is None else prev + dc
    return DiffForm._raw(n, omega.nvars, omega.degree + 1, out)


def interior_product(X: Multivector, omega: DiffForm) -> DiffForm:
    if X.degree != 1:
        raise ValueError("interior product needs a vector field")
    if omega.degree < 1:
        raise ValueError("cannot contract a 0-form")
    out: dict[tuple, Poly] = {}
    for idx, c in omega.comps.items():
        for p, i in enumerate(idx):
            x = X.comps.get((i,))
            if x is None:
                continue
            term = x * c
            if p & 1:
                term = -term
            key = idx[:p] + idx[p + 1:]
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    return DiffForm._raw(omega.rank, omega.nvars, omega.degree - 1, out)


def lie_derivative(X: Multivector, omega: DiffForm) -> DiffForm:
    """L_X omega = i_X d omega + d i_X omega."""
    if omega.degree == 0:
        return DiffForm._raw(omega.rank, omega.nvars, 0, {(): apply_vector(X, omega.scalar_part())})
    return interior_product(X, de_rham_d(omega)) + de_rham_d(interior_product(X, omega))


def vf_bracket(X: Multivector, Y: Multivector) -> Multivector:
    if X.degree != 1 or Y.degree != 1:
        raise ValueError("vf_bracket needs vector fields")
    X._check(Y)
    out = {}
    z = Poly.zero(X.nvars)
    negY = [(i, -c) for (i,), c in Y.comps.items()]
    for j in range(X.rank):
        yj, xj = Y.comps.get((j,), z), X.comps.get((j,), z)
        terms = [(c, yj.diff(i)) for (i,), c in X.comps.items()] if yj else []
        if xj:
            terms += [(c, xj.diff(i)) for i, c in negY]
        c = Poly.dot(X.nvars, terms)
        if c:
            out[(j,)] = c
    return Multivector._raw(X.rank, X.nvars, 1, out)


def _theta_derivative(P: Multivector, i: int, right: bool) -> Multivector:
    out = {}
    p = P.degree
    for idx, c in P.comps.items():
        if i not in idx:
            continue
        k = idx.index(i)
        flip = (p - 1 - k) & 1 if right else k & 1
        out[idx[:k] + idx[k + 1:]] = -c if flip else c
    return Multivector._raw(P.rank, P.nvars, max(p - 1, 0), out)


def _x_derivative(P: Multivector, i: int) -> Multivector:
    return P.map_coeffs(lambda c: c.diff(i))


def schouten_bracket(P: Multivector, Q: Multivector) -> Multivector:
    P._check(Q)
    n = P.rank
    deg = P.degree + Q.degree - 1
    if deg < 0:
        return Multivector.zero(n, 0, P.nvars)
    total = Multivector.zero(n, deg, P.nvars)
    for i in range(n):
        if P.degree:
            rp = _theta_derivative(P, i, right=True)
            if not rp.is_zero():
                total = total + rp.wedge(_x_derivative(Q, i))
        if Q.degree:
            lq = _theta_derivative(Q, i, right=False)
            if not lq.is_zero():
                total = total - _x_derivative(P, i).wedge(lq)
    if total.degree != deg:
        total = Multivector.zero(n, deg, P.nvars)
    return total


def sharp(pi: Multivector, alpha: DiffForm) -> Multivector:
    """The bundle map defined by <sharp(pi, a), b> = pi(a, b)."""
    if pi.degree != 2 or alpha.degree != 1:
        raise ValueError("sharp needs a bivector and a 1-form")
    out: dict[tuple, Poly] = {}
    z = Poly.zero(pi.nvars)
    for (i, j), c in pi.comps.items():
        ai, aj = alpha.comps.get((i,), z), alpha.comps.get((j,), z)
        if ai:
            t = ai * c
            prev = out.get((j,))
            out[(j,)] = t if prev is None else prev + t
        if aj:
            t = -(aj * c)
            prev = out.get((i,))
            out[(i,)] = t if prev is None else prev + t
    return Multivector._raw(pi.rank, pi.nvars, 1, out)


def is_poisson(pi: Multivector) -> bool:
    return schouten_bracket(pi, pi).is_zero()


def differential(f: Poly) -> DiffForm:
    return de_rham_d(DiffForm.scalar(f))


def parse_components(entries: Mapping, degree: int, nvars: int, cls=Multivector):
    """Build a field/form from ``{(1,2): "x3", ...}`` with 1-based indices."""
    from .poly import as_poly

    comps = {}
    for idx, val in entries.items():
        if isinstance(idx, int):
            idx = (idx,)
        idx = tuple(int(i) - 1 for i in idx)
        if len(idx) != degree:
            raise ValueError(f"index tuple {tuple(i + 1 for i in idx)} does not have {degree} entries")
        sign, key = sort_indices(idx)
        if sign == 0:
            raise ValueError(f"repeated index in {tuple(i + 1 for i in idx)}")
        c = as_poly(val, nvars)
        c = c if sign == 1 else -c
        comps[key] = comps[key] + c if key in comps else c
    return cls(nvars, nvars, degree, comps)


def poly_entries(obj: Iterable[Poly]) -> list[str]:
    return [format_poly(p) for p in obj]
