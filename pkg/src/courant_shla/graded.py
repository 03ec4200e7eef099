"""Graded exterior algebra: Koszul signs, unshuffles, coderivation extension.

Factors are any objects with an integer ``degree``, a hashable ``sort_key()``
and ``is_zero()``. Words obey v^w = -(-1)**(|v||w|) w^v, so degree-0 factors
anticommute and degree-1 factors commute. Permutations are 0-based tuples:
``perm[p]`` is the original position of the factor that lands at slot ``p``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .kernels import koszul_sign_raw, shuffle_sign_raw, unshuffles_raw


def _check_perm(perm: Sequence[int], n: int | None = None):
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"malformed permutation {tuple(perm)}")
    if n is not None and len(perm) != n:
        raise ValueError("permutation and degree list differ in length")


def koszul_sign(perm: Sequence[int], degs: Sequence[int]) -> int:
    """Koszul sign of moving x_0..x_{n-1} to x_perm[0]..x_perm[n-1].

    ``degs[i]`` is the degree of the original factor x_i.
    """
    _check_perm(perm, len(degs))
    return koszul_sign_raw(tuple(perm), tuple(degs))


def perm_parity(perm: Sequence[int]) -> int:
    _check_perm(perm)
    return shuffle_sign_raw(tuple(perm), (0,) * len(perm))


def shuffle_sign(perm: Sequence[int], degs: Sequence[int]) -> int:
    """(-1)**perm * koszul_sign(perm, degs)."""
    _check_perm(perm, len(degs))
    return shuffle_sign_raw(tuple(perm), tuple(degs))


def unshuffles(i: int, n: int) -> list[tuple[int, ...]]:
    """Permutations increasing on the first i and on the last n-i slots."""
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    return unshuffles_raw(i, n)


def factor_key(x) -> tuple:
    return (x.degree, x.sort_key())


def normalize(factors: Sequence) -> tuple[int, tuple]:
    """Sort factors into canonical order; returns (sign, factors), sign 0 if the word vanishes."""
    lst = list(factors)
    keys = [factor_key(x) for x in lst]
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and keys[j - 1] > keys[j]:
            if not (lst[j - 1].degree & lst[j].degree & 1):
                sign = -sign
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            j -= 1
    for i in range(1, len(lst)):
        if keys[i] == keys[i - 1] and not lst[i].degree & 1:
            return 0, ()
    return sign, tuple(lst)


class GradedWord:
    """A signed wedge word, stored in canonical order."""

    __slots__ = ("sign", "factors")

    def __init__(self, factors: Sequence, sign: int = 1):
        s, canon = normalize(factors)
        self.sign = sign * s
        self.factors = canon if self.sign else ()

    @property
    def degree(self) -> int:
        return sum(x.degree for x in self.factors)

    def is_zero(self) -> bool:
        return self.sign == 0

    def key(self) -> tuple:
        return tuple(factor_key(x) for x in self.factors)

    def swapped(self, i: int) -> "GradedWord":
        """The same element written with factors i and i+1 exchanged, then renormalized."""
        f = list(self.factors)
        a, b = f[i], f[i + 1]
        f[i], f[i + 1] = b, a
        return GradedWord(f, self.sign * (1 if a.degree & b.degree & 1 else -1))

    def __len__(self):
        return len(self.factors)

    def __eq__(self, other):
        if not isinstance(other, GradedWord):
            return NotImplemented
        return self.sign == other.sign and self.key() == other.key()

    def __hash__(self):
        return hash((self.sign, self.key()))

    def __repr__(self):
        body = " ^ ".join(map(str, self.factors)) or "1"
        return f"{'-' if self.sign < 0 else ''}{body}" if self.sign else "0"


class GradedSum:
    """Finite rational combination of canonical words."""

    __slots__ = ("_terms",)

    def __init__(self):
        self._terms: dict[tuple, list] = {}

    def add(self, coef, factors: Sequence) -> None:
        if not coef or any(x.is_zero() for x in factors):
            return
        s, canon = normalize(factors)
        if not s:
            return
        key = tuple(factor_key(x) for x in canon)
        entry = self._terms.get(key)
        c = Fraction(coef) * s
        if entry is None:
            self._terms[key] = [c, canon]
        else:
            entry[0] += c
            if not entry[0]:
                del self._terms[key]

    def add_sum(self, other: "GradedSum", coef=1) -> None:
        for c, f in other.items():
            self.add(coef * c, f)

    def items(self) -> list[tuple[Fraction, tuple]]:
        return [(c, f) for c, f in self._terms.values()]

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, GradedSum):
            return NotImplemented
        return {k: v[0] for k, v in self._terms.items()} == {k: v[0] for k, v in other._terms.items()}

    def collapse(self, add: Callable, scale: Callable) -> dict[int, object]:
        """Sum the length-1 words into actual elements, grouped by degree."""
        out: dict[int, object] = {}
        for c, f in self.items():
            if len(f) != 1:
                raise ValueError("collapse needs words of length 1")
            x = f[0]
            v = scale(x, c)
            out[x.degree] = v if x.degree not in out else add(out[x.degree], v)
        return out

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for c, f in self.items():
            parts.append(f"{c}*({' ^ '.join(map(str, f))})")
        return " + ".join(parts)


def _terms_of(result) -> Iterable[tuple]:
    """A structure map may return None, an element, or (coef, element) pairs."""
    if result is None:
        return ()
    if isinstance(result, list):
        return result
    return ((1, result),)


def extend_coderivation(l: Callable, k: int, word: Sequence | GradedWord, coef=1) -> GradedSum:
    """Extend a k-ary map over a word of length n >= k as a coderivation.

    Returns sum over (k, n-k)-unshuffles of (-1)**sigma eps(sigma)
    l(x_s(1..k)) ^ x_s(k+1..n).
    """
    if isinstance(word, GradedWord):
        coef = coef * word.sign
        word = word.factors
    n = len(word)
    if k > n:
        raise ValueError(f"arity {k} exceeds word length {n}")
    degs = tuple(x.degree for x in word)
    out = GradedSum()
    for sigma in unshuffles_raw(k, n):
        s = shuffle_sign_raw(sigma, degs)
        args = tuple(word[i] for i in sigma[:k])
        rest = tuple(word[i] for i in sigma[k:])
        for c, y in _terms_of(l(args)):
            if y is None or y.is_zero():
                continue
            out.add(coef * s * c, (y,) + rest)
    return out


def apply_map(l: Callable, words: GradedSum) -> GradedSum:
    """Apply a map to every word of a sum (words already of the map's arity)."""
    out = GradedSum()
    for c, f in words.items():
        for c2, y in _terms_of(l(f)):
            if y is None or y.is_zero():
                continue
            out.add(c * c2, (y,))
    return out


def compose(lj: Callable, j: int, li: Callable, i: int, word: Sequence) -> GradedSum:
    """l_j applied to the coderivation extension of l_i on ``word``."""
    inner = extend_coderivation(li, i, word)
    out = GradedSum()
    for c, f in inner.items():
        if len(f) != j:
            raise ValueError("arity mismatch in composition")
        for c2, y in _terms_of(lj(f)):
            if y is None or y.is_zero():
                continue
            out.add(c * c2, (y,))
    return out


class Symbol:
    """Formal homogeneous element, used to test the sign engine symbolically."""

    __slots__ = ("name", "degree")

    def __init__(self, name: str, degree: int):
        self.name = name
        self.degree = degree

    def sort_key(self):
        return (self.name,)

    def is_zero(self):
        return False

    def __eq__(self, other):
        return isinstance(other, Symbol) and (self.name, self.degree) == (other.name, other.degree)

    def __hash__(self):
        return hash((self.name, self.degree))

    def __repr__(self):
        return self.name


class FormalMap:
    """A free graded-antisymmetric k-ary map of degree k-2 on Symbols.

    l(x_1..x_k) is the symbol ``l{k}(...)`` of the canonically ordered
    arguments, times the sign of that reordering.
    """

    def __init__(self, k: int, name: str | None = None, degree: int | None = None):
        self.k = k
        self.name = name or f"l{k}"
        self.shift = k - 2 if degree is None else degree

    def __call__(self, args: Sequence):
        if len(args) != self.k:
            raise ValueError(f"{self.name} takes {self.k} arguments")
        s, canon = normalize(args)
        if not s:
            return None
        deg = sum(x.degree for x in canon) + self.shift
        return [(s, Symbol(f"{self.name}({','.join(map(repr, canon))})", deg))]
