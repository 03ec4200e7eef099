"""Pure-Python hot loops.

Polynomial terms are ``{packed_exponent: integer_numerator}`` dicts. An
exponent vector (e_0, ..., e_{n-1}) is packed as sum(e_i << (FIELD_BITS*i)),
so multiplying monomials is integer addition of keys.
"""

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1


def mul_terms(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bitems:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def mul_acc(acc, a, b, c):
    """acc += c * a * b in place; zero entries may remain."""
    get = acc.get
    bitems = list(b.items())
    for ka, ca in a.items():
        cc = c * ca
        for kb, cb in bitems:
            k = ka + kb
            acc[k] = get(k, 0) + cc * cb


def dot_terms(triples):
    """sum of c * a * b over (a, b, c) triples, zero terms dropped."""
    acc = {}
    for a, b, c in triples:
        mul_acc(acc, a, b, c)
    return {k: v for k, v in acc.items() if v}


def lincomb_terms(a, ma, b, mb):
    """ma*a + mb*b with zero terms dropped."""
    if ma == 1:
        out = dict(a)
    else:
        out = {k: ma * c for k, c in a.items()}
    get = out.get
    for k, c in b.items():
        v = get(k, 0) + mb * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def diff_terms(a, var):
    shift = FIELD_BITS * var
    unit = 1 << shift
    out = {}
    for k, c in a.items():
        e = (k >> shift) & FIELD_MASK
        if e:
            out[k - unit] = c * e
    return out


def koszul_sign(perm, degs):
    """Koszul sign of rearranging x_0..x_{n-1} into x_perm[0]..x_perm[n-1].

    Each pair that changes relative order contributes (-1)**(deg*deg).
    """
    n = len(perm)
    odd = 0
    for p in range(n):
        dp = degs[perm[p]] & 1
        if not dp:
            continue
        for q in range(p + 1, n):
            if perm[q] < perm[p] and degs[perm[q]] & 1:
                odd ^= 1
    return -1 if odd else 1


def shuffle_sign(perm, degs):
    """(-1)**perm times the Koszul sign: one factor -(-1)**(deg*deg) per inversion."""
    n = len(perm)
    odd = 0
    for p in range(n):
        dp = degs[perm[p]] & 1
        for q in range(p + 1, n):
            if perm[q] < perm[p]:
                odd ^= 1 ^ (dp & degs[perm[q]] & 1)
    return -1 if odd else 1


def unshuffles(i, n):
    """All (i, n-i)-unshuffles in lexicographic order, as 0-based tuples."""
    out = []
    head = list(range(i))
    while True:
        hs = set(head)
        out.append(tuple(head) + tuple(k for k in range(n) if k not in hs))
        # next i-combination in lexicographic order
        j = i - 1
        while j >= 0 and head[j] == n - i + j:
            j -= 1
        if j < 0:
            return out
        head[j] += 1
        for t in range(j + 1, i):
            head[t] = head[t - 1] + 1
