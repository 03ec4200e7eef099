# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the loops in ``_pykernels``; same contracts."""

cdef enum:
    FIELD_BITS = 16
    FIELD_MASK = 0xFFFF


from libc.stdint cimport uint64_t, int64_t, INT64_MAX
from libc.stdlib cimport malloc, calloc, free


cdef dict _mul_small(dict a, dict b):
    """Machine-word product; returns None when keys or coefficients do not fit."""
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, cap, h, n = 0
    cdef uint64_t *ka = NULL
    cdef uint64_t *kb = NULL
    cdef int64_t *ca = NULL
    cdef int64_t *cb = NULL
    cdef uint64_t *hk = NULL
    cdef int64_t *hv = NULL
    cdef char *used = NULL
    cdef int64_t ma = 0, mb = 0, c
    cdef uint64_t k
    cdef dict out
    cap = 16
    while cap < 2 * na * nb:
        cap <<= 1
    ka = <uint64_t *> malloc(na * sizeof(uint64_t))
    kb = <uint64_t *> malloc(nb * sizeof(uint64_t))
    ca = <int64_t *> malloc(na * sizeof(int64_t))
    cb = <int64_t *> malloc(nb * sizeof(int64_t))
    hk = <uint64_t *> malloc(cap * sizeof(uint64_t))
    hv = <int64_t *> malloc(cap * sizeof(int64_t))
    used = <char *> calloc(cap, 1)
    try:
        if not (ka and kb and ca and cb and hk and hv and used):
            raise MemoryError()
        try:
            i = 0
            for key, val in a.items():
                ka[i] = key
                ca[i] = val
                if ca[i] < -INT64_MAX:
                    return None
                if ca[i] > ma:
                    ma = ca[i]
                elif -ca[i] > ma:
                    ma = -ca[i]
                i += 1
            i = 0
            for key, val in b.items():
                kb[i] = key
                cb[i] = val
                if cb[i] < -INT64_MAX:
                    return None
                if cb[i] > mb:
                    mb = cb[i]
                elif -cb[i] > mb:
                    mb = -cb[i]
                i += 1
        except OverflowError:
            return None
        # |sum| <= min(na, nb) * ma * mb must stay below 2**63 (ma, mb < 2**63 - 1 here)
        if ma and mb and (ma > INT64_MAX // mb or ma * mb > INT64_MAX // (na if na < nb else nb)):
            return None
        for i in range(na):
            for j in range(nb):
                k = ka[i] + kb[j]
                c = ca[i] * cb[j]
                h = <Py_ssize_t> ((k * 0x9E3779B97F4A7C15ULL) >> 40) & (cap - 1)
                while used[h] and hk[h] != k:
                    h = (h + 1) & (cap - 1)
                if used[h]:
                    hv[h] += c
                else:
                    used[h] = 1
                    hk[h] = k
                    hv[h] = c
        out = {}
        for h in range(cap):
            if used[h] and hv[h]:
                out[hk[h]] = hv[h]
        return out
    finally:
        free(ka); free(kb); free(ca); free(cb); free(hk); free(hv); free(used)


def mul_terms(dict a, dict b):
    cdef dict out
    cdef list bkeys, bvals
    cdef Py_ssize_t j, nb
    cdef object ka, ca, k, v
    if not a or not b:
        return {}
    out = _mul_small(a, b)
    if out is not None:
        return out
    out = {}
    if len(a) < len(b):
        a, b = b, a
    bkeys = list(b.keys())
    bvals = list(b.values())
    nb = len(bkeys)
    for ka, ca in a.items():
        for j in range(nb):
            k = ka + bkeys[j]
            v = out.get(k)
            if v is None:
                out[k] = ca * bvals[j]
            else:
                out[k] = v + ca * bvals[j]
    return {k: v for k, v in out.items() if v}


cdef dict _dot_small(list triples):
    """sum of c * a * b over (a, b, c) in machine words; None if anything may overflow."""
    cdef Py_ssize_t total = 0, cap, h, i, j, na, nb, t, nt = len(triples)
    cdef uint64_t *hk = NULL
    cdef int64_t *hv = NULL
    cdef char *used = NULL
    cdef uint64_t *ka = NULL
    cdef uint64_t *kb = NULL
    cdef int64_t *ca = NULL
    cdef int64_t *cb = NULL
    cdef int64_t ma, mb, c, x, bound = 0, lim
    cdef uint64_t k
    cdef dict a, b, out
    cdef object key, val
    for t in range(nt):
        a, b, _ = triples[t]
        total += len(a) * len(b)
    cap = 16
    while cap < 2 * total:
        cap <<= 1
    hk = <uint64_t *> malloc(cap * sizeof(uint64_t))
    hv = <int64_t *> malloc(cap * sizeof(int64_t))
    used = <char *> calloc(cap, 1)
    try:
        if not (hk and hv and used):
            raise MemoryError()
        for t in range(nt):
            a, b, cobj = triples[t]
            na, nb = len(a), len(b)
            ka = <uint64_t *> malloc(na * sizeof(uint64_t))
            kb = <uint64_t *> malloc(nb * sizeof(uint64_t))
            ca = <int64_t *> malloc(na * sizeof(int64_t))
            cb = <int64_t *> malloc(nb * sizeof(int64_t))
            try:
                if not (ka and kb and ca and cb):
                    raise MemoryError()
                ma = mb = 0
                try:
                    c = cobj
                    i = 0
                    for key, val in a.items():
                        ka[i] = key
                        ca[i] = val
                        if ca[i] < -INT64_MAX:
                            return None
                        x = ca[i] if ca[i] >= 0 else -ca[i]
                        if x > ma:
                            ma = x
                        i += 1
                    i = 0
                    for key, val in b.items():
                        kb[i] = key
                        cb[i] = val
                        if cb[i] < -INT64_MAX:
                            return None
                        x = cb[i] if cb[i] >= 0 else -cb[i]
                        if x > mb:
                            mb = x
                        i += 1
                except OverflowError:
                    return None
                if c < -INT64_MAX:
                    return None
                if c < 0:
                    x = -c
                else:
                    x = c
                # every accumulated entry stays below 2**62 in absolute value
                lim = (<int64_t> 1) << 62
                if ma and mb and x:
                    if ma > lim // mb or ma * mb > lim // x:
                        return None
                    lim = ma * mb * x * (na if na < nb else nb)
                    if lim // (na if na < nb else nb) != ma * mb * x or bound > ((<int64_t> 1) << 62) - lim:
                        return None
                    bound += lim
                for i in range(na):
                    for j in range(nb):
                        k = ka[i] + kb[j]
                        h = <Py_ssize_t> ((k * 0x9E3779B97F4A7C15ULL) >> 40) & (cap - 1)
                        while used[h] and hk[h] != k:
                            h = (h + 1) & (cap - 1)
                        if used[h]:
                            hv[h] += c * ca[i] * cb[j]
                        else:
                            used[h] = 1
                            hk[h] = k
                            hv[h] = c * ca[i] * cb[j]
            finally:
                free(ka); free(kb); free(ca); free(cb)
                ka = kb = NULL
                ca = cb = NULL
        out = {}
        for h in range(cap):
            if used[h] and hv[h]:
                out[hk[h]] = hv[h]
        return out
    finally:
        free(hk); free(hv); free(used)


def dot_terms(list triples):
    cdef dict out = _dot_small(triples)
    cdef object k, v
    if out is not None:
        return out
    out = {}
    for a, b, c in triples:
        mul_acc(out, a, b, c)
    return {k: v for k, v in out.items() if v}


def mul_acc(dict acc, dict a, dict b, c):
    cdef dict prod = _mul_small(a, b) if a and b else {}
    cdef object k, v, w
    if prod is None:
        prod = mul_terms(a, b)
    if c == 1:
        for k, v in prod.items():
            w = acc.get(k)
            acc[k] = v if w is None else w + v
    else:
        for k, v in prod.items():
            w = acc.get(k)
            acc[k] = c * v if w is None else w + c * v


def lincomb_terms(dict a, ma, dict b, mb):
    cdef dict out
    cdef object k, c, v
    if ma == 1:
        out = dict(a)
    else:
        out = {k: ma * c for k, c in a.items()}
    for k, c in b.items():
        v = out.get(k)
        if v is None:
            v = mb * c
        else:
            v = v + mb * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def diff_terms(dict a, int var):
    cdef int shift = FIELD_BITS * var
    cdef object unit = (<object>1) << shift
    cdef dict out = {}
    cdef object k, c
    cdef long e
    for k, c in a.items():
        e = (k >> shift) & FIELD_MASK
        if e:
            out[k - unit] = c * e
    return out


def koszul_sign(perm, degs):
    cdef Py_ssize_t n = len(perm), p, q
    cdef int odd = 0
    cdef long[64] pp
    cdef long[64] dd
    if n > 64:
        raise ValueError("word too long")
    for p in range(n):
        pp[p] = perm[p]
        dd[p] = degs[pp[p]] & 1
    for p in range(n):
        if not dd[p]:
            continue
        for q in range(p + 1, n):
            if pp[q] < pp[p] and dd[q]:
                odd ^= 1
    return -1 if odd else 1


def shuffle_sign(perm, degs):
    cdef Py_ssize_t n = len(perm), p, q
    cdef int odd = 0
    cdef long[64] pp
    cdef long[64] dd
    if n > 64:
        raise ValueError("word too long")
    for p in range(n):
        pp[p] = perm[p]
        dd[p] = degs[pp[p]] & 1
    for p in range(n):
        for q in range(p + 1, n):
            if pp[q] < pp[p]:
                odd ^= 1 ^ (dd[p] & dd[q])
    return -1 if odd else 1


def unshuffles(int i, int n):
    cdef list out = []
    cdef int[64] head
    cdef char[64] used
    cdef int j, t, k
    if n > 64:
        raise ValueError("word too long")
    for j in range(i):
        head[j] = j
    while True:
        for k in range(n):
            used[k] = 0
        for j in range(i):
            used[head[j]] = 1
        out.append(tuple([head[j] for j in range(i)] + [k for k in range(n) if not used[k]]))
        j = i - 1
        while j >= 0 and head[j] == n - i + j:
            j -= 1
        if j < 0:
            return out
        head[j] += 1
        for t in range(j + 1, i):
            head[t] = head[t - 1] + 1
