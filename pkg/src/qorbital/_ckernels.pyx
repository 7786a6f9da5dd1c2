# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot kernels in ``_kernels_py``."""

from libc.stdlib cimport malloc, free

from qorbital import _kernels_py

cdef long long LIMIT = 1LL << 62
_TMAX = {}  # tables are long-lived per-conductor tuples


def poly_mulmod(a, b, table, int phi):
    cdef int i, j, t, e
    cdef long long v
    amax = max(abs(x) for x in a)
    bmax = max(abs(x) for x in b)
    key = id(table)
    tmax = _TMAX.get(key)
    if tmax is None:
        tmax = _TMAX[key] = max(max(abs(x) for x in row) for row in table)
    if amax == 0 or bmax == 0:
        return [0] * phi
    # every intermediate is bounded by phi^2 * amax * bmax * tmax
    if amax * bmax * max(tmax, 1) * phi * phi >= LIMIT:
        return _kernels_py.poly_mulmod(a, b, table, phi)

    cdef long long *ca = <long long *> malloc(phi * sizeof(long long))
    cdef long long *cb = <long long *> malloc(phi * sizeof(long long))
    cdef long long *prod = <long long *> malloc((2 * phi - 1) * sizeof(long long))
    cdef long long *out = <long long *> malloc(phi * sizeof(long long))
    try:
        for i in range(phi):
            ca[i] = a[i]
            cb[i] = b[i]
            out[i] = 0
        for e in range(2 * phi - 1):
            prod[e] = 0
        for i in range(phi):
            if ca[i]:
                for j in range(phi):
                    prod[i + j] += ca[i] * cb[j]
        for e in range(2 * phi - 1):
            if prod[e]:
                row = table[e]
                for t in range(phi):
                    v = row[t]
                    if v:
                        out[t] += prod[e] * v
        return [out[t] for t in range(phi)]
    finally:
        free(ca)
        free(cb)
        free(prod)
        free(out)


def reduce_exponents(coeffs, table, int phi):
    return _kernels_py.reduce_exponents(coeffs, table, phi)


cdef inline int _find(int *parent, int x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def pair_classes(ent, nz, int n):
    cdef int size = n * n
    cdef int m = len(nz)
    cdef int i, j, k, l, a, b, src, x
    cdef long long raw = 0
    cdef int *parent = <int *> malloc(size * sizeof(int))
    cdef int *cent = <int *> malloc(size * sizeof(int))
    cdef unsigned char *cnz = <unsigned char *> malloc(m * m * sizeof(unsigned char))
    try:
        for x in range(size):
            parent[x] = x
        for i in range(n):
            for j in range(n):
                cent[i * n + j] = ent[i][j]
        for a in range(m):
            row = nz[a]
            for b in range(m):
                cnz[a * m + b] = 1 if row[b] else 0
        for i in range(n):
            for k in range(n):
                src = i * n + k
                for j in range(n):
                    a = cent[i * n + j] * m
                    for l in range(n):
                        if cnz[a + cent[k * n + l]]:
                            raw += 1
                            x = _find(parent, src)
                            b = _find(parent, j * n + l)
                            if x != b:
                                if x < b:
                                    parent[b] = x
                                else:
                                    parent[x] = b
        return [_find(parent, x) for x in range(size)], raw
    finally:
        free(parent)
        free(cent)
        free(cnz)
