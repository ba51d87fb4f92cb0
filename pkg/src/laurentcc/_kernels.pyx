# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_kernels_py``; same signatures."""

from libc.stdlib cimport malloc, free
from gmpy2 import mpq

QZERO = mpq(0)

# above this the int64 product of two residues may overflow
DEF SAFE_MOD = 3037000499


def vec_mul(tuple a, tuple b, tuple table, mod):
    cdef Py_ssize_t n = len(a), t
    cdef list out
    cdef tuple trip
    cdef long long m, acc_i
    cdef long long *acc
    if mod and mod < SAFE_MOD:
        m = mod
        acc = <long long *> malloc(n * sizeof(long long))
        try:
            for t in range(n):
                acc[t] = 0
            for trip in table:
                acc[<Py_ssize_t> trip[2]] = (acc[<Py_ssize_t> trip[2]]
                    + (<long long> a[<Py_ssize_t> trip[0]]) * (<long long> b[<Py_ssize_t> trip[1]])) % m
            return tuple([acc[t] for t in range(n)])
        finally:
            free(acc)
    zero = 0 if mod else QZERO
    out = [zero] * n
    for trip in table:
        x = a[<Py_ssize_t> trip[0]]
        if x:
            y = b[<Py_ssize_t> trip[1]]
            if y:
                out[<Py_ssize_t> trip[2]] += x * y
    if mod:
        return tuple([v % mod for v in out])
    return tuple(out)


cdef list _series_mul_mod(list A, list B, tuple table, Py_ssize_t K, long long m, Py_ssize_t n):
    cdef Py_ssize_t la = min(len(A), n), lb = min(len(B), n)
    cdef Py_ssize_t i, j, d, p, q, r, s, ntab = len(table)
    cdef long long *a = <long long *> malloc((la * K + 1) * sizeof(long long))
    cdef long long *b = <long long *> malloc((lb * K + 1) * sizeof(long long))
    cdef long long *c = <long long *> malloc((n * K + 1) * sizeof(long long))
    cdef Py_ssize_t *tp = <Py_ssize_t *> malloc((3 * ntab + 1) * sizeof(Py_ssize_t))
    cdef char *nza = <char *> malloc(la + 1)
    cdef char *nzb = <char *> malloc(lb + 1)
    cdef long long x
    cdef tuple v
    try:
        for s in range(ntab):
            tp[3 * s] = table[s][0]
            tp[3 * s + 1] = table[s][1]
            tp[3 * s + 2] = table[s][2]
        for i in range(la):
            v = A[i]
            nza[i] = 0
            for p in range(K):
                a[i * K + p] = v[p]
                if a[i * K + p]:
                    nza[i] = 1
        for j in range(lb):
            v = B[j]
            nzb[j] = 0
            for p in range(K):
                b[j * K + p] = v[p]
                if b[j * K + p]:
                    nzb[j] = 1
        for d in range(n * K):
            c[d] = 0
        for i in range(la):
            if not nza[i]:
                continue
            for j in range(lb):
                d = i + j
                if d >= n:
                    break
                if not nzb[j]:
                    continue
                for s in range(ntab):
                    p = tp[3 * s]
                    x = a[i * K + p]
                    if x:
                        q = tp[3 * s + 1]
                        r = tp[3 * s + 2]
                        c[d * K + r] = (c[d * K + r] + x * b[j * K + q]) % m
        return [tuple([c[d * K + p] for p in range(K)]) for d in range(n)]
    finally:
        free(a)
        free(b)
        free(c)
        free(tp)
        free(nza)
        free(nzb)


def series_mul(A, B, tuple table, Py_ssize_t K, mod, Py_ssize_t n):
    """Truncated product: ``C[d] = sum A[i] * B[d - i]`` for ``d < n``."""
    cdef Py_ssize_t i, j, d
    cdef list acc, row, nza, nzb
    cdef tuple trip
    if not isinstance(A, list):
        A = list(A)
    if not isinstance(B, list):
        B = list(B)
    if mod and mod < SAFE_MOD:
        return _series_mul_mod(A, B, table, K, mod, n)
    zero = 0 if mod else QZERO
    acc = [[zero] * K for _ in range(n)]
    nza = [(i, A[i]) for i in range(min(len(A), n)) if any(A[i])]
    nzb = [(j, B[j]) for j in range(min(len(B), n)) if any(B[j])]
    for i, a in nza:
        for j, b in nzb:
            d = i + j
            if d >= n:
                break
            row = acc[d]
            for trip in table:
                x = a[<Py_ssize_t> trip[0]]
                if x:
                    y = b[<Py_ssize_t> trip[1]]
                    if y:
                        row[<Py_ssize_t> trip[2]] += x * y
    if mod:
        return [tuple([v % mod for v in row]) for row in acc]
    return [tuple(row) for row in acc]
