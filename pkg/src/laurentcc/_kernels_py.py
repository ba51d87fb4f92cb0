"""Pure-Python arithmetic kernels.

A ring element is a tuple of base-ring scalars indexed by monomials of the
nilpotent generators; ``table`` lists ``(i, j, k)`` with ``mono_i * mono_j ==
mono_k`` for every product that survives the truncation.  ``mod == 0`` means
rational scalars (``gmpy2.mpq``), otherwise Python ints reduced mod ``mod``.
"""

from gmpy2 import mpq

QZERO = mpq(0)


def vec_mul(a, b, table, mod):
    zero = 0 if mod else QZERO
    out = [zero] * len(a)
    for i, j, k in table:
        x = a[i]
        if x:
            y = b[j]
            if y:
                out[k] += x * y
    if mod:
        return tuple([v % mod for v in out])
    return tuple(out)


def series_mul(A, B, table, K, mod, n):
    """Truncated product: ``C[d] = sum A[i] * B[d - i]`` for ``d < n``."""
    zero = 0 if mod else QZERO
    acc = [[zero] * K for _ in range(n)]
    nza = [(i, a) for i, a in enumerate(A[:n]) if any(a)]
    nzb = [(j, b) for j, b in enumerate(B[:n]) if any(b)]
    if K == 1:
        for i, a in nza:
            x = a[0]
            for j, b in nzb:
                d = i + j
                if d >= n:
                    break
                acc[d][0] += x * b[0]
    else:
        for i, a in nza:
            for j, b in nzb:
                d = i + j
                if d >= n:
                    break
                row = acc[d]
                for p, q, r in table:
                    x = a[p]
                    if x:
                        y = b[q]
                        if y:
                            row[r] += x * y
    if mod:
        return [tuple([v % mod for v in row]) for row in acc]
    return [tuple(row) for row in acc]
