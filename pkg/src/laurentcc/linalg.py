"""Dense matrices of ring elements: division-free determinant and unit-pivot solves.

Matrices are lists of rows of :class:`RingElement`.
"""

from __future__ import annotations

from .errors import NotAUnitError


def berkowitz_det(A, ring):
    """Determinant via Berkowitz's characteristic polynomial recursion.

    Uses only ring additions and multiplications, so it is valid over rings
    with zero divisors.
    """
    n = len(A)
    if n == 0:
        return ring.one
    zero, one = ring.zero, ring.one
    poly = [one, -A[0][0]]
    for k in range(1, n):
        # leading k x k block M, row R = A[k][:k], column S = A[:k][k]
        a = A[k][k]
        col = [A[i][k] for i in range(k)]
        toeplitz = [one, -a]
        vec = col
        for _ in range(k):
            s = zero
            for j in range(k):
                if A[k][j] and vec[j]:
                    s = s + A[k][j] * vec[j]
            toeplitz.append(-s)
            vec = [sum((A[i][j] * vec[j] for j in range(k) if A[i][j] and vec[j]), zero)
                   for i in range(k)]
        # new poly = T @ poly where T is (k+2) x (k+1) lower triangular Toeplitz
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(min(i, k) + 1):
                if toeplitz[i - j] and poly[j]:
                    s = s + toeplitz[i - j] * poly[j]
            new.append(s)
        poly = new
    det = poly[-1]
    return det if n % 2 == 0 else -det


def elimination_det(A, ring):
    """Determinant by Gaussian elimination with unit pivots (local rings).

    Raises :class:`NotAUnitError` when a column has no unit entry, which in a
    local ring means the determinant is not a unit.
    """
    n = len(A)
    M = [list(row) for row in A]
    det = ring.one
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c].is_unit()), None)
        if p is None:
            raise NotAUnitError("no unit pivot; determinant is not a unit")
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        piv = M[c][c]
        det = det * piv
        inv = piv.inverse()
        for r in range(c + 1, n):
            if M[r][c]:
                factor = M[r][c] * inv
                M[r] = [x - factor * y for x, y in zip(M[r], M[c])]
    return det


def inverse_columns(T, ring, count):
    """First ``count`` columns of ``T^-1`` by Gauss-Jordan with unit pivots.

    Works on raw coefficient vectors for speed; ``T`` is a list of rows of
    vectors.  Returns a list of columns (each a list of vectors).
    """
    n = len(T)
    vmul, vsub = ring.vmul, ring.vsub
    z = ring.zero_vec
    one = ring.one.vec
    rows = [list(T[r]) + [one if r == c else z for c in range(count)] for r in range(n)]
    from .rings import RingElement
    for c in range(n):
        p = next((r for r in range(c, n) if ring.base_is_unit(rows[r][c][0])), None)
        if p is None:
            raise NotAUnitError("truncated operator has no unit pivot")
        rows[c], rows[p] = rows[p], rows[c]
        inv = RingElement(ring, rows[c][c]).inverse().vec
        pivot_row = [vmul(inv, x) if any(x) else z for x in rows[c]]
        rows[c] = pivot_row
        nz = [j for j, x in enumerate(pivot_row) if any(x)]
        for r in range(n):
            if r == c:
                continue
            f = rows[r][c]
            if not any(f):
                continue
            row = rows[r]
            for j in nz:
                row[j] = vsub(row[j], vmul(f, pivot_row[j]))
    return [[rows[r][n + c] for r in range(n)] for c in range(count)]
