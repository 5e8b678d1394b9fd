"""Smith normal form of integer matrices with unimodular transforms.

Matrices are lists of lists of Python ints (arbitrary precision).
"""

from __future__ import annotations

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


def _swap_rows(A, i, j):
    A[i], A[j] = A[j], A[i]


def _swap_cols(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def _add_row(A, dst, src, q):
    """row[dst] += q * row[src]"""
    rs, rd = A[src], A[dst]
    for k in range(len(rd)):
        if rs[k]:
            rd[k] += q * rs[k]


def _add_col(A, dst, src, q):
    for row in A:
        if row[src]:
            row[dst] += q * row[src]


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with non-negative
    entries ``d_1 | d_2 | ...``.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, r)) for r in M]
    U = identity(m)
    V = identity(n)

    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return U, A, V
            _, i, j = best
            if i != t:
                _swap_rows(A, i, t)
                _swap_rows(U, i, t)
            if j != t:
                _swap_cols(A, j, t)
                _swap_cols(V, j, t)

            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = -(A[i][t] // piv)
                    _add_row(A, i, t, q)
                    _add_row(U, i, t, q)
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    q = -(A[t][j] // piv)
                    _add_col(A, j, t, q)
                    _add_col(V, j, t, q)
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            # divisibility: fold an offending row into the pivot row and retry
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            _add_row(A, t, bad, 1)
            _add_row(U, t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
    return U, A, V


def invariants(D: IntMatrix) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def solve_left_system(M: IntMatrix, T: IntMatrix) -> IntMatrix | None:
    """An integer X with ``M @ X == T``, or ``None`` if none exists."""
    U, D, V = smith_normal_form(M)
    m = len(M)
    n = len(M[0]) if m else 0
    UT = matmul(U, T)
    cols = len(T[0]) if T else 0
    Y = [[0] * cols for _ in range(n)]
    for i in range(m):
        d = D[i][i] if i < n else 0
        for j in range(cols):
            v = UT[i][j]
            if d == 0:
                if v:
                    return None
            else:
                if v % d:
                    return None
                Y[i][j] = v // d
    return matmul(V, Y)


def right_inverse(M: IntMatrix) -> IntMatrix | None:
    """X with ``M @ X == I`` (M is k x K), or ``None`` when M has no right inverse."""
    return solve_left_system(M, identity(len(M)))


def det(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1
