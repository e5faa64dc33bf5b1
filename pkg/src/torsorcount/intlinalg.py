"""Small exact integer linear algebra: Smith and Hermite normal forms, solves."""

from __future__ import annotations

from fractions import Fraction


def _copy(A):
    return [list(row) for row in A]


def identity(n: int):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def smith_normal_form(A):
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` diagonal, U and V unimodular.

    Pivoting: at each stage the nonzero entry of least absolute value in the
    remaining block is chosen, ties broken by (column, row) order, so the
    result depends only on the input matrix.
    """
    D = _copy(A)
    m = len(D)
    n = len(D[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    for s in range(min(m, n)):
        while True:
            best = None
            for j in range(s, n):
                for i in range(s, m):
                    v = D[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return D, U, V
            _, i, j = best
            swap_rows(D, s, i)
            swap_rows(U, s, i)
            swap_cols(D, s, j)
            swap_cols(V, s, j)
            p = D[s][s]
            done = True
            for i in range(s + 1, m):
                q = D[i][s] // p
                if q:
                    D[i] = [x - q * y for x, y in zip(D[i], D[s])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[s])]
                if D[i][s]:
                    done = False
            for j in range(s + 1, n):
                q = D[s][j] // p
                if q:
                    for row in D:
                        row[j] -= q * row[s]
                    for row in V:
                        row[j] -= q * row[s]
                if D[s][j]:
                    done = False
            if not done:
                continue
            # divisibility condition on the remaining block
            bad = next(
                ((i, j) for i in range(s + 1, m) for j in range(s + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            i, _ = bad
            D[s] = [x + y for x, y in zip(D[s], D[i])]
            U[s] = [x + y for x, y in zip(U[s], U[i])]
        if D[s][s] < 0:
            D[s] = [-x for x in D[s]]
            U[s] = [-x for x in U[s]]
    return D, U, V


def hermite_normal_form_rows(A):
    """Row-style HNF of an integer matrix with full row rank.

    Pivots positive, entries above each pivot reduced into ``[0, pivot)``.
    """
    H = _copy(A)
    m = len(H)
    n = len(H[0]) if m else 0
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][j]]
            if not nz:
                break
            i = min(nz, key=lambda k: (abs(H[k][j]), k))
            H[r], H[i] = H[i], H[r]
            if H[r][j] < 0:
                H[r] = [-x for x in H[r]]
            clean = True
            for k in range(r + 1, m):
                q = H[k][j] // H[r][j]
                if q:
                    H[k] = [x - q * y for x, y in zip(H[k], H[r])]
                if H[k][j]:
                    clean = False
            if clean:
                break
        if r < m and H[r][j]:
            for k in range(r):
                q = H[k][j] // H[r][j]
                if q:
                    H[k] = [x - q * y for x, y in zip(H[k], H[r])]
            r += 1
    return H


def solve_rational(A, b):
    """Solve the square system ``A x = b`` exactly; None if singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def det(A):
    """Exact determinant (Fraction-valued Gaussian elimination)."""
    n = len(A)
    M = [[Fraction(v) for v in row] for row in A]
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            d = -d
        pv = M[col][col]
        d *= pv
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] / pv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return d


def rank(rows) -> int:
    M = [[Fraction(v) for v in row] for row in rows]
    if not M:
        return 0
    n = len(M[0])
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][col] != 0:
                f = M[i][col] / M[r][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r
