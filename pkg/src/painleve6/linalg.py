"""Small dense solver that works for complex floats and gmpy2.mpc alike."""
from __future__ import annotations


def _mag(z) -> float:
    return float(abs(z))


def solve_overdetermined(rows: list[list], rhs: list, pivot_tol: float = 1e-9, scale: float | None = None):
    """Solve A c = b for a consistent, possibly tall system.

    Gaussian elimination with complete pivoting.  Returns (c, rank,
    leftover) where ``leftover`` is the largest absolute residual in the
    rows that were not used as pivots.
    Pivots smaller than ``pivot_tol`` times ``scale`` (default: the largest
    entry) count as zero.
    """
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    if scale is None:
        scale = max((_mag(v) for r in rows for v in r), default=0.0) or 1.0
    cols = list(range(nc))
    rank = 0
    for k in range(min(nr, nc)):
        best, bi, bj = 0.0, -1, -1
        for i in range(k, nr):
            for j in range(k, nc):
                m = _mag(A[i][j])
                if m > best:
                    best, bi, bj = m, i, j
        if best <= pivot_tol * scale:
            break
        A[k], A[bi] = A[bi], A[k]
        if bj != k:
            for r in A:
                r[k], r[bj] = r[bj], r[k]
            cols[k], cols[bj] = cols[bj], cols[k]
        piv = A[k][k]
        for i in range(k + 1, nr):
            f = A[i][k] / piv
            if f != 0:
                Ai, Ak = A[i], A[k]
                for j in range(k, nc + 1):
                    Ai[j] = Ai[j] - f * Ak[j]
        rank += 1
    x = [0] * nc
    for k in range(rank - 1, -1, -1):
        s = A[k][nc]
        for j in range(k + 1, rank):
            s = s - A[k][j] * x[j]
        x[k] = s / A[k][k]
    sol = [0] * nc
    for k in range(nc):
        sol[cols[k]] = x[k] if k < rank else 0 * rhs[0]
    leftover = max((_mag(A[i][nc] - sum((A[i][j] * x[j] for j in range(rank)), 0 * A[i][nc]))
                    for i in range(rank, nr)), default=0.0)
    return sol, rank, leftover
