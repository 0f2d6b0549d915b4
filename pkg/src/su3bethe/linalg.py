"""Determinants over either scalar backend.

Exact entries go through Bareiss fraction-free elimination, so nothing is ever
rounded.  Float entries use LU with partial pivoting; a pivot that is tiny
relative to the largest entry is reported as numerical singularity.
"""
from __future__ import annotations

from .errors import SingularError
from .field import is_exact

SINGULAR_TOL = 1e-13


def _all_exact(m) -> bool:
    return all(is_exact(x) for row in m for x in row)


def det_bareiss(m):
    """Bareiss elimination with row swaps.  Works over any exact field."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0 * a[0][0]
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - aik * a[k][j]) / prev
            a[i][k] = 0
        prev = piv
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def det_lu(m, tol: float | None = SINGULAR_TOL):
    """LU with partial pivoting for complex (or mpmath) entries.

    ``tol=None`` disables the singularity check and returns the (possibly tiny)
    product of pivots.
    """
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    scale = max(abs(x) for row in a for x in row)
    if scale == 0:
        if tol is not None:
            raise SingularError("zero matrix")
        return 0 * a[0][0]
    out = 1
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if tol is not None and abs(a[p][k]) <= tol * scale:
            raise SingularError(f"pivot {abs(a[p][k]):.3e} below {tol:g} x {scale:.3e}")
        if p != k:
            a[k], a[p] = a[p], a[k]
            out = -out
        piv = a[k][k]
        out = out * piv
        if piv == 0:
            return out
        for i in range(k + 1, n):
            fac = a[i][k] / piv
            if fac != 0:
                for j in range(k + 1, n):
                    a[i][j] -= fac * a[k][j]
    return out


def det(m, tol: float | None = SINGULAR_TOL):
    """Determinant, dispatching on the entry type."""
    if len(m) == 0:
        return 1
    if _all_exact(m):
        return det_bareiss(m)
    return det_lu(m, tol)
