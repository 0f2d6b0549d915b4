"""Domain-wall partition function K_n(x|y) and the Vandermonde-type products."""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import SizeError
from .field import g, h
from .linalg import det


def delta(xs: Sequence, c, primed: bool = False):
    """prod_{j<k} g(x_j, x_k), or prod_{j>k} g(x_j, x_k) when ``primed``."""
    out = 1
    n = len(xs)
    for j in range(n):
        for k in range(j + 1, n):
            out = out * (g(xs[k], xs[j], c) if primed else g(xs[j], xs[k], c))
    return out


def delta_products(xs: Sequence, c, primed: bool = False):
    return delta(xs, c, primed)


def dwpf_matrix(xs: Sequence, ys: Sequence, c) -> list:
    """Rows j, columns k: g(x_j, y_k) prod_{l != k} h(x_j, y_l).

    This is h(x_j, ybar) t(x_j, y_k) with the cancelling factor removed, so it
    stays finite at x_j - y_k = -c.
    """
    n = len(xs)
    hs = [[h(x, y, c) for y in ys] for x in xs]
    rows = []
    for j in range(n):
        row = []
        for k in range(n):
            v = g(xs[j], ys[k], c)
            for l in range(n):
                if l != k:
                    v = v * hs[j][l]
            row.append(v)
        rows.append(row)
    return rows


@lru_cache(maxsize=1 << 18)
def _dwpf(xs: tuple, ys: tuple, c):
    n = len(xs)
    if n == 0:
        return 1
    return delta(xs, c, primed=True) * delta(ys, c) * det(dwpf_matrix(xs, ys, c))


def dwpf(xs: Sequence, ys: Sequence, c):
    """K_n(xs|ys) = Delta'_n(x) Delta_n(y) h(x, y) det t(x_j, y_k); K_0 = 1."""
    if len(xs) != len(ys):
        raise SizeError(f"K_n needs equal sizes, got {len(xs)} and {len(ys)}")
    return _dwpf(tuple(xs), tuple(ys), c)


def clear_cache():
    _dwpf.cache_clear()
