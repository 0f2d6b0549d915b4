"""Highest coefficient Z_{a,b} and the three summation lemmas as (lhs, rhs) pairs.

Each lemma function returns the brute-force partition sum and the closed form
separately so that callers can compare them in either backend.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .dwpf import delta, dwpf
from .errors import CardinalityError, SizeError
from .field import F, H, T, h, shift, t
from .linalg import det
from .partitions import all_two_splits, enumerate_partitions


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


# --- highest coefficient ----------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _z_first(t_: tuple, x: tuple, s: tuple, y: tuple, c):
    a, b = len(t_), len(s)
    w = s + x
    sm = 0
    s_c = shift(s, -c)
    for p in enumerate_partitions(a + b, (b, a)):
        wI, wII = p.pick(w)
        sm = sm + dwpf(s_c, wI, c) * dwpf(wII, t_, c) * dwpf(y, wI, c) * F(wI, wII, c)
    return _sgn(b) * sm


@lru_cache(maxsize=1 << 16)
def _z_second(t_: tuple, x: tuple, s: tuple, y: tuple, c):
    a, b = len(t_), len(s)
    yc = shift(y, c)
    eta = yc + t_
    sm = 0
    for p in enumerate_partitions(a + b, (a, b)):
        eI, eII = p.pick(eta)
        eII_c = shift(eII, -c)
        sm = sm + dwpf(eII_c, yc, c) * dwpf(x, eI, c) * dwpf(eII_c, s, c) * F(eI, eII, c)
    return _sgn(b) * F(y, x, c) * F(s, t_, c) * sm


def highest_coeff(t_: Sequence, x: Sequence, s: Sequence, y: Sequence, c, representation: str = "first"):
    """Z_{a,b}(t; x | s; y) with #t = #x = a and #s = #y = b."""
    if len(t_) != len(x) or len(s) != len(y):
        raise SizeError("Z_{a,b} needs #t = #x and #s = #y")
    args = (tuple(t_), tuple(x), tuple(s), tuple(y), c)
    rep = representation.lower()
    if rep == "first":
        return _z_first(*args)
    if rep == "second":
        return _z_second(*args)
    raise ValueError(f"unknown representation {representation!r}")


# --- sum over splits of xi into two DWPFs ---------------------------

def lemma1_pair(xi: Sequence, alpha: Sequence, beta: Sequence, c, variant: str = "old1"):
    m1, m2 = len(alpha), len(beta)
    if len(xi) != m1 + m2:
        raise CardinalityError("#xi must equal #alpha + #beta")
    xi, alpha, beta = tuple(xi), tuple(alpha), tuple(beta)
    lhs = 0
    for p in enumerate_partitions(m1 + m2, (m1, m2)):
        xI, xII = p.pick(xi)
        lhs = lhs + dwpf(xI, alpha, c) * dwpf(beta, xII, c) * F(xII, xI, c)
    v = variant.lower()
    if v == "old1":
        rhs = _sgn(m1) * F(xi, alpha, c) * dwpf(shift(alpha, -c) + beta, xi, c)
    elif v == "old2":
        rhs = _sgn(m2) * F(beta, xi, c) * dwpf(xi, alpha + shift(beta, c), c)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lhs, rhs


# --- sum over all splits of w into a determinant --------------------

def _lemma2_rhs(w, xi, C1, C2, c, first: bool):
    m = len(w)
    sg = _sgn(m)
    rows = []
    for j in range(m):
        row = []
        for k in range(m):
            a_term = t(w[k], xi[j], c) * H(w[k], xi, c)   # t(w_k, xi_j) h(w_k, xi)
            b_term = t(xi[j], w[k], c) * H(xi, w[k], c)   # t(xi_j, w_k) h(xi, w_k)
            if first:
                row.append(C2[k] * a_term + sg * C1[k] * b_term)
            else:
                row.append(C1[k] * b_term + sg * C2[k] * a_term)
        rows.append(row)
    return delta(xi, c, primed=True) * delta(w, c) * det(rows)


def lemma2_pair(w: Sequence, xi: Sequence, C1: Sequence, C2: Sequence, c, variant: str = "det1"):
    """C1, C2 are value tables indexed like ``w``."""
    m = len(w)
    if len(xi) != m or len(C1) != m or len(C2) != m:
        raise CardinalityError("#w, #xi and both value tables must agree")
    w, xi = tuple(w), tuple(xi)
    v = variant.lower()
    if v not in ("det1", "det2"):
        raise ValueError(f"unknown variant {variant!r}")
    lhs = 0
    for p in all_two_splits(m):
        iI, iII = p.subsets
        wI, wII = p.pick(w)
        coef = 1
        for i in iI:
            coef = coef * C1[i]
        for i in iII:
            coef = coef * C2[i]
        if coef == 0:
            continue
        if v == "det1":
            term = dwpf(shift(wI, -c) + wII, xi, c) * F(xi, wI, c) * F(wII, wI, c)
        else:
            term = dwpf(xi, wI + shift(wII, c), c) * F(wII, xi, c) * F(wII, wI, c)
        lhs = lhs + term * coef
    rhs = _lemma2_rhs(w, xi, C1, C2, c, first=(v == "det1"))
    return lhs, rhs


# --- double sum with matched cardinalities --------------------------

def lemma3_lhs(alpha: Sequence, beta: Sequence, c):
    m = len(alpha)
    alpha, beta = tuple(alpha), tuple(beta)
    out = 0
    for k in range(m + 1):
        for pa in enumerate_partitions(m, (k, m - k)):
            aI, aII = pa.pick(alpha)
            aII_c = shift(aII, c)
            left = F(aI, aII, c)
            for pb in enumerate_partitions(m, (k, m - k)):
                bI, bII = pb.pick(beta)
                out = out + F(bII, bI, c) * left * dwpf(bI, aI, c) * dwpf(aII_c, bII, c)
    return out


def lemma3_rhs(alpha: Sequence, beta: Sequence, c):
    return _sgn(len(alpha)) * T(tuple(alpha), tuple(beta), c) * H(tuple(alpha), tuple(alpha), c) * H(tuple(beta), tuple(beta), c)


def lemma3_pair(alpha: Sequence, beta: Sequence, c):
    if len(alpha) != len(beta):
        raise CardinalityError("#alpha must equal #beta")
    return lemma3_lhs(alpha, beta, c), lemma3_rhs(alpha, beta, c)


def clear_caches():
    _z_first.cache_clear()
    _z_second.cache_clear()
