"""Intermediate forms linking the partition sum to the single block determinant.

Each stage is an independent evaluation of the same reduced scalar product
S_hat = S / (f(vC, uC) f(vB, uB)):

    subsub_sum        four-way sub-partitions of uB and vC (small a, b only)
    sub_new_part      two-way partitions with L-tilde and G as partition sums
    sub_new_part_red  the same with L-tilde as determinants and G closed
    pre_fin           rescaled L determinants with the g-ratio weights
    laplace_expansion block-row expansion of the single determinant
    hat_s             the single (a+b) determinant
"""
from __future__ import annotations

from .dwpf import delta, dwpf
from .errors import SizeError
from .field import F, H, T, f_inv, g, prod, shift, t
from .linalg import det
from .partitions import enumerate_partitions, partition_sign
from .scalar_product import BetheData, _others, div

SUBSUB_MAX = 2


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


def _r(table, xs):
    return prod(table[x] for x in xs)


# --- L-tilde matrices and determinants -----------------------------------------

def n_tilde_u(d: BetheData, j: int, w):
    """u-block entry before rescaling; the r1 term vanishes when w is in vC."""
    c, uC = d.c, d.uC
    out = -d.kappa * _sgn(d.a) * t(w, uC[j], c) * H(w, uC, c)
    if w not in d.vC:
        out = out + d.r1[w] * t(uC[j], w, c) * H(uC, w, c) * prod(f_inv(v, w, c) for v in d.vC)
    return out


def n_tilde_v(d: BetheData, j: int, w):
    """v-block entry before rescaling; the r3 term vanishes when w is in uB."""
    c, vB = d.c, d.vB
    out = -_sgn(d.b) * t(vB[j], w, c) * H(vB, w, c)
    if w not in d.uB:
        out = out + d.r3[w] * t(w, vB[j], c) * H(w, vB, c) * prod(f_inv(w, u, c) for u in d.uB)
    return out


def n_u(d: BetheData, j: int, w):
    return -_sgn(d.a) * n_tilde_u(d, j, w) * H(d.vC, w, d.c)


def n_v(d: BetheData, j: int, w):
    return -_sgn(d.b) * n_tilde_v(d, j, w) * H(w, d.uB, d.c)


def _ldet(entry, d, xs, ws):
    m = len(ws)
    if m == 0:
        return 1
    M = [[entry(d, j, w) for w in ws] for j in range(m)]
    return delta(xs, d.c, primed=True) * delta(ws, d.c) * det(M, None)


def l_tilde_a(d: BetheData, ws):
    return _ldet(n_tilde_u, d, d.uC, tuple(ws))


def l_tilde_b(d: BetheData, ws):
    return _ldet(n_tilde_v, d, d.vB, tuple(ws))


def l_a(d: BetheData, ws):
    return _ldet(n_u, d, d.uC, tuple(ws))


def l_b(d: BetheData, ws):
    return _ldet(n_v, d, d.vB, tuple(ws))


# --- L-tilde and G as partition sums ---------------------------------------------

def l_tilde_a_sum(d: BetheData, uB_II, vC_I):
    """Sum over uB_II = {i, iv}; equals l_tilde_a(uB_II + vC_I)."""
    c, a, k = d.c, d.a, d.kappa
    uB_II, vC_I = tuple(uB_II), tuple(vC_I)
    total = 0
    m = len(uB_II)
    for ki in range(m + 1):
        for p in enumerate_partitions(m, (ki, m - ki)):
            ui, uiv = p.pick(uB_II)
            ys = ui + shift(vC_I, c) + shift(uiv, c)
            term = (dwpf(d.uC, ys, c) * _sgn(a - ki) * k ** (a - ki) * _r(d.r1, ui)
                    * prod(f_inv(v, u, c) for v in d.vC for u in ui)
                    * F(uiv, ui, c) * F(vC_I, ui, c) * F(uiv, d.uC, c) * F(vC_I, d.uC, c))
            total = total + term
    return total


def l_tilde_b_sum(d: BetheData, vC_II, uB_I):
    """Sum over vC_II = {i, iv}; equals l_tilde_b(vC_II + uB_I)."""
    c, b = d.c, d.b
    vC_II, uB_I = tuple(vC_II), tuple(uB_I)
    total = 0
    m = len(vC_II)
    for ni in range(m + 1):
        for p in enumerate_partitions(m, (ni, m - ni)):
            vi, viv = p.pick(vC_II)
            xs = shift(vi, -c) + shift(uB_I, -c) + viv
            term = (dwpf(xs, d.vB, c) * _sgn(b - len(viv)) * _r(d.r3, viv)
                    * prod(f_inv(v, u, c) for v in viv for u in d.uB)
                    * F(viv, vi, c) * F(viv, uB_I, c) * F(d.vB, vi, c) * F(d.vB, uB_I, c))
            total = total + term
    return total


def r1_hat(d: BetheData, j: int):
    """r1(uB_j) divided by the rest of its Bethe equation; 1 on shell."""
    c, uB = d.c, d.uB
    u = uB[j]
    rest = _others(uB, j)
    return d.r1[u] * div(F(rest, u, c), F(u, rest, c)) * prod(f_inv(v, u, c) for v in d.vB)


def r3_hat(d: BetheData, j: int):
    """r3(vC_j) divided by the rest of its twisted Bethe equation; kappa on shell."""
    c, vC = d.c, d.vC
    v = vC[j]
    rest = _others(vC, j)
    return d.r3[v] * div(F(v, rest, c), F(rest, v, c)) * prod(f_inv(v, u, c) for u in d.uC)


def g_sum(d: BetheData, iu, iv):
    """G over index subsets iu of uB and iv of vC (equal sizes), as a partition sum."""
    c, k = d.c, d.kappa
    uB_I = tuple(d.uB[i] for i in iu)
    vC_I = tuple(d.vC[i] for i in iv)
    n = len(uB_I)
    if len(vC_I) != n:
        raise SizeError("G needs #uB_I = #vC_I")
    total = 0
    for kiii in range(n + 1):
        for pu in enumerate_partitions(n, (n - kiii, kiii)):
            uii, uiii = pu.pick(uB_I)
            hat1 = prod(r1_hat(d, iu[i]) for i in pu.subsets[1])
            for pv in enumerate_partitions(n, (kiii, n - kiii)):
                vii, viii = pv.pick(vC_I)
                hat3 = prod(r3_hat(d, iv[i]) for i in pv.subsets[0])
                total = total + (div(1, k ** kiii) * hat1 * hat3 * F(viii, vii, c) * F(uiii, uii, c)
                                 * dwpf(uii, viii, c) * dwpf(shift(vii, c), uiii, c))
    return total


def g_closed(d: BetheData, uB_I, vC_I):
    c = d.c
    uB_I, vC_I = tuple(uB_I), tuple(vC_I)
    return _sgn(len(uB_I)) * T(vC_I, uB_I, c) * H(uB_I, uB_I, c) * H(vC_I, vC_I, c)


# --- two-way forms --------------------------------------------------------------

def _two_way(d: BetheData):
    """Yield (n_I, index partitions, uB_I, uB_II, vC_I, vC_II) with #uB_I = #vC_I."""
    a, b = d.a, d.b
    for nI in range(min(a, b) + 1):
        for pu in enumerate_partitions(a, (nI, a - nI)):
            uB_I, uB_II = pu.pick(d.uB)
            for pv in enumerate_partitions(b, (nI, b - nI)):
                vC_I, vC_II = pv.pick(d.vC)
                yield nI, pu, pv, uB_I, uB_II, vC_I, vC_II


def sub_new_part(d: BetheData):
    """Two-way sum with L-tilde and G all given by their own partition sums."""
    c = d.c
    total = 0
    for nI, pu, pv, uB_I, uB_II, vC_I, vC_II in _two_way(d):
        weight = F(vC_II, uB_II, c) * F(uB_I, uB_II, c) * F(vC_II, vC_I, c)
        G_ = g_sum(d, pu.subsets[0], pv.subsets[0])
        if G_ == 0:
            continue
        total = total + weight * G_ * l_tilde_a_sum(d, uB_II, vC_I) * l_tilde_b_sum(d, vC_II, uB_I)
    return total


def sub_new_part_red(d: BetheData):
    """Two-way sum with G in closed form and L-tilde as determinants."""
    c = d.c
    total = 0
    for nI, pu, pv, uB_I, uB_II, vC_I, vC_II in _two_way(d):
        weight = (_sgn(nI) * F(vC_II, uB_II, c) * F(uB_I, uB_II, c) * F(vC_II, vC_I, c)
                  * T(vC_I, uB_I, c) * H(uB_I, uB_I, c) * H(vC_I, vC_I, c))
        total = total + weight * l_tilde_a(d, uB_II + vC_I) * l_tilde_b(d, vC_II + uB_I)
    return total


def pre_fin(d: BetheData):
    """Two-way sum with the rescaled L determinants and g-ratio weights."""
    c = d.c
    total = 0
    for nI, pu, pv, uB_I, uB_II, vC_I, vC_II in _two_way(d):
        num = prod(g(x, y, c) for x in vC_II for y in vC_I) * prod(g(x, y, c) for x in uB_I for y in uB_II)
        den = prod(g(x, y, c) for x in vC_I for y in uB_II) * prod(g(x, y, c) for x in vC_II for y in uB_I)
        total = total + _sgn(nI) * div(num, den) * l_a(d, uB_II + vC_I) * l_b(d, vC_II + uB_I)
    return T(d.vC, d.uB, c) * total


# --- single determinant ---------------------------------------------------------

def block_matrix(d: BetheData) -> list:
    """Rows uC then vB, columns w = (uB, vC), from the rescaled L-matrices."""
    ws = d.uB + d.vC
    return ([[n_u(d, j, w) for w in ws] for j in range(d.a)]
            + [[n_v(d, j, w) for w in ws] for j in range(d.b)])


def _deltas(d: BetheData):
    c = d.c
    return (delta(d.uC, c, primed=True) * delta(d.vB, c, primed=True)
            * delta(d.uB, c) * delta(d.vC, c))


def laplace_expansion(d: BetheData):
    """Delta-weighted det N developed along the first a rows, one term per column split."""
    a, b = d.a, d.b
    ws = d.uB + d.vC
    total = 0
    for p in enumerate_partitions(a + b, (a, b)):
        wI, wII = p.pick(ws)
        du = det([[n_u(d, j, w) for w in wI] for j in range(a)], None) if a else 1
        dv = det([[n_v(d, j, w) for w in wII] for j in range(b)], None) if b else 1
        total = total + partition_sign(p) * du * dv
    return _deltas(d) * total


def hat_s(d: BetheData):
    if d.a + d.b == 0:
        return 1
    return T(d.vC, d.uB, d.c) * _deltas(d) * det(block_matrix(d), None)


def full_from_hat(d: BetheData, value):
    return F(d.vC, d.uC, d.c) * F(d.vB, d.uB, d.c) * value


# --- four-way sub-partition form ----------------------------------------------

def _bbF(z, c):
    i, ii, iii, iv = z
    return (F(ii, i, c) * F(ii, iii, c) * F(iv, i, c) * F(iv, iii, c)
            * F(ii, iv, c) * F(i, iii, c))


def _four_way_cards(n):
    for x in range(n + 1):
        for y in range(n + 1 - x):
            for z in range(n + 1 - x - y):
                yield (x, y, z, n - x - y - z)


def subsub_sum(d: BetheData):
    """S_hat from four-way sub-partitions of uB and vC.

    vC_I = {i, iii} and vC_II = {ii, iv}, so that k_ii = n_iii and k_iii = n_ii.
    """
    a, b, c, kap = d.a, d.b, d.c, d.kappa
    if a > SUBSUB_MAX or b > SUBSUB_MAX:
        raise SizeError(f"four-way form guarded to a, b <= {SUBSUB_MAX}")
    total = 0
    for ku in _four_way_cards(a):
        for nv in _four_way_cards(b):
            if ku[1] != nv[2] or ku[2] != nv[1]:
                continue
            k = ku[0] + ku[2]
            n = nv[0] + nv[2]
            for pu in enumerate_partitions(a, ku):
                U = pu.pick(d.uB)
                ui, uii, uiii, uiv = U
                for pv in enumerate_partitions(b, nv):
                    V = pv.pick(d.vC)
                    vi, vii, viii, viv = V
                    term = (_sgn(a + k + n) * kap ** (a - k)
                            * _r(d.r1, ui) * _r(d.r1, uiii) * _r(d.r3, vii) * _r(d.r3, viv)
                            * F(vi, uiv, c) * prod(f_inv(x, y, c) for x in viv for y in ui)
                            * _bbF(U, c) * _bbF(V, c)
                            * F(d.vB, vi, c) * F(d.vB, uii, c) * F(viii, d.uC, c) * F(uiv, d.uC, c))
                    if term == 0:
                        continue
                    term = (term * dwpf(uii, viii, c) * dwpf(shift(vii, c), uiii, c)
                            * dwpf(shift(vi, -c) + shift(uii, -c) + shift(uiii, -c) + viv, d.vB, c)
                            * dwpf(d.uC, ui + shift(vii, c) + shift(viii, c) + shift(uiv, c), c))
                    total = total + term
    return total


def chain_values(d: BetheData, include_subsub: bool | None = None) -> dict:
    """Every stage evaluated on the same data, keyed by stage name."""
    out = {}
    if include_subsub is None:
        include_subsub = d.a <= SUBSUB_MAX and d.b <= SUBSUB_MAX
    if include_subsub:
        out["subsub_sum"] = subsub_sum(d)
    out["sub_new_part"] = sub_new_part(d)
    out["sub_new_part_red"] = sub_new_part_red(d)
    out["pre_fin"] = pre_fin(d)
    out["laplace_expansion"] = T(d.vC, d.uB, d.c) * laplace_expansion(d)
    out["hat_s"] = hat_s(d)
    return out
