"""Scalar product of an on-shell and a twisted on-shell Bethe vector.

Two independent evaluations are provided: the brute-force partition sum over
the four root sets (built from highest coefficients), and the (a+b)x(a+b)
block determinant.  Also here: the norm formula, the zero eigenvector at
kappa = 1 and the spurious-pole column ratio.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .dwpf import delta
from .errors import ConflictError, DegenerateError, PoleError, SizeError
from .field import F, H, div, exact, f, g_inv, is_exact, prod, t
from .identities import highest_coeff
from .laurent import EPS, as_fraction, laurent_coefficients
from .linalg import det
from .partitions import enumerate_partitions

ORACLE_MAX = 5


@dataclass(frozen=True)
class BetheData:
    uC: tuple
    uB: tuple
    vC: tuple
    vB: tuple
    kappa: object
    c: object
    r1: dict = dc_field(default_factory=dict)
    r3: dict = dc_field(default_factory=dict)

    @property
    def a(self) -> int:
        return len(self.uC)

    @property
    def b(self) -> int:
        return len(self.vC)

    def with_values(self, **kw) -> "BetheData":
        d = dict(uC=self.uC, uB=self.uB, vC=self.vC, vB=self.vB, kappa=self.kappa,
                 c=self.c, r1=dict(self.r1), r3=dict(self.r3))
        d.update(kw)
        return BetheData(**d)


def _others(xs, j):
    return xs[:j] + xs[j + 1:]


def onshell_r1(us: Sequence, vs: Sequence, j: int, c, kappa=1):
    """r1(u_j) required by the (twisted) Bethe equations."""
    u = us[j]
    rest = _others(tuple(us), j)
    return kappa * div(F(u, rest, c), F(rest, u, c)) * F(tuple(vs), u, c)


def onshell_r3(us: Sequence, vs: Sequence, j: int, c, kappa=1):
    """r3(v_j) required by the (twisted) Bethe equations."""
    v = vs[j]
    rest = _others(tuple(vs), j)
    return kappa * div(F(rest, v, c), F(v, rest, c)) * F(v, tuple(us), c)


def _put(table: dict, key, value, what: str):
    if key in table and table[key] != value:
        raise ConflictError(f"{what} at {key} required to be both {table[key]} and {value}")
    table[key] = value


def make_onshell_data(uB, vB, uC, vC, kappa, c) -> BetheData:
    """Declare (uB, vB) on-shell and (uC, vC) twisted on-shell by fixing r1, r3."""
    uB, vB, uC, vC = map(tuple, (uB, vB, uC, vC))
    if len(uB) != len(uC) or len(vB) != len(vC):
        raise SizeError("#uB = #uC and #vB = #vC are required")
    r1, r3 = {}, {}
    for j in range(len(uB)):
        _put(r1, uB[j], onshell_r1(uB, vB, j, c), "r1")
    for j in range(len(uC)):
        _put(r1, uC[j], onshell_r1(uC, vC, j, c, kappa), "r1")
    for j in range(len(vB)):
        _put(r3, vB[j], onshell_r3(uB, vB, j, c), "r3")
    for j in range(len(vC)):
        _put(r3, vC[j], onshell_r3(uC, vC, j, c, kappa), "r3")
    return BetheData(uC, uB, vC, vB, kappa, c, r1, r3)


def _r(table, xs):
    out = 1
    for x in xs:
        out = out * table[x]
    return out


# --- partition-sum oracle ----------------------------------------------------

def scalar_product_oracle(d: BetheData, representation: str = "first"):
    """Brute-force sum over partitions of all four sets, Z from ``identities``."""
    a, b, c = d.a, d.b, d.c
    if a > ORACLE_MAX or b > ORACLE_MAX:
        raise SizeError(f"oracle guarded to a, b <= {ORACLE_MAX}")
    total = 0
    for k in range(a + 1):
        u_parts = list(enumerate_partitions(a, (k, a - k)))
        for n in range(b + 1):
            v_parts = list(enumerate_partitions(b, (n, b - n)))
            for pc in u_parts:
                uCI, uCII = pc.pick(d.uC)
                for pb in u_parts:
                    uBI, uBII = pb.pick(d.uB)
                    fu = (_r(d.r1, uBI) * _r(d.r1, uCII)
                          * F(uCI, uCII, c) * F(uBII, uBI, c))
                    if fu == 0:
                        continue
                    for qc in v_parts:
                        vCI, vCII = qc.pick(d.vC)
                        for qb in v_parts:
                            vBI, vBII = qb.pick(d.vB)
                            term = (fu * _r(d.r3, vBI) * _r(d.r3, vCII)
                                    * F(vCII, vCI, c) * F(vBI, vBII, c)
                                    * F(vCI, uCI, c) * F(vBII, uBII, c))
                            if term == 0:
                                continue
                            term = term * highest_coeff(uCII, uBII, vCI, vBI, c, representation)
                            if term == 0:
                                continue
                            term = term * highest_coeff(uBI, uCI, vBII, vCII, c, representation)
                            total = total + term
    return total


# --- block matrix --------------------------------------------------------------

def _coincident(x, ys) -> bool:
    return any(x == y for y in ys)


def _ratio(num, den):
    if den == 0:
        raise PoleError("vanishing denominator in a block-matrix entry")
    return div(num, den)


def _explicit(d: BetheData) -> list:
    uC, uB, vC, vB, k, c = d.uC, d.uB, d.vC, d.vB, d.kappa, d.c
    a, b = d.a, d.b
    N = [[0] * (a + b) for _ in range(a + b)]
    for kk in range(a):
        u = uB[kk]
        pre = H(vC, u, c) * H(u, uC, c)
        ratio = _ratio(F(vB, u, c) * H(uC, u, c) * H(u, uB, c),
                       F(vC, u, c) * H(u, uC, c) * H(uB, u, c))
        for j in range(a):
            N[j][kk] = pre * (k * t(u, uC[j], c) + t(uC[j], u, c) * ratio)
        col21 = H(vB, u, c) * H(u, uB, c)
        for j in range(b):
            N[a + j][kk] = t(vB[j], u, c) * col21
    for kk in range(b):
        v = vC[kk]
        col12 = k * H(v, uC, c) * H(vC, v, c)
        for j in range(a):
            N[j][a + kk] = t(v, uC[j], c) * col12
        pre = H(v, uB, c) * H(vB, v, c)
        ratio = _ratio(F(v, uC, c) * H(vC, v, c) * H(v, vB, c),
                       F(v, uB, c) * H(v, vC, c) * H(vB, v, c))
        for j in range(b):
            N[a + j][a + kk] = pre * (t(vB[j], v, c) + k * t(v, vB[j], c) * ratio)
    return N


def _u_row_entry(d: BetheData, j: int, w, r1w):
    """Jacobian-form entry of the u-block row for uC_j at column point w.

    ``r1w`` is r1(w), or None when w is a v-point (its term then drops out).
    """
    uC, vC, k, c = d.uC, d.vC, d.kappa, d.c
    x = uC[j]
    rest = _others(uC, j)
    dx = x - w
    pre = c * prod(g_inv(w, u, c) for u in uC)
    out = k * F(w, rest, c) * H(vC, w, c) * c / (dx * dx)
    if r1w is not None:
        out = out + r1w * prod(g_inv(v, w, c) for v in vC) * F(rest, w, c) * (-c) / (dx * dx)
    return pre * out


def _v_row_entry(d: BetheData, j: int, w, r3w):
    """Jacobian-form entry of the v-block row for vB_j at column point w."""
    uB, vB, c = d.uB, d.vB, d.c
    y = vB[j]
    rest = _others(vB, j)
    dy = y - w
    pre = -c * prod(g_inv(v, w, c) for v in vB)
    out = H(w, uB, c) * F(rest, w, c) * (-c) / (dy * dy)
    if r3w is not None:
        out = out + r3w * prod(g_inv(w, u, c) for u in uB) * F(w, rest, c) * c / (dy * dy)
    return pre * out


def _limit_entry(entry_fn, d, j, point, base_r, X):
    """Entry at a column point shared with a row point, as the exact limit e -> 0.

    The column point is displaced to point + e and its r-value expanded to first
    order, r(point + e) = r(point) (1 + e X).
    """
    if not all(is_exact(x) for x in (point, d.c, d.kappa, X) + (() if base_r is None else (base_r,))):
        raise PoleError("coinciding row and column points need exact data")
    lift = as_fraction
    dd = BetheData(tuple(map(lift, d.uC)), tuple(map(lift, d.uB)), tuple(map(lift, d.vC)),
                   tuple(map(lift, d.vB)), lift(d.kappa), lift(d.c))
    w = lift(point) + EPS
    r = None if base_r is None else lift(base_r) * (1 + EPS * lift(X))
    coeffs = laurent_coefficients(entry_fn(dd, j, w, r), upto=0)
    if any(v != 0 for k_, v in coeffs.items() if k_ < 0):
        raise PoleError("coinciding entry is singular")
    return exact(coeffs.get(0, 0))


def _jacobian(d: BetheData, X1=None, X3=None) -> list:
    uC, uB, vC, vB = d.uC, d.uB, d.vC, d.vB
    a, b = d.a, d.b
    cols = [(w, True) for w in uB] + [(w, False) for w in vC]
    N = [[0] * (a + b) for _ in range(a + b)]
    for j in range(a):
        for kk, (w, is_u) in enumerate(cols):
            r1w = d.r1[w] if is_u else None
            if is_u and _coincident(w, uC):
                X = (X1 or {}).get(w, 0)
                N[j][kk] = _limit_entry(_u_row_entry, d, j, w, r1w, X)
            else:
                N[j][kk] = _u_row_entry(d, j, w, r1w)
    for j in range(b):
        for kk, (w, is_u) in enumerate(cols):
            r3w = None if is_u else d.r3[w]
            if not is_u and _coincident(w, vB):
                X = (X3 or {}).get(w, 0)
                N[a + j][kk] = _limit_entry(_v_row_entry, d, j, w, r3w, X)
            else:
                N[a + j][kk] = _v_row_entry(d, j, w, r3w)
    return N


def build_block_matrix(d: BetheData, construction: str = "explicit", X1=None, X3=None) -> list:
    """Rows uC_1..uC_a, vB_1..vB_b; columns uB_1..uB_a, vC_1..vC_b.

    ``explicit`` uses the closed-form blocks with the Bethe equations already
    substituted; ``jacobian`` uses derivatives of the transfer-matrix
    eigenvalues and reads r1(uB_k), r3(vC_k) from the data.  Coinciding
    roots (uC_j = uB_k or vB_j = vC_k) are only handled by the Jacobian form;
    the affected columns then depend on log-derivatives X1 (X3) keyed by point.
    """
    con = construction.lower()
    if con == "explicit":
        if any(_coincident(x, d.uB) for x in d.uC) or any(_coincident(x, d.vC) for x in d.vB):
            raise PoleError("explicit blocks are singular at coinciding roots; use the jacobian form")
        return _explicit(d)
    if con == "jacobian":
        return _jacobian(d, X1, X3)
    raise ValueError(f"unknown construction {construction!r}")


def prefactor(d: BetheData):
    c = d.c
    return (F(d.vC, d.uC, c) * F(d.vB, d.uB, c) * prod(t(v, u, c) for v in d.vC for u in d.uB)
            * delta(d.uC, c, primed=True) * delta(d.uB, c) * delta(d.vC, c, primed=True) * delta(d.vB, c))


def scalar_product_det(d: BetheData, construction: str = "explicit", tol=None):
    """Prefactor times det of the block matrix."""
    if d.a + d.b == 0:
        return 1
    N = build_block_matrix(d, construction)
    return prefactor(d) * det(N, tol)


# --- norm ----------------------------------------------------------------------

def norm_matrix(u: Sequence, v: Sequence, X1: Sequence, X3: Sequence, c, lower_left: str = "t(v_j,u_k)") -> list:
    a, b = len(u), len(v)
    M = [[0] * (a + b) for _ in range(a + b)]
    two_c2 = 2 * c * c
    for j in range(a):
        for k in range(a):
            if j == k:
                s = -c * X1[k]
                s = s - sum((two_c2 / ((u[k] - u[l]) ** 2 - c * c) for l in range(a)), 0)
                s = s + sum((t(vm, u[k], c) for vm in v), 0)
                M[j][k] = s + two_c2 / (0 - c * c)
            else:
                M[j][k] = two_c2 / ((u[j] - u[k]) ** 2 - c * c)
        for k in range(b):
            M[j][a + k] = t(v[k], u[j], c)
    for j in range(b):
        for k in range(a):
            M[a + j][k] = t(v[j], u[k], c) if lower_left == "t(v_j,u_k)" else t(u[k], v[j], c)
        for k in range(b):
            if j == k:
                s = c * X3[k]
                s = s - sum((two_c2 / ((v[k] - v[m]) ** 2 - c * c) for m in range(b)), 0)
                s = s + sum((t(v[k], ul, c) for ul in u), 0)
                M[a + j][a + k] = s + two_c2 / (0 - c * c)
            else:
                M[a + j][a + k] = two_c2 / ((v[j] - v[k]) ** 2 - c * c)
    return M


def norm_det(u: Sequence, v: Sequence, X1: Sequence, X3: Sequence, c, lower_left: str = "t(v_j,u_k)", tol=None):
    """Norm of an on-shell vector from the log-derivatives X1 = r1'/r1, X3 = r3'/r3."""
    u, v = tuple(u), tuple(v)
    a, b = len(u), len(v)
    if len(X1) != a or len(X3) != b:
        raise SizeError("one X value per root")
    if a + b == 0:
        return 1
    pre = F(v, u, c) ** 3
    for j in range(a):
        for k in range(a):
            if j != k:
                pre = pre * f(u[j], u[k], c)
    for j in range(b):
        for k in range(b):
            if j != k:
                pre = pre * f(v[j], v[k], c)
    return pre * det(norm_matrix(u, v, X1, X3, c, lower_left), tol)


def norm_limit_data(u, v, X1, X3, c, eps, delta_u=None, delta_v=None) -> BetheData:
    """Data approaching the norm point: uB = u + eps*du, vC = v + eps*dv, kappa = 1.

    r1 on uC = u and r3 on vB = v follow the Bethe equations; r1(uB_k) and
    r3(vC_k) are their first-order continuations with log-derivatives X1, X3.
    """
    a, b = len(u), len(v)
    du = delta_u or [1] * a
    dv = delta_v or [1] * b
    uC, vB = tuple(u), tuple(v)
    uB = tuple(u[k] + eps * du[k] for k in range(a))
    vC = tuple(v[k] + eps * dv[k] for k in range(b))
    r1, r3 = {}, {}
    for j in range(a):
        r1[uC[j]] = onshell_r1(uC, vC, j, c)
        r1[uB[j]] = r1[uC[j]] * (1 + eps * du[j] * X1[j])
    for j in range(b):
        r3[vB[j]] = onshell_r3(uB, vB, j, c)
        r3[vC[j]] = r3[vB[j]] * (1 + eps * dv[j] * X3[j])
    return BetheData(uC, uB, vC, vB, 1, c, r1, r3)


def richardson(values: Sequence, hs: Sequence):
    """Polynomial (Neville) extrapolation of values(h) to h = 0."""
    p = list(values)
    n = len(p)
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (hs[i] * p[i + 1] - hs[i + m] * p[i]) / (hs[i] - hs[i + m])
    return p[0]


def norm_limit(u, v, X1, X3, c, hs=None, delta_u=None, delta_v=None):
    """Extrapolated eps -> 0 limit of the Jacobian-form determinant."""
    if hs is None:
        base = 1e-3 if not all(is_exact(x) for x in tuple(u) + tuple(v)) else None
        if base is None:
            from .field import mpq
            hs = [mpq(1, 1000), mpq(1, 2000), mpq(1, 4000), mpq(1, 8000)]
        else:
            hs = [base, base / 2, base / 4, base / 8]
    vals = [scalar_product_det(norm_limit_data(u, v, X1, X3, c, h_, delta_u, delta_v), "jacobian")
            for h_ in hs]
    return richardson(vals, hs)


# --- zero eigenvector at kappa = 1 --------------------------------------------

def omega_vector(d: BetheData) -> list:
    uC, uB, vC, vB = d.uC, d.uB, d.vC, d.vB
    a, b = d.a, d.b
    om = []
    for k in range(a):
        num = prod(uC[k] - x for x in uB)
        den = prod(uC[k] - uC[l] for l in range(a) if l != k)
        om.append(num / den)
    for k in range(b):
        num = prod(vB[k] - x for x in vC)
        den = prod(vB[k] - vB[m] for m in range(b) if m != k)
        om.append(num / den)
    if all(x == 0 for x in om):
        raise DegenerateError("Omega vanishes identically: the two states coincide (norm case)")
    return om


def omega_action(d: BetheData, N=None) -> list:
    """Omega^T N, one entry per column."""
    om = omega_vector(d)
    if N is None:
        N = build_block_matrix(d, "jacobian")
    n = len(om)
    return [sum((om[j] * N[j][k] for j in range(n)), 0) for k in range(n)]


def omega_row(d: BetheData) -> list:
    """c h(vC, w) h(w, uB) at every column w; Omega^T N equals (1 - kappa) times this."""
    c = d.c
    return [c * H(d.vC, w, c) * H(w, d.uB, c) for w in d.uB + d.vC]


def scalar_product_kappa_slope(d: BetheData, construction: str = "explicit"):
    """S(kappa) / (1 - kappa), evaluated by replacing one row with the Omega row.

    At kappa = 1 this is -dS/dkappa with the roots held at their kappa = 1 values.
    """
    om = omega_vector(d)
    r = max(range(len(om)), key=lambda i: abs(complex(om[i])))
    N = [list(row) for row in build_block_matrix(d, construction)]
    N[r] = omega_row(d)
    return prefactor(d) * det(N, None) / om[r]


# --- spurious poles ------------------------------------------------------------

def spurious_pole_check(d: BetheData, j: int = 0, k: int = 0) -> dict:
    """Column ratios at vC_j = uB_k - c (or vC_j = uB_k).

    Returns the per-row ratios of the vC_j column to the uB_k column in both
    row blocks, the expected r3(vC_j)/r1(uB_k), and det N.
    """
    a = d.a
    N = build_block_matrix(d, "jacobian")
    cu, cv = k, a + j
    ratios = []
    for row in N:
        if row[cu] == 0:
            ratios.append(None if row[cv] == 0 else float("inf"))
        else:
            ratios.append(row[cv] / row[cu])
    return {
        "ratios": ratios,
        "expected": d.r3[d.vC[j]] / d.r1[d.uB[k]],
        "det": det(N, None),
        "matrix": N,
    }


def partial_coincidence_data(sampler, a: int, b: int, side: str = "u", tries: int = 200):
    """kappa = 1 data with exactly one shared root, uC_1 = uB_1 (or vB_1 = vC_1).

    Both Bethe systems then fix r1 (r3) at the shared point; the two values are
    made to agree by solving for one free root on the other level
    (vB_1 for a shared u, uB_1 for a shared v), which enters through a single
    factor f(vB_1, u_1) (f(v_1, uB_1)).
    """
    c = sampler.c
    if a < 1 or b < 1:
        raise SizeError("a shared root needs a >= 1 and b >= 1")
    if a + b < 3:
        # with a = b = 1 the matching condition forces the second roots to coincide too
        raise SizeError("a partial coincidence needs a + b >= 3")
    for _ in range(tries):
        if side == "u":
            (x,), uBr, uCr, vBr, vC = sampler.sets(1, a - 1, a - 1, b - 1, b)
            uB, uC = (x,) + uBr, (x,) + uCr
            want = onshell_r1(uC, vC, 0, c)
            have = div(F(x, uBr, c), F(uBr, x, c)) * F(vBr, x, c)
            T = want / have
            if T == 1 or T == 0:
                continue
            free = x + c / (T - 1)
            vB = (free,) + vBr
            others = uB + uCr + vBr + vC
        else:
            (y,), vBr, vCr, uBr, uC = sampler.sets(1, b - 1, b - 1, a - 1, a)
            vB, vC = (y,) + vBr, (y,) + vCr
            want = onshell_r3(uC, vC, 0, c)
            have = div(F(vBr, y, c), F(y, vBr, c)) * F(y, uBr, c)
            T = want / have
            if T == 1 or T == 0:
                continue
            free = y - c / (T - 1)
            uB = (free,) + uBr
            others = vB + vCr + uBr + uC
        if not sampler.ok(free, [p for p in others]):
            continue
        try:
            return make_onshell_data(uB, vB, uC, vC, 1, c)
        except (ConflictError, PoleError):
            continue
    raise DegenerateError("could not place partially coinciding data")
