"""The periodic SU(3)-invariant XXX chain as a concrete instance of the model.

Vacuum eigenvalues are lambda_1(w) = f(w, 0)^N and lambda_2 = lambda_3 = 1, so
r1(w) = f(w, 0)^N and r3(w) = 1.  Bethe roots solve the nested equations in
logarithmic form with a damped Newton iteration; a root set is labelled by
(a, b) and lives in the weight sector (N - a, a - b, b).
"""
from __future__ import annotations

import cmath
import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .errors import CollisionError, NoConvergence, PoleError, SizeError
from .scalar_product import BetheData, norm_det, richardson, scalar_product_det, scalar_product_kappa_slope

# relative to |c|; converged clusters of nearly equal roots are spurious
COLLISION_TOL = 1e-4
DEFECT_TOL = 1e-12
POLE_TOL = 1e-6
MAX_ROOT = 1e6
SHARED_TOL = 1e-6


@dataclass(frozen=True)
class ChainModel:
    N: int
    c: complex = 1.0
    kappa: complex = 1.0
    max_iter: int = 200

    def __post_init__(self):
        if self.N < 1:
            raise SizeError("chain needs N >= 1")

    def twisted(self, kappa) -> "ChainModel":
        return ChainModel(self.N, self.c, kappa, self.max_iter)


@dataclass(frozen=True)
class BetheRoots:
    u: tuple
    v: tuple
    residual: float
    kappa: complex = 1.0

    @property
    def a(self) -> int:
        return len(self.u)

    @property
    def b(self) -> int:
        return len(self.v)

    def to_json(self, model: ChainModel) -> dict:
        return {"N": model.N, "c": _cplx(model.c), "kappa": _cplx(self.kappa),
                "a": self.a, "b": self.b,
                "u": [_cplx(x) for x in self.u], "v": [_cplx(x) for x in self.v],
                "residual": float(self.residual)}

    @staticmethod
    def from_json(obj: dict) -> "BetheRoots":
        z = lambda p: complex(p[0], p[1]) if isinstance(p, (list, tuple)) else complex(p)
        return BetheRoots(tuple(z(p) for p in obj["u"]), tuple(z(p) for p in obj["v"]),
                          float(obj["residual"]), z(obj.get("kappa", 1.0)))


def _cplx(x):
    x = complex(x)
    return [x.real, x.imag]


def save_bank(path, roots: Sequence[BetheRoots], model: ChainModel):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([r.to_json(model) for r in roots], fh, indent=1)


def load_bank(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return [BetheRoots.from_json(o) for o in json.load(fh)]


# --- model functions -------------------------------------------------------------

def model_functions(m: ChainModel):
    c, N = m.c, m.N

    def r1(w):
        return ((w + c) / w) ** N

    def r3(w):
        return 1.0 + 0 * w

    return r1, r3


def _f(x, y, c):
    return (x - y + c) / (x - y)


def _fset(A, B, c):
    out = 1.0 + 0j
    for x in A:
        for y in B:
            out *= _f(x, y, c)
    return out


def transfer_eigenvalue(w, roots: BetheRoots, m: ChainModel, twisted: bool = False):
    """Eigenvalue of tr T(w), or of tr T_kappa(w) with the roots' twist."""
    c = m.c
    r1, r3 = model_functions(m)
    u, v = roots.u, roots.v
    for x in u + v:
        if abs(w - x) == 0:
            raise PoleError("transfer eigenvalue evaluated at a root")
    k = roots.kappa if twisted else 1.0
    return (r1(w) * _fset(u, [w], c) + k * _fset([w], u, c) * _fset(v, [w], c)
            + r3(w) * _fset([w], v, c))


def vacuum_ratio(u, c):
    """f(u, 0): the eigenvalue of the rescaled tr T(0) divided by c^N."""
    return _fset(u, [0.0], c)


# --- Bethe equations in log form ------------------------------------------------

def _L(d, c):
    return 1.0 / (d + c) - 1.0 / d


def bethe_system(z: np.ndarray, a: int, b: int, m: ChainModel, kappa) -> np.ndarray:
    """Log of (lhs / rhs) of each nested Bethe equation; zero on shell."""
    c, N = m.c, m.N
    u, v = z[:a], z[a:]
    out = np.empty(a + b, dtype=complex)
    for j in range(a):
        ratio = ((u[j] + c) / u[j]) ** N / kappa
        for l in range(a):
            if l != j:
                ratio *= _f(u[l], u[j], c) / _f(u[j], u[l], c)
        for mm in range(b):
            ratio /= _f(v[mm], u[j], c)
        out[j] = cmath.log(ratio)
    for j in range(b):
        ratio = 1.0 / kappa
        for mm in range(b):
            if mm != j:
                ratio *= _f(v[j], v[mm], c) / _f(v[mm], v[j], c)
        for l in range(a):
            ratio /= _f(v[j], u[l], c)
        out[a + j] = cmath.log(ratio)
    return out


def bethe_jacobian(z: np.ndarray, a: int, b: int, m: ChainModel) -> np.ndarray:
    c, N = m.c, m.N
    u, v = z[:a], z[a:]
    J = np.zeros((a + b, a + b), dtype=complex)
    for j in range(a):
        J[j, j] = N * _L(u[j], c)
        for l in range(a):
            if l != j:
                s = _L(u[l] - u[j], c) + _L(u[j] - u[l], c)
                J[j, j] -= s
                J[j, l] = s
        for mm in range(b):
            d = _L(v[mm] - u[j], c)
            J[j, j] += d
            J[j, a + mm] = -d
    for j in range(b):
        for mm in range(b):
            if mm != j:
                s = _L(v[j] - v[mm], c) + _L(v[mm] - v[j], c)
                J[a + j, a + j] += s
                J[a + j, a + mm] = -s
        for l in range(a):
            d = _L(v[j] - u[l], c)
            J[a + j, a + j] -= d
            J[a + j, l] = d
    return J


def _check_roots(z, a, b, c):
    u, v = z[:a], z[a:]
    tol = COLLISION_TOL * abs(c)
    if not np.all(np.isfinite(z)) or np.any(np.abs(z) > MAX_ROOT):
        raise NoConvergence("roots escaped to infinity")
    for x in u:
        if abs(x) < POLE_TOL or abs(x + c) < POLE_TOL:
            raise CollisionError("u-root on a pole of r1")
    for grp in (u, v):
        for i in range(len(grp)):
            for j in range(i + 1, len(grp)):
                if abs(grp[i] - grp[j]) < tol:
                    raise CollisionError("two roots merged")
    for x in v:
        for y in u:
            if abs(x - y) < tol or abs(x - y + c) < tol:
                raise CollisionError("v-root hits a u-root pole")


def newton(z0, a: int, b: int, m: ChainModel, kappa=None, tol: float = DEFECT_TOL) -> BetheRoots:
    """Damped Newton on the log-form Bethe system from the seed ``z0``."""
    kappa = m.kappa if kappa is None else kappa
    z = np.array(z0, dtype=complex)
    if a + b == 0:
        return BetheRoots((), (), 0.0, kappa)
    with np.errstate(all="ignore"):
        try:
            F = bethe_system(z, a, b, m, kappa)
        except (ZeroDivisionError, ValueError) as e:
            raise NoConvergence(str(e)) from e
        res = np.max(np.abs(F))
        for _ in range(m.max_iter):
            if res < tol * 1e-1:
                break
            try:
                step = np.linalg.solve(bethe_jacobian(z, a, b, m), -F)
            except (np.linalg.LinAlgError, ZeroDivisionError) as e:
                raise NoConvergence(str(e)) from e
            lam = 1.0
            while lam > 1e-6:
                zn = z + lam * step
                try:
                    Fn = bethe_system(zn, a, b, m, kappa)
                    rn = np.max(np.abs(Fn))
                except (ZeroDivisionError, ValueError):
                    rn = np.inf
                if np.isfinite(rn) and rn < res * (1 - 1e-4 * lam) or rn < tol * 1e-1:
                    break
                lam *= 0.5
            else:
                break
            z, F, res = zn, Fn, rn
    if not res < tol:
        raise NoConvergence(f"Bethe defect {res:.3e} after {m.max_iter} iterations")
    _check_roots(z, a, b, m.c)
    return BetheRoots(tuple(complex(x) for x in z[:a]), tuple(complex(x) for x in z[a:]), float(res), kappa)


def _canonical(roots: BetheRoots):
    key = lambda x: (round(x.real, 7), round(x.imag, 7))
    return (tuple(sorted(map(key, roots.u))), tuple(sorted(map(key, roots.v))))


def _seed(rng: random.Random, a: int, b: int, m: ChainModel):
    # free-magnon positions -c/2 + i lambda, second level shifted by -c/2
    c = m.c
    spread = max(1.0, m.N / 2)
    u = [-c / 2 + 1j * rng.uniform(-spread, spread) * abs(c) + rng.gauss(0, 0.05) for _ in range(a)]
    v = [-c + 1j * rng.uniform(-spread, spread) * abs(c) + rng.gauss(0, 0.05) for _ in range(b)]
    return u + v


def solve_bethe(m: ChainModel, a: int, b: int, seeds=None, rng=None, attempts: int = 200) -> BetheRoots:
    """First converged root set from the given seeds, or from random seeds."""
    if not 0 <= b <= a <= m.N:
        raise SizeError("need 0 <= b <= a <= N")
    _require_dominant(m, a, b)
    if a + b == 0:
        return BetheRoots((), (), 0.0, m.kappa)
    pool = [seeds] if seeds is not None else []
    rng = rng or random.Random(0)
    last = None
    for k in range(attempts if seeds is None else 1):
        z0 = pool[0] if pool else _seed(rng, a, b, m)
        try:
            return newton(z0, a, b, m)
        except (NoConvergence, CollisionError) as e:
            last = e
    raise NoConvergence(f"no admissible solution for N={m.N}, a={a}, b={b}: {last}")


def solve_states(m: ChainModel, a: int, b: int, seed: int = 0, attempts: int = 300, limit: int | None = None) -> list:
    """Distinct converged root sets from many random seeds."""
    if not 0 <= b <= a <= m.N:
        raise SizeError("need 0 <= b <= a <= N")
    _require_dominant(m, a, b)
    if a + b == 0:
        return [BetheRoots((), (), 0.0, m.kappa)]
    rng = random.Random(seed)
    found, keys = [], set()
    for _ in range(attempts):
        try:
            r = newton(_seed(rng, a, b, m), a, b, m)
        except (NoConvergence, CollisionError):
            continue
        k = _canonical(r)
        if k not in keys:
            keys.add(k)
            found.append(r)
            if limit and len(found) >= limit:
                break
    return found


def is_highest_weight(N: int, a: int, b: int) -> bool:
    """Sector (N - a, a - b, b) is dominant: finite untwisted roots can exist."""
    return N - a >= a - b >= b >= 0


def has_finite_roots(N: int, a: int, b: int, kappa=1.0) -> bool:
    """Whether sector (N - a, a - b, b) can carry a state with finite admissible roots.

    Untwisted states are highest weight.  The twist diag(1, kappa, 1) keeps the
    symmetry exchanging colors 1 and 3, so twisted states still need n1 >= n3.
    """
    if not 0 <= b <= a <= N:
        return False
    return is_highest_weight(N, a, b) if kappa == 1 else N - a >= b


def _require_dominant(m: ChainModel, a: int, b: int):
    # elsewhere Newton only finds spurious or coinciding roots
    if not has_finite_roots(m.N, a, b, m.kappa):
        need = "N - a >= a - b >= b" if m.kappa == 1 else "N - a >= b"
        raise SizeError(f"sector ({m.N - a},{a - b},{b}) has no finite Bethe roots at kappa={m.kappa}; "
                        f"need {need}")


# --- kappa continuation ---------------------------------------------------------

def track_kappa(roots: BetheRoots, m: ChainModel, kappa_to, steps: int = 10) -> BetheRoots:
    """Follow a root set from its own twist to ``kappa_to`` with Newton polish per step."""
    a, b = roots.a, roots.b
    if a + b == 0:
        return BetheRoots((), (), 0.0, kappa_to)
    z = np.array(roots.u + roots.v, dtype=complex)
    k0 = roots.kappa
    scale = max(1.0, float(np.max(np.abs(z))))
    cur = roots
    for s in range(1, steps + 1):
        k = k0 + (kappa_to - k0) * s / steps
        cur = newton(z, a, b, m, kappa=k)
        zn = np.array(cur.u + cur.v, dtype=complex)
        if np.max(np.abs(zn - z)) > 0.5 * scale:
            raise NoConvergence("root set jumped during kappa continuation")
        z = zn
    return cur


def root_kappa_derivative(roots: BetheRoots, m: ChainModel) -> np.ndarray:
    """d(roots)/d(kappa) by implicit differentiation of the log-form system."""
    a, b = roots.a, roots.b
    z = np.array(roots.u + roots.v, dtype=complex)
    J = bethe_jacobian(z, a, b, m)
    # every equation carries -log(kappa)
    return np.linalg.solve(J, np.full(a + b, 1.0 / roots.kappa, dtype=complex))


# --- form factor of E^{22}_m ----------------------------------------------------

def chain_data(tilde: BetheRoots, roots: BetheRoots, m: ChainModel) -> BetheData:
    """BetheData with the twisted state on the C side and r-values from the model."""
    r1, r3 = model_functions(m)
    d_r1 = {x: r1(x) for x in roots.u + tilde.u}
    d_r3 = {x: r3(x) for x in roots.v + tilde.v}
    return BetheData(tuple(tilde.u), tuple(roots.u), tuple(tilde.v), tuple(roots.v),
                     tilde.kappa, m.c, d_r1, d_r3)


def _family(tilde: BetheRoots, m: ChainModel, hs):
    out = {}
    for h_ in hs:
        for sgn in (1, -1):
            out[sgn * h_] = track_kappa(tilde, m, 1.0 + sgn * h_, steps=4)
    return out


def _central(fn, hs):
    ests = [(fn(h_) - fn(-h_)) / (2 * h_) for h_ in hs]
    # central differences have even error expansion: extrapolate in h^2
    return richardson(ests, [h_ * h_ for h_ in hs]) if len(hs) > 1 else ests[0]


def ratio_kappa_derivative(tilde: BetheRoots, m: ChainModel, method: str = "numeric", hs=(1e-3, 5e-4)):
    """d/dkappa of f(u(kappa), 0) / f(u(1), 0) at kappa = 1."""
    c = m.c
    if method == "analytic":
        du = root_kappa_derivative(tilde, m)[: tilde.a]
        return complex(sum(_L(x, c) * d for x, d in zip(tilde.u, du)))
    fam = _family(tilde, m, hs)
    base = vacuum_ratio(tilde.u, c)
    return _central(lambda h_: vacuum_ratio(fam[h_].u, c) / base, hs)


def _separation(x: BetheRoots, y: BetheRoots) -> float:
    """Smallest distance between a root of x and a root of y on the same level."""
    ds = [abs(p - q) for p in x.u for q in y.u] + [abs(p - q) for p in x.v for q in y.v]
    return min(ds) if ds else np.inf


def _same_state(x: BetheRoots, y: BetheRoots) -> bool:
    return _canonical(x) == _canonical(y)


def form_factor_E22(m_site: int, roots_tilde: BetheRoots, roots: BetheRoots, model: ChainModel,
                    method: str = "numeric", hs=(1e-3, 5e-4)) -> complex:
    """<tilde| E^{22}_m |psi> for on-shell states (unnormalized Bethe vectors).

    The twisted family of ``roots_tilde`` is built by continuation in kappa.
    For equal states the norm term of the kappa-derivative is used with the
    norm from the determinant formula, which makes the value site-independent
    by construction; ``method="generic"`` instead differentiates the twisted
    scalar product for equal states too.
    """
    N, c = model.N, model.c
    if not 1 <= m_site <= N:
        raise SizeError("site index must lie in 1..N")
    if (roots_tilde.a, roots_tilde.b) != (roots.a, roots.b):
        return 0j
    if method not in ("numeric", "analytic", "generic"):
        raise ValueError(f"unknown method {method!r}")
    if method != "generic" and _same_state(roots_tilde, roots):
        rp = ratio_kappa_derivative(roots, model, "analytic" if method == "analytic" else "numeric", hs)
        return complex(rp * chain_norm(roots, model))
    base = vacuum_ratio(roots.u, c)
    r0 = vacuum_ratio(roots_tilde.u, c) / base
    if method == "analytic":
        if _separation(roots_tilde, roots) < SHARED_TOL:
            raise PoleError("states share a root; the row-replacement derivative needs distinct roots")
        slope = scalar_product_kappa_slope(chain_data(roots_tilde, roots, model))
        return complex((r0 ** m_site - r0 ** (m_site - 1)) * (-slope))
    fam = _family(roots_tilde, model, hs)

    def g_(h_):
        t = fam[h_]
        r = vacuum_ratio(t.u, c) / base
        return (r ** m_site - r ** (m_site - 1)) * scalar_product_det(chain_data(t, roots, model), tol=None)

    return complex(_central(g_, hs))


def chain_norm(roots: BetheRoots, model: ChainModel) -> complex:
    """<psi|psi> from the norm determinant with X1 = d log r1, X3 = 0."""
    c, N = model.c, model.N
    X1 = [N * _L(x, c) for x in roots.u]
    X3 = [0.0] * roots.b
    return complex(norm_det(roots.u, roots.v, X1, X3, c))
