"""Seeded property suites over random rational instances.

Every suite draws one sub-seed per trial from a master ``random.Random(seed)``;
a failing trial can therefore be replayed alone from its sub-seed.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field

from .derivation import block_matrix, chain_values, full_from_hat, g_closed, g_sum
from .dwpf import dwpf
from .errors import ConflictError, PoleError, SizeError, Su3BetheError
from .field import F, exact, f, f_inv, g, g_inv, h, serialize, shift, t
from .identities import highest_coeff, lemma1_pair, lemma2_pair, lemma3_pair
from .laurent import EPS, as_fraction, laurent_coefficients
from .linalg import det
from .sampling import RationalSampler
from .scalar_product import (BetheData, build_block_matrix, make_onshell_data, norm_det, norm_limit,
                             omega_action, omega_row, omega_vector, partial_coincidence_data,
                             scalar_product_det, scalar_product_kappa_slope, scalar_product_oracle,
                             spurious_pole_check)

SUITES = ("kernels", "dwpf", "lemma1", "lemma2", "lemma3", "zcoeff", "oracle",
          "orthogonality", "omega", "spurious", "norm-limit", "derivation")
NORM_TOL = 1e-8


@dataclass
class SuiteConfig:
    a: int | None = None
    b: int | None = None
    max_m: int | None = None
    kappa: object = None
    c: object = 1
    tolerance: float | None = None


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int = 0
    passed: int = 0
    witness: dict | None = None
    runtime_ms: float = 0.0
    notes: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.trials > 0 and self.passed == self.trials

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "trials": self.trials, "passed": self.passed,
                "failed": self.trials - self.passed, "ok": self.ok, "first_failure": self.witness,
                "runtime_ms": round(self.runtime_ms, 3)}


def _ser(x):
    if isinstance(x, dict):
        return {str(serialize(k)) if not isinstance(k, str) else k: _ser(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    if isinstance(x, (str, bool)) or x is None:
        return x
    try:
        return serialize(x)
    except (TypeError, ValueError):
        return str(x)


def _data_json(d: BetheData) -> dict:
    return {"uB": _ser(d.uB), "vB": _ser(d.vB), "uC": _ser(d.uC), "vC": _ser(d.vC),
            "kappa": _ser(d.kappa), "c": _ser(d.c)}


# --- instance generators -------------------------------------------------------------

def onshell_instance(S: RationalSampler, a: int, b: int, kappa=None, tries: int = 100) -> BetheData:
    """Random on-shell uB, vB and twisted on-shell uC, vC; kappa random unless given."""
    for _ in range(tries):
        uB, vB, uC, vC = S.sets(a, b, a, b)
        k = S.nonzero() if kappa is None else exact(kappa)
        try:
            return make_onshell_data(uB, vB, uC, vC, k, S.c)
        except (ConflictError, PoleError):
            continue
    raise SizeError(f"could not draw on-shell data at a={a}, b={b}")


def _sizes(rng: random.Random, cfg: SuiteConfig, cap: int, need=lambda a, b: True):
    for _ in range(1000):
        a = cfg.a if cfg.a is not None else rng.randint(0, cap)
        b = cfg.b if cfg.b is not None else rng.randint(0, cap)
        if need(a, b):
            return a, b
    raise SizeError("requested sizes are not allowed for this suite")


def _values(S: RationalSampler, n: int, zero_rate: float = 0.2) -> list:
    return [0 if S.rng.random() < zero_rate else S.rational() for _ in range(n)]


# --- single-trial checks: return (ok, witness) -------------------------------------------

def _kernels(S, cfg):
    c = S.c
    x, y = S.points(2)
    A, B = S.sets(S.rng.randint(0, 3), S.rng.randint(0, 3), taken=(x, y))
    loop = 1
    for p in A:
        for q in B:
            loop = loop * f(p, q, c)
    checks = {
        "f=1+g": f(x, y, c) == 1 + g(x, y, c),
        "h=f/g": h(x, y, c) == f(x, y, c) / g(x, y, c),
        "t=g/h": t(x, y, c) == g(x, y, c) / h(x, y, c),
        "g odd": g(x, y, c) == -g(y, x, c),
        "f(x-c,y)f(y,x)=1": f(x - c, y, c) * f(y, x, c) == 1,
        "inverses": g_inv(x, y, c) * g(x, y, c) == 1 and f_inv(x, y, c) * f(x, y, c) == 1,
        "set product": F(A, B, c) == loop and F((), B, c) == 1,
    }
    ok = all(checks.values())
    return ok, {"x": _ser(x), "y": _ser(y), "A": _ser(A), "B": _ser(B),
                "failed": [k for k, v in checks.items() if not v]}


def _dwpf(S, cfg):
    c = S.c
    n = S.rng.randint(0, cfg.max_m if cfg.max_m is not None else 5)
    xs, ys = S.sets(n, n)
    (z,) = S.points(1, taken=xs + ys)
    K = dwpf(xs, ys, c)
    checks = {}
    checks["K-K"] = dwpf(xs + (z - c,), ys + (z,), c) == -K
    sgn = -1 if n % 2 else 1
    lhs = dwpf(shift(xs, -c), ys, c)
    checks["shift"] = lhs == dwpf(xs, shift(ys, c), c) == sgn * dwpf(ys, xs, c) / F(ys, xs, c)
    px, py = list(xs), list(ys)
    S.rng.shuffle(px)
    S.rng.shuffle(py)
    checks["symmetric"] = dwpf(px, py, c) == K
    checks["n=1"] = n != 1 or K == g(xs[0], ys[0], c)
    if n >= 1:
        # K_n minus its pole part at x_n = y_n has no 1/e term
        X = tuple(as_fraction(x) for x in xs[:-1])
        Y = tuple(as_fraction(y) for y in ys)
        C = as_fraction(c)
        xn = Y[-1] + EPS
        pole = g(xn, Y[-1], C) * F((Y[-1],), Y[:-1], C) * F(X, (xn,), C) * dwpf(X, Y[:-1], C)
        diff = dwpf(X + (xn,), Y, C) - pole
        checks["residue"] = laurent_coefficients(diff, 0).get(-1, 0) == 0 if diff != 0 else True
    ok = all(checks.values())
    return ok, {"n": n, "xs": _ser(xs), "ys": _ser(ys), "z": _ser(z),
                "failed": [k for k, v in checks.items() if not v]}


def _lemma1(S, cfg):
    cap = cfg.max_m if cfg.max_m is not None else 4
    m1 = S.rng.randint(0, cap)
    m2 = S.rng.randint(0, cap - m1)
    xi, al, be = S.sets(m1 + m2, m1, m2)
    res = {v: lemma1_pair(xi, al, be, S.c, v) for v in ("old1", "old2")}
    ok = all(l == r for l, r in res.values())
    return ok, {"xi": _ser(xi), "alpha": _ser(al), "beta": _ser(be), "values": _ser(res)}


def _lemma2(S, cfg):
    m = S.rng.randint(0, cfg.max_m if cfg.max_m is not None else 4)
    w, xi = S.sets(m, m)
    C1, C2 = _values(S, m), _values(S, m)
    res = {v: lemma2_pair(w, xi, C1, C2, S.c, v) for v in ("det1", "det2")}
    ok = all(l == r for l, r in res.values())
    return ok, {"w": _ser(w), "xi": _ser(xi), "C1": _ser(C1), "C2": _ser(C2), "values": _ser(res)}


def _lemma3(S, cfg):
    m = S.rng.randint(0, cfg.max_m if cfg.max_m is not None else 4)
    al, be = S.sets(m, m)
    lhs, rhs = lemma3_pair(al, be, S.c)
    return lhs == rhs, {"alpha": _ser(al), "beta": _ser(be), "lhs": _ser(lhs), "rhs": _ser(rhs)}


def _zcoeff(S, cfg):
    a, b = _sizes(S.rng, cfg, 3)
    t_, x, s, y = S.sets(a, a, b, b)
    z1 = highest_coeff(t_, x, s, y, S.c, "first")
    z2 = highest_coeff(t_, x, s, y, S.c, "second")
    return z1 == z2, {"a": a, "b": b, "t": _ser(t_), "x": _ser(x), "s": _ser(s), "y": _ser(y),
                      "first": _ser(z1), "second": _ser(z2)}


def _oracle(S, cfg):
    a, b = _sizes(S.rng, cfg, 3)
    d = onshell_instance(S, a, b, cfg.kappa)
    o = scalar_product_oracle(d)
    e = scalar_product_det(d, "explicit")
    j = scalar_product_det(d, "jacobian")
    return o == e == j, {**_data_json(d), "oracle": _ser(o), "det": _ser(e), "det_jacobian": _ser(j)}


def _omega_zero(N, om):
    n = len(om)
    return all(sum(om[j] * N[j][k] for j in range(n)) == 0 for k in range(n))


def _orthogonality(S, cfg):
    if cfg.kappa is not None and exact(cfg.kappa) != 1:
        raise SizeError("orthogonality holds at kappa = 1 only")
    a, b = _sizes(S.rng, cfg, 3, lambda a, b: a + b >= 1)
    partial = a >= 1 and b >= 1 and a + b >= 3 and S.rng.random() < 0.3
    if partial:
        side = S.rng.choice("uv")
        d = partial_coincidence_data(S, a, b, side)
        X = S.rational()
        N = build_block_matrix(d, "jacobian", {p: X for p in d.uB}, {p: X for p in d.vC})
        kind = f"partial-{side}"
    else:
        d = onshell_instance(S, a, b, 1)
        N = build_block_matrix(d, "explicit")
        kind = "distinct"
    D = det(N)
    zero_om = _omega_zero(N, omega_vector(d))
    return D == 0 and zero_om, {**_data_json(d), "case": kind, "det": _ser(D), "omega_annihilates": zero_om}


def _omega(S, cfg):
    a, b = _sizes(S.rng, cfg, 3, lambda a, b: a + b >= 1)
    d = onshell_instance(S, a, b, cfg.kappa)
    k = d.kappa
    act, row = omega_action(d), omega_row(d)
    rows_ok = all(act[i] == (1 - k) * row[i] for i in range(a + b))
    slope_ok = scalar_product_det(d) == (1 - k) * scalar_product_kappa_slope(d)
    return rows_ok and slope_ok, {**_data_json(d), "rows": rows_ok, "slope": slope_ok}


def _spurious(S, cfg):
    a, b = _sizes(S.rng, cfg, 3, lambda a, b: a >= 1 and b >= 1)
    c = S.c
    for _ in range(100):
        uB, vB, uC, vC = S.sets(a, b, a, b - 1)
        vC = (uB[0] - c,) + vC
        k = S.nonzero() if cfg.kappa is None else exact(cfg.kappa)
        try:
            d = make_onshell_data(uB, vB, uC, vC, k, c)
            r = spurious_pole_check(d)
        except (ConflictError, PoleError):
            continue
        ratios_ok = all(x is None or x == r["expected"] for x in r["ratios"])
        ok = ratios_ok and r["det"] == 0 and any(x is not None for x in r["ratios"])
        return ok, {**_data_json(d), "ratios": _ser(r["ratios"]), "expected": _ser(r["expected"]),
                    "det": _ser(r["det"])}
    raise SizeError("could not place data on the spurious point")


def _norm_limit(S, cfg):
    tol = cfg.tolerance if cfg.tolerance is not None else NORM_TOL
    a, b = _sizes(S.rng, cfg, 2, lambda a, b: a + b >= 1)
    u, v = S.sets(a, b)
    X1 = [S.rational() for _ in u]
    X3 = [S.rational() for _ in v]
    closed = complex(norm_det(u, v, X1, X3, S.c))
    lim = complex(norm_limit(u, v, X1, X3, S.c))
    rel = abs(closed - lim) / max(abs(closed), 1e-300)
    return rel <= tol, {"u": _ser(u), "v": _ser(v), "X1": _ser(X1), "X3": _ser(X3),
                        "closed": _ser(closed), "limit": _ser(lim), "rel": rel, "tolerance": tol}


def _derivation(S, cfg):
    a, b = _sizes(S.rng, cfg, 2)
    d = onshell_instance(S, a, b, cfg.kappa)
    o = scalar_product_oracle(d)
    stages = {k: full_from_hat(d, v) for k, v in chain_values(d).items()}
    stages["block_matrix"] = det(block_matrix(d)) if a + b else 1
    ok = all(v == o for k, v in stages.items() if k != "block_matrix")
    ok = ok and block_matrix(d) == build_block_matrix(d)
    for n in range(min(a, b) + 1):
        ok = ok and g_sum(d, range(n), range(n)) == g_closed(d, d.uB[:n], d.vC[:n])
    return ok, {**_data_json(d), "oracle": _ser(o), "stages": _ser(stages)}


_CHECKS = {
    "kernels": _kernels, "dwpf": _dwpf, "lemma1": _lemma1, "lemma2": _lemma2, "lemma3": _lemma3,
    "zcoeff": _zcoeff, "oracle": _oracle, "orthogonality": _orthogonality, "omega": _omega,
    "spurious": _spurious, "norm-limit": _norm_limit, "derivation": _derivation,
}


def trial_seeds(seed: int, trials: int) -> list:
    rng = random.Random(seed)
    return [rng.getrandbits(48) for _ in range(trials)]


def run_trial(suite: str, trial_seed: int, cfg: SuiteConfig):
    S = RationalSampler(trial_seed, exact(cfg.c))
    return _CHECKS[suite](S, cfg)


def run_suite(suite: str, seed: int = 0, trials: int = 20, cfg: SuiteConfig | None = None,
              seeds: list | None = None) -> SuiteReport:
    if suite not in _CHECKS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    cfg = cfg or SuiteConfig()
    if suite == "orthogonality" and cfg.kappa is not None and exact(cfg.kappa) != 1:
        raise SizeError("orthogonality holds at kappa = 1 only")
    rep = SuiteReport(suite, seed)
    t0 = time.perf_counter()
    for ts in (seeds if seeds is not None else trial_seeds(seed, trials)):
        rep.trials += 1
        try:
            ok, wit = run_trial(suite, ts, cfg)
        except Su3BetheError as e:
            ok, wit = False, {"error": {"kind": e.kind, "message": str(e)}}
        if ok:
            rep.passed += 1
        elif rep.witness is None:
            rep.witness = {"trial_seed": ts, "repro": _repro(suite, ts, cfg), **wit}
    rep.runtime_ms = (time.perf_counter() - t0) * 1e3
    return rep


def _repro(suite: str, ts: int, cfg: SuiteConfig) -> str:
    parts = [f"verify --suite {suite} --trial-seed {ts}"]
    for name in ("a", "b", "max_m", "kappa", "c", "tolerance"):
        v = getattr(cfg, name)
        if v is not None and not (name == "c" and v == 1):
            parts.append(f"--{name.replace('_', '-')} {v}")
    return " ".join(parts)
