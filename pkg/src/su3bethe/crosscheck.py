"""Bethe-ansatz results against exact diagonalization of the same chain.

Bethe vectors and ED eigenvectors carry unrelated normalizations, so
off-diagonal form factors are compared through the normalization-free product
F(t, s) F(s, t) / (<s|s> <t|t>) = (l_t E r_s)(l_s E r_t).
"""
from __future__ import annotations

import random
import warnings

import numpy as np

from .chain import (BetheRoots, ChainModel, chain_norm, form_factor_E22, is_highest_weight, solve_states,
                    transfer_eigenvalue)
from .errors import DegeneracyWarning, SizeError
from .lattice import WeightSector, local_element, sector_spectrum

# a matrix element below this fraction of the diagonal scale is a roundoff zero
ZERO_FLOOR = 1e-12


def random_ws(seed: int, n: int = 5) -> list:
    rng = random.Random(seed)
    return [complex(rng.uniform(-1, 1), rng.uniform(0.1, 1)) for _ in range(n)]


def spectrum_residuals(N: int, a: int, b: int, kappa=1.0, ws=None, seed: int = 0,
                       attempts: int = 120) -> dict:
    """Relative distance from each Bethe tau(w) to the nearest ED eigenvalue."""
    m = ChainModel(N, kappa=kappa)
    states = solve_states(m, a, b, seed=seed, attempts=attempts)
    ws = ws if ws is not None else random_ws(seed)
    sec = WeightSector.from_roots(N, a, b)
    out = []
    for w in ws:
        vals = sector_spectrum(w, N, sec, kappa=kappa, vectors=False).values
        for s in states:
            tau = transfer_eigenvalue(w, s, m, twisted=kappa != 1)
            out.append(float(np.min(np.abs(vals - tau)) / abs(tau)))
    return {"states": states, "residuals": out, "max": max(out) if out else 0.0, "ws": ws}


def _pair_ok(lhs, ed, scale, tol) -> tuple:
    """Relative agreement; roundoff-level zeros on both sides count as agreement."""
    floor = ZERO_FLOOR * scale
    if abs(ed) < floor:
        return abs(lhs) < floor, None
    rel = abs(lhs - ed) / abs(ed)
    return rel <= tol, rel


def form_factor_report(N: int, a: int, b: int, site: int, w=0.37 + 0.21j, seed: int = 0,
                       limit: int | None = 4, tol: float = 1e-7, attempts: int = 120,
                       method: str = "numeric") -> dict:
    """Diagonal and off-diagonal E^{22}_site elements from Bethe states vs ED."""
    if not is_highest_weight(N, a, b):
        raise SizeError(f"sector ({N - a},{a - b},{b}) is not highest weight; untwisted Bethe states "
                        "exist only for N - a >= a - b >= b")
    m = ChainModel(N)
    states = solve_states(m, a, b, seed=seed, attempts=attempts, limit=limit)
    if not states:
        raise SizeError(f"no Bethe states found at N={N}, a={a}, b={b}")
    sec = WeightSector.from_roots(N, a, b)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegeneracyWarning)
        spec = sector_spectrum(w, N, sec)
    idx = [spec.match(transfer_eigenvalue(w, s, m)) for s in states]
    if len(set(idx)) != len(idx):
        raise SizeError("two Bethe states matched the same eigenvalue")
    norms = [chain_norm(s, m) for s in states]
    diag = []
    for s, k, nrm in zip(states, idx, norms):
        F = form_factor_E22(site, s, s, m, method=method)
        ed = local_element(site, 2, 2, spec.left[k], spec.right[:, k], sec)
        diag.append({"u": s.u, "v": s.v, "F": F, "norm": nrm, "F_over_norm": F / nrm, "ed": ed,
                     "abs_err": abs(F / nrm - ed), "isolated": spec.isolated(k)})
    scale = max(abs(d["ed"]) for d in diag) ** 2 or 1.0
    pairs = []
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            s, t = states[i], states[j]
            F_ts = form_factor_E22(site, t, s, m, method=method)
            F_st = form_factor_E22(site, s, t, m, method=method)
            lhs = F_ts * F_st / (norms[i] * norms[j])
            ed = (local_element(site, 2, 2, spec.left[idx[j]], spec.right[:, idx[i]], sec)
                  * local_element(site, 2, 2, spec.left[idx[i]], spec.right[:, idx[j]], sec))
            ok, rel = _pair_ok(lhs, ed, scale, tol)
            pairs.append({"i": i, "j": j, "F_ts": F_ts, "F_st": F_st, "product": lhs, "ed_product": ed,
                          "rel": rel, "ok": ok,
                          "isolated": spec.isolated(idx[i]) and spec.isolated(idx[j])})
    return {"states": states, "diagonal": diag, "pairs": pairs}
