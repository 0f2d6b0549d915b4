"""Command-line entry point: ``su3bethe <command> [flags]``, JSON on stdout.

Commands: verify, solve, sp, norm, ff, zcoeff, spectrum.  Every run prints one
JSON object with ``schema: 1``.  Errors are reported as
``{"error": {"kind": ..., "message": ...}}`` with a nonzero exit status.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .errors import Su3BetheError
from .field import exact, serialize, to_float

SCHEMA = 1
EXIT_FAIL = 1
EXIT_ERROR = 2


class UsageError(Exception):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _scalar(text: str):
    """'3/2' or '2' become exact rationals; '0.3' or '0.3+0.1j' become complex floats."""
    text = text.strip()
    try:
        if "." not in text and "e" not in text.lower() and "j" not in text:
            return exact(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _json(x):
    if isinstance(x, dict):
        return {k: _json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json(v) for v in x]
    if isinstance(x, (str, bool, int)) or x is None:
        return x
    if isinstance(x, float):
        return x
    return serialize(x)


# --- commands -------------------------------------------------------------------------

def cmd_verify(args):
    from .suites import SUITES, SuiteConfig, run_suite
    names = SUITES if args.suite in (None, "all") else [s.strip() for s in args.suite.split(",")]
    cfg = SuiteConfig(a=args.a, b=args.b, max_m=args.max_m, kappa=args.kappa,
                      c=args.c if args.c is not None else 1, tolerance=args.tolerance)
    reports = []
    for name in names:
        seeds = [args.trial_seed] if args.trial_seed is not None else None
        reports.append(run_suite(name, args.seed, args.trials, cfg, seeds=seeds).to_json())
    ok = all(r["ok"] for r in reports)
    results = {"suites": reports, "ok": ok,
               "summary": {r["suite"]: f"{r['passed']}/{r['trials']}" for r in reports}}
    return results, {}, (0 if ok else EXIT_FAIL)


def _model(args, N=None):
    from .chain import ChainModel
    c = complex(args.c) if args.c is not None else 1.0
    kappa = complex(args.kappa) if args.kappa is not None else 1.0
    return ChainModel(N or args.N, c=c, kappa=kappa)


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for {args.command}")


def cmd_solve(args):
    from .chain import save_bank, solve_states
    _need(args, "N", "a", "b")
    m = _model(args)
    states = solve_states(m, args.a, args.b, seed=args.seed, attempts=args.trials or 300)
    if args.bank:
        save_bank(args.bank, states, m)
    bank = [s.to_json(m) for s in states]
    return ({"count": len(states), "states": bank},
            {"max_bethe_residual": max((s.residual for s in states), default=0.0)}, 0)


def _instance(args):
    from .sampling import RationalSampler
    from .suites import onshell_instance
    _need(args, "a", "b")
    S = RationalSampler(args.seed, args.c if args.c is not None else 1)
    return onshell_instance(S, args.a, args.b, args.kappa)


def _floatify(d):
    return d.with_values(
        uC=tuple(map(to_float, d.uC)), uB=tuple(map(to_float, d.uB)),
        vC=tuple(map(to_float, d.vC)), vB=tuple(map(to_float, d.vB)),
        kappa=to_float(d.kappa), c=to_float(d.c),
        r1={to_float(k): to_float(v) for k, v in d.r1.items()},
        r3={to_float(k): to_float(v) for k, v in d.r3.items()})


def cmd_sp(args):
    from .scalar_product import scalar_product_det, scalar_product_oracle
    from .suites import _data_json
    d = _instance(args)
    inputs = _data_json(d)
    if args.mode == "float":
        fd = _floatify(d)
        o, s = complex(scalar_product_oracle(fd)), complex(scalar_product_det(fd, tol=None))
        rel = abs(o - s) / max(abs(o), 1e-300) if o != 0 else abs(s)
        return {"instance": inputs, "oracle": o, "det": s}, {"rel_diff": rel}, 0
    o, s = scalar_product_oracle(d), scalar_product_det(d)
    return {"instance": inputs, "oracle": o, "det": s, "equal": o == s}, {"diff": o - s}, 0


def cmd_zcoeff(args):
    from .identities import highest_coeff
    from .sampling import RationalSampler
    _need(args, "a", "b")
    S = RationalSampler(args.seed, args.c if args.c is not None else 1)
    t_, x, s, y = S.sets(args.a, args.a, args.b, args.b)
    if args.mode == "float":
        t_, x, s, y = ([to_float(p) for p in grp] for grp in (t_, x, s, y))
    c = S.c if args.mode == "exact" else to_float(S.c)
    z1 = highest_coeff(t_, x, s, y, c, "first")
    z2 = highest_coeff(t_, x, s, y, c, "second")
    res = {"t": t_, "x": x, "s": s, "y": y, "first": z1, "second": z2}
    if args.mode == "exact":
        res["equal"] = z1 == z2
        return res, {"diff": z1 - z2}, 0
    return res, {"abs_diff": abs(z1 - z2)}, 0


def cmd_norm(args):
    if args.N is not None:
        from .chain import chain_norm, solve_states
        _need(args, "a", "b")
        m = _model(args)
        states = solve_states(m, args.a, args.b, seed=args.seed, attempts=args.trials or 300)
        out = [{"u": s.u, "v": s.v, "norm": chain_norm(s, m)} for s in states]
        return {"states": out}, {"max_bethe_residual": max((s.residual for s in states), default=0.0)}, 0
    from .sampling import RationalSampler
    from .scalar_product import norm_det, norm_limit
    _need(args, "a", "b")
    S = RationalSampler(args.seed, args.c if args.c is not None else 1)
    u, v = S.sets(args.a, args.b)
    X1 = [S.rational() for _ in u]
    X3 = [S.rational() for _ in v]
    closed = norm_det(u, v, X1, X3, S.c)
    lim = complex(norm_limit(u, v, X1, X3, S.c))
    rel = abs(complex(closed) - lim) / max(abs(complex(closed)), 1e-300)
    tol = args.tolerance if args.tolerance is not None else 1e-8
    return ({"u": u, "v": v, "X1": X1, "X3": X3, "closed_form": closed, "limit": lim, "ok": rel <= tol},
            {"rel_diff": rel, "tolerance": tol}, 0)


def cmd_ff(args):
    from .crosscheck import form_factor_report
    _need(args, "N", "a", "b", "site")
    if args.kappa is not None and complex(args.kappa) != 1:
        raise UsageError("form factors are taken between untwisted states; drop --kappa")
    tol = args.tolerance if args.tolerance is not None else 1e-7
    w = complex(args.w) if args.w is not None else 0.37 + 0.21j
    rep = form_factor_report(args.N, args.a, args.b, args.site, w=w, seed=args.seed, tol=tol)
    diag = rep["diagonal"]
    ok = all(d["abs_err"] <= tol for d in diag) and all(p["ok"] for p in rep["pairs"])
    results = {"site": args.site, "diagonal": [{k: d[k] for k in ("u", "v", "F", "norm", "F_over_norm", "ed")}
                                               for d in diag],
               "pairs": [{k: p[k] for k in ("i", "j", "F_ts", "F_st", "product", "ed_product")}
                         for p in rep["pairs"]],
               "ok": ok}
    residuals = {"diagonal_abs": [d["abs_err"] for d in diag], "pair_rel": [p["rel"] for p in rep["pairs"]],
                 "tolerance": tol}
    return results, residuals, (0 if ok else EXIT_FAIL)


def cmd_spectrum(args):
    import numpy as np
    from .chain import ChainModel, has_finite_roots, solve_states, transfer_eigenvalue
    from .lattice import WeightSector, sector_spectrum
    _need(args, "N", "sector")
    try:
        n1, n2, n3 = (int(x) for x in args.sector.split(","))
    except ValueError:
        raise UsageError("--sector takes three counts n1,n2,n3")
    sec = WeightSector(args.N, n1, n2, n3)
    w = complex(args.w) if args.w is not None else 0.3
    kappa = complex(args.kappa) if args.kappa is not None else 1.0
    c = complex(args.c) if args.c is not None else 1.0
    vals = sector_spectrum(w, args.N, sec, c=c, kappa=kappa, vectors=False).values
    vals = sorted(vals, key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    a, b = n2 + n3, n3
    bethe = []
    if has_finite_roots(args.N, a, b, kappa):
        m = ChainModel(args.N, c=c, kappa=kappa)
        for s in solve_states(m, a, b, seed=args.seed, attempts=args.trials or 300):
            tau = transfer_eigenvalue(w, s, m, twisted=kappa != 1)
            k = int(np.argmin(np.abs(np.array(vals) - tau)))
            bethe.append({"u": s.u, "v": s.v, "tau": tau, "eigenvalue_index": k,
                          "rel": float(abs(vals[k] - tau) / abs(tau))})
    return ({"w": w, "sector": [n1, n2, n3], "eigenvalues": vals, "bethe": bethe},
            {"max_rel": max((x["rel"] for x in bethe), default=0.0)}, 0)


COMMANDS = {"verify": cmd_verify, "solve": cmd_solve, "sp": cmd_sp, "norm": cmd_norm, "ff": cmd_ff,
            "zcoeff": cmd_zcoeff, "spectrum": cmd_spectrum}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="su3bethe", description="Scalar products and form factors for SU(3) Bethe vectors.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--c", type=_scalar)
    p.add_argument("--kappa", type=_scalar)
    p.add_argument("--suite")
    p.add_argument("--out")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--max-m", dest="max_m", type=int)
    p.add_argument("--site", type=int)
    p.add_argument("--sector")
    p.add_argument("--w", type=_scalar)
    p.add_argument("--bank", help="solve: also write the root bank to this path")
    p.add_argument("--trial-seed", dest="trial_seed", type=int, help="verify: replay one trial")
    return p


def _inputs(args) -> dict:
    skip = {"command", "out"}
    return {k: _json(v) for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(argv=None) -> tuple:
    """Returns (payload, exit status, output path or None) without printing."""
    t0 = time.perf_counter()
    args = None
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify" and args.trials is None:
            args.trials = 20
        results, residuals, status = COMMANDS[args.command](args)
        payload = {"schema": SCHEMA, "command": args.command, "inputs": _inputs(args), "mode": args.mode,
                   "seed": args.seed, "results": _json(results), "residuals": _json(residuals)}
    except (Su3BetheError, UsageError, ValueError, argparse.ArgumentTypeError) as e:
        payload = {"schema": SCHEMA, "command": getattr(args, "command", None),
                   "inputs": _inputs(args) if args else {"argv": list(argv if argv is not None else sys.argv[1:])},
                   "error": {"kind": getattr(e, "kind", "value"), "type": type(e).__name__, "message": str(e)}}
        status = EXIT_ERROR
    payload["runtime_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
    return payload, status, getattr(args, "out", None)


def main(argv=None) -> int:
    payload, status, out = run(argv)
    text = json.dumps(payload, indent=1, ensure_ascii=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
