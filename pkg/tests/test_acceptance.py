"""Acceptance checks, one test per criterion, each printing one PASS/FAIL line."""
import time
import warnings

import pytest

from su3bethe.chain import ChainModel, chain_norm, form_factor_E22, has_finite_roots, is_highest_weight, solve_states
from su3bethe.crosscheck import form_factor_report, random_ws, spectrum_residuals
from su3bethe.dwpf import dwpf
from su3bethe.errors import DegeneracyWarning
from su3bethe.field import F, g, shift
from su3bethe.laurent import EPS, as_fraction, laurent_coefficients
from su3bethe.lattice import gen_sol_defect, rtt_defect
from su3bethe.sampling import RationalSampler
from su3bethe.scalar_product import partial_coincidence_data, build_block_matrix, omega_vector
from su3bethe.linalg import det
from su3bethe.suites import SuiteConfig, run_suite


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {n:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
    return emit


def _suite_grid(name, pairs, trials, seed, **kw):
    passed = total = 0
    witness = None
    for a, b in pairs:
        rep = run_suite(name, seed=seed + 17 * a + b, trials=trials, cfg=SuiteConfig(a=a, b=b, **kw))
        passed += rep.passed
        total += rep.trials
        witness = witness or rep.witness
    return passed, total, witness


def test_01_determinant_equals_partition_sum(report):
    t0 = time.perf_counter()
    pairs = [(a, b) for a in range(4) for b in range(4)]
    passed, total, wit = _suite_grid("oracle", pairs, 50, seed=101)
    dt = time.perf_counter() - t0
    ok = passed == total == 50 * len(pairs) and dt < 300
    report(1, ok, f"det == oracle exactly in {passed}/{total} instances, (a,b) in {{0..3}}^2, {dt:.1f}s (< 300s)")
    assert ok, wit


def test_02_summation_lemmas(report):
    t0 = time.perf_counter()
    out = {}
    for name in ("lemma1", "lemma2", "lemma3"):
        rep = run_suite(name, seed=202, trials=200, cfg=SuiteConfig(max_m=4))
        out[name] = rep
    dt = time.perf_counter() - t0
    ok = all(r.passed == r.trials == 200 for r in out.values()) and dt < 120
    summary = ", ".join(f"{k} {r.passed}/{r.trials}" for k, r in out.items())
    report(2, ok, f"{summary} (two variants each for lemma1/lemma2), sizes <= 4, {dt:.1f}s (< 120s)")
    assert ok, [r.witness for r in out.values() if not r.ok]


def test_03_domain_wall_properties(report):
    S = RationalSampler(303, 1)
    c = S.c
    bad = []
    count = 0
    for n in range(6):
        for _ in range(8):
            xs, ys = S.sets(n, n)
            (z,) = S.points(1, taken=xs + ys)
            K = dwpf(xs, ys, c)
            sgn = -1 if n % 2 else 1
            if dwpf(xs + (z - c,), ys + (z,), c) != -K:
                bad.append(("reduction", n, xs, ys, z))
            if not dwpf(shift(xs, -c), ys, c) == dwpf(xs, shift(ys, c), c) == sgn * dwpf(ys, xs, c) / F(ys, xs, c):
                bad.append(("shift", n, xs, ys))
            if n:
                X = tuple(as_fraction(x) for x in xs[:-1])
                Y = tuple(as_fraction(y) for y in ys)
                C = as_fraction(c)
                xn = Y[-1] + EPS
                pole = g(xn, Y[-1], C) * F((Y[-1],), Y[:-1], C) * F(X, (xn,), C) * dwpf(X, Y[:-1], C)
                diff = dwpf(X + (xn,), Y, C) - pole
                if diff != 0 and laurent_coefficients(diff, 0).get(-1, 0) != 0:
                    bad.append(("residue", n, xs, ys))
            count += 1
    ok = not bad
    report(3, ok, f"reduction, shift and zero 1/e coefficient exact for {count} instances, n = 0..5")
    assert ok, bad[:3]


def test_04_highest_coefficient_representations(report):
    pairs = [(a, b) for a in range(4) for b in range(4)]
    passed, total, wit = _suite_grid("zcoeff", pairs, 7, seed=404)
    ok = passed == total and total >= 100
    report(4, ok, f"both representations agree exactly in {passed}/{total} instances, a,b <= 3")
    assert ok, wit


def test_05_orthogonality(report):
    rep = run_suite("orthogonality", seed=505, trials=100, cfg=SuiteConfig(kappa=1))
    S = RationalSampler(5050, 1)
    partial = 0
    bad = []
    for side in "uv":
        for a, b in [(2, 1), (1, 2), (2, 2), (3, 1), (1, 3), (3, 2), (2, 3), (3, 3)]:
            for _ in range(2):
                d = partial_coincidence_data(S, a, b, side)
                X = S.rational()
                N = build_block_matrix(d, "jacobian", {p: X for p in d.uB}, {p: X for p in d.vC})
                om = omega_vector(d)
                zero = all(sum(om[j] * N[j][k] for j in range(a + b)) == 0 for k in range(a + b))
                if det(N) != 0 or not zero:
                    bad.append((side, a, b))
                partial += 1
    ok = rep.ok and rep.trials == 100 and not bad
    report(5, ok, f"det N = 0 and Omega^T N = 0 exactly: {rep.passed}/{rep.trials} random (distinct and partial), "
                  f"{partial - len(bad)}/{partial} dedicated partial-coincidence cases")
    assert ok, (rep.witness, bad[:3])


def test_06_norm_formula_vs_limit(report):
    pairs = [(a, b) for a in range(3) for b in range(3) if a + b]
    passed, total, wit = _suite_grid("norm-limit", pairs, 6, seed=606)
    ok = passed == total
    report(6, ok, f"closed norm matches Richardson limit to 1e-8 relative in {passed}/{total}, a,b <= 2")
    assert ok, wit


def test_07_spurious_pole(report):
    pairs = [(a, b) for a in range(1, 4) for b in range(1, 4)]
    passed, total, wit = _suite_grid("spurious", pairs, 6, seed=707)
    ok = passed == total
    report(7, ok, f"column ratios = r3/r1 and det N = 0 exactly in {passed}/{total} instances")
    assert ok, wit


def test_08_chain_spectrum(report):
    t0 = time.perf_counter()
    worst, nstates, fails = 0.0, 0, []
    for N in range(2, 7):
        ws = random_ws(800 + N)
        for a in range(0, 4):
            for b in range(0, a + 1):
                if a + b > 3 or a > N:
                    continue
                for kappa in (1.0, 0.7, 1.3):
                    if not has_finite_roots(N, a, b, kappa):
                        continue
                    r = spectrum_residuals(N, a, b, kappa=kappa, ws=ws, seed=N)
                    if not r["states"]:
                        fails.append(("no states", N, a, b, kappa))
                    nstates += len(r["states"])
                    worst = max(worst, r["max"])
    rtt = max(rtt_defect(0.3 + 0.1j, -0.45 + 0.2j, N, kappa=k) for N in (2, 3, 4) for k in (1.0, 0.7, 1.3))
    dt = time.perf_counter() - t0
    ok = worst < 1e-9 and rtt < 1e-11 and not fails and dt < 600
    report(8, ok, f"{nstates} Bethe states (untwisted and kappa in {{0.7, 1.3}}), worst tau mismatch {worst:.1e} "
                  f"(< 1e-9), RTT defect {rtt:.1e} (< 1e-11), {dt:.1f}s (< 600s)")
    assert ok, fails


def test_09_form_factors(report):
    sum_err = mindep = diag_ed = 0.0
    pair_worst, zeros, npairs, bad = 0.0, 0, 0, []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegeneracyWarning)
        for N in range(2, 6):
            m = ChainModel(N)
            for a in range(1, 4):
                for b in range(0, a + 1):
                    if a + b > 3 or not is_highest_weight(N, a, b):
                        continue
                    for s in solve_states(m, a, b, seed=N):
                        nrm = chain_norm(s, m)
                        # generic route: differentiate the twisted scalar product at every site
                        Fs = [form_factor_E22(k, s, s, m, method="generic") for k in range(1, N + 1)]
                        sum_err = max(sum_err, abs(sum(Fs) / nrm - (a - b)))
                        mindep = max(mindep, max(abs(x - Fs[0]) for x in Fs) / abs(Fs[0]))
                    for site in range(1, N + 1):
                        rep = form_factor_report(N, a, b, site, seed=N, limit=None)
                        diag_ed = max([diag_ed] + [d["abs_err"] for d in rep["diagonal"]])
                        for p in rep["pairs"]:
                            npairs += 1
                            if p["rel"] is None:
                                zeros += 1
                            else:
                                pair_worst = max(pair_worst, p["rel"])
                            if not p["ok"]:
                                bad.append((N, a, b, site, p["i"], p["j"]))
    gen = max(gen_sol_defect(N) for N in (2, 3, 4))
    ok = sum_err < 1e-8 and mindep < 1e-9 and not bad and pair_worst < 1e-7 and gen < 1e-10
    report(9, ok, f"sum rule err {sum_err:.1e} (< 1e-8), site spread {mindep:.1e} (< 1e-9), "
                  f"{npairs - len(bad)}/{npairs} off-diagonal pairs vs ED (worst rel {pair_worst:.1e} < 1e-7, "
                  f"{zeros} vanishing by symmetry on both sides), diag vs ED {diag_ed:.1e}, "
                  f"inverse scattering {gen:.1e} (< 1e-10)")
    assert ok, bad[:5]


def test_10_derivation_chain(report):
    pairs = [(a, b) for a in range(3) for b in range(3)]
    passed, total, wit = _suite_grid("derivation", pairs, 8, seed=1010)
    ok = passed == total
    report(10, ok, f"every intermediate expansion equals the single determinant exactly in {passed}/{total}, a,b <= 2")
    assert ok, wit
