import itertools

import pytest

from su3bethe.dwpf import delta, dwpf, dwpf_matrix
from su3bethe.errors import SizeError
from su3bethe.field import F, g, h, mpq, shift, t, to_float
from su3bethe.laurent import EPS, as_fraction, laurent_coefficients, order_at_zero
from su3bethe.linalg import det


def test_small_cases(sampler, c):
    assert dwpf((), (), c) == 1
    (x,), (y,) = sampler.sets(1, 1)
    assert dwpf((x,), (y,), c) == g(x, y, c)


def test_matches_defining_formula(sampler, c):
    xs, ys = sampler.sets(3, 3)
    hxy = 1
    for x in xs:
        for y in ys:
            hxy *= h(x, y, c)
    want = delta(xs, c, primed=True) * delta(ys, c) * hxy * det([[t(x, y, c) for y in ys] for x in xs])
    assert dwpf(xs, ys, c) == want


def test_delta_antisymmetry(sampler, c):
    for n in range(5):
        xs = sampler.points(n)
        sgn = -1 if (n * (n - 1) // 2) % 2 else 1
        assert delta(xs, c, primed=True) == sgn * delta(xs, c)


def test_delta_splits(sampler, c):
    # with the v's listed first every cross pair contributes g(v, u)
    u, v = sampler.sets(2, 3)
    assert delta(v + u, c) == delta(u, c) * delta(v, c) * _G(v, u, c)


def _G(A, B, c):
    out = 1
    for a in A:
        for b in B:
            out *= g(a, b, c)
    return out


def test_symmetric(sampler, c):
    xs, ys = sampler.sets(4, 4)
    K = dwpf(xs, ys, c)
    for p in itertools.permutations(range(4)):
        assert dwpf([xs[i] for i in p], ys, c) == K
        assert dwpf(xs, [ys[i] for i in p], c) == K


@pytest.mark.parametrize("n", range(5))
def test_reduction_and_shift(sampler, c, n):
    xs, ys = sampler.sets(n, n)
    (z,) = sampler.points(1, taken=xs + ys)
    K = dwpf(xs, ys, c)
    assert dwpf(xs + (z - c,), ys + (z,), c) == -K
    sgn = -1 if n % 2 else 1
    assert dwpf(shift(xs, -c), ys, c) == dwpf(xs, shift(ys, c), c) == sgn * dwpf(ys, xs, c) / F(ys, xs, c)


@pytest.mark.parametrize("n", range(1, 6))
def test_pole_part(sampler, c, n):
    xs, ys = sampler.sets(n, n)
    X = tuple(as_fraction(x) for x in xs[:-1])
    Y = tuple(as_fraction(y) for y in ys)
    C = as_fraction(c)
    xn = Y[-1] + EPS
    K = dwpf(X + (xn,), Y, C)
    assert order_at_zero(K) == -1
    pole = g(xn, Y[-1], C) * F((Y[-1],), Y[:-1], C) * F(X, (xn,), C) * dwpf(X, Y[:-1], C)
    assert laurent_coefficients(K - pole, 0).get(-1, 0) == 0


def test_finite_at_minus_c(sampler, c):
    # the product form of the matrix keeps x - y = -c regular
    xs, ys = sampler.sets(2, 2)
    xs = (ys[0] - c, xs[1])
    assert dwpf_matrix(xs, ys, c)[0][0] == g(xs[0], ys[0], c) * h(xs[0], ys[1], c)
    dwpf(xs, ys, c)


def test_decay(sampler, c):
    xs, ys = sampler.sets(3, 3)
    vals = [abs(float(dwpf(xs[:-1] + (mpq(big),), ys, c) * big)) for big in (10 ** 3, 10 ** 6)]
    assert vals[1] > 0 and abs(vals[0] - vals[1]) / vals[1] < 1e-2


def test_float_matches_exact(sampler, c):
    xs, ys = sampler.sets(4, 4)
    exact_val = float(dwpf(xs, ys, c))
    fl = dwpf(tuple(map(to_float, xs)), tuple(map(to_float, ys)), 1.0)
    assert abs(fl - exact_val) <= 1e-10 * abs(exact_val)


def test_size_mismatch(c):
    with pytest.raises(SizeError):
        dwpf((mpq(1),), (), c)
