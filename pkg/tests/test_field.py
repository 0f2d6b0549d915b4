from fractions import Fraction

import mpmath
import pytest

from su3bethe.errors import PoleError
from su3bethe.field import (F, G, KernelKind, deserialize, div, eval_kernel, exact, f, f_inv, g, g_inv, h,
                            is_exact, mpq, serialize, shift, t, to_float)


def test_g_value():
    assert g(mpq(3), mpq(1), mpq(1)) == mpq(1, 2)


def test_kernel_relations(sampler, c):
    for _ in range(50):
        x, y = sampler.points(2)
        assert f(x, y, c) == 1 + g(x, y, c)
        assert h(x, y, c) * g(x, y, c) == f(x, y, c)
        assert t(x, y, c) * h(x, y, c) == g(x, y, c)
        assert f(x - c, y, c) * f(y, x, c) == 1
        assert g_inv(x, y, c) * g(x, y, c) == 1
        assert f_inv(x, y, c) * f(x, y, c) == 1


def test_poles(c):
    x = mpq(2, 3)
    with pytest.raises(PoleError):
        g(x, x, c)
    with pytest.raises(PoleError):
        f(x, x, c)
    with pytest.raises(PoleError):
        t(x - c, x, c)
    with pytest.raises(PoleError):
        f_inv(x - c, x, c)
    assert g_inv(x, x, c) == 0
    assert h(x - c, x, c) == 0


def test_pole_error_is_zero_division():
    assert issubclass(PoleError, ZeroDivisionError)


def test_set_products(sampler, c):
    A, B = sampler.sets(3, 2)
    loop = 1
    for a in A:
        for b in B:
            loop *= f(a, b, c)
    assert F(A, B, c) == loop
    assert F((), B, c) == 1
    assert F(A[0], B[0], c) == f(A[0], B[0], c)
    assert G(A, (), c) == 1
    assert eval_kernel(KernelKind.T, A[0], B[0], c) == t(A[0], B[0], c)


def test_float_backend_agrees(sampler, c):
    x, y = sampler.points(2)
    for k in (g, f, h, t):
        assert abs(k(to_float(x), to_float(y), 1.0) - float(k(x, y, c))) < 1e-12
    z = k(mpmath.mpc(x.numerator) / x.denominator, to_float(y, dps=30), mpmath.mpf(1))
    assert abs(complex(z) - float(t(x, y, c))) < 1e-12


def test_exact_conversion():
    assert exact("3/6") == mpq(1, 2)
    assert exact(Fraction(2, 4)) == mpq(1, 2)
    assert exact(0.5) == mpq(1, 2)
    assert is_exact(mpq(1)) and not is_exact(1.0 + 0j)
    with pytest.raises(TypeError):
        exact(1j)


def test_serialize_roundtrip():
    assert serialize(mpq(-3, 4)) == "-3/4"
    assert deserialize("-3/4") == mpq(-3, 4)
    assert serialize(1.5 - 2j) == [1.5, -2.0]
    assert deserialize([1.5, -2.0]) == 1.5 - 2j


def test_div_stays_exact():
    assert div(1, 3) == mpq(1, 3) and is_exact(div(1, 3))
    assert div(1.0, 4) == 0.25


def test_shift():
    assert shift((mpq(1), mpq(2)), mpq(-1)) == (0, 1)
