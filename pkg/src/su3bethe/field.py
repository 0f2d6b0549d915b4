"""Scalar backends and the rational kernels g, f, h, t.

Two backends are supported and every kernel is generic over them:

* exact rationals (``gmpy2.mpq``, always in lowest terms), and
* complex floats (Python ``complex``, or ``mpmath.mpc`` for extended precision).

Any other exact field type that supports ``+ - * /`` and ``== 0`` also works
(the Laurent checks push sympy rational functions through the same code).
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import mpmath

from .errors import PoleError

mpq = gmpy2.mpq
_MPQ = type(mpq(0))


class KernelKind(enum.Enum):
    G = "g"
    F = "f"
    H = "h"
    T = "t"


# --- backends -------------------------------------------------------------

def exact(x) -> "gmpy2.mpq":
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to an exact rational."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    if isinstance(x, (int, Fraction)) or type(x).__name__ == "mpz":
        return mpq(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite float cannot be made exact")
        return mpq(Fraction(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def to_float(x, dps: int | None = None):
    """Convert to the float backend; ``dps`` selects mpmath extended precision."""
    if dps is None:
        if isinstance(x, _MPQ):
            return complex(float(x))
        z = complex(x)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise PoleError("non-finite complex value")
        return z
    if isinstance(x, _MPQ):
        return mpmath.mpc(mpmath.mpf(int(x.numerator)) / int(x.denominator))
    return mpmath.mpc(x)


def is_exact(x) -> bool:
    return not isinstance(x, (complex, float, mpmath.mpc, mpmath.mpf))


def is_zero(x, tol: float = 0.0) -> bool:
    if tol and not is_exact(x):
        return abs(x) <= tol
    return x == 0


def serialize(x):
    """Exact values become ``"p/q"``; floats become ``[re, im]``."""
    if isinstance(x, (_MPQ, Fraction, int)):
        q = exact(x)
        return f"{q.numerator}/{q.denominator}"
    z = complex(x)
    return [z.real, z.imag]


def deserialize(obj):
    if isinstance(obj, str):
        return exact(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, int):
        return exact(obj)
    if isinstance(obj, float):
        return complex(obj)
    raise TypeError(f"cannot deserialize {obj!r}")


# --- kernels --------------------------------------------------------------

def _diff(x, y):
    d = x - y
    if d == 0:
        raise PoleError(f"coincident arguments x - y = 0 (x={x}, y={y})")
    return d


def g(x, y, c):
    return c / _diff(x, y)


def f(x, y, c):
    d = _diff(x, y)
    return (d + c) / d


def h(x, y, c):
    return (x - y + c) / c


def t(x, y, c):
    d = _diff(x, y)
    e = d + c
    if e == 0:
        raise PoleError("t(x, y) evaluated at x - y = -c")
    return c * c / (d * e)


def g_inv(x, y, c):
    """1/g(x, y); finite everywhere, zero at x = y."""
    return (x - y) / c


def f_inv(x, y, c):
    """1/f(x, y); zero at x = y, pole at x - y = -c."""
    e = x - y + c
    if e == 0:
        raise PoleError("1/f(x, y) evaluated at x - y = -c")
    return (x - y) / e


_KERNELS = {KernelKind.G: g, KernelKind.F: f, KernelKind.H: h, KernelKind.T: t}


def eval_kernel(kind: KernelKind, x, y, c):
    return _KERNELS[KernelKind(kind)](x, y, c)


def div(num, den):
    """num / den that stays exact when both sides are Python ints."""
    if isinstance(num, int) and isinstance(den, int):
        return mpq(num, den)
    return num / den


def prod(values: Iterable, start=1):
    out = start
    for v in values:
        out = out * v
    return out


def set_product(kind: KernelKind, A: Sequence, B: Sequence, c):
    """Product of ``kind(a, b)`` over all a in A and b in B (1 if either is empty)."""
    fn = _KERNELS[KernelKind(kind)]
    out = 1
    for a in A:
        for b in B:
            out = out * fn(a, b, c)
    return out


# shorthand used throughout: products over sets, scalars promoted to 1-sets
def _as_set(x):
    return x if isinstance(x, (list, tuple)) else (x,)


def G(A, B, c):
    return set_product(KernelKind.G, _as_set(A), _as_set(B), c)


def F(A, B, c):
    return set_product(KernelKind.F, _as_set(A), _as_set(B), c)


def H(A, B, c):
    return set_product(KernelKind.H, _as_set(A), _as_set(B), c)


def T(A, B, c):
    return set_product(KernelKind.T, _as_set(A), _as_set(B), c)


def shift(A: Sequence, s) -> tuple:
    return tuple(a + s for a in A)
