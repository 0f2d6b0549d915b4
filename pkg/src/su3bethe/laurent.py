"""Exact Laurent expansion at a point, for regularity checks.

A quantity is evaluated with one coordinate displaced by a formal parameter e,
using sympy's rational function field QQ(e) as the scalar type.  The result is
an exact rational function of e whose pole order at e = 0 and leading
coefficients can be read off directly.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from sympy import QQ
from sympy.polys.fields import field

from .field import exact

EPS_FIELD, EPS = field("e", QQ)


def _valuation(poly) -> int:
    """Lowest power of e with a nonzero coefficient (poly must be nonzero)."""
    return min(m[0] for m in poly.monoms())


def _coeff(poly, k: int):
    return poly.coeff(poly.ring.gens[0] ** k) if k > 0 else poly.coeff(1) if k == 0 else 0


def as_fraction(value):
    """Bring an mpq / int into the e-field."""
    q = exact(value)
    return EPS_FIELD(QQ(int(q.numerator), int(q.denominator)))


def order_at_zero(expr) -> int:
    """Valuation of a rational function of e at e = 0 (negative means a pole)."""
    expr = EPS_FIELD(expr) if not hasattr(expr, "numer") else expr
    if expr == 0:
        return 10 ** 9
    return _valuation(expr.numer) - _valuation(expr.denom)


def laurent_coefficients(expr, upto: int = 1) -> dict:
    """Coefficients of e^k for k from the pole order up to ``upto``, as Fractions."""
    expr = EPS_FIELD(expr) if not hasattr(expr, "numer") else expr
    if expr == 0:
        return {}
    num, den = expr.numer, expr.denom
    vn, vd = _valuation(num), _valuation(den)
    start = vn - vd
    # shift both to start at e^0 and divide the power series
    nc = [num.coeff(EPS_FIELD.ring.gens[0] ** (vn + i)) if vn + i > 0 else num.coeff(1) for i in range(upto - start + 1)]
    dc = [den.coeff(EPS_FIELD.ring.gens[0] ** (vd + i)) if vd + i > 0 else den.coeff(1) for i in range(upto - start + 1)]
    out = []
    for i in range(len(nc)):
        s = nc[i] - sum(out[j] * dc[i - j] for j in range(i))
        out.append(s / dc[0])
    return {start + i: Fraction(int(v.numerator), int(v.denominator)) for i, v in enumerate(out)}


def residue(expr) -> Fraction:
    """Coefficient of 1/e."""
    return laurent_coefficients(expr, upto=-1).get(-1, Fraction(0))


def is_regular(fn: Callable, *, probe: Callable | None = None) -> bool:
    """True when ``fn(e)`` has no negative powers of e."""
    return order_at_zero(fn(EPS)) >= 0


def sampled_growth(fn: Callable, eps_list=(Fraction(1, 10 ** 3), Fraction(1, 10 ** 4), Fraction(1, 10 ** 5))) -> list:
    """|e * fn(e)| at a few small exact e; tends to 0 iff there is no simple pole."""
    from .field import mpq
    return [abs(float(mpq(e) * fn(mpq(e)))) for e in eps_list]
