import pytest

from su3bethe.crosscheck import _pair_ok, form_factor_report, spectrum_residuals
from su3bethe.errors import SizeError


def test_spectrum_untwisted():
    r = spectrum_residuals(4, 2, 1, ws=[0.3 + 0.2j, -0.6 + 0.5j])
    assert r["states"] and r["max"] < 1e-9


def test_spectrum_twisted():
    r = spectrum_residuals(3, 2, 0, kappa=0.7, ws=[0.3 + 0.2j])
    assert r["states"] and r["max"] < 1e-9


def test_form_factors_vs_ed():
    rep = form_factor_report(4, 2, 1, 2, limit=None)
    assert all(d["abs_err"] < 1e-8 for d in rep["diagonal"])
    assert rep["pairs"] and all(p["ok"] for p in rep["pairs"])


def test_non_dominant_sector_refused():
    with pytest.raises(SizeError):
        form_factor_report(4, 1, 1, 2)


def test_pair_criterion():
    assert _pair_ok(1.0 + 1e-9, 1.0, 1.0, 1e-7) == (True, pytest.approx(1e-9))
    assert _pair_ok(1.1, 1.0, 1.0, 1e-7)[0] is False
    # selection-rule zeros: both sides must vanish
    assert _pair_ok(1e-30, 1e-32, 1.0, 1e-7) == (True, None)
    assert _pair_ok(1e-3, 1e-32, 1.0, 1e-7) == (False, None)
