import warnings

import numpy as np
import pytest

from su3bethe.errors import PoleError, SizeError
from su3bethe.lattice import (WeightSector, annihilation_defect, build_R, commutator_norm, gen_sol_defect,
                              rtt_defect, sector_leakage, sector_spectrum, shift_power_defect,
                              transfer_matrix, vacuum_eigenvalues, yang_baxter_defect)


def test_rescaled_R_at_coincidence_is_c_times_permutation():
    with pytest.raises(PoleError):
        build_R(0.2, 0.2, 1.0)
    R = build_R(0.2, 0.2, 1.0, rescaled=True)
    P = np.zeros((9, 9))
    for i in range(3):
        for j in range(3):
            P[3 * i + j, 3 * j + i] = 1
    assert np.allclose(R, P)


def test_yang_baxter():
    assert yang_baxter_defect(0.3, -0.7 + 0.2j, 1.1, 1.0) < 1e-12


@pytest.mark.parametrize("N,kappa", [(2, 1.0), (3, 1.0), (2, 2.0), (3, 0.7)])
def test_rtt(N, kappa):
    assert rtt_defect(0.3 + 0.1j, -0.5, N, kappa=kappa) < 1e-11


def test_vacuum():
    w, N = 0.4, 3
    l1, l2, l3 = vacuum_eigenvalues(w, N)
    assert abs(l1 - ((w + 1) / w) ** N) < 1e-12
    assert abs(l2 - 1) < 1e-12 and abs(l3 - 1) < 1e-12
    assert annihilation_defect(w, N) < 1e-14


def test_transfer_matrices_commute():
    assert commutator_norm(0.3, 0.9 + 0.2j, 4) < 1e-10


def test_sectors_are_invariant():
    T = transfer_matrix(0.3 + 0.2j, 3, kappa=1.3)
    for sec in [(1, 1, 1), (2, 1, 0), (0, 0, 3)]:
        assert sector_leakage(T, WeightSector(3, *sec)) == 0.0


def test_sector_validation():
    with pytest.raises(SizeError):
        WeightSector(3, 2, 2, 0)


def test_eigenvectors_biorthonormal():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sp = sector_spectrum(0.37 + 0.21j, 4, WeightSector(4, 2, 1, 1))
    M = sp.left @ sp.right
    assert np.max(np.abs(np.diag(M) - 1)) < 1e-10
    iso = [k for k in range(len(sp.values)) if sp.isolated(k)]
    sub = M[np.ix_(iso, iso)]
    assert np.max(np.abs(sub - np.eye(len(iso)))) < 1e-8


@pytest.mark.parametrize("N", [2, 3, 4])
def test_inverse_scattering(N):
    assert gen_sol_defect(N) < 1e-10


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_shift_power(N):
    assert shift_power_defect(N) < 1e-10


def test_inverse_scattering_guard():
    with pytest.raises(SizeError):
        gen_sol_defect(5)
