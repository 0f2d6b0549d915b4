"""Exact diagonalization oracle for the SU(3) XXX chain on N <= 6 sites.

Monodromy entries are built site by site as sparse 3^N matrices:
T^{(m)}_{ac} = sum_b (delta_ab I + g E^{ba}_m) T^{(m-1)}_{bc}, i.e. the
auxiliary-space matrix of R_{0m}(w, 0) = I + g(w, 0) P multiplied from the
left.  Site 1 is the most significant tensor factor.  At w = 0 the rescaled
R(w) = w I + c P is used.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp

from .errors import DegeneracyWarning, PoleError, SizeError

MAX_SITES = 6
GAP_TOL = 1e-8


def _E(i: int, j: int) -> np.ndarray:
    m = np.zeros((3, 3))
    m[i, j] = 1.0
    return m


def _P() -> np.ndarray:
    P = np.zeros((9, 9))
    for i in range(3):
        for j in range(3):
            P[3 * i + j, 3 * j + i] = 1.0
    return P


def build_R(x, y, c, rescaled: bool = False) -> np.ndarray:
    """I + g(x, y) P on C^3 (x) C^3, or (x - y) I + c P when ``rescaled``."""
    if rescaled:
        return (x - y) * np.eye(9, dtype=complex) + c * _P()
    if x == y:
        raise PoleError("R(x, x) is singular; use the rescaled form")
    return np.eye(9, dtype=complex) + c / (x - y) * _P()


def yang_baxter_defect(x, y, z, c) -> float:
    I3 = np.eye(3)
    P = _P()
    R12 = np.kron(build_R(x, y, c), I3)
    R23 = np.kron(I3, build_R(y, z, c))
    # R13 = P23 R12 P23
    P23 = np.kron(I3, P)
    R13 = P23 @ np.kron(build_R(x, z, c), I3) @ P23
    return float(np.max(np.abs(R12 @ R13 @ R23 - R23 @ R13 @ R12)))


@lru_cache(maxsize=None)
def _site_unit(N: int, m: int, i: int, j: int):
    """E^{ij} acting on site m (1-based) of an N-site chain."""
    return sp.kron(sp.kron(sp.identity(3 ** (m - 1), format="csr"), sp.csr_matrix(_E(i, j))),
                   sp.identity(3 ** (N - m), format="csr"), format="csr")


def site_unit(N: int, m: int, i: int, j: int):
    """E^{i+1, j+1}_m as a sparse matrix (indices 0-based here)."""
    return _site_unit(N, m, i, j)


def build_monodromy(w, N: int, c=1.0, rescaled: bool = False) -> list:
    """3x3 nested list of sparse 3^N operators T_{ab}(w), from R_{0N} ... R_{01}."""
    if not 1 <= N <= MAX_SITES:
        raise SizeError(f"lattice oracle supports 1 <= N <= {MAX_SITES}")
    if rescaled:
        diag, off = w, c
    else:
        if w == 0:
            raise PoleError("T(0) is singular; use the rescaled monodromy")
        diag, off = 1.0, c / w
    dim = 3 ** N
    Id = sp.identity(dim, dtype=complex, format="csr")
    T = [[Id if a == b else sp.csr_matrix((dim, dim), dtype=complex) for b in range(3)] for a in range(3)]
    for m in range(1, N + 1):
        new = [[None] * 3 for _ in range(3)]
        for a in range(3):
            for cc in range(3):
                acc = diag * T[a][cc]
                for b in range(3):
                    acc = acc + off * (site_unit(N, m, b, a) @ T[b][cc])
                new[a][cc] = acc.tocsr()
        T = new
    return T


def transfer_matrix(w, N: int, c=1.0, kappa=1.0, rescaled: bool = False):
    T = build_monodromy(w, N, c, rescaled)
    return (T[0][0] + kappa * T[1][1] + T[2][2]).tocsr()


def rtt_defect(w1, w2, N: int, c=1.0, kappa=1.0) -> float:
    """max |R12 T1 T2 - T2 T1 R12| over all 81 operator blocks, with T -> rho T."""
    if w1 == w2:
        raise PoleError("RTT check needs w1 != w2")
    rho = (1.0, kappa, 1.0)
    A = build_monodromy(w1, N, c)
    B = build_monodromy(w2, N, c)
    A = [[rho[i] * A[i][j] for j in range(3)] for i in range(3)]
    B = [[rho[i] * B[i][j] for j in range(3)] for i in range(3)]
    R = build_R(w1, w2, c)
    worst = 0.0
    idx = [(i, j) for i in range(3) for j in range(3)]
    # (T1 T2)_{(ij),(kl)} = A_ik B_jl ; (T2 T1)_{(ij),(kl)} = B_jl A_ik
    AB = {(i, j, k, l): (A[i][k] @ B[j][l]) for (i, j) in idx for (k, l) in idx}
    BA = {(i, j, k, l): (B[j][l] @ A[i][k]) for (i, j) in idx for (k, l) in idx}
    for (i, j) in idx:
        for (k, l) in idx:
            lhs = None
            rhs = None
            for (p, q) in idx:
                r1 = R[3 * i + j, 3 * p + q]
                if r1 != 0:
                    term = r1 * AB[(p, q, k, l)]
                    lhs = term if lhs is None else lhs + term
                r2 = R[3 * p + q, 3 * k + l]
                if r2 != 0:
                    term = r2 * BA[(i, j, p, q)]
                    rhs = term if rhs is None else rhs + term
            diff = (lhs - rhs) if lhs is not None and rhs is not None else (lhs if rhs is None else -rhs)
            if diff is not None and diff.nnz:
                worst = max(worst, float(np.max(np.abs(diff.data))))
    return worst


# --- weight sectors ---------------------------------------------------------------

@dataclass(frozen=True)
class WeightSector:
    N: int
    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        if min(self.n1, self.n2, self.n3) < 0 or self.n1 + self.n2 + self.n3 != self.N:
            raise SizeError(f"invalid sector ({self.n1},{self.n2},{self.n3}) for N={self.N}")

    @staticmethod
    def from_roots(N: int, a: int, b: int) -> "WeightSector":
        return WeightSector(N, N - a, a - b, b)

    @property
    def basis(self) -> np.ndarray:
        return _basis(self.N, self.n1, self.n2, self.n3)


@lru_cache(maxsize=None)
def _basis(N, n1, n2, n3) -> np.ndarray:
    out = []
    for idx, colors in enumerate(itertools.product(range(3), repeat=N)):
        if colors.count(0) == n1 and colors.count(1) == n2:
            out.append(idx)
    return np.array(out, dtype=int)


def restrict(op, sector: WeightSector) -> np.ndarray:
    b = sector.basis
    return op[b][:, b].toarray()


def sector_leakage(op, sector: WeightSector) -> float:
    """Largest entry of op mapping the sector outside itself."""
    b = sector.basis
    mask = np.ones(op.shape[0], dtype=bool)
    mask[b] = False
    blk = op[mask][:, b]
    return float(np.max(np.abs(blk.data))) if blk.nnz else 0.0


@dataclass
class Spectrum:
    sector: WeightSector
    values: np.ndarray
    right: np.ndarray      # columns are right eigenvectors
    left: np.ndarray       # rows are left eigenvectors, left[k] @ right[:, k] = 1

    def match(self, value) -> int:
        return int(np.argmin(np.abs(self.values - value)))

    def gaps(self) -> np.ndarray:
        """Distance from each eigenvalue to its nearest neighbour."""
        v = self.values
        if len(v) < 2:
            return np.full(len(v), np.inf)
        d = np.abs(v[:, None] - v[None, :])
        np.fill_diagonal(d, np.inf)
        return d.min(axis=1)

    def min_gap(self) -> float:
        g_ = self.gaps()
        return float(g_.min()) if len(g_) else np.inf

    def isolated(self, k: int, tol: float = GAP_TOL) -> bool:
        return bool(self.gaps()[k] >= tol)


def _phase_fix(vec: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vec)))
    return vec * (abs(vec[k]) / vec[k])


def sector_spectrum(w, N: int, sector: WeightSector, c=1.0, kappa=1.0, vectors: bool = True) -> Spectrum:
    """Dense diagonalization of tr T(w) (or tr T_kappa(w)) inside a weight sector.

    Left eigenvectors come from the transposed problem, paired with the right
    ones by eigenvalue and scaled so that left . right = 1; inside a
    degenerate cluster the pairing is arbitrary (a DegeneracyWarning is issued).
    """
    M = restrict(transfer_matrix(w, N, c, kappa), sector)
    if not vectors:
        vals = sla.eigvals(M)
        return Spectrum(sector, vals, np.empty((0, 0)), np.empty((0, 0)))
    vals, R = sla.eig(M)
    lvals, Lt = sla.eig(M.T)
    R = np.column_stack([_phase_fix(R[:, k]) for k in range(R.shape[1])])
    L = np.empty_like(R.T)
    used = np.zeros(len(lvals), dtype=bool)
    for k in range(len(vals)):
        dist = np.where(used, np.inf, np.abs(lvals - vals[k]))
        j = int(np.argmin(dist))
        used[j] = True
        lv = Lt[:, j]
        L[k] = lv / (lv @ R[:, k])
    spec = Spectrum(sector, vals, R, L)
    if spec.min_gap() < GAP_TOL:
        warnings.warn(f"eigenvalue gap {spec.min_gap():.2e} in sector {sector}", DegeneracyWarning)
    return spec


def commutator_norm(w1, w2, N: int, c=1.0, kappa=1.0) -> float:
    A = transfer_matrix(w1, N, c, kappa)
    B = transfer_matrix(w2, N, c, kappa)
    C = (A @ B - B @ A)
    return float(np.max(np.abs(C.data))) if C.nnz else 0.0


# --- local operators --------------------------------------------------------------

def local_element(m_site: int, eps: int, eps2: int, bra: np.ndarray, ket: np.ndarray, sector_bra: WeightSector,
                  sector_ket: WeightSector | None = None) -> complex:
    """bra . E^{eps,eps2}_m . ket with sector-restricted vectors (bra is a left vector)."""
    sector_ket = sector_ket or sector_bra
    N = sector_bra.N
    op = site_unit(N, m_site, eps - 1, eps2 - 1)
    blk = op[sector_bra.basis][:, sector_ket.basis].toarray()
    return complex(bra @ blk @ ket)


def embed(vec: np.ndarray, sector: WeightSector) -> np.ndarray:
    full = np.zeros(3 ** sector.N, dtype=complex)
    full[sector.basis] = vec
    return full


def inverse_scattering_unit(m_site: int, eps: int, eps2: int, N: int, c=1.0) -> np.ndarray:
    """(tr T(0))^{m-1} T_{eps2,eps}(0) (tr T(0))^{-m} from the rescaled monodromy, dense."""
    if N > 4:
        raise SizeError("dense inverse-scattering reconstruction is limited to N <= 4")
    T = build_monodromy(0.0, N, c, rescaled=True)
    tr = (T[0][0] + T[1][1] + T[2][2]).toarray()
    tr_inv = np.linalg.inv(tr)
    Tee = T[eps2 - 1][eps - 1].toarray()
    return np.linalg.matrix_power(tr, m_site - 1) @ Tee @ np.linalg.matrix_power(tr_inv, m_site)


def gen_sol_defect(N: int, c=1.0) -> float:
    """Largest deviation between E^{e,e'}_m and its inverse-scattering form, all m, e, e'."""
    worst = 0.0
    for m in range(1, N + 1):
        for e in range(1, 4):
            for e2 in range(1, 4):
                direct = site_unit(N, m, e - 1, e2 - 1).toarray()
                worst = max(worst, float(np.max(np.abs(direct - inverse_scattering_unit(m, e, e2, N, c)))))
    return worst


def shift_power_defect(N: int, c=1.0) -> float:
    """(tr T(0))^N / c^{N^2} - I, for the rescaled transfer matrix at zero."""
    tr = transfer_matrix(0.0, N, c, rescaled=True).toarray()
    P = np.linalg.matrix_power(tr, N) / c ** (N * N)
    return float(np.max(np.abs(P - np.eye(3 ** N))))


def vacuum_eigenvalues(w, N: int, c=1.0) -> tuple:
    """T_11, T_22, T_33 on the all-color-1 state."""
    T = build_monodromy(w, N, c)
    vac = np.zeros(3 ** N, dtype=complex)
    vac[0] = 1.0
    out = []
    for a in range(3):
        y = T[a][a] @ vac
        out.append(complex(y[0]))
        if np.max(np.abs(np.delete(y, 0))) > 1e-12:
            raise ValueError("vacuum is not an eigenvector")
    return tuple(out)


def annihilation_defect(w, N: int, c=1.0) -> float:
    T = build_monodromy(w, N, c)
    vac = np.zeros(3 ** N, dtype=complex)
    vac[0] = 1.0
    return max(float(np.max(np.abs(T[j][k] @ vac))) for j in range(3) for k in range(3) if j > k)
