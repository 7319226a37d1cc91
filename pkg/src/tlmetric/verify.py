"""Batch checks of the Gram-matrix identities, the metric eta and the spectrum."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from .cupbasis import sector_matrices
from .gram import gram_matrix
from .scalars import QParam, default_tol
from .spinchain import (
    coproduct_operators,
    e_matrix,
    hamiltonian_spin,
    local_e,
    parity_matrix,
    restrict,
    sector_basis,
    sector_states,
    spin_reversal_matrix,
)

DEFAULT_N_LIMIT = 10


class SingularSpectralParameterError(ZeroDivisionError):
    pass


def scaled_residual(a: np.ndarray, b: np.ndarray) -> float:
    """||a - b||_F relative to the larger of ||a||_F, ||b||_F (0 when both vanish)."""
    a, b = np.asarray(a), np.asarray(b)
    if a.size == 0:
        return 0.0
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(a - b) / scale)


def hausdorff(a: Sequence[complex], b: Sequence[complex]) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.size == 0 and b.size == 0:
        return 0.0
    if a.size == 0 or b.size == 0:
        return math.inf
    dist = np.abs(a[:, None] - b[None, :])
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


@dataclass
class SectorResult:
    n: int
    dim: int
    residuals: dict
    min_eig: float
    det: float


@dataclass
class EtaResult:
    hermiticity: float
    min_eig: float
    intertwining: float  # eta H vs H^dagger eta
    parity: float  # P eta P vs eta^-1
    spin_reversal: float  # R eta R vs eta^-1
    time_reversal: float  # conj(eta) vs eta^-1
    det_deviation: float  # |det eta - 1|
    gram_roundtrip: float  # B^dagger eta B vs G
    tl_invariance: float  # max_i e_i^dagger eta vs eta e_i
    basis_condition: float


@dataclass
class SpectrumResult:
    max_imag: float  # over eigenvalues of H in the spin basis
    max_imag_blocks: float  # over eigenvalues of every t-basis block
    hausdorff: list  # per sector, t-basis block vs spin-basis sector block
    eigenvalues: list = field(default_factory=list)  # per sector, sorted real parts


@dataclass
class VerificationReport:
    N: int
    r: float
    tol: float
    sectors: list
    det_total: float
    eta: Optional[EtaResult] = None
    spectrum: Optional[SpectrumResult] = None
    eta_tol: float = 1e-8

    def sector_pass(self) -> bool:
        return all(s.min_eig > 0 and all(v < self.tol for v in s.residuals.values())
                   for s in self.sectors)

    def eta_pass(self) -> bool:
        if self.eta is None:
            return True
        e = self.eta
        residuals = [e.hermiticity, e.intertwining, e.parity, e.spin_reversal,
                     e.time_reversal, e.gram_roundtrip, e.tl_invariance]
        return e.min_eig > 0 and all(v < self.eta_tol for v in residuals) \
            and e.det_deviation < 1e-6

    def spectrum_pass(self) -> bool:
        if self.spectrum is None:
            return True
        s = self.spectrum
        return s.max_imag < self.tol and max(s.hausdorff, default=0.0) < 1e-8

    @property
    def passed(self) -> bool:
        return self.sector_pass() and self.eta_pass() and self.spectrum_pass()

    def to_dict(self, eigenvalues: bool = False) -> dict:
        out = {
            "params": {"N": self.N, "r": self.r, "tol": self.tol},
            "sectors": [asdict(s) for s in self.sectors],
            "det_total": self.det_total,
            "eta": asdict(self.eta) if self.eta else None,
            "spectrum": None,
            "pass": self.passed,
        }
        if self.spectrum is not None:
            spec = asdict(self.spectrum)
            if not eigenvalues:
                spec.pop("eigenvalues")
            out["spectrum"] = spec
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(**kw), indent=2)


def _check_params(N: int, r: float, limit: int) -> QParam:
    if N > limit:
        raise ValueError(f"N={N} exceeds configured limit {limit}")
    if N < 2:
        raise ValueError("N must be at least 2")
    return QParam(r, N)


def _sector_symmetry_matrices(N: int, p: QParam):
    """PT and RT as t-basis matrices, pi_n: W_n -> W_n and rho_n: W_n -> W_{N-n}."""
    P, R = parity_matrix(N), spin_reversal_matrix(N)
    pis, rhos = [], []
    for n in range(N + 1):
        Bn = sector_basis(N, n, p).B
        Bm = sector_basis(N, N - n, p).B
        pis.append(np.linalg.solve(Bn, restrict(P, N, n, n) @ Bn.conj()))
        rhos.append(np.linalg.solve(Bm, restrict(R, N, N - n, n) @ Bn.conj()))
    return pis, rhos


def verify_conjecture(N: int, r: float, tol: Optional[float] = None, *,
                      with_eta: bool = True, with_spectrum: bool = True,
                      limit: int = DEFAULT_N_LIMIT) -> VerificationReport:
    tol = default_tol() if tol is None else tol
    p = _check_params(N, r, limit)
    G = [gram_matrix(N, n, p).G for n in range(N + 1)]
    mats = [sector_matrices(N, n, p) for n in range(N + 1)]
    pis, rhos = _sector_symmetry_matrices(N, p)

    sectors = []
    for n in range(N + 1):
        g, m = G[n], mats[n]
        res = {
            "symmetry": scaled_residual(g, g.T),
            "reality": float(np.abs(np.imag(g)).max(initial=0.0)),
            "tl_intertwining": max((scaled_residual(g @ e, e.T @ g) for e in m.epsilon),
                                   default=0.0),
            "hamiltonian_intertwining": scaled_residual(g @ m.Hmat, m.Hmat.T @ g),
            "qgroup_intertwining": (scaled_residual(G[n - 1] @ m.Emat, mats[n - 1].Fmat.T @ g)
                                    if n >= 1 else 0.0),
            "pt": scaled_residual(pis[n].conj().T @ g @ pis[n], g),
            "rt": scaled_residual(rhos[n].conj().T @ G[N - n] @ rhos[n], g),
        }
        eig = np.linalg.eigvalsh((g + g.T) / 2)
        sectors.append(SectorResult(n, comb(N, n), res, float(eig.min()),
                                    float(np.linalg.det(g))))

    report = VerificationReport(N, r, tol, sectors,
                                det_total=float(np.prod([s.det for s in sectors])))
    if with_eta:
        report.eta = eta_checks(N, r)
    if with_spectrum:
        report.spectrum = spectrum_check(N, r)
    return report


def reconstruct_eta(N: int, r: float, limit: int = DEFAULT_N_LIMIT) -> np.ndarray:
    """eta in spin coordinates, sector by sector: eta_n = B_n^-dagger G_n B_n^-1."""
    p = _check_params(N, r, limit)
    eta = np.zeros((2 ** N, 2 ** N), dtype=complex)
    for n in range(N + 1):
        B = sector_basis(N, n, p).B
        Binv = np.linalg.inv(B)
        idx = sector_states(N, n)
        eta[np.ix_(idx, idx)] = Binv.conj().T @ gram_matrix(N, n, p).G @ Binv
    return eta


def eta_inverse(N: int, r: float) -> np.ndarray:
    """eta^-1 = B G^-1 B^dagger, sector by sector."""
    p = QParam(r, N)
    out = np.zeros((2 ** N, 2 ** N), dtype=complex)
    for n in range(N + 1):
        B = sector_basis(N, n, p).B
        idx = sector_states(N, n)
        out[np.ix_(idx, idx)] = B @ np.linalg.inv(gram_matrix(N, n, p).G) @ B.conj().T
    return out


def eta_checks(N: int, r: float) -> EtaResult:
    p = QParam(r, N)
    eta = reconstruct_eta(N, r)
    eta_inv = eta_inverse(N, r)
    H = hamiltonian_spin(N, p)
    P, R = parity_matrix(N), spin_reversal_matrix(N)

    roundtrip, cond, logdet = 0.0, 1.0, 0.0
    for n in range(N + 1):
        bm = sector_basis(N, n, p)
        idx = sector_states(N, n)
        block = eta[np.ix_(idx, idx)]
        roundtrip = max(roundtrip, scaled_residual(bm.B.conj().T @ block @ bm.B,
                                                   gram_matrix(N, n, p).G))
        cond = max(cond, float(np.linalg.cond(bm.B)))
        logdet += np.linalg.slogdet(block)[1]
    tl = max(scaled_residual(eta @ e, e.conj().T @ eta)
             for e in (e_matrix(i, N, p) for i in range(1, N)))
    herm = (eta + eta.conj().T) / 2
    return EtaResult(
        hermiticity=scaled_residual(eta, eta.conj().T),
        min_eig=float(np.linalg.eigvalsh(herm).min()),
        intertwining=scaled_residual(eta @ H, H.conj().T @ eta),
        parity=scaled_residual(P @ eta @ P, eta_inv),
        spin_reversal=scaled_residual(R @ eta @ R, eta_inv),
        time_reversal=scaled_residual(eta.conj(), eta_inv),
        det_deviation=abs(math.exp(logdet) - 1.0),
        gram_roundtrip=roundtrip,
        tl_invariance=tl,
        basis_condition=cond,
    )


def spectrum_check(N: int, r: float) -> SpectrumResult:
    p = _check_params(N, r, DEFAULT_N_LIMIT)
    H = hamiltonian_spin(N, p)
    max_imag = float(np.abs(np.linalg.eigvals(H).imag).max())
    block_imag, dists, eigs = 0.0, [], []
    for n in range(N + 1):
        Ht = sector_matrices(N, n, p).Hmat
        lam_t = np.linalg.eigvals(Ht)
        lam_s = np.linalg.eigvals(restrict(H, N, n, n))
        block_imag = max(block_imag, float(np.abs(lam_t.imag).max()))
        dists.append(hausdorff(lam_t, lam_s))
        eigs.append(sorted(float(x) for x in lam_t.real))
    return SpectrumResult(max_imag, block_imag, dists, eigs)


# ----------------------------------------------------------------------------
# transfer matrix


def r_matrix_coefficient(x: complex, p: QParam) -> complex:
    """(x - 1/x) / (x q - 1/(x q)) multiplying e_i in R_{i,i+1}(x)."""
    if x == 0:
        raise SingularSpectralParameterError("x must be nonzero")
    q = p.q
    den = x * q - 1 / (x * q)
    if abs(den) <= p.tol:
        raise SingularSpectralParameterError(f"x q - 1/(x q) vanishes at x={x}")
    return (x - 1 / x) / den


def transfer_matrix(x: complex, N: int, r: float) -> np.ndarray:
    """Tr_0 K_0 R_{N,0} R_{N-1,N} ... R_{1,2}^2 ... R_{N-1,N} R_{N,0}, K = diag(1/q, q).

    The auxiliary space is appended as site N+1, so R_{N,0} is the bond (N, N+1).
    """
    p = _check_params(N, r, DEFAULT_N_LIMIT)
    L = N + 1
    f = r_matrix_coefficient(x, p)
    D = 2 ** L
    R = {i: np.eye(D) + f * _e_on(i, L, p) for i in range(1, L)}
    T = np.eye(D, dtype=complex)
    for i in list(range(N, 0, -1)) + list(range(1, N + 1)):
        T = T @ R[i]
    K = np.kron(np.eye(2 ** N), np.diag([1 / p.q, p.q]))
    return (K @ T).reshape(2 ** N, 2, 2 ** N, 2).trace(axis1=1, axis2=3)


def _e_on(i: int, L: int, p: QParam) -> np.ndarray:
    # e_i on L sites; only q is taken from p, so L may exceed p.N
    return np.kron(np.kron(np.eye(2 ** (i - 1)), local_e(p)), np.eye(2 ** (L - i - 1)))


@dataclass
class TransferResult:
    x: complex
    eta_hermiticity: float
    commutes_with_H: float  # reported, not asserted


def transfer_checks(N: int, r: float, xs: Sequence[complex]) -> list:
    p = QParam(r, N)
    eta = reconstruct_eta(N, r)
    H = hamiltonian_spin(N, p)
    out = []
    for x in xs:
        t = transfer_matrix(x, N, r)
        out.append(TransferResult(x, scaled_residual(eta @ t, t.conj().T @ eta),
                                  scaled_residual(t @ H, H @ t)))
    return out


def transfer_commutator(x: complex, y: complex, N: int, r: float) -> float:
    """||[t(x), t(y)]|| relative; exploratory only."""
    tx, ty = transfer_matrix(x, N, r), transfer_matrix(y, N, r)
    return scaled_residual(tx @ ty, ty @ tx)


def qgroup_commutators(N: int, r: float) -> dict:
    """Relative residuals of [H, Delta(E)], [H, Delta(F)], [H, Delta(K)]."""
    p = QParam(r, N)
    H = hamiltonian_spin(N, p)
    dE, dF, dK = coproduct_operators(N, p)
    return {name: scaled_residual(H @ X, X @ H) for name, X in
            (("E", dE), ("F", dF), ("K", dK))}
