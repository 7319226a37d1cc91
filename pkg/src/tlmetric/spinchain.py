"""The 2^N-dimensional spin representation of TL_N(q) and U_q(sl2).

Basis vectors v_{s1} (x) ... (x) v_{sN} are indexed by the integer whose
binary digits are the spins, site 1 most significant, with v+ -> 0 and
v- -> 1. Parity reversal is then bit reversal and spin reversal is bitwise
complement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .cupbasis import enumerate_basis, pattern_cups, pattern_defects
from .diagrams import Word
from .scalars import QParam

PLUS, MINUS = 0, 1


class RankDeficiencyError(np.linalg.LinAlgError):
    """The cup basis of a sector failed to span it."""


def local_e(p: QParam) -> np.ndarray:
    """The 4x4 block on V (x) V in the order (++, +-, -+, --)."""
    q = p.q
    e = np.zeros((4, 4), dtype=complex)
    e[1, 1] = -1 / q
    e[1, 2] = e[2, 1] = 1
    e[2, 2] = -q
    return e


def _check_site(i: int, N: int) -> None:
    if not 1 <= i <= N - 1:
        raise ValueError(f"generator index {i} out of range 1..{N - 1}")


def e_matrix(i: int, N: int, p: QParam) -> np.ndarray:
    _check_site(i, N)
    return np.kron(np.kron(np.eye(2 ** (i - 1)), local_e(p)), np.eye(2 ** (N - i - 1)))


def apply_e(i: int, vec: np.ndarray, N: int, p: QParam) -> np.ndarray:
    """e_i @ vec without building the 2^N x 2^N matrix."""
    _check_site(i, N)
    v = np.asarray(vec, dtype=complex).reshape(2 ** (i - 1), 4, 2 ** (N - i - 1))
    return np.einsum("ab,xby->xay", local_e(p), v).reshape(-1)


def hamiltonian_spin(N: int, p: QParam) -> np.ndarray:
    if N < 2:
        raise ValueError("the Hamiltonian needs N >= 2")
    return sum(e_matrix(i, N, p) for i in range(1, N))


def _kron_all(mats) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def single_site(p: QParam) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """E, F, K on V: E v- = v+, F v+ = v-, K v(+/-) = q^(+/-1) v(+/-)."""
    E = np.array([[0, 1], [0, 0]], dtype=complex)
    F = np.array([[0, 0], [1, 0]], dtype=complex)
    K = np.diag([p.q, 1 / p.q])
    return E, F, K


def coproduct_operators(N: int, p: QParam) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Iterated coproducts of E, F, K acting on V^(x)N."""
    E, F, K = single_site(p)
    one = np.eye(2)
    Kinv = np.linalg.inv(K)
    dE = sum(_kron_all([K] * i + [E] + [one] * (N - i - 1)) for i in range(N))
    dF = sum(_kron_all([one] * i + [F] + [Kinv] * (N - i - 1)) for i in range(N))
    dK = _kron_all([K] * N)
    return dE, dF, dK


def sector_states(N: int, n: int) -> np.ndarray:
    """Spin-basis indices with exactly n down spins, ascending."""
    return np.array([k for k in range(2 ** N) if bin(k).count("1") == n], dtype=int)


def sign_string(k: int, N: int) -> str:
    return "".join("-" if b == "1" else "+" for b in format(k, f"0{N}b"))


def omega_index(N: int, n: int) -> int:
    return ((1 << n) - 1) << (N - n)


def parity_matrix(N: int) -> np.ndarray:
    D = 2 ** N
    P = np.zeros((D, D))
    for k in range(D):
        P[int(format(k, f"0{N}b")[::-1], 2), k] = 1
    return P


def spin_reversal_matrix(N: int) -> np.ndarray:
    D = 2 ** N
    R = np.zeros((D, D))
    R[(D - 1) ^ np.arange(D), np.arange(D)] = 1
    return R


def time_reversal(vec: np.ndarray) -> np.ndarray:
    """T is antilinear: complex conjugation of spin-basis coordinates."""
    return np.conj(vec)


def symmetry_ops(N: int) -> tuple[np.ndarray, np.ndarray, Callable[[np.ndarray], np.ndarray]]:
    return parity_matrix(N), spin_reversal_matrix(N), time_reversal


@dataclass(frozen=True)
class BasisMatrix:
    """Spin coordinates of the cup basis of W_n.

    ``B`` is square: rows follow ``states`` (the sector's spin-basis indices),
    column j holds the coordinates of t_j.
    """

    n: int
    N: int
    states: np.ndarray
    B: np.ndarray

    def embedded(self) -> np.ndarray:
        full = np.zeros((2 ** self.N, self.B.shape[1]), dtype=complex)
        full[self.states, :] = self.B
        return full


def cup_expansion(pattern, p: QParam) -> np.ndarray:
    """Spin-basis vector of a cup pattern: each cup expands to v+ v- - q v- v+."""
    N = len(pattern)
    vec = np.zeros(2 ** N, dtype=complex)
    cups = pattern_cups(pattern)
    base = 0
    for k, s in pattern_defects(pattern):
        if s == "-":
            base |= 1 << (N - 1 - k)
    for choice in itertools.product((0, 1), repeat=len(cups)):
        idx, coeff = base, 1.0 + 0j
        for (a, b), flip in zip(cups, choice):
            down = b if flip == 0 else a
            idx |= 1 << (N - 1 - down)
            if flip:
                coeff *= -p.q
        vec[idx] += coeff
    return vec


def word_vector(w: Word, n: int, p: QParam) -> np.ndarray:
    """a Omega_n by applying e-matrices, rightmost letter first."""
    N = w.n_strands
    vec = np.zeros(2 ** N, dtype=complex)
    vec[omega_index(N, n)] = 1
    for i in reversed(w.letters):
        vec = apply_e(i, vec, N, p)
    return vec


def basis_change(N: int, n: int, p: QParam, method: str = "cups") -> BasisMatrix:
    """Basis matrix of W_n built from cup expansions or from word application."""
    if not 0 <= n <= N:
        raise ValueError(f"sector n={n} outside 0..{N}")
    states = sector_states(N, n)
    basis = enumerate_basis(N, n)
    if method == "cups":
        cols = [cup_expansion(v.cup_pattern, p) for v in basis]
    elif method == "words":
        cols = [word_vector(v.word, n, p) for v in basis]
    else:
        raise ValueError(f"unknown method {method!r}")
    full = np.array(cols).T
    outside = np.delete(full, states, axis=0)
    if outside.size and np.abs(outside).max() > 0:
        raise RankDeficiencyError("basis vector leaks out of its spin sector")
    B = full[states, :]
    if np.linalg.matrix_rank(B) < len(basis):
        raise RankDeficiencyError(f"cup basis of W_{n} is rank deficient")
    return BasisMatrix(n, N, states, B)


@lru_cache(maxsize=64)
def _cached_basis(N: int, r: float, n: int) -> BasisMatrix:
    return basis_change(N, n, QParam(r, N))


def sector_basis(N: int, n: int, p: QParam) -> BasisMatrix:
    return _cached_basis(N, p.r, n)


def full_basis_matrix(N: int, p: QParam) -> tuple[np.ndarray, list[slice]]:
    """Square 2^N matrix whose column blocks are the sector bases, n = 0..N."""
    D = 2 ** N
    full = np.zeros((D, D), dtype=complex)
    blocks, col = [], 0
    for n in range(N + 1):
        bm = sector_basis(N, n, p)
        d = bm.B.shape[1]
        full[bm.states, col:col + d] = bm.B
        blocks.append(slice(col, col + d))
        col += d
    return full, blocks


def restrict(op: np.ndarray, N: int, n_out: int, n_in: int) -> np.ndarray:
    """Block of a spin operator from sector n_in to sector n_out."""
    return op[np.ix_(sector_states(N, n_out), sector_states(N, n_in))]
