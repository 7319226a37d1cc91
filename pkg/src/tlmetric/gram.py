"""The oriented-diagram functional omega_n and the Gram matrices it defines.

Both boundaries of a diagram are labelled by sigma_n = (-)^n (+)^(N-n).
An arc with both ends on one boundary is oriented iff its end labels differ;
a through line is oriented iff its two labels agree. Closed loops are always
orientable. An oriented top arc reading (-, +) from the left, or bottom arc
reading (+, -), counts as anticlockwise. This convention is pinned by
tests/test_gram.py::TestCalibration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import block_diag

from .cupbasis import (
    enumerate_basis,
    omega_pattern,
    pattern_cups,
    wmax_indices,
    wmax_sector,
)
from .diagrams import WeightedDiagram, compose, evaluate_word, star
from .scalars import QParam, half_power_sum


@dataclass(frozen=True)
class OrientationCount:
    x: int  # anticlockwise oriented arcs
    y: int  # closed loops
    z: int  # unorientable arcs and through lines

    def __post_init__(self):
        if min(self.x, self.y, self.z) < 0:
            raise ValueError("counts must be nonnegative")


def orient_and_count(d: WeightedDiagram, n: int) -> OrientationCount:
    N = d.N
    if not 0 <= n <= N:
        raise ValueError(f"sector n={n} outside 0..{N}")
    sigma = omega_pattern(N, n)
    x = z = 0
    for a, b in d.diagram.top_arcs():
        if sigma[a] == sigma[b]:
            z += 1
        elif (sigma[a], sigma[b]) == ("-", "+"):
            x += 1
    for a, b in d.diagram.bottom_arcs():
        if sigma[a] == sigma[b]:
            z += 1
        elif (sigma[a], sigma[b]) == ("+", "-"):
            x += 1
    for t, b in d.diagram.through_lines():
        if sigma[t] != sigma[b]:
            z += 1
    return OrientationCount(x, d.loops, z)


def omega_from_counts(c: OrientationCount, N: int, n: int, p: QParam) -> float:
    if c.z:
        return 0.0
    sign = -1.0 if (c.x + c.y) % 2 else 1.0
    return sign * p.qsum ** c.y * half_power_sum(N / 2 - n, p) / half_power_sum(N / 2 - c.x, p)


def omega(d: WeightedDiagram, n: int, p: QParam) -> float:
    """omega_n of a diagram; p.N must match the diagram's strand count."""
    if p.N != d.N:
        raise ValueError(f"QParam is for N={p.N}, diagram has N={d.N}")
    return omega_from_counts(orient_and_count(d, n), d.N, n, p)


@lru_cache(maxsize=None)
def gram_counts(N: int, n: int) -> tuple[tuple[OrientationCount, ...], ...]:
    """Orientation data of a_i^* a_j for every basis pair; independent of q."""
    diagrams = [evaluate_word(v.word) for v in enumerate_basis(N, n)]
    starred = [star(d) for d in diagrams]
    return tuple(
        tuple(orient_and_count(compose(si, dj), n) for dj in diagrams)
        for si in starred
    )


@dataclass(frozen=True)
class GramBlock:
    n: int
    N: int
    r: float
    G: np.ndarray


def gram_matrix(N: int, n: int, p: QParam) -> GramBlock:
    """G_ij = omega_n(a_i^* a_j) on W_n."""
    if p.N != N:
        p = p.with_N(N)
    counts = gram_counts(N, n)
    G = np.array([[omega_from_counts(c, N, n, p) for c in row] for row in counts])
    return GramBlock(n, N, p.r, G)


def gram_full(N: int, p: QParam) -> np.ndarray:
    """Block-diagonal Gram matrix over all sectors, blocks ordered n = 0..N."""
    return block_diag(*(gram_matrix(N, n, p).G for n in range(N + 1)))


def glued_loops(top_pattern, bottom_pattern) -> int:
    """Closed loops formed by reflecting ``top_pattern`` onto ``bottom_pattern``."""
    N = len(top_pattern)
    parent = list(range(N))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for pattern in (top_pattern, bottom_pattern):
        for a, b in pattern_cups(pattern):
            parent[find(a)] = find(b)
    open_ends = {find(k) for k in range(N)
                 if isinstance(top_pattern[k], str) or isinstance(bottom_pattern[k], str)}
    return len({find(k) for k in range(N)} - open_ends)


def gram_wmax(N: int, p: QParam) -> np.ndarray:
    """G restricted to maximal-cup patterns, from loop counts of glued half diagrams.

    Every a_i^* a_j here has x = n anticlockwise arcs, so omega reduces to
    (-1)^n (-(q + 1/q))^y.
    """
    n = wmax_sector(N)
    basis = enumerate_basis(N, n)
    patterns = [basis[k].cup_pattern for k in wmax_indices(N)]
    sign = -1.0 if n % 2 else 1.0
    return np.array([[sign * (-p.qsum) ** glued_loops(a, b) for b in patterns]
                     for a in patterns])
