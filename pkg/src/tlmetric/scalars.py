"""Real scalar arithmetic at q = exp(i*pi/r).

Everything the cup basis needs (quantum integers, the loop weight and the
half-integer power sums q^k + q^-k) is real on the unit circle, so it is
computed through sines and cosines rather than complex powers of q.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field

DEFAULT_TOL = 1e-9
TOL_ENV_VAR = "TLMETRIC_TOL"


def default_tol() -> float:
    """Tolerance from ``TLMETRIC_TOL`` if set, else ``DEFAULT_TOL``."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_TOL
    tol = float(raw)
    if not tol > 0:
        raise ValueError(f"{TOL_ENV_VAR} must be positive, got {raw!r}")
    return tol


class DegenerateDenominatorError(ArithmeticError):
    """q^k + q^-k vanished (only possible outside r > N)."""


@dataclass(frozen=True)
class QParam:
    """Evaluation point q = exp(i*pi/r) for a chain of N strands.

    ``r`` may be any real number larger than ``N`` (``math.inf`` gives q = 1).
    """

    r: float
    N: int
    tol: float = field(default_factory=default_tol)

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        if not self.r > self.N:
            raise ValueError(f"requires r > N (got r={self.r}, N={self.N})")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")

    @property
    def theta(self) -> float:
        return math.pi / self.r

    @property
    def q(self) -> complex:
        return cmath.exp(1j * self.theta)

    @property
    def qsum(self) -> float:
        """q + q^-1 = 2 cos(pi/r)."""
        return 2.0 * math.cos(self.theta)

    def with_N(self, N: int) -> "QParam":
        return QParam(self.r, N, self.tol)


def isclose(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Shared approximate comparison: relative to max(|a|, |b|, 1)."""
    return abs(a - b) <= tol * max(abs(a), abs(b), 1.0)


def quantum_integer(m: int, p: QParam) -> float:
    """[m]_q = sin(m pi / r) / sin(pi / r)."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if m == 0:
        return 0.0
    if math.isinf(p.r):
        return float(m)
    return math.sin(m * p.theta) / math.sin(p.theta)


def loop_weight(p: QParam) -> float:
    """Weight -(q + q^-1) of a closed loop."""
    return -p.qsum


def half_power_sum(k: float, p: QParam) -> float:
    """q^k + q^-k = 2 cos(k pi / r) for real (typically half-integer) k."""
    value = 2.0 * math.cos(k * p.theta)
    if abs(value) <= p.tol:
        raise DegenerateDenominatorError(f"q^{k} + q^-{k} vanishes at r={p.r}")
    return value
