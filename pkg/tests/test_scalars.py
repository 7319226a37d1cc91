from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from tlmetric.scalars import (
    DEFAULT_TOL,
    DegenerateDenominatorError,
    QParam,
    default_tol,
    half_power_sum,
    isclose,
    loop_weight,
    quantum_integer,
)


def test_q_on_unit_circle():
    p = QParam(6, 5)
    assert abs(abs(p.q) - 1) < 1e-15
    assert isclose(p.qsum, math.sqrt(3))
    assert isclose(loop_weight(p), -math.sqrt(3))


@pytest.mark.parametrize("r,N", [(5, 5), (4, 5), (2, 3.5)])
def test_guard(r, N):
    with pytest.raises(ValueError):
        QParam(r, N)


def test_infinite_r_is_classical():
    p = QParam(math.inf, 4)
    assert p.q == 1
    assert quantum_integer(7, p) == 7


@given(st.integers(2, 12), st.floats(0.5, 40))
def test_quantum_integer_recursion(m, extra):
    p = QParam(3 + extra, 3)
    lhs = quantum_integer(m + 1, p)
    rhs = p.qsum * quantum_integer(m, p) - quantum_integer(m - 1, p)
    assert isclose(lhs, rhs, 1e-10)


def test_half_power_sum_degenerate():
    p = QParam(6, 5, tol=1e-9)
    with pytest.raises(DegenerateDenominatorError):
        half_power_sum(3, p)  # 2 cos(pi/2)


def test_env_tolerance(monkeypatch):
    monkeypatch.delenv("TLMETRIC_TOL", raising=False)
    assert default_tol() == DEFAULT_TOL
    monkeypatch.setenv("TLMETRIC_TOL", "1e-7")
    assert default_tol() == 1e-7
    assert QParam(6, 5).tol == 1e-7
    monkeypatch.setenv("TLMETRIC_TOL", "-1")
    with pytest.raises(ValueError):
        default_tol()
