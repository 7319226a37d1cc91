"""Acceptance criteria, each evaluated literally at its stated tolerance.

Every check prints one ``[PASS]``/``[FAIL]`` line, collected into the pytest
terminal summary. Run ``python3 tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import itertools
import sys
import time
from functools import lru_cache
from math import comb

import numpy as np
import pytest

from tlmetric.cupbasis import enumerate_basis, sector_matrices, wmax_indices
from tlmetric.diagrams import (
    WeightedDiagram,
    Word,
    enumerate_diagrams,
    evaluate_word,
    generator_diagram,
    identity_diagram,
)
from tlmetric.gram import gram_matrix, gram_wmax, omega
from tlmetric.scalars import QParam
from tlmetric.spinchain import e_matrix
from tlmetric.verify import (
    scaled_residual,
    transfer_checks,
    transfer_matrix,
    verify_conjecture,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # executed as a script
    ACCEPTANCE_LINES = []

SWEEP_N = range(2, 9)
SWEEP_R = {"N+0.5": lambda N: N + 0.5, "N+1": lambda N: N + 1.0,
           "2N": lambda N: 2.0 * N, "10N": lambda N: 10.0 * N}
TOL = 1e-9


def _record(label: str, ok: bool, detail: str) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@lru_cache(maxsize=1)
def sweep():
    start = time.perf_counter()
    reports = [verify_conjecture(N, f(N), TOL) for N in SWEEP_N for f in SWEEP_R.values()]
    return reports, time.perf_counter() - start


def criterion_1() -> bool:
    start = time.perf_counter()
    worst_a = worst_b = 0.0
    for r in (6.0, 7.3, 50.0):
        p = QParam(r, 5)
        a = omega(evaluate_word(Word.parse("e1e2e3e2", 5)), 2, p)
        b = omega(evaluate_word(Word.parse("e3e2e1e4e3e2", 5)), 2, p)
        worst_a = max(worst_a, abs(a - 1.0))
        worst_b = max(worst_b, abs(b - 0.0))
    elapsed = time.perf_counter() - start
    ok = worst_a < 1e-12 and worst_b < 1e-12 and elapsed < 1.0
    return _record("1 omega examples N=5", ok,
                   f"max|omega_2(e1e2e3e2) - 1| = {worst_a:.3g}, "
                   f"max|omega_2(e3e2e1e4e3e2)| = {worst_b:.3g}, {elapsed:.3f}s")


def criterion_2() -> bool:
    start = time.perf_counter()
    N, r = 7, 8.0
    p = QParam(r, N)
    basis = enumerate_basis(N, N // 2)
    shapes = [v.tableau.shape for v in basis]
    i, j = shapes.index((3, 2, 1)), shapes.index((4, 2, 1))
    full = gram_matrix(N, N // 2, p).G[i, j]
    idx = wmax_indices(N)
    fast = gram_wmax(N, p)[idx.index(i), idx.index(j)]
    target = p.qsum ** 2
    elapsed = time.perf_counter() - start
    ok = abs(full - target) < 1e-9 and abs(fast - full) < 1e-9 and elapsed < 1.0
    return _record("2 W_max example N=7", ok,
                   f"<∪∪∪+, ∪∪+∪> full = {full:.12g}, fast = {fast:.12g}, "
                   f"(q+1/q)^2 = {target:.12g}, {elapsed:.3f}s")


def criterion_3() -> bool:
    reports, elapsed = sweep()
    worst = max(v for rep in reports for s in rep.sectors for v in s.residuals.values())
    min_eig = min(s.min_eig for rep in reports for s in rep.sectors)
    ok = all(rep.sector_pass() for rep in reports) and elapsed < 300
    return _record("3 Gram identities sweep", ok,
                   f"{len(reports)} (N, r) runs, max residual {worst:.3g}, "
                   f"min eigenvalue {min_eig:.3g}, {elapsed:.1f}s")


def criterion_4() -> bool:
    reports, _ = sweep()
    etas = [rep.eta for rep in reports if rep.N <= 7]
    keys = ("hermiticity", "intertwining", "parity", "spin_reversal", "time_reversal")
    worst = max(getattr(e, k) for e in etas for k in keys)
    det_dev = max(e.det_deviation for e in etas)
    min_eig = min(e.min_eig for e in etas)
    ok = worst < 1e-8 and det_dev < 1e-6 and min_eig > 0
    return _record("4 eta reconstruction N<=7", ok,
                   f"max residual {worst:.3g}, max |det - 1| {det_dev:.3g}, "
                   f"min eigenvalue {min_eig:.3g}")


def criterion_5() -> bool:
    reports, _ = sweep()
    imag = max(rep.spectrum.max_imag for rep in reports)
    dist = max(max(rep.spectrum.hausdorff) for rep in reports)
    ok = imag < 1e-9 and dist < 1e-8
    return _record("5 real spectrum", ok, f"max |Im| {imag:.3g}, max Hausdorff {dist:.3g}")


def _tl_ok(mats, delta, atol=1e-10) -> bool:
    for a, ea in enumerate(mats):
        if not np.allclose(ea @ ea, delta * ea, atol=atol):
            return False
        for b, eb in enumerate(mats):
            if abs(a - b) == 1 and not np.allclose(ea @ eb @ ea, ea, atol=atol):
                return False
            if abs(a - b) > 1 and not np.allclose(ea @ eb, eb @ ea, atol=atol):
                return False
    return True


def criterion_6() -> bool:
    failures = []
    for N in range(2, 9):
        gens = [WeightedDiagram(generator_diagram(i, N)) for i in range(1, N)]
        one = WeightedDiagram(identity_diagram(N))
        for a, b in itertools.product(range(N - 1), repeat=2):
            ea, eb = gens[a], gens[b]
            good = (ea * ea == WeightedDiagram(ea.diagram, 1) and one * ea == ea
                    and (abs(a - b) != 1 or ea * eb * ea == ea)
                    and (abs(a - b) <= 1 or ea * eb == eb * ea))
            if not good:
                failures.append(f"diagram N={N} ({a + 1},{b + 1})")
        p = QParam(N + 0.5, N)
        if not _tl_ok([e_matrix(i, N, p) for i in range(1, N)], -p.qsum):
            failures.append(f"spin N={N}")
        for n in range(N + 1):
            if not _tl_ok(sector_matrices(N, n, p).epsilon, -p.qsum):
                failures.append(f"cup basis N={N} n={n}")
            if len(enumerate_basis(N, n)) != comb(N, n):
                failures.append(f"dim N={N} n={n}")
    for N in range(1, 11):
        if len(enumerate_diagrams(N)) != comb(2 * N, N) // (N + 1):
            failures.append(f"Catalan N={N}")
    words = {str(v.word) for v in enumerate_basis(5, 2)}
    listed = {"1", "e2", "e1e2", "e3e2", "e1e3e2", "e2e1e3e2", "e4e3e2", "e1e4e3e2",
              "e2e1e4e3e2", "e3e2e1e4e3e2"}
    if words != listed:
        failures.append("N=5 n=2 words")
    return _record("6 structural oracles", not failures,
                   "all TL relations, Catalan counts, dimensions and listed words"
                   if not failures else "; ".join(failures[:5]))


def criterion_7() -> bool:
    t1_worst, herm_worst = 0.0, 0.0
    for N in range(2, 7):
        for r in (N + 0.5, N + 1.0, 2.0 * N):
            p = QParam(r, N)
            t1 = transfer_matrix(1.0, N, r)
            t1_worst = max(t1_worst, float(np.abs(t1 - p.qsum * np.eye(2 ** N)).max()))
            for res in transfer_checks(N, r, (0.3, 0.7, 1.5)):
                herm_worst = max(herm_worst, res.eta_hermiticity)
    ok = t1_worst < 1e-12 and herm_worst < 1e-8
    return _record("7 transfer matrix N<=6", ok,
                   f"max|t(1) - (q+1/q) I| = {t1_worst:.3g}, "
                   f"max eta-Hermiticity residual at x in (0.3, 0.7, 1.5) = {herm_worst:.3g}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
