"""Tableau-indexed basis of each spin sector W_n and its graphical action.

Each subdiagram of the n x (N-n) rectangle is filled with consecutive integers
starting from n in the upper left corner (entries grow by one to the right and
shrink by one downwards). Reading the filling row by row gives the order in
which generators are applied to Omega_n = (-)^n (+)^(N-n); the written word is
that sequence reversed.

The basis vector a_i Omega_n is encoded as a cup pattern: a tuple of length N
whose entries are either the partner position of a cup end, or the label
``"-"``/``"+"`` of an unpaired (defect) point. Cups and defects are exact
tensor factors in the spin basis, cup = v+ (x) v- - q v- (x) v+, and both
zigzag moves are the identity, so the TL generators and E, F act on patterns
with real coefficients only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional, Union

import numpy as np

from .diagrams import Word, evaluate_word
from .scalars import QParam, loop_weight, quantum_integer

Point = Union[int, str]
Pattern = tuple  # tuple[Point, ...]


class BasisLookupError(LookupError):
    """A graphical rule produced a pattern outside the sector basis."""


# ----------------------------------------------------------------------------
# cup patterns


def omega_pattern(N: int, n: int) -> Pattern:
    return ("-",) * n + ("+",) * (N - n)


def pattern_cups(pattern: Pattern) -> list[tuple[int, int]]:
    return [(k, p) for k, p in enumerate(pattern) if isinstance(p, int) and k < p]


def pattern_defects(pattern: Pattern) -> list[tuple[int, str]]:
    return [(k, p) for k, p in enumerate(pattern) if isinstance(p, str)]


def pattern_sector(pattern: Pattern) -> int:
    """Number of down spins: one per cup plus the '-' defects."""
    return len(pattern_cups(pattern)) + sum(1 for _, s in pattern_defects(pattern) if s == "-")


def check_pattern(pattern: Pattern) -> None:
    """Raise ValueError unless ``pattern`` is planar with sorted defect labels."""
    N = len(pattern)
    open_cups = []
    seen_plus = False
    for k, p in enumerate(pattern):
        if isinstance(p, str):
            if p not in "+-" or len(p) != 1:
                raise ValueError(f"bad label {p!r} at {k}")
            if open_cups:
                raise ValueError(f"defect at {k} lies under a cup")
            if p == "+":
                seen_plus = True
            elif seen_plus:
                raise ValueError("a '-' defect lies right of a '+' defect")
        else:
            if not 0 <= p < N or p == k or pattern[p] != k:
                raise ValueError(f"inconsistent cup at {k}")
            if p > k:
                open_cups.append(p)
            elif not open_cups or open_cups.pop() != k:
                raise ValueError(f"crossing cups at {k}")


def cup_string(pattern: Pattern) -> str:
    """Compact form: innermost adjacent cups as '∪', outer cup ends as '(' ')'."""
    out = []
    for k, p in enumerate(pattern):
        if isinstance(p, str):
            out.append(p)
        elif p == k + 1:
            out.append("∪")
        elif p == k - 1:
            continue
        else:
            out.append("(" if p > k else ")")
    return "".join(out)


def render_cup_pattern(pattern: Pattern) -> str:
    from .diagrams import _cup_rows

    N = len(pattern)
    defects = pattern_defects(pattern)
    rows = _cup_rows(N, pattern_cups(pattern), [k for k, _ in defects])
    labels = [" "] * (2 * N - 1)
    for k, s in defects:
        labels[2 * k] = s
    lines = [" ".join("o" for _ in range(N))] + ["".join(r).rstrip() for r in rows]
    if defects:
        lines.append("".join(labels).rstrip())
    return "\n".join(lines)


def act_generator(i: int, pattern: Pattern) -> Optional[tuple[int, Pattern]]:
    """Apply e_i graphically. Returns ``(loops, new_pattern)`` or None when e_i kills it.

    The coefficient of the image is loop_weight**loops (loops is 0 or 1).
    """
    N = len(pattern)
    if not 1 <= i <= N - 1:
        raise ValueError(f"generator index {i} out of range 1..{N - 1}")
    a, b = i - 1, i
    pa, pb = pattern[a], pattern[b]
    if pa == b:
        return 1, pattern
    new = list(pattern)
    if isinstance(pa, str) and isinstance(pb, str):
        # cap on two defects: v- v+ -> 1, equal labels -> 0 (+ before - cannot occur)
        if (pa, pb) != ("-", "+"):
            return None
    elif isinstance(pa, str):
        new[pb] = pa
    elif isinstance(pb, str):
        new[pa] = pb
    else:
        new[pa], new[pb] = pb, pa
    new[a], new[b] = b, a
    return 0, tuple(new)


def act_E(pattern: Pattern) -> list[tuple[int, Pattern]]:
    """E on a pattern as ``[(m, image)]`` with coefficient [m]_q each.

    E_m joins the m-th and (m+1)-th '-' defect (counted from the left, cups
    skipped) by a cup; the last term flips the rightmost '-' defect to '+'.
    """
    minus = [k for k, s in pattern_defects(pattern) if s == "-"]
    out = []
    for m in range(1, len(minus)):
        new = list(pattern)
        a, b = minus[m - 1], minus[m]
        new[a], new[b] = b, a
        out.append((m, tuple(new)))
    if minus:
        new = list(pattern)
        new[minus[-1]] = "+"
        out.append((len(minus), tuple(new)))
    return out


def act_F(pattern: Pattern) -> list[tuple[int, Pattern]]:
    """F on a pattern: mirror of :func:`act_E`, '+' defects counted from the right."""
    plus = [k for k, s in pattern_defects(pattern) if s == "+"][::-1]
    out = []
    for m in range(1, len(plus)):
        new = list(pattern)
        b, a = plus[m - 1], plus[m]
        new[a], new[b] = b, a
        out.append((m, tuple(new)))
    if plus:
        new = list(pattern)
        new[plus[-1]] = "-"
        out.append((len(plus), tuple(new)))
    return out


# ----------------------------------------------------------------------------
# tableaux


@dataclass(frozen=True)
class Tableau:
    """Young subdiagram ``shape`` of the n x (N-n) rectangle, with its standard filling."""

    N: int
    n: int
    shape: tuple[int, ...] = ()

    def __post_init__(self):
        shape = tuple(int(x) for x in self.shape if x)
        object.__setattr__(self, "shape", shape)
        if not 0 <= self.n <= self.N:
            raise ValueError(f"sector n={self.n} outside 0..{self.N}")
        if len(shape) > self.n or any(x > self.N - self.n for x in shape):
            raise ValueError(f"shape {shape} does not fit in {self.n}x{self.N - self.n}")
        if any(x < y for x, y in zip(shape, shape[1:])):
            raise ValueError(f"shape {shape} is not a partition")

    def filling(self) -> list[list[int]]:
        return [[self.n - row + col for col in range(length)]
                for row, length in enumerate(self.shape)]

    def application_order(self) -> list[int]:
        """Entries read left to right, top to bottom: the order the generators act."""
        return [x for row in self.filling() for x in row]

    def to_word(self) -> Word:
        return Word(self.N, tuple(reversed(self.application_order())))

    @property
    def size(self) -> int:
        return sum(self.shape)


def tableau_to_word(t: Tableau) -> Word:
    return t.to_word()


def render_tableau(t: Tableau) -> str:
    if not t.shape:
        return "∅"
    width = len(str(t.N))
    lines = []
    for row in t.filling():
        lines.append("".join(f"[{x:>{width}}]" for x in row))
    return "\n".join(lines)


def _shapes(n: int, m: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix: tuple[int, ...], cap: int):
        if len(prefix) == n:
            out.append(tuple(x for x in prefix if x))
            return
        for x in range(cap, -1, -1):
            rec(prefix + (x,), x)

    rec((), m)
    return sorted(set(out), key=lambda s: (sum(s), s))


@dataclass(frozen=True)
class CupBasisVector:
    tableau: Tableau
    word: Word
    cup_pattern: Pattern

    @property
    def index_label(self) -> str:
        return ",".join(map(str, self.tableau.shape)) or "∅"


@lru_cache(maxsize=None)
def enumerate_basis(N: int, n: int) -> tuple[CupBasisVector, ...]:
    """Basis of W_n ordered by box count, then lexicographically; Omega_n first."""
    if not 0 <= n <= N:
        raise ValueError(f"sector n={n} outside 0..{N}")
    out = []
    for shape in _shapes(n, N - n):
        t = Tableau(N, n, shape)
        pattern = omega_pattern(N, n)
        for i in t.application_order():
            image = act_generator(i, pattern)
            if image is None or image[0] != 0:
                raise BasisLookupError(f"tableau {shape} does not give a basis vector")
            pattern = image[1]
        check_pattern(pattern)
        out.append(CupBasisVector(t, t.to_word(), pattern))
    if len(out) != comb(N, n):
        raise BasisLookupError(f"expected {comb(N, n)} basis vectors, got {len(out)}")
    if len({v.cup_pattern for v in out}) != len(out):
        raise BasisLookupError("two tableaux share a cup pattern")
    return tuple(out)


@lru_cache(maxsize=None)
def basis_index(N: int, n: int) -> dict:
    return {v.cup_pattern: k for k, v in enumerate(enumerate_basis(N, n))}


def lookup(pattern: Pattern, N: int, n: int) -> int:
    try:
        return basis_index(N, n)[pattern]
    except KeyError:
        raise BasisLookupError(f"pattern {cup_string(pattern)} not in W_{n} basis") from None


def word_action_on_omega(w: Word, n: int) -> Optional[tuple[int, Pattern]]:
    """a Omega_n via the full Kauffman diagram of ``w``.

    The bottom boundary is labelled by Omega_n; caps on (-, +) evaluate to 1
    and caps on equal labels to 0. Returns ``(loops, pattern)`` (coefficient
    loop_weight**loops) or None for the zero vector.
    """
    wd = evaluate_word(w)
    dia = wd.diagram
    N = dia.N
    labels = omega_pattern(N, n)
    for a, b in dia.bottom_arcs():
        if labels[a] == labels[b]:
            return None
    pattern: list[Point] = [None] * N
    for a, b in dia.top_arcs():
        pattern[a], pattern[b] = b, a
    for t, b in dia.through_lines():
        pattern[t] = labels[b]
    return wd.loops, tuple(pattern)


def word_to_cup_diagram(v: CupBasisVector) -> Pattern:
    """Cup pattern of a basis vector recomputed from its word's Kauffman diagram."""
    image = word_action_on_omega(v.word, v.tableau.n)
    if image is None or image[0] != 0:
        raise BasisLookupError(f"word {v.word} does not map Omega to a basis vector")
    return image[1]


# ----------------------------------------------------------------------------
# action matrices


@lru_cache(maxsize=None)
def _generator_images(i: int, N: int, n: int) -> tuple:
    basis = enumerate_basis(N, n)
    images = []
    for j, v in enumerate(basis):
        image = act_generator(i, v.cup_pattern)
        if image is None:
            images.append(None)
        else:
            loops, pattern = image
            images.append((lookup(pattern, N, n), loops))
    return tuple(images)


def generator_action(i: int, N: int, n: int, p: QParam) -> np.ndarray:
    """Real matrix eps_i with e_i t_j = sum_k t_k (eps_i)_{kj}."""
    d = comb(N, n)
    mat = np.zeros((d, d))
    delta = loop_weight(p)
    for j, image in enumerate(_generator_images(i, N, n)):
        if image is not None:
            k, loops = image
            mat[k, j] = delta ** loops
    return mat


def qgroup_action(N: int, n: int, p: QParam) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of E: W_n -> W_{n-1} and F: W_n -> W_{n+1} in the cup bases."""
    basis = enumerate_basis(N, n)
    d = len(basis)
    E = np.zeros((comb(N, n - 1) if n >= 1 else 0, d))
    F = np.zeros((comb(N, n + 1) if n < N else 0, d))
    for j, v in enumerate(basis):
        for m, pattern in act_E(v.cup_pattern):
            E[lookup(pattern, N, n - 1), j] += quantum_integer(m, p)
        for m, pattern in act_F(v.cup_pattern):
            F[lookup(pattern, N, n + 1), j] += quantum_integer(m, p)
    return E, F


def hamiltonian_t_basis(N: int, n: int, p: QParam) -> np.ndarray:
    d = comb(N, n)
    H = np.zeros((d, d))
    for i in range(1, N):
        H += generator_action(i, N, n, p)
    return H


@dataclass(frozen=True)
class SectorMatrices:
    n: int
    epsilon: tuple[np.ndarray, ...]
    Hmat: np.ndarray
    Emat: np.ndarray
    Fmat: np.ndarray


def sector_matrices(N: int, n: int, p: QParam) -> SectorMatrices:
    eps = tuple(generator_action(i, N, n, p) for i in range(1, N))
    E, F = qgroup_action(N, n, p)
    H = sum(eps, np.zeros((comb(N, n),) * 2))
    return SectorMatrices(n, eps, H, E, F)


def wmax_sector(N: int) -> int:
    return N // 2


def wmax_indices(N: int) -> list[int]:
    """Positions in the W_{N//2} basis of the patterns with N//2 cups."""
    n = wmax_sector(N)
    return [k for k, v in enumerate(enumerate_basis(N, n)) if len(pattern_cups(v.cup_pattern)) == n]
