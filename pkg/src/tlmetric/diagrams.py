"""Temperley-Lieb algebra as Kauffman diagrams.

A diagram on N strands is a crossingless perfect matching of 2N boundary
points. We index the top points 0..N-1 and the bottom points N..2N-1, both
left to right, and store the matching as a tuple ``pairing`` with
``pairing[k]`` the partner of point k.

Products are formed by concatenation from above: in ``compose(a, b)`` the
bottom boundary of ``a`` is glued to the top boundary of ``b``. Acting on a
vector placed below the diagram, the right factor therefore acts first, which
is the usual operator order of a written word e_{i1} e_{i2} ... e_{ik}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

DEFAULT_ENUMERATION_LIMIT = 12


def _circle_position(k: int, N: int) -> int:
    # top boundary left-to-right, then bottom boundary right-to-left
    return k if k < N else 3 * N - 1 - k


def is_crossingless(pairing: Sequence[int], N: int) -> bool:
    """True if ``pairing`` is a fixed-point-free, non-crossing involution on 2N points."""
    if len(pairing) != 2 * N:
        return False
    if not all(0 <= pairing[k] < 2 * N and pairing[k] != k and pairing[pairing[k]] == k
               for k in range(2 * N)):
        return False
    order = sorted(range(2 * N), key=lambda k: _circle_position(k, N))
    stack = []
    for k in order:
        partner = pairing[k]
        if _circle_position(partner, N) > _circle_position(k, N):
            stack.append(k)
        elif not stack or stack.pop() != partner:
            return False
    return True


@dataclass(frozen=True)
class PlanarDiagram:
    n_strands: int
    pairing: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pairing", tuple(int(k) for k in self.pairing))
        if self.n_strands < 1:
            raise ValueError("a diagram needs at least one strand")
        if not is_crossingless(self.pairing, self.n_strands):
            raise ValueError(f"not a crossingless perfect matching: {self.pairing}")

    @property
    def N(self) -> int:
        return self.n_strands

    def top_arcs(self) -> list[tuple[int, int]]:
        """Cups: pairs (a, b), a < b, of top points joined to each other."""
        N = self.N
        return [(k, self.pairing[k]) for k in range(N) if k < self.pairing[k] < N]

    def bottom_arcs(self) -> list[tuple[int, int]]:
        """Caps, as bottom positions (a, b) in 0..N-1 with a < b."""
        N = self.N
        return [(k - N, self.pairing[k] - N) for k in range(N, 2 * N) if k < self.pairing[k]]

    def through_lines(self) -> list[tuple[int, int]]:
        """Pairs (top position, bottom position)."""
        N = self.N
        return [(k, self.pairing[k] - N) for k in range(N) if self.pairing[k] >= N]

    def is_identity(self) -> bool:
        return all(self.pairing[k] == k + self.N for k in range(self.N))


@dataclass(frozen=True)
class WeightedDiagram:
    """A diagram together with the number of closed loops removed so far."""

    diagram: PlanarDiagram
    loops: int = 0

    def __post_init__(self):
        if self.loops < 0:
            raise ValueError("loop count must be nonnegative")

    @property
    def N(self) -> int:
        return self.diagram.N

    def __mul__(self, other: "WeightedDiagram") -> "WeightedDiagram":
        return compose(self, other)


@dataclass(frozen=True)
class Word:
    """A product e_{i1} e_{i2} ... e_{ik} of generators, stored in written order."""

    n_strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(i) for i in self.letters))
        for i in self.letters:
            if not 1 <= i <= self.n_strands - 1:
                raise ValueError(f"generator index {i} out of range 1..{self.n_strands - 1}")

    @classmethod
    def parse(cls, text: str, N: int) -> "Word":
        """Parse ``"e1e3e2"`` (whitespace and ``*`` ignored; ``"1"`` or ``""`` is the identity)."""
        compact = re.sub(r"[\s*]", "", text)
        if compact in ("", "1"):
            return cls(N, ())
        if not re.fullmatch(r"(e\d+)+", compact):
            raise ValueError(f"cannot parse word {text!r}; expected e.g. 'e1e3e2'")
        return cls(N, tuple(int(m) for m in re.findall(r"e(\d+)", compact)))

    def star(self) -> "Word":
        return Word(self.n_strands, self.letters[::-1])

    def __mul__(self, other: "Word") -> "Word":
        if other.n_strands != self.n_strands:
            raise ValueError("strand-count mismatch")
        return Word(self.n_strands, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(f"e{i}" for i in self.letters) or "1"


def identity_diagram(N: int) -> PlanarDiagram:
    return PlanarDiagram(N, tuple(k + N for k in range(N)) + tuple(range(N)))


@lru_cache(maxsize=None)
def generator_diagram(i: int, N: int) -> PlanarDiagram:
    """Diagram of e_i: cup on top points i, i+1 and cap on bottom points i, i+1 (1-based)."""
    if not 1 <= i <= N - 1:
        raise ValueError(f"generator index {i} out of range 1..{N - 1}")
    pairing = list(identity_diagram(N).pairing)
    a, b = i - 1, i
    pairing[a], pairing[b] = b, a
    pairing[N + a], pairing[N + b] = N + b, N + a
    return PlanarDiagram(N, tuple(pairing))


def _as_weighted(d) -> WeightedDiagram:
    return d if isinstance(d, WeightedDiagram) else WeightedDiagram(d, 0)


def compose(a, b) -> WeightedDiagram:
    """Stack ``a`` above ``b`` and remove closed loops, counting them."""
    a, b = _as_weighted(a), _as_weighted(b)
    N = a.N
    if b.N != N:
        raise ValueError(f"strand-count mismatch: {a.N} vs {b.N}")
    pa, pb = a.diagram.pairing, b.diagram.pairing
    result = [-1] * (2 * N)
    seen_middle = [False] * N

    for start in range(2 * N):
        if result[start] >= 0:
            continue
        in_upper = start < N
        k = start
        while True:
            if in_upper:
                k = pa[k]
                if k < N:
                    break
                k -= N  # middle point, continue in the lower diagram at its top
                seen_middle[k] = True
                in_upper = False
            else:
                k = pb[k]
                if k >= N:
                    break
                seen_middle[k] = True
                k += N  # middle point, continue in the upper diagram at its bottom
                in_upper = True
        result[start] = k
        result[k] = start

    loops = 0
    for m in range(N):
        if seen_middle[m]:
            continue
        loops += 1
        k = m
        while not seen_middle[k]:
            seen_middle[k] = True
            k = pb[k]  # stays in the middle: closed loops never reach the boundary
            seen_middle[k] = True
            k = pa[k + N] - N
    return WeightedDiagram(PlanarDiagram(N, tuple(result)), a.loops + b.loops + loops)


def star(d):
    """Reflect in the horizontal axis (the * involution). Keeps loop counts."""
    if isinstance(d, WeightedDiagram):
        return WeightedDiagram(star(d.diagram), d.loops)
    N = d.N
    flip = lambda k: (k + N) % (2 * N)
    return PlanarDiagram(N, tuple(flip(d.pairing[flip(k)]) for k in range(2 * N)))


def evaluate_word(w: Word) -> WeightedDiagram:
    out = WeightedDiagram(identity_diagram(w.n_strands), 0)
    for i in w.letters:
        out = compose(out, generator_diagram(i, w.n_strands))
    return out


def _matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for j in range(1, len(points), 2):
        for inside in _matchings(points[1:j]):
            for outside in _matchings(points[j + 1:]):
                yield [(first, points[j])] + inside + outside


def enumerate_diagrams(N: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[PlanarDiagram]:
    """All Catalan(N) diagrams on N strands."""
    if N > limit:
        raise ValueError(f"N={N} exceeds enumeration limit {limit}")
    if N < 1:
        raise ValueError("N must be positive")
    from_circle = lambda c: c if c < N else 3 * N - 1 - c
    out = []
    for matching in _matchings(list(range(2 * N))):
        pairing = [0] * (2 * N)
        for c1, c2 in matching:
            k1, k2 = from_circle(c1), from_circle(c2)
            pairing[k1], pairing[k2] = k2, k1
        out.append(PlanarDiagram(N, tuple(pairing)))
    return out


# ----------------------------------------------------------------------------
# ASCII rendering


def _arc_heights(arcs: Iterable[tuple[int, int]]) -> dict[tuple[int, int], int]:
    """Height 1 for innermost arcs, one more than the tallest nested arc otherwise."""
    arcs = sorted(arcs, key=lambda ab: ab[1] - ab[0])
    heights: dict[tuple[int, int], int] = {}
    for a, b in arcs:
        inner = [h for (c, d), h in heights.items() if a < c and d < b]
        heights[(a, b)] = 1 + max(inner, default=0)
    return heights


def _cup_rows(N: int, arcs: list[tuple[int, int]], straight: Iterable[int]) -> list[list[str]]:
    heights = _arc_heights(arcs)
    depth = max(heights.values(), default=0)
    rows = [[" "] * (2 * N - 1) for _ in range(depth)]
    for (a, b), h in heights.items():
        for t in range(h - 1):
            rows[t][2 * a] = rows[t][2 * b] = "|"
        rows[h - 1][2 * a] = "\\"
        rows[h - 1][2 * b] = "/"
        for c in range(2 * a + 1, 2 * b):
            rows[h - 1][c] = "_"
    for p in straight:
        for row in rows:
            row[2 * p] = "|"
    return rows


def _cap_rows(N: int, arcs: list[tuple[int, int]], straight: Iterable[int]) -> list[list[str]]:
    heights = _arc_heights(arcs)
    depth = max(heights.values(), default=0)
    rows = [[" "] * (2 * N - 1) for _ in range(depth + 1 if depth else 0)]
    # rows are built bottom-up and reversed at the end
    for (a, b), h in heights.items():
        for t in range(h - 1):
            rows[t][2 * a] = rows[t][2 * b] = "|"
        rows[h - 1][2 * a] = "/"
        rows[h - 1][2 * b] = "\\"
        for c in range(2 * a + 1, 2 * b):
            rows[h][c] = "_"
    for p in straight:
        for row in rows:
            row[2 * p] = "|"
    return rows[::-1]


def _through_rows(N: int, lines: list[tuple[int, int]]) -> list[list[str]]:
    cols = [2 * t for t, _ in lines]
    targets = [2 * b for _, b in lines]
    rows = []
    while True:
        row = [" "] * (2 * N - 1)
        moved = False
        for k, (c, target) in enumerate(zip(cols, targets)):
            if c < target:
                row[c] = "\\"
                cols[k] = c + 1
                moved = True
            elif c > target:
                row[c - 1] = "/"
                cols[k] = c - 1
                moved = True
            else:
                row[c] = "|"
        if not moved and rows:
            break
        rows.append(row)
        if not moved:
            break
    return rows


def render_diagram(d) -> str:
    """Multi-line ASCII picture: cups hang from the top row, caps rise from the bottom."""
    wd = _as_weighted(d)
    dia = wd.diagram
    N = dia.N
    lines = dia.through_lines()
    marker = " ".join("o" for _ in range(N))
    body = _cup_rows(N, dia.top_arcs(), [t for t, _ in lines])
    body += _through_rows(N, lines) if lines else [[" "] * (2 * N - 1)]
    body += _cap_rows(N, dia.bottom_arcs(), [b for _, b in lines])
    text = [marker] + ["".join(row).rstrip() for row in body] + [marker]
    if wd.loops:
        text.append(f"({wd.loops} closed loop{'s' if wd.loops != 1 else ''})")
    return "\n".join(text)
