"""Cauchon diagrams: subsets of the n x n grid that are unions of truncated
rows {(l, 1..g)} and truncated columns {(1..l, g)}.

A diagram is stored as an integer whose bits, read from the most significant
end, are the cells in row-major order.  Sorting by that integer is the same as
sorting the row-major '0'/'1' strings, which is the canonical output order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

Position = tuple[int, int]

MAX_ENUMERATION_N = 6
MAX_SURVIVAL_N = 4


class SizeTooLarge(ValueError):
    pass


class GammaOutOfRange(ValueError):
    pass


class NotADiagram(ValueError):
    """Raised for grids that are not unions of truncated rows and columns."""

    def __init__(self, message: str, cell: Position | None = None):
        super().__init__(message)
        self.cell = cell


@dataclass(frozen=True, order=True)
class Diagram:
    n: int
    code: int

    def _bit(self, i: int, a: int) -> int:
        return 1 << (self.n * self.n - 1 - ((i - 1) * self.n + (a - 1)))

    def __contains__(self, pos: Position) -> bool:
        i, a = pos
        if not (1 <= i <= self.n and 1 <= a <= self.n):
            return False
        return bool(self.code & self._bit(i, a))

    @property
    def cells(self) -> frozenset[Position]:
        n = self.n
        return frozenset((i, a) for i in range(1, n + 1) for a in range(1, n + 1) if (i, a) in self)

    def grid(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        return tuple(tuple(int((i, a) in self) for a in range(1, n + 1)) for i in range(1, n + 1))

    def __len__(self) -> int:
        return bin(self.code).count("1")

    def issubset(self, other: "Diagram") -> bool:
        return self.n == other.n and self.code & ~other.code == 0

    def union(self, other: "Diagram") -> "Diagram":
        if self.n != other.n:
            raise ValueError("diagrams of different sizes")
        return Diagram(self.n, self.code | other.code)

    def __str__(self) -> str:
        return to_string(self)

    # constructors

    @classmethod
    def from_cells(cls, n: int, cells: Iterable[Position]) -> "Diagram":
        code = 0
        for i, a in cells:
            if not (1 <= i <= n and 1 <= a <= n):
                raise ValueError(f"cell {(i, a)} outside the {n}x{n} grid")
            code |= 1 << (n * n - 1 - ((i - 1) * n + (a - 1)))
        return cls(n, code)

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[int]]) -> "Diagram":
        n = len(grid)
        if any(len(row) != n for row in grid):
            raise ValueError("grid must be square")
        code = 0
        for row in grid:
            for x in row:
                if x not in (0, 1, True, False):
                    raise ValueError(f"grid entries must be 0/1, got {x!r}")
                code = (code << 1) | int(x)
        return cls(n, code)

    @classmethod
    def empty(cls, n: int) -> "Diagram":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "Diagram":
        return cls(n, (1 << (n * n)) - 1)


# -- text / json ---------------------------------------------------------------


def to_string(w: Diagram) -> str:
    """``"011/011/001"``: rows joined by '/', '1' marks a cell of w."""
    return "/".join("".join(str(x) for x in row) for row in w.grid())


def parse_diagram(text: str, n: int | None = None) -> Diagram:
    """Parse the rows/slash form; does not check membership in W."""
    rows = text.strip().split("/")
    if any(set(r) - {"0", "1"} for r in rows) or not all(rows):
        raise ValueError(f"bad diagram string {text!r}: only '0', '1' and '/' allowed")
    w = Diagram.from_grid([[int(c) for c in r] for r in rows])
    if n is not None and w.n != n:
        raise ValueError(f"diagram {text!r} is {w.n}x{w.n}, expected {n}x{n}")
    return w


def to_json(w: Diagram) -> list[list[int]]:
    return [list(row) for row in w.grid()]


def from_json(grid: Sequence[Sequence[int]]) -> Diagram:
    return Diagram.from_grid(grid)


# -- membership ------------------------------------------------------------------


def _as_grid(n: int, cells) -> list[list[int]]:
    if isinstance(cells, Diagram):
        if cells.n != n:
            raise ValueError("size mismatch")
        return [list(r) for r in cells.grid()]
    grid = [[int(bool(x)) for x in row] for row in cells]
    if len(grid) != n or any(len(r) != n for r in grid):
        raise ValueError(f"expected a {n}x{n} grid")
    return grid


def uncoverable_cell(n: int, cells) -> Position | None:
    """First cell of ``cells`` (row-major) that has a white cell both to its
    left and above it, or None when every cell is coverable."""
    g = _as_grid(n, cells)
    for i in range(n):
        for a in range(n):
            if g[i][a]:
                left = all(g[i][b] for b in range(a))
                up = all(g[k][a] for k in range(i))
                if not (left or up):
                    return (i + 1, a + 1)
    return None


def is_diagram(n: int, cells) -> bool:
    # a piece C_(l,a) or L_(l,a) inside w through a cell contains the whole
    # prefix up to that cell, so coverability is equivalent to membership
    return uncoverable_cell(n, cells) is None


def require_diagram(w: Diagram) -> Diagram:
    bad = uncoverable_cell(w.n, w)
    if bad is not None:
        raise NotADiagram(
            f"{to_string(w)} is not a union of truncated rows and columns: "
            f"cell {bad} has a white cell to its left and above it",
            bad,
        )
    return w


# -- enumeration ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _row_choices(n: int, colfull: int) -> tuple[tuple[int, int], ...]:
    """Valid next rows given the mask of columns that are black so far.

    Returns ``(row_mask, new_colfull)`` pairs in increasing row_mask order;
    column a (1-based) is bit n - a.
    """
    out = []
    for b in range(1 << n):
        ok = True
        prefix = True
        for a in range(n):
            bit = 1 << (n - 1 - a)
            if b & bit:
                if not (prefix or colfull & bit):
                    ok = False
                    break
            else:
                prefix = False
        if ok:
            out.append((b, colfull & b))
    return tuple(out)


def enumerate_W(n: int, max_n: int = MAX_ENUMERATION_N) -> Iterator[Diagram]:
    """Every Cauchon diagram of size n, once each, in sorted bit-string order."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_n:
        raise SizeTooLarge(f"enumeration is bounded at n={max_n}, got n={n}")
    full = (1 << n) - 1

    def rec(depth: int, colfull: int, code: int):
        if depth == n:
            yield Diagram(n, code)
            return
        for b, nxt in _row_choices(n, colfull):
            yield from rec(depth + 1, nxt, (code << n) | b)

    yield from rec(0, full, 0)


def count_W(n: int) -> int:
    """|W| by dynamic programming over the column-full mask (no listing)."""
    states = {(1 << n) - 1: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for c, k in states.items():
            for _, c2 in _row_choices(n, c):
                nxt[c2] = nxt.get(c2, 0) + k
        states = nxt
    return sum(states.values())


# -- r-vectors, w_r, Gamma_r ---------------------------------------------------------


def check_r(n: int, r: Sequence[int]) -> tuple[int, ...]:
    r = tuple(r)
    if any(not (1 <= x <= n) for x in r) or any(x >= y for x, y in zip(r, r[1:])):
        raise ValueError(f"r={r} must be strictly increasing in [1, {n}]")
    return r


def r_vectors(n: int, t: int) -> Iterator[tuple[int, ...]]:
    """R_t, with R_0 taken as the single empty sequence."""
    if not 0 <= t <= n:
        raise ValueError(f"t must lie in [0, {n}]")
    return combinations(range(1, n + 1), t)


def all_r_vectors(n: int) -> Iterator[tuple[int, ...]]:
    for t in range(n + 1):
        yield from r_vectors(n, t)


def build_w_r(n: int, r: Sequence[int]) -> Diagram:
    r = check_r(n, r)
    t = len(r)
    cells = [(i, a) for a in range(1, t + 1) for i in range(1, r[a - 1])]
    cells += [(i, a) for i in range(1, n + 1) for a in range(t + 1, n + 1)]
    return Diagram.from_cells(n, cells)


def column_convexity_holds(w: Diagram) -> bool:
    n = w.n
    return all((i, b) in w for (i, a) in w.cells for b in range(a, n + 1))


def gamma_bounds(n: int, r: Sequence[int]) -> tuple[int, ...]:
    """Upper bound of gamma_k for k = 1..n: l when r_l < k <= r_{l+1}."""
    r = check_r(n, r)
    ext = (0,) + r + (n,)
    bounds = [0] * n
    for l in range(len(r) + 1):
        for k in range(ext[l] + 1, ext[l + 1] + 1):
            bounds[k - 1] = l
    return tuple(bounds)


def enumerate_Gamma(n: int, r: Sequence[int]) -> Iterator[tuple[int, ...]]:
    bounds = gamma_bounds(n, r)
    # product varies the last coordinate fastest; reverse for gamma_1 fastest
    for g in product(*(range(b + 1) for b in reversed(bounds))):
        yield tuple(reversed(g))


def in_Gamma(n: int, r: Sequence[int], gamma: Sequence[int]) -> bool:
    bounds = gamma_bounds(n, r)
    return len(gamma) == n and all(0 <= g <= b for g, b in zip(gamma, bounds))


def build_w_r_gamma(n: int, r: Sequence[int], gamma: Sequence[int]) -> Diagram:
    gamma = tuple(gamma)
    if not in_Gamma(n, r, gamma):
        raise GammaOutOfRange(f"gamma={gamma} is outside Gamma_r for r={tuple(r)}, n={n}")
    rows = Diagram.from_cells(n, [(k, a) for k in range(1, n + 1) for a in range(1, gamma[k - 1] + 1)])
    return build_w_r(n, r).union(rows)


def constructed_family(n: int, r: Sequence[int]) -> list[Diagram]:
    return [build_w_r_gamma(n, r, g) for g in enumerate_Gamma(n, r)]


def surviving_diagrams(n: int, r: Sequence[int]) -> set[Diagram]:
    """Diagrams whose restored matrix vanishes on w_r but not at any (r_k, k)."""
    if n > MAX_SURVIVAL_N:
        raise SizeTooLarge(f"survival scan is bounded at n={MAX_SURVIVAL_N}, got n={n}")
    from .restoration import restored_zero_set

    r = check_r(n, r)
    wr = build_w_r(n, r)
    keep = {(r[k - 1], k) for k in range(1, len(r) + 1)}
    out = set()
    for w in enumerate_W(n):
        zeros = restored_zero_set(w)
        if wr.issubset(zeros) and not any(pos in zeros for pos in keep):
            out.add(w)
    return out
