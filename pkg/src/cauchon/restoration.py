"""Deleting derivations and the restoration algorithm on n x n matrices.

``restore(n, w)`` starts from the matrix of torus generators with the cells of
``w`` set to zero and runs the restoration steps (1,2) < ... < (n,n) in the
standard order, producing the matrix M_w of images of the Y[i,a] modulo J_w.

Entry (j, b) is only rewritten by a step (j', b') with j < j', and every
earlier step has j' <= j, so the pivot at step (j, b) is still the initial
t[j, b]: zero or a bare generator.  This is checked on every step rather than
assumed; a failure raises :class:`PivotNotMonomial`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .diagrams import Diagram, require_diagram
from .qtorus import (
    NotInvertible,
    QuantumMatrix,
    TorusElement,
    presentation,
    torus_invert_monomial,
    torus_mul,
)

Position = tuple[int, int]


class PivotNotMonomial(ArithmeticError):
    def __init__(self, step: Position, pivot: TorusElement, reason: str = "not a unit monomial"):
        super().__init__(f"pivot at step {step} is {reason}: {pivot}")
        self.step = step
        self.pivot = pivot


@lru_cache(maxsize=None)
def steps(n: int) -> tuple[Position, ...]:
    """E_s in increasing standard order, ending with (n, n+1)."""
    cells = [(i, a) for i in range(1, n + 1) for a in range(1, n + 1) if (i, a) != (1, 1)]
    return tuple(cells) + ((n, n + 1),)


@lru_cache(maxsize=None)
def successors(n: int) -> dict[Position, Position]:
    s = steps(n)
    return dict(zip(s, s[1:]))


def successor(n: int, r: Position) -> Position:
    try:
        return successors(n)[r]
    except KeyError:
        raise ValueError(f"{r} has no successor in E_s for n={n}") from None


def initial_matrix(n: int, w: Diagram) -> QuantumMatrix:
    """The t-matrix: generator T[i,a], or zero when (i, a) is in w."""
    p = presentation(n)
    z = p.zero()
    return QuantumMatrix(
        p,
        tuple(
            tuple(z if (i, a) in w else p.generator(i, a) for a in range(1, n + 1))
            for i in range(1, n + 1)
        ),
    )


def _pivot_inverse(p, r: Position, pivot: TorusElement) -> TorusElement:
    try:
        return torus_invert_monomial(p, pivot)
    except NotInvertible:
        raise PivotNotMonomial(r, pivot) from None


def _step(M: QuantumMatrix, r: Position, sign: int) -> QuantumMatrix:
    """One restoration (sign=+1) or deleting (sign=-1) step at r."""
    j, b = r
    pivot = M[j, b]
    if pivot.is_zero():
        return M
    p = M.pres
    inv = _pivot_inverse(p, r, pivot)
    rows = [list(row) for row in M.entries]
    for i in range(1, j):
        xib = M[i, b]
        if xib.is_zero():
            continue
        left = torus_mul(p, xib, inv)
        for a in range(1, b):
            xja = M[j, a]
            if xja.is_zero():
                continue
            corr = torus_mul(p, left, xja)
            rows[i - 1][a - 1] = rows[i - 1][a - 1] + corr if sign > 0 else rows[i - 1][a - 1] - corr
    return QuantumMatrix(p, tuple(tuple(row) for row in rows))


def restore_from(T: QuantumMatrix) -> QuantumMatrix:
    """Restoration from an arbitrary t-matrix whose pivots are unit monomials."""
    M = T
    for r in steps(T.n)[:-1]:
        M = _step(M, r, +1)
    return M


def restoration_trace(n: int, w: Diagram) -> Iterator[tuple[Position, QuantumMatrix]]:
    """Yield (r, M^(r)) for every r in E_s, from (1,2) up to (n, n+1)."""
    require_diagram(w)
    if w.n != n:
        raise ValueError(f"diagram has size {w.n}, expected {n}")
    T = initial_matrix(n, w)
    M = T
    for r in steps(n)[:-1]:
        yield r, M
        j, b = r
        if M[j, b] != T[j, b]:
            raise PivotNotMonomial(r, M[j, b], "not the initial t-entry")
        M = _step(M, r, +1)
    yield (n, n + 1), M


@lru_cache(maxsize=None)
def _restore(w: Diagram) -> QuantumMatrix:
    M = None
    for _, M in restoration_trace(w.n, w):
        pass
    return M


def restore(n: int, w: Diagram) -> QuantumMatrix:
    """M_w: the images y[i,a] of the generators of O_q(M_n) modulo J_w."""
    if w.n != n:
        raise ValueError(f"diagram has size {w.n}, expected {n}")
    return _restore(w)


def delete_derivations(M: QuantumMatrix) -> QuantumMatrix:
    """Run the deleting steps from (n,n) down to (1,2); returns M^(1,2)."""
    for r in reversed(steps(M.n)[:-1]):
        M = _step(M, r, -1)
    return M


def zero_pattern(M: QuantumMatrix) -> tuple[tuple[bool, ...], ...]:
    return M.zero_pattern()


@lru_cache(maxsize=None)
def restored_zero_set(w: Diagram) -> Diagram:
    """Cells where the restored matrix of w vanishes, as a diagram-shaped set."""
    return Diagram.from_grid([[int(z) for z in row] for row in zero_pattern(restore(w.n, w))])
