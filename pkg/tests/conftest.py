"""Shared oracles.

These are deliberately naive and share no code paths with the package:
unions of truncated pieces are closed by brute force, torus products are
normal-ordered by adjacent swaps, and set partitions are listed explicitly.
"""

from itertools import product

import pytest

ACCEPTANCE_LINES: list[str] = []


def truncated_pieces(n):
    """All C_v and L_v as frozensets of cells."""
    pieces = set()
    for l, g in product(range(1, n + 1), repeat=2):
        pieces.add(frozenset((i, g) for i in range(1, l + 1)))
        pieces.add(frozenset((l, a) for a in range(1, g + 1)))
    return pieces


def unions_of_pieces(n):
    """Every union of truncated rows and columns (the empty union included)."""
    seen = {frozenset()}
    for piece in truncated_pieces(n):
        seen |= {s | piece for s in seen}
    return seen


def lam_oracle(u, v):
    """d with T_v T_u = q^d T_u T_v for u before v, straight from the relations
    yx = q^-1 xy (same row), zx = q^-1 xz (same column), zy = yz, and tx = xt."""
    if u[0] == v[0] or u[1] == v[1]:
        return -1
    return 0


def normal_order_word(word):
    """Normal-order a word of (position, +-1) letters by adjacent swaps.

    Returns (q_exponent, {position: exponent}).  Swapping adjacent letters
    g_v^s g_u^t (u before v) into g_u^t g_v^s costs q^(lam * s * t).
    """
    word = list(word)
    qexp = 0
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            (v, s), (u, t) = word[k], word[k + 1]
            if u < v:
                qexp += lam_oracle(u, v) * s * t
                word[k], word[k + 1] = word[k + 1], word[k]
                changed = True
    exps = {}
    for pos, s in word:
        exps[pos] = exps.get(pos, 0) + s
    return qexp, {p: e for p, e in exps.items() if e}


def set_partitions(n):
    """Restricted growth strings of length n, one per set partition."""
    def rec(prefix, m):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(m + 1):
            yield from rec(prefix + [b], max(m, b + 1))

    if n == 0:
        yield ()
        return
    yield from rec([0], 1)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES
