import random

import pytest

from cauchon.diagrams import Diagram, NotADiagram, enumerate_W, parse_diagram
from cauchon.qcoeff import Q
from cauchon.qtorus import QuantumMatrix, check_jbeta_quantum, presentation
from cauchon.restoration import (
    PivotNotMonomial,
    delete_derivations,
    initial_matrix,
    restoration_trace,
    restore,
    restore_from,
    restored_zero_set,
    steps,
    successor,
    zero_pattern,
)

P2 = presentation(2)


def T(i, a, k=1):
    return P2.generator(i, a, k)


def test_steps_order():
    assert steps(2) == ((1, 2), (2, 1), (2, 2), (2, 3))
    assert steps(3)[0] == (1, 2) and steps(3)[-1] == (3, 4)
    assert len(steps(4)) == 16
    assert successor(3, (1, 3)) == (2, 1)
    assert successor(3, (3, 3)) == (3, 4)
    with pytest.raises(ValueError):
        successor(3, (3, 4))
    with pytest.raises(ValueError):
        successor(3, (1, 1))


def test_restore_empty_n2():
    M = restore(2, Diagram.empty(2))
    y11 = T(1, 1) + P2.monomial({(1, 2): 1, (2, 1): 1, (2, 2): -1}, Q)
    assert M[1, 1] == y11
    assert (M[1, 2], M[2, 1], M[2, 2]) == (T(1, 2), T(2, 1), T(2, 2))


def test_restore_corner_n2():
    M = restore(2, parse_diagram("10/00"))
    assert M[1, 1] == P2.monomial({(1, 2): 1, (2, 1): 1, (2, 2): -1}, Q)
    assert M[2, 2] == T(2, 2)


def test_restore_full_and_column():
    assert all(e.is_zero() for row in restore(2, Diagram.full(2)).entries for e in row)
    M = restore(2, parse_diagram("01/00"))
    assert M == initial_matrix(2, parse_diagram("01/00"))


def test_restore_rejects_non_diagram():
    with pytest.raises(NotADiagram):
        restore(2, parse_diagram("00/01"))
    with pytest.raises(ValueError):
        restore(3, Diagram.empty(2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_roundtrip_all(n):
    for w in enumerate_W(n):
        assert delete_derivations(restore(n, w)) == initial_matrix(n, w), str(w)


def test_roundtrip_random_n4():
    ws = list(enumerate_W(4))
    rng = random.Random(11)
    for w in rng.sample(ws, 500):
        assert delete_derivations(restore(4, w)) == initial_matrix(4, w)


def test_two_term_pivot_is_rejected():
    M = P2.generic_matrix()
    rows = [list(r) for r in M.entries]
    rows[0][1] = T(1, 2) + T(1, 1)
    with pytest.raises(PivotNotMonomial) as err:
        restore_from(QuantumMatrix(P2, tuple(map(tuple, rows))))
    assert err.value.step == (1, 2)


def test_trace_pivots_and_jbeta_n2():
    for w in enumerate_W(2):
        trace = list(restoration_trace(2, w))
        assert [r for r, _ in trace] == list(steps(2))
        for r, M in trace:
            assert check_jbeta_quantum(P2, M, r) == []
        assert trace[-1][1] == restore(2, w)


@pytest.mark.parametrize("n", [2, 3])
def test_zero_pattern_inside_w(n):
    for w in enumerate_W(n):
        zeros = restored_zero_set(w)
        assert zeros.issubset(w)
        grid = zero_pattern(restore(n, w))
        assert Diagram.from_grid([[int(z) for z in row] for row in grid]) == zeros
