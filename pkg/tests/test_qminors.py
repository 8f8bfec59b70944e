import json
from math import factorial

import pytest

from cauchon.diagrams import Diagram, count_W, enumerate_W, parse_diagram
from cauchon.qcoeff import QLaurent
from cauchon.qminors import (
    ClassificationRecord,
    GapViolation,
    MinorIndex,
    all_minors_vanish,
    census,
    classify_all,
    classify_matrix,
    classify_rank,
    det_q,
    inversions,
    minor_indices,
    minor_table,
)
from cauchon.qtorus import presentation
from cauchon.restoration import restore

P2 = presentation(2)
P3 = presentation(3)


def test_minor_index_validation():
    assert MinorIndex((1, 3), (2, 3)).size == 2
    for rows, cols in [((2, 1), (1, 2)), ((1,), (1, 2)), ((), ())]:
        with pytest.raises(ValueError):
            MinorIndex(rows, cols)
    assert len(minor_indices(3, 2)) == 9
    assert minor_indices(3, 1)[0] == MinorIndex((1,), (1,))


def test_inversions():
    assert inversions((0, 1, 2)) == 0
    assert inversions((2, 1, 0)) == 3
    assert inversions((1, 0, 2)) == 1


def test_det_q_of_generators():
    d = det_q(P2, P2.generic_matrix(), MinorIndex((1, 2), (1, 2)))
    want = P2.monomial({(1, 1): 1, (2, 2): 1}) - P2.monomial({(1, 2): 1, (2, 1): 1}, QLaurent({1: 1}))
    assert d == want


def test_det_q_of_restored_empty_n2():
    # y11 y22 - q y12 y21 collapses to the product of the diagonal generators
    M = restore(2, Diagram.empty(2))
    assert det_q(P2, M, MinorIndex((1, 2), (1, 2))) == P2.monomial({(1, 1): 1, (2, 2): 1})


def test_one_by_one_minors_are_entries():
    M = restore(3, parse_diagram("011/011/001"))
    for i in range(1, 4):
        for a in range(1, 4):
            assert det_q(P3, M, MinorIndex((i,), (a,))) == M[i, a]


def test_generic_minor_term_count():
    for n, p in ((2, P2), (3, P3)):
        d = det_q(p, p.generic_matrix(), MinorIndex(tuple(range(1, n + 1)), tuple(range(1, n + 1))))
        assert len(d) == factorial(n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_minor_table_matches_det_q(n):
    p = presentation(n)
    for w in list(enumerate_W(n)) + [None]:
        M = p.generic_matrix() if w is None else restore(n, w)
        table = minor_table(M)
        assert len(table) == sum(len(minor_indices(n, m)) for m in range(1, n + 1))
        for idx, val in table.items():
            assert val == det_q(p, M, idx), (w, idx)


def test_all_minors_vanish_examples():
    M = restore(2, parse_diagram("10/00"))
    assert all_minors_vanish(P2, M, 2)
    assert not all_minors_vanish(P2, M, 1)
    assert all_minors_vanish(P2, restore(2, Diagram.full(2)), 1)
    with pytest.raises(ValueError):
        all_minors_vanish(P2, M, 3)


def test_classify_examples():
    full = classify_rank(P2, Diagram.full(2))
    assert (full.rank, full.witness, full.gap_free) == (0, None, True)
    empty = classify_rank(P2, Diagram.empty(2))
    assert empty.rank == 2 and empty.witness == MinorIndex((1, 2), (1, 2))
    corner = classify_rank(P2, parse_diagram("10/00"))
    assert corner.rank == 1 and corner.witness == MinorIndex((1,), (1,))


def test_gap_violation_is_raised(monkeypatch):
    # restoration never produces a gap, so feed classify a doctored table
    M = P2.generic_matrix()
    table = minor_table(M)
    doctored = {k: (P2.zero() if k.size == 1 else v) for k, v in table.items()}
    monkeypatch.setattr("cauchon.qminors.minor_table", lambda _M: doctored)
    with pytest.raises(GapViolation):
        classify_matrix(Diagram.empty(2), M)
    rec = classify_matrix(Diagram.empty(2), M, strict=False)
    assert rec.rank == 2 and not rec.gap_free


@pytest.mark.parametrize(
    "n, want",
    [(1, {0: 1, 1: 1}), (2, {0: 1, 1: 9, 2: 4}), (3, {0: 1, 1: 49, 2: 144, 3: 36})],
)
def test_census_small(n, want):
    records = classify_all(n)
    assert census(records, n) == want
    # every H-prime has exactly one rank
    assert sum(want.values()) == len(records) == count_W(n)
    assert all(r.gap_free for r in records)


def test_record_json():
    rec = classify_rank(P2, parse_diagram("10/00"))
    assert rec.dumps() == '{"diagram":"10/00","rank":1,"witness":{"rows":[1],"cols":[1]},"gap_free":true}'
    assert ClassificationRecord.from_json(json.loads(rec.dumps())) == rec
    full = classify_rank(P2, Diagram.full(2))
    assert full.to_json()["witness"] is None
    assert ClassificationRecord.from_json(full.to_json()) == full


def test_classify_all_reuses_known():
    first = classify_all(2)
    known = {r.diagram: r for r in first}
    seen = []
    again = classify_all(2, known=known, on_record=seen.append)
    assert again == first and seen == []


def test_classify_all_parallel_matches_serial():
    assert classify_all(3, jobs=2) == classify_all(3)
