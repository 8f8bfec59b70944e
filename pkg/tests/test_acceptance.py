"""Acceptance criteria, each run at its stated tolerance and time bound.

Every criterion records one PASS/FAIL line; pytest prints them in the
terminal summary.  ``python3 tests/test_acceptance.py`` runs the same
criteria without pytest.
"""

import random
import sys
import time
from functools import lru_cache
from math import factorial

import pytest

from cauchon import counting
from cauchon.diagrams import (
    all_r_vectors,
    build_w_r,
    build_w_r_gamma,
    enumerate_Gamma,
    enumerate_W,
    is_diagram,
    r_vectors,
    surviving_diagrams,
)
from cauchon.qminors import GapViolation, classify_all, census
from cauchon.qtorus import check_q_quantum
from cauchon.restoration import (
    PivotNotMonomial,
    delete_derivations,
    initial_matrix,
    restore,
    restored_zero_set,
)
from cauchon.verify import suite_fuzz

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # standalone run from another directory
    ACCEPTANCE_LINES = []

# frozen values; totals checked against a lonesum brute force in test_counting
TOTALS = {1: 2, 2: 14, 3: 230, 4: 6902, 5: 329462}
CENSUS = {
    2: {0: 1, 1: 9, 2: 4},
    3: {0: 1, 1: 49, 2: 144, 3: 36},
    4: {0: 1, 1: 225, 2: 2500, 3: 3600, 4: 576},
}
FUZZ_CASES = 10_000
FUZZ_SEED = 20240101


def record(number, title, ok, seconds, limit, detail=""):
    verdict = "PASS" if ok and seconds < limit else "FAIL"
    line = f"[{verdict}] criterion {number}: {title} ({seconds:.2f}s, limit {limit:g}s){' - ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return verdict == "PASS"


@lru_cache(maxsize=None)
def classified(n):
    """Classification records plus wall time; a pivot or gap failure is kept, not raised."""
    t0 = time.perf_counter()
    try:
        recs = tuple(classify_all(n))
        err = None
    except (PivotNotMonomial, GapViolation) as exc:
        recs, err = (), exc
    return recs, err, time.perf_counter() - t0


def criterion_1():
    t0 = time.perf_counter()
    bad = [n for n in range(1, 11) if len(set(counting.total_counts(n).values())) != 1]
    known = all(counting.cauchon_S(n) == TOTALS[n] for n in range(1, 5))
    dt = time.perf_counter() - t0
    return record(1, "total-count triple agreement, n in 1..10", not bad and known, dt, 1.0, f"disagree at {bad}" if bad else "")


def criterion_2():
    ok = True
    t0 = time.perf_counter()
    small = {n: sum(1 for _ in enumerate_W(n)) for n in range(1, 5)}
    t_small = time.perf_counter() - t0
    ok &= record(2, "|W| = B_n^(-n) for n in 1..4", all(small[n] == TOTALS[n] == counting.poly_bernoulli_nn(n) for n in small), t_small, 10.0, str(small))
    t0 = time.perf_counter()
    big = sum(1 for _ in enumerate_W(5))
    t_big = time.perf_counter() - t0
    ok &= record(2, "|W| = B_n^(-n) for n = 5", big == TOTALS[5] == counting.poly_bernoulli_nn(5), t_big, 120.0, str(big))
    return ok


def criterion_3():
    ok = True
    elapsed = 0.0
    got = {}
    for n in (2, 3):
        recs, err, dt = classified(n)
        elapsed += dt
        got[n] = census(recs, n) if not err else str(err)
    good = all(
        got[n] == CENSUS[n] == {t: counting.rank_count(n, t) for t in range(n + 1)}
        and got[n][1] == (2**n - 1) ** 2
        and got[n][n] == factorial(n) ** 2
        for n in (2, 3)
    )
    ok &= record(3, "rank census by quantum minors, n = 2, 3", good, elapsed, 60.0, str(got))
    recs, err, dt = classified(4)
    c4 = census(recs, 4) if not err else str(err)
    good = c4 == CENSUS[4] == {t: counting.rank_count(4, t) for t in range(5)} and c4[1] == 225 and c4[4] == 576
    ok &= record(3, "rank census by quantum minors, n = 4", good, dt, 1800.0, str(c4))
    return ok


def criterion_4():
    t0 = time.perf_counter()
    bad = []
    for n in (1, 2, 3):
        wrs = [build_w_r(n, r) for r in all_r_vectors(n)]
        for w in enumerate_W(n):
            M = restore(n, w)
            if check_q_quantum(M.pres, M):
                bad.append((str(w), "q-quantum"))
            if delete_derivations(M) != initial_matrix(n, w):
                bad.append((str(w), "round trip"))
            zeros = restored_zero_set(w)
            if not zeros.issubset(w):
                bad.append((str(w), "non-vanishing"))
            if any(wr.issubset(w) and not wr.issubset(zeros) for wr in wrs):
                bad.append((str(w), "vanishing on w_r"))
    dt = time.perf_counter() - t0
    return record(4, "structural identities for every w, n <= 3", not bad, dt, 60.0, f"failures {bad[:3]}" if bad else "")


def criterion_5():
    t0 = time.perf_counter()
    bad = []
    for n in (1, 2, 3):
        for r in all_r_vectors(n):
            fam = [build_w_r_gamma(n, r, g) for g in enumerate_Gamma(n, r)]
            wr = build_w_r(n, r)
            if len(set(fam)) != len(fam):
                bad.append((n, r, "duplicates"))
            for w in fam:
                zeros = restored_zero_set(w)
                if not is_diagram(n, w) or not wr.issubset(zeros):
                    bad.append((n, r, str(w)))
                if any((rk, k) in zeros for k, rk in enumerate(r, 1)):
                    bad.append((n, r, str(w), "pivot entry vanishes"))
            if surviving_diagrams(n, r) != set(fam):
                bad.append((n, r, "survival"))
    for n in range(1, 7):
        for t in range(n + 1):
            total = sum(len(list(enumerate_Gamma(n, r))) for r in r_vectors(n, t))
            if total != factorial(t) * counting.stirling2(n + 1, t + 1):
                bad.append((n, t, "gamma sum"))
    dt = time.perf_counter() - t0
    return record(5, "localized families and survival, sum |Gamma_r|", not bad, dt, 120.0, f"failures {bad[:3]}" if bad else "")


def criterion_6():
    t0 = time.perf_counter()
    checks = suite_fuzz(cases=FUZZ_CASES, seed=FUZZ_SEED)
    fuzz_ok = all(c.passed for c in checks)
    # every classification run above restored each diagram with the pivot
    # assertion armed and gap checking strict; no failure may have been kept
    errs = [str(classified(n)[1]) for n in (2, 3, 4) if classified(n)[1]]
    gaps = [str(r.diagram) for n in (2, 3, 4) for r in classified(n)[0] if not r.gap_free]
    # and a fresh seeded sample of n = 4 restorations
    rng = random.Random(FUZZ_SEED)
    ws = list(enumerate_W(4))
    pivots = []
    for w in rng.sample(ws, 200):
        try:
            restore(4, w)
        except PivotNotMonomial as exc:
            pivots.append(str(exc))
    dt = time.perf_counter() - t0
    ok = fuzz_ok and not errs and not gaps and not pivots
    detail = "; ".join(c.detail for c in checks)
    if not ok:
        detail += f"; errors {errs[:2]} gaps {gaps[:3]} pivots {pivots[:2]}"
    return record(6, f"property fuzzing ({FUZZ_CASES} cases, seed {FUZZ_SEED}), pivot and gap_free", ok, dt, 600.0, detail)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
