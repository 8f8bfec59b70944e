"""Invariant suites behind ``cauchon verify``.

Each suite returns a list of :class:`Check` results; nothing raises except
genuine bugs (PivotNotMonomial, GapViolation), which are caught and reported
as failures.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import factorial
from typing import Callable

from . import counting
from .diagrams import (
    all_r_vectors,
    build_w_r,
    constructed_family,
    enumerate_W,
    is_diagram,
    surviving_diagrams,
)
from .qcoeff import QLaurent
from .qminors import classify_all, census
from .qtorus import (
    TorusElement,
    check_jbeta_quantum,
    check_q_quantum,
    presentation,
    torus_mul,
)
from .restoration import (
    delete_derivations,
    initial_matrix,
    restoration_trace,
    restore,
    restored_zero_set,
)


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 4),
        }


def _timed(suite: str, name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported, not swallowed: the check fails
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(suite, name, ok, detail, time.perf_counter() - t0)


def suite_counts(n: int) -> list[Check]:
    def triple():
        bad = [k for k in range(1, n + 1) if len(set(counting.total_counts(k).values())) != 1]
        return not bad, f"cauchon = poly-Bernoulli = sum of squares for n in 1..{n}" + (f"; fails at {bad}" if bad else "")

    def stirling():
        bad = [
            (a, b)
            for a in range(n + 3)
            for b in range(n + 3)
            if counting.stirling2(a, b) != counting.stirling2_inclusion_exclusion(a, b)
        ]
        return not bad, "recurrence matches inclusion-exclusion" + (f"; fails at {bad[:3]}" if bad else "")

    def transport():
        bad = [
            t
            for t in range(n + 1)
            if counting.gamma_sum(n, t) != factorial(t) * counting.stirling2(n + 1, t + 1)
            or counting.stirling_composition_sum(n, t) != counting.stirling2(n + 1, t + 1)
        ]
        return not bad, f"sum_r |Gamma_r| = t! S(n+1,t+1) for t in 0..{n}" + (f"; fails at t={bad}" if bad else "")

    return [
        _timed("counts", "total-triple", triple),
        _timed("counts", "stirling-cross-check", stirling),
        _timed("counts", "composition-transport", transport),
    ]


def suite_enumeration(n: int) -> list[Check]:
    def run():
        count = sum(1 for _ in enumerate_W(n))
        expected = counting.poly_bernoulli_nn(n)
        return count == expected, f"|W| = {count}, B_n^(-n) = {expected}"

    return [_timed("enumeration", "count", run)]


def suite_census(n: int, jobs: int = 1) -> list[Check]:
    def run():
        got = census(classify_all(n, jobs=jobs), n)
        want = {t: counting.rank_count(n, t) for t in range(n + 1)}
        return got == want, f"census {got} vs closed form {want}"

    return [_timed("census", "rank-census", run)]


def suite_roundtrip(n: int) -> list[Check]:
    def run():
        total = ok = 0
        for w in enumerate_W(n):
            total += 1
            ok += delete_derivations(restore(n, w)) == initial_matrix(n, w)
        return ok == total, f"{ok}/{total} round trips"

    return [_timed("roundtrip", "delete-restore", run)]


def suite_qquantum(n: int) -> list[Check]:
    p = presentation(n)

    def run():
        bad = [str(w) for w in enumerate_W(n) if check_q_quantum(p, restore(n, w))]
        return not bad, f"{len(bad)} restored matrices violate a relation" + (f": {bad[:3]}" if bad else "")

    def trace():
        bad = []
        for w in enumerate_W(n):
            for r, M in restoration_trace(n, w):
                if check_jbeta_quantum(p, M, r):
                    bad.append((str(w), r))
        return not bad, f"{len(bad)} intermediate matrices fail the (j,b) relations" + (f": {bad[:3]}" if bad else "")

    checks = [_timed("qquantum", "restored-q-quantum", run)]
    if n <= 3:
        checks.append(_timed("qquantum", "intermediate-jbeta", trace))
    return checks


def suite_vanishing(n: int) -> list[Check]:
    def nonvanishing():
        bad = [str(w) for w in enumerate_W(n) if not restored_zero_set(w).issubset(w)]
        return not bad, "(i,a) outside w implies y[i,a] != 0" + (f"; fails for {bad[:3]}" if bad else "")

    def vanishing():
        bad = []
        wrs = [build_w_r(n, r) for r in all_r_vectors(n)]
        for w in enumerate_W(n):
            zeros = restored_zero_set(w)
            for wr in wrs:
                if wr.issubset(w) and not wr.issubset(zeros):
                    bad.append((str(w), str(wr)))
        return not bad, "w contains w_r implies y vanishes on w_r" + (f"; fails for {bad[:3]}" if bad else "")

    return [_timed("vanishing", "non-vanishing", nonvanishing), _timed("vanishing", "vanishing-on-w_r", vanishing)]


def suite_families(n: int) -> list[Check]:
    def family():
        bad = []
        for r in all_r_vectors(n):
            fam = constructed_family(n, r)
            if len(set(fam)) != len(fam):
                bad.append((r, "duplicates"))
            wr = build_w_r(n, r)
            for w in fam:
                zeros = restored_zero_set(w)
                if not is_diagram(n, w) or not wr.issubset(zeros):
                    bad.append((r, str(w)))
                if any((rk, k) in zeros for k, rk in enumerate(r, 1)):
                    bad.append((r, str(w)))
            if len(fam) != counting.gamma_size(n, r):
                bad.append((r, "size"))
        return not bad, "w_(r,gamma) distinct, in W, zero on w_r, nonzero at (r_k,k)" + (f"; fails {bad[:3]}" if bad else "")

    def survival():
        bad = [r for r in all_r_vectors(n) if surviving_diagrams(n, r) != set(constructed_family(n, r))]
        return not bad, "surviving diagrams = constructed family for every r" + (f"; fails for {bad}" if bad else "")

    return [_timed("families", "family", family), _timed("families", "survival", survival)]


def _random_ql(rng: random.Random, max_terms: int = 8) -> QLaurent:
    return QLaurent({rng.randint(-16, 16): rng.randint(-5, 5) for _ in range(rng.randint(0, max_terms))})


def _random_element(rng: random.Random, n: int) -> TorusElement:
    p = presentation(n)
    terms = {}
    for _ in range(rng.randint(0, 4)):
        e = tuple(rng.randint(-2, 2) if rng.random() < 0.4 else 0 for _ in range(n * n))
        terms[e] = _random_ql(rng, 3)
    return TorusElement(p, terms)


def suite_fuzz(cases: int = 10_000, seed: int = 20240101) -> list[Check]:
    rng = random.Random(seed)

    def ring():
        for _ in range(cases):
            a, b, c = (_random_ql(rng) for _ in range(3))
            if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or a * b != b * a:
                return False, f"ring axiom fails at {a}, {b}, {c}"
        return True, f"{cases} random Laurent triples"

    def torus():
        for k in range(cases):
            n = 2 + k % 2
            p = presentation(n)
            a, b, c = (_random_element(rng, n) for _ in range(3))
            if torus_mul(p, torus_mul(p, a, b), c) != torus_mul(p, a, torus_mul(p, b, c)):
                return False, f"associativity fails at n={n}: {a}; {b}; {c}"
            if torus_mul(p, a, b + c) != torus_mul(p, a, b) + torus_mul(p, a, c):
                return False, f"distributivity fails at n={n}"
        return True, f"{cases} random torus triples"

    return [_timed("fuzz", "qcoeff-ring", ring), _timed("fuzz", "qtorus-ring", torus)]


SUITES = {
    "counts": suite_counts,
    "enumeration": suite_enumeration,
    "census": suite_census,
    "roundtrip": suite_roundtrip,
    "qquantum": suite_qquantum,
    "vanishing": suite_vanishing,
    "families": suite_families,
    "fuzz": lambda n: suite_fuzz(),
}

# largest n each suite accepts without --allow-large
SUITE_LIMITS = {
    "counts": 10,
    "enumeration": 5,
    "census": 3,
    "roundtrip": 3,
    "qquantum": 3,
    "vanishing": 3,
    "families": 3,
    "fuzz": 10,
}
LARGE_LIMITS = {"enumeration": 6, "census": 4, "roundtrip": 4, "qquantum": 4, "vanishing": 4, "families": 4}


def run_suites(names: list[str], n: int, jobs: int = 1) -> list[Check]:
    out: list[Check] = []
    for name in names:
        if name == "census":
            out += suite_census(n, jobs=jobs)
        else:
            out += SUITES[name](n)
    return out
