"""Quantum minors of restored matrices and the rank of each H-prime."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .diagrams import Diagram, SizeTooLarge, enumerate_W, parse_diagram, require_diagram, to_string
from .qcoeff import QLaurent
from .qtorus import QuantumMatrix, TorusElement, TorusPresentation, torus_mul, torus_sum
from .restoration import restore

MAX_CLASSIFY_N = 4


class GapViolation(RuntimeError):
    """Some minor size below the rank has every minor vanishing."""


@dataclass(frozen=True, order=True)
class MinorIndex:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        for seq in (self.rows, self.cols):
            if any(x >= y for x, y in zip(seq, seq[1:])):
                raise ValueError(f"minor indices must be strictly increasing: {seq}")
        if len(self.rows) != len(self.cols) or not self.rows:
            raise ValueError("a minor needs equally many (>= 1) rows and columns")

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


def minor_indices(n: int, m: int) -> list[MinorIndex]:
    """All m x m minors in lexicographic (rows, cols) order."""
    subsets = list(combinations(range(1, n + 1), m))
    return [MinorIndex(r, c) for r in subsets for c in subsets]


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


def _neg_q_power(k: int) -> QLaurent:
    return QLaurent.monomial(-1 if k % 2 else 1, k)


def det_q(p: TorusPresentation, M: QuantumMatrix, idx: MinorIndex) -> TorusElement:
    """sum over sigma of (-q)^l(sigma) x[r1, c_sigma(1)] ... x[rm, c_sigma(m)]."""
    if M.pres != p:
        raise ValueError("matrix over a different presentation")
    if max(idx.rows) > M.n or max(idx.cols) > M.n:
        raise IndexError(f"{idx} does not fit a {M.n}x{M.n} matrix")
    terms = []
    for sigma in permutations(range(idx.size)):
        prod = p.one()
        for k, s in enumerate(sigma):
            prod = torus_mul(p, prod, M[idx.rows[k], idx.cols[s]])
            if prod.is_zero():
                break
        if prod:
            terms.append(prod.scale(_neg_q_power(inversions(sigma))))
    return torus_sum(p, terms)


def minor_table(M: QuantumMatrix, max_size: int | None = None) -> dict[MinorIndex, TorusElement]:
    """Every quantum minor up to ``max_size``, sharing row-prefix partial sums.

    For a row prefix r1 < ... < rk the partial sum over a column set S is the
    permutation sum restricted to rows r1..rk mapped onto S; appending a row
    with column c adds (-q)^#{s in S: s > c} inversions.  This regroups the
    same sum term by term, so it agrees exactly with :func:`det_q`.
    """
    n = M.n
    p = M.pres
    max_size = n if max_size is None else max_size
    table: dict[MinorIndex, TorusElement] = {}
    signs = [_neg_q_power(k) for k in range(n + 1)]
    one = p.one()

    def grow(rows: tuple[int, ...], partial: dict[tuple[int, ...], TorusElement]):
        k = len(rows)
        if k:
            for cols, val in partial.items():
                table[MinorIndex(rows, cols)] = val
        if k == max_size:
            return
        for r in range(rows[-1] + 1 if rows else 1, n + 1):
            row = [M[r, c] for c in range(1, n + 1)]
            acc: dict[tuple[int, ...], list[TorusElement]] = {}
            for cols, val in partial.items():
                if val.is_zero():
                    continue
                for c in range(1, n + 1):
                    if c in cols or row[c - 1].is_zero():
                        continue
                    inv = sum(1 for s in cols if s > c)
                    term = torus_mul(p, val, row[c - 1]).scale(signs[inv])
                    key = tuple(sorted(cols + (c,)))
                    acc.setdefault(key, []).append(term)
            nxt = {cols: torus_sum(p, vals) for cols, vals in acc.items()}
            for cols in combinations(range(1, n + 1), k + 1):
                nxt.setdefault(cols, p.zero())
            grow(rows + (r,), nxt)

    grow((), {(): one})
    return table


def all_minors_vanish(p: TorusPresentation, M: QuantumMatrix, m: int) -> bool:
    if not 1 <= m <= M.n:
        raise ValueError(f"minor size must lie in [1, {M.n}]")
    return all(det_q(p, M, idx).is_zero() for idx in minor_indices(M.n, m))


@dataclass(frozen=True)
class ClassificationRecord:
    diagram: Diagram
    rank: int
    witness: MinorIndex | None
    gap_free: bool

    def to_json(self) -> dict:
        return {
            "diagram": to_string(self.diagram),
            "rank": self.rank,
            "witness": self.witness.to_json() if self.witness else None,
            "gap_free": self.gap_free,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "ClassificationRecord":
        wit = data.get("witness")
        return cls(
            diagram=parse_diagram(data["diagram"]),
            rank=int(data["rank"]),
            witness=MinorIndex(tuple(wit["rows"]), tuple(wit["cols"])) if wit else None,
            gap_free=bool(data["gap_free"]),
        )


def classify_matrix(w: Diagram, M: QuantumMatrix, strict: bool = True) -> ClassificationRecord:
    table = minor_table(M)
    nonzero_sizes = {idx.size for idx, v in table.items() if v}
    rank = max(nonzero_sizes, default=0)
    gap_free = nonzero_sizes == set(range(1, rank + 1))
    witness = None
    if rank:
        witness = min(idx for idx, v in table.items() if idx.size == rank and v)
    rec = ClassificationRecord(w, rank, witness, gap_free)
    if strict and not gap_free:
        raise GapViolation(
            f"diagram {to_string(w)}: nonvanishing minor sizes {sorted(nonzero_sizes)} are not 1..{rank}"
        )
    return rec


def classify_rank(p: TorusPresentation, w: Diagram, strict: bool = True) -> ClassificationRecord:
    """Rank = largest size of a nonvanishing quantum minor of M_w.

    ``gap_free`` records that minors of every size up to the rank survive,
    i.e. the rank is the only t with all (t+1)-minors vanishing and not all
    t-minors vanishing.
    """
    if w.n != p.n:
        raise ValueError("diagram and presentation sizes differ")
    if w.n > MAX_CLASSIFY_N:
        raise SizeTooLarge(f"classification is bounded at n={MAX_CLASSIFY_N}, got n={w.n}")
    require_diagram(w)
    return classify_matrix(w, restore(w.n, w), strict=strict)


def _classify_code(args) -> str:
    n, code = args
    from .qtorus import presentation

    return classify_rank(presentation(n), Diagram(n, code)).dumps()


def classify_all(
    n: int,
    jobs: int = 1,
    known: dict[Diagram, ClassificationRecord] | None = None,
    on_record: Callable[[ClassificationRecord], None] | None = None,
) -> list[ClassificationRecord]:
    """Classify every diagram of size n; ``known`` records are reused."""
    from .qtorus import presentation

    if n > MAX_CLASSIFY_N:
        raise SizeTooLarge(f"classification is bounded at n={MAX_CLASSIFY_N}, got n={n}")
    known = known or {}
    out: dict[Diagram, ClassificationRecord] = {}
    todo = []
    for w in enumerate_W(n):
        if w in known:
            out[w] = known[w]
        else:
            todo.append(w)
    if jobs > 1 and len(todo) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunk = max(1, len(todo) // (jobs * 8))
            for line in ex.map(_classify_code, [(n, w.code) for w in todo], chunksize=chunk):
                rec = ClassificationRecord.from_json(json.loads(line))
                out[rec.diagram] = rec
                if on_record:
                    on_record(rec)
    else:
        p = presentation(n)
        for w in todo:
            rec = classify_rank(p, w)
            out[w] = rec
            if on_record:
                on_record(rec)
    return [out[w] for w in sorted(out)]


def census(records: Iterable[ClassificationRecord], n: int) -> dict[int, int]:
    counts = {t: 0 for t in range(n + 1)}
    for rec in records:
        counts[rec.rank] += 1
    return counts


def rank_census(n: int, jobs: int = 1) -> dict[int, int]:
    """Number of H-primes of each rank t in [0, n], by symbolic minors."""
    return census(classify_all(n, jobs=jobs), n)
