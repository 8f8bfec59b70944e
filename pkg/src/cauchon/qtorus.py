"""The quantum torus on the n^2 generators T[i,a] and the q-quantum relation checks.

Monomials are stored in normal order: row-major on (i, a), exponents may be
negative.  For positions u before v the generators satisfy

    T_v T_u = q^lam(u, v) T_u T_v,   lam = -1 on a shared row or column, else 0,

so that T^e T^f = q^c(e, f) T^(e + f) with

    c(e, f) = sum over a < b of lam(p_a, p_b) * e[p_b] * f[p_a].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .qcoeff import ONE as QL_ONE
from .qcoeff import QINV, QLaurent, format_qlaurent, ql_add, ql_mul

Position = tuple[int, int]
Monomial = tuple[int, ...]


class NotInvertible(ArithmeticError):
    """Raised when a torus element is not a unit monomial."""


@dataclass(frozen=True, eq=False)
class TorusPresentation:
    """Commutation data of the quantum torus for an n x n grid."""

    n: int
    _lam: tuple = field(init=False, repr=False)
    _twist_cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        n = self.n
        cells = [(i, a) for i in range(1, n + 1) for a in range(1, n + 1)]
        lam = tuple(
            tuple(
                -1 if x < y and (cells[x][0] == cells[y][0] or cells[x][1] == cells[y][1]) else 0
                for y in range(n * n)
            )
            for x in range(n * n)
        )
        object.__setattr__(self, "_lam", lam)
        object.__setattr__(self, "_twist_cache", {})

    def __eq__(self, other):
        return isinstance(other, TorusPresentation) and other.n == self.n

    def __hash__(self):
        return hash(("TorusPresentation", self.n))

    @property
    def size(self) -> int:
        return self.n * self.n

    def index(self, pos: Position) -> int:
        i, a = pos
        if not (1 <= i <= self.n and 1 <= a <= self.n):
            raise IndexError(f"position {pos} outside the {self.n}x{self.n} grid")
        return (i - 1) * self.n + (a - 1)

    def position(self, k: int) -> Position:
        return divmod(k, self.n)[0] + 1, k % self.n + 1

    def lam(self, u: Position, v: Position) -> int:
        """Exponent d with T_v T_u = q^d T_u T_v, for u strictly before v."""
        x, y = self.index(u), self.index(v)
        if x >= y:
            raise ValueError("lam(u, v) needs u strictly before v in row-major order")
        return self._lam[x][y]

    def twist(self, e: Monomial, f: Monomial) -> int:
        """c(e, f): the q-power picked up when normal-ordering T^e T^f."""
        key = (e, f)
        c = self._twist_cache.get(key)
        if c is not None:
            return c
        lam = self._lam
        fnz = [(a, fa) for a, fa in enumerate(f) if fa]
        c = 0
        for b, eb in enumerate(e):
            if eb:
                for a, fa in fnz:
                    if a >= b:
                        break
                    d = lam[a][b]
                    if d:
                        c += d * eb * fa
        if len(self._twist_cache) < 2_000_000:
            self._twist_cache[key] = c
        return c

    # constructors ------------------------------------------------------

    def unit_monomial(self) -> Monomial:
        return (0,) * self.size

    def zero(self) -> "TorusElement":
        return TorusElement(self, {})

    def one(self) -> "TorusElement":
        return TorusElement(self, {self.unit_monomial(): QL_ONE})

    def generator(self, i: int, a: int, power: int = 1) -> "TorusElement":
        e = [0] * self.size
        e[self.index((i, a))] = power
        return TorusElement(self, {tuple(e): QL_ONE})

    def monomial(self, exps: Mapping[Position, int], coeff: QLaurent | int = 1) -> "TorusElement":
        e = [0] * self.size
        for pos, k in exps.items():
            e[self.index(pos)] = k
        return TorusElement(self, {tuple(e): QLaurent.coerce(coeff)})

    def generic_matrix(self) -> "QuantumMatrix":
        n = self.n
        return QuantumMatrix(
            self, tuple(tuple(self.generator(i, a) for a in range(1, n + 1)) for i in range(1, n + 1))
        )


@lru_cache(maxsize=None)
def presentation(n: int) -> TorusPresentation:
    """Shared presentation per grid size, so the twist cache is reused."""
    return TorusPresentation(n)


class TorusElement:
    """Immutable finite sum of coefficient * normal-ordered monomial."""

    __slots__ = ("pres", "_terms", "_hash")

    def __init__(self, pres: TorusPresentation, terms: Mapping[Monomial, QLaurent]):
        self.pres = pres
        self._terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, pres, terms):
        obj = cls.__new__(cls)
        obj.pres = pres
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict[Monomial, QLaurent]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.pres == other.pres and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "TorusElement") -> "TorusElement":
        return torus_add(self, other)

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return torus_add(self, -other)

    def __neg__(self) -> "TorusElement":
        return TorusElement._wrap(self.pres, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other) -> "TorusElement":
        if isinstance(other, TorusElement):
            return torus_mul(self.pres, self, other)
        return self.scale(QLaurent.coerce(other))

    def __rmul__(self, other) -> "TorusElement":
        return self.scale(QLaurent.coerce(other))

    def scale(self, c: QLaurent) -> "TorusElement":
        if not c:
            return TorusElement._wrap(self.pres, {})
        if c == QL_ONE:
            return self
        return TorusElement._wrap(self.pres, {m: v for m, v in ((m, ql_mul(x, c)) for m, x in self._terms.items()) if v})

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"TorusElement({format_element(self)!r})"


def torus_add(a: TorusElement, b: TorusElement) -> TorusElement:
    if a.pres != b.pres:
        raise ValueError("elements over different presentations")
    if not a._terms:
        return b
    if not b._terms:
        return a
    out = dict(a._terms)
    for m, c in b._terms.items():
        s = ql_add(out[m], c) if m in out else c
        if s:
            out[m] = s
        else:
            del out[m]
    return TorusElement._wrap(a.pres, out)


def torus_mul(p: TorusPresentation, a: TorusElement, b: TorusElement) -> TorusElement:
    if a.pres != p or b.pres != p:
        raise ValueError("elements over different presentations")
    if not a._terms or not b._terms:
        return TorusElement._wrap(p, {})
    twist = p.twist
    out: dict[Monomial, QLaurent] = {}
    for e, ce in a._terms.items():
        for f, cf in b._terms.items():
            m = tuple(x + y for x, y in zip(e, f))
            c = ql_mul(ce, cf).shift(twist(e, f))
            if m in out:
                s = ql_add(out[m], c)
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
    return TorusElement._wrap(p, out)


def torus_sum(p: TorusPresentation, elements: Iterable[TorusElement]) -> TorusElement:
    out: dict[Monomial, QLaurent] = {}
    for x in elements:
        for m, c in x._terms.items():
            if m in out:
                s = ql_add(out[m], c)
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
    return TorusElement._wrap(p, out)


def torus_invert_monomial(p: TorusPresentation, a: TorusElement) -> TorusElement:
    if len(a._terms) != 1:
        raise NotInvertible(f"cannot invert {a}: need exactly one term")
    ((e, c),) = a._terms.items()
    if not c.is_unit():
        raise NotInvertible(f"cannot invert {a}: coefficient {c} is not a unit")
    neg = tuple(-x for x in e)
    ((k, s),) = c.items()
    # c * q^d * q^twist(e, -e) = 1
    d = -k - p.twist(e, neg)
    return TorusElement._wrap(p, {neg: QLaurent.monomial(s, d)})


# -- matrices ------------------------------------------------------------------


@dataclass(frozen=True)
class QuantumMatrix:
    """n x n matrix of torus elements; indexed 1-based as ``M[i, a]``."""

    pres: TorusPresentation
    entries: tuple[tuple[TorusElement, ...], ...]

    @property
    def n(self) -> int:
        return self.pres.n

    def __getitem__(self, pos: Position) -> TorusElement:
        i, a = pos
        return self.entries[i - 1][a - 1]

    def rows(self) -> Iterator[tuple[TorusElement, ...]]:
        return iter(self.entries)

    def zero_pattern(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(x.is_zero() for x in row) for row in self.entries)

    @classmethod
    def from_rows(cls, pres: TorusPresentation, rows: Sequence[Sequence[TorusElement]]) -> "QuantumMatrix":
        if len(rows) != pres.n or any(len(r) != pres.n for r in rows):
            raise ValueError(f"expected a {pres.n}x{pres.n} array")
        return cls(pres, tuple(tuple(r) for r in rows))

    @classmethod
    def zero_matrix(cls, pres: TorusPresentation) -> "QuantumMatrix":
        z = pres.zero()
        return cls(pres, tuple((z,) * pres.n for _ in range(pres.n)))


@dataclass(frozen=True)
class Violation:
    rows: tuple[int, int]
    cols: tuple[int, int]
    relation: str


RelationReport = list  # list[Violation]; empty means every relation holds

MONOMIAL_RELATIONS = ("yx=q^-1xy", "zx=q^-1xz", "zy=yz", "ty=q^-1yt", "tz=q^-1zt")
DIAGONAL_QUANTUM = "tx=xt-(q-q^-1)yz"
DIAGONAL_COMMUTE = "tx=xt"

_Q_MINUS_QINV = QLaurent({1: 1, -1: -1})


def _standard_leq(u: Position, v: Position) -> bool:
    return u <= v


def _relations(M: QuantumMatrix, jbeta: Position | None) -> RelationReport:
    n = M.n
    report: RelationReport = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for a in range(1, n + 1):
                for b in range(a + 1, n + 1):
                    x, y, z, t = M[i, a], M[i, b], M[j, a], M[j, b]
                    checks = (
                        (y * x) - (x * y).scale(QINV),
                        (z * x) - (x * z).scale(QINV),
                        (z * y) - (y * z),
                        (t * y) - (y * t).scale(QINV),
                        (t * z) - (z * t).scale(QINV),
                    )
                    for name, diff in zip(MONOMIAL_RELATIONS, checks):
                        if diff:
                            report.append(Violation((i, j), (a, b), name))
                    commuting = jbeta is not None and _standard_leq(jbeta, (j, b))
                    lhs = (t * x) - (x * t)
                    if commuting:
                        if lhs:
                            report.append(Violation((i, j), (a, b), DIAGONAL_COMMUTE))
                    else:
                        rhs = -(y * z).scale(_Q_MINUS_QINV)
                        if lhs != rhs:
                            report.append(Violation((i, j), (a, b), DIAGONAL_QUANTUM))
    return report


def check_q_quantum(p: TorusPresentation, M: QuantumMatrix) -> RelationReport:
    """All 2x2 relations of a q-quantum matrix; returns the violated ones."""
    if M.pres != p:
        raise ValueError("matrix over a different presentation")
    return _relations(M, None)


def check_jbeta_quantum(p: TorusPresentation, M: QuantumMatrix, jbeta: Position) -> RelationReport:
    """Like :func:`check_q_quantum`, but a 2x2 block whose bottom-right corner
    sits at or after ``jbeta`` must commute on its diagonal instead."""
    if M.pres != p:
        raise ValueError("matrix over a different presentation")
    j, b = jbeta
    if not (1 <= j <= p.n and 1 <= b <= p.n + 1) or (j, b) == (1, 1) or (b == p.n + 1 and j != p.n):
        raise ValueError(f"{jbeta} is not a step index for n={p.n}")
    return _relations(M, jbeta)


# -- text form -------------------------------------------------------------------


def format_monomial(p: TorusPresentation, e: Monomial) -> str:
    factors = []
    for k, x in enumerate(e):
        if x:
            i, a = p.position(k)
            factors.append(f"T[{i},{a}]" if x == 1 else f"T[{i},{a}]^{x}")
    return "*".join(factors)


def _sorted_terms(x: TorusElement):
    return sorted(x._terms.items(), key=lambda kv: kv[0], reverse=True)


def format_element(x: TorusElement) -> str:
    """Render as ``T[1,1] + q*T[1,2]*T[2,1]*T[2,2]^-1``."""
    if not x._terms:
        return "0"
    p = x.pres
    out = []
    for e, c in _sorted_terms(x):
        mono = format_monomial(p, e)
        negative = False
        if len(c) == 1:
            ((k, v),) = c.items()
            negative = v < 0
            cs = format_qlaurent(QLaurent.monomial(abs(v), k))
            cs = "" if cs == "1" else cs
        else:
            cs = f"({format_qlaurent(c)})"
        if mono and cs:
            body = f"{cs}*{mono}"
        else:
            body = mono or cs or "1"
        if not out:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


def element_to_json(x: TorusElement) -> list:
    """Term list: ``[{"coeff": {exp: c}, "exponents": [...]}, ...]`` in render order."""
    return [
        {"coeff": {str(k): v for k, v in sorted(c.items())}, "exponents": list(e)}
        for e, c in _sorted_terms(x)
    ]
