"""Exact Laurent polynomials in one variable ``q`` with integer coefficients.

Every scalar produced while restoring quantum matrices lives in Z[q, q^-1]:
only unit monomials are ever inverted, so rationals never appear.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping


class NotAUnit(ArithmeticError):
    """Raised when inverting something other than +-q^k."""


class QLaurent:
    """Immutable element of Z[q, q^-1], stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so the zero polynomial is the empty
    map and equality is plain map equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if terms:
            self._terms = {int(k): int(v) for k, v in terms.items() if v}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "QLaurent":
        # trusted constructor: caller guarantees canonical form
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> "QLaurent":
        return cls._wrap({exp: coeff} if coeff else {})

    @classmethod
    def coerce(cls, x) -> "QLaurent":
        if isinstance(x, QLaurent):
            return x
        if isinstance(x, int):
            return cls.monomial(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to QLaurent")

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[int, int]]:
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QLaurent.monomial(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> "QLaurent":
        return QLaurent._wrap({k: -v for k, v in self._terms.items()})

    def __add__(self, other) -> "QLaurent":
        return ql_add(self, QLaurent.coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> "QLaurent":
        return ql_add(self, -QLaurent.coerce(other))

    def __rsub__(self, other) -> "QLaurent":
        return ql_add(QLaurent.coerce(other), -self)

    def __mul__(self, other) -> "QLaurent":
        return ql_mul(self, QLaurent.coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QLaurent":
        if k < 0:
            return ql_invert_unit(self) ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, d: int) -> "QLaurent":
        """Multiply by q^d."""
        if not d:
            return self
        return QLaurent._wrap({k + d: v for k, v in self._terms.items()})

    def evaluate(self, q):
        return sum(c * q**k for k, c in self._terms.items())

    def __str__(self) -> str:
        return format_qlaurent(self)

    def __repr__(self) -> str:
        return f"QLaurent({format_qlaurent(self)!r})"


def ql_add(a: QLaurent, b: QLaurent) -> QLaurent:
    if not a._terms:
        return b
    if not b._terms:
        return a
    out = dict(a._terms)
    for k, v in b._terms.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return QLaurent._wrap(out)


def ql_mul(a: QLaurent, b: QLaurent) -> QLaurent:
    if not a._terms or not b._terms:
        return ZERO
    out: dict[int, int] = {}
    for i, x in a._terms.items():
        for j, y in b._terms.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return QLaurent._wrap({k: v for k, v in out.items() if v})


def ql_invert_unit(a: QLaurent) -> QLaurent:
    if not a.is_unit():
        raise NotAUnit(f"{a} is not of the form +-q^k")
    ((k, c),) = a._terms.items()
    return QLaurent._wrap({-k: c})


ZERO = QLaurent()
ONE = QLaurent.monomial(1, 0)
Q = QLaurent.monomial(1, 1)
QINV = QLaurent.monomial(1, -1)


# -- text form ---------------------------------------------------------------

def _format_term(c: int, k: int) -> str:
    a = abs(c)
    if k == 0:
        return str(a)
    var = "q" if k == 1 else f"q^{k}"
    return var if a == 1 else f"{a}*{var}"


def format_qlaurent(a: QLaurent) -> str:
    """Render as e.g. ``3*q^-2 + 1 - q^4`` (increasing exponents)."""
    if not a._terms:
        return "0"
    parts = []
    for k in sorted(a._terms):
        c = a._terms[k]
        body = _format_term(c, k)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+)\s*(?:\*\s*(?P<q1>q)(?:\s*\^\s*(?P<e1>-?\d+))?)?
          |
          (?P<q2>q)(?:\s*\^\s*(?P<e2>-?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_qlaurent(text: str) -> QLaurent:
    """Inverse of :func:`format_qlaurent`; whitespace is optional."""
    s = text.strip()
    if not s:
        raise ValueError("empty Laurent polynomial")
    pos = 0
    acc = ZERO
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("q2") is None):
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at offset {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            coef = int(m.group("coef"))
            if m.group("q1"):
                exp = int(m.group("e1")) if m.group("e1") else 1
            else:
                exp = 0
        else:
            coef = 1
            exp = int(m.group("e2")) if m.group("e2") else 1
        acc = acc + QLaurent.monomial(sign * coef, exp)
        pos = m.end()
        first = False
    return acc
