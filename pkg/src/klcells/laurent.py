"""
Integer Laurent polynomials in one variable ``v`` and a two-variable variant.

Values are immutable. Integers mix freely with polynomials in arithmetic:

>>> p = LaurentPoly({1: 1, -1: 1})
>>> str(p * LaurentPoly({1: 1, -1: -1}))
'v^2 - v^-2'
>>> str(p.bar() - p)
'0'
>>> LaurentPoly.parse("3*v^2 - v^-1 + 4").degree_window()
(-1, 2)
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "LaurentPoly", "BiLaurentPoly", "ZERO", "ONE", "V",
    "add", "mul", "bar", "coeff", "degree_window", "vpow", "qdiff", "qsum",
]

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Sparse element of Z[v, v^-1]; zero coefficients are never stored."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c: dict[int, int] = {e: c for e, c in (coeffs or {}).items() if c}
        self._hash: int | None = None

    @classmethod
    def _raw(cls, d: dict[int, int]) -> LaurentPoly:
        # caller guarantees d has no zero values and is not shared
        p = cls.__new__(cls)
        p._c = d
        p._hash = None
        return p

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> LaurentPoly:
        return cls._raw({n: c} if c else {})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls._raw({0: c} if c else {})

    # -- access

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coeff(self, n: int) -> int:
        return self._c.get(n, 0)

    def degree_window(self) -> tuple[int, int] | None:
        """(lowest, highest) exponent, or None for the zero polynomial."""
        if not self._c:
            return None
        return min(self._c), max(self._c)

    def max_degree(self) -> int | None:
        return max(self._c) if self._c else None

    def min_degree(self) -> int | None:
        return min(self._c) if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def is_integer(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    # -- degree filters used by the canonical-basis recursions

    def part_below(self, n: int) -> LaurentPoly:
        """Terms with exponent < n."""
        return LaurentPoly._raw({e: c for e, c in self._c.items() if e < n})

    def part_at_least(self, n: int) -> LaurentPoly:
        """Terms with exponent >= n."""
        return LaurentPoly._raw({e: c for e, c in self._c.items() if e >= n})

    def in_negative(self) -> bool:
        """Membership in v^-1 Z[v^-1]."""
        return all(e < 0 for e in self._c)

    def bar(self) -> LaurentPoly:
        return LaurentPoly._raw({-e: c for e, c in self._c.items()})

    def shift(self, n: int) -> LaurentPoly:
        """Multiply by v^n."""
        return LaurentPoly._raw({e + n: c for e, c in self._c.items()})

    def substitute_power(self, k: int) -> LaurentPoly:
        """v -> v^k."""
        return LaurentPoly._raw({e * k: c for e, c in self._c.items()})

    # -- arithmetic

    def __add__(self, other: Scalar) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return self
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(other._c) > len(self._c):
            a, b = other._c, self._c
        else:
            a, b = self._c, other._c
        d = dict(a)
        for e, c in b.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = s
            else:
                del d[e]
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._c.items()})

    def __sub__(self, other: Scalar) -> LaurentPoly:
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: Scalar) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._c, other._c
        if len(b) == 1:
            (f, k), = b.items()
            return LaurentPoly._raw({e + f: c * k for e, c in a.items()})
        if len(a) == 1:
            (f, k), = a.items()
            return LaurentPoly._raw({e + f: c * k for e, c in b.items()})
        d: dict[int, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._c) != 1 or abs(next(iter(self._c.values()))) != 1:
                raise ValueError("only units have negative powers")
            (e, c), = self._c.items()
            return LaurentPoly.monomial(e * k, c ** abs(k))
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    # -- comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- text form

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for e in sorted(self._c, reverse=True):
            c = self._c[e]
            sign = "-" if c < 0 else "+"
            m = abs(c)
            if e == 0:
                body = str(m)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if m == 1 else f"{m}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"

    _TERM = re.compile(r"([+-]?)\s*(\d+)?\s*(\*?\s*v(?:\s*\^\s*(-?\d+))?)?")

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of ``str``; also accepts ``v^1``, ``1*v`` and ``v**n``."""
        s = text.replace("**", "^").replace(" ", "")
        if s in ("", "0"):
            return ZERO
        d: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse Laurent polynomial: {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            if pos and not m.group(1):
                raise ValueError(f"missing operator in {text!r}")
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(3) is None:
                e = 0
            else:
                e = int(m.group(4)) if m.group(4) is not None else 1
            d[e] = d.get(e, 0) + sign * c
            pos = m.end()
        return cls(d)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
V = LaurentPoly.monomial(1)


def vpow(n: int) -> LaurentPoly:
    return LaurentPoly.monomial(n)


def qdiff(n: int) -> LaurentPoly:
    """v^n - v^-n; with n = L(s) this is the quadratic-relation coefficient."""
    return LaurentPoly({n: 1, -n: -1})


def qsum(n: int) -> LaurentPoly:
    """v^n + v^-n."""
    return LaurentPoly({n: 1, -n: 1}) if n else LaurentPoly.const(2)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def coeff(p: LaurentPoly, n: int) -> int:
    return p.coeff(n)


def degree_window(p: LaurentPoly) -> tuple[int, int] | None:
    return p.degree_window()


def poly_sum(terms: Iterable[LaurentPoly]) -> LaurentPoly:
    d: dict[int, int] = {}
    for t in terms:
        for e, c in t._c.items():
            d[e] = d.get(e, 0) + c
    return LaurentPoly(d)


class BiLaurentPoly:
    """Element of Z[v, v^-1, v', v'^-1], keyed by (exponent of v, exponent of v')."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        self._c: dict[tuple[int, int], int] = {k: c for k, c in (coeffs or {}).items() if c}

    @classmethod
    def from_v(cls, p: LaurentPoly) -> BiLaurentPoly:
        return cls({(e, 0): c for e, c in p._c.items()})

    @classmethod
    def from_vprime(cls, p: LaurentPoly) -> BiLaurentPoly:
        return cls({(0, e): c for e, c in p._c.items()})

    @classmethod
    def outer(cls, p: LaurentPoly, q: LaurentPoly) -> BiLaurentPoly:
        """p(v) * q(v')."""
        return cls({(e, f): a * b for e, a in p._c.items() for f, b in q._c.items()})

    def coeff(self, i: int, j: int) -> int:
        return self._c.get((i, j), 0)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __add__(self, other: BiLaurentPoly) -> BiLaurentPoly:
        d = dict(self._c)
        for k, c in other._c.items():
            d[k] = d.get(k, 0) + c
        return BiLaurentPoly(d)

    def __neg__(self) -> BiLaurentPoly:
        return BiLaurentPoly({k: -c for k, c in self._c.items()})

    def __sub__(self, other: BiLaurentPoly) -> BiLaurentPoly:
        return self + (-other)

    def __mul__(self, other: BiLaurentPoly | int) -> BiLaurentPoly:
        if isinstance(other, int):
            return BiLaurentPoly({k: c * other for k, c in self._c.items()})
        d: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._c.items():
            for (i2, j2), c2 in other._c.items():
                k = (i1 + i2, j1 + j2)
                d[k] = d.get(k, 0) + c1 * c2
        return BiLaurentPoly(d)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BiLaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for (i, j), c in sorted(self._c.items(), reverse=True):
            mono = "*".join(x for x in (
                "" if i == 0 else ("v" if i == 1 else f"v^{i}"),
                "" if j == 0 else ("v'" if j == 1 else f"v'^{j}"),
            ) if x)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"BiLaurentPoly('{self}')"
