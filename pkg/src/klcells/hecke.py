"""
The Hecke algebra over Z[v, v^-1] in the standard basis T_w: products,
inverses, the bar involution through r-polynomials, the antiautomorphism
``flip``, the involution ``dagger`` and the trace ``tau``.

Coordinates are dictionaries ``element index -> LaurentPoly``; a
``HeckeElt`` wraps such a dictionary together with its table and basis tag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .coxeter import GroupTable, bruhat_lower
from .errors import BallExceeded
from .laurent import ONE, ZERO, LaurentPoly, qdiff

__all__ = [
    "HeckeElt", "RTable", "mul_gen_T", "mul_T", "inverse_T", "r_table",
    "bar_elt", "flip", "dagger", "tau", "f_struct", "T",
]

Coords = dict[int, LaurentPoly]


def _acc(d: Coords, w: int, a: LaurentPoly) -> None:
    b = d.get(w)
    if b is None:
        if a:
            d[w] = a
    else:
        c = b + a
        if c:
            d[w] = c
        else:
            del d[w]


class HeckeElt:
    __slots__ = ("table", "coords", "basis")

    def __init__(self, table: GroupTable, coords: Mapping[int, LaurentPoly | int], basis: str = "T"):
        self.table = table
        self.basis = basis
        self.coords: Coords = {}
        for w, a in coords.items():
            if isinstance(a, int):
                a = LaurentPoly.const(a)
            if a:
                self.coords[w] = a

    @classmethod
    def basis_element(cls, table: GroupTable, w: int, basis: str = "T") -> HeckeElt:
        return cls(table, {w: ONE}, basis)

    def _check(self, other: HeckeElt) -> None:
        if other.basis != self.basis or other.table is not self.table:
            raise ValueError("Hecke elements live in different bases or tables")

    def __add__(self, other: HeckeElt) -> HeckeElt:
        self._check(other)
        d = dict(self.coords)
        for w, a in other.coords.items():
            _acc(d, w, a)
        return HeckeElt(self.table, d, self.basis)

    def __neg__(self) -> HeckeElt:
        return HeckeElt(self.table, {w: -a for w, a in self.coords.items()}, self.basis)

    def __sub__(self, other: HeckeElt) -> HeckeElt:
        return self + (-other)

    def scale(self, a: LaurentPoly | int) -> HeckeElt:
        return HeckeElt(self.table, {w: b * a for w, b in self.coords.items()}, self.basis)

    def __mul__(self, other: HeckeElt) -> HeckeElt:
        if self.basis != "T":
            return NotImplemented
        return mul_T(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.basis == other.basis and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.basis, frozenset(self.coords.items())))

    def coeff(self, w: int) -> LaurentPoly:
        return self.coords.get(w, ZERO)

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for w in sorted(self.coords, key=lambda x: (self.table.length[x], x)):
            parts.append(f"({self.coords[w]})*{self.basis}[{self.table.name(w)}]")
        return " + ".join(parts)

    __repr__ = __str__


def T(table: GroupTable, w: int) -> HeckeElt:
    return HeckeElt.basis_element(table, w, "T")


# -- products

def _lmul_gen(table: GroupTable, s: int, coords: Coords) -> Coords:
    qd = qdiff(table.system.weights[s])
    out: Coords = {}
    ld, left = table.ldesc, table.left
    for w, a in coords.items():
        x = left[w][s]
        if x < 0:
            raise BallExceeded(f"T_s{s + 1} * T_{table.name(w)} leaves the ball")
        _acc(out, x, a)
        if s in ld[w]:
            _acc(out, w, a * qd)
    return out


def _rmul_gen(table: GroupTable, s: int, coords: Coords) -> Coords:
    qd = qdiff(table.system.weights[s])
    out: Coords = {}
    rd, right = table.rdesc, table.right
    for w, a in coords.items():
        x = right[w][s]
        if x < 0:
            raise BallExceeded(f"T_{table.name(w)} * T_s{s + 1} leaves the ball")
        _acc(out, x, a)
        if s in rd[w]:
            _acc(out, w, a * qd)
    return out


def mul_gen_T(s: int, h: HeckeElt, side: str = "left") -> HeckeElt:
    """T_s * h (side='left') or h * T_s (side='right')."""
    f = _lmul_gen if side == "left" else _rmul_gen
    return HeckeElt(h.table, f(h.table, s, h.coords), "T")


def _mul_coords(table: GroupTable, a: Coords, b: Coords) -> Coords:
    out: Coords = {}
    for x, ax in a.items():
        cur = b
        for s in reversed(table.words[x]):
            cur = _lmul_gen(table, s, cur)
        for w, c in cur.items():
            _acc(out, w, c * ax)
    return out


def mul_T(h1: HeckeElt, h2: HeckeElt) -> HeckeElt:
    if h1.basis != "T" or h2.basis != "T":
        raise ValueError("mul_T expects T-basis elements")
    return HeckeElt(h1.table, _mul_coords(h1.table, h1.coords, h2.coords), "T")


def f_struct(table: GroupTable, x: int, y: int) -> Coords:
    """T_x T_y = sum_z f_{x,y,z} T_z."""
    return _mul_coords(table, {x: ONE}, {y: ONE})


def _inverse_coords(table: GroupTable, w: int) -> Coords:
    cur: Coords = {0: ONE}
    for s in table.words[w]:
        qd = qdiff(table.system.weights[s])
        nxt = _lmul_gen(table, s, cur)
        for y, a in cur.items():
            _acc(nxt, y, -(a * qd))
        cur = nxt
    return cur


def rmul_inverse_T(table: GroupTable, coords: Coords, w: int) -> Coords:
    """coords * T_w^-1, one generator at a time."""
    cur = coords
    for s in reversed(table.words[w]):
        qd = qdiff(table.system.weights[s])
        nxt = _rmul_gen(table, s, cur)
        for y, a in cur.items():
            _acc(nxt, y, -(a * qd))
        cur = nxt
    return cur


def inverse_T(table: GroupTable, w: int) -> HeckeElt:
    """T_w^-1 as the product of T_s^-1 = T_s - (v_s - v_s^-1) along the reversed word."""
    return HeckeElt(table, _inverse_coords(table, w), "T")


# -- r-polynomials and the involutions

@dataclass
class RTable:
    """rows[w][y] = r_{y,w}; absent entries are zero."""
    table: GroupTable
    rows: list[dict[int, LaurentPoly]]

    def r(self, y: int, w: int) -> LaurentPoly:
        return self.rows[w].get(y, ZERO)


def r_table(table: GroupTable) -> RTable:
    """
    Recursion on l(w) pivoting on the first letter s of the canonical word:
    r_{y,w} = r_{sy,sw} if sy < y, and r_{sy,sw} + (v_s - v_s^-1) r_{y,sw} otherwise.
    """
    cached = getattr(table, "_rtable", None)
    if cached is not None:
        return cached
    below = bruhat_lower(table)
    rows: list[dict[int, LaurentPoly]] = [dict() for _ in range(len(table))]
    rows[0] = {0: ONE}
    for w in sorted(range(1, len(table)), key=table.length.__getitem__):
        s = table.words[w][0]
        sw = table.left[w][s]
        prev = rows[sw]
        qd = qdiff(table.system.weights[s])
        row: dict[int, LaurentPoly] = {}
        for y in below[w]:
            sy = table.left[y][s]
            a = prev.get(sy, ZERO)
            if s not in table.ldesc[y]:
                b = prev.get(y)
                if b is not None:
                    a = a + qd * b
            if a:
                row[y] = a
        rows[w] = row
    rt = RTable(table, rows)
    table._rtable = rt  # type: ignore[attr-defined]
    return rt


def _bar_basis(rt: RTable, coords: Mapping[int, LaurentPoly], conj: bool, signed: bool) -> Coords:
    # sum_w a_w * (+-) bar(T_w), with a_w conjugated when conj
    table = rt.table
    out: Coords = {}
    for w, a in coords.items():
        if conj:
            a = a.bar()
        if signed and table.length[w] % 2:
            a = -a
        for x, r in rt.rows[w].items():
            _acc(out, x, a * r.bar())
    return out


def bar_elt(h: HeckeElt, rt: RTable | None = None) -> HeckeElt:
    """Bar involution: semilinear, T_w -> T_{w^-1}^-1 = sum_x bar(r_{x,w}) T_x."""
    rt = rt or r_table(h.table)
    return HeckeElt(h.table, _bar_basis(rt, h.coords, conj=True, signed=False), "T")


def flip(h: HeckeElt) -> HeckeElt:
    """The A-linear antiautomorphism T_w -> T_{w^-1}."""
    inv = h.table.inverse
    return HeckeElt(h.table, {inv[w]: a for w, a in h.coords.items()}, h.basis)


def dagger(h: HeckeElt, rt: RTable | None = None) -> HeckeElt:
    """The A-linear involution T_s -> -T_s^-1, i.e. T_w -> sgn(w) T_{w^-1}^-1."""
    rt = rt or r_table(h.table)
    return HeckeElt(h.table, _bar_basis(rt, h.coords, conj=False, signed=True), "T")


def tau(h: HeckeElt) -> LaurentPoly:
    return h.coords.get(0, ZERO)


def linear_combination(table: GroupTable, terms: Iterable[tuple[LaurentPoly, Mapping[int, LaurentPoly]]]) -> Coords:
    out: Coords = {}
    for a, coords in terms:
        for w, b in coords.items():
            _acc(out, w, a * b)
    return out
