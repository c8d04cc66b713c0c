"""
The ring J spanned by symbols t_w with t_x t_y = sum_z gamma_{x,y,z^-1} t_z,
its unit and block decomposition, the comparison map phi from the Hecke
algebra into J tensored with Z[v, v^-1], and the filtered module check
relating the two products.

Construction is gated on a passing P1-P15 report for the same instance.

>>> from klcells.afun import check_conjectures, compute_adata
>>> from klcells.cells import cells
>>> from klcells.coxeter import enumerate_group, named_system
>>> t = enumerate_group(named_system("B2", (1, 2)))
>>> ad = compute_adata(t)
>>> part = cells(t, ad.kt)
>>> ring = build_jring(ad, part, check_conjectures(ad, part))
>>> x = ring.t(t.element((1, 0, 1)))
>>> j_mul(x, x)
(-1)*t[212]
"""

from __future__ import annotations

import random
from typing import Mapping, Union

from sympy import GF
from sympy.polys.matrices import DomainMatrix

from .afun import AData
from .cells import CellPartition
from .errors import ConjecturesUnverified, InfiniteGroup
from .hecke import Coords, HeckeElt, _acc, dagger
from .laurent import ONE, LaurentPoly

__all__ = ["JElt", "JRing", "build_jring", "j_mul", "j_unit", "j_blocks"]

Coeff = Union[int, LaurentPoly]


class JElt:
    """Finite combination of the t_w; coefficients are integers or Laurent polynomials."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: JRing, coords: Mapping[int, Coeff]):
        self.ring = ring
        self.coords: dict[int, Coeff] = {w: c for w, c in coords.items() if c}

    def __add__(self, other: JElt) -> JElt:
        d = dict(self.coords)
        for w, c in other.coords.items():
            d[w] = d.get(w, 0) + c
        return JElt(self.ring, d)

    def __neg__(self) -> JElt:
        return JElt(self.ring, {w: -c for w, c in self.coords.items()})

    def __sub__(self, other: JElt) -> JElt:
        return self + (-other)

    def __mul__(self, other: JElt) -> JElt:
        return self.ring.mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JElt):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(frozenset(self.coords.items()))

    def __str__(self) -> str:
        t = self.ring.table
        if not self.coords:
            return "0"
        return " + ".join(f"({c})*t[{t.name(w)}]" for w, c in sorted(self.coords.items()))

    __repr__ = __str__


class JRing:
    def __init__(self, ad: AData, part: CellPartition):
        self.ad = ad
        self.part = part
        self.table = ad.table
        inv = self.table.inverse
        self.prod: dict[tuple[int, int], dict[int, int]] = {}
        for (x, y, zi), c in ad.gamma.items():
            self.prod.setdefault((x, y), {})[inv[zi]] = c
        self.nhat = self._nhat()

    def _nhat(self) -> list[int]:
        inv = self.table.inverse
        out = []
        for z in range(len(self.table)):
            cell = self.part.cell("left", inv[z])
            ds = [d for d in cell if d in self.ad.dset]
            if len(ds) != 1:
                raise ConjecturesUnverified(f"left cell of {self.table.name(inv[z])} has {len(ds)} distinguished elements")
            out.append(self.ad.nz[ds[0]])
        return out

    def t(self, w: int) -> JElt:
        return JElt(self, {w: 1})

    def mul(self, a: JElt, b: JElt) -> JElt:
        d: dict[int, Coeff] = {}
        for x, cx in a.coords.items():
            for y, cy in b.coords.items():
                row = self.prod.get((x, y))
                if not row:
                    continue
                c = cx * cy
                for z, g in row.items():
                    d[z] = d.get(z, 0) + c * g
        return JElt(self, d)

    def unit(self) -> JElt:
        """sum over the distinguished set of n_d t_d."""
        return JElt(self, {d: self.ad.nz[d] for d in self.ad.dset})

    def unit_check(self) -> dict:
        one = self.unit()
        for x in range(len(self.table)):
            tx = self.t(x)
            if one * tx != tx or tx * one != tx:
                return {"status": "fail", "counterexample": {"x": self.table.name(x)}}
        return {"status": "pass", "counterexample": None}

    def associativity_check(self) -> dict:
        """sum_z g(x,y,z^-1) g(z,u,u'^-1) = sum_w g(y,u,w^-1) g(x,w,u'^-1) for all x, y, u."""
        n = len(self.table)
        for x in range(n):
            for y in range(n):
                for u in range(n):
                    lhs = (self.t(x) * self.t(y)) * self.t(u)
                    rhs = self.t(x) * (self.t(y) * self.t(u))
                    if lhs != rhs:
                        names = [self.table.name(w) for w in (x, y, u)]
                        return {"status": "fail", "counterexample": {"x": names[0], "y": names[1], "u": names[2]}}
        return {"status": "pass", "counterexample": None}

    def blocks(self) -> dict:
        """One block per two-sided cell: closure, vanishing cross products, block unit."""
        t = self.table
        ad = self.ad
        out = []
        status = "pass"
        cex = None
        cell_of = self.part.cell_of["two"]
        for c in self.part.two_sided_cells:
            unit = JElt(self, {d: ad.nz[d] for d in c if d in ad.dset})
            ok = all(unit * self.t(x) == self.t(x) == self.t(x) * unit for x in c)
            out.append({"elements": sorted(t.name(w) for w in c), "rank": len(c),
                        "unit": {t.name(d): ad.nz[d] for d in sorted(c) if d in ad.dset},
                        "unit_ok": ok})
            if not ok and cex is None:
                status, cex = "fail", {"cell": sorted(t.name(w) for w in c), "reason": "block unit"}
        for (x, y), row in sorted(self.prod.items()):
            cx, cy = cell_of[x], cell_of[y]
            if row and (cx != cy or any(cell_of[z] != cx for z in row)):
                if cex is None:
                    status, cex = "fail", {"x": t.name(x), "y": t.name(y), "reason": "product leaves block"}
        return {"status": status, "blocks": out, "counterexample": cex}

    def left_ideal_check(self) -> dict:
        cell_of = self.part.cell_of["left"]
        for (u, x), row in self.prod.items():
            if any(cell_of[z] != cell_of[x] for z in row):
                return {"status": "fail", "counterexample": {"u": self.table.name(u), "x": self.table.name(x)}}
        return {"status": "pass", "counterexample": None}

    # -- phi

    def phi_dagger_basis(self, x: int) -> JElt:
        """phi(dagger(c_x)) = sum_{z, d in D, a(d) = a(z)} h_{x,d,z} nhat_z t_z."""
        ad = self.ad
        d_out: dict[int, Coeff] = {}
        for d in ad.dset:
            for z, p in ad.h[x][d].items():
                if ad.a[z] == ad.a[d]:
                    d_out[z] = d_out.get(z, 0) + p * self.nhat[z]
        return JElt(self, d_out)

    def phi(self, h: HeckeElt) -> JElt:
        """A-linear: expand h in the basis dagger(c_x) and apply phi termwise."""
        kt = self.ad.kt
        coeffs = kt.to_c(dagger(h).coords)
        out: dict[int, Coeff] = {}
        for x, a in coeffs.items():
            for z, c in self.phi_dagger_basis(x).coords.items():
                out[z] = out.get(z, 0) + a * c
        return JElt(self, out)

    def multiplicativity_check(self) -> dict:
        """sum_w h_{x,x',w} phi(c_w^+) = phi(c_x^+) phi(c_x'^+), and phi(1) = unit."""
        n = len(self.table)
        images = [self.phi_dagger_basis(x) for x in range(n)]
        unit = self.unit()
        if JElt(self, {w: ONE * c for w, c in unit.coords.items()}) != images[0]:
            return {"status": "fail", "counterexample": {"reason": "unit"}}
        for x in range(n):
            for x2 in range(n):
                lhs: dict[int, Coeff] = {}
                for w, p in self.ad.h[x][x2].items():
                    for z, c in images[w].coords.items():
                        lhs[z] = lhs.get(z, 0) + p * c
                if JElt(self, lhs) != images[x] * images[x2]:
                    return {"status": "fail", "counterexample": {"x": self.table.name(x), "x'": self.table.name(x2)}}
        return {"status": "pass", "counterexample": None}

    def coefficient_bar_check(self) -> dict:
        for x in range(len(self.table)):
            for z, c in self.phi_dagger_basis(x).coords.items():
                if c.bar() != c:
                    return {"status": "fail", "counterexample": {"x": self.table.name(x), "z": self.table.name(z)}}
        return {"status": "pass", "counterexample": None}

    def module_action(self, x: int, w: int) -> Coords:
        """t_x * dagger(c_w) in dagger-c coordinates: sum_z gamma_{x,w,z^-1} nhat_w nhat_z."""
        row = self.prod.get((x, w), {})
        return {z: LaurentPoly.const(g * self.nhat[w] * self.nhat[z]) for z, g in row.items()}

    def graded_action_check(self) -> dict:
        """dagger(c_x) dagger(c_w) and phi(dagger(c_x)) * dagger(c_w) agree on every u with a(u) <= a(w)."""
        ad = self.ad
        n = len(self.table)
        for x in range(n):
            image = self.phi_dagger_basis(x)
            for w in range(n):
                rhs: Coords = {}
                for z, c in image.coords.items():
                    for u, b in self.module_action(z, w).items():
                        _acc(rhs, u, c * b)
                lhs = ad.h[x][w]
                aw = ad.a[w]
                for u in set(lhs) | set(rhs):
                    if ad.a[u] <= aw and lhs.get(u, 0) != rhs.get(u, 0):
                        return {"status": "fail", "counterexample": {
                            "x": self.table.name(x), "w": self.table.name(w), "u": self.table.name(u)}}
        return {"status": "pass", "counterexample": None}

    def injectivity_check(self, seed: int = 0, prime: int = 2_147_483_647) -> dict:
        """
        Rank of the matrix of phi (rows x, columns z) after specialising v to a
        random residue mod a large prime. Full rank there implies full rank
        over Q(v); a deficient rank is reported as inconclusive.
        """
        n = len(self.table)
        rng = random.Random(seed)
        v = rng.randrange(2, prime - 1)
        inv_v = pow(v, -1, prime)

        def ev(p: Coeff) -> int:
            if isinstance(p, int):
                return p % prime
            return sum(c * pow(v if e >= 0 else inv_v, abs(e), prime) for e, c in p.items()) % prime

        rows = []
        for x in range(n):
            img = self.phi_dagger_basis(x).coords
            rows.append([ev(img[z]) if z in img else 0 for z in range(n)])
        K = GF(prime)
        rank = DomainMatrix([[K(c) for c in r] for r in rows], (n, n), K).rank()
        return {"status": "pass" if rank == n else "inconclusive", "rank": rank, "size": n}


def build_jring(ad: AData, part: CellPartition, reports: list[dict]) -> JRing:
    """Refuse unless every P1-P15 report on this instance passed."""
    if not ad.table.complete:
        raise InfiniteGroup("J is built on complete finite tables only")
    names = {r["conjecture"] for r in reports if r["status"] == "pass"}
    missing = [f"P{i}" for i in range(1, 16) if f"P{i}" not in names]
    if missing:
        raise ConjecturesUnverified(f"properties not verified: {', '.join(missing)}")
    return JRing(ad, part)


def j_mul(a: JElt, b: JElt) -> JElt:
    if a.ring is not b.ring:
        raise ValueError("elements of different rings")
    return a.ring.mul(a, b)


def j_unit(ring: JRing) -> JElt:
    return ring.unit()


def j_blocks(ring: JRing) -> dict:
    return ring.blocks()
