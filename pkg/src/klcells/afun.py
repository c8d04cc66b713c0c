"""
Structure constants c_x c_y = sum_z h_{x,y,z} c_z, the a-function, leading
coefficients gamma, the degree data of p_{1,z}, the distinguished set D and
a checker for the fifteen properties P1-P15 on a concrete instance.

h is built in the c-basis without passing through T: for x with first letter
s and x1 = s x,

    c_x c_y = c_s (c_{x1} c_y) - sum_{z : sz < z < x1} mu^s_{z,x1} c_z c_y,

so each row only needs the products c_s c_u. The slower route through
T-basis products and the inverse matrix q' is ``h_struct``.

>>> from klcells.coxeter import enumerate_group, named_system
>>> t = enumerate_group(named_system("B2", (1, 2)))
>>> ad = compute_adata(t)
>>> ad.a
[0, 1, 2, 2, 2, 2, 3, 6]
>>> sorted(t.name(d) for d in duflo_set(ad))
['1', '121', '1212', '2', '212', 'e']
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .cells import CellPartition, cells
from .coxeter import GroupTable, enumerate_group, parabolic_embedding
from .errors import ScopeTooLarge, UncertifiedBall
from .hecke import Coords, _acc, _lmul_gen, _mul_coords
from .kl import KLTable, kl_table
from .laurent import ONE, ZERO, LaurentPoly

__all__ = [
    "AData", "h_table", "h_struct", "f_table", "bound", "compute_adata",
    "a_value", "gamma", "delta_n", "duflo_set", "check_conjectures",
    "dihedral_a_certificate", "auxiliary_checks", "DEFAULT_P15_CAP",
]

DEFAULT_P15_CAP = 250_000_000  # quadruples (x, x', w, y); above this only generator pairs are checked

HRows = list[list[Coords | None]]


def _available(table: GroupTable, x: int, y: int) -> bool:
    return table.radius is None or table.length[x] + table.length[y] <= table.radius


def h_table(table: GroupTable, kt: KLTable | None = None) -> HRows:
    """h[x][y] = {z: h_{x,y,z}}; None where the product is not determined by the ball."""
    kt = kt or kl_table(table)
    n = len(table)
    h: HRows = [[None] * n for _ in range(n)]
    for x in sorted(range(n), key=table.length.__getitem__):
        if x == 0:
            h[0] = [{y: ONE} if _available(table, 0, y) else None for y in range(n)]
            continue
        s = table.words[x][0]
        x1 = table.left[x][s]
        col = kt.mu_column(s, x1)
        hx1 = h[x1]
        row = h[x]
        for y in range(n):
            if not _available(table, x, y):
                continue
            r = kt.lmul_gen_c(s, hx1[y])
            for z, m in col.items():
                for u, a in h[z][y].items():
                    _acc(r, u, -(m * a))
            row[y] = r
    return h


def h_struct(table: GroupTable, x: int, y: int, kt: KLTable | None = None) -> Coords:
    """c_x c_y through the T-basis product and the triangular inverse."""
    kt = kt or kl_table(table)
    prod = _mul_coords(table, kt.row(x), kt.row(y))
    return kt.to_c(prod)


def f_table(table: GroupTable) -> HRows:
    """f[x][y] = {z: f_{x,y,z}} with T_x T_y = sum_z f_{x,y,z} T_z."""
    n = len(table)
    f: HRows = [[None] * n for _ in range(n)]
    for x in sorted(range(n), key=table.length.__getitem__):
        if x == 0:
            f[0] = [{y: ONE} if _available(table, 0, y) else None for y in range(n)]
            continue
        s = table.words[x][0]
        x1 = table.left[x][s]
        for y in range(n):
            if _available(table, x, y):
                f[x][y] = _lmul_gen(table, s, f[x1][y])
    return f


def bound(table: GroupTable, f: HRows | None = None) -> int:
    """Least N with v^-N f_{x,y,z} in Z[v^-1] over all computed products."""
    f = f if f is not None else f_table(table)
    best = 0
    for row in f:
        for r in row:
            if r:
                for a in r.values():
                    best = max(best, a.max_degree())
    return best


def dihedral_a_certificate(table: GroupTable) -> list[int] | None:
    """
    Closed-form a-values for the infinite dihedral group: a(1) = 0, the two
    generators get their own weights, every other element gets max(L1, L2).
    Returns None for any other system.
    """
    sysm = table.system
    if sysm.rank != 2 or sysm.bond(0, 1) is not None:
        return None
    top = max(sysm.weights)
    out = []
    for w in range(len(table)):
        word = table.words[w]
        if not word:
            out.append(0)
        elif len(word) == 1:
            out.append(sysm.weights[word[0]])
        else:
            out.append(top)
    return out


@dataclass
class AData:
    table: GroupTable
    kt: KLTable
    h: HRows
    a: list[int]
    certified: bool
    gamma: dict[tuple[int, int, int], int]   # gamma[x, y, z] = gamma_{x,y,z}
    delta: list[int]
    nz: list[int]
    dset: frozenset[int]
    observed_a: list[int | None] = field(default_factory=list)
    _bound: int | None = None

    def h_coeff(self, x: int, y: int, z: int) -> LaurentPoly:
        row = self.h[x][y]
        if row is None:
            raise UncertifiedBall("product outside the ball")
        return row.get(z, ZERO)

    def g(self, x: int, y: int, z: int) -> int:
        return self.gamma.get((x, y, z), 0)

    def gamma_known(self, x: int, y: int, z: int) -> bool:
        return self.h[x][y] is not None

    @property
    def bound(self) -> int:
        if self._bound is None:
            self._bound = bound(self.table)
        return self._bound


def delta_n(kt: KLTable, z: int) -> tuple[int, int]:
    """(Delta(z), n_z): p_{1,z} = n_z v^-Delta(z) + lower powers."""
    p = kt.row(z)[0]
    top = p.max_degree()
    return -top, p.coeff(top)


def compute_adata(table: GroupTable, kt: KLTable | None = None) -> AData:
    kt = kt or kl_table(table)
    h = h_table(table, kt)
    n = len(table)
    observed: list[int | None] = [None] * n
    for row in h:
        for r in row:
            if r:
                for z, a in r.items():
                    d = a.max_degree()
                    if observed[z] is None or d > observed[z]:
                        observed[z] = d
    if table.complete:
        a = [0 if d is None else d for d in observed]
        certified = True
    else:
        cert = dihedral_a_certificate(table)
        certified = cert is not None and all(
            observed[z] is not None and observed[z] <= cert[z]
            and (table.length[z] >= table.radius or observed[z] == cert[z])
            for z in range(n))
        a = cert if certified else [0 if d is None else d for d in observed]
    inv = table.inverse
    gam: dict[tuple[int, int, int], int] = {}
    for x in range(n):
        for y in range(n):
            r = h[x][y]
            if not r:
                continue
            for z, poly in r.items():
                c = poly.coeff(a[z])
                if c:
                    gam[(x, y, inv[z])] = c
    delta, nz = [], []
    for z in range(n):
        d, c = delta_n(kt, z)
        delta.append(d)
        nz.append(c)
    dset = frozenset(z for z in range(n) if a[z] == delta[z])
    return AData(table, kt, h, a, certified, gam, delta, nz, dset, observed)


def a_value(ad: AData, z: int) -> int:
    if not ad.certified:
        raise UncertifiedBall(f"a({ad.table.name(z)}) has no certificate on this ball")
    return ad.a[z]


def gamma(ad: AData, x: int, y: int, z: int) -> int:
    if not ad.certified:
        raise UncertifiedBall("gamma needs certified a-values")
    return ad.g(x, y, z)


def duflo_set(ad: AData) -> frozenset[int]:
    return ad.dset


# -- conjecture checker

def _names(t: GroupTable, **kw: int) -> dict[str, str]:
    return {k: t.name(v) for k, v in kw.items()}


def _p15_pairs(ad: AData, xs: list[int], xps: list[int]) -> dict | None:
    """
    For x in xs, x' in xps and all w, y with a(w) = a(y), compare
    sum_y' h'_{w,x',y'} h_{x,y',y} with sum_y' h_{x,w,y'} h'_{y',x',y},
    as polynomials in two independent variables. Returns a counterexample or None.
    """
    t, h, a = ad.table, ad.h, ad.a
    n = len(t)
    for x in xs:
        for xp in xps:
            for w in range(n):
                lhs: dict[tuple[int, int, int], int] = {}
                rhs: dict[tuple[int, int, int], int] = {}
                aw = a[w]
                for y1, q in h[w][xp].items():        # h'_{w,x',y1}
                    for y, p in h[x][y1].items():     # h_{x,y1,y}
                        if a[y] != aw:
                            continue
                        for i, c1 in p._c.items():
                            for j, c2 in q._c.items():
                                k = (y, i, j)
                                lhs[k] = lhs.get(k, 0) + c1 * c2
                for y1, p in h[x][w].items():         # h_{x,w,y1}
                    for y, q in h[y1][xp].items():    # h'_{y1,x',y}
                        if a[y] != aw:
                            continue
                        for i, c1 in p._c.items():
                            for j, c2 in q._c.items():
                                k = (y, i, j)
                                rhs[k] = rhs.get(k, 0) + c1 * c2
                lhs = {k: c for k, c in lhs.items() if c}
                rhs = {k: c for k, c in rhs.items() if c}
                if lhs != rhs:
                    bad = next(k for k in set(lhs) | set(rhs) if lhs.get(k, 0) != rhs.get(k, 0))
                    return {**_names(t, x=x, xprime=xp, w=w, y=bad[0]),
                            "v_exponent": bad[1], "vprime_exponent": bad[2],
                            "lhs": lhs.get(bad, 0), "rhs": rhs.get(bad, 0)}
    return None


def check_conjectures(ad: AData, part: CellPartition | None = None, cap_p15: int = DEFAULT_P15_CAP,
                      parabolic: Callable[[GroupTable, list[int]], list[int]] | None = None) -> list[dict]:
    """
    Check P1-P15 on a complete finite table. One report per property:
    {"conjecture": "P7", "status": "pass"|"fail", "counterexample": {...} | None}.
    P15 is checked over all quadruples when there are at most ``cap_p15`` of
    them; above the cap it is checked for x, x' generators, which together
    with P4 is equivalent (the graded bimodule is generated by the c_s).
    """
    t = ad.table
    if not t.complete:
        raise ScopeTooLarge("the conjecture checker needs a complete finite table")
    if not ad.certified:
        raise UncertifiedBall("a-values are not certified")
    part = part or cells(t, ad.kt)
    n = len(t)
    inv, a, D, g = t.inverse, ad.a, ad.dset, ad.gamma
    reports: list[dict] = []

    def report(name: str, cex: dict | None, **extra) -> None:
        reports.append({"conjecture": name, "status": "fail" if cex else "pass",
                        "counterexample": cex, **extra})

    # P1
    cex = next((_names(t, z=z) | {"a": a[z], "Delta": ad.delta[z]}
                for z in range(n) if a[z] > ad.delta[z]), None)
    report("P1", cex)

    # P2
    cex = next((_names(t, x=x, y=y, d=d) | {"gamma": c}
                for (x, y, d), c in sorted(g.items()) if d in D and x != inv[y]), None)
    report("P2", cex)

    # P3
    cex = None
    for y in range(n):
        hits = [d for d in sorted(D) if g.get((inv[y], y, d), 0)]
        if len(hits) != 1:
            cex = _names(t, y=y) | {"d_with_nonzero_gamma": [t.name(d) for d in hits]}
            break
    report("P3", cex)

    # P4
    cex = None
    for z in range(n):
        for z2 in part.reach["two"][z]:
            if a[z2] < a[z]:
                cex = _names(t, zprime=z2, z=z) | {"a(z')": a[z2], "a(z)": a[z]}
                break
        if cex:
            break
    report("P4", cex)

    # P5
    cex = None
    for y in range(n):
        for d in D:
            c = g.get((inv[y], y, d), 0)
            if c and (c != ad.nz[d] or abs(c) != 1):
                cex = _names(t, y=y, d=d) | {"gamma": c, "n_d": ad.nz[d]}
                break
        if cex:
            break
    report("P5", cex)

    # P6
    cex = next((_names(t, d=d) for d in sorted(D) if t.mul(d, d) != 0), None)
    report("P6", cex)

    # P7
    cex = None
    for (x, y, z), c in sorted(g.items()):
        if g.get((y, z, x), 0) != c:
            cex = _names(t, x=x, y=y, z=z) | {"gamma_xyz": c, "gamma_yzx": g.get((y, z, x), 0)}
            break
    if cex is None:
        # the cyclic image of a zero must be zero as well
        for (x, y, z), c in g.items():
            if g.get((z, x, y), 0) != c:
                cex = _names(t, x=z, y=x, z=y) | {"gamma_xyz": 0, "gamma_yzx": c}
                break
    report("P7", cex)

    # P8
    cex = None
    for (x, y, z) in sorted(g):
        if not (part.equiv("left", x, inv[y]) and part.equiv("left", y, inv[z]) and part.equiv("left", z, inv[x])):
            cex = _names(t, x=x, y=y, z=z)
            break
    report("P8", cex)

    # P9, P10, P11
    for name, kind in (("P9", "left"), ("P10", "right"), ("P11", "two")):
        cex = None
        for z in range(n):
            for z2 in part.reach[kind][z]:
                if a[z2] == a[z] and not part.equiv(kind, z2, z):
                    cex = _names(t, zprime=z2, z=z) | {"a": a[z]}
                    break
            if cex:
                break
        report(name, cex)

    # P12
    cex = None
    rank = t.system.rank
    for k in range(1, rank):
        for I in combinations(range(rank), k):
            sub = enumerate_group(t.system.restrict(I))
            sub_ad = compute_adata(sub)
            emb = parabolic_embedding(t, sub, I)
            for y in range(len(sub)):
                if sub_ad.a[y] != a[emb[y]]:
                    cex = {"subset": [t.system.generators[i] for i in I], "y": t.name(emb[y]),
                           "a_in_parabolic": sub_ad.a[y], "a_in_W": a[emb[y]]}
                    break
            if cex:
                break
        if cex:
            break
    report("P12", cex)

    # P13
    cex = None
    for c in part.left_cells:
        ds = [d for d in sorted(c) if d in D]
        if len(ds) != 1:
            cex = {"left_cell": sorted(t.name(w) for w in c), "D_elements": [t.name(d) for d in ds]}
            break
        d = ds[0]
        miss = next((x for x in sorted(c) if not g.get((inv[x], x, d), 0)), None)
        if miss is not None:
            cex = _names(t, x=miss, d=d)
            break
    report("P13", cex)

    # P14
    cex = next((_names(t, z=z) for z in range(n) if not part.equiv("two", z, inv[z])), None)
    report("P14", cex)

    # P15
    quads = n ** 4
    if quads <= cap_p15:
        mode, xs = "full", list(range(n))
    else:
        mode, xs = "generators", [t.lmul(s, 0) for s in range(rank)]
    cex = _p15_pairs(ad, xs, xs)
    report("P15", cex, mode=mode, quadruples=quads, cap=cap_p15)
    return reports


def auxiliary_checks(ad: AData, part: CellPartition | None = None) -> dict[str, dict]:
    """Consequences checked alongside P1-P15 on finite tables."""
    t = ad.table
    n = len(t)
    inv = t.inverse
    out: dict[str, dict] = {}

    def put(name: str, cex: dict | None) -> None:
        out[name] = {"status": "fail" if cex else "pass", "counterexample": cex}

    # sum_{d in D} gamma_{y^-1,y,d} n_d = 1
    put("unit_identity", next((_names(t, y=y) for y in range(n)
                               if sum(ad.g(inv[y], y, d) * ad.nz[d] for d in ad.dset) != 1), None))
    min_l = min(t.system.weights)
    put("a_positive_off_identity", next((_names(t, z=z) for z in range(1, n) if ad.a[z] < min_l), None))
    put("delta_in_range", next((_names(t, z=z) | {"Delta": ad.delta[z]} for z in range(1, n)
                                if not 0 < ad.delta[z] <= t.weight[z]), None))
    if t.complete:
        w0 = t.longest()
        put("a_of_longest", None if ad.a[w0] == t.weight[w0] else _names(t, w0=w0))
        put("a_below_longest", next((_names(t, w=w) for w in range(n) if w != w0 and ad.a[w] >= t.weight[w0]), None))
    put("a_inverse", next((_names(t, z=z) for z in range(n) if ad.a[z] != ad.a[inv[z]]), None))
    put("gamma_inverse", next((_names(t, x=x, y=y, z=z) for (x, y, z), c in ad.gamma.items()
                               if ad.g(inv[y], inv[x], inv[z]) != c), None))
    put("h_inverse", next((_names(t, x=x, y=y) for x in range(n) for y in range(n)
                           if ad.h[x][y] is not None and ad.h[inv[y]][inv[x]] is not None
                           and {inv[z]: p for z, p in ad.h[x][y].items()} != ad.h[inv[y]][inv[x]]), None))
    if part is not None:
        put("h_support_in_cells", next((_names(t, x=x, y=y, z=z) for x in range(n) for y in range(n)
                                        if ad.h[x][y] is not None
                                        for z in ad.h[x][y]
                                        if not (part.leq("right", z, x) and part.leq("left", z, y))), None))
    return out
