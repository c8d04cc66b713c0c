"""
Kazhdan-Lusztig basis c_w = sum_y p_{y,w} T_y for positive weights.

Each row p_{-,w} is obtained from the r-polynomials alone: writing
a_x = sum_{x<y<=w} r_{x,y} p_{y,w}, bar-invariance of c_w reads
bar(p_{x,w}) - p_{x,w} = a_x, and since p_{x,w} has only negative powers of v
for x < w, it is minus the negative-degree part of a_x. Rows are filled by
descending length of x.

The tables also carry the mu-polynomials governing c_s c_w, the inverse
matrix q' (so that T_y = sum_z q'_{z,y} c_z), and the dual functionals D_z.

>>> from klcells.coxeter import enumerate_group, named_system
>>> t = enumerate_group(named_system("B2", (1, 2)))
>>> row = kl_row(t, t.element((1, 0, 1)))
>>> row[t.element((1,))], row[0]
(LaurentPoly('-v^-1 + v^-3'), LaurentPoly('-v^-3 + v^-5'))
"""

from __future__ import annotations

from typing import Mapping

from .coxeter import GroupTable, bruhat_lower
from .errors import BallExceeded, DomainError, InfiniteGroup
from .hecke import Coords, HeckeElt, RTable, _acc, dagger, r_table, rmul_inverse_T
from .laurent import ONE, ZERO, LaurentPoly, qsum, vpow

__all__ = [
    "KLTable", "kl_table", "kl_row", "c_element", "mu", "cs_times_cw",
    "q_table", "d_functional", "w0_dualities",
]


class KLTable:
    """
    Lazily filled p, mu and q' tables over one group table.

    ``p_rows[w]`` maps y to p_{y,w} (only y <= w stored, zero entries absent);
    ``qp_rows[w]`` maps y to q'_{y,w}.
    """

    def __init__(self, table: GroupTable, rt: RTable | None = None):
        self.table = table
        self.rt = rt or r_table(table)
        self.below = bruhat_lower(table)
        self.p_rows: list[dict[int, LaurentPoly] | None] = [None] * len(table)
        self._mu: dict[tuple[int, int], dict[int, LaurentPoly]] = {}
        self.qp_rows: list[dict[int, LaurentPoly]] | None = None

    # -- p

    def row(self, w: int) -> dict[int, LaurentPoly]:
        r = self.p_rows[w]
        if r is None:
            r = self._compute_row(w)
            self.p_rows[w] = r
        return r

    def _compute_row(self, w: int) -> dict[int, LaurentPoly]:
        table, rrows = self.table, self.rt.rows
        interval = table.by_length_desc(self.below[w])
        row: dict[int, LaurentPoly] = {w: ONE}
        for x in interval[1:]:
            acc: dict[int, int] = {}
            for y, pyw in row.items():
                rxy = rrows[y].get(x)
                if rxy is None:
                    continue
                for e1, c1 in rxy._c.items():
                    for e2, c2 in pyw._c.items():
                        e = e1 + e2
                        acc[e] = acc.get(e, 0) + c1 * c2
            px = LaurentPoly({e: -c for e, c in acc.items() if e < 0})
            if px:
                row[x] = px
        return row

    def p(self, y: int, w: int) -> LaurentPoly:
        return self.row(w).get(y, ZERO)

    def build_all(self) -> KLTable:
        for w in range(len(self.table)):
            self.row(w)
        return self

    # -- mu

    def mu_column(self, s: int, w: int) -> dict[int, LaurentPoly]:
        """{z: mu^s_{z,w}} over sz < z < w, for w < sw."""
        key = (s, w)
        col = self._mu.get(key)
        if col is not None:
            return col
        table = self.table
        if s in table.ldesc[w]:
            raise DomainError(f"mu^s_(-,w) needs w < sw (s={s}, w={table.name(w)})")
        vs = vpow(table.system.weights[s])
        prow = self.row(w)
        col = {}
        for z in table.by_length_desc(self.below[w]):
            if z == w or s not in table.ldesc[z]:
                continue
            t = vs * prow[z] if z in prow else ZERO
            for z2, m in col.items():
                pz = self.row(z2).get(z)
                if pz is not None:
                    t = t - pz * m
            nonneg = t.part_at_least(0)
            m = nonneg + nonneg.part_at_least(1).bar()
            if m:
                col[z] = m
        self._mu[key] = col
        return col

    def mu(self, s: int, y: int, w: int) -> LaurentPoly:
        table = self.table
        if not (s in table.ldesc[y] and s not in table.ldesc[w] and y != w and y in self.below[w]):
            raise DomainError("mu^s_{y,w} is defined only for sy < y < w < sw")
        return self.mu_column(s, w).get(y, ZERO)

    # -- products with generators in the c-basis

    def cs_times_cw(self, s: int, w: int, side: str = "left") -> dict[int, LaurentPoly]:
        table = self.table
        if side == "right":
            inv = table.inverse
            return {inv[z]: a for z, a in self.cs_times_cw(s, inv[w], "left").items()}
        if s in table.ldesc[w]:
            return {w: qsum(table.system.weights[s])}
        sw = table.left[w][s]
        if sw < 0:
            raise BallExceeded(f"c_s{s + 1} c_{table.name(w)} leaves the ball")
        out = {sw: ONE}
        out.update(self.mu_column(s, w))
        return out

    def lmul_gen_c(self, s: int, coords: Mapping[int, LaurentPoly]) -> Coords:
        """c_s * (sum_w a_w c_w) in c-coordinates."""
        out: Coords = {}
        for w, a in coords.items():
            for z, b in self.cs_times_cw(s, w).items():
                _acc(out, z, a * b)
        return out

    def rmul_gen_c(self, s: int, coords: Mapping[int, LaurentPoly]) -> Coords:
        out: Coords = {}
        for w, a in coords.items():
            for z, b in self.cs_times_cw(s, w, "right").items():
                _acc(out, z, a * b)
        return out

    # -- inverse matrix

    def qprime_rows(self) -> list[dict[int, LaurentPoly]]:
        """qp[w][y] = q'_{y,w}, from sum_z q'_{y,z} p_{z,w} = delta_{y,w}."""
        if self.qp_rows is not None:
            return self.qp_rows
        table = self.table
        qp: list[dict[int, LaurentPoly]] = [dict() for _ in range(len(table))]
        for w in sorted(range(len(table)), key=table.length.__getitem__):
            acc: Coords = {}
            for z, pzw in self.row(w).items():
                if z == w:
                    continue
                for y, qyz in qp[z].items():
                    _acc(acc, y, -(qyz * pzw))
            acc[w] = ONE
            qp[w] = acc
        self.qp_rows = qp
        return qp

    def qprime(self, y: int, w: int) -> LaurentPoly:
        return self.qprime_rows()[w].get(y, ZERO)

    def q(self, y: int, w: int) -> LaurentPoly:
        a = self.qprime(y, w)
        return a if table_sign(self.table, y, w) > 0 else -a

    # -- basis changes

    def to_T(self, coords: Mapping[int, LaurentPoly]) -> Coords:
        out: Coords = {}
        for w, a in coords.items():
            for y, p in self.row(w).items():
                _acc(out, y, a * p)
        return out

    def to_c(self, coords: Mapping[int, LaurentPoly]) -> Coords:
        qp = self.qprime_rows()
        out: Coords = {}
        for y, a in coords.items():
            for z, q in qp[y].items():
                _acc(out, z, a * q)
        return out


def table_sign(table: GroupTable, y: int, w: int) -> int:
    return -1 if (table.length[y] + table.length[w]) % 2 else 1


def kl_table(table: GroupTable) -> KLTable:
    """Shared KL table of a group table (built on first use, cached)."""
    cached = getattr(table, "_kl", None)
    if cached is None:
        cached = KLTable(table)
        table._kl = cached  # type: ignore[attr-defined]
    return cached


def kl_row(table: GroupTable, w: int) -> dict[int, LaurentPoly]:
    return kl_table(table).row(w)


def c_element(table: GroupTable, w: int) -> HeckeElt:
    """c_w in the T-basis."""
    return HeckeElt(table, kl_row(table, w), "T")


def mu(table: GroupTable, s: int, y: int, w: int) -> LaurentPoly:
    return kl_table(table).mu(s, y, w)


def cs_times_cw(table: GroupTable, s: int, w: int, side: str = "left") -> dict[int, LaurentPoly]:
    return kl_table(table).cs_times_cw(s, w, side)


def q_table(table: GroupTable) -> tuple[dict[tuple[int, int], LaurentPoly], dict[tuple[int, int], LaurentPoly]]:
    """(q, q') as dictionaries keyed by (y, w) with y <= w."""
    kt = kl_table(table)
    qp = kt.qprime_rows()
    qprime = {(y, w): a for w, row in enumerate(qp) for y, a in row.items()}
    q = {(y, w): (a if table_sign(table, y, w) > 0 else -a) for (y, w), a in qprime.items()}
    return q, qprime


def d_functional(table: GroupTable, z: int, h: HeckeElt) -> LaurentPoly:
    """D_z(h), where D_z(c_w) = delta_{z,w}."""
    if h.basis == "c":
        return h.coeff(z)
    qp = kl_table(table).qprime_rows()
    total = ZERO
    for y, a in h.coords.items():
        q = qp[y].get(z)
        if q is not None:
            total = total + a * q
    return total


def functional_as_sum(table: GroupTable, z: int) -> Coords:
    """D_z as the formal sum sum_x D_z(T_{x^-1}) T_x."""
    qp = kl_table(table).qprime_rows()
    inv = table.inverse
    return {x: qp[inv[x]][z] for x in range(len(table)) if z in qp[inv[x]]}


def w0_dualities(table: GroupTable) -> dict:
    """
    Exhaustive check of the three w0-symmetries of a finite group:
    q_{y,w} = p_{w w0, y w0} = p_{w0 w, w0 y};
    D_{z^-1} T_{w0}^-1 = sgn(z w0) dagger(c_{z w0});
    mu^s_{u w0, z w0} = -sgn(uz) mu^s_{z,u} whenever sz < z < u < su.
    Returns {"status": "pass"|"fail", "checks": {...}, "counterexample": ...}.
    """
    if not table.complete:
        raise InfiniteGroup("w0 dualities need a complete finite table")
    kt = kl_table(table)
    w0 = table.longest()
    n = len(table)
    inv = table.inverse
    rw = [table.mul(w, w0) for w in range(n)]
    lw = [table.mul(w0, w) for w in range(n)]
    report: dict = {"status": "pass", "checks": {}, "counterexample": None}

    def fail(check: str, data: dict) -> dict:
        report["status"] = "fail"
        report["checks"][check] = "fail"
        report["counterexample"] = {"check": check, **data}
        return report

    for y in range(n):
        for w in range(n):
            q = kt.q(y, w)
            if q != kt.p(rw[w], rw[y]) or q != kt.p(lw[w], lw[y]):
                return fail("q_vs_reversed_p", {"y": table.name(y), "w": table.name(w), "q": str(q)})
    report["checks"]["q_vs_reversed_p"] = "pass"

    qp = kt.qprime_rows()
    for z in range(n):
        zi = inv[z]
        # D_{z^-1} as an element of H: sum_y q'_{z^-1, y^-1} T_y
        d = {y: qp[inv[y]][zi] for y in range(n) if zi in qp[inv[y]]}
        lhs = rmul_inverse_T(table, d, w0)
        zw0 = rw[z]
        rhs = dagger(HeckeElt(table, kt.row(zw0)))
        if table.sgn(zw0) < 0:
            rhs = -rhs
        if HeckeElt(table, lhs) != rhs:
            return fail("dual_functional_vs_dagger", {"z": table.name(z)})
    report["checks"]["dual_functional_vs_dagger"] = "pass"

    for s in range(table.system.rank):
        for u in range(n):
            if s in table.ldesc[u]:
                continue
            col = kt.mu_column(s, u)
            for z in kt.below[u]:
                if z == u or s not in table.ldesc[z]:
                    continue
                a, b = rw[u], rw[z]
                where = {"s": table.system.generators[s], "z": table.name(z), "u": table.name(u)}
                if s not in table.ldesc[a] or s in table.ldesc[b]:
                    return fail("mu_w0_symmetry", where)
                m = col.get(z, ZERO)
                expect = -m if table_sign(table, u, z) > 0 else m
                if kt.mu(s, a, b) != expect:
                    return fail("mu_w0_symmetry", where)
    report["checks"]["mu_w0_symmetry"] = "pass"
    return report
