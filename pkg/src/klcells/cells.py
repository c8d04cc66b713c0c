"""
Left, right and two-sided cells.

An arrow w' -> w (left flavour) records that c_w occurs in some c_s c_{w'};
then w <=_L w'. The preorders are the reachability relations of these
graphs and cells are their strongly connected components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .coxeter import GroupTable
from .errors import BallExceeded, InfiniteGroup
from .kl import KLTable, kl_table
from .laurent import LaurentPoly

__all__ = [
    "CellPartition", "left_arrows", "right_arrows", "cells",
    "descent_invariant_check", "cell_module", "w0_cell_duality", "to_dot",
]

Graph = dict[int, set[int]]


def _arrows(kt: KLTable, side: str) -> tuple[Graph, set[int]]:
    table = kt.table
    graph: Graph = {w: set() for w in range(len(table))}
    unknown: set[int] = set()
    for w in range(len(table)):
        for s in range(table.system.rank):
            try:
                prod = kt.cs_times_cw(s, w, side)
            except BallExceeded:
                unknown.add(w)
                continue
            graph[w].update(z for z in prod if z != w)
    return graph, unknown


def left_arrows(table: GroupTable, kt: KLTable | None = None) -> Graph:
    """{w': {w : c_w occurs in c_s c_w' for some s}}, self-loops dropped."""
    return _arrows(kt or kl_table(table), "left")[0]


def right_arrows(table: GroupTable, kt: KLTable | None = None) -> Graph:
    return _arrows(kt or kl_table(table), "right")[0]


@dataclass
class CellPartition:
    table: GroupTable
    arrows: dict[str, Graph]               # "left", "right", "two"
    cells: dict[str, list[frozenset[int]]]
    cell_of: dict[str, list[int]]
    reach: dict[str, list[frozenset[int]]]  # reach[k][w'] = {w : w <=_k w'}
    open_cells: dict[str, list[int]] = field(default_factory=dict)

    @property
    def left_cells(self) -> list[frozenset[int]]:
        return self.cells["left"]

    @property
    def right_cells(self) -> list[frozenset[int]]:
        return self.cells["right"]

    @property
    def two_sided_cells(self) -> list[frozenset[int]]:
        return self.cells["two"]

    def leq(self, kind: str, w: int, w2: int) -> bool:
        """w <=_kind w2."""
        return w in self.reach[kind][w2]

    def equiv(self, kind: str, w: int, w2: int) -> bool:
        return self.cell_of[kind][w] == self.cell_of[kind][w2]

    def cell(self, kind: str, w: int) -> frozenset[int]:
        return self.cells[kind][self.cell_of[kind][w]]


def cells(table: GroupTable, kt: KLTable | None = None) -> CellPartition:
    """
    Cells as strongly connected components of the arrow graphs. On a ball, an
    element whose products leave the ball has unknown arrows; any class
    touching such an element is listed in ``open_cells``.
    """
    kt = kt or kl_table(table)
    left, unk_l = _arrows(kt, "left")
    right, unk_r = _arrows(kt, "right")
    two = {w: left[w] | right[w] for w in left}
    arrows = {"left": left, "right": right, "two": two}
    unknown = {"left": unk_l, "right": unk_r, "two": unk_l | unk_r}
    out_cells, cell_of, reach, open_cells = {}, {}, {}, {}
    for kind, g in arrows.items():
        G = nx.DiGraph()
        G.add_nodes_from(g)
        G.add_edges_from((a, b) for a, bs in g.items() for b in bs)
        comps = sorted((frozenset(c) for c in nx.strongly_connected_components(G)), key=min)
        idx = [0] * len(table)
        for i, c in enumerate(comps):
            for w in c:
                idx[w] = i
        # reachability via the condensation, in reverse topological order
        C = nx.condensation(G, scc=[set(c) for c in comps])
        down: dict[int, frozenset[int]] = {}
        for node in reversed(list(nx.topological_sort(C))):
            acc = set(C.nodes[node]["members"])
            for succ in C.successors(node):
                acc |= down[succ]
            down[node] = frozenset(acc)
        mapping = C.graph["mapping"]
        reach[kind] = [down[mapping[w]] for w in range(len(table))]
        out_cells[kind] = comps
        cell_of[kind] = idx
        bad = unknown[kind]
        touched = set(bad)
        for a in bad:
            touched |= {b for b in range(len(table)) if a in g[b]}
        open_cells[kind] = sorted({idx[w] for w in touched})
    return CellPartition(table, arrows, out_cells, cell_of, reach, open_cells)


def descent_invariant_check(part: CellPartition) -> dict:
    """Right descents constant on left cells (left on right), and R(w') within R(w) when w <=_L w'."""
    t = part.table
    closed = lambda kind, c: part.cell_of[kind][next(iter(c))] not in part.open_cells.get(kind, [])
    for c in part.left_cells:
        if closed("left", c) and len({t.rdesc[w] for w in c}) > 1:
            return {"status": "fail", "counterexample": {"left_cell": sorted(t.name(w) for w in c)}}
    for c in part.right_cells:
        if closed("right", c) and len({t.ldesc[w] for w in c}) > 1:
            return {"status": "fail", "counterexample": {"right_cell": sorted(t.name(w) for w in c)}}
    for w2 in range(len(t)):
        for w in part.reach["left"][w2]:
            if not t.rdesc[w2] <= t.rdesc[w]:
                return {"status": "fail", "counterexample": {"w": t.name(w), "w'": t.name(w2)}}
    return {"status": "pass", "counterexample": None}


def cell_module(part: CellPartition, cell: Iterable[int], kt: KLTable | None = None) -> dict[int, list[list[LaurentPoly]]]:
    """
    Matrices of c_s on the left cell module with basis the images of c_w,
    w in the cell (ordered by index): entry [z][w] is the c_z coefficient of c_s c_w.
    """
    kt = kt or kl_table(part.table)
    basis = sorted(cell)
    pos = {w: i for i, w in enumerate(basis)}
    out = {}
    for s in range(part.table.system.rank):
        m = [[LaurentPoly() for _ in basis] for _ in basis]
        for w in basis:
            for z, a in kt.cs_times_cw(s, w).items():
                if z in pos:
                    m[pos[z]][pos[w]] = a
        out[s] = m
    return out


def w0_cell_duality(part: CellPartition) -> dict:
    """y <=_L w iff w w0 <=_L y w0 iff w0 w <=_L w0 y; w -> w w0 and w -> w0 w permute cells."""
    t = part.table
    if not t.complete:
        raise InfiniteGroup("needs a complete finite table")
    w0 = t.longest()
    n = len(t)
    rw = [t.mul(w, w0) for w in range(n)]
    lw = [t.mul(w0, w) for w in range(n)]
    for kind in ("left", "right", "two"):
        for w in range(n):
            for y in range(n):
                a = part.leq(kind, y, w)
                if a != part.leq(kind, rw[w], rw[y]) or a != part.leq(kind, lw[w], lw[y]):
                    return {"status": "fail", "counterexample": {"kind": kind, "y": t.name(y), "w": t.name(w)}}
        cellset = set(part.cells[kind])
        for c in part.cells[kind]:
            if frozenset(rw[w] for w in c) not in cellset or frozenset(lw[w] for w in c) not in cellset:
                return {"status": "fail", "counterexample": {"kind": kind, "cell": sorted(t.name(w) for w in c)}}
    return {"status": "pass", "counterexample": None}


def to_dot(part: CellPartition, kind: str = "left") -> str:
    t = part.table
    g = part.arrows[kind]
    lines = [f'digraph "{kind}_cells" {{', "  rankdir=BT;"]
    for i, c in enumerate(part.cells[kind]):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="{kind} cell {i}";')
        for w in sorted(c):
            lines.append(f'    n{w} [label="{t.name(w)}"];')
        lines.append("  }")
    for a in sorted(g):
        for b in sorted(g[a]):
            lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
