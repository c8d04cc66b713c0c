"""
Command-line front end.

    klcells group  --type B2 --weights 1,2
    klcells kl     --type A3
    klcells cells  --type I2m --m 4 --format dot
    klcells afun   --type I2inf --weights 1,2 --radius 12
    klcells check  --type B2 --weights 1,2
    klcells jring  --type B2 --weights 1,2
    klcells symbols --a 1 --b 2 --n 2

JSON output is deterministic (sorted keys, fixed element order) and carries
a "schema" field naming the document kind and its version.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .afun import DEFAULT_P15_CAP, auxiliary_checks, check_conjectures, compute_adata
from .cells import cells, descent_invariant_check, to_dot
from .coxeter import (
    DEFAULT_CLASS_CAP, DEFAULT_ELEMENT_CAP, GroupTable, WordStore, enumerate_group,
    named_system, validate,
)
from .errors import ALL_ERRORS, ConfigError, InfiniteGroup, KLCellsError
from .jring import build_jring
from .kl import kl_table
from .symbols import (
    admissible_involutions, a_of_symbol, constructible_family, f_of_symbol,
    multisets, stable_size, symbols_of_rank, to_bipartition,
)

__all__ = ["InstanceConfig", "main", "build_parser"]

SCHEMA_VERSION = 1
EXIT_PROPERTY_FAILED = 3


@dataclass(frozen=True)
class InstanceConfig:
    type_name: str | None
    matrix_file: str | None
    weights: tuple[int, ...] | None
    radius: int | None
    cap_braid: int
    cap_elements: int
    cap_p15: int

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> InstanceConfig:
        type_name = ns.type
        if type_name and type_name.upper() == "I2M":
            if ns.m is None:
                raise ConfigError("--type I2m needs --m")
            type_name = f"I2({ns.m})"
        if bool(type_name) == bool(ns.matrix_file):
            raise ConfigError("give exactly one of --type and --matrix-file")
        weights = None
        if ns.weights:
            try:
                weights = tuple(int(x) for x in ns.weights.split(","))
            except ValueError as exc:
                raise ConfigError(f"bad --weights {ns.weights!r}") from exc
        return cls(type_name, ns.matrix_file, weights, ns.radius, ns.cap_braid, ns.cap_elements, ns.cap_p15)

    def table(self) -> GroupTable:
        radius = self.radius
        if self.matrix_file:
            try:
                data = json.loads(Path(self.matrix_file).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read {self.matrix_file}: {exc}") from exc
            weights = self.weights or data.get("weights") or [1] * len(data["matrix"])
            system = validate(data["matrix"], list(weights), data.get("generators"))
            if radius is None and data.get("radius", "full") != "full":
                radius = int(data["radius"])
        else:
            system = named_system(self.type_name, self.weights)
        if radius is None and any(system.bond(i, j) is None
                                  for i in range(system.rank) for j in range(system.rank)):
            raise InfiniteGroup("the group has an infinite bond; pass --radius")
        return enumerate_group(system, radius=radius, cap=self.cap_elements)


def _system_json(t: GroupTable) -> dict:
    s = t.system
    return {"generators": list(s.generators), "matrix": [list(r) for r in s.matrix],
            "weights": list(s.weights), "radius": t.radius if t.radius is not None else "full",
            "size": len(t)}


def _doc(kind: str, t: GroupTable | None, body: dict) -> dict:
    out = {"schema": f"klcells/{kind}/{SCHEMA_VERSION}", **body}
    if t is not None:
        out["system"] = _system_json(t)
    return out


def _gens(t: GroupTable, ss) -> list[str]:
    return [t.system.generators[s] for s in sorted(ss)]


# -- commands: each returns (document, text rendering, exit status)

def cmd_group(cfg: InstanceConfig, ns) -> tuple[dict, str, int]:
    t = cfg.table()
    rows = [{"index": w, "word": t.name(w), "length": t.length[w], "weight": t.weight[w],
             "left_descents": _gens(t, t.ldesc[w]), "right_descents": _gens(t, t.rdesc[w])}
            for w in range(len(t))]
    body = {"elements": rows}
    if ns.word is not None:
        letters = [t.system.generators.index(x) for x in ns.word.split(",") if x]
        store = WordStore(t.system, cfg.cap_braid)
        word = store.canonical(letters)
        body["query"] = {"word": ns.word, "canonical": t.name(t.index[word]) if word in t.index else ".".join(
            t.system.generators[s] for s in word),
                         "reduced": store.is_reduced(letters)}
    lines = [f"{r['index']:>5}  {r['word']:<20} l={r['length']:<3} L={r['weight']:<4} "
             f"DL={','.join(r['left_descents']) or '-'} DR={','.join(r['right_descents']) or '-'}" for r in rows]
    return _doc("group", t, body), "\n".join(lines), 0


def cmd_kl(cfg: InstanceConfig, ns) -> tuple[dict, str, int]:
    t = cfg.table()
    kt = kl_table(t).build_all()
    entries = [{"y": t.name(y), "w": t.name(w), "p": str(p)}
               for w in range(len(t)) for y, p in sorted(kt.row(w).items())]
    text = "\n".join(f"p[{e['y']}, {e['w']}] = {e['p']}" for e in entries)
    return _doc("kl", t, {"entries": entries}), text, 0


def cmd_mu(cfg: InstanceConfig, ns) -> tuple[dict, str, int]:
    t = cfg.table()
    kt = kl_table(t)
    entries = []
    for w in range(len(t)):
        for s in range(t.system.rank):
            if s in t.ldesc[w]:
                continue
            for y, m in sorted(kt.mu_column(s, w).items()):
                entries.append({"s": t.system.generators[s], "y": t.name(y), "w": t.name(w), "mu": str(m)})
    text = "\n".join(f"mu^{e['s']}[{e['y']}, {e['w']}] = {e['mu']}" for e in entries)
    return _doc("mu", t, {"entries": entries}), text, 0


def _cell_lists(t: GroupTable, part) -> dict:
    return {kind: [sorted((t.name(w) for w in c), key=lambda n: (len(n), n)) for c in part.cells[kind]]
            for kind in ("left", "right", "two")}


def cmd_cells(cfg: InstanceConfig, ns) -> tuple[dict, str, int]:
    t = cfg.table()
    part = cells(t)
    body = {"cells": _cell_lists(t, part), "open_cells": {k: v for k, v in sorted(part.open_cells.items())},
            "descent_check": descent_invariant_check(part)["status"]}
    if ns.format == "dot":
        return _doc("cells", t, body), to_dot(part, ns.kind), 0
    text = "\n".join(f"{kind}: " + "  ".join("{" + ", ".join(c) + "}" for c in lst)
                     for kind, lst in body["cells"].items())
    return _doc("cells", t, body), text, 0


def cmd_afun(cfg: InstanceConfig, ns) -> tuple[dict, str, int]:
    t = cfg.table()
    ad = compute_adata(t)
    rows = [{"z": t.name(z), "a": ad.a[z], "Delta": ad.delta[z], "n": ad.nz[z],
             "distinguished": z in ad.dset} for z in range(len(t))]
    gam = [{"x": t.name(x), "y": t.name(y), "z": t.name(z), "gamma": c} for (x, y, z), c in sorted(ad.gamma.items())]
    body = {"certified": ad.certified, "values": rows, "gamma": gam,
            "distinguished": [t.name(d) for d in sorted(ad.dset)]}
    text = "\n".join(f"{r['z']:<20} a={r['a']:<3} Delta={r['Delta']:<3} n={r['n']:<3}"
                     f"{' D' if r['distinguished'] else ''}" for r in rows)
    if not ad.certified:
        text += "\n(a-values not certified on this ball)"
    return _doc("afun", t, body), text, 0


def _reports(cfg: InstanceConfig):
    t = cfg.table()
    ad = compute_adata(t)
    part = cells(t, ad.kt)
    return t, ad, part, check_conjectures(ad, part, cap_p15=cfg.cap_p15)


def cmd_check(cfg: InstanceConfig, ns) -> tuple[dict, str, int]:
    t, ad, part, reports = _reports(cfg)
    aux = auxiliary_checks(ad, part)
    ok = all(r["status"] == "pass" for r in reports) and all(v["status"] == "pass" for v in aux.values())
    body = {"conjectures": reports, "auxiliary": {k: aux[k] for k in sorted(aux)}, "all_pass": ok}
    text = "\n".join(f"{r['conjecture']:<4} {r['status']}" for r in reports)
    text += "\n" + "\n".join(f"{k:<26} {v['status']}" for k, v in sorted(aux.items()))
    return _doc("check", t, body), text, 0 if ok else EXIT_PROPERTY_FAILED


def cmd_jring(cfg: InstanceConfig, ns) -> tuple[dict, str, int]:
    t, ad, part, reports = _reports(cfg)
    ring = build_jring(ad, part, reports)
    products = [{"x": t.name(x), "y": t.name(y), "z": t.name(z), "coefficient": c}
                for (x, y), row in sorted(ring.prod.items()) for z, c in sorted(row.items())]
    blocks = ring.blocks()
    checks = {name: getattr(ring, name)()["status"]
              for name in ("unit_check", "left_ideal_check", "multiplicativity_check",
                           "graded_action_check", "injectivity_check")}
    checks["blocks"] = blocks["status"]
    ok = all(v == "pass" for v in checks.values())
    body = {"products": products, "unit": {t.name(d): c for d, c in sorted(ring.unit().coords.items())},
            "blocks": blocks["blocks"], "checks": checks}
    text = "\n".join(f"t[{p['x']}] t[{p['y']}] -> {p['coefficient']:+d} t[{p['z']}]" for p in products)
    text += "\n" + "\n".join(f"{k:<24} {v}" for k, v in sorted(checks.items()))
    return _doc("jring", t, body), text, 0 if ok else EXIT_PROPERTY_FAILED


def cmd_symbols(cfg: InstanceConfig | None, ns) -> tuple[dict, str, int]:
    a, b, n = ns.a, ns.b, ns.n
    syms = symbols_of_rank(a, b, n, ns.rows)
    rows = []
    for s in syms:
        al, be = to_bipartition(s)
        rows.append({"alpha": list(al), "beta": list(be), "top": list(s.top), "bottom": list(s.bottom),
                     "a_value": a_of_symbol(s), "f_value": f_of_symbol(s)})
    families = []
    if b % a == 0:
        for m in multisets(a, b, n, ns.rows if ns.rows is not None else n):
            for inv in admissible_involutions(m.singles, m.r):
                fam = constructible_family(m, inv)
                families.append({"multiset": list(m.entries), "pairs": [list(p) for p in inv.pairs],
                                 "symbols": [s.as_json() for s in fam],
                                 "a_value": a_of_symbol(fam[0])})
    body = {"a": a, "b": b, "n": n, "symbols": rows, "families": families, "stability": stable_size(a, b, n)}
    text = "\n\n".join(f"alpha={r['alpha']} beta={r['beta']} a={r['a_value']} f={r['f_value']}\n"
                       f"{' '.join(map(str, r['top']))}\n  {' '.join(map(str, r['bottom']))}" for r in rows)
    return _doc("symbols", None, body), text, 0


COMMANDS: dict[str, Callable] = {
    "group": cmd_group, "kl": cmd_kl, "mu": cmd_mu, "cells": cmd_cells,
    "afun": cmd_afun, "check": cmd_check, "jring": cmd_jring, "symbols": cmd_symbols,
}


def _exit_code_help() -> str:
    codes = [(0, "success"), (1, "unexpected internal error"),
             (EXIT_PROPERTY_FAILED, "a checked property failed (the report is still written)")]
    codes += [(cls.exit_code, f"{cls.__name__}: {cls.__doc__.strip()}") for cls in ALL_ERRORS]
    return "exit codes:\n" + "\n".join(f"  {code:<3} {text}" for code, text in sorted(codes))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klcells", description="Kazhdan-Lusztig data, cells and the a-function for weighted Coxeter groups.",
        epilog=_exit_code_help(), formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, epilog=_exit_code_help(), formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--format", choices=("json", "dot", "text"), default="json")
        p.add_argument("--out", help="write the result here instead of stdout")
        if name == "symbols":
            p.add_argument("--a", type=int, required=True)
            p.add_argument("--b", type=int, required=True)
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--rows", type=int, default=None, help="number N of bottom-row entries")
            continue
        p.add_argument("--type", help="A3, B2, G2, H3, F4, I2m (with --m), I2inf, A1xA1, ...")
        p.add_argument("--m", type=int, help="bond for --type I2m")
        p.add_argument("--matrix-file", help='JSON {"generators", "matrix", "weights", "radius"}; 0 means infinity')
        p.add_argument("--weights", help="comma-separated positive weights")
        p.add_argument("--radius", type=int, help="enumerate the ball of this length only")
        p.add_argument("--cap-braid", type=int, default=DEFAULT_CLASS_CAP)
        p.add_argument("--cap-elements", type=int, default=DEFAULT_ELEMENT_CAP)
        p.add_argument("--cap-p15", type=int, default=DEFAULT_P15_CAP)
        if name == "group":
            p.add_argument("--word", help="comma-separated generator names to canonicalise")
        if name == "cells":
            p.add_argument("--kind", choices=("left", "right", "two"), default="left")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = None if ns.command == "symbols" else InstanceConfig.from_args(ns)
        if ns.format == "dot" and ns.command != "cells":
            raise ConfigError("--format dot is only available for cells")
        doc, text, status = COMMANDS[ns.command](cfg, ns)
    except KLCellsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    payload = json.dumps(doc, sort_keys=True, indent=2) + "\n" if ns.format == "json" else text.rstrip("\n") + "\n"
    if ns.out:
        Path(ns.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    return status


if __name__ == "__main__":
    sys.exit(main())
