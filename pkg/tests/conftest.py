"""Shared, cached instances. Every table, KL table and a-function bundle is built once per session."""

from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from klcells.afun import AData, check_conjectures, compute_adata  # noqa: E402
from klcells.cells import CellPartition, cells  # noqa: E402
from klcells.coxeter import GroupTable, enumerate_group, named_system  # noqa: E402
from klcells.kl import KLTable, kl_table  # noqa: E402


@lru_cache(maxsize=None)
def table(name: str, weights: tuple[int, ...] | None = None, radius: int | None = None) -> GroupTable:
    return enumerate_group(named_system(name, weights), radius=radius)


@lru_cache(maxsize=None)
def kl(name: str, weights: tuple[int, ...] | None = None, radius: int | None = None) -> KLTable:
    return kl_table(table(name, weights, radius)).build_all()


@lru_cache(maxsize=None)
def adata(name: str, weights: tuple[int, ...] | None = None, radius: int | None = None) -> AData:
    return compute_adata(table(name, weights, radius), kl(name, weights, radius))


@lru_cache(maxsize=None)
def partition(name: str, weights: tuple[int, ...] | None = None, radius: int | None = None) -> CellPartition:
    return cells(table(name, weights, radius), kl(name, weights, radius))


@lru_cache(maxsize=None)
def reports(name: str, weights: tuple[int, ...] | None = None) -> tuple[dict, ...]:
    return tuple(check_conjectures(adata(name, weights), partition(name, weights)))


@pytest.fixture(scope="session")
def b2():
    return table("B2", (1, 2))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
