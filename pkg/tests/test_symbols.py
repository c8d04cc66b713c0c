import random
from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import adata, partition
from oracles import a_and_f_from_schur
from klcells.errors import NotInFamily, NTooSmall, ParityError, TTooSmall, WrongResidue
from klcells.symbols import (
    RankedMultiset, Symbol, a_of_symbol, admissible_involutions, bar_complement, base_symbol,
    constructible_family, f_of_symbol, from_bipartition, involution_graph, multisets, random_symbol,
    rank, s_iota, shift, stable_size, symbols_of_rank, to_bipartition,
)

PARAMS = [(1, 1), (1, 2), (2, 1), (2, 3)]


def test_sign_symbol_of_rank_two():
    sym = from_bipartition((), (1, 1), 2, a=1, b=2)
    assert (sym.top, sym.bottom) == ((0, 1, 2, 3), (1, 2))
    assert rank(sym) == 2 and a_of_symbol(sym) == 6 and f_of_symbol(sym) == 1


@pytest.mark.parametrize("a,b", PARAMS + [(3, 2), (1, 0)])
@pytest.mark.parametrize("n", range(1, 6))
def test_a_and_f_match_schur_elements(a, b, n):
    for sym in symbols_of_rank(a, b, n):
        assert (a_of_symbol(sym), f_of_symbol(sym)) == a_and_f_from_schur(*to_bipartition(sym), a, b)


@pytest.mark.parametrize("n,a,b", [(2, 1, 1), (2, 1, 2), (2, 2, 3), (2, 1, 3), (3, 1, 1), (3, 1, 2),
                                   (3, 2, 1), (3, 2, 3)])
def test_family_a_values_match_two_sided_cells(n, a, b):
    """The special generator of B_n carries b; it is generator 0 in the package's B_n."""
    weights = (b,) + (a,) * (n - 1)
    ad, part = adata(f"B{n}", weights), partition(f"B{n}", weights)
    cells_a = sorted(ad.a[min(c)] for c in part.two_sided_cells)
    if b % a:
        fam_a = [a_of_symbol(s) for s in symbols_of_rank(a, b, n)]
    else:
        fam_a = []
        for m in multisets(a, b, n, n):
            inv = admissible_involutions(m.singles, m.r)[0]
            fam_a.append(a_of_symbol(constructible_family(m, inv)[0]))
    assert sorted(fam_a) == cells_a


def test_shift_invariance_on_random_symbols():
    rng = random.Random(11)
    for i in range(1000):
        a, b = PARAMS[i % 4]
        sym = random_symbol(rng, a, b, 6)
        up = shift(sym)
        assert rank(up) == rank(sym)
        assert a_of_symbol(up) == a_of_symbol(sym)
        assert f_of_symbol(up) == f_of_symbol(sym)
        assert up == sym and hash(up) == hash(sym)


@given(st.sampled_from(PARAMS), st.integers(0, 6), st.data())
@settings(max_examples=80, deadline=None)
def test_bipartition_roundtrip(params, n, data):
    a, b = params
    k = data.draw(st.integers(0, n))
    from klcells.symbols import _partitions
    al = data.draw(st.sampled_from(list(_partitions(k))))
    be = data.draw(st.sampled_from(list(_partitions(n - k))))
    n_rows = max(len(al), len(be)) + data.draw(st.integers(0, 2))
    sym = from_bipartition(al, be, n_rows, a, b)
    assert rank(sym) == n
    assert to_bipartition(sym) == (al, be)


def test_base_symbol_has_rank_and_a_zero():
    for a, b in PARAMS:
        for n_rows in range(4):
            s = base_symbol(a, b, n_rows)
            assert rank(s) == 0 and a_of_symbol(s) == 0


@given(st.sampled_from(PARAMS), st.integers(0, 5), st.integers(0, 4), st.randoms(use_true_random=False))
@settings(max_examples=80, deadline=None)
def test_complement_is_an_involution(params, max_rank, extra, rnd):
    a, b = params
    sym = random_symbol(rnd, a, b, max_rank)
    top = max(sym.top + sym.bottom, default=0)
    t = top // a + extra
    once = bar_complement(sym, t)
    assert bar_complement(once, t).top == sym.top and bar_complement(once, t).bottom == sym.bottom
    assert rank(once) == rank(sym)


def test_complement_needs_room():
    sym = from_bipartition((3,), (), 1, 1, 1)
    with pytest.raises(TTooSmall):
        bar_complement(sym, 1)


def test_validation_errors():
    with pytest.raises(NotInFamily):
        RankedMultiset((0, 0, 0), 1, 1)
    with pytest.raises(NotInFamily):
        Symbol((0, 0), (1,), 1, 1)
    with pytest.raises(NTooSmall):
        from_bipartition((1, 1, 1), (), 1, 1, 1)
    with pytest.raises(ParityError):
        admissible_involutions([1, 2, 3], 0)
    m = multisets(2, 3, 2, 2)[0]
    with pytest.raises(WrongResidue):
        constructible_family(m, admissible_involutions(m.singles, m.r)[0])


@pytest.mark.parametrize("size", range(0, 9))
def test_involution_combinatorics(size):
    zs = list(range(10, 10 + size))
    for r in range(size % 2, size + 1, 2):
        invs = admissible_involutions(zs, r)
        p = (size - r) // 2
        # ballot numbers count r-admissible involutions
        assert len(invs) == comb(size, p) - (comb(size, p - 1) if p else 0)
        for inv in invs:
            fam = s_iota(inv)
            assert len(fam) == 2 ** p == len(set(fam))
            assert len(inv.fixed) == r
            assert all(inv(inv(z)) == z for z in zs)
        g = involution_graph(zs, r)
        assert g.number_of_nodes() == comb(size, p)
        assert nx.is_connected(g) if g.number_of_nodes() else True
        assert set().union(*(set(s_iota(i)) for i in invs)) == set(g.nodes)


@pytest.mark.parametrize("a,b,n", [(1, 1, 3), (1, 2, 3), (2, 3, 3), (2, 1, 2), (1, 1, 4)])
def test_stabilisation(a, b, n):
    info = stable_size(a, b, n)
    assert info["sizes"][n] == info["sizes"][n + 1] == info["stable"]
    if b % a:
        assert info["stable"] == len(symbols_of_rank(a, b, n))


def test_families_partition_the_symbols():
    """Every symbol of rank n lies in exactly one constructible family of its multiset."""
    a, b, n = 1, 1, 3
    syms = set(symbols_of_rank(a, b, n, n_rows=n))
    covered = set()
    for m in multisets(a, b, n, n):
        for inv in admissible_involutions(m.singles, m.r):
            fam = constructible_family(m, inv)
            assert len({a_of_symbol(s) for s in fam}) == 1
            covered |= set(fam)
    assert covered == syms
