import pytest

from conftest import kl, partition, table
from oracles import as_dict, dihedral, preorder_cells, two_sided_from
from klcells.cells import cell_module, descent_invariant_check, to_dot, w0_cell_duality
from klcells.laurent import ZERO, qsum


def _named(t, cells):
    return {frozenset(t.words[w] for w in c) for c in cells}


def test_b2_unequal_cells():
    t = table("B2", (1, 2))
    part = partition("B2", (1, 2))
    e = lambda first, k: dihedral(t, first, k)
    cell = lambda *els: frozenset(t.words[w] for w in els)
    left = {cell(0), cell(e(1, 1), e(0, 2)), cell(e(1, 3)), cell(e(0, 1)), cell(e(1, 2), e(0, 3)), cell(e(1, 4))}
    assert _named(t, part.left_cells) == left
    two = {cell(0), cell(e(0, 1)), cell(e(1, 3)), cell(e(1, 4)),
           cell(e(1, 1), e(0, 2), e(1, 2), e(0, 3))}
    assert _named(t, part.two_sided_cells) == two


@pytest.mark.parametrize("name,weights,n_left,n_two", [
    ("A2", None, 4, 3), ("A3", None, 10, 5), ("B2", (1, 1), 4, 3),
    ("H3", None, 22, 7), ("I2(4)", (1, 1), 4, 3), ("G2", (1, 1), 4, 3),
])
def test_known_cell_counts(name, weights, n_left, n_two):
    part = partition(name, weights)
    assert len(part.left_cells) == n_left
    assert len(part.two_sided_cells) == n_two


@pytest.mark.parametrize("name,weights", [
    ("A3", None), ("B3", None), ("B3", (2, 1, 1)), ("B3", (1, 2, 2)), ("H3", None), ("G2", (1, 2)),
    ("G2", (3, 1)), ("B2", (1, 3)), ("A1xA1", (1, 2)), ("I2(8)", (2, 3)),
])
def test_cells_match_closure_oracle(name, weights):
    t = table(name, weights)
    kt = kl(name, weights)
    part = partition(name, weights)
    rows = [{y: as_dict(p) for y, p in kt.row(w).items()} for w in range(len(t))]
    left = preorder_cells(t, rows, "left")
    right = preorder_cells(t, rows, "right")
    assert set(left) == set(part.left_cells)
    assert set(right) == set(part.right_cells)
    assert set(two_sided_from(left, right, len(t))) == set(part.two_sided_cells)


@pytest.mark.parametrize("name,weights", [("A3", None), ("B3", (2, 1, 1)), ("H3", None), ("G2", (3, 1))])
def test_left_and_right_cells_are_mirror_images(name, weights):
    t = table(name, weights)
    part = partition(name, weights)
    inv = t.inverse
    assert {frozenset(inv[w] for w in c) for c in part.left_cells} == set(part.right_cells)
    for c in part.two_sided_cells:
        assert frozenset(inv[w] for w in c) in part.two_sided_cells


@pytest.mark.parametrize("name,weights", [("A3", None), ("B3", (1, 2, 2)), ("H3", None), ("G2", (1, 2))])
def test_descent_sets_and_duality(name, weights):
    part = partition(name, weights)
    assert descent_invariant_check(part)["status"] == "pass"
    assert w0_cell_duality(part)["status"] == "pass"


@pytest.mark.parametrize("name,weights", [("A3", None), ("B2", (1, 2)), ("G2", (2, 1))])
def test_cell_modules_satisfy_quadratic_relation(name, weights):
    """Each c_s acts on a left cell module with (c_s - v^L - v^-L) c_s = 0."""
    t = table(name, weights)
    part = partition(name, weights)
    for c in part.left_cells:
        mats = cell_module(part, c, kl(name, weights))
        for s, m in mats.items():
            n = len(m)
            f = qsum(t.system.weights[s])
            sq = [[sum((m[i][k] * m[k][j] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]
            assert all(sq[i][j] == f * m[i][j] for i in range(n) for j in range(n))


def test_dot_output_has_one_cluster_per_cell():
    part = partition("I2(4)", (1, 1))
    dot = to_dot(part, "left")
    assert dot.startswith('digraph "left_cells"')
    assert dot.count("subgraph cluster_") == 4


def test_ball_reports_open_cells():
    part = partition("I2(inf)", (1, 2), 6)
    assert part.open_cells["left"]
    assert descent_invariant_check(part)["status"] == "pass"
