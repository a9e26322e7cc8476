import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from twoperad.errors import ShapeError
from twoperad.seq import all_shapes
from twoperad.two_ordinal import (GLOBE, Ball, TreeMap, TwoOrdinal, TwoOrdinalMap, TwoTree, cell_preimage,
                                  compose_maps, compose_tree_maps, enumerate_maps, globe_ball, hom_poset,
                                  identity_map, identity_tree_map, induced_tree_map, preimage_ball, restrict_map,
                                  terminal_map, tree_roundtrip, validate_map, whole_ball)

U_PIC = TwoOrdinal((4, 3, 1, 5))
V_PIC = TwoOrdinal((3, 2))


def worked_map(g2=(3, 2)):
    # [P]d0=c0, [P]d1=c2, [P]d2=c4; a path lists one 1-arrow per U-column crossed
    return TwoOrdinalMap(U_PIC, V_PIC, (0, 2, 4), (((0, 0), (0, 1), g2), ((0, 0), (0, 4))))


def test_shape_basics():
    assert U_PIC.n_objects == 5 and U_PIC.n_columns == 4
    assert len(U_PIC.cells()) == 3 + 2 + 0 + 4
    assert TwoOrdinal(()).cells() == []
    with pytest.raises(ShapeError):
        TwoOrdinal((2, 0))


def test_hom_poset_examples():
    h = hom_poset(U_PIC, 0, 2)
    assert len(h) == 12
    assert h.min == (0, 0) and h.max == (3, 2)
    assert list(hom_poset(U_PIC, 1, 1)) == [()]
    assert hom_poset(U_PIC, 2, 0).is_empty
    with pytest.raises(ShapeError):
        hom_poset(U_PIC, 0, 5)


def test_validate_worked_map():
    assert validate_map(worked_map())
    assert validate_map(identity_map(U_PIC))
    bad = validate_map(worked_map(g2=(2, 2)))
    assert not bad
    assert bad.clause == "greatest element not preserved"
    assert bad.witness == {"column": 0, "u_column": 0}


def test_enumerate_maps_examples():
    assert len(enumerate_maps(GLOBE, GLOBE)) == 1
    for U in all_shapes(2, 3):
        maps = enumerate_maps(U, GLOBE)
        assert maps == [terminal_map(U)]
    # brute force over all object maps and generator images
    assert len(enumerate_maps(TwoOrdinal((2,)), TwoOrdinal((3,)))) == 2


def test_worked_globes():
    P = worked_map()
    assert cell_preimage(P, (0, 0)) == Ball(U_PIC, (0, 2), ((0, 0), (0, 1)))
    assert cell_preimage(P, (0, 1)) == Ball(U_PIC, (0, 2), ((0, 3), (1, 2)))
    assert cell_preimage(P, (1, 0)) == Ball(U_PIC, (2, 4), ((0, 0), (0, 4)))


def test_worked_tree_map():
    t = induced_tree_map(worked_map())
    assert t.cols == (0, 0, 1, 1)
    assert t.cell_image((0, 0)) == (0, 1)      # lies in globe II
    assert t.is_commutative() and t.is_monotone()
    assert induced_tree_map(identity_map(U_PIC)) == identity_tree_map(U_PIC)


def test_tree_roundtrip():
    assert tree_roundtrip(TwoTree((3, 2, 0, 4))) == (U_PIC, TwoTree((3, 2, 0, 4)))
    assert tree_roundtrip(TwoTree(())) == (TwoOrdinal(()), TwoTree(()))
    assert tree_roundtrip(TwoTree((0,))) == (TwoOrdinal((1,)), TwoTree((0,)))


@pytest.mark.parametrize("cols,size", [(3, 2), (2, 3)])
def test_tree_functoriality_exhaustive(cols, size):
    shapes = all_shapes(cols, size)
    maps = {(U, V): enumerate_maps(U, V) for U in shapes for V in shapes}
    trees = {P: induced_tree_map(P) for ms in maps.values() for P in ms}
    n = 0
    for V in shapes:
        for U in shapes:
            for P in maps[(U, V)]:
                for W in shapes:
                    for Q in maps[(V, W)]:
                        n += 1
                        assert trees[compose_maps(Q, P)] == compose_tree_maps(trees[Q], trees[P])
                        assert trees[P].is_commutative() and trees[P].is_monotone()
    assert n > 20_000


def test_tree_functoriality_sampled_3x3():
    rng = random.Random(3)
    shapes = all_shapes(3, 3)
    maps = {(U, V): enumerate_maps(U, V) for U in shapes for V in shapes}
    pairs = [(U, V, W) for U in shapes for V in shapes for W in shapes if maps[(U, V)] and maps[(V, W)]]
    for _ in range(3000):
        U, V, W = rng.choice(pairs)
        P, Q = rng.choice(maps[(U, V)]), rng.choice(maps[(V, W)])
        R = compose_maps(Q, P)
        assert validate_map(R)
        assert induced_tree_map(R) == compose_tree_maps(induced_tree_map(Q), induced_tree_map(P))


def test_preimage_balls_tile():
    for U in all_shapes(2, 3):
        for V in all_shapes(2, 3):
            for P in enumerate_maps(U, V):
                t = induced_tree_map(P)
                owners = {}
                for g in V.cells():
                    ball = cell_preimage(P, g)
                    cells = set(ball.host_cells())
                    # the 2-cells of the ball are exactly those sent to g
                    assert cells == {f for f in U.cells() if t.cell_image(f) == g}
                    for f in cells:
                        assert f not in owners
                        owners[f] = g
                assert set(owners) == set(U.cells())
                # consecutive balls in a column share only their boundary 1-arrows
                for j in range(V.n_columns):
                    for i in range(V.columns[j] - 2):
                        a, b = cell_preimage(P, (j, i)), cell_preimage(P, (j, i + 1))
                        assert a.cols == b.cols
                        assert all(x[1] == y[0] for x, y in zip(a.cells, b.cells))


def test_whole_ball_preimage_is_whole():
    for U in all_shapes(2, 2):
        for V in all_shapes(2, 2):
            for P in enumerate_maps(U, V):
                assert preimage_ball(P, whole_ball(V)) == whole_ball(U)


def test_restrict_map_is_valid():
    P = worked_map()
    for g in V_PIC.cells():
        R = restrict_map(P, globe_ball(V_PIC, g))
        assert validate_map(R)
        assert R.src == cell_preimage(P, g).shape and R.dst == GLOBE


def test_compose_maps_associative():
    rng = random.Random(5)
    shapes = all_shapes(2, 3)
    maps = {(U, V): enumerate_maps(U, V) for U in shapes for V in shapes}
    for _ in range(500):
        U, V, W, X = (rng.choice(shapes) for _ in range(4))
        if not (maps[(U, V)] and maps[(V, W)] and maps[(W, X)]):
            continue
        P, Q, R = rng.choice(maps[(U, V)]), rng.choice(maps[(V, W)]), rng.choice(maps[(W, X)])
        assert compose_maps(R, compose_maps(Q, P)) == compose_maps(compose_maps(R, Q), P)
        assert compose_maps(identity_map(V), P) == P == compose_maps(P, identity_map(U))


@given(st.lists(st.integers(1, 4), max_size=4))
def test_json_roundtrip(cols):
    U = TwoOrdinal(tuple(cols))
    assert TwoOrdinal.from_json(U.to_json()) == U
    assert U.to_json() == {"columns": cols}
    assert TwoTree.from_json(U.tree().to_json()).two_ordinal() == U
    for P in enumerate_maps(U, GLOBE):
        assert TwoOrdinalMap.from_json(P.to_json()) == P


def test_tree_functor_is_faithful_and_full_at_small_sizes():
    shapes = all_shapes(2, 3)
    for U in shapes:
        for V in shapes:
            images = [induced_tree_map(P) for P in enumerate_maps(U, V)]
            assert len(set(images)) == len(images)
            if U.n_columns and not V.n_columns:
                assert not images
                continue
            candidates = set()
            for cols in product(range(V.n_columns), repeat=U.n_columns):
                choices = [V.cells_in_column(cols[c]) for c, _ in U.cells()]
                for cells in product(*choices):
                    t = TreeMap(U, V, cols, tuple(cells))
                    if t.is_monotone():
                        candidates.add(t)
            assert candidates == set(images), (U.columns, V.columns)
