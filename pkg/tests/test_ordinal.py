from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from twoperad.errors import ShapeError
from twoperad.ordinal import (MonotoneMap, Ordinal, bracket, codegeneracy, coface, compose_monotone,
                              enumerate_monotone, interval)


def test_ordinal_rejects_empty():
    with pytest.raises(ShapeError):
        Ordinal(0)


def test_successor_pairs():
    assert Ordinal(3).successor_pairs() == [(0, 1), (1, 2)]
    assert Ordinal(1).successor_pairs() == []


def test_compose_examples():
    id1 = MonotoneMap.identity(bracket(1))
    assert compose_monotone(id1, id1) == id1
    f = MonotoneMap.of((0, 0), 2)
    g = MonotoneMap.of((0, 1), 2)
    assert compose_monotone(g, f).values == (0, 0)
    f = MonotoneMap.of((0, 1, 1), 2)
    g = MonotoneMap.of((0, 2), 3)
    assert compose_monotone(g, f).values == (0, 2, 2)


def test_compose_mismatch():
    with pytest.raises(ShapeError):
        compose_monotone(MonotoneMap.of((0, 1), 2), MonotoneMap.of((0, 1, 2), 3))


def test_monotone_invariants():
    with pytest.raises(ShapeError):
        MonotoneMap.of((1, 0), 2)
    with pytest.raises(ShapeError):
        MonotoneMap.of((0, 2), 2)


def test_enumerate_examples():
    assert [f.values for f in enumerate_monotone(bracket(1), bracket(1))] == [(0, 0), (0, 1), (1, 1)]
    assert [f.values for f in enumerate_monotone(bracket(1), bracket(1), dominant_only=True)] == [(0, 1)]
    for n in range(5):
        assert len(enumerate_monotone(bracket(0), bracket(n))) == n + 1


@pytest.mark.parametrize("i,j", list(product(range(1, 7), repeat=2)))
def test_enumerate_counts(i, j):
    maps = enumerate_monotone(Ordinal(i), Ordinal(j))
    assert len(maps) == comb(i + j - 1, i)
    values = [f.values for f in maps]
    assert values == sorted(set(values))
    brute = [v for v in product(range(j), repeat=i) if all(a <= b for a, b in zip(v, v[1:]))]
    assert values == brute


def test_composition_associative_and_dominance():
    sizes = range(1, 5)
    for a, b, c, d in product(sizes, repeat=4):
        if a * b * c * d > 64:
            continue
        for f in enumerate_monotone(Ordinal(a), Ordinal(b)):
            for g in enumerate_monotone(Ordinal(b), Ordinal(c)):
                gf = compose_monotone(g, f)
                if f.is_dominant and g.is_dominant:
                    assert gf.is_dominant
                for h in enumerate_monotone(Ordinal(c), Ordinal(d)):
                    assert compose_monotone(h, gf) == compose_monotone(compose_monotone(h, g), f)


def test_cosimplicial_identities():
    # coface(n, i): [n-1] -> [n]; codegeneracy(n, j): [n+1] -> [n]
    for n in range(1, 5):
        for j in range(n + 2):
            for i in range(j):
                assert compose_monotone(coface(n + 1, j), coface(n, i)) == \
                    compose_monotone(coface(n + 1, i), coface(n, j - 1))
        for j in range(n + 1):
            ident = MonotoneMap.identity(bracket(n))
            assert compose_monotone(codegeneracy(n, j), coface(n + 1, j)) == ident
            assert compose_monotone(codegeneracy(n, j), coface(n + 1, j + 1)) == ident


def test_interval():
    iv = interval(bracket(4), 1, 3)
    assert iv.ordinal.size == 3 and iv.offset == 1
    assert iv.embedding.values == (1, 2, 3)
    assert interval(bracket(5), 2, 2).ordinal.size == 1
    assert interval(bracket(10), 0, 10).ordinal == bracket(10)
    with pytest.raises(ShapeError):
        interval(bracket(4), 3, 1)


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_json_roundtrip(i, j, data):
    values = sorted(data.draw(st.lists(st.integers(0, j - 1), min_size=i, max_size=i)))
    f = MonotoneMap.of(values, j)
    assert MonotoneMap.from_json(f.to_json()) == f
    assert Ordinal.from_json(Ordinal(i).to_json()) == Ordinal(i)
    assert f.to_json() == {"src": i, "dst": j, "values": values}
