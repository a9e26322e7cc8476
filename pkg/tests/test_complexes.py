import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import fraction_rank
from twoperad.complexes import (ChainComplex, ConstantCosimplicial, SimplexChains, complex_from_keyed,
                                simplicial_chains, solve_total, total_d, totalize)
from twoperad.errors import InvariantError, ShapeError
from twoperad.linalg import QF, Field, in_span, nullspace, rank, solve
from twoperad.ordinal import Ordinal, compose_monotone, enumerate_monotone

F7 = Field("Fp:7")


def nz(h):
    return {k: n for k, n in h.items() if n}


def dense_to_rows(M):
    return [{j: x for j, x in enumerate(r) if x} for r in M]


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_field_parsing():
    assert Field("Q").name == "Q" and Field("Fp:7").name == "Fp:7"
    assert Field("F5") == Field("Fp:5")
    with pytest.raises(ValueError):
        Field("Fp:6")
    with pytest.raises(ValueError):
        Field("R")
    assert QF.to_json(QF("3/6")) == "1/2" and QF.to_json(QF(4)) == 4
    assert F7.to_json(F7(-1)) == 6


@settings(max_examples=80)
@given(matrices)
def test_rank_against_oracle(M):
    rows = dense_to_rows(M)
    n = len(M[0])
    assert rank(rows, n) == fraction_rank(M)
    assert rank(rows, n, F7) == fraction_rank(M, 7)
    ker = nullspace(rows, n)
    assert len(ker) == n - fraction_rank(M)
    for v in ker:
        assert all(sum(r.get(j, 0) * c for j, c in v.items()) == 0 for r in rows)


@settings(max_examples=50)
@given(matrices, st.data())
def test_solve_and_span(M, data):
    rows = dense_to_rows(M)
    n = len(M[0])
    x0 = data.draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
    rhs = {i: sum(r.get(j, 0) * x0[j] for j in range(n)) for i, r in enumerate(rows)}
    x = solve(rows, n, {i: c for i, c in rhs.items() if c})
    assert x is not None
    assert all(sum(r.get(j, 0) * x.get(j, 0) for j in range(n)) == rhs[i] for i, r in enumerate(rows))
    basis = [{("k", j): c for j, c in enumerate(r) if c} for r in M]
    target = {}
    for r, c in zip(M, x0[:len(M)] + [0] * len(M)):
        for j, v in enumerate(r):
            if v * c:
                target[("k", j)] = target.get(("k", j), 0) + v * c
    assert in_span(basis, {k: v for k, v in target.items() if v}) is not None


def test_homology_examples():
    iso = ChainComplex(QF, {0: 1, 1: 1}, {0: [{0: QF.one}]})
    assert nz(iso.homology()) == {}
    point = ChainComplex(QF, {0: 1}, {})
    assert point.homology() == {0: 1}
    circle = simplicial_chains([(0, 1), (1, 2), (0, 2)])
    assert circle.homology() == {-1: 1, 0: 1}
    assert simplicial_chains([(0, 1), (1, 2), (0, 2)], F7).homology() == {-1: 1, 0: 1}


def test_d_squared_is_checked():
    with pytest.raises(InvariantError):
        ChainComplex(QF, {0: 1, 1: 1, 2: 1}, {0: [{0: QF.one}], 1: [{0: QF.one}]})
    with pytest.raises(ShapeError):
        ChainComplex(QF, {0: 1, 1: 1}, {0: [{3: QF.one}]})


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=6))
def test_simplicial_homology_against_oracle(facets):
    C = simplicial_chains(facets)
    h = C.homology()
    for k in C.degrees:
        n_k = C.dims[k]
        # dense boundary matrices for the oracle
        out_rank = fraction_rank([[C.differential(k)[j].get(i, 0) for j in range(n_k)]
                                  for i in range(C.dims.get(k + 1, 0))]) if C.dims.get(k + 1) else 0
        n_prev = C.dims.get(k - 1, 0)
        in_rank = fraction_rank([[C.differential(k - 1)[j].get(i, 0) for j in range(n_prev)]
                                 for i in range(n_k)]) if n_prev else 0
        assert h.get(k, 0) == n_k - out_rank - in_rank
    assert sum((-1) ** (k % 2) * n for k, n in h.items()) == C.euler_characteristic()


def test_complex_json_roundtrip():
    C = simplicial_chains([(0, 1, 2), (2, 3)])
    D = ChainComplex.from_json(C.to_json())
    assert D.dims == C.dims and D.homology() == C.homology()
    with pytest.raises(ShapeError):
        ChainComplex.from_json({"dims": {"0": 1, "1": 1}, "d": {"0": [[1, 1]]}})


def test_complex_from_keyed_rejects_leaks():
    with pytest.raises(InvariantError):
        complex_from_keyed(QF, {0: ["a"]}, lambda key: {"b": QF.one})


def test_simplex_chains_dimensions_and_functoriality():
    S = SimplexChains()
    for n in range(4):
        for k in range(n + 1):
            assert len(S.basis_in_degree(n, -k)) == len(list(combinations(range(n + 1), k + 1)))
        assert nz(S.level_complex(n).homology()) == {0: 1}
    for f in enumerate_monotone(Ordinal(2), Ordinal(3)):
        for g in enumerate_monotone(Ordinal(3), Ordinal(3)):
            for key in S.basis(1):
                v = {key: QF.one}
                assert S.push(compose_monotone(g, f), v) == S.push(g, S.push(f, v))


def test_totalize_constant():
    K = ConstantCosimplicial(ChainComplex(QF, {0: 1}, {}))
    T = totalize(K, 4)
    assert nz(T.complex.homology()) == {0: 1}
    # the normalized part vanishes above level 0
    assert all(n == 0 for ps in T.pieces.values() for n, _ in ps)


def test_totalize_preserves_homology_of_constant_objects():
    C = simplicial_chains([(0, 1), (1, 2), (0, 2)])
    T = totalize(ConstantCosimplicial(C), 3)
    assert nz(T.complex.homology()) == {-1: 1, 0: 1}


def test_level_bound_zero_is_level_zero():
    S = SimplexChains()
    T = totalize(S, 0)
    assert T.complex.dims == S.level_complex(0).dims


def test_total_d_squares_to_zero_and_solve():
    S = SimplexChains()
    rng = random.Random(2)
    L = 3
    from twoperad.complexes import random_normalized
    for degree in range(-2, 3):
        for _ in range(5):
            x = random_normalized(S, degree, L, rng)
            dx = total_d(S, x, degree, L)
            assert total_d(S, dx, degree + 1, L) == {}
            y = solve_total(S, degree, L, dx)
            assert y is not None
            assert total_d(S, y, degree, L) == dx
