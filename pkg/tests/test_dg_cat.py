from itertools import product

import pytest

from twoperad.dg_cat import (ChainTuple, Chains, Cochain, DgCategory, DgFunctor, Shom, chain_pullback, corpus,
                             cosimplicial_structure, dual_numbers, graded_example, identity_functor, naive_hom,
                             scaling_functor, shom_space, truncated_polynomial, two_object_path, unit_category,
                             upper_triangular)
from twoperad.errors import InvariantError, ShapeError
from twoperad.linalg import QF, Field
from twoperad.ordinal import MonotoneMap, Ordinal, compose_monotone, enumerate_monotone

CATEGORIES = [unit_category(), dual_numbers(), upper_triangular(), graded_example(), two_object_path(),
              truncated_polynomial(3)]


def nz(h):
    return {k: n for k, n in h.items() if n}


@pytest.mark.parametrize("A", CATEGORIES, ids=lambda A: A.name)
def test_corpus_validates_and_roundtrips(A):
    A.validate()
    identity_functor(A).validate()
    B = DgCategory.from_json(A.to_json())
    B.validate()
    assert B.to_json() == A.to_json()


def test_corpus_over_a_prime_field():
    for A in corpus(Field("Fp:5")).values():
        A.validate()


def test_json_with_complex_encoding():
    data = {"objects": ["p"], "homs": {"p,p": {"dims": {"-1": 1, "0": 2}, "d": {"-1": [[0], [1]]}}},
            "comp": {"p,p,p": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [0, 2, 2, 1], [2, 0, 2, 1]]},
            "units": {"p": [1, 0, 0]}}
    A = DgCategory.from_json(data)
    # basis order is by degree: y (degree -1) first, then 1 and x
    assert A.hom("p", "p").degrees == (-1, 0, 0)
    with pytest.raises(InvariantError):
        A.validate()


def test_invalid_categories_are_rejected():
    bad = dual_numbers().to_json()
    bad["comp"]["p,p,p"].append([1, 1, 0, 1])  # x.x = 1 breaks nothing? it breaks the unit-free relation
    A = DgCategory.from_json(bad)
    A.validate()  # k[x]/(x^2 - 1) is still an associative algebra
    worse = upper_triangular().to_json()
    worse["comp"]["p,p,p"].append([1, 1, 1, 1])  # e12.e12 = e12 breaks associativity
    with pytest.raises(InvariantError):
        DgCategory.from_json(worse).validate()


def test_functors():
    A = dual_numbers()
    scale = scaling_functor(A, {1: 2})
    scale.validate()
    assert scale.then(scale)("p", "p", {1: QF.one}) == {1: 4}
    with pytest.raises(InvariantError):
        scaling_functor(A, {0: 2}).validate()
    U = upper_triangular()
    scaling_functor(U, {1: 3}).validate()
    with pytest.raises(InvariantError):
        scaling_functor(U, {0: 2}).validate()


def test_chain_pullback_examples():
    A = upper_triangular()
    X = ("p", "p", "p")
    t = ChainTuple.make(A, X, {(1, 0): 1, (2, 1): 1})  # e12 (x) e11 and e22 (x) e12
    assert chain_pullback(MonotoneMap.identity(Ordinal(3)), t) == t
    composed = chain_pullback(MonotoneMap.of((0, 2), 3), t)
    # later factors act on the left: e11.e12 = e12 and e12.e22 = e12
    assert composed.as_dict() == {(1,): 2}
    collapsed = chain_pullback(MonotoneMap.of((0, 0, 1), 2), ChainTuple.make(A, ("p", "p"), {(1,): 1}))
    # collapsed pair receives the identity e11 + e22
    assert collapsed.as_dict() == {(0, 1): 1, (2, 1): 1}
    with pytest.raises(ShapeError):
        Chains(A).pullback(MonotoneMap.of((0, 1), 3), X, {(0, 1): 1})


@pytest.mark.parametrize("A", [upper_triangular(), graded_example(), two_object_path()], ids=lambda A: A.name)
def test_chain_pullback_functorial(A):
    ch = Chains(A)
    for n in range(1, 4):
        for X in product(A.objects, repeat=n):
            for key in ch.basis(X):
                v = {key: QF.one}
                for k in enumerate_monotone(Ordinal(3), Ordinal(n), dominant_only=True):
                    X2 = tuple(X[i] for i in k.values)
                    for l in enumerate_monotone(Ordinal(3), Ordinal(3), dominant_only=True):
                        lhs = ch.pullback(compose_monotone(k, l), X, v)
                        rhs = ch.pullback(l, X2, ch.pullback(k, X, v))
                        assert lhs == rhs


def test_shom_space_examples():
    unit = identity_functor(unit_category())
    assert nz(shom_space(unit, unit, 0).dims) == {0: 1}
    assert nz(shom_space(unit, unit, 2).dims) == {0: 1}
    dual = identity_functor(dual_numbers())
    assert nz(shom_space(dual, dual, 0).dims) == {0: 2}
    assert nz(shom_space(dual, dual, 1).dims) == {0: 4}
    g = identity_functor(graded_example())
    for n in range(3):
        shom_space(g, g, n)  # d^2 = 0 is checked on construction


@pytest.mark.parametrize("A", [dual_numbers(), upper_triangular(), graded_example(), two_object_path()],
                         ids=lambda A: A.name)
def test_cosimplicial_identities(A):
    Id = identity_functor(A)
    G = scaling_functor(A, {1: 2}) if A.name == "dual" else Id
    S = Shom(Id, G)
    for a, b, c in product(range(1, 4), repeat=3):
        fs = enumerate_monotone(Ordinal(a), Ordinal(b))
        gs = enumerate_monotone(Ordinal(b), Ordinal(c))
        for key in S.basis(a - 1):
            v = {key: QF.one}
            for f in fs:
                fv = S.push(f, v)
                for g in gs:
                    assert S.push(compose_monotone(g, f), v) == S.push(g, fv)
    # the structure maps are chain maps
    for f in enumerate_monotone(Ordinal(2), Ordinal(3)):
        for key in S.basis(1):
            v = {key: QF.one}
            assert S.push(f, S.d(1, v)) == S.d(2, S.push(f, v))


def test_cosimplicial_structure_examples():
    A = unit_category()
    S = Shom(identity_functor(A), identity_functor(A))
    phi = Cochain.make(S, 1, {S.basis(1)[0]: 1})
    assert cosimplicial_structure(MonotoneMap.identity(Ordinal(2)), phi) == phi
    s0 = cosimplicial_structure(MonotoneMap.of((0, 0), 1), phi)
    assert s0.level == 0 and s0.as_dict() == {S.basis(0)[0]: 1}
    D = dual_numbers()
    S = Shom(identity_functor(D), identity_functor(D))
    ident = {k: 1 for k in S.basis(0) if k[2] == 0}  # the cochain with value 1 at [0]
    pushed = S.push(MonotoneMap.of((1,), 2), ident)
    X = ("p", "p")
    assert S.evaluate(pushed, X, {(0,): 1}) == {0: 1}
    assert S.evaluate(pushed, X, {(1,): 1}) == {1: 1}


def test_naive_hom_examples():
    for A, dim in ((unit_category(), 1), (dual_numbers(), 2), (upper_triangular(), 1),
                   (truncated_polynomial(3), 3), (two_object_path(), 1)):
        N = naive_hom(identity_functor(A), identity_functor(A))
        assert N.dimension == dim, A.name
    g = graded_example()
    N = naive_hom(identity_functor(g), identity_functor(g))
    assert nz(N.complex.homology()) == {0: 1}


def test_naive_hom_embedding_is_cosimplicial():
    A = upper_triangular()
    N = naive_hom(identity_functor(A), identity_functor(A))
    S = N.shom
    for vecs in N.basis.values():
        for v in vecs:
            for n, m in product(range(3), repeat=2):
                for sigma in enumerate_monotone(Ordinal(n + 1), Ordinal(m + 1)):
                    assert S.push(sigma, N.embed(v, n)) == N.embed(v, m)


def test_functor_shape_errors():
    A, B = dual_numbers(), dual_numbers()
    with pytest.raises(ShapeError):
        Shom(identity_functor(A), identity_functor(B))
    with pytest.raises(ShapeError):
        DgFunctor(A, A, {"p": "p"}, {})
