"""Small dg-categories with explicit bases, dg-functors, chains A(X) and the
cosimplicial complexes of derived natural transformations shom^I(F, G).

Tensor conventions.  A chain over ``X: I -> Ob A`` is an element of
``A(X) = A(X(n-1), X(n)) (x) ... (x) A(X(0), X(1))`` -- factors listed in
composition order.  Basis keys of A(X) are stored in *index* order
``(u_1, ..., u_n)`` with ``u_k: X(k-1) -> X(k)``; every Koszul sign is
computed on the composition-order sequence.  Composition ``g o f`` carries no
sign; d(g o f) = dg o f + (-1)^|g| g o df.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Optional, Sequence

from .complexes import ChainComplex, CosimplicialComplex
from .errors import InvariantError, ShapeError
from .linalg import QF, Field, KeyIndex, axpy, nullspace
from .ordinal import MonotoneMap, Ordinal, bracket


@dataclass
class HomSpace:
    """A finite graded vector space with a differential, basis-indexed."""

    degrees: tuple[int, ...]
    d: tuple[dict, ...]  # d[i]: sparse vector over basis indices
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        self.degrees = tuple(self.degrees)
        self.d = tuple(dict(v) for v in self.d) if self.d else tuple({} for _ in self.degrees)
        if not self.labels:
            self.labels = tuple(f"e{i}" for i in range(len(self.degrees)))
        if len(self.d) != len(self.degrees):
            raise ShapeError("one differential image per basis vector")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def apply_d(self, v: Mapping[int, object]) -> dict:
        out: dict = {}
        for i, c in v.items():
            axpy(out, self.d[i], c)
        return out

    def degree_of(self, v: Mapping[int, object]) -> Optional[int]:
        ds = {self.degrees[i] for i, c in v.items() if c}
        if len(ds) > 1:
            raise ShapeError("inhomogeneous vector")
        return ds.pop() if ds else None

    def to_complex(self, F: Field) -> ChainComplex:
        by_deg: dict[int, list[int]] = {}
        for i, k in enumerate(self.degrees):
            by_deg.setdefault(k, []).append(i)
        pos = {i: (k, j) for k, idx in by_deg.items() for j, i in enumerate(idx)}
        mats = {}
        for k, idx in by_deg.items():
            cols = []
            for i in idx:
                col = {}
                for t, c in self.d[i].items():
                    kk, jj = pos[t]
                    if kk != k + 1:
                        raise InvariantError("hom differential does not raise degree by one")
                    col[jj] = c
                cols.append(col)
            mats[k] = cols
        return ChainComplex(F, {k: len(v) for k, v in by_deg.items()}, mats)


ZERO_SPACE = HomSpace((), ())


class DgCategory:
    """Finite dg-category: objects, hom spaces, structure constants, units."""

    def __init__(self, objects: Sequence[str], homs: Mapping[tuple[str, str], HomSpace],
                 comp: Mapping[tuple[str, str, str], Mapping[tuple[int, int], Mapping[int, object]]],
                 units: Mapping[str, Mapping[int, object]], field: Field = QF, name: str = ""):
        self.objects = tuple(objects)
        self.field = field
        self.name = name
        self.homs = {(x, y): homs.get((x, y), ZERO_SPACE) for x in self.objects for y in self.objects}
        self.comp = {k: {ij: {t: field(c) for t, c in v.items() if c} for ij, v in table.items()}
                     for k, table in comp.items()}
        self.units = {x: {i: field(c) for i, c in units[x].items() if c} for x in self.objects}
        for hs in self.homs.values():
            hs.d = tuple({t: field(c) for t, c in v.items() if c} for v in hs.d)

    def __repr__(self):
        return f"DgCategory({self.name or self.objects})"

    def hom(self, x: str, y: str) -> HomSpace:
        return self.homs[(x, y)]

    def unit(self, x: str) -> dict:
        return dict(self.units[x])

    def compose(self, x: str, y: str, z: str, g: Mapping, f: Mapping) -> dict:
        """g o f for f in hom(x, y), g in hom(y, z)."""
        table = self.comp.get((x, y, z), {})
        out: dict = {}
        for i, a in g.items():
            for j, b in f.items():
                v = table.get((i, j))
                if v:
                    axpy(out, v, a * b)
        return out

    def compose_path(self, objs: Sequence[str], factors: Sequence[Mapping]) -> dict:
        """Composite of u_1, ..., u_n (index order) along objs[0] -> ... -> objs[n]."""
        if not factors:
            return self.unit(objs[0])
        acc = dict(factors[0])
        for k in range(1, len(factors)):
            acc = self.compose(objs[0], objs[k], objs[k + 1], factors[k], acc)
        return acc

    # -- checks ----------------------------------------------------------

    def validate(self) -> None:
        F = self.field
        for (x, y), hs in self.homs.items():
            for i in range(hs.dim):
                if hs.apply_d(hs.d[i]):
                    raise InvariantError(f"d^2 != 0 in hom({x},{y})")
        for x in self.objects:
            u = self.units[x]
            if any(self.hom(x, x).degrees[i] != 0 for i in u):
                raise InvariantError(f"unit of {x} is not of degree 0")
            if self.hom(x, x).apply_d(u):
                raise InvariantError(f"unit of {x} is not closed")
        for x, y, z in product(self.objects, repeat=3):
            hxy, hyz = self.hom(x, y), self.hom(y, z)
            for i in range(hyz.dim):
                for j in range(hxy.dim):
                    g, f = {i: F.one}, {j: F.one}
                    gf = self.compose(x, y, z, g, f)
                    if gf and self.hom(x, z).degree_of(gf) != hyz.degrees[i] + hxy.degrees[j]:
                        raise InvariantError(f"composition not of degree 0 at {(x, y, z)}")
                    lhs = self.hom(x, z).apply_d(gf)
                    rhs = self.compose(x, y, z, hyz.d[i], f)
                    axpy(rhs, self.compose(x, y, z, g, hxy.d[j]), (-1) ** (hyz.degrees[i] % 2))
                    if lhs != rhs:
                        raise InvariantError(f"Leibniz rule fails at {(x, y, z)}, basis {(i, j)}")
        for x, y in product(self.objects, repeat=2):
            for j in range(self.hom(x, y).dim):
                f = {j: F.one}
                if self.compose(x, x, y, f, self.units[x]) != f or self.compose(x, y, y, self.units[y], f) != f:
                    raise InvariantError(f"unit law fails on hom({x},{y}) basis {j}")
        for w, x, y, z in product(self.objects, repeat=4):
            a, b, c = self.hom(w, x), self.hom(x, y), self.hom(y, z)
            for i, j, k in product(range(c.dim), range(b.dim), range(a.dim)):
                h, g, f = {i: F.one}, {j: F.one}, {k: F.one}
                left = self.compose(w, y, z, h, self.compose(w, x, y, g, f))
                right = self.compose(w, x, z, self.compose(x, y, z, h, g), f)
                if left != right:
                    raise InvariantError(f"associativity fails at {(w, x, y, z)}")

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        homs = {}
        for (x, y), hs in self.homs.items():
            if hs.dim:
                homs[f"{x},{y}"] = {"degrees": list(hs.degrees), "labels": list(hs.labels),
                                    "d": [[[t, F.to_json(c)] for t, c in sorted(v.items())] for v in hs.d]}
        comp = {}
        for (x, y, z), table in self.comp.items():
            rows = [[i, j, k, F.to_json(c)] for (i, j), v in sorted(table.items()) for k, c in sorted(v.items())]
            if rows:
                comp[f"{x},{y},{z}"] = rows
        units = {x: [[i, F.to_json(c)] for i, c in sorted(u.items())] for x, u in self.units.items()}
        return {"name": self.name, "field": F.name, "objects": list(self.objects), "homs": homs,
                "comp": comp, "units": units}

    @classmethod
    def from_json(cls, data: dict) -> "DgCategory":
        F = Field(data.get("field", "Q"))
        homs = {}
        for key, h in data.get("homs", {}).items():
            x, y = key.split(",")
            if "dims" in h:  # chain-complex encoding
                cc = ChainComplex.from_json({"field": F.name, **h})
                degrees, d, offset = [], [], {}
                for k in cc.degrees:
                    offset[k] = len(degrees)
                    degrees.extend([k] * cc.dims[k])
                for k in cc.degrees:
                    for col in cc.differential(k):
                        d.append({offset[k + 1] + i: c for i, c in col.items()})
                homs[(x, y)] = HomSpace(tuple(degrees), tuple(d))
            else:
                degs = tuple(int(k) for k in h["degrees"])
                dd = h.get("d") or [[] for _ in degs]
                homs[(x, y)] = HomSpace(degs, tuple({int(t): F(c) for t, c in v} for v in dd),
                                        tuple(h.get("labels", ())))
        comp: dict = {}
        for key, rows in data.get("comp", {}).items():
            x, y, z = key.split(",")
            table = comp.setdefault((x, y, z), {})
            for i, j, k, c in rows:
                table.setdefault((int(i), int(j)), {})[int(k)] = F(c)
        units = {}
        for x, u in data["units"].items():
            if u and not isinstance(u[0], (list, tuple)):  # dense vector
                units[x] = {i: F(c) for i, c in enumerate(u) if F(c)}
            else:
                units[x] = {int(i): F(c) for i, c in u}
        return cls(data["objects"], homs, comp, units, F, data.get("name", ""))


class DgFunctor:
    """A dg-functor: object map plus a degree-0 chain map per hom space."""

    def __init__(self, src: DgCategory, dst: DgCategory, obj: Mapping[str, str],
                 maps: Mapping[tuple[str, str], Sequence[Mapping[int, object]]], name: str = ""):
        self.src, self.dst = src, dst
        self.obj = dict(obj)
        self.name = name
        self.maps = {}
        for (x, y), hs in src.homs.items():
            cols = maps.get((x, y))
            if cols is None:
                if hs.dim:
                    raise ShapeError(f"functor needs a map on hom({x},{y})")
                cols = []
            self.maps[(x, y)] = [{t: dst.field(c) for t, c in v.items() if c} for v in cols]

    def __repr__(self):
        return f"DgFunctor({self.name or id(self)})"

    def __call__(self, x: str, y: str, v: Mapping) -> dict:
        out: dict = {}
        cols = self.maps[(x, y)]
        for i, c in v.items():
            axpy(out, cols[i], c)
        return out

    def validate(self) -> None:
        A, B = self.src, self.dst
        F = A.field
        for x in A.objects:
            if self(x, x, A.units[x]) != B.units[self.obj[x]]:
                raise InvariantError(f"functor does not preserve the unit of {x}")
        for (x, y), hs in A.homs.items():
            for i in range(hs.dim):
                img = self(x, y, {i: F.one})
                if img and B.hom(self.obj[x], self.obj[y]).degree_of(img) != hs.degrees[i]:
                    raise InvariantError("functor is not of degree 0")
                if B.hom(self.obj[x], self.obj[y]).apply_d(img) != self(x, y, hs.d[i]):
                    raise InvariantError(f"functor does not commute with d on hom({x},{y})")
        for x, y, z in product(A.objects, repeat=3):
            for i in range(A.hom(y, z).dim):
                for j in range(A.hom(x, y).dim):
                    g, f = {i: F.one}, {j: F.one}
                    lhs = self(x, z, A.compose(x, y, z, g, f))
                    rhs = B.compose(self.obj[x], self.obj[y], self.obj[z], self(y, z, g), self(x, y, f))
                    if lhs != rhs:
                        raise InvariantError(f"functor does not preserve composition at {(x, y, z)}")

    def then(self, other: "DgFunctor") -> "DgFunctor":
        """other after self."""
        if other.src is not self.dst:
            raise ShapeError("functors are not composable")
        maps = {}
        for (x, y), cols in self.maps.items():
            maps[(x, y)] = [other(self.obj[x], self.obj[y], v) for v in cols]
        return DgFunctor(self.src, other.dst, {x: other.obj[self.obj[x]] for x in self.src.objects}, maps,
                         f"{other.name}.{self.name}")


def identity_functor(A: DgCategory) -> DgFunctor:
    maps = {(x, y): [{i: A.field.one} for i in range(hs.dim)] for (x, y), hs in A.homs.items()}
    return DgFunctor(A, A, {x: x for x in A.objects}, maps, "Id")


def functor_compose(g: DgFunctor, f: DgFunctor) -> DgFunctor:
    return f.then(g)


# -- chains A(X) ---------------------------------------------------------------

class Chains:
    """Bases and differentials of A(X) for one category, cached per X."""

    def __init__(self, A: DgCategory):
        self.A = A
        self._basis: dict = {}
        self._d: dict = {}

    def basis(self, X: tuple) -> list[tuple]:
        b = self._basis.get(X)
        if b is None:
            dims = [self.A.hom(X[k], X[k + 1]).dim for k in range(len(X) - 1)]
            b = self._basis[X] = list(product(*(range(n) for n in dims)))
        return b

    def degree(self, X: tuple, key: tuple) -> int:
        return sum(self.A.hom(X[k], X[k + 1]).degrees[i] for k, i in enumerate(key))

    def d(self, X: tuple, key: tuple) -> dict:
        """Differential of a basis tensor; Koszul sign from factors to its left
        in composition order (the higher-index factors)."""
        cached = self._d.get((X, key))
        if cached is not None:
            return cached
        out: dict = {}
        n = len(key)
        for k in range(n):
            sign = (-1) ** (sum(self.A.hom(X[l], X[l + 1]).degrees[key[l]] for l in range(k + 1, n)) % 2)
            for t, c in self.A.hom(X[k], X[k + 1]).d[key[k]].items():
                new = key[:k] + (t,) + key[k + 1:]
                out[new] = out.get(new, 0) + sign * c
        out = {k: v for k, v in out.items() if v}
        self._d[(X, key)] = out
        return out

    def d_vec(self, X: tuple, v: Mapping) -> dict:
        out: dict = {}
        for key, c in v.items():
            axpy(out, self.d(X, key), c)
        return out

    def composite(self, X: tuple, key: tuple, a: int, b: int) -> dict:
        """Composite in A of the factors over [a, b] (identity if a == b)."""
        A = self.A
        F = A.field
        return A.compose_path(X[a:b + 1], [{key[k]: F.one} for k in range(a, b)])

    def pullback(self, k: MonotoneMap, X: tuple, v: Mapping) -> dict:
        """k^*: A(X) -> A(X o k) for dominant k: J -> I (no signs arise)."""
        if not k.is_dominant:
            raise ShapeError("chain pullback needs a dominant map")
        if k.dst.size != len(X):
            raise ShapeError("pullback map does not land in the chain's ordinal")
        out: dict = {}
        vals = k.values
        for key, c in v.items():
            factors = [self.composite(X, key, vals[j], vals[j + 1]) for j in range(len(vals) - 1)]
            axpy(out, tensor(factors), c)
        return out


def tensor(factors: Sequence[Mapping[int, object]]) -> dict:
    """Expand a tensor of sparse vectors into basis tuples."""
    acc: dict = {(): 1}
    for f in factors:
        nxt: dict = {}
        for key, c in acc.items():
            for i, x in f.items():
                nxt[key + (i,)] = nxt.get(key + (i,), 0) + c * x
        acc = {k: v for k, v in nxt.items() if v}
        if not acc:
            return {}
    return acc


@dataclass(frozen=True)
class ChainTuple:
    """An element of A(X) for X: I -> Ob A."""

    category: DgCategory = field(compare=False)
    X: tuple
    vec: tuple  # sorted items of a sparse dict over basis tuples

    @classmethod
    def make(cls, A: DgCategory, X: Sequence[str], vec: Mapping[tuple, object]) -> "ChainTuple":
        return cls(A, tuple(X), tuple(sorted((k, A.field(c)) for k, c in vec.items() if c)))

    @property
    def ordinal(self) -> Ordinal:
        return Ordinal(len(self.X))

    def as_dict(self) -> dict:
        return dict(self.vec)


def chain_pullback(k: MonotoneMap, t: ChainTuple) -> ChainTuple:
    ch = Chains(t.category)
    X2 = tuple(t.X[i] for i in k.values)
    return ChainTuple.make(t.category, X2, ch.pullback(k, t.X, t.as_dict()))


# -- shom ------------------------------------------------------------------------

class Shom(CosimplicialComplex):
    """I -> shom^I(F, G), the cosimplicial complex of derived transformations.

    Basis keys at level n are ``(X, u, t)``: the functional sending the basis
    tensor u of A(X) to the basis vector t of hom_B(F X(0), G X(n)) and every
    other basis tensor to zero.  Its degree is |t| - |u|.
    """

    def __init__(self, F: DgFunctor, G: DgFunctor):
        if F.src is not G.src or F.dst is not G.dst:
            raise ShapeError("F and G must share source and target")
        self.F, self.G = F, G
        self.A, self.B = F.src, F.dst
        self.field = self.A.field
        self.chains = Chains(self.A)
        self._basis: dict[int, list] = {}
        self._push: dict = {}
        self._dT: dict = {}

    def target(self, X: tuple) -> HomSpace:
        return self.B.hom(self.F.obj[X[0]], self.G.obj[X[-1]])

    def object_maps(self, n: int):
        return product(self.A.objects, repeat=n + 1)

    def basis(self, n: int) -> list:
        b = self._basis.get(n)
        if b is None:
            b = []
            for X in self.object_maps(n):
                tgt = self.target(X)
                if not tgt.dim:
                    continue
                for u in self.chains.basis(X):
                    for t in range(tgt.dim):
                        b.append((X, u, t))
            self._basis[n] = b
        return b

    def degree(self, n: int, key) -> int:
        X, u, t = key
        return self.target(X).degrees[t] - self.chains.degree(X, u)

    def internal_range(self, n: int):
        A, B = self.A, self.B
        src_deg = [d for hs in A.homs.values() for d in hs.degrees]
        tgt_deg = [d for hs in B.homs.values() for d in hs.degrees]
        if not src_deg or not tgt_deg:
            return (1, 0)
        return (min(tgt_deg) - n * max(src_deg), max(tgt_deg) - n * min(src_deg))

    def _transpose_d(self, X: tuple) -> dict:
        T = self._dT.get(X)
        if T is None:
            T = {}
            for u in self.chains.basis(X):
                for u2, c in self.chains.d(X, u).items():
                    T.setdefault(u2, []).append((u, c))
            self._dT[X] = T
        return T

    def d(self, n: int, v: Mapping) -> dict:
        """d Phi = d_B o Phi - (-1)^|Phi| Phi o d_A(X)."""
        out: dict = {}
        for (X, u, t), c in v.items():
            tgt = self.target(X)
            for t2, x in tgt.d[t].items():
                key = (X, u, t2)
                out[key] = out.get(key, 0) + c * x
            p = tgt.degrees[t] - self.chains.degree(X, u)
            sign = -((-1) ** (p % 2))
            for u2, x in self._transpose_d(X).get(u, ()):
                key = (X, u2, t)
                out[key] = out.get(key, 0) + sign * c * x
        return {k: x for k, x in out.items() if x}

    def structure_matrix(self, sigma: MonotoneMap) -> dict:
        """sigma_*: shom^I -> shom^J as {input key: {output key: coeff}}."""
        cached = self._push.get(sigma.values + (sigma.dst.size,))
        if cached is not None:
            return cached
        A, B, F, G = self.A, self.B, self.F, self.G
        one = self.field.one
        J = sigma.dst.size
        vals = sigma.values
        lo, hi = vals[0], vals[-1]
        mat: dict = {}
        for XJ in self.object_maps(J - 1):
            XI = tuple(XJ[v] for v in vals)
            tgt_I = self.target(XI)
            tgt_J = self.target(XJ)
            if not tgt_I.dim or not tgt_J.dim:
                continue
            for U in self.chains.basis(XJ):
                alpha = self.chains.composite(XJ, U, 0, lo)
                omega = self.chains.composite(XJ, U, hi, J - 1)
                if not alpha or not omega:
                    continue
                mids = tensor([self.chains.composite(XJ, U, vals[i], vals[i + 1]) for i in range(len(vals) - 1)])
                if not mids:
                    continue
                Fa = F(XJ[0], XI[0], alpha)
                Gw = G(XI[-1], XJ[-1], omega)
                w_deg = A.hom(XI[-1], XJ[-1]).degree_of(omega) or 0
                for V, c in mids.items():
                    v_deg = self.chains.degree(XI, V)
                    for t in range(tgt_I.dim):
                        p = tgt_I.degrees[t] - v_deg
                        sign = (-1) ** ((p * w_deg) % 2)
                        img = B.compose(F.obj[XJ[0]], F.obj[XI[0]], G.obj[XJ[-1]],
                                        B.compose(F.obj[XI[0]], G.obj[XI[-1]], G.obj[XJ[-1]], Gw, {t: one}), Fa)
                        if not img:
                            continue
                        row = mat.setdefault((XI, V, t), {})
                        for t2, x in img.items():
                            key = (XJ, U, t2)
                            row[key] = row.get(key, 0) + sign * c * x
        for row in mat.values():
            for k in [k for k, x in row.items() if not x]:
                del row[k]
        self._push[sigma.values + (sigma.dst.size,)] = mat
        return mat

    def push(self, sigma: MonotoneMap, v: Mapping) -> dict:
        mat = self.structure_matrix(sigma)
        out: dict = {}
        for key, c in v.items():
            row = mat.get(key)
            if row:
                axpy(out, row, c)
        return out

    # -- cochain evaluation ---------------------------------------------------

    def evaluate(self, v: Mapping, X: tuple, chain: Mapping[tuple, object]) -> dict:
        """Phi(U) for U in A(X): a vector of hom_B(F X(0), G X(max))."""
        out: dict = {}
        for (XX, u, t), c in v.items():
            if XX == X:
                x = chain.get(u)
                if x:
                    out[t] = out.get(t, 0) + c * x
        return {t: x for t, x in out.items() if x}


def shom_space(F: DgFunctor, G: DgFunctor, n: int) -> ChainComplex:
    """shom^{[n]}(F, G) as a complex."""
    return Shom(F, G).level_complex(n)


@dataclass(frozen=True)
class Cochain:
    """An element of shom^I(F, G)."""

    shom: Shom = field(compare=False)
    level: int
    vec: tuple

    @classmethod
    def make(cls, shom: Shom, level: int, vec: Mapping) -> "Cochain":
        return cls(shom, level, tuple(sorted(((k, c) for k, c in vec.items() if c), key=repr)))

    def as_dict(self) -> dict:
        return dict(self.vec)


def cosimplicial_structure(sigma: MonotoneMap, phi: Cochain) -> Cochain:
    if sigma.src.size != phi.level + 1:
        raise ShapeError("sigma must start at the cochain's ordinal")
    return Cochain.make(phi.shom, sigma.dst.size - 1, phi.shom.push(sigma, phi.as_dict()))


@dataclass
class NaiveHom:
    """hom(F, G) as the equalizer of the two cofaces shom^[0] -> shom^[1]."""

    shom: Shom
    basis: dict[int, list[dict]]  # degree -> vectors in shom^[0]
    complex: ChainComplex

    def embed(self, v: Mapping, n: int) -> dict:
        """Image in shom^[n] under the constant-cosimplicial map."""
        return self.shom.push(MonotoneMap(bracket(0), bracket(n), (0,)), v)

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self.basis.values())


def naive_hom(F: DgFunctor, G: DgFunctor) -> NaiveHom:
    S = Shom(F, G)
    d0 = MonotoneMap(bracket(0), bracket(1), (1,))
    d1 = MonotoneMap(bracket(0), bracket(1), (0,))
    basis: dict[int, list[dict]] = {}
    for k in S.degrees(0):
        keys = S.basis_in_degree(0, k)
        idx = KeyIndex()
        rows: dict[int, dict] = {}
        for j, b in enumerate(keys):
            diff = S.push(d0, {b: S.field.one})
            axpy(diff, S.push(d1, {b: S.field.one}), -1)
            for key, c in diff.items():
                rows.setdefault(idx.add(key), {})[j] = c
        eqs = [rows.get(r, {}) for r in range(len(idx))]
        vecs = [{keys[i]: c for i, c in v.items()} for v in nullspace(eqs, len(keys), S.field)]
        if vecs:
            basis[k] = vecs
    # restricted differential, coordinates via a solve per vector
    from .linalg import in_span
    mats = {}
    for k, vecs in basis.items():
        cols = []
        for v in vecs:
            dv = S.d(0, v)
            if not dv:
                cols.append({})
                continue
            coords = in_span(basis.get(k + 1, []), dv, S.field)
            if coords is None:
                raise InvariantError("naive hom is not a subcomplex")
            cols.append(coords)
        mats[k] = cols
    C = ChainComplex(S.field, {k: len(v) for k, v in basis.items()}, mats)
    return NaiveHom(S, basis, C)


# -- corpus --------------------------------------------------------------------

def algebra(name: str, labels: Sequence[str], degrees: Sequence[int],
            mult: Mapping[tuple[int, int], Mapping[int, object]], unit: Mapping[int, object],
            d: Mapping[int, Mapping[int, object]] = None, field: Field = QF) -> DgCategory:
    """One-object dg-category from an algebra: ``mult[(i, j)]`` is e_i . e_j = e_i o e_j."""
    d = d or {}
    hs = HomSpace(tuple(degrees), tuple(dict(d.get(i, {})) for i in range(len(labels))), tuple(labels))
    return DgCategory(("p",), {("p", "p"): hs}, {("p", "p", "p"): dict(mult)}, {"p": dict(unit)}, field, name)


def unit_category(field: Field = QF) -> DgCategory:
    return algebra("unit", ["1"], [0], {(0, 0): {0: 1}}, {0: 1}, field=field)


def dual_numbers(field: Field = QF) -> DgCategory:
    """k[x]/(x^2)."""
    return algebra("dual", ["1", "x"], [0, 0],
                   {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, {0: 1}, field=field)


def truncated_polynomial(n: int, field: Field = QF) -> DgCategory:
    """k[x]/(x^n)."""
    mult = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    return algebra(f"trunc{n}", [f"x^{i}" for i in range(n)], [0] * n, mult, {0: 1}, field=field)


def upper_triangular(field: Field = QF) -> DgCategory:
    """2x2 upper triangular matrices, basis e11, e12, e22 (product = matrix product)."""
    E11, E12, E22 = 0, 1, 2
    mult = {(E11, E11): {E11: 1}, (E11, E12): {E12: 1}, (E12, E22): {E12: 1}, (E22, E22): {E22: 1}}
    return algebra("upper", ["e11", "e12", "e22"], [0, 0, 0], mult, {E11: 1, E22: 1}, field=field)


def graded_example(field: Field = QF) -> DgCategory:
    """k<1, x, y> with |x| = 0, |y| = -1, all products of x, y zero, dy = x."""
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}}
    return algebra("graded", ["1", "x", "y"], [0, 0, -1], mult, {0: 1}, d={2: {1: 1}}, field=field)


def two_object_path(field: Field = QF) -> DgCategory:
    """The linearized arrow category a -> b (a two-object model of the upper triangular algebra)."""
    one = HomSpace((0,), ({},), ("id",))
    arrow = HomSpace((0,), ({},), ("f",))
    homs = {("a", "a"): one, ("b", "b"): HomSpace((0,), ({},), ("id",)), ("a", "b"): arrow}
    comp = {("a", "a", "a"): {(0, 0): {0: 1}}, ("b", "b", "b"): {(0, 0): {0: 1}},
            ("a", "a", "b"): {(0, 0): {0: 1}}, ("a", "b", "b"): {(0, 0): {0: 1}}}
    return DgCategory(("a", "b"), homs, comp, {"a": {0: 1}, "b": {0: 1}}, field, "arrow")


def scaling_functor(A: DgCategory, scale: Mapping[int, object]) -> DgFunctor:
    """Endofunctor of a one-object category rescaling basis vectors (must be an algebra map)."""
    hs = A.hom("p", "p")
    maps = {("p", "p"): [{i: scale.get(i, 1)} for i in range(hs.dim)]}
    return DgFunctor(A, A, {"p": "p"}, maps, "scale")


def corpus(field: Field = QF) -> dict[str, DgCategory]:
    return {"unit": unit_category(field), "dual": dual_numbers(field),
            "upper": upper_triangular(field), "graded": graded_example(field)}
