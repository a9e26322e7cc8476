"""Bounded cochain complexes over an exact field, cosimplicial complexes and
their normalized totalization.

Cohomological grading throughout: the differential raises degree by one.
Chains of simplicial objects therefore sit in non-positive degrees.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, Mapping, Optional

from .errors import InvariantError, ShapeError
from .linalg import QF, Field, KeyIndex, axpy, nullspace, solve, span_rank
from .ordinal import MonotoneMap, codegeneracy, coface


@dataclass
class ChainComplex:
    """Finite-dimensional complex.

    ``d[k]`` lists, for each basis vector of degree k, its image as a sparse
    vector over the basis indices of degree k+1.  ``basis[k]`` optionally names
    the basis vectors.
    """

    field: Field
    dims: dict[int, int]
    d: dict[int, list[dict]]
    basis: dict[int, list] = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        self.dims = {k: n for k, n in self.dims.items() if n}
        for k in list(self.d):
            if len(self.d[k]) != self.dims.get(k, 0):
                raise ShapeError(f"d^{k} has {len(self.d[k])} columns, C^{k} has dim {self.dims.get(k, 0)}")
            top = self.dims.get(k + 1, 0)
            for col in self.d[k]:
                if any(not (0 <= i < top) for i in col):
                    raise ShapeError(f"d^{k} lands outside C^{k + 1}")
        if self.check:
            self.verify_d_squared()

    @property
    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def differential(self, k: int) -> list[dict]:
        return self.d.get(k, [{} for _ in range(self.dims.get(k, 0))])

    def apply(self, k: int, v: Mapping[int, object]) -> dict:
        out: dict = {}
        cols = self.differential(k)
        for j, c in v.items():
            axpy(out, cols[j], c)
        return out

    def verify_d_squared(self):
        for k in self.dims:
            for j, col in enumerate(self.differential(k)):
                if col and self.apply(k + 1, col):
                    raise InvariantError(f"d^2 != 0 at degree {k}, basis vector {j}")

    def rank_d(self, k: int) -> int:
        cols = self.differential(k)
        return span_rank(cols, self.field) if cols else 0

    def homology(self) -> dict[int, int]:
        ranks = {k: self.rank_d(k) for k in self.dims}
        out = {}
        for k, n in sorted(self.dims.items()):
            h = n - ranks.get(k, 0) - ranks.get(k - 1, 0)
            if h:
                out[k] = h
        return out

    def cohomology_representatives(self, k: int) -> list[dict]:
        """Cocycles of degree k whose classes form a basis of H^k."""
        n = self.dims.get(k, 0)
        if not n:
            return []
        rows: dict[int, dict] = {}
        for j, col in enumerate(self.differential(k)):
            for i, c in col.items():
                rows.setdefault(i, {})[j] = c
        cycles = nullspace(list(rows.values()), n, self.field)
        chosen = [b for b in self.differential(k - 1) if b]
        base = span_rank(chosen, self.field) if chosen else 0
        out = []
        for z in cycles:
            r = span_rank(chosen + [z], self.field)
            if r > base:
                chosen.append(z)
                base = r
                out.append(z)
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** (k % 2) * n for k, n in self.dims.items())

    def to_json(self) -> dict:
        dense = {}
        for k in self.dims:
            rows = self.dims.get(k + 1, 0)
            if not rows:
                continue
            cols = self.differential(k)
            dense[str(k)] = [[self.field.to_json(cols[j].get(i, self.field.zero)) for j in range(len(cols))]
                             for i in range(rows)]
        return {"field": self.field.name, "dims": {str(k): n for k, n in sorted(self.dims.items())},
                "d": dense}

    @classmethod
    def from_json(cls, data: dict) -> "ChainComplex":
        F = Field(data.get("field", "Q"))
        dims = {int(k): int(n) for k, n in data["dims"].items()}
        d = {}
        for k, n in dims.items():
            rows = data.get("d", {}).get(str(k))
            cols = [dict() for _ in range(n)]
            if rows:
                if len(rows) != dims.get(k + 1, 0):
                    raise ShapeError(f"d^{k} should have {dims.get(k + 1, 0)} rows")
                for i, row in enumerate(rows):
                    if len(row) != n:
                        raise ShapeError(f"d^{k} row {i} should have {n} entries")
                    for j, x in enumerate(row):
                        x = F(x)
                        if x:
                            cols[j][i] = x
            d[k] = cols
        return cls(F, dims, d)


def homology(C: ChainComplex) -> dict[int, int]:
    return C.homology()


def complex_from_keyed(field: Field, basis: Mapping[int, list], d: Callable[[Hashable], dict],
                       degree_of: Callable[[Hashable], int] = None, check: bool = True) -> ChainComplex:
    """Build a complex from named bases and a differential on basis keys."""
    index = {k: KeyIndex(b) for k, b in basis.items()}
    mats = {}
    for k, keys in basis.items():
        tgt = index.get(k + 1, KeyIndex())
        cols = []
        for key in keys:
            img = d(key)
            try:
                cols.append(tgt.encode(img))
            except KeyError as exc:
                raise InvariantError(f"d of {key!r} leaves the given basis: {exc}") from None
        mats[k] = cols
    return ChainComplex(field, {k: len(b) for k, b in basis.items()}, mats,
                        {k: list(b) for k, b in basis.items()}, check=check)


def simplicial_chains(facets: Iterable[Iterable[int]], field: Field = QF) -> ChainComplex:
    """Chains of the simplicial complex generated by ``facets``, k-simplices in degree -k."""
    simplices = set()
    for f in facets:
        f = tuple(sorted(set(f)))
        for r in range(1, len(f) + 1):
            simplices.update(combinations(f, r))
    basis: dict[int, list] = {}
    for s in sorted(simplices):
        basis.setdefault(-(len(s) - 1), []).append(s)

    def boundary(s):
        out = {}
        if len(s) > 1:
            for i in range(len(s)):
                axpy(out, {s[:i] + s[i + 1:]: field.one}, (-1) ** i)
        return out

    return complex_from_keyed(field, basis, boundary)


# -- cosimplicial complexes -------------------------------------------------

class CosimplicialComplex:
    """A cosimplicial cochain complex, evaluated lazily level by level.

    Level n is the value on ``[n]``.  Subclasses supply ``basis(n)`` (keys),
    ``degree(n, key)``, the internal differential ``d(n, v)`` and
    ``push(sigma, v)`` for a monotone map ``sigma: [n] -> [m]``.
    ``internal_range(n)`` bounds the internal degrees of the normalized piece
    at level n when known (``lo > hi`` means the piece vanishes).
    """

    field: Field = QF

    def basis(self, n: int) -> list:
        raise NotImplementedError

    def degree(self, n: int, key) -> int:
        raise NotImplementedError

    def d(self, n: int, v: Mapping) -> dict:
        raise NotImplementedError

    def push(self, sigma: MonotoneMap, v: Mapping) -> dict:
        raise NotImplementedError

    def internal_range(self, n: int) -> Optional[tuple[int, int]]:
        return None

    # derived structure -----------------------------------------------------

    def basis_in_degree(self, n: int, k: int) -> list:
        return [b for b in self.basis(n) if self.degree(n, b) == k]

    def degrees(self, n: int) -> list[int]:
        return sorted({self.degree(n, b) for b in self.basis(n)})

    def coface(self, n: int, i: int, v: Mapping) -> dict:
        return self.push(coface(n, i), v)

    def codegeneracy(self, n: int, j: int, v: Mapping) -> dict:
        return self.push(codegeneracy(n, j), v)

    def alternating_coface(self, n: int, v: Mapping) -> dict:
        """sum_i (-1)^i d^i : level n -> level n+1."""
        out: dict = {}
        for i in range(n + 2):
            axpy(out, self.coface(n + 1, i, v), (-1) ** i)
        return out

    def level_complex(self, n: int) -> ChainComplex:
        by_deg: dict[int, list] = {}
        for b in self.basis(n):
            by_deg.setdefault(self.degree(n, b), []).append(b)
        return complex_from_keyed(self.field, by_deg, lambda key: self.d(n, {key: self.field.one}))

    def normalized_basis(self, n: int, k: int) -> list[dict]:
        """Basis of the joint kernel of all codegeneracies at level n, degree k (cached)."""
        cache = self.__dict__.setdefault("_normalized_cache", {})
        if (n, k) not in cache:
            cache[(n, k)] = self._normalized_basis(n, k)
        return cache[(n, k)]

    def _normalized_basis(self, n: int, k: int) -> list[dict]:
        keys = self.basis_in_degree(n, k)
        if n == 0 or not keys:
            return [{b: self.field.one} for b in keys]
        rows_idx = KeyIndex()
        rows: dict[int, dict] = {}
        for jcol, b in enumerate(keys):
            for j in range(n):
                img = self.codegeneracy(n - 1, j, {b: self.field.one})
                for key, c in img.items():
                    r = rows_idx.add((j, key))
                    rows.setdefault(r, {})[jcol] = c
        eqs = [rows.get(r, {}) for r in range(len(rows_idx))]
        return [{keys[i]: c for i, c in vec.items()} for vec in nullspace(eqs, len(keys), self.field)]

    def is_normalized(self, n: int, v: Mapping) -> bool:
        return all(not self.codegeneracy(n - 1, j, v) for j in range(n))


def total_d(K: CosimplicialComplex, levels: Mapping[int, Mapping], degree: int, level_bound: int) -> dict:
    """Total differential of a level family ``{n: vector in K^n}`` of total degree ``degree``.

    Components above ``level_bound`` are dropped (the truncated quotient).
    """
    out: dict[int, dict] = {}
    for n, v in levels.items():
        if not v or n > level_bound:
            continue
        acc = out.setdefault(n, {})
        axpy(acc, K.d(n, v))
        if n < level_bound:
            p = degree - n
            axpy(out.setdefault(n + 1, {}), K.alternating_coface(n, v), (-1) ** (p % 2))
    return {n: v for n, v in out.items() if v}


def random_normalized(K: CosimplicialComplex, degree: int, level_bound: int, rng,
                      coeffs: tuple[int, ...] = (-2, -1, 0, 1, 2)) -> dict:
    """A random level family of total degree ``degree`` with normalized components."""
    out = {}
    for n in range(level_bound + 1):
        v: dict = {}
        for b in K.normalized_basis(n, degree - n):
            axpy(v, b, K.field(rng.choice(coeffs)))
        if v:
            out[n] = v
    return out


def solve_total(K: CosimplicialComplex, degree: int, level_bound: int, rhs: Mapping[int, Mapping],
                fixed: Optional[Mapping[int, Mapping]] = None,
                free_levels: Optional[Iterable[int]] = None) -> Optional[dict]:
    """Find x of total degree ``degree``, normalized, with D(fixed + x) = rhs up to level_bound.

    ``x`` has components only at ``free_levels`` (default: all levels up to
    the bound).  Returns ``fixed + x`` as a level family, or None.
    """
    F = K.field
    fixed = {n: dict(v) for n, v in (fixed or {}).items() if v}
    levels = list(range(level_bound + 1)) if free_levels is None else sorted(free_levels)
    unknowns = [(n, b) for n in levels for b in K.normalized_basis(n, degree - n)]
    rows = KeyIndex()
    cols: list[dict] = []
    for n, b in unknowns:
        col = {}
        for m, v in total_d(K, {n: b}, degree, level_bound).items():
            for key, c in v.items():
                col[rows.add((m, key))] = c
        cols.append(col)
    target: dict = {}
    for m, v in rhs.items():
        if m <= level_bound:
            axpy(target, {(m, k): c for k, c in v.items()})
    for m, v in total_d(K, fixed, degree, level_bound).items():
        axpy(target, {(m, k): c for k, c in v.items()}, -1)
    target = {rows.add(k): c for k, c in target.items() if c}
    eqs: list[dict] = [dict() for _ in range(len(rows))]
    for j, col in enumerate(cols):
        for i, c in col.items():
            eqs[i][j] = c
    x = solve(eqs, len(unknowns), target, F)
    if x is None:
        return None
    out = {n: dict(v) for n, v in fixed.items()}
    for j, c in x.items():
        n, b = unknowns[j]
        axpy(out.setdefault(n, {}), b, c)
    return {n: v for n, v in out.items() if v}


class ConstantCosimplicial(CosimplicialComplex):
    """The constant cosimplicial object on a complex."""

    def __init__(self, C: ChainComplex):
        self.C = C
        self.field = C.field

    def basis(self, n):
        return [(k, j) for k in self.C.degrees for j in range(self.C.dims[k])]

    def degree(self, n, key):
        return key[0]

    def d(self, n, v):
        out: dict = {}
        for (k, j), c in v.items():
            axpy(out, {(k + 1, i): x for i, x in self.C.differential(k)[j].items()}, c)
        return out

    def push(self, sigma, v):
        return dict(v)

    def internal_range(self, n):
        ds = self.C.degrees
        if n > 0 or not ds:
            return (1, 0)
        return (ds[0], ds[-1])


class SimplexChains(CosimplicialComplex):
    """S: [n] -> normalized chains of the n-simplex, k-faces in degree -k."""

    def __init__(self, field: Field = QF):
        self.field = field

    def basis(self, n):
        return [s for r in range(1, n + 2) for s in combinations(range(n + 1), r)]

    def degree(self, n, key):
        return -(len(key) - 1)

    def d(self, n, v):
        out: dict = {}
        for s, c in v.items():
            if len(s) > 1:
                for i in range(len(s)):
                    axpy(out, {s[:i] + s[i + 1:]: c}, (-1) ** i)
        return out

    def push(self, sigma, v):
        out: dict = {}
        for s, c in v.items():
            img = tuple(sigma(x) for x in s)
            if len(set(img)) == len(img):
                axpy(out, {img: c})
        return out

    def internal_range(self, n):
        return (-n, 0)


# -- totalization ------------------------------------------------------------

@dataclass
class Totalization:
    """The normalized total complex truncated to levels <= level_bound.

    Degree m collects N^n K in internal degree m - n.  The differential on
    x in N^n of internal degree p is d x + (-1)^p sum_i (-1)^i d^i x; the
    part landing in level level_bound + 1 is dropped, which makes the result
    a quotient complex of the full totalization.  ``complete`` lists the
    degrees that receive nothing from levels above the bound;
    ``reliable`` those whose cohomology agrees with the untruncated one.
    """

    complex: ChainComplex
    level_bound: int
    complete: set[int]
    pieces: dict[int, list[tuple[int, dict]]]  # degree -> [(level, vector in K^level)]

    @property
    def reliable(self) -> set[int]:
        return {m for m in self.complete if m - 1 in self.complete and m + 1 in self.complete}

    def homology(self, only_reliable: bool = True) -> dict[int, int]:
        h = self.complex.homology()
        if only_reliable:
            return {m: h.get(m, 0) for m in sorted(self.reliable) if m in self.complex.dims or h.get(m)}
        return h


def totalize(K: CosimplicialComplex, level_bound: int, verify: bool = True) -> Totalization:
    F = K.field
    normalized: dict[tuple[int, int], list[dict]] = {}
    pivots: dict[tuple[int, int], list] = {}
    for n in range(level_bound + 1):
        for k in K.degrees(n):
            vecs = K.normalized_basis(n, k)
            if vecs:
                normalized[(n, k)] = vecs
                pivots[(n, k)] = _free_pivots(vecs)
    by_total: dict[int, list[tuple[int, int, int]]] = {}
    for (n, k), vecs in sorted(normalized.items()):
        for i in range(len(vecs)):
            by_total.setdefault(n + k, []).append((n, k, i))
    pos = {m: {t: j for j, t in enumerate(ts)} for m, ts in by_total.items()}

    def coords(n, k, v):
        if not v:
            return {}
        vecs = normalized.get((n, k))
        if vecs is None:
            raise InvariantError(f"nonzero vector in an empty normalized piece N^{n} degree {k}")
        c = {}
        for i, key in enumerate(pivots[(n, k)]):
            x = v.get(key)
            if x:
                c[i] = x
        if verify:
            back: dict = {}
            for i, x in c.items():
                axpy(back, vecs[i], x)
            if back != {kk: vv for kk, vv in v.items() if vv}:
                raise InvariantError(f"vector left the normalized piece N^{n} degree {k}")
        return c

    dmats = {}
    for m, ts in by_total.items():
        cols = []
        for (n, k, i) in ts:
            x = normalized[(n, k)][i]
            img = {}
            for j, c in coords(n, k + 1, K.d(n, x)).items():
                img[pos[m + 1][(n, k + 1, j)]] = c
            if n < level_bound:
                dx = K.alternating_coface(n, x)
                sign = (-1) ** (k % 2)
                for j, c in coords(n + 1, k, dx).items():
                    img[pos[m + 1][(n + 1, k, j)]] = img.get(pos[m + 1][(n + 1, k, j)], 0) + sign * c
            cols.append({a: b for a, b in img.items() if b})
        dmats[m] = cols
    dims = {m: len(ts) for m, ts in by_total.items()}
    basis = {m: [(n, k, i) for (n, k, i) in ts] for m, ts in by_total.items()}
    C = ChainComplex(F, dims, dmats, basis)
    complete = set()
    degrees = set(dims) | {m + 1 for m in dims} | {m - 1 for m in dims}
    for m in degrees:
        if degree_complete(K, level_bound, m):
            complete.add(m)
    pieces = {m: [(n, normalized[(n, k)][i]) for (n, k, i) in ts] for m, ts in by_total.items()}
    return Totalization(C, level_bound, complete, pieces)


def _free_pivots(vecs: list[dict]) -> list:
    """For a nullspace basis: the key where vector i is 1 and all others vanish."""
    out = []
    for i, v in enumerate(vecs):
        for key, c in v.items():
            if c == 1 and all(not w.get(key) for j, w in enumerate(vecs) if j != i):
                out.append(key)
                break
        else:
            raise InvariantError("normalized basis lacks free pivots")
    return out


def degree_complete(K: CosimplicialComplex, level_bound: int, m: int, horizon: int = 64) -> bool:
    for n in range(level_bound + 1, level_bound + 1 + horizon):
        rng = K.internal_range(n)
        if rng is None:
            return False
        lo, hi = rng
        if lo <= m - n <= hi:
            return False
    return True
