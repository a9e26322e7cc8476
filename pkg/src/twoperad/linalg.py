"""Exact linear algebra over Q or a prime field.

Vectors are sparse dicts ``{key: coefficient}`` with arbitrary hashable keys;
matrices handed to the elimination routines are lists of such rows with
integer keys.  Elimination is delegated to sympy's sparse ``DomainMatrix``
(gmpy2-backed over Q).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from sympy import GF, QQ
from sympy.ntheory import isprime
from sympy.polys.matrices import DomainMatrix

Vector = dict


class Field:
    """An exact field: ``Field("Q")`` or ``Field("Fp:7")``."""

    def __init__(self, spec: str = "Q"):
        spec = spec.strip()
        if spec in ("Q", "QQ"):
            self.p = 0
            self.dom = QQ
        elif spec.startswith("Fp:") or spec.startswith("F"):
            p = int(spec.split(":", 1)[1] if ":" in spec else spec[1:])
            if not isprime(p):
                raise ValueError(f"characteristic {p} is not prime")
            self.p = p
            self.dom = GF(p)
        else:
            raise ValueError(f"unknown field {spec!r}")
        self.zero = self.dom.zero
        self.one = self.dom.one

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    def __call__(self, x) -> object:
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return self.dom(x.numerator) / self.dom(x.denominator)
        if isinstance(x, int):
            return self.dom(x)
        return self.dom.convert(x)

    def to_json(self, x):
        """Integers stay integers; other rationals become ``"a/b"`` strings."""
        if self.p:
            return int(x) % self.p
        x = Fraction(int(x.numerator), int(x.denominator))
        return x.numerator if x.denominator == 1 else str(x)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.name!r})"


QF = Field("Q")


# -- sparse vector helpers -------------------------------------------------

def axpy(acc: dict, v: Mapping, scale=1) -> dict:
    """acc += scale * v, dropping zeros; returns acc."""
    for k, c in v.items():
        x = acc.get(k, 0) + scale * c
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)
    return acc


def scaled(v: Mapping, scale) -> dict:
    if not scale:
        return {}
    return {k: c * scale for k, c in v.items() if c}


def combine(terms: Iterable[tuple[object, Mapping]]) -> dict:
    acc: dict = {}
    for scale, v in terms:
        axpy(acc, v, scale)
    return acc


class KeyIndex:
    """Bijection between hashable basis keys and column indices."""

    def __init__(self, keys: Iterable[Hashable] = ()):
        self.keys: list = []
        self.index: dict = {}
        for k in keys:
            self.add(k)

    def add(self, key) -> int:
        i = self.index.get(key)
        if i is None:
            i = self.index[key] = len(self.keys)
            self.keys.append(key)
        return i

    def __len__(self):
        return len(self.keys)

    def __contains__(self, key):
        return key in self.index

    def encode(self, v: Mapping) -> dict:
        return {self.index[k]: c for k, c in v.items() if c}

    def decode(self, v: Mapping) -> dict:
        return {self.keys[i]: c for i, c in v.items() if c}


# -- elimination -----------------------------------------------------------

def _dm(rows: list[Mapping], ncols: int, field: Field) -> DomainMatrix:
    data = {}
    for i, r in enumerate(rows):
        r = {j: field(c) if not isinstance(c, type(field.one)) else c
             for j, c in r.items() if c}
        if r:
            data[i] = r
    return DomainMatrix(data, (len(rows), ncols), field.dom)


def rank(rows: list[Mapping], ncols: int, field: Field = QF) -> int:
    if not rows or not ncols:
        return 0
    return len(_dm(rows, ncols, field).rref(method="GJ")[1])


def nullspace(rows: list[Mapping], ncols: int, field: Field = QF) -> list[dict]:
    """Basis of {x : row . x = 0 for every row}, as sparse vectors."""
    if ncols == 0:
        return []
    if not any(rows):
        return [{j: field.one} for j in range(ncols)]
    red, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    out = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = {j: field.one}
        for r, p in zip(red, pivots):
            c = r.get(j)
            if c:
                v[p] = -c
        out.append(v)
    return out


def rref(rows: list[Mapping], ncols: int, field: Field = QF):
    """Reduced row echelon form: (list of nonzero sparse rows, pivot columns)."""
    if not rows or not ncols:
        return [], ()
    m, pivots = _dm(rows, ncols, field).rref(method="GJ")
    sdm = m.rep.to_sdm()
    return [dict(sdm[i]) for i in range(len(pivots))], tuple(pivots)


def solve(rows: list[Mapping], ncols: int, rhs: Mapping[int, object],
          field: Field = QF):
    """One solution x of ``rows . x = rhs`` or None if inconsistent.

    ``rhs`` is sparse over row indices.
    """
    aug = []
    for i, r in enumerate(rows):
        r = dict(r)
        if rhs.get(i):
            r[ncols] = rhs[i]
        aug.append(r)
    extra = [i for i in rhs if i >= len(rows) and rhs[i]]
    if extra:
        return None
    if not aug:
        return {}
    red, pivots = rref(aug, ncols + 1, field)
    if ncols in pivots:
        return None
    x = {}
    for r, p in zip(red, pivots):
        c = r.get(ncols)
        if c:
            x[p] = c
    return x


def in_span(basis: list[Mapping], v: Mapping, field: Field = QF):
    """Coordinates of v in the span of ``basis`` (keyed vectors), or None."""
    idx = KeyIndex()
    for b in basis:
        for k in b:
            idx.add(k)
    for k in v:
        idx.add(k)
    # equations: one per key, unknowns: one per basis vector
    eqs: list[dict] = [dict() for _ in range(len(idx))]
    for j, b in enumerate(basis):
        for k, c in b.items():
            if c:
                eqs[idx.index[k]][j] = c
    rhs = {idx.index[k]: c for k, c in v.items() if c}
    return solve(eqs, len(basis), rhs, field)


def span_rank(vectors: list[Mapping], field: Field = QF) -> int:
    idx = KeyIndex()
    rows = []
    for v in vectors:
        rows.append({idx.add(k): c for k, c in v.items() if c})
    return rank(rows, len(idx), field)
