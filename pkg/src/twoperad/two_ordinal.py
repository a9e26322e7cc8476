"""2-ordinals, 2-trees, balls, maps of 2-ordinals and U-diagrams.

A 2-ordinal with ``n`` columns has objects ``0..n`` and, over the column
``(c, c+1)``, an ordinal of ``columns[c]`` parallel 1-arrows.  Its 2-cells
are pairs of consecutive 1-arrows; the 2-cell ``(c, i)`` is ``f_i -> f_{i+1}``
in column ``c``.  2-cells are totally ordered column-major.

A map ``P: U -> V`` is stored the way the 2-functor ``[V] -> [U]`` acts on
generators: ``obj[d]`` is the U-object of the V-object ``d`` and
``gens[j][g]`` is the U-path (one 1-arrow per U-column between
``obj[j]`` and ``obj[j+1]``) assigned to the V 1-arrow ``g`` of column ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Callable, Iterator, Optional

from .errors import GuardExceeded, ShapeError
from .ordinal import Ordinal, enumerate_monotone

Cell = tuple[int, int]
Path = tuple[int, ...]


@dataclass(frozen=True, order=True)
class TwoOrdinal:
    columns: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(int(c) for c in self.columns))
        if any(c < 1 for c in self.columns):
            raise ShapeError(f"every column needs at least one 1-arrow: {self.columns}")

    @property
    def n_columns(self) -> int:
        return len(self.columns)

    @property
    def n_objects(self) -> int:
        return len(self.columns) + 1

    @property
    def objects(self) -> Ordinal:
        return Ordinal(self.n_objects)

    def cells(self) -> list[Cell]:
        return [(c, i) for c, size in enumerate(self.columns) for i in range(size - 1)]

    def cells_in_column(self, c: int) -> list[Cell]:
        return [(c, i) for i in range(self.columns[c] - 1)]

    def column_of(self, cell: Cell) -> int:
        return cell[0]

    def tree(self) -> "TwoTree":
        return TwoTree(tuple(c - 1 for c in self.columns))

    def min_path(self, c1: int, c2: int) -> Path:
        return (0,) * (c2 - c1)

    def max_path(self, c1: int, c2: int) -> Path:
        return tuple(self.columns[c] - 1 for c in range(c1, c2))

    def check_object(self, c: int):
        if not (0 <= c < self.n_objects):
            raise ShapeError(f"object {c} outside a 2-ordinal with {self.n_objects} objects")

    def check_cell(self, cell: Cell):
        c, i = cell
        if not (0 <= c < self.n_columns and 0 <= i < self.columns[c] - 1):
            raise ShapeError(f"2-cell {cell} not in {self.columns}")

    def to_json(self) -> dict:
        return {"columns": list(self.columns)}

    @classmethod
    def from_json(cls, data: dict) -> "TwoOrdinal":
        return cls(tuple(data["columns"]))

    def __repr__(self):
        return f"TwoOrdinal{self.columns}"


GLOBE = TwoOrdinal((2,))
POINT = TwoOrdinal(())


@dataclass(frozen=True)
class TwoTree:
    """Fiber sizes of ``pi: F -> C``; fiber ``c`` has ``columns[c] - 1`` cells."""

    fibers: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(int(f) for f in self.fibers))
        if any(f < 0 for f in self.fibers):
            raise ShapeError(f"negative fiber in {self.fibers}")

    def two_ordinal(self) -> TwoOrdinal:
        return TwoOrdinal(tuple(f + 1 for f in self.fibers))

    def to_json(self) -> dict:
        return {"fibers": list(self.fibers)}

    @classmethod
    def from_json(cls, data: dict) -> "TwoTree":
        return cls(tuple(data["fibers"]))


def tree_roundtrip(t: TwoTree) -> tuple[TwoOrdinal, TwoTree]:
    U = t.two_ordinal()
    return U, U.tree()


# -- [U] hom posets ---------------------------------------------------------

@dataclass(frozen=True)
class HomPoset:
    """hom_{[U]}(c1, c2): empty, {Id}, or a product of column ordinals."""

    shape: TwoOrdinal
    c1: int
    c2: int

    @property
    def factors(self) -> tuple[int, ...]:
        return self.shape.columns[self.c1:self.c2]

    @property
    def is_empty(self) -> bool:
        return self.c1 > self.c2

    def __len__(self) -> int:
        return 0 if self.is_empty else prod(self.factors)

    @property
    def min(self) -> Optional[Path]:
        return None if self.is_empty else self.shape.min_path(self.c1, self.c2)

    @property
    def max(self) -> Optional[Path]:
        return None if self.is_empty else self.shape.max_path(self.c1, self.c2)

    def __iter__(self) -> Iterator[Path]:
        if self.is_empty:
            return iter(())
        return iter(product(*(range(n) for n in self.factors)))

    def __contains__(self, path) -> bool:
        return (not self.is_empty and len(path) == len(self.factors)
                and all(0 <= p < n for p, n in zip(path, self.factors)))

    @staticmethod
    def leq(a: Path, b: Path) -> bool:
        return all(x <= y for x, y in zip(a, b))


def hom_poset(U: TwoOrdinal, c1: int, c2: int) -> HomPoset:
    U.check_object(c1)
    U.check_object(c2)
    return HomPoset(U, c1, c2)


# -- balls ------------------------------------------------------------------

@dataclass(frozen=True)
class Ball:
    host: TwoOrdinal
    cols: tuple[int, int]
    cells: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "cols", tuple(self.cols))
        object.__setattr__(self, "cells", tuple(tuple(c) for c in self.cells))
        a, b = self.cols
        self.host.check_object(a)
        self.host.check_object(b)
        if a > b:
            raise ShapeError(f"ball object range {self.cols} is empty")
        if len(self.cells) != b - a:
            raise ShapeError(f"ball over {self.cols} needs {b - a} cell intervals")
        for c, (lo, hi) in zip(range(a, b), self.cells):
            if not (0 <= lo <= hi < self.host.columns[c]):
                raise ShapeError(f"interval {(lo, hi)} outside column {c} of {self.host}")

    @property
    def shape(self) -> TwoOrdinal:
        return TwoOrdinal(tuple(hi - lo + 1 for lo, hi in self.cells))

    def to_host(self, cell: Cell) -> Cell:
        c, i = cell
        return (c + self.cols[0], i + self.cells[c][0])

    def from_host(self, cell: Cell) -> Cell:
        c, i = cell
        return (c - self.cols[0], i - self.cells[c - self.cols[0]][0])

    def host_cells(self) -> list[Cell]:
        return [self.to_host(x) for x in self.shape.cells()]

    def contains_cell(self, cell: Cell) -> bool:
        c, i = cell
        a, b = self.cols
        if not (a <= c < b):
            return False
        lo, hi = self.cells[c - a]
        return lo <= i and i + 1 <= hi

    def to_json(self) -> dict:
        return {"cols": list(self.cols), "cells": [list(x) for x in self.cells]}

    @classmethod
    def from_json(cls, host: TwoOrdinal, data: dict) -> "Ball":
        return cls(host, tuple(data["cols"]), tuple(tuple(x) for x in data["cells"]))


def globe_ball(U: TwoOrdinal, cell: Cell) -> Ball:
    """The minimal ball (a globe) of a 2-cell."""
    U.check_cell(cell)
    c, i = cell
    return Ball(U, (c, c + 1), ((i, i + 1),))


def whole_ball(U: TwoOrdinal) -> Ball:
    return Ball(U, (0, U.n_columns), tuple((0, n - 1) for n in U.columns))


# -- maps of 2-ordinals -------------------------------------------------------

@dataclass(frozen=True)
class TwoOrdinalMap:
    src: TwoOrdinal
    dst: TwoOrdinal
    obj: tuple[int, ...]
    gens: tuple[tuple[Path, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "obj", tuple(int(x) for x in self.obj))
        object.__setattr__(self, "gens", tuple(
            tuple(tuple(int(v) for v in path) for path in col) for col in self.gens))
        U, V = self.src, self.dst
        if len(self.obj) != V.n_objects:
            raise ShapeError(f"object map needs {V.n_objects} values, got {len(self.obj)}")
        if any(not (0 <= x < U.n_objects) for x in self.obj):
            raise ShapeError(f"object map {self.obj} leaves {U}")
        if len(self.gens) != V.n_columns:
            raise ShapeError(f"need generator images for {V.n_columns} columns")
        for j, col in enumerate(self.gens):
            if len(col) != V.columns[j]:
                raise ShapeError(f"column {j} of {V} has {V.columns[j]} generators")
            width = self.obj[j + 1] - self.obj[j]
            for path in col:
                if width >= 0 and len(path) != width:
                    raise ShapeError(f"image of a generator in column {j} must cross {width} columns")

    def image_path(self, d1: int, path: Path) -> Path:
        """[P] applied to a V-path starting at object d1."""
        out: list[int] = []
        for k, g in enumerate(path):
            out.extend(self.gens[d1 + k][g])
        return tuple(out)

    def to_json(self) -> dict:
        return {"src": self.src.to_json(), "dst": self.dst.to_json(),
                "obj": list(self.obj), "gens": [[list(p) for p in col] for col in self.gens]}

    @classmethod
    def from_json(cls, data: dict, src: TwoOrdinal = None, dst: TwoOrdinal = None) -> "TwoOrdinalMap":
        src = src or TwoOrdinal.from_json(data["src"])
        dst = dst or TwoOrdinal.from_json(data["dst"])
        return cls(src, dst, tuple(data["obj"]), tuple(tuple(tuple(p) for p in col) for col in data["gens"]))


@dataclass(frozen=True)
class MapReport:
    ok: bool
    clause: Optional[str] = None
    witness: object = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "clause": self.clause, "witness": self.witness}


def validate_map(P: TwoOrdinalMap) -> MapReport:
    U = P.src
    o = P.obj
    if any(a > b for a, b in zip(o, o[1:])):
        return MapReport(False, "object map not monotone", list(o))
    if o[0] != 0 or o[-1] != U.n_objects - 1:
        return MapReport(False, "object map not dominant", list(o))
    for j, col in enumerate(P.gens):
        lo, hi = o[j], o[j + 1]
        hom = hom_poset(U, lo, hi)
        for g, path in enumerate(col):
            if path not in hom:
                return MapReport(False, "generator image out of range", {"column": j, "gen": g})
        for g in range(len(col) - 1):
            if not HomPoset.leq(col[g], col[g + 1]):
                return MapReport(False, "generator images not monotone",
                                 {"column": j, "gens": [g, g + 1]})
        if col[0] != hom.min:
            bad = next(k for k, x in enumerate(col[0]) if x != 0)
            return MapReport(False, "least element not preserved",
                             {"column": j, "u_column": lo + bad})
        if col[-1] != hom.max:
            bad = next(k for k, (x, m) in enumerate(zip(col[-1], hom.max)) if x != m)
            return MapReport(False, "greatest element not preserved",
                             {"column": j, "u_column": lo + bad})
    return MapReport(True)


def identity_map(U: TwoOrdinal) -> TwoOrdinalMap:
    return TwoOrdinalMap(U, U, tuple(range(U.n_objects)),
                         tuple(tuple((g,) for g in range(n)) for n in U.columns))


def terminal_map(U: TwoOrdinal) -> TwoOrdinalMap:
    """The unique map U -> globe."""
    n = U.n_columns
    return TwoOrdinalMap(U, GLOBE, (0, n), ((U.min_path(0, n), U.max_path(0, n)),))


def compose_maps(Q: TwoOrdinalMap, P: TwoOrdinalMap) -> TwoOrdinalMap:
    """Q after P for P: U -> V, Q: V -> W (the 2-functor is [P] after [Q])."""
    if P.dst != Q.src:
        raise ShapeError("maps are not composable")
    obj = tuple(P.obj[x] for x in Q.obj)
    gens = tuple(
        tuple(P.image_path(Q.obj[j], path) for path in col)
        for j, col in enumerate(Q.gens))
    return TwoOrdinalMap(P.src, Q.dst, obj, gens)


def _chains(lo: Path, hi: Path, length: int) -> Iterator[tuple[Path, ...]]:
    """Monotone chains t_0 <= ... <= t_{length-1} from lo to hi in a product poset."""
    if length == 1:
        if lo == hi:
            yield (lo,)
        return
    boxes = [range(a, b + 1) for a, b in zip(lo, hi)]

    def rec(prev: Path, remaining: int):
        if remaining == 1:
            if HomPoset.leq(prev, hi):
                yield (hi,)
            return
        for t in product(*(range(p, b + 1) for p, b in zip(prev, hi))):
            for rest in rec(t, remaining - 1):
                yield (t,) + rest

    if not all(len(b) for b in boxes):
        return
    for rest in rec(lo, length - 1):
        yield (lo,) + rest


def enumerate_maps(U: TwoOrdinal, V: TwoOrdinal, guard: int = 100_000) -> list[TwoOrdinalMap]:
    """Every valid map U -> V (deterministic order)."""
    out = []
    for om in enumerate_monotone(V.objects, U.objects, dominant_only=True):
        o = om.values
        per_column = []
        for j in range(V.n_columns):
            lo, hi = U.min_path(o[j], o[j + 1]), U.max_path(o[j], o[j + 1])
            per_column.append(list(_chains(lo, hi, V.columns[j])))
        for gens in product(*per_column):
            out.append(TwoOrdinalMap(U, V, o, gens))
            if len(out) > guard:
                raise GuardExceeded(f"more than {guard} maps {U} -> {V}")
    return out


def preimage_ball(P: TwoOrdinalMap, B: Ball) -> Ball:
    if B.host != P.dst:
        raise ShapeError("ball does not live in the target of the map")
    a, b = B.cols
    cells = []
    for j in range(a, b):
        lo, hi = B.cells[j - a]
        im_lo, im_hi = P.gens[j][lo], P.gens[j][hi]
        cells.extend(zip(im_lo, im_hi))
    return Ball(P.src, (P.obj[a], P.obj[b]), tuple(cells))


def cell_preimage(P: TwoOrdinalMap, cell: Cell) -> Ball:
    return preimage_ball(P, globe_ball(P.dst, cell))


def restrict_map(P: TwoOrdinalMap, B: Ball) -> TwoOrdinalMap:
    """P restricted to preimage_ball(P, B) -> B (as standalone 2-ordinals)."""
    pre = preimage_ball(P, B)
    a, b = B.cols
    base = pre.cols[0]
    obj = tuple(P.obj[d] - base for d in range(a, b + 1))
    gens = []
    for j in range(a, b):
        lo, hi = B.cells[j - a]
        col = []
        for g in range(lo, hi + 1):
            path = P.gens[j][g]
            start = P.obj[j] - base
            col.append(tuple(x - pre.cells[start + k][0] for k, x in enumerate(path)))
        gens.append(tuple(col))
    return TwoOrdinalMap(pre.shape, B.shape, obj, tuple(gens))


# -- 2-trees and induced maps -------------------------------------------------

@dataclass(frozen=True)
class TreeMap:
    """A commutative square of monotone maps F_U -> F_V over C_U -> C_V."""

    src: TwoOrdinal
    dst: TwoOrdinal
    cols: tuple[int, ...]
    cells: tuple[Cell, ...]  # image of each src 2-cell, in src.cells() order

    def cell_image(self, cell: Cell) -> Cell:
        return self.cells[self.src.cells().index(cell)]

    def is_commutative(self) -> bool:
        return all(img[0] == self.cols[c] for (c, _), img in zip(self.src.cells(), self.cells))

    def is_monotone(self) -> bool:
        """The column map is monotone and the cell map is monotone on each fiber.

        Across fibers the cell map need not be monotone: the worked example's
        column-0 cells land in the second globe and the first column-1 cell in
        the first one.
        """
        vcells = self.dst.cells()
        if any(a > b for a, b in zip(self.cols, self.cols[1:])):
            return False
        for (c, _), (c2, _), x, y in zip(self.src.cells(), self.src.cells()[1:], self.cells, self.cells[1:]):
            if c == c2 and vcells.index(x) > vcells.index(y):
                return False
        return True


def induced_tree_map(P: TwoOrdinalMap) -> TreeMap:
    U, V = P.src, P.dst
    cols = []
    for c in range(U.n_columns):
        js = [j for j in range(V.n_columns) if P.obj[j] <= c and c + 1 <= P.obj[j + 1]]
        if len(js) != 1:
            raise ShapeError(f"U-column {c} is not covered by exactly one V-column")
        cols.append(js[0])
    cells = []
    for cell in U.cells():
        hits = [g for g in V.cells_in_column(cols[cell[0]]) if cell_preimage(P, g).contains_cell(cell)]
        if len(hits) != 1:
            raise ShapeError(f"2-cell {cell} lies in {len(hits)} preimage globes")
        cells.append(hits[0])
    return TreeMap(U, V, tuple(cols), tuple(cells))


def compose_tree_maps(g: TreeMap, f: TreeMap) -> TreeMap:
    return TreeMap(f.src, g.dst, tuple(g.cols[c] for c in f.cols),
                   tuple(g.cell_image(x) for x in f.cells))


def identity_tree_map(U: TwoOrdinal) -> TreeMap:
    return TreeMap(U, U, tuple(range(U.n_columns)), tuple(U.cells()))


# -- diagrams -----------------------------------------------------------------

@dataclass(frozen=True)
class Diagram:
    """A functor [U]_1 -> C given on objects and generating 1-arrows.

    ``compose(g, f)`` is g after f; ``identity(x)`` the identity of an object;
    ``source``/``target`` read endpoints of an arrow.  Generators are free,
    so functoriality is compatibility of endpoints.
    """

    shape: TwoOrdinal
    objects: tuple
    arrows: tuple  # arrows[c][i]: objects[c] -> objects[c+1]
    compose: Callable = field(compare=False, repr=False, default=None)
    identity: Callable = field(compare=False, repr=False, default=None)
    source: Callable = field(compare=False, repr=False, default=None)
    target: Callable = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if len(self.objects) != self.shape.n_objects:
            raise ShapeError("one object per object of the shape")
        if tuple(len(c) for c in self.arrows) != self.shape.columns:
            raise ShapeError("one arrow per generating 1-arrow")
        if self.source is not None:
            for c, col in enumerate(self.arrows):
                for a in col:
                    if self.source(a) is not self.objects[c] or self.target(a) is not self.objects[c + 1]:
                        raise ShapeError(f"arrow in column {c} has wrong endpoints")

    def _with(self, shape, objects, arrows) -> "Diagram":
        return Diagram(shape, tuple(objects), tuple(tuple(c) for c in arrows),
                       self.compose, self.identity, self.source, self.target)

    def path(self, c1: int, path: Path):
        """Composite arrow along a path starting at object c1."""
        if not path:
            return self.identity(self.objects[c1])
        out = self.arrows[c1][path[0]]
        for k, g in enumerate(path[1:], start=1):
            out = self.compose(self.arrows[c1 + k][g], out)
        return out

    def restrict(self, B: Ball) -> "Diagram":
        a, b = B.cols
        return self._with(B.shape, self.objects[a:b + 1],
                          [self.arrows[c][lo:hi + 1] for c, (lo, hi) in zip(range(a, b), B.cells)])

    def globe(self, cell: Cell) -> tuple:
        """(source object, target object, lower arrow, upper arrow) of a 2-cell."""
        c, i = cell
        return self.objects[c], self.objects[c + 1], self.arrows[c][i], self.arrows[c][i + 1]

    def pushforward(self, P: TwoOrdinalMap) -> "Diagram":
        """P_* D, the V-diagram obtained by precomposing with [P]."""
        V = P.dst
        objs = [self.objects[P.obj[d]] for d in range(V.n_objects)]
        arrows = [[self.path(P.obj[j], path) for path in col] for j, col in enumerate(P.gens)]
        return self._with(V, objs, arrows)

    def boundary(self) -> "Diagram":
        return self.pushforward(terminal_map(self.shape))
