"""Realization of seq: normalized chains of the multisimplicial sets
seq(U)^J and the cosimplicial complex J -> C(U, J) whose totalization is O(U).

A cell of C(U, J) is a nondegenerate element of seq(U) with output J and
arbitrary input colors.  The element with k_f + 1 occurrences of each 2-cell
f sits in degree -sum k_f.  Degenerate means two adjacent equal letters with
equal output value (the image of a lower degeneracy).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

from .complexes import (ChainComplex, CosimplicialComplex, complex_from_keyed, random_normalized,
                        solve_total, total_d)
from .errors import BoundExceeded, GuardExceeded, InvariantError, ShapeError
from .linalg import QF, Field, axpy
from .ordinal import MonotoneMap
from .seq import Coloring, SeqElement, is_nondegenerate, lower_face, restructure_upper
from .two_ordinal import Cell, TwoOrdinal


def nondegenerate_cells(shape: TwoOrdinal, out: int, max_dim: int,
                        guard: int = 500_000) -> dict[int, list[SeqElement]]:
    """Nondegenerate elements of seq(shape) with output ``out``, by dimension <= max_dim."""
    if out < 1:
        raise ShapeError("output color must be non-empty")
    cells = shape.cells()
    cap = len(cells) + max_dim
    word: list[Cell] = []
    w: list[int] = []
    last: dict[Cell, int] = {}
    by_dim: dict[int, list[SeqElement]] = {}
    count = 0

    def allowed(f: Cell) -> bool:
        col, i = f
        if i > 0 and (col, i - 1) not in last:
            return False
        if any((col, j) in last for j in range(i + 1, shape.columns[col] - 1)):
            return False
        p = last.get(f)
        if p is not None and any(word[q][0] >= col for q in range(p + 1, len(word))):
            return False
        return True

    def rec():
        nonlocal count
        if len(last) == len(cells):
            e = SeqElement(shape, tuple(word), tuple(w), out)
            by_dim.setdefault(len(word) - len(cells), []).append(e)
            count += 1
            if count > guard:
                raise GuardExceeded(f"more than {guard} cells of seq({shape.columns}) at J={out}")
        if len(word) >= cap:
            return
        lo = w[-1] if w else 0
        for f in cells:
            if not allowed(f):
                continue
            prev = last.get(f)
            for v in range(lo, out):
                if word and word[-1] == f and w[-1] == v:
                    continue
                word.append(f)
                w.append(v)
                last[f] = len(word) - 1
                rec()
                word.pop()
                w.pop()
                if prev is None:
                    del last[f]
                else:
                    last[f] = prev

    rec()
    for k in by_dim:
        by_dim[k].sort(key=SeqElement.key)
    return by_dim


def cell_boundary(e: SeqElement, field: Field = QF) -> dict[SeqElement, object]:
    """Signed sum of lower faces; degenerate faces vanish."""
    out: dict = {}
    dims = e.dims()
    before = 0
    for f, k in zip(e.shape.cells(), dims):
        if k > 0:
            for i in range(k + 1):
                face = lower_face(e, f, i)
                if is_nondegenerate(face):
                    axpy(out, {face: field.one}, (-1) ** ((before + i) % 2))
        before += k
    return out


def segment_model_dimension(shape: TwoOrdinal, out: int) -> int:
    """Dimension of S(U) x Delta^J predicted by the segment decomposition.

    Collapsing columns from the top, column m contributes a simplex of
    dimension s_m (its number of 2-cells) when the higher columns carry a
    segment of positive length, and a point otherwise.
    """
    sizes = [c - 1 for c in shape.columns]
    dim, above = 0, 0
    for s in reversed(sizes):
        if above > 0:
            dim += s
        above += s
    if sum(sizes) > 0:
        dim += out - 1
    return dim


@dataclass
class Realization:
    """C(U, J) truncated at cell dimension ``degree_bound``."""

    shape: TwoOrdinal
    out: int
    degree_bound: int
    cells: dict[int, list[SeqElement]]  # dimension -> cells
    complex: ChainComplex
    exhausted: bool

    @property
    def max_degree(self) -> int:
        """Largest cell dimension present (cells sit in degree minus this)."""
        return max(self.cells) if self.cells else 0

    def reliable_degrees(self) -> list[int]:
        top = self.max_degree if self.exhausted else self.degree_bound - 1
        return list(range(-top, 1))

    def homology(self) -> dict[int, int]:
        h = self.complex.homology()
        return {k: h.get(k, 0) for k in self.reliable_degrees()}

    def cell_counts(self) -> dict[int, int]:
        return {-k: len(v) for k, v in sorted(self.cells.items())}

    def to_json(self) -> dict:
        return {"columns": list(self.shape.columns), "output": self.out,
                "degree_bound": self.degree_bound, "exhausted": self.exhausted,
                "max_degree": self.max_degree,
                "cells": {str(k): n for k, n in sorted(self.cell_counts().items())},
                "homology": {str(k): n for k, n in sorted(self.homology().items())},
                "differential": self.sparse_differential()}

    def sparse_differential(self) -> dict:
        """Nonzero entries of d as [row, column, value] per source degree."""
        F = self.complex.field
        return {str(k): [[i, j, F.to_json(c)] for j, col in enumerate(self.complex.differential(k))
                         for i, c in sorted(col.items())]
                for k in sorted(self.complex.dims) if self.complex.dims.get(k + 1)}


def realize_seq(coloring: Coloring | TwoOrdinal, degree_bound: int, field: Field = QF,
                out: Optional[int] = None, guard: int = 500_000) -> Realization:
    """Normalized chains of seq(U)^J over all lower indices.

    Only the shape and the output color of ``coloring`` matter: the input
    colors are the simplicial indices being realized.  Cells are enumerated
    through dimension ``degree_bound + 1``; the result is exhausted when that
    dimension is empty (every nondegenerate cell of dimension n > 0 has a
    nondegenerate face, so nothing lies beyond).
    """
    if degree_bound < 0:
        raise ShapeError("degree bound must be non-negative")
    if isinstance(coloring, Coloring):
        shape, J = coloring.shape, coloring.output if out is None else out
    else:
        shape, J = coloring, out
    if J is None:
        raise ShapeError("output color needed")
    found = nondegenerate_cells(shape, J, degree_bound + 1, guard)
    exhausted = not found.get(degree_bound + 1)
    cells = {k: v for k, v in found.items() if k <= degree_bound}
    basis = {-k: v for k, v in cells.items()}

    def d(e):
        if e.dimension == 0:
            return {}
        return cell_boundary(e, field)

    C = complex_from_keyed(field, basis, d)
    return Realization(shape, J, degree_bound, cells, C, exhausted)


@dataclass
class ContractibilityReport:
    shape: TwoOrdinal
    out: int
    ok: bool
    exhausted: bool
    h0: int
    higher: int
    euler: int
    augmentation_ok: bool
    max_degree: int
    predicted_dimension: int
    homology: dict[int, int] = field(default_factory=dict)
    reason: str = ""

    def to_json(self) -> dict:
        return {"columns": list(self.shape.columns), "output": self.out, "ok": self.ok,
                "H0": self.h0, "higher": self.higher, "exhausted": self.exhausted,
                "euler": self.euler, "augmentation": self.augmentation_ok,
                "max_degree": self.max_degree, "predicted_dimension": self.predicted_dimension,
                "homology": {str(k): n for k, n in sorted(self.homology.items())},
                "reason": self.reason}


def augmentation_qiso_check(coloring: Coloring | TwoOrdinal, degree_bound: int, field: Field = QF,
                            out: Optional[int] = None) -> ContractibilityReport:
    """Check that the augmentation C(U, J) -> k is a quasi-isomorphism.

    Also compares the top cell dimension and the Euler characteristic with
    the segment model S(U, J) = S(U) x Delta^J, a product of simplices.
    """
    R = realize_seq(coloring, degree_bound, field, out)
    h = R.homology()
    h0 = h.get(0, 0)
    higher = sum(n for k, n in h.items() if k != 0)
    # augmentation: every vertex to 1; it must kill boundaries and be onto
    aug_ok = bool(R.cells.get(0))
    for col in R.complex.differential(-1):
        if sum(col.values(), field.zero) != field.zero:
            aug_ok = False
    predicted = segment_model_dimension(R.shape, R.out)
    euler = R.complex.euler_characteristic()
    reasons = []
    if not R.exhausted:
        reasons.append("enumeration truncated")
    if h0 != 1:
        reasons.append(f"H^0 has dimension {h0}")
    if higher:
        reasons.append(f"higher homology of total dimension {higher}")
    if not aug_ok:
        reasons.append("augmentation is not a chain map onto k")
    if R.exhausted and R.max_degree != predicted:
        reasons.append(f"top cell dimension {R.max_degree}, segment model predicts {predicted}")
    if R.exhausted and euler != 1:
        reasons.append(f"Euler characteristic {euler}")
    return ContractibilityReport(R.shape, R.out, not reasons, R.exhausted, h0, higher, euler, aug_ok,
                                 R.max_degree, predicted, h, "; ".join(reasons))


# -- the cosimplicial complex J -> C(U, J) and chains of O(U) -------------------

def epsilon(n: int) -> int:
    """Sign relating stored level components to maps out of S: (-1)^(n(n+1)/2)."""
    return -1 if (n * (n + 1) // 2) % 2 else 1


class SeqCosimplicial(CosimplicialComplex):
    """J -> C(U, J), with upper maps postcomposing W; totalizes to O(U)."""

    def __init__(self, shape: TwoOrdinal, field: Field = QF, guard: int = 500_000):
        self.shape = shape
        self.field = field
        self.guard = guard
        self._cells: dict[int, list[SeqElement]] = {}

    def basis(self, n: int) -> list[SeqElement]:
        cells = self._cells.get(n)
        if cells is None:
            top = segment_model_dimension(self.shape, n + 1)
            found = nondegenerate_cells(self.shape, n + 1, top + 1, self.guard)
            if found.get(top + 1):
                raise InvariantError(f"cells of {self.shape.columns} at J=[{n}] exceed dimension {top}")
            cells = [e for k in sorted(found) for e in found[k]]
            self._cells[n] = cells
        return cells

    def degree(self, n: int, e: SeqElement) -> int:
        return -e.dimension

    def d(self, n: int, v: Mapping) -> dict:
        out: dict = {}
        for e, c in v.items():
            if e.dimension:
                axpy(out, cell_boundary(e, self.field), c)
        return out

    def push(self, sigma: MonotoneMap, v: Mapping) -> dict:
        out: dict = {}
        for e, c in v.items():
            e2 = restructure_upper(e, sigma)
            if is_nondegenerate(e2):
                axpy(out, {e2: c})
        return out

    def internal_range(self, n: int):
        return (-segment_model_dimension(self.shape, n + 1), 0)


_SEQ_COSIMPLICIAL: dict = {}


def seq_cosimplicial(shape: TwoOrdinal, field: Field = QF) -> SeqCosimplicial:
    """Shared instance per (shape, field), so normalized bases are computed once."""
    key = (shape, field)
    K = _SEQ_COSIMPLICIAL.get(key)
    if K is None:
        K = _SEQ_COSIMPLICIAL[key] = SeqCosimplicial(shape, field)
    return K


@dataclass
class LevelFamily:
    """An element of a totalization: normalized components per level, known up to ``bound``."""

    degree: int
    levels: dict[int, dict]
    bound: int

    def component(self, n: int) -> dict:
        if n > self.bound:
            raise BoundExceeded(f"component at level {n} requested, known up to {self.bound}")
        return self.levels.get(n, {})

    def is_zero(self) -> bool:
        return not any(self.levels.values())

    def truncate(self, bound: int) -> "LevelFamily":
        return replace(self, levels={n: v for n, v in self.levels.items() if n <= bound},
                       bound=min(bound, self.bound))


@dataclass
class OperadChain(LevelFamily):
    """An element of O(U) = Tot(J -> C(U, J))."""

    shape: TwoOrdinal = None
    field: Field = QF

    @property
    def cosimplicial(self) -> SeqCosimplicial:
        return seq_cosimplicial(self.shape, self.field)

    def differential(self) -> "OperadChain":
        return OperadChain(self.degree + 1, total_d(self.cosimplicial, self.levels, self.degree, self.bound),
                           self.bound, self.shape, self.field)

    def __sub__(self, other: "OperadChain") -> "OperadChain":
        return self + other.scaled(-1)

    def __add__(self, other: "OperadChain") -> "OperadChain":
        if other.shape != self.shape or other.degree != self.degree:
            raise ShapeError("adding chains of different shape or degree")
        out = {n: dict(v) for n, v in self.levels.items()}
        for n, v in other.levels.items():
            axpy(out.setdefault(n, {}), v)
        return OperadChain(self.degree, {n: v for n, v in out.items() if v}, min(self.bound, other.bound),
                           self.shape, self.field)

    def scaled(self, c) -> "OperadChain":
        return OperadChain(self.degree, {n: {e: x * c for e, x in v.items()} for n, v in self.levels.items()},
                           self.bound, self.shape, self.field)

    def augmentation(self):
        """Sum of the level-0 coefficients (the map O(U) -> k in degree 0)."""
        if self.degree != 0:
            return self.field.zero
        return sum(self.levels.get(0, {}).values(), self.field.zero)

    def to_json(self) -> dict:
        F = self.field
        return {"columns": list(self.shape.columns), "degree": self.degree, "bound": self.bound,
                "levels": {str(n): [[{"word": [list(x) for x in e.word], "w": list(e.w)}, F.to_json(c)]
                                    for e, c in sorted(v.items(), key=lambda t: (t[0].dimension, t[0].key()))]
                           for n, v in sorted(self.levels.items()) if v}}


def globe_unit(level_bound: int, field: Field = QF) -> OperadChain:
    """The unit of O(globe): level n is +-(the identity of [n])."""
    levels = {}
    for n in range(level_bound + 1):
        e = SeqElement(TwoOrdinal((2,)), ((0, 0),) * (n + 1), tuple(range(n + 1)), n + 1)
        levels[n] = {e: field(epsilon(n))}
    return OperadChain(0, levels, level_bound, TwoOrdinal((2,)), field)


def lift_vertex(shape: TwoOrdinal, vertex: Mapping[SeqElement, object], level_bound: int,
                field: Field = QF) -> OperadChain:
    """A degree-0 cocycle of O(U) whose level-0 component is ``vertex``."""
    K = seq_cosimplicial(shape, field)
    fixed = {0: {e: field(c) for e, c in vertex.items() if c}}
    sol = solve_total(K, 0, level_bound, {}, fixed=fixed, free_levels=range(1, level_bound + 1))
    if sol is None:
        raise InvariantError(f"no cocycle lift of {vertex} through level {level_bound}")
    return OperadChain(0, sol, level_bound, shape, field)


def interleaving_cells(shape: TwoOrdinal) -> list[SeqElement]:
    """Degree-0 cells at J = [0]: the interleavings of single occurrences."""
    return list(nondegenerate_cells(shape, 1, 0).get(0, []))


def solve_homotopy(target: OperadChain) -> Optional[OperadChain]:
    """h of degree one less with D h = target through the target's bound, or None."""
    K = target.cosimplicial
    sol = solve_total(K, target.degree - 1, target.bound, target.levels)
    if sol is None:
        return None
    return OperadChain(target.degree - 1, sol, target.bound, target.shape, target.field)


def random_operad_chain(shape: TwoOrdinal, degree: int, level_bound: int, rng, field: Field = QF) -> OperadChain:
    K = seq_cosimplicial(shape, field)
    return OperadChain(degree, random_normalized(K, degree, level_bound, rng), level_bound, shape, field)


# -- pairing of level families through cells ----------------------------------------

def koszul_sign(source: list[tuple[object, int]], target: list[object]) -> int:
    """Sign of reordering graded symbols from ``source`` (name, degree) into ``target`` order."""
    pos = {name: i for i, name in enumerate(target)}
    odd = [pos[name] for name, deg in source if deg % 2]
    inv = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i] > odd[j])
    return -1 if inv % 2 else 1


def coend_pairing(outer: LevelFamily, inputs: list[LevelFamily], evaluate, field: Field) -> dict[int, dict]:
    """Pair an operad chain with level families, one per 2-cell (in cell order).

    Level n of the result is the sum over cells e of the level-n component of
    ``outer`` of  c * sign * evaluate(e, [input_f at level k_f(e)]).
    The sign puts ``outer`` first (Koszul rule) and converts the stored
    level components to maps out of S.
    """
    M = sum(x.degree for x in inputs)
    base = (-1) ** ((outer.degree * M) % 2)
    out: dict[int, dict] = {}
    for n, chain in outer.levels.items():
        acc: dict = {}
        for e, c in chain.items():
            ks = e.dims()
            comps = [x.component(k) for x, k in zip(inputs, ks)]
            if any(not v for v in comps):
                continue
            s = base
            for f, k in enumerate(ks):
                s *= epsilon(k)
                if k % 2:
                    s *= (-1) ** (sum(x.degree for x in inputs[f + 1:]) % 2)
            val = evaluate(e, comps)
            if val:
                axpy(acc, val, c * s)
        if acc:
            out[n] = acc
    return out


def compose_cells(P, outer_cell: SeqElement, inner: list[dict], field: Field = QF) -> dict:
    """compose_seq extended to linear combinations of inner cells (one per target 2-cell).

    The lower simplices of the inner cells are reordered into the source cell
    order with the Koszul sign; degenerate composites vanish.
    """
    from itertools import product as iproduct
    from .seq import compose_seq
    from .two_ordinal import cell_preimage
    V = P.dst
    gcells = V.cells()
    balls = [cell_preimage(P, g) for g in gcells]
    out: dict = {}
    for combo in iproduct(*[list(v.items()) for v in inner]):
        coef = field.one
        for _, c in combo:
            coef = coef * c
        r = compose_seq(P, {g: x for g, (x, _) in zip(gcells, combo)}, outer_cell, check=False)
        if not is_nondegenerate(r):
            continue
        source = []
        for ball, (x, _) in zip(balls, combo):
            for f, k in zip(x.shape.cells(), x.dims()):
                source.append((ball.to_host(f), k))
        s = koszul_sign(source, P.src.cells())
        axpy(out, {r: coef * s})
    return out


def operad_compose_chains(P, inner: Mapping[Cell, OperadChain], outer: OperadChain,
                          level_bound: Optional[int] = None) -> OperadChain:
    """Chain-level composition O(V) (x) (x)_g O(ball_g) -> O(U) along P: U -> V."""
    from .two_ordinal import cell_preimage
    U, V = P.src, P.dst
    if outer.shape != V:
        raise ShapeError("outer chain does not live on the target shape")
    inputs = []
    for g in V.cells():
        x = inner.get(g)
        if x is None:
            raise ShapeError(f"no inner chain for 2-cell {g}")
        if x.shape != cell_preimage(P, g).shape:
            raise ShapeError(f"inner chain for {g} lives on {x.shape.columns}")
        inputs.append(x)
    bound = outer.bound if level_bound is None else min(level_bound, outer.bound)
    trimmed = outer.truncate(bound)
    levels = coend_pairing(trimmed, inputs, lambda e, comps: compose_cells(P, e, comps, outer.field), outer.field)
    return OperadChain(outer.degree + sum(x.degree for x in inputs), levels, bound, U, outer.field)
