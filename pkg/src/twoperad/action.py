"""The seq-action on derived natural transformations and its realization.

``act_seq`` evaluates an element of seq(U) on cochains attached to the
2-cells of a U-diagram of dg-categories, processing columns from the left
(each step is the map mu_W), and composes the final chain.  ``act_O`` extends
this through the totalizations.  Signs follow the Koszul rule with the
operators written first, in 2-cell order, followed by the chain in
composition order (top factor first).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Optional, Sequence

from .complexes import Totalization, degree_complete, random_normalized, solve_total, total_d, totalize
from .dg_cat import Chains, DgCategory, DgFunctor, Shom, functor_compose, identity_functor, naive_hom
from .errors import BoundExceeded, InvariantError, ShapeError
from .linalg import Field, axpy, nullspace
from .ordinal import MonotoneMap, Ordinal
from .realize import (LevelFamily, OperadChain, coend_pairing, interleaving_cells, koszul_sign, lift_vertex,
                      solve_homotopy)
from .seq import Coloring, SeqElement, enumerate_seq, validate_seq
from .two_ordinal import Cell, Diagram, TwoOrdinal


# -- globes and diagrams of dg-categories -------------------------------------------

@dataclass
class GlobeInC:
    """Two dg-categories and two parallel dg-functors F, G: A -> B."""

    F: DgFunctor
    G: DgFunctor

    def __post_init__(self):
        if self.F.src is not self.G.src or self.F.dst is not self.G.dst:
            raise ShapeError("F and G must share source and target")

    @property
    def A(self) -> DgCategory:
        return self.F.src

    @property
    def B(self) -> DgCategory:
        return self.F.dst

    def shom(self) -> Shom:
        return Shom(self.F, self.G)


def dg_diagram(shape: TwoOrdinal, categories: Sequence[DgCategory],
               functors: Sequence[Sequence[DgFunctor]]) -> Diagram:
    """A U-diagram in the 2-category of dg-categories."""
    return Diagram(shape, tuple(categories), tuple(tuple(c) for c in functors),
                   compose=functor_compose, identity=identity_functor,
                   source=lambda F: F.src, target=lambda F: F.dst)


def constant_diagram(shape: TwoOrdinal, A: DgCategory, functor: Optional[DgFunctor] = None) -> Diagram:
    """Every object A, every 1-arrow the same endofunctor (identity by default)."""
    F = functor or identity_functor(A)
    return dg_diagram(shape, [A] * shape.n_objects, [[F] * n for n in shape.columns])


def boundary_shom(D: Diagram) -> Shom:
    """shom for p_* D: the composites along the least and greatest paths."""
    b = D.boundary()
    return Shom(b.arrows[0][0], b.arrows[0][1])


def cell_shom(D: Diagram, cell: Cell) -> Shom:
    _, _, lo, hi = D.globe(cell)
    return Shom(lo, hi)


# -- K(J, W) ----------------------------------------------------------------------

@dataclass(frozen=True)
class KOrdinal:
    """K = disjoint union of intervals [m_r, M_r] of J, with pi: K -> R and kappa: K -> J."""

    components: tuple[tuple[int, int], ...]

    @property
    def elements(self) -> list[tuple[int, int]]:
        return [(r, j) for r, (m, M) in enumerate(self.components) for j in range(m, M + 1)]

    @property
    def size(self) -> int:
        return sum(M - m + 1 for m, M in self.components)

    def index(self, r: int, j: int) -> int:
        m, M = self.components[r]
        if not (m <= j <= M):
            raise InvariantError(f"{j} is outside component {r} = [{m}, {M}]")
        return sum(b - a + 1 for a, b in self.components[:r]) + j - m

    def pi(self) -> list[int]:
        return [r for r, _ in self.elements]

    def kappa(self) -> list[int]:
        return [j for _, j in self.elements]

    def labels(self, functors: Sequence[str], objects: Optional[Sequence[str]] = None) -> list[str]:
        """Y(j_r) = F_r(X(kappa(j_r))) as strings."""
        return [f"{functors[r]}({objects[j] if objects else j})" for r, j in self.elements]

    def to_json(self) -> dict:
        return {"components": [list(c) for c in self.components], "pi": self.pi(), "kappa": self.kappa()}


@dataclass(frozen=True)
class EvaluationContext:
    """The combinatorial part of mu_W: sizes of J and R, the ordinals I_r and W."""

    J: int
    R: int
    I: tuple[int, ...]  # size of I_{r, r+1}, r = 0..R-2
    W: tuple[int, ...]  # on the concatenation of the I's

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(self.I))
        object.__setattr__(self, "W", tuple(self.W))
        if len(self.I) != self.R - 1:
            raise ShapeError("one ordinal per consecutive pair of R")
        if any(n < 1 for n in self.I) or len(self.W) != sum(self.I):
            raise ShapeError("W needs one value per element of the I's")
        if any(a > b for a, b in zip(self.W, self.W[1:])) or any(not 0 <= v < self.J for v in self.W):
            raise ShapeError("W must be monotone into J")

    def blocks(self) -> list[tuple[int, ...]]:
        out, p = [], 0
        for n in self.I:
            out.append(self.W[p:p + n])
            p += n
        return out


def build_K(ctx: EvaluationContext) -> KOrdinal:
    """m_r = sup of W over the I's ending at or before r (min J if empty);
    M_r = inf of W over the I's starting at or after r (max J if empty)."""
    blocks = ctx.blocks()
    comps = []
    for r in range(ctx.R):
        before = [v for b in blocks[:r] for v in b]
        after = [v for b in blocks[r:] for v in b]
        m = max(before) if before else 0
        M = min(after) if after else ctx.J - 1
        if m > M:
            raise InvariantError(f"component {r} would be empty: m = {m} > M = {M}")
        comps.append((m, M))
    return KOrdinal(tuple(comps))


# -- mu_W on basis terms ------------------------------------------------------------

@dataclass(frozen=True)
class _Term:
    coef: object
    objs: tuple
    pieces: tuple  # basis indices, index order
    degs: tuple


class _IndexedCochain:
    """A homogeneous cochain indexed by (X, u) for evaluation."""

    def __init__(self, vec: Mapping, degree: int):
        self.degree = degree
        self.table: dict = {}
        for (X, u, t), c in vec.items():
            if c:
                self.table.setdefault((X, u), {})[t] = c

    def __call__(self, X: tuple, u: tuple) -> dict:
        return self.table.get((X, u), {})


def _homogeneous_parts(S: Shom, n: int, vec: Mapping) -> dict[int, dict]:
    parts: dict[int, dict] = {}
    for key, c in vec.items():
        if c:
            parts.setdefault(S.degree(n, key), {})[key] = c
    return parts


def _stage(terms: list[_Term], A: DgCategory, Bcat: DgCategory, functors: Sequence[DgFunctor],
           ops: Sequence[_IndexedCochain], blocks: Sequence[Sequence[int]], later_degree: int,
           field: Field) -> list[_Term]:
    """One application of mu_W: the column with functors F_0..F_s and cochains h_r on F_r -> F_{r+1}."""
    if not terms:
        return []
    chains = Chains(A)
    out: list[_Term] = []
    N = len(terms[0].objs)
    K = build_K(EvaluationContext(N, len(functors), tuple(len(b) for b in blocks),
                                  tuple(v for b in blocks for v in b)))
    comps = K.components
    for term in terms:
        # piece vectors in Bcat, index order, plus the op placement for the sign
        new_objs = [functors[r].obj[term.objs[j]] for r, j in K.elements]
        vectors: list[list[tuple[int, object, int]]] = []  # per new piece: [(index, coeff, degree)]
        target_order: list = ["L"]
        # composition order is top first: build index-ordered then reverse
        placed_index_order: list = []
        ok = True
        for r, (m, M) in enumerate(comps):
            F = functors[r]
            for j in range(m, M):
                u = term.pieces[j]
                img = F(term.objs[j], term.objs[j + 1], {u: field.one})
                hs = Bcat.hom(F.obj[term.objs[j]], F.obj[term.objs[j + 1]])
                vectors.append([(t, c, hs.degrees[t]) for t, c in img.items()])
                placed_index_order.append([("p", j)])
                if not img:
                    ok = False
            if r < len(comps) - 1:
                a, b = M, comps[r + 1][0]
                seg_objs = term.objs[a:b + 1]
                seg_key = term.pieces[a:b]
                k = MonotoneMap(Ordinal(len(blocks[r])), Ordinal(b - a + 1), tuple(v - a for v in blocks[r]))
                pulled = chains.pullback(k, seg_objs, {seg_key: field.one})
                Xp = tuple(seg_objs[v] for v in k.values)
                val: dict = {}
                for V, c in pulled.items():
                    axpy(val, ops[r](Xp, V), c)
                src_obj = functors[r].obj[term.objs[a]]
                dst_obj = functors[r + 1].obj[term.objs[b]]
                hs = Bcat.hom(src_obj, dst_obj)
                vectors.append([(t, c, hs.degrees[t]) for t, c in val.items() if c])
                placed_index_order.append([("h", r)] + [("p", j) for j in reversed(range(a, b))])
                if not val:
                    ok = False
        if not ok:
            continue
        # Koszul sign: (h_0 .. h_{s-1}, L, pieces top..bottom) -> (L, expression top..bottom)
        source = [(("h", r), op.degree) for r, op in enumerate(ops)] + [("L", later_degree)]
        source += [(("p", j), term.degs[j]) for j in reversed(range(N - 1))]
        for grp in reversed(placed_index_order):
            target_order.extend(grp)
        sign = koszul_sign(source, target_order)
        for combo in product(*vectors):
            coef = term.coef * sign
            for _, c, _ in combo:
                coef = coef * c
            out.append(_Term(coef, tuple(new_objs), tuple(t for t, _, _ in combo), tuple(d for _, _, d in combo)))
    return out


def mu_eval(ctx: EvaluationContext, X: Sequence, chain: Mapping[tuple, object], A: DgCategory,
            functors: Sequence[DgFunctor], cochains: Sequence[Mapping], degrees: Sequence[int],
            later_degree: int = 0) -> tuple[KOrdinal, tuple, dict]:
    """mu_W(chain; h_0, ..., h_{R-2}) as a chain over K in the target category.

    ``chain`` is a vector of A(X) (basis tuples in index order); ``cochains[r]``
    is a homogeneous element of shom^{I_r}(F_r, F_{r+1}) of degree ``degrees[r]``.
    Returns (K, Y, vector of B(Y)).
    """
    if len(X) != ctx.J or len(functors) != ctx.R:
        raise ShapeError("context does not match the chain or the functors")
    Bcat = functors[0].dst
    F = A.field
    blocks = ctx.blocks()
    ops = [_IndexedCochain(v, d) for v, d in zip(cochains, degrees)]
    result: dict = {}
    K = build_K(ctx)
    Y = tuple(functors[r].obj[X[j]] for r, j in K.elements)
    for key, c in chain.items():
        degs = tuple(A.hom(X[i], X[i + 1]).degrees[u] for i, u in enumerate(key))
        terms = _stage([_Term(F(c), tuple(X), tuple(key), degs)], A, Bcat, functors, ops, blocks,
                          later_degree, F)
        for t in terms:
            result[t.pieces] = result.get(t.pieces, 0) + t.coef
    return K, Y, {k: v for k, v in result.items() if v}


# -- act_seq -------------------------------------------------------------------------

def act_seq(e: SeqElement, D: Diagram, inputs: Mapping[Cell, Mapping], check: bool = True) -> dict:
    """The structure map seq(U) (x) (x)_f shom^{I_f}(D|_f) -> shom^J(p_* D).

    ``inputs[f]`` is a vector of shom^{I_f} for the globe of f, with I_f the
    number of occurrences of f in ``e``.  Returns a vector of shom^J.
    """
    U = e.shape
    if D.shape != U:
        raise ShapeError("diagram and element live on different shapes")
    if check:
        rep = validate_seq(e)
        if not rep:
            raise ShapeError(f"not an element of seq: {rep}")
    cells = U.cells()
    counts = e.counts()
    shoms = {f: cell_shom(D, f) for f in cells}
    # split inputs into homogeneous parts
    parts = []
    for f in cells:
        vec = inputs.get(f)
        if vec is None:
            raise ShapeError(f"no input for 2-cell {f}")
        parts.append(sorted(_homogeneous_parts(shoms[f], counts[f] - 1, vec).items()))
    out: dict = {}
    for choice in product(*parts):
        degs = {f: d for f, (d, _) in zip(cells, choice)}
        ops = {f: _IndexedCochain(v, d) for f, (d, v) in zip(cells, choice)}
        axpy(out, _act_homogeneous(e, D, ops, degs))
    return out


def _act_homogeneous(e: SeqElement, D: Diagram, ops: Mapping[Cell, _IndexedCochain],
                     degs: Mapping[Cell, int]) -> dict:
    U = e.shape
    A0 = D.objects[0]
    F = A0.field
    J = e.out
    target = boundary_shom(D)
    Alast = D.objects[-1]
    chains0 = Chains(A0)
    # the combinatorics (blocks, K, descended W) do not depend on the chain
    plan = []
    positions = list(zip(e.word, e.w))
    N = J
    for c in range(U.n_columns):
        col_cells = U.cells_in_column(c)
        blocks = [tuple(v for f, v in positions if f == g) for g in col_cells]
        K = build_K(EvaluationContext(N, U.columns[c], tuple(len(b) for b in blocks),
                                      tuple(v for b in blocks for v in b)))
        later = sum(degs[f] for f in U.cells() if f[0] > c)
        plan.append((c, blocks, later))
        seen: set = set()
        nxt = []
        for f, v in positions:
            if f[0] == c:
                seen.add(f)
            else:
                nxt.append((f, K.index(len(seen), v)))
        positions = nxt
        N = K.size
    out: dict = {}
    for X in product(A0.objects, repeat=J):
        if not target.target(X).dim:
            continue
        for key in chains0.basis(X):
            degs0 = tuple(A0.hom(X[i], X[i + 1]).degrees[u] for i, u in enumerate(key))
            terms = [_Term(F.one, tuple(X), tuple(key), degs0)]
            for c, blocks, later in plan:
                terms = _stage(terms, D.objects[c], D.objects[c + 1], D.arrows[c],
                               [ops[g] for g in U.cells_in_column(c)], blocks, later, F)
                if not terms:
                    break
            for t in terms:
                val = Alast.compose_path(t.objs, [{p: F.one} for p in t.pieces])
                for s, x in val.items():
                    k = (tuple(X), tuple(key), s)
                    out[k] = out.get(k, 0) + t.coef * x
    return {k: v for k, v in out.items() if v}


# -- Rhom and the operad action -------------------------------------------------------

@dataclass
class RhomElement(LevelFamily):
    """An element of Rhom(F, G) = Tot(shom(F, G)), known up to ``bound``."""

    shom: Shom = None

    def differential(self) -> "RhomElement":
        return RhomElement(self.degree + 1, total_d(self.shom, self.levels, self.degree, self.bound),
                           self.bound, self.shom)

    def __add__(self, other: "RhomElement") -> "RhomElement":
        if other.degree != self.degree:
            raise ShapeError("adding elements of different degree")
        out = {n: dict(v) for n, v in self.levels.items()}
        for n, v in other.levels.items():
            axpy(out.setdefault(n, {}), v)
        return RhomElement(self.degree, {n: v for n, v in out.items() if v}, min(self.bound, other.bound),
                           self.shom)

    def scaled(self, c) -> "RhomElement":
        return RhomElement(self.degree, {n: {k: x * c for k, x in v.items()} for n, v in self.levels.items()},
                           self.bound, self.shom)

    def __sub__(self, other: "RhomElement") -> "RhomElement":
        return self + other.scaled(-1)

    def agrees(self, other: "RhomElement", bound: Optional[int] = None) -> bool:
        """Equality of the components at levels up to ``bound`` (default: both bounds)."""
        b = min(self.bound, other.bound) if bound is None else bound
        return all(_clean(self.levels.get(n, {})) == _clean(other.levels.get(n, {})) for n in range(b + 1))

    def to_json(self) -> dict:
        F = self.shom.field
        return {"degree": self.degree, "bound": self.bound,
                "levels": {str(n): [[list(X), list(u), t, F.to_json(c)] for (X, u, t), c in sorted(v.items())]
                           for n, v in sorted(self.levels.items()) if v}}


def _clean(v: Mapping) -> dict:
    return {k: x for k, x in v.items() if x}


def random_rhom(S: Shom, degree: int, level_bound: int, rng) -> RhomElement:
    return RhomElement(degree, random_normalized(S, degree, level_bound, rng), level_bound, S)


def output_bound(chain: OperadChain, inputs: Sequence[LevelFamily]) -> int:
    """Largest n such that every cell of ``chain``'s complex up to level n only needs known inputs."""
    K = chain.cosimplicial
    n = -1
    while n < chain.bound:
        cells = K.basis(n + 1)
        if any(k > x.bound for e in cells for k, x in zip(e.dims(), inputs)):
            break
        n += 1
    return n


def act_O(chain: OperadChain, D: Diagram, inputs: Mapping[Cell, RhomElement]) -> RhomElement:
    """The realized action O(U) (x) (x)_f Rhom(D|_f) -> Rhom(p_* D)."""
    U = chain.shape
    if D.shape != U:
        raise ShapeError("diagram and operad chain live on different shapes")
    cells = U.cells()
    ins = [inputs[f] for f in cells]
    bound = output_bound(chain, ins)
    if bound < 0:
        raise BoundExceeded("inputs are not known far enough for level 0 of the output")
    outer = chain.truncate(bound)

    def evaluate(e, comps):
        return act_seq(e, D, dict(zip(cells, comps)), check=False)

    levels = coend_pairing(outer, ins, evaluate, chain.field)
    degree = chain.degree + sum(x.degree for x in ins)
    return RhomElement(degree, levels, bound, boundary_shom(D))


def chain_map_defect(chain: OperadChain, D: Diagram, inputs: Mapping[Cell, RhomElement]) -> RhomElement:
    """D(act) - act(D chain) - sum_f (-1)^(|chain| + sum_{g<f} |x_g|) act(.., D x_f, ..); zero for a chain map."""
    cells = chain.shape.cells()
    lhs = act_O(chain, D, inputs).differential()
    out = lhs - act_O(chain.differential(), D, inputs)
    running = chain.degree
    for f in cells:
        x = inputs[f]
        new = dict(inputs)
        new[f] = x.differential()
        term = act_O(chain, D, new)
        out = out - term.scaled((-1) ** (running % 2))
        running += x.degree
    return out


# -- strict transformations ---------------------------------------------------------

@dataclass
class TrivReport:
    shape: tuple
    elements: int
    inputs: int
    ok: bool
    reason: str = ""

    def to_json(self) -> dict:
        return {"columns": list(self.shape), "elements": self.elements, "inputs": self.inputs,
                "ok": self.ok, "reason": self.reason}


def strict_basis(D: Diagram) -> dict[Cell, list[dict]]:
    out = {}
    for f in D.shape.cells():
        _, _, lo, hi = D.globe(f)
        H = naive_hom(lo, hi)
        out[f] = [v for k in sorted(H.basis) for v in H.basis[k]]
    return out


def triv_factorization_check(D: Diagram, coloring: Coloring, max_inputs: int = 64) -> TrivReport:
    """All elements of seq(U) with the given coloring act identically on strict inputs."""
    U = D.shape
    elements = enumerate_seq(coloring)
    strict = strict_basis(D)
    cells = U.cells()
    combos = list(product(*[range(len(strict[f])) for f in cells]))[:max_inputs]
    counts = {f: coloring.size(f) for f in cells}
    for combo in combos:
        base = {f: strict[f][i] for f, i in zip(cells, combo)}
        ins = {f: embed_strict(cell_shom(D, f), base[f], counts[f] - 1) for f in cells}
        ref = None
        for e in elements:
            val = _clean(act_seq(e, D, ins, check=False))
            if ref is None:
                ref = val
            elif val != ref:
                return TrivReport(U.columns, len(elements), len(combos), False, f"{e} differs")
    return TrivReport(U.columns, len(elements), len(combos), True)


def embed_strict(S: Shom, v: Mapping, n: int) -> dict:
    """A strict transformation (vector of shom^[0]) viewed in shom^[n] (constant cosimplicial map)."""
    return S.push(MonotoneMap(Ordinal(1), Ordinal(n + 1), (0,)), v) if n else dict(v)


def hom_action(D: Diagram, inputs: Mapping[Cell, dict]) -> dict:
    """The strict action on hom: any element of seq(U) with all colors [0] and output [0]."""
    U = D.shape
    e = enumerate_seq(Coloring.of(U, 1, 1))[0]
    return _clean(act_seq(e, D, inputs, check=False))


def embed_hom(S: Shom, v: Mapping, degree: int, bound: int) -> RhomElement:
    """hom -> Rhom: a strict transformation sits at level 0 of the totalization."""
    return RhomElement(degree, {0: dict(v)} if v else {}, bound, S)


def hom_to_rhom_check(chain: OperadChain, D: Diagram, inputs: Mapping[Cell, dict],
                      degrees: Mapping[Cell, int], bound: int) -> bool:
    """act_O(chain; iota(eta)) == iota(augmentation(chain) * act_hom(eta))."""
    cells = D.shape.cells()
    lifted = {f: embed_hom(cell_shom(D, f), inputs[f], degrees[f], bound) for f in cells}
    lhs = act_O(chain, D, lifted)
    aug = chain.augmentation()
    rhs_vec = {k: aug * c for k, c in hom_action(D, inputs).items()}
    rhs = embed_hom(boundary_shom(D), rhs_vec, lhs.degree, lhs.bound)
    return lhs.agrees(rhs)


# -- Hochschild complex ---------------------------------------------------------------

@dataclass
class HochschildComplex:
    """Rhom(Id_A, Id_A) truncated at ``level_bound``, with its level data.

    ``reliable`` lists the degrees up to ``degree_bound`` whose cohomology is
    unaffected by the truncation.
    """

    algebra: str
    shom: Shom
    total: Totalization
    degree_bound: int
    reliable: list[int]
    low: int

    @property
    def level_bound(self) -> int:
        return self.total.level_bound

    def dimensions(self) -> dict[int, int]:
        """Cohomology dimensions in the reliable degrees."""
        h = self.total.complex.homology()
        return {m: h.get(m, 0) for m in self.reliable}

    def to_json(self) -> dict:
        dims = self.dimensions()
        return {"algebra": self.algebra, "field": self.shom.field.name, "degree_bound": self.degree_bound,
                "level_bound": self.level_bound,
                "truncated": [m for m in range(self.low, self.degree_bound + 1) if m not in dims],
                "dimensions": {str(m): d for m, d in sorted(dims.items())},
                "cochains": {str(m): self.total.complex.dims.get(m, 0)
                             for m in range(self.low, self.degree_bound + 1)}}


def hochschild(A: DgCategory, degree_bound: int, max_level: Optional[int] = None) -> HochschildComplex:
    """Hoch_A = Rhom(Id_A, Id_A), with enough levels that degrees up to ``degree_bound`` are reliable.

    The level bound grows from ``degree_bound + 1`` until every degree from
    the lowest occupied one to ``degree_bound`` is reliable, or ``max_level``
    is reached; degrees that stay unreliable are reported as truncated.
    """
    Id = identity_functor(A)
    S = Shom(Id, Id)
    cap = max_level if max_level is not None else degree_bound + 3
    L = degree_bound + 1
    while True:
        T = totalize(S, L)
        low = min([0] + list(T.complex.dims))
        reliable = [m for m in range(low, degree_bound + 1)
                    if all(degree_complete(S, L, x) for x in (m - 1, m, m + 1))]
        if len(reliable) == degree_bound + 1 - low or L >= cap:
            break
        L += 1
    return HochschildComplex(A.name, S, T, degree_bound, reliable, low)


# -- products and the homotopy witness ----------------------------------------------

VERTICAL = TwoOrdinal((3,))
SIDE_BY_SIDE = TwoOrdinal((2, 2))


def vertical_cell() -> SeqElement:
    """The degree-0 vertex of seq on the stacked globes: both 2-cells once, output [0]."""
    return SeqElement(VERTICAL, ((0, 0), (0, 1)), (0, 0), 1)


def hoch_element(S: Shom, levels: Mapping[int, Mapping], degree: int, bound: int) -> RhomElement:
    return RhomElement(degree, {n: dict(v) for n, v in levels.items() if v}, bound, S)


def product_via(chain: OperadChain, A: DgCategory, a: RhomElement, b: RhomElement) -> RhomElement:
    """The binary operation on Hoch_A induced by an operad chain on (3) or (2, 2)."""
    D = constant_diagram(chain.shape, A)
    c0, c1 = chain.shape.cells()
    return act_O(chain, D, {c0: a, c1: b})


@dataclass
class CupReport:
    algebra: str
    level_bound: int
    homotopy: Optional[OperadChain]
    homotopy_ok: bool
    cocycle: Optional[RhomElement]
    homotopy_identity: bool
    center_product: bool
    commutative_up_to_coboundary: bool
    associative_up_to_coboundary: bool
    general_checked: int = 0
    general_nonzero: int = 0
    general_ok: bool = True
    reason: str = ""

    @property
    def ok(self) -> bool:
        return (self.homotopy_ok and self.homotopy_identity and self.center_product and self.general_ok
                and self.commutative_up_to_coboundary and self.associative_up_to_coboundary)

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "level_bound": self.level_bound, "ok": self.ok,
                "homotopy_ok": self.homotopy_ok, "homotopy_identity": self.homotopy_identity,
                "center_product": self.center_product,
                "commutative_up_to_coboundary": self.commutative_up_to_coboundary,
                "associative_up_to_coboundary": self.associative_up_to_coboundary,
                "general": {"checked": self.general_checked, "nonzero": self.general_nonzero,
                            "ok": self.general_ok},
                "homotopy": self.homotopy.to_json() if self.homotopy is not None else None,
                "cocycle": self.cocycle.to_json() if self.cocycle is not None else None,
                "reason": self.reason}


def _is_coboundary(x: RhomElement, bound: int) -> bool:
    if not any(x.levels.get(n) for n in range(bound + 1)):
        return True
    return solve_total(x.shom, x.degree - 1, bound, x.truncate(bound).levels) is not None


def _as_family(H: HochschildComplex, degree: int, vec: Mapping[int, object], bound: int) -> RhomElement:
    levels: dict = {}
    for j, c in vec.items():
        n, v = H.total.pieces[degree][j]
        axpy(levels.setdefault(n, {}), v, c)
    return RhomElement(degree, {n: v for n, v in levels.items() if v}, bound, H.shom)


def _exact(xs: list[RhomElement]) -> list[RhomElement]:
    """Keep the families that are cocycles at every level, not only below the truncation."""
    return [x for x in xs if not x.differential().levels]


def cocycle_representatives(H: HochschildComplex, degree: int, bound: int) -> list[RhomElement]:
    """Cocycles whose classes form a basis of the cohomology of the truncated complex."""
    return [_as_family(H, degree, z, bound) for z in H.total.complex.cohomology_representatives(degree)]


def cocycle_basis(H: HochschildComplex, degree: int, bound: int) -> list[RhomElement]:
    """A basis of the cocycles of the truncated complex in ``degree``."""
    C = H.total.complex
    rows: dict[int, dict] = {}
    for j, col in enumerate(C.differential(degree)):
        for i, c in col.items():
            rows.setdefault(i, {})[j] = c
    zs = nullspace(list(rows.values()), C.dims.get(degree, 0), C.field) if C.dims.get(degree) else []
    return [_as_family(H, degree, z, bound) for z in zs]


def homotopy_defect(e1: OperadChain, e2: OperadChain, h: OperadChain, D: Diagram,
                    a: RhomElement, b: RhomElement) -> tuple[RhomElement, RhomElement]:
    """Both sides of e1(a, b) - e2(a, b) = D h(a, b) - (-1)^|h| (h(Da, b) + (-1)^|a| h(a, Db))."""
    c0, c1 = D.shape.cells()
    lhs = act_O(e1, D, {c0: a, c1: b}) - act_O(e2, D, {c0: a, c1: b})
    rhs = act_O(h, D, {c0: a, c1: b}).differential()
    s = (-1) ** (h.degree % 2)
    rhs = rhs - act_O(h, D, {c0: a.differential(), c1: b}).scaled(s)
    rhs = rhs - act_O(h, D, {c0: a, c1: b.differential()}).scaled(s * (-1) ** (a.degree % 2))
    return lhs, rhs


def cup_and_homotopy(A: DgCategory, level_bound: int = 3, seed: int = 0, trials: int = 8) -> CupReport:
    """Products on Hoch_A from seq, and the homotopy between the two side-by-side products.

    h is solved for inside O(2, 2) with D h = e_1 - e_2, where e_1, e_2 lift
    the two interleaving vertices; act_O(h) is then a homotopy between the
    corresponding products.  It is checked on a degree-1 cocycle and, in
    its general form with the D a and D b terms, on seeded random inputs.
    """
    import random

    F = A.field
    e1, e2 = (lift_vertex(SIDE_BY_SIDE, {c: F.one}, level_bound, F) for c in interleaving_cells(SIDE_BY_SIDE))
    diff = e1 - e2
    h = solve_homotopy(diff)
    homotopy_ok = h is not None and (h.differential() - diff).is_zero()
    v = lift_vertex(VERTICAL, {vertical_cell(): F.one}, level_bound, F)
    H = hochschild(A, 2, max_level=level_bound + 2)
    D = constant_diagram(SIDE_BY_SIDE, A)
    reasons = []
    big = level_bound + 3
    # a degree-1 cocycle, exact at every level (zero above its support)
    ones = _exact(cocycle_basis(H, 1, big))
    phi = ones[0] if ones else RhomElement(1, {}, big, H.shom)
    if not ones:
        reasons.append("no nonzero degree-1 cocycle; identity checked on 0")
    identity_ok = False
    if h is not None:
        lhs, rhs = homotopy_defect(e1, e2, h, D, phi, phi)
        identity_ok = lhs.agrees(rhs)
        if not identity_ok:
            reasons.append("homotopy identity fails on the cocycle")
    general_ok, checked, nonzero = h is not None, 0, 0
    if h is not None:
        rng = random.Random(seed)
        c0, c1 = SIDE_BY_SIDE.cells()
        for _ in range(trials):
            a = random_rhom(cell_shom(D, c0), rng.choice([0, 1]), big, rng)
            b = random_rhom(cell_shom(D, c1), rng.choice([0, 1]), big, rng)
            lhs, rhs = homotopy_defect(e1, e2, h, D, a, b)
            checked += 1
            nonzero += not lhs.is_zero()
            general_ok = general_ok and lhs.agrees(rhs)
        if not general_ok:
            reasons.append("homotopy identity fails on random inputs")
    # H^0 = center: the vertical product is the algebra product
    center = _exact(cocycle_representatives(H, 0, big))
    center_ok = all(_clean(product_via(v, A, a, b).levels.get(0, {})) == _center_product(A, a, b)
                    for a in center for b in center)
    if not center_ok:
        reasons.append("product on H^0 differs from the algebra product")
    reps = center + _exact(cocycle_representatives(H, 1, big))
    comm_ok = True
    for a in reps:
        for b in reps:
            sgn = (-1) ** ((a.degree * b.degree) % 2)
            x = product_via(v, A, a, b) - product_via(v, A, b, a).scaled(sgn)
            comm_ok = comm_ok and _is_coboundary(x, x.bound - 1)
    assoc_ok = True
    for a in reps:
        for b in reps:
            ab = product_via(v, A, a, b)
            for c in reps:
                x = product_via(v, A, ab, c) - product_via(v, A, a, product_via(v, A, b, c))
                assoc_ok = assoc_ok and _is_coboundary(x, x.bound - 1)
    if not comm_ok:
        reasons.append("not graded commutative up to coboundary")
    if not assoc_ok:
        reasons.append("not associative up to coboundary")
    return CupReport(A.name, level_bound, h, homotopy_ok, phi, identity_ok, center_ok, comm_ok, assoc_ok,
                     checked, nonzero, general_ok, "; ".join(reasons))


def _center_product(A: DgCategory, a: RhomElement, b: RhomElement) -> dict:
    """Level-0 product of two level-0 classes as the algebra product (a after b)."""
    out: dict = {}
    for (X, u, t), c in a.levels.get(0, {}).items():
        for (Y, w, s), d in b.levels.get(0, {}).items():
            if X != Y:
                continue
            x = X[0]
            for k, z in A.compose(x, x, x, {s: A.field.one}, {t: A.field.one}).items():
                key = (X, (), k)
                out[key] = out.get(key, 0) + c * d * z
    return {k: z for k, z in out.items() if z}
