"""The colored set-level 2-operad ``seq``.

An element over a colored 2-ordinal is a word over the 2-cells of the shape
(the total order on the disjoint union of the input ordinals: the t-th
occurrence of a 2-cell is element t of its input ordinal) together with a
non-decreasing list of output values, one per word position.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Mapping, Optional

from .errors import ColoringError, GuardExceeded, InvariantError, ShapeError
from .ordinal import MonotoneMap, Ordinal
from .two_ordinal import GLOBE, Cell, TwoOrdinal, TwoOrdinalMap, cell_preimage, validate_map


@dataclass(frozen=True)
class Coloring:
    shape: TwoOrdinal
    inputs: tuple[tuple[Cell, int], ...]
    output: int

    def __post_init__(self):
        inputs = dict(self.inputs)
        if set(inputs) != set(self.shape.cells()):
            raise ColoringError(f"need exactly one input color per 2-cell of {self.shape}")
        if any(v < 1 for v in inputs.values()) or self.output < 1:
            raise ColoringError("colors are non-empty ordinals")
        object.__setattr__(self, "inputs", tuple(sorted(inputs.items())))

    @classmethod
    def of(cls, shape: TwoOrdinal, inputs: Mapping[Cell, int] | int, output: int) -> "Coloring":
        if isinstance(inputs, int):
            inputs = {c: inputs for c in shape.cells()}
        return cls(shape, tuple(inputs.items()), output)

    def size(self, cell: Cell) -> int:
        return dict(self.inputs)[cell]

    def to_json(self) -> dict:
        return {"columns": list(self.shape.columns),
                "inputs": {f"{c},{i}": n for (c, i), n in self.inputs},
                "output": self.output}

    @classmethod
    def from_json(cls, data: dict, shape: TwoOrdinal = None) -> "Coloring":
        shape = shape or TwoOrdinal(tuple(data["columns"]))
        raw = data.get("inputs", {})
        if isinstance(raw, int):
            return cls.of(shape, raw, int(data["output"]))
        inputs = {tuple(int(x) for x in k.split(",")): int(v) for k, v in raw.items()}
        return cls.of(shape, inputs, int(data["output"]))


@dataclass(frozen=True, order=True)
class SeqElement:
    shape: TwoOrdinal
    word: tuple[Cell, ...]
    w: tuple[int, ...]
    out: int

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(tuple(x) for x in self.word))
        object.__setattr__(self, "w", tuple(self.w))
        if len(self.word) != len(self.w):
            raise ShapeError("one output value per word position")

    def counts(self) -> dict[Cell, int]:
        return dict(Counter(self.word))

    @property
    def coloring(self) -> Coloring:
        return Coloring.of(self.shape, self.counts(), self.out)

    def dims(self) -> tuple[int, ...]:
        """Simplicial dimension per 2-cell (input size minus one), in cell order."""
        cnt = Counter(self.word)
        return tuple(cnt[c] - 1 for c in self.shape.cells())

    @property
    def dimension(self) -> int:
        return len(self.word) - len(self.shape.cells())

    def positions(self, cell: Cell) -> list[int]:
        return [p for p, x in enumerate(self.word) if x == cell]

    def key(self):
        return (self.word, self.w)

    def to_json(self) -> dict:
        return {"columns": list(self.shape.columns), "word": [list(x) for x in self.word],
                "w": list(self.w), "out": self.out}

    @classmethod
    def from_json(cls, data: dict, shape: TwoOrdinal = None) -> "SeqElement":
        shape = shape or TwoOrdinal(tuple(data["columns"]))
        w = tuple(int(v) for v in data["w"])
        out = int(data.get("out", (max(w) + 1) if w else 1))
        return cls(shape, tuple(tuple(x) for x in data["word"]), w, out)

    def __repr__(self):
        word = " ".join(f"{c}.{i}" for c, i in self.word)
        return f"<seq {self.shape.columns} [{word}] w={list(self.w)} J={self.out}>"


@dataclass(frozen=True)
class SeqReport:
    ok: bool
    clause: Optional[str] = None
    witness: object = None

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "clause": self.clause, "witness": self.witness}


def validate_seq(e: SeqElement, coloring: Coloring = None) -> SeqReport:
    U = e.shape
    cells = U.cells()
    cnt = Counter(e.word)
    stray = [x for x in cnt if x not in cells]
    if stray:
        return SeqReport(False, "unknown 2-cell", [list(x) for x in stray])
    for c in cells:
        want = coloring.size(c) if coloring else 1
        have = cnt.get(c, 0)
        if (coloring and have != want) or have == 0:
            return SeqReport(False, "occurrence count", {"cell": list(c), "expected": want, "found": have})
    if coloring and (coloring.shape != U or coloring.output != e.out):
        return SeqReport(False, "coloring mismatch")
    # condition 2: whatever sits between two occurrences of f lies in a lower column
    last: dict[Cell, int] = {}
    for q, x in enumerate(e.word):
        if x in last:
            for p in range(last[x] + 1, q):
                if e.word[p][0] >= x[0]:
                    return SeqReport(False, "condition 2", {"cell": list(x), "interrupted_by": list(e.word[p]),
                                                            "positions": [last[x], p, q]})
        last[x] = q
    # condition 3: within a column, blocks appear in the column order
    seen_max: dict[int, int] = {}
    for p, (c, i) in enumerate(e.word):
        if seen_max.get(c, -1) > i:
            return SeqReport(False, "condition 3", {"cell": [c, i], "after": [c, seen_max[c]], "position": p})
        seen_max[c] = max(seen_max.get(c, -1), i)
    if any(a > b for a, b in zip(e.w, e.w[1:])):
        return SeqReport(False, "W not monotone", list(e.w))
    if any(not (0 <= v < e.out) for v in e.w):
        return SeqReport(False, "W out of range", list(e.w))
    return SeqReport(True)


def _words(shape: TwoOrdinal, counts: Mapping[Cell, int], guard: int) -> list[tuple[Cell, ...]]:
    """All words with the given occurrence counts obeying conditions 2 and 3."""
    cells = shape.cells()
    total = sum(counts[c] for c in cells)
    remaining = dict(counts)
    placed: dict[Cell, int] = {c: 0 for c in cells}
    word: list[Cell] = []
    out: list[tuple[Cell, ...]] = []

    def allowed(f: Cell) -> bool:
        if remaining[f] == 0:
            return False
        col, i = f
        # condition 3: earlier cells of the column must be exhausted
        if i > 0 and remaining[(col, i - 1)] > 0:
            return False
        # condition 2: no open block of a column <= col(f) may be interrupted
        for g in cells:
            if g != f and placed[g] and remaining[g] and g[0] <= col:
                return False
        return True

    def rec():
        if len(word) == total:
            out.append(tuple(word))
            if len(out) > guard:
                raise GuardExceeded(f"more than {guard} words")
            return
        for f in cells:
            if allowed(f):
                word.append(f)
                remaining[f] -= 1
                placed[f] += 1
                rec()
                placed[f] -= 1
                remaining[f] += 1
                word.pop()

    rec()
    return sorted(out)


def enumerate_seq(coloring: Coloring, guard: int = 200_000) -> list[SeqElement]:
    """seq(U') for a colored 2-ordinal, sorted by (word, w)."""
    U = coloring.shape
    counts = dict(coloring.inputs)
    words = _words(U, counts, guard)
    L = sum(counts.values())
    out = []
    for word in words:
        for w in combinations_with_replacement(range(coloring.output), L):
            out.append(SeqElement(U, word, w, coloring.output))
            if len(out) > guard:
                raise GuardExceeded(f"seq({coloring}) has more than {guard} elements")
    out.sort(key=SeqElement.key)
    return out


# -- multisimplicial functoriality ------------------------------------------

def restructure_lower(e: SeqElement, cell: Cell, alpha: MonotoneMap) -> SeqElement:
    """Pull back along alpha: I'_f -> I_f on the input index of ``cell``."""
    n = e.counts().get(cell, 0)
    if alpha.dst.size != n:
        raise ShapeError(f"alpha must land in the {n}-element color of {cell}")
    word, w = [], []
    t = 0
    for x, v in zip(e.word, e.w):
        if x == cell:
            k = len(alpha.preimage(t))
            word.extend([x] * k)
            w.extend([v] * k)
            t += 1
        else:
            word.append(x)
            w.append(v)
    r = SeqElement(e.shape, tuple(word), tuple(w), e.out)
    rep = validate_seq(r)
    if not rep:
        raise InvariantError(f"restructuring produced an invalid element: {rep}")
    return r


def restructure_upper(e: SeqElement, sigma: MonotoneMap) -> SeqElement:
    """Push forward along sigma: J -> J' (postcompose W)."""
    if sigma.src.size != e.out:
        raise ShapeError(f"sigma must start at the {e.out}-element output color")
    return SeqElement(e.shape, e.word, tuple(sigma(v) for v in e.w), sigma.dst.size)


def seq_restructure(e: SeqElement, *, cell: Cell = None, lower: MonotoneMap = None,
                    upper: MonotoneMap = None) -> SeqElement:
    if (lower is None) == (upper is None):
        raise ShapeError("restructure along exactly one index")
    if lower is not None:
        return restructure_lower(e, cell, lower)
    return restructure_upper(e, upper)


def lower_face(e: SeqElement, cell: Cell, i: int) -> SeqElement:
    """Delete occurrence i of ``cell`` (the face d_i in that direction)."""
    pos = e.positions(cell)
    if len(pos) < 2:
        raise ShapeError("a face needs at least two occurrences")
    p = pos[i]
    return SeqElement(e.shape, e.word[:p] + e.word[p + 1:], e.w[:p] + e.w[p + 1:], e.out)


def lower_degeneracy(e: SeqElement, cell: Cell, j: int) -> SeqElement:
    """Duplicate occurrence j of ``cell`` (the degeneracy s_j in that direction)."""
    p = e.positions(cell)[j]
    return SeqElement(e.shape, e.word[:p + 1] + e.word[p:], e.w[:p + 1] + e.w[p:], e.out)


def degenerate_direction(e: SeqElement) -> Optional[Cell]:
    """A 2-cell in whose direction e is degenerate, or None."""
    for p in range(len(e.word) - 1):
        if e.word[p] == e.word[p + 1] and e.w[p] == e.w[p + 1]:
            return e.word[p]
    return None


def is_nondegenerate(e: SeqElement) -> bool:
    return degenerate_direction(e) is None


# -- globes and Delta -------------------------------------------------------------

def monotone_to_seq(f: MonotoneMap) -> SeqElement:
    return SeqElement(GLOBE, ((0, 0),) * f.src.size, f.values, f.dst.size)


def seq_to_monotone(e: SeqElement) -> MonotoneMap:
    if e.shape != GLOBE:
        raise ShapeError("only globe elements are monotone maps")
    return MonotoneMap(Ordinal(len(e.w)), Ordinal(e.out), e.w)


def unit_element(size: int) -> SeqElement:
    """The identity of the color ``size`` (identity map on the globe)."""
    return SeqElement(GLOBE, ((0, 0),) * size, tuple(range(size)), size)


def empty_element(shape: TwoOrdinal, out: int) -> SeqElement:
    if shape.cells():
        raise ShapeError(f"{shape} has 2-cells; no empty element")
    return SeqElement(shape, (), (), out)


# -- composition --------------------------------------------------------------------

def compose_seq(P: TwoOrdinalMap, inner: Mapping[Cell, SeqElement], outer: SeqElement,
                check: bool = True) -> SeqElement:
    """Operadic composition along P: U -> V.

    ``inner[g]`` lives on the preimage ball of the 2-cell g of V with output
    color equal to the color of g in ``outer``.
    """
    U, V = P.src, P.dst
    if check:
        rep = validate_map(P)
        if not rep:
            raise ShapeError(f"invalid map: {rep}")
    if outer.shape != V:
        raise ColoringError("outer element does not live on the target shape")
    counts = outer.counts()
    balls = {}
    for g in V.cells():
        ball = cell_preimage(P, g)
        balls[g] = ball
        x = inner.get(g)
        if x is None:
            raise ColoringError(f"no inner element for 2-cell {g}")
        if x.shape != ball.shape:
            raise ColoringError(f"inner element for {g} lives on {x.shape}, need {ball.shape}")
        if x.out != counts.get(g, 0):
            raise ColoringError(f"inner element for {g} has output {x.out}, outer color is {counts.get(g, 0)}")
    # bucket each inner position under the outer position it maps to
    occurrence: dict[Cell, int] = {}
    word: list[Cell] = []
    w: list[int] = []
    for g, v in zip(outer.word, outer.w):
        t = occurrence.get(g, 0)
        occurrence[g] = t + 1
        x = inner[g]
        ball = balls[g]
        for y, val in zip(x.word, x.w):
            if val == t:
                word.append(ball.to_host(y))
                w.append(v)
    r = SeqElement(U, tuple(word), tuple(w), outer.out)
    if check:
        rep = validate_seq(r)
        if not rep:
            raise InvariantError(f"composite is not an element of seq: {rep}")
    return r


def project_to_trivial(e: SeqElement) -> int:
    return 1


# -- operad axioms ------------------------------------------------------------------

def all_shapes(max_columns: int, max_size: int) -> list[TwoOrdinal]:
    """Every 2-ordinal with at most max_columns columns of 1..max_size arrows.

    The shape with no columns comes first; it and the shapes whose columns
    have size 1 carry no 2-cells and provide the empty-shape units.
    """
    out = []
    for n in range(0, max_columns + 1):
        for cols in product(range(1, max_size + 1), repeat=n):
            out.append(TwoOrdinal(cols))
    return out


_SEQ_CACHE: dict = {}


def _elements(shape: TwoOrdinal, inputs: Mapping[Cell, int], out: int) -> list[SeqElement]:
    key = (shape, tuple(sorted(inputs.items())), out)
    r = _SEQ_CACHE.get(key)
    if r is None:
        r = _SEQ_CACHE[key] = enumerate_seq(Coloring.of(shape, dict(inputs), out))
    return r


def _all_colored(shape: TwoOrdinal, out: int, max_color: int) -> list[SeqElement]:
    cells = shape.cells()
    res = []
    for colors in product(range(1, max_color + 1), repeat=len(cells)):
        res.extend(_elements(shape, dict(zip(cells, colors)), out))
    return res


def _inner_choices(P: TwoOrdinalMap, outer: SeqElement, max_color: int) -> list[dict]:
    """All families of inner elements composable with ``outer`` along P."""
    counts = outer.counts()
    per_cell = []
    cells = P.dst.cells()
    for g in cells:
        ball = cell_preimage(P, g)
        per_cell.append(_all_colored(ball.shape, counts[g], max_color))
    return [dict(zip(cells, combo)) for combo in product(*per_cell)]


@dataclass
class OperadReport:
    chains: int = 0
    unit_checks: int = 0
    failures: list = None
    max_columns: int = 0
    max_size: int = 0
    max_color: int = 0
    max_out: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"ok": self.ok, "chains": self.chains, "unit_checks": self.unit_checks,
                "bounds": {"columns": self.max_columns, "size": self.max_size,
                           "color": self.max_color, "output": self.max_out},
                "failures": self.failures[:10]}


def check_associativity(P: TwoOrdinalMap, Q: TwoOrdinalMap, z: SeqElement,
                        ys: Mapping[Cell, SeqElement], xs: Mapping[Cell, SeqElement]) -> bool:
    """(z o_Q ys) o_P xs == z o_{QP} (ys_h o_{P_h} xs|_h) for U -P-> V -Q-> W."""
    from .two_ordinal import compose_maps, restrict_map
    left = compose_seq(P, xs, compose_seq(Q, ys, z, check=False), check=False)
    inner = {}
    for h in Q.dst.cells():
        ball = cell_preimage(Q, h)
        Ph = restrict_map(P, ball)
        local = {g: xs[ball.to_host(g)] for g in ball.shape.cells()}
        inner[h] = compose_seq(Ph, local, ys[h], check=False)
    right = compose_seq(compose_maps(Q, P), inner, z, check=False)
    return left == right


# The exhaustive sweep works on raw (word, w) pairs.  A map is summarized by
# its 2-cells' preimage balls, each as a dict local cell -> host cell.

def _hosts(P: TwoOrdinalMap) -> dict[Cell, tuple[TwoOrdinal, dict]]:
    out = {}
    for g in P.dst.cells():
        ball = cell_preimage(P, g)
        out[g] = (ball.shape, {c: ball.to_host(c) for c in ball.shape.cells()})
    return out


def _raw_compose(hosts, inner, word, w):
    """compose_seq on raw data: inner[g] = (word, w) on the ball of g."""
    occurrence: dict = {}
    rw, rv = [], []
    for g, v in zip(word, w):
        t = occurrence.get(g, 0)
        occurrence[g] = t + 1
        iw, ivals = inner[g]
        emb = hosts[g][1]
        for y, val in zip(iw, ivals):
            if val == t:
                rw.append(emb[y])
                rv.append(v)
    return tuple(rw), tuple(rv)


def _colored_by_counts(shape: TwoOrdinal, out: int, max_color: int) -> dict[tuple, int]:
    """Number of colored elements per input-count vector (cells in order)."""
    res: dict = {}
    for e in _all_colored(shape, out, max_color):
        c = e.counts()
        key = tuple(c[f] for f in shape.cells())
        res[key] = res.get(key, 0) + 1
    return res


def count_chains(max_columns: int, max_size: int, max_color: int, max_out: int) -> int:
    """Number of composable chains (P, Q, z, ys, xs) the exhaustive sweep visits.

    Counted by grouping elements by their colors, without enumerating chains.
    """
    from functools import lru_cache
    from math import prod
    from .two_ordinal import enumerate_maps
    shapes = all_shapes(max_columns, max_size)
    maps = {(U, V): enumerate_maps(U, V) for U in shapes for V in shapes}
    balls = {P: {g: cell_preimage(P, g) for g in P.dst.cells()} for ms in maps.values() for P in ms}
    ncol = lru_cache(None)(lambda shape, out: _colored_by_counts(shape, out, max_color))

    @lru_cache(None)
    def below(V, counts):
        return sum(prod(sum(ncol(balls[P][g].shape, n).values()) for g, n in zip(V.cells(), counts))
                   for U in shapes for P in maps[(U, V)])

    total = 0
    for W in shapes:
        for out in range(1, max_out + 1):
            for zc, nz in ncol(W, out).items():
                for V in shapes:
                    for Q in maps[(V, W)]:
                        dist = {(): 1}
                        for h, n in zip(W.cells(), zc):
                            ball = balls[Q][h]
                            nd = {}
                            for k, m in dist.items():
                                for cc, c in ncol(ball.shape, n).items():
                                    key = k + tuple((ball.to_host(f), x) for f, x in zip(ball.shape.cells(), cc))
                                    nd[key] = nd.get(key, 0) + m * c
                            dist = nd
                        for k, m in dist.items():
                            d = dict(k)
                            total += nz * m * below(V, tuple(d[g] for g in V.cells()))
    return total


def verify_operad(max_columns: int = 2, max_size: int = 2, max_color: int = 2, max_out: int = 2,
                  guard: int = 5_000_000) -> OperadReport:
    """Exhaustive associativity over chains U -> V -> W and the unit laws.

    The number of chains is counted first; more than ``guard`` of them raises
    GuardExceeded before any composition is done.
    """
    from .two_ordinal import compose_maps, enumerate_maps, identity_map, restrict_map, terminal_map
    total = count_chains(max_columns, max_size, max_color, max_out)
    if total > guard:
        raise GuardExceeded(f"{total} composable chains exceed the guard of {guard}")
    rep = OperadReport(0, 0, [], max_columns, max_size, max_color, max_out)
    shapes = all_shapes(max_columns, max_size)
    maps = {(U, V): enumerate_maps(U, V) for U in shapes for V in shapes}
    hosts = {P: _hosts(P) for ms in maps.values() for P in ms}
    colored = {}

    def elems(shape, out):
        key = (shape, out)
        if key not in colored:
            colored[key] = [(e.word, e.w) for e in _all_colored(shape, out, max_color)]
        return colored[key]

    for W in shapes:
        for V in shapes:
            for Q in maps[(V, W)]:
                hq = hosts[Q]
                for U in shapes:
                    for P in maps[(U, V)]:
                        hp = hosts[P]
                        QP = compose_maps(Q, P)
                        hqp = hosts.get(QP) or _hosts(QP)
                        local = {}
                        for h in W.cells():
                            Ph = restrict_map(P, cell_preimage(Q, h))
                            local[h] = (_hosts(Ph), hq[h][1])
                        for out in range(1, max_out + 1):
                            for z in _all_colored(W, out, max_color):
                                zc = z.counts()
                                per = [elems(hq[h][0], zc[h]) for h in W.cells()]
                                for ys_t in product(*per):
                                    ys = dict(zip(W.cells(), ys_t))
                                    mw, mv = _raw_compose(hq, ys, z.word, z.w)
                                    mc = Counter(mw)
                                    xper = [elems(hp[g][0], mc[g]) for g in V.cells()]
                                    for xs_t in product(*xper):
                                        rep.chains += 1
                                        xs = dict(zip(V.cells(), xs_t))
                                        left = _raw_compose(hp, xs, mw, mv)
                                        inner = {}
                                        for h in W.cells():
                                            hph, qemb = local[h]
                                            loc = {g: xs[qemb[g]] for g in hph}
                                            inner[h] = _raw_compose(hph, loc, *ys[h])
                                        right = _raw_compose(hqp, inner, z.word, z.w)
                                        if left != right:
                                            rep.failures.append({"P": P.to_json(), "Q": Q.to_json(),
                                                                 "outer": z.to_json()})
    if rep.chains != total:
        raise InvariantError(f"sweep visited {rep.chains} chains, expected {total}")
    # unit laws, including the empty-shape units of shapes without 2-cells
    for U in shapes:
        for out in range(1, max_out + 1):
            for e in _all_colored(U, out, max_color):
                rep.unit_checks += 1
                ids = {f: unit_element(n) for f, n in e.counts().items()}
                if compose_seq(identity_map(U), ids, e) != e:
                    rep.failures.append({"unit": "right", "element": e.to_json()})
                if compose_seq(terminal_map(U), {(0, 0): e}, unit_element(out)) != e:
                    rep.failures.append({"unit": "left", "element": e.to_json()})
    return rep


def sample_operad(max_columns: int, max_size: int, max_color: int, max_out: int, samples: int,
                  seed: int = 0) -> OperadReport:
    """Associativity on seeded random chains, composed with validation on."""
    import random
    from .two_ordinal import enumerate_maps
    rng = random.Random(seed)
    rep = OperadReport(0, 0, [], max_columns, max_size, max_color, max_out)
    shapes = all_shapes(max_columns, max_size)
    maps = {(U, V): enumerate_maps(U, V) for U in shapes for V in shapes}
    sources = {V: [U for U in shapes if maps[(U, V)]] for V in shapes}
    while rep.chains < samples:
        W = rng.choice(shapes)
        z = rng.choice(_all_colored(W, rng.randint(1, max_out), max_color))
        V = rng.choice(sources[W])
        Q = rng.choice(maps[(V, W)])
        ys = {h: rng.choice(_all_colored(cell_preimage(Q, h).shape, n, max_color)) for h, n in z.counts().items()}
        mid = compose_seq(Q, ys, z)
        U = rng.choice(sources[V])
        P = rng.choice(maps[(U, V)])
        xs = {g: rng.choice(_all_colored(cell_preimage(P, g).shape, n, max_color))
              for g, n in mid.counts().items()}
        rep.chains += 1
        if not check_associativity(P, Q, z, ys, xs):
            rep.failures.append({"P": P.to_json(), "Q": Q.to_json(), "outer": z.to_json()})
    return rep
