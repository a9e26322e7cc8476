"""Finite ordinals, monotone and dominant maps, intervals.

Ordinals are skeletal: ``Ordinal(n)`` is ``{0 < 1 < ... < n-1}``.  The
bracket-style ``[n]`` has ``n + 1`` elements, i.e. ``bracket(n) == Ordinal(n+1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator

from .errors import ShapeError


@dataclass(frozen=True, order=True)
class Ordinal:
    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ShapeError(f"ordinals are non-empty, got size {self.size!r}")

    @property
    def min(self) -> int:
        return 0

    @property
    def max(self) -> int:
        return self.size - 1

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))

    def __len__(self):
        return self.size

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.size

    def successor_pairs(self) -> list[tuple[int, int]]:
        return [(i, i + 1) for i in range(self.size - 1)]

    def to_json(self) -> dict:
        return {"size": self.size}

    @classmethod
    def from_json(cls, data: dict) -> "Ordinal":
        return cls(int(data["size"]))


def bracket(n: int) -> Ordinal:
    """The ordinal ``[n] = {0 < ... < n}``."""
    return Ordinal(n + 1)


@dataclass(frozen=True)
class MonotoneMap:
    src: Ordinal
    dst: Ordinal
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.src.size:
            raise ShapeError(
                f"map from {self.src.size}-element ordinal has {len(self.values)} values")
        if any(v not in self.dst for v in self.values):
            raise ShapeError(f"values {self.values} leave target of size {self.dst.size}")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ShapeError(f"values {self.values} are not monotone")

    @classmethod
    def of(cls, values, dst_size: int) -> "MonotoneMap":
        values = tuple(values)
        return cls(Ordinal(len(values)), Ordinal(dst_size), values)

    @classmethod
    def identity(cls, o: Ordinal) -> "MonotoneMap":
        return cls(o, o, tuple(range(o.size)))

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_dominant(self) -> bool:
        return self.values[0] == 0 and self.values[-1] == self.dst.max

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.dst.size

    def preimage(self, j: int) -> list[int]:
        return [i for i, v in enumerate(self.values) if v == j]

    def to_json(self) -> dict:
        return {"src": self.src.size, "dst": self.dst.size, "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "MonotoneMap":
        return cls(Ordinal(int(data["src"])), Ordinal(int(data["dst"])),
                   tuple(int(v) for v in data["values"]))


def compose_monotone(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f."""
    if f.dst != g.src:
        raise ShapeError(f"cannot compose: f lands in {f.dst.size}, g starts at {g.src.size}")
    return MonotoneMap(f.src, g.dst, tuple(g.values[v] for v in f.values))


def enumerate_monotone(I: Ordinal, J: Ordinal, dominant_only: bool = False) -> list[MonotoneMap]:
    """All monotone maps I -> J in lexicographic order of their value lists."""
    out = []
    for values in combinations_with_replacement(range(J.size), I.size):
        m = MonotoneMap(I, J, values)
        if not dominant_only or m.is_dominant:
            out.append(m)
    return out


def coface(n: int, i: int) -> MonotoneMap:
    """delta^i : [n-1] -> [n], the injection missing i."""
    return MonotoneMap(bracket(n - 1), bracket(n), tuple(k if k < i else k + 1 for k in range(n)))


def codegeneracy(n: int, j: int) -> MonotoneMap:
    """sigma^j : [n+1] -> [n], the surjection hitting j twice."""
    return MonotoneMap(bracket(n + 1), bracket(n), tuple(k if k <= j else k - 1 for k in range(n + 2)))


@dataclass(frozen=True)
class Interval:
    """The interval ``[a, b]`` of a host ordinal, with its inclusion."""

    host: Ordinal
    a: int
    b: int

    @property
    def ordinal(self) -> Ordinal:
        return Ordinal(self.b - self.a + 1)

    @property
    def offset(self) -> int:
        return self.a

    @property
    def embedding(self) -> MonotoneMap:
        return MonotoneMap(self.ordinal, self.host, tuple(range(self.a, self.b + 1)))

    def __contains__(self, x) -> bool:
        return self.a <= x <= self.b


def interval(I: Ordinal, a: int, b: int) -> Interval:
    if a not in I or b not in I:
        raise ShapeError(f"[{a},{b}] is not inside an ordinal of size {I.size}")
    if a > b:
        raise ShapeError(f"empty interval [{a},{b}]")
    return Interval(I, a, b)
