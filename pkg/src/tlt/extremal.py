"""Variable-indexed extremal pairs and their graphs.

For a positive function, each relevant variable pairs a maximal zero that is 0
there with a minimal one that is 1 there, the zero dominating the one on every
other coordinate. One edge per chosen variable yields an extremal graph, which
is acyclic whenever the function is threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Sequence

from .boolfn import BoolFunction, ExtremalSet, Point
from .errors import IrrelevantVariableError, NonPositiveError


@dataclass(frozen=True)
class ExtremalPair:
    variable: int
    a: Point  # maximal zero with coordinate `variable` equal to 0
    b: Point  # minimal one with coordinate `variable` equal to 1


@dataclass(frozen=True)
class ExtremalGraph:
    edges: tuple[ExtremalPair, ...]

    def zero_side(self) -> frozenset[Point]:
        return frozenset(e.a for e in self.edges)

    def one_side(self) -> frozenset[Point]:
        return frozenset(e.b for e in self.edges)

    def vertex_count(self) -> int:
        return len(self.zero_side() | self.one_side())

    def edge_lines(self) -> list[str]:
        return [f"x{e.variable}: {e.a.to_bitstring()} -- {e.b.to_bitstring()}" for e in self.edges]

    def description(self) -> str:
        lines = [f"vertex {p.to_bitstring()} zero" for p in sorted(self.zero_side(), key=lambda p: p.bits)]
        lines += [f"vertex {p.to_bitstring()} one" for p in sorted(self.one_side(), key=lambda p: p.bits)]
        lines += self.edge_lines()
        return "\n".join(lines)


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[Point, Point] = {}

    def find(self, x: Point) -> Point:
        root = x
        while self.parent.setdefault(root, root) != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Point, y: Point) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


def is_acyclic(graph: ExtremalGraph) -> bool:
    """Union-find cycle detection over vertices merged by point equality."""
    uf = _UnionFind()
    seen: set[frozenset[Point]] = set()
    for edge in graph.edges:
        key = frozenset((edge.a, edge.b))
        if key in seen:
            continue
        seen.add(key)
        if not uf.union(edge.a, edge.b):
            return False
    return True


def find_extremal_pair(
    f: BoolFunction,
    i: int,
    seed: Point | None = None,
    rng: Random | None = None,
    extremal: ExtremalSet | None = None,
) -> ExtremalPair:
    """Construct a valid pair for variable i of a positive function.

    A maximal-zero seed fixes the zero side and the one side is found by
    descending from the seed with coordinate i raised; a minimal-one seed works
    dually by ascending. Without a seed the lexicographically least eligible
    maximal zero starts the search. Deterministic descent clears the
    highest-index clearable coordinate first (ascent raises dually); passing an
    rng randomizes both the starting zero and the walk order.
    """
    if not f.is_positive():
        raise NonPositiveError("extremal pairs are defined for positive functions")
    if not f.is_relevant(i):
        raise IrrelevantVariableError(f"variable x{i} is irrelevant")
    ext = extremal if extremal is not None else f.extremal_points()
    bit = 1 << (i - 1)

    if seed is not None:
        if seed in ext.maximal_zeros and not seed.bits & bit:
            a_bits = seed.bits
            b_bits = _descend(f, a_bits | bit, rng)
        elif seed in ext.minimal_ones and seed.bits & bit:
            b_bits = seed.bits
            a_bits = _ascend(f, seed.bits & ~bit, rng)
        else:
            raise ValueError(f"seed {seed} is not an extremal point corresponding to x{i}")
    else:
        eligible = sorted(p.bits for p in ext.maximal_zeros if not p.bits & bit)
        if not eligible:
            raise AssertionError(f"no maximal zero corresponds to relevant x{i}")
        a_bits = rng.choice(eligible) if rng is not None else eligible[0]
        b_bits = _descend(f, a_bits | bit, rng)

    pair = ExtremalPair(variable=i, a=Point(f.arity, a_bits), b=Point(f.arity, b_bits))
    _validate_pair(pair, ext, bit)
    return pair


def _descend(f: BoolFunction, start: int, rng: Random | None) -> int:
    # find a minimal one below `start`; a single highest-first pass suffices
    # because clearing a bit only makes other clears harder
    cur = start
    if rng is None:
        for j in range(f.arity, 0, -1):
            bit = 1 << (j - 1)
            if cur & bit and f.value_at(cur & ~bit):
                cur &= ~bit
        return cur
    while True:
        options = [j for j in range(1, f.arity + 1) if cur & (1 << (j - 1)) and f.value_at(cur & ~(1 << (j - 1)))]
        if not options:
            return cur
        cur &= ~(1 << (rng.choice(options) - 1))


def _ascend(f: BoolFunction, start: int, rng: Random | None) -> int:
    cur = start
    if rng is None:
        for j in range(f.arity, 0, -1):
            bit = 1 << (j - 1)
            if not cur & bit and not f.value_at(cur | bit):
                cur |= bit
        return cur
    while True:
        options = [
            j
            for j in range(1, f.arity + 1)
            if not cur & (1 << (j - 1)) and not f.value_at(cur | (1 << (j - 1)))
        ]
        if not options:
            return cur
        cur |= 1 << (rng.choice(options) - 1)


def _validate_pair(pair: ExtremalPair, ext: ExtremalSet, bit: int) -> None:
    if pair.a not in ext.maximal_zeros or pair.b not in ext.minimal_ones:
        raise AssertionError("constructed pair is not extremal")
    if pair.b.bits & ~pair.a.bits != bit:
        raise AssertionError("constructed pair violates the domination condition")


def build_extremal_graph(
    f: BoolFunction,
    variables: Sequence[int],
    rng: Random | None = None,
    extremal: ExtremalSet | None = None,
) -> ExtremalGraph:
    """One extremal pair per listed variable; identical points merge into one vertex."""
    if not f.is_positive():
        raise NonPositiveError("extremal graphs are defined for positive functions")
    if len(set(variables)) != len(variables):
        raise ValueError("variable list contains duplicates")
    ext = extremal if extremal is not None else f.extremal_points()
    edges = tuple(find_extremal_pair(f, i, rng=rng, extremal=ext) for i in variables)
    return ExtremalGraph(edges=edges)
