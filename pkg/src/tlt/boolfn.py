"""Boolean functions as truth tables, with restriction, positivity and extremal points.

A function of arity ``n`` is stored as a ``2**n``-bit integer: bit ``j`` is the
value on the assignment whose coordinate ``x_i`` is bit ``i-1`` of ``j``
(``x1`` is least significant). Truth-table text form is ``<arity>:<bitstring>``
with the value at index 0 leftmost.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import (
    ArityMismatchError,
    DnfParseError,
    NonPositiveError,
    TableFormatError,
    VariableIndexError,
)

MAX_ARITY = 16


@lru_cache(maxsize=None)
def table_mask(arity: int) -> int:
    """All-ones table of the given arity."""
    return (1 << (1 << arity)) - 1


@lru_cache(maxsize=None)
def coordinate_mask(arity: int, i: int) -> int:
    """Table positions whose assignment has x_i = 1."""
    stride = 1 << (i - 1)
    block = ((1 << stride) - 1) << stride
    mask = 0
    for offset in range(0, 1 << arity, 2 * stride):
        mask |= block << offset
    return mask


@dataclass(frozen=True)
class Point:
    """An assignment in B^n, encoded as an n-bit integer (x1 = least significant bit)."""

    arity: int
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.arity <= MAX_ARITY:
            raise VariableIndexError(f"arity {self.arity} outside 0..{MAX_ARITY}")
        if not 0 <= self.bits < (1 << self.arity):
            raise VariableIndexError(f"bits {self.bits} do not fit arity {self.arity}")

    @classmethod
    def from_coords(cls, coords: tuple[int, ...] | list[int]) -> Point:
        bits = 0
        for i, value in enumerate(coords):
            if value:
                bits |= 1 << i
        return cls(len(coords), bits)

    @classmethod
    def from_bitstring(cls, text: str) -> Point:
        """Parse ``"0011"`` with the x1 coordinate leftmost."""
        if not text or any(c not in "01" for c in text):
            raise TableFormatError(f"point bitstring must be nonempty over 0/1: {text!r}")
        return cls.from_coords([int(c) for c in text])

    def coord(self, i: int) -> int:
        self._check_index(i)
        return (self.bits >> (i - 1)) & 1

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.arity))

    def with_coord(self, i: int, value: int) -> Point:
        self._check_index(i)
        bit = 1 << (i - 1)
        return Point(self.arity, (self.bits | bit) if value else (self.bits & ~bit))

    def to_bitstring(self) -> str:
        return "".join(str(c) for c in self.coords())

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.arity:
            raise VariableIndexError(f"variable index {i} outside 1..{self.arity}")

    def __str__(self) -> str:
        return self.to_bitstring()


def below(x: Point, y: Point) -> bool:
    """Coordinatewise order: every coordinate set in x is set in y."""
    if x.arity != y.arity:
        raise ArityMismatchError(f"point arity {x.arity} vs {y.arity}")
    return x.bits & ~y.bits == 0


@dataclass(frozen=True)
class ExtremalSet:
    """Maximal false points and minimal true points of a positive function."""

    maximal_zeros: frozenset[Point]
    minimal_ones: frozenset[Point]

    @property
    def count(self) -> int:
        return len(self.maximal_zeros) + len(self.minimal_ones)

    def points(self) -> frozenset[Point]:
        return self.maximal_zeros | self.minimal_ones


@dataclass(frozen=True)
class BoolFunction:
    """A Boolean function given by arity and truth table (bit j = value at assignment j)."""

    arity: int
    table: int

    def __post_init__(self) -> None:
        if not 0 <= self.arity <= MAX_ARITY:
            raise VariableIndexError(f"arity {self.arity} outside 0..{MAX_ARITY}")
        if not 0 <= self.table <= table_mask(self.arity):
            raise TableFormatError(f"table does not fit arity {self.arity}")

    @classmethod
    def constant(cls, arity: int, value: int) -> BoolFunction:
        return cls(arity, table_mask(arity) if value else 0)

    def evaluate(self, x: Point) -> int:
        if x.arity != self.arity:
            raise ArityMismatchError(f"point arity {x.arity} vs function arity {self.arity}")
        return (self.table >> x.bits) & 1

    def value_at(self, bits: int) -> int:
        """Evaluate at a raw assignment index, without Point wrapping."""
        return (self.table >> bits) & 1

    def restrict(self, i: int, a: int) -> BoolFunction:
        self._check_index(i)
        stride = 1 << (i - 1)
        low = (1 << stride) - 1
        out = 0
        shift = 0
        for offset in range(0, 1 << self.arity, 2 * stride):
            chunk = (self.table >> (offset + (stride if a else 0))) & low
            out |= chunk << shift
            shift += stride
        return BoolFunction(self.arity - 1, out)

    def is_relevant(self, i: int) -> bool:
        return self.restrict(i, 0) != self.restrict(i, 1)

    def relevant_variables(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.arity + 1) if self.is_relevant(i))

    def is_positive(self) -> bool:
        """True iff raising any single coordinate never lowers the value."""
        for i in range(1, self.arity + 1):
            stride = 1 << (i - 1)
            lower = ~coordinate_mask(self.arity, i) & table_mask(self.arity)
            at_zero = self.table & lower
            at_one = (self.table >> stride) & lower
            if at_zero & ~at_one:
                return False
        return True

    def extremal_points(self) -> ExtremalSet:
        if not self.is_positive():
            raise NonPositiveError("extremal points are defined for positive functions only")
        full = table_mask(self.arity)
        zeros = ~self.table & full
        ones = self.table
        for i in range(1, self.arity + 1):
            stride = 1 << (i - 1)
            upper = coordinate_mask(self.arity, i)
            lower = ~upper & full
            # a zero with x_i clear survives only if its upward neighbor is true
            zeros &= upper | ((self.table >> stride) & lower)
            # a one with x_i set survives only if its downward neighbor is false
            ones &= lower | ((~self.table << stride) & upper)
        return ExtremalSet(
            maximal_zeros=frozenset(Point(self.arity, j) for j in _bit_positions(zeros)),
            minimal_ones=frozenset(Point(self.arity, j) for j in _bit_positions(ones)),
        )

    def true_points(self) -> Iterator[Point]:
        for j in _bit_positions(self.table):
            yield Point(self.arity, j)

    def false_points(self) -> Iterator[Point]:
        for j in _bit_positions(~self.table & table_mask(self.arity)):
            yield Point(self.arity, j)

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.arity:
            raise VariableIndexError(f"variable index {i} outside 1..{self.arity}")

    def __str__(self) -> str:
        return serialize(self)


def _bit_positions(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def serialize(f: BoolFunction) -> str:
    """Emit ``<arity>:<bitstring>`` with the value at assignment 0 leftmost."""
    size = 1 << f.arity
    bits = "".join("1" if (f.table >> j) & 1 else "0" for j in range(size))
    return f"{f.arity}:{bits}"


def parse_table(text: str) -> BoolFunction:
    """Parse the ``<arity>:<bitstring>`` truth-table form."""
    head, sep, body = text.strip().partition(":")
    if not sep:
        raise TableFormatError(f"expected <arity>:<bitstring>, got {text!r}")
    try:
        arity = int(head)
    except ValueError:
        raise TableFormatError(f"arity is not an integer: {head!r}") from None
    if not 0 <= arity <= MAX_ARITY:
        raise TableFormatError(f"arity {arity} outside 0..{MAX_ARITY}")
    if len(body) != 1 << arity:
        raise TableFormatError(f"table length {len(body)} != 2**{arity}")
    table = 0
    for j, c in enumerate(body):
        if c == "1":
            table |= 1 << j
        elif c != "0":
            raise TableFormatError(f"table characters must be 0/1, got {c!r}")
    return BoolFunction(arity, table)


def parse_positive_dnf(text: str, arity: int) -> BoolFunction:
    """Build the truth table of ``term ('|' term)*`` where a term is atoms ``x<k>``.

    Whitespace is ignored; only positive literals are allowed. Raises
    DnfParseError with the offending position, or VariableIndexError when an
    atom's index exceeds the declared arity.
    """
    if not 1 <= arity <= MAX_ARITY:
        raise VariableIndexError(f"arity {arity} outside 1..{MAX_ARITY}")
    terms: list[int] = []
    mask = 0
    has_atom = False
    pos = 0
    n = len(text)
    while pos < n:
        c = text[pos]
        if c.isspace():
            pos += 1
            continue
        if c == "|":
            if not has_atom:
                raise DnfParseError("empty term", pos)
            terms.append(mask)
            mask = 0
            has_atom = False
            pos += 1
            continue
        if c != "x":
            raise DnfParseError(f"expected 'x' or '|', got {c!r}", pos)
        start = pos
        pos += 1
        digits = ""
        while pos < n and text[pos].isdigit():
            digits += text[pos]
            pos += 1
        if not digits:
            raise DnfParseError("expected a variable index after 'x'", start)
        index = int(digits)
        if index < 1:
            raise DnfParseError("variable indices start at 1", start)
        if index > arity:
            raise VariableIndexError(f"variable x{index} exceeds arity {arity}")
        mask |= 1 << (index - 1)
        has_atom = True
    if not has_atom:
        raise DnfParseError("empty term", n)
    terms.append(mask)

    table = 0
    full_points = (1 << arity) - 1
    for term in terms:
        rest = full_points & ~term
        sub = rest
        while True:
            table |= 1 << (term | sub)
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return BoolFunction(arity, table)
