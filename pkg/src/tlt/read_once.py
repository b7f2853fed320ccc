"""Recognition of split and linear read-once functions with formula witnesses.

A nested formula is a chain where each level conjoins or disjoins one fresh
literal with the rest of the chain; a function is linear read-once when it is
constant or representable by such a formula, and nested when additionally all
its variables are relevant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .boolfn import BoolFunction, coordinate_mask, table_mask
from .errors import FormulaParseError, VariableIndexError

ZERO_SIDE = "zero_side"
ONE_SIDE = "one_side"

AND = "and"
OR = "or"


@dataclass(frozen=True)
class Constant:
    value: int


@dataclass(frozen=True)
class Literal:
    var: int
    positive: bool = True


@dataclass(frozen=True)
class Combine:
    op: str
    literal: Literal
    rest: "NestedFormula"

    def __post_init__(self) -> None:
        if self.op not in (AND, OR):
            raise FormulaParseError(f"op must be {AND!r} or {OR!r}")
        if isinstance(self.rest, Constant):
            raise FormulaParseError("a nested chain cannot combine with a constant")
        if self.literal.var in formula_variables(self.rest):
            raise FormulaParseError(f"variable x{self.literal.var} appears twice")


NestedFormula = Union[Constant, Literal, Combine]


@dataclass(frozen=True)
class SplitWitness:
    variable: int
    kind: str  # ZERO_SIDE: f|x=0 is constant 0; ONE_SIDE: f|x=1 is constant 1


def formula_variables(phi: NestedFormula) -> frozenset[int]:
    if isinstance(phi, Constant):
        return frozenset()
    if isinstance(phi, Literal):
        return frozenset((phi.var,))
    return frozenset((phi.literal.var,)) | formula_variables(phi.rest)


def is_split(f: BoolFunction) -> SplitWitness | None:
    """First witness in (variable, zero-side-before-one-side) scan order."""
    full = table_mask(f.arity)
    for i in range(1, f.arity + 1):
        ones = coordinate_mask(f.arity, i)
        if f.table & ~ones & full == 0:
            return SplitWitness(i, ZERO_SIDE)
        if f.table & ones == ones:
            return SplitWitness(i, ONE_SIDE)
    return None


def recognize_lro(f: BoolFunction) -> NestedFormula | None:
    """Return a nested-formula witness, or None if f is not linear read-once.

    Variables are tried in increasing index order and decomposition shapes in
    the order (x & t, x | t, ~x & t, ~x | t), so the witness is canonical.
    Irrelevant variables never appear in it.
    """
    if f.table == 0:
        return Constant(0)
    if f.table == table_mask(f.arity):
        return Constant(1)
    return _recognize(f, tuple(range(1, f.arity + 1)))


def _recognize(f: BoolFunction, varmap: tuple[int, ...]) -> NestedFormula | None:
    # f is non-constant here
    full = table_mask(f.arity)
    for pos in range(f.arity):
        ones = coordinate_mask(f.arity, pos + 1)
        if f.table == ones:
            return Literal(varmap[pos], True)
        if f.table == ~ones & full:
            return Literal(varmap[pos], False)
    for pos in range(f.arity):
        i = pos + 1
        at_zero = f.restrict(i, 0)
        at_one = f.restrict(i, 1)
        rest_map = varmap[:pos] + varmap[pos + 1 :]
        sub_full = table_mask(f.arity - 1)
        if at_zero.table == 0:
            shape = (AND, True, at_one)
        elif at_one.table == sub_full:
            shape = (OR, True, at_zero)
        elif at_one.table == 0:
            shape = (AND, False, at_zero)
        elif at_zero.table == sub_full:
            shape = (OR, False, at_one)
        else:
            continue
        op, polarity, rest_fn = shape
        rest = _recognize(rest_fn, rest_map)
        if rest is None:
            # the rest is a restriction of f, so f cannot be read-once either
            return None
        return Combine(op, Literal(varmap[pos], polarity), rest)
    return None


def is_nested(f: BoolFunction) -> bool:
    """Linear read-once and depending on every declared variable."""
    if recognize_lro(f) is None:
        return False
    return f.relevant_variables() == frozenset(range(1, f.arity + 1))


def formula_to_function(phi: NestedFormula, arity: int) -> BoolFunction:
    indices = formula_variables(phi)
    if indices and max(indices) > arity:
        raise VariableIndexError(f"variable x{max(indices)} exceeds arity {arity}")
    return BoolFunction(arity, _formula_table(phi, arity))


def _formula_table(phi: NestedFormula, arity: int) -> int:
    full = table_mask(arity)
    if isinstance(phi, Constant):
        return full if phi.value else 0
    if isinstance(phi, Literal):
        ones = coordinate_mask(arity, phi.var)
        return ones if phi.positive else ~ones & full
    lit = _formula_table(phi.literal, arity)
    rest = _formula_table(phi.rest, arity)
    return (lit & rest) if phi.op == AND else (lit | rest)


def format_formula(phi: NestedFormula) -> str:
    """Fully parenthesized text form, e.g. ``(x3 & (x5 & (x1 | x2)))``."""
    if isinstance(phi, Constant):
        return str(phi.value)
    if isinstance(phi, Literal):
        return f"x{phi.var}" if phi.positive else f"~x{phi.var}"
    symbol = "&" if phi.op == AND else "|"
    return f"({format_formula(phi.literal)} {symbol} {format_formula(phi.rest)})"


def parse_formula(text: str) -> NestedFormula:
    tokens = _tokenize(text)
    phi, tail = _parse_expr(tokens, 0)
    if tail != len(tokens):
        raise FormulaParseError(f"trailing tokens after formula: {tokens[tail:]}")
    return phi


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        c = text[pos]
        if c.isspace():
            pos += 1
        elif c in "()&|~01":
            tokens.append(c)
            pos += 1
        elif c == "x":
            start = pos
            pos += 1
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            if pos == start + 1:
                raise FormulaParseError(f"expected an index after 'x' at position {start}")
            tokens.append(text[start:pos])
        else:
            raise FormulaParseError(f"unexpected character {c!r} at position {pos}")
    return tokens


def _parse_expr(tokens: list[str], pos: int) -> tuple[NestedFormula, int]:
    if pos >= len(tokens):
        raise FormulaParseError("unexpected end of formula")
    tok = tokens[pos]
    if tok in ("0", "1"):
        return Constant(int(tok)), pos + 1
    if tok == "~" or tok.startswith("x"):
        return _parse_literal(tokens, pos)
    if tok != "(":
        raise FormulaParseError(f"unexpected token {tok!r}")
    left, pos = _parse_expr(tokens, pos + 1)
    if pos >= len(tokens) or tokens[pos] not in ("&", "|"):
        raise FormulaParseError("expected '&' or '|'")
    op = AND if tokens[pos] == "&" else OR
    right, pos = _parse_expr(tokens, pos + 1)
    if pos >= len(tokens) or tokens[pos] != ")":
        raise FormulaParseError("expected ')'")
    pos += 1
    if isinstance(left, Literal):
        return Combine(op, left, right), pos
    if isinstance(right, Literal):
        return Combine(op, right, left), pos
    raise FormulaParseError("one side of every combination must be a single literal")


def _parse_literal(tokens: list[str], pos: int) -> tuple[Literal, int]:
    positive = True
    if tokens[pos] == "~":
        positive = False
        pos += 1
    if pos >= len(tokens) or not tokens[pos].startswith("x"):
        raise FormulaParseError("expected a variable after '~'")
    return Literal(int(tokens[pos][1:]), positive), pos + 1
