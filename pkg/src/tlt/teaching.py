"""Essential points and specification numbers within the class of threshold functions.

A point is essential when flipping the function's value there alone yields
another threshold function; the essential points are exactly the minimum
specifying set, so the specification number equals their count.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from .boolfn import MAX_ARITY, BoolFunction, Point, serialize
from .errors import (
    ArityMismatchError,
    NonPositiveError,
    NotThresholdInputError,
    UnsupportedArityError,
)
from .separability import is_threshold

SPECIFIES_MAX_ARITY = 4
CACHE_ENV = "TLT_CACHE_DIR"

# class sizes are a hard gate: a freshly generated class of any other size is a bug
EXPECTED_CLASS_SIZES = {0: 2, 1: 4, 2: 14, 3: 104, 4: 1882}

ALL_POINTS = "all"
EXTREMAL_ONLY = "extremal"


@dataclass(frozen=True)
class EssentialReport:
    function: BoolFunction
    essential: frozenset[Point]
    spec_number: int


def flip(f: BoolFunction, p: Point) -> BoolFunction:
    """The unique function differing from f exactly at p."""
    if p.arity != f.arity:
        raise ArityMismatchError(f"point arity {p.arity} vs function arity {f.arity}")
    return BoolFunction(f.arity, f.table ^ (1 << p.bits))


def is_essential(f: BoolFunction, p: Point) -> bool:
    """Whether flipping f at p yields another threshold function.

    The definition quantifies over all threshold g differing from f only at p;
    that g is forced to be flip(f, p), so one thresholdness check decides.
    """
    if not is_threshold(f):
        raise NotThresholdInputError("essential points are defined for threshold functions")
    return is_threshold(flip(f, p))


def essential_points(f: BoolFunction, candidates: str = ALL_POINTS) -> EssentialReport:
    """Enumerate essential points and the specification number.

    ``candidates="extremal"`` restricts the flip tests to extremal points; it
    is only allowed for positive functions depending on all their variables,
    where every essential point is extremal (the extremal set specifies such a
    function and essential points lie in every specifying set).
    """
    if not is_threshold(f):
        raise NotThresholdInputError("essential points are defined for threshold functions")
    if candidates == ALL_POINTS:
        pool = [Point(f.arity, j) for j in range(1 << f.arity)]
    elif candidates == EXTREMAL_ONLY:
        if not f.is_positive():
            raise NonPositiveError("extremal candidate mode requires a positive function")
        if f.relevant_variables() != frozenset(range(1, f.arity + 1)):
            raise ValueError("extremal candidate mode requires dependence on all variables")
        pool = sorted(f.extremal_points().points(), key=lambda p: p.bits)
    else:
        raise ValueError(f"unknown candidate mode {candidates!r}")
    essential = frozenset(p for p in pool if is_threshold(flip(f, p)))
    return EssentialReport(function=f, essential=essential, spec_number=len(essential))


def specifies(f: BoolFunction, points: Iterable[Point]) -> bool:
    """Whether f is the only threshold function of its arity consistent with
    f on the given points."""
    if f.arity > SPECIFIES_MAX_ARITY:
        raise UnsupportedArityError(
            f"specifies enumerates the threshold class and is capped at arity {SPECIFIES_MAX_ARITY}"
        )
    if not is_threshold(f):
        raise NotThresholdInputError("specifying sets are defined within the threshold class")
    sample = []
    for p in points:
        if p.arity != f.arity:
            raise ArityMismatchError(f"point arity {p.arity} vs function arity {f.arity}")
        sample.append((p.bits, f.value_at(p.bits)))
    for table in threshold_class(f.arity):
        if table == f.table:
            continue
        if all((table >> bits) & 1 == value for bits, value in sample):
            return False
    return True


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "tlt"


def class_cache_path(n: int) -> Path:
    return cache_dir() / f"threshold-class-{n}.txt"


def threshold_class(n: int) -> tuple[int, ...]:
    """All truth tables of threshold functions of n variables, in the order of
    the cache file (bitstring-lexicographic). Built once and cached on disk."""
    if not 0 <= n <= SPECIFIES_MAX_ARITY:
        raise UnsupportedArityError(f"threshold class enumeration is capped at arity {SPECIFIES_MAX_ARITY}")
    return _threshold_class_cached(n, str(class_cache_path(n)))


@lru_cache(maxsize=None)
def _threshold_class_cached(n: int, path_text: str) -> tuple[int, ...]:
    path = Path(path_text)
    tables = _load_class_file(path, n)
    if tables is None:
        tables = _generate_class(n)
        _write_class_file(path, n, tables)
    return tables


def _load_class_file(path: Path, n: int) -> tuple[int, ...] | None:
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    if not lines or lines[0].strip() != f"arity={n}":
        return None
    body = [line.strip() for line in lines[1:] if line.strip()]
    if len(body) != EXPECTED_CLASS_SIZES[n] or body != sorted(body):
        return None
    size = 1 << n
    tables = []
    for line in body:
        if len(line) != size or any(c not in "01" for c in line):
            return None
        table = 0
        for j, c in enumerate(line):
            if c == "1":
                table |= 1 << j
        tables.append(table)
    return tuple(tables)


def _generate_class(n: int) -> tuple[int, ...]:
    found = [t for t in range(1 << (1 << n)) if is_threshold(BoolFunction(n, t))]
    if len(found) != EXPECTED_CLASS_SIZES[n]:
        raise RuntimeError(
            f"threshold class of arity {n} has {len(found)} members, expected "
            f"{EXPECTED_CLASS_SIZES[n]}; enumeration gate failed"
        )
    found.sort(key=lambda t: _bitstring(t, n))
    return tuple(found)


def _bitstring(table: int, n: int) -> str:
    return "".join("1" if (table >> j) & 1 else "0" for j in range(1 << n))


def _write_class_file(path: Path, n: int, tables: tuple[int, ...]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with tmp.open("w") as fh:
        fh.write(f"arity={n}\n")
        for table in tables:
            fh.write(_bitstring(table, n) + "\n")
    os.replace(tmp, path)
