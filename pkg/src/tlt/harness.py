"""Exhaustive verification sweeps over small arities.

Each verifier scans a fully enumerated universe (all functions, all monotone
functions, or the threshold class), checks one structural statement per
member, and reports a population count plus any counterexamples in full. The
enumerator populations themselves are gate-checked against known values
before anything else runs.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from random import Random
from typing import Callable, Iterator, Sequence

from .boolfn import BoolFunction, coordinate_mask, serialize, table_mask
from .errors import UnsupportedArityError
from .extremal import ExtremalGraph, build_extremal_graph, find_extremal_pair, is_acyclic
from .read_once import is_nested, is_split, recognize_lro
from .separability import find_k_summability, is_threshold
from .teaching import essential_points, specifies, threshold_class

MONOTONE_MAX_ARITY = 6
ALL_FUNCTIONS_MAX_ARITY = 4

# Dedekind counts for n = 0..6; enumeration must reproduce them exactly
MONOTONE_COUNTS = (2, 3, 6, 20, 168, 7581, 7828354)
THRESHOLD_COUNTS = (2, 4, 14, 104, 1882)

GATE_MONOTONE_MAX = 5
GATE_THRESHOLD_MAX = 4


@dataclass(frozen=True)
class Counterexample:
    function: str
    detail: str


@dataclass
class VerificationReport:
    statement: str
    universe: str
    population: int
    passes: int
    counterexamples: list[Counterexample] = field(default_factory=list)
    wall_time: float = 0.0
    notes: str = ""

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json_dict(self, include_timing: bool = True) -> dict:
        data = {
            "statement": self.statement,
            "universe": self.universe,
            "population": self.population,
            "passes": self.passes,
            "counterexamples": [
                {"function": c.function, "detail": c.detail} for c in self.counterexamples
            ],
        }
        if self.notes:
            data["notes"] = self.notes
        if include_timing:
            data["wall_time_s"] = round(self.wall_time, 3)
        return data


def enumerate_all_functions(n: int) -> Iterator[BoolFunction]:
    """All 2^(2^n) truth tables in lexicographic (numeric) order."""
    if not 0 <= n <= ALL_FUNCTIONS_MAX_ARITY:
        raise UnsupportedArityError(f"full enumeration is capped at arity {ALL_FUNCTIONS_MAX_ARITY}")
    for table in range(1 << (1 << n)):
        yield BoolFunction(n, table)


@lru_cache(maxsize=None)
def _monotone_tables(n: int) -> tuple[int, ...]:
    if n == 0:
        return (0, 1)
    half = 1 << (n - 1)
    prev = _monotone_tables(n - 1)
    # a monotone function is a pair (low half, high half) with low <= high pointwise
    tables = [
        low | (high << half)
        for high in prev
        for low in prev
        if low & ~high == 0
    ]
    tables.sort()
    return tuple(tables)


def enumerate_monotone(n: int) -> Iterator[BoolFunction]:
    """All monotone functions of n variables; counts follow the Dedekind sequence."""
    if not 0 <= n <= MONOTONE_MAX_ARITY:
        raise UnsupportedArityError(f"monotone enumeration is capped at arity {MONOTONE_MAX_ARITY}")
    if n < MONOTONE_MAX_ARITY:
        for table in _monotone_tables(n):
            yield BoolFunction(n, table)
        return
    half = 1 << (n - 1)
    for high in _monotone_tables(n - 1):
        for low in _monotone_tables(n - 1):
            if low & ~high == 0:
                yield BoolFunction(n, low | (high << half))


def monotone_count(n: int) -> int:
    if n < MONOTONE_MAX_ARITY:
        return len(_monotone_tables(n))
    return sum(1 for _ in enumerate_monotone(n))


# ---------------------------------------------------------------------------
# per-function checkers; each returns (in_universe, failure_detail_or_None)

Checker = Callable[..., "tuple[bool, str | None]"]


def _check_extremal_characterization(n: int, table: int) -> tuple[bool, str | None]:
    f = BoolFunction(n, table)
    if not is_threshold(f):
        return False, None
    k = len(f.relevant_variables())
    count = f.extremal_points().count
    if count < k + 1:
        return True, f"extremal count {count} below k+1={k + 1}"
    read_once = recognize_lro(f) is not None
    if (count == k + 1) != read_once:
        return True, f"extremal count {count}, k={k}, linear read-once={read_once}"
    return True, None


def _check_extremal_partition(n: int, table: int) -> tuple[bool, str | None]:
    f = BoolFunction(n, table)
    ext = f.extremal_points()
    for i in range(1, n + 1):
        zeros_at = sum(1 for p in ext.maximal_zeros if not p.coord(i))
        ones_at = sum(1 for p in ext.minimal_ones if p.coord(i))
        other = (len(ext.maximal_zeros) - zeros_at) + (len(ext.minimal_ones) - ones_at)
        if zeros_at + ones_at + other != ext.count:
            return True, f"partition by x{i} does not cover the extremal set"
    return True, None


def _zero_side_constant(f: BoolFunction, i: int) -> bool:
    return f.table & ~coordinate_mask(f.arity, i) & table_mask(f.arity) == 0


def _one_side_constant(f: BoolFunction, i: int) -> bool:
    mask = coordinate_mask(f.arity, i)
    return f.table & mask == mask


def _check_split_lemmas(n: int, table: int) -> tuple[bool, str | None]:
    f = BoolFunction(n, table)
    if not is_threshold(f):
        return False, None
    k = len(f.relevant_variables())
    if k == 0:
        return True, None
    count = f.extremal_points().count
    if is_split(f) is not None:
        # every split direction must shed exactly one extremal point
        for i in range(1, n + 1):
            if _zero_side_constant(f, i):
                sub = f.restrict(i, 1).extremal_points().count
                if count != sub + 1:
                    return True, f"zero-side split at x{i}: r={count} != {sub}+1"
            if _one_side_constant(f, i):
                sub = f.restrict(i, 0).extremal_points().count
                if count != sub + 1:
                    return True, f"one-side split at x{i}: r={count} != {sub}+1"
        return True, None
    if count < k + 2:
        return True, f"non-split with extremal count {count} < k+2={k + 2}"
    for i in range(1, n + 1):
        low = f.restrict(i, 0)
        high = f.restrict(i, 1)
        if is_split(low) is None or is_split(high) is None:
            continue
        if not any(
            _zero_side_constant(low, s) and _one_side_constant(high, s)
            for s in range(1, n)
        ):
            return True, f"both restrictions of x{i} split but no common split variable"
    return True, None


def _check_spec_bound(n: int, table: int) -> tuple[bool, str | None]:
    f = BoolFunction(n, table)
    report = essential_points(f)
    if report.spec_number < n + 1:
        return True, f"specification number {report.spec_number} below {n + 1}"
    if is_nested(f) and report.spec_number != n + 1:
        return True, f"nested but specification number {report.spec_number} != {n + 1}"
    return True, None


def _check_essential_specifies(n: int, table: int) -> tuple[bool, str | None]:
    f = BoolFunction(n, table)
    report = essential_points(f)
    if not specifies(f, report.essential):
        return True, "essential set fails to specify"
    for p in sorted(report.essential, key=lambda q: q.bits):
        if specifies(f, report.essential - {p}):
            return True, f"essential set without {p.to_bitstring()} still specifies"
    return True, None


def _selection_seed(seed: int, n: int, table: int, draw: int) -> str:
    return f"{seed}:{n}:{table}:{draw}"


def _check_acyclicity(n: int, table: int, seed: int, draws: int) -> tuple[bool, str | None]:
    f = BoolFunction(n, table)
    if not is_threshold(f):
        return False, None
    return True, _acyclicity_detail(f, seed, draws)


def _acyclicity_detail(f: BoolFunction, seed: int, draws: int) -> str | None:
    rel = sorted(f.relevant_variables())
    if not rel:
        return None
    ext = f.extremal_points()
    selections = [{i: find_extremal_pair(f, i, extremal=ext) for i in rel}]
    for draw in range(draws):
        rng = Random(_selection_seed(seed, f.arity, f.table, draw))
        selections.append({i: find_extremal_pair(f, i, rng=rng, extremal=ext) for i in rel})
    for index, selection in enumerate(selections):
        for size in range(1, len(rel) + 1):
            for subset in combinations(rel, size):
                graph = ExtremalGraph(edges=tuple(selection[i] for i in subset))
                if not is_acyclic(graph):
                    return f"cyclic graph on variables {subset} (selection {index})"
                if graph.vertex_count() < size + 1:
                    return f"graph on variables {subset} spans under {size + 1} vertices"
    return None


def _probe_converse(n: int, table: int, seed: int, draws: int) -> tuple[bool, str | None]:
    # report-only census over positive non-threshold functions: a cyclic graph
    # here is an observation, not a counterexample
    f = BoolFunction(n, table)
    if is_threshold(f):
        return False, None
    detail = _acyclicity_detail(f, seed, draws)
    return True, (f"cyclic: {detail}" if detail else None)


def _census_two_summability(n: int, table: int) -> tuple[bool, str | None]:
    f = BoolFunction(n, table)
    if table in _threshold_table_set(n):
        return True, None
    cert = find_k_summability(f, 2)
    return True, None if cert is not None else "non-threshold without pair certificate"


@lru_cache(maxsize=None)
def _threshold_table_set(n: int) -> frozenset[int]:
    return frozenset(threshold_class(n))


_CHECKERS: dict[str, Checker] = {
    "extremal": _check_extremal_characterization,
    "partition": _check_extremal_partition,
    "split": _check_split_lemmas,
    "spec": _check_spec_bound,
    "specifying": _check_essential_specifies,
    "acyclic": _check_acyclicity,
    "probe": _probe_converse,
    "summability": _census_two_summability,
}


def _run_chunk(
    checker_name: str, n: int, tables: Sequence[int], params: dict
) -> tuple[int, list[tuple[str, str]]]:
    check = _CHECKERS[checker_name]
    population = 0
    failures: list[tuple[str, str]] = []
    for table in tables:
        in_universe, detail = check(n, table, **params)
        if in_universe:
            population += 1
            if detail is not None:
                failures.append((serialize(BoolFunction(n, table)), detail))
    return population, failures


def _sweep(
    checker_name: str,
    n: int,
    tables: Sequence[int],
    params: dict,
    threads: int = 1,
) -> tuple[int, list[Counterexample]]:
    if threads <= 1 or len(tables) < 256:
        population, failures = _run_chunk(checker_name, n, tables, params)
    else:
        chunk_size = max(64, len(tables) // (threads * 8) + 1)
        chunks = [tables[i : i + chunk_size] for i in range(0, len(tables), chunk_size)]
        population = 0
        failures = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = pool.map(
                _run_chunk,
                [checker_name] * len(chunks),
                [n] * len(chunks),
                chunks,
                [params] * len(chunks),
            )
            for part_population, part_failures in results:
                population += part_population
                failures.extend(part_failures)
    return population, [Counterexample(fn, detail) for fn, detail in failures]


# ---------------------------------------------------------------------------
# verifiers


def verify_enumeration_gates() -> VerificationReport:
    """Population gate: enumerator counts must match their known values."""
    start = time.perf_counter()
    checks = 0
    passes = 0
    failures: list[Counterexample] = []
    for n in range(0, GATE_MONOTONE_MAX + 1):
        checks += 1
        actual = monotone_count(n)
        if actual == MONOTONE_COUNTS[n]:
            passes += 1
        else:
            failures.append(
                Counterexample(f"monotone-count n={n}", f"got {actual}, expected {MONOTONE_COUNTS[n]}")
            )
    for n in range(1, GATE_THRESHOLD_MAX + 1):
        checks += 1
        try:
            actual = len(threshold_class(n))
        except RuntimeError as exc:
            failures.append(Counterexample(f"threshold-count n={n}", str(exc)))
            continue
        if actual == THRESHOLD_COUNTS[n]:
            passes += 1
        else:
            failures.append(
                Counterexample(f"threshold-count n={n}", f"got {actual}, expected {THRESHOLD_COUNTS[n]}")
            )
    return VerificationReport(
        statement="enumeration-gates",
        universe=f"monotone counts n<={GATE_MONOTONE_MAX}, threshold counts n<={GATE_THRESHOLD_MAX}",
        population=checks,
        passes=passes,
        counterexamples=failures,
        wall_time=time.perf_counter() - start,
    )


def verify_theorem_extremal(n: int, threads: int = 1) -> VerificationReport:
    """Extremal count is at least k+1, with equality exactly on read-once functions."""
    start = time.perf_counter()
    tables = list(_monotone_tables(n)) if n < MONOTONE_MAX_ARITY else [f.table for f in enumerate_monotone(n)]
    population, failures = _sweep("extremal", n, tables, {}, threads)
    return VerificationReport(
        statement="extremal-count-characterization",
        universe=f"positive threshold among the {len(tables)} monotone, n={n}",
        population=population,
        passes=population - len(failures),
        counterexamples=failures,
        wall_time=time.perf_counter() - start,
    )


def verify_extremal_partition(n: int, threads: int = 1) -> VerificationReport:
    start = time.perf_counter()
    tables = list(_monotone_tables(n))
    population, failures = _sweep("partition", n, tables, {}, threads)
    return VerificationReport(
        statement="extremal-partition-by-coordinate",
        universe=f"all {len(tables)} monotone, n={n}",
        population=population,
        passes=population - len(failures),
        counterexamples=failures,
        wall_time=time.perf_counter() - start,
    )


def verify_hu_bound(n: int, threads: int = 1) -> VerificationReport:
    """Specification number is at least n+1, with equality on nested functions."""
    start = time.perf_counter()
    tables = list(threshold_class(n))
    population, failures = _sweep("spec", n, tables, {}, threads)
    return VerificationReport(
        statement="spec-number-lower-bound",
        universe=f"threshold class of {len(tables)}, n={n}",
        population=population,
        passes=population - len(failures),
        counterexamples=failures,
        wall_time=time.perf_counter() - start,
    )


def verify_split_lemmas(n: int, threads: int = 1) -> VerificationReport:
    start = time.perf_counter()
    tables = list(_monotone_tables(n))
    population, failures = _sweep("split", n, tables, {}, threads)
    return VerificationReport(
        statement="split-structure-lemmas",
        universe=f"positive threshold among the {len(tables)} monotone, n={n}",
        population=population,
        passes=population - len(failures),
        counterexamples=failures,
        wall_time=time.perf_counter() - start,
    )


def verify_acyclicity(n: int, seed: int = 0, draws: int = 20, threads: int = 1) -> VerificationReport:
    start = time.perf_counter()
    tables = list(_monotone_tables(n))
    population, failures = _sweep("acyclic", n, tables, {"seed": seed, "draws": draws}, threads)
    return VerificationReport(
        statement="extremal-graph-acyclicity",
        universe=f"positive threshold among the {len(tables)} monotone, n={n}; "
        f"deterministic + {draws} seeded selections, every relevant subset",
        population=population,
        passes=population - len(failures),
        counterexamples=failures,
        wall_time=time.perf_counter() - start,
    )


def probe_acyclicity_converse(n: int, seed: int = 0, draws: int = 20, threads: int = 1) -> VerificationReport:
    """Search positive non-threshold functions for cyclic extremal graphs.

    Nothing is asserted either way; findings land in the notes."""
    start = time.perf_counter()
    tables = list(_monotone_tables(n))
    population, findings = _sweep("probe", n, tables, {"seed": seed, "draws": draws}, threads)
    cyclic = len(findings)
    return VerificationReport(
        statement="acyclicity-converse-probe",
        universe=f"positive non-threshold among the {len(tables)} monotone, n={n}",
        population=population,
        passes=population,
        counterexamples=[],
        wall_time=time.perf_counter() - start,
        notes=f"{cyclic} of {population} non-threshold functions produced a cyclic graph"
        + (f"; first: {findings[0].function} {findings[0].detail}" if findings else ""),
    )


def verify_essential_specifies(
    n: int, sample: int | None = None, seed: int = 0, threads: int = 1
) -> VerificationReport:
    """The essential set specifies the function and no essential point is droppable."""
    start = time.perf_counter()
    tables = list(threshold_class(n))
    if sample is not None and sample < len(tables):
        rng = Random(f"{seed}:essential-sample:{n}")
        tables = sorted(rng.sample(tables, sample))
    population, failures = _sweep("specifying", n, tables, {}, threads)
    return VerificationReport(
        statement="essential-set-specifies",
        universe=f"{len(tables)} threshold functions, n={n}"
        + ("" if sample is None or sample >= THRESHOLD_COUNTS[n] else f" (seeded sample of {sample})"),
        population=population,
        passes=population - len(failures),
        counterexamples=failures,
        wall_time=time.perf_counter() - start,
    )


def measure_two_summability(n: int, threads: int = 1) -> VerificationReport:
    """Census: does every non-threshold function carry a pair certificate?

    Measured and reported only; nothing is asserted."""
    start = time.perf_counter()
    _threshold_table_set(n)  # build before forking
    tables = list(range(1 << (1 << n)))
    population, findings = _sweep("summability", n, tables, {}, threads)
    non_threshold = population - len(_threshold_table_set(n))
    return VerificationReport(
        statement="two-summability-census",
        universe=f"all {len(tables)} functions, n={n}",
        population=population,
        passes=population,
        counterexamples=[],
        wall_time=time.perf_counter() - start,
        notes=f"{non_threshold} non-threshold functions, "
        f"{non_threshold - len(findings)} with a pair certificate, {len(findings)} without",
    )


# ---------------------------------------------------------------------------
# orchestration


@dataclass
class HarnessConfig:
    suites: tuple[str, ...] = ("extremal", "spec", "split", "acyclic")
    max_n: int | None = None
    seed: int = 0
    threads: int = 1
    draws: int = 20
    essential_sample: int | None = 200


SUITE_DEFAULT_CAP = {
    "extremal": 5,
    "split": 5,
    "acyclic": 5,
    "probe": 5,
    "spec": 4,
    "specifying": 4,
    "summability": 4,
}
SUITE_HARD_CAP = {
    "extremal": MONOTONE_MAX_ARITY,
    "split": MONOTONE_MAX_ARITY,
    "acyclic": MONOTONE_MAX_ARITY,
    "probe": MONOTONE_MAX_ARITY,
    "spec": GATE_THRESHOLD_MAX,
    "specifying": GATE_THRESHOLD_MAX,
    "summability": GATE_THRESHOLD_MAX,
}
SUITE_MIN_N = {
    "extremal": 0,
    "split": 1,
    "acyclic": 1,
    "probe": 1,
    "spec": 1,
    "specifying": 1,
    "summability": 1,
}
ALL_SUITES = tuple(SUITE_DEFAULT_CAP)


def run_all(config: HarnessConfig) -> list[VerificationReport]:
    """Gates first, then every configured suite at every arity within its cap."""
    for suite in config.suites:
        if suite not in SUITE_DEFAULT_CAP:
            raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITE_DEFAULT_CAP)}")
    reports = [verify_enumeration_gates()]
    if not reports[0].ok:
        return reports
    for suite in config.suites:
        cap = SUITE_DEFAULT_CAP[suite] if config.max_n is None else config.max_n
        cap = min(cap, SUITE_HARD_CAP[suite])
        for n in range(SUITE_MIN_N[suite], cap + 1):
            reports.extend(_run_suite(suite, n, config))
    return reports


def _run_suite(suite: str, n: int, config: HarnessConfig) -> list[VerificationReport]:
    if suite == "extremal":
        return [
            verify_theorem_extremal(n, threads=config.threads),
            verify_extremal_partition(n, threads=config.threads),
        ]
    if suite == "spec":
        return [verify_hu_bound(n, threads=config.threads)]
    if suite == "split":
        return [verify_split_lemmas(n, threads=config.threads)]
    if suite == "acyclic":
        return [verify_acyclicity(n, seed=config.seed, draws=config.draws, threads=config.threads)]
    if suite == "probe":
        return [probe_acyclicity_converse(n, seed=config.seed, draws=config.draws, threads=config.threads)]
    if suite == "specifying":
        sample = config.essential_sample if n >= 4 else None
        return [verify_essential_specifies(n, sample=sample, seed=config.seed, threads=config.threads)]
    if suite == "summability":
        return [measure_two_summability(n, threads=config.threads)]
    raise ValueError(f"unknown suite {suite!r}")
