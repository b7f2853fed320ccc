"""Exact thresholdness decisions with certificates in both directions.

A ThresholdCert gives rational weights and threshold separating false from
true points with margin 1 (any separating hyperplane can be rescaled to this
normal form). A SummabilityCert exhibits equal-size multisets of false and
true points with identical coordinate sums, which rules thresholdness out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from .boolfn import BoolFunction, Point
from .errors import NonPositiveError
from .lp import GE, LE, Constraint, FeasiblePoint, LPSystem, lp_feasible

SUMMABILITY_SEARCH_BUDGET = 4_000_000


@dataclass(frozen=True)
class ThresholdCert:
    """Weights w and threshold t with w.x <= t on false points, w.y >= t+1 on true points."""

    weights: tuple[Fraction, ...]
    threshold: Fraction

    def value_at(self, p: Point) -> Fraction:
        return sum((w for w, c in zip(self.weights, p.coords()) if c), Fraction(0))

    def certifies(self, f: BoolFunction) -> bool:
        if len(self.weights) != f.arity:
            return False
        for j in range(1 << f.arity):
            value = sum(self.weights[i] for i in range(f.arity) if (j >> i) & 1)
            if f.value_at(j):
                if value < self.threshold + 1:
                    return False
            elif value > self.threshold:
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "weights": [_rational_str(w) for w in self.weights],
            "threshold": _rational_str(self.threshold),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> ThresholdCert:
        return cls(
            weights=tuple(_parse_rational(w) for w in data["weights"]),
            threshold=_parse_rational(data["threshold"]),
        )


@dataclass(frozen=True)
class SummabilityCert:
    """Multisets of r false and r true points with equal coordinate sums."""

    r: int
    false_points: tuple[Point, ...]
    true_points: tuple[Point, ...]

    def coordinate_sums(self) -> tuple[int, ...]:
        arity = self.false_points[0].arity
        return tuple(sum(p.coord(i) for p in self.false_points) for i in range(1, arity + 1))

    def valid_for(self, f: BoolFunction) -> bool:
        if self.r < 2 or len(self.false_points) != self.r or len(self.true_points) != self.r:
            return False
        if any(f.evaluate(p) != 0 for p in self.false_points):
            return False
        if any(f.evaluate(p) != 1 for p in self.true_points):
            return False
        sums_false = [0] * f.arity
        sums_true = [0] * f.arity
        for p in self.false_points:
            for i in range(f.arity):
                sums_false[i] += (p.bits >> i) & 1
        for p in self.true_points:
            for i in range(f.arity):
                sums_true[i] += (p.bits >> i) & 1
        return sums_false == sums_true

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "false": [p.to_bitstring() for p in self.false_points],
            "true": [p.to_bitstring() for p in self.true_points],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> SummabilityCert:
        return cls(
            r=data["r"],
            false_points=tuple(Point.from_bitstring(s) for s in data["false"]),
            true_points=tuple(Point.from_bitstring(s) for s in data["true"]),
        )


@dataclass(frozen=True)
class NotThreshold:
    """Negative verdict; may carry a Farkas witness from the simplex and/or a
    summability certificate when one was found first."""

    farkas: tuple[Fraction, ...] | None = None
    summability: SummabilityCert | None = None


def _rational_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_rational(text: str | int) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text)


def _point_constraint(f: BoolFunction, bits: int) -> Constraint:
    # variables are w_1..w_n, t
    coeffs = tuple(Fraction((bits >> i) & 1) for i in range(f.arity)) + (Fraction(-1),)
    if f.value_at(bits):
        return Constraint(coeffs, GE, Fraction(1))
    return Constraint(coeffs, LE, Fraction(0))


def build_full_system(f: BoolFunction) -> LPSystem:
    """One constraint per point of the cube, over variables w_1..w_n, t."""
    return LPSystem(f.arity + 1, tuple(_point_constraint(f, j) for j in range(1 << f.arity)))


def reduce_constraints(f: BoolFunction) -> LPSystem:
    """Extremal-point constraints plus w_i >= 0; equivalent to the full system
    for positive functions."""
    if not f.is_positive():
        raise NonPositiveError("constraint reduction requires a positive function")
    ext = f.extremal_points()
    cons: list[Constraint] = []
    for p in sorted(ext.maximal_zeros, key=lambda q: q.bits):
        cons.append(_point_constraint(f, p.bits))
    for p in sorted(ext.minimal_ones, key=lambda q: q.bits):
        cons.append(_point_constraint(f, p.bits))
    zero = Fraction(0)
    one = Fraction(1)
    for i in range(f.arity):
        coeffs = tuple(one if j == i else zero for j in range(f.arity)) + (zero,)
        cons.append(Constraint(coeffs, GE, zero))
    return LPSystem(f.arity + 1, tuple(cons))


def check_threshold(f: BoolFunction, prefilter: bool = True) -> ThresholdCert | NotThreshold:
    """Decide thresholdness with a validated certificate either way.

    Positive functions are decided on the reduced (extremal) system. For other
    functions a 2-summability search runs first when ``prefilter`` is set: a
    hit is an exact disproof and skips the LP entirely.
    """
    if f.is_positive():
        system = reduce_constraints(f)
    else:
        if prefilter:
            cert = find_k_summability(f, 2)
            if cert is not None:
                return NotThreshold(summability=cert)
        system = build_full_system(f)
    outcome = lp_feasible(system)
    if isinstance(outcome, FeasiblePoint):
        cert = ThresholdCert(weights=outcome.values[:-1], threshold=outcome.values[-1])
        if not cert.certifies(f):
            raise AssertionError("internal error: threshold certificate failed validation")
        return cert
    return NotThreshold(farkas=outcome.farkas)


@lru_cache(maxsize=1 << 20)
def check_threshold_cached(f: BoolFunction) -> ThresholdCert | NotThreshold:
    """Memoized check_threshold with default options, for sweep workloads."""
    return check_threshold(f)


def is_threshold(f: BoolFunction) -> bool:
    return isinstance(check_threshold_cached(f), ThresholdCert)


def find_k_summability(f: BoolFunction, max_r: int = 2) -> SummabilityCert | None:
    """Search for equal-sum multisets of r false and r true points, r = 2..max_r.

    r = 2 hashes coordinate-sum keys of point pairs; larger r uses
    meet-in-the-middle over multiset halves with an enumeration budget. None
    means the bounded search found nothing, not that f is threshold.
    """
    if max_r < 2:
        raise ValueError("max_r must be at least 2")
    false_bits = [j for j in range(1 << f.arity) if not f.value_at(j)]
    true_bits = [j for j in range(1 << f.arity) if f.value_at(j)]
    if not false_bits or not true_bits:
        return None
    for r in range(2, max_r + 1):
        found = _summability_at(f, r, false_bits, true_bits)
        if found is not None:
            if not found.valid_for(f):
                raise AssertionError("internal error: summability certificate failed validation")
            return found
    return None


def _encode(bits: int, arity: int, base: int) -> int:
    # coordinate sums of r points have digits <= r, so base r+1 keys add carry-free
    key = 0
    power = 1
    for i in range(arity):
        if (bits >> i) & 1:
            key += power
        power *= base
    return key


def _summability_at(
    f: BoolFunction, r: int, false_bits: list[int], true_bits: list[int]
) -> SummabilityCert | None:
    arity = f.arity
    base = r + 1
    enc_false = [_encode(b, arity, base) for b in false_bits]
    enc_true = [_encode(b, arity, base) for b in true_bits]

    if r == 2:
        pair_of: dict[int, tuple[int, int]] = {}
        nf = len(false_bits)
        for i in range(nf):
            ei = enc_false[i]
            for j in range(i, nf):
                pair_of.setdefault(ei + enc_false[j], (i, j))
        nt = len(true_bits)
        for i in range(nt):
            ei = enc_true[i]
            for j in range(i, nt):
                hit = pair_of.get(ei + enc_true[j])
                if hit is not None:
                    return SummabilityCert(
                        r=2,
                        false_points=tuple(Point(arity, false_bits[k]) for k in hit),
                        true_points=(Point(arity, true_bits[i]), Point(arity, true_bits[j])),
                    )
        return None

    h = r // 2
    rest = r - h
    if _multiset_count(len(false_bits), h) * _multiset_count(len(true_bits), h) > SUMMABILITY_SEARCH_BUDGET:
        return None
    if _multiset_count(len(true_bits), rest) * _multiset_count(len(false_bits), rest) > SUMMABILITY_SEARCH_BUDGET:
        return None
    left: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for xs in combinations_with_replacement(range(len(false_bits)), h):
        key_x = sum(enc_false[i] for i in xs)
        for ys in combinations_with_replacement(range(len(true_bits)), h):
            key = key_x - sum(enc_true[i] for i in ys)
            left.setdefault(key, (xs, ys))
    for ys in combinations_with_replacement(range(len(true_bits)), rest):
        key_y = sum(enc_true[i] for i in ys)
        for xs in combinations_with_replacement(range(len(false_bits)), rest):
            hit = left.get(key_y - sum(enc_false[i] for i in xs))
            if hit is not None:
                xs1, ys1 = hit
                return SummabilityCert(
                    r=r,
                    false_points=tuple(Point(arity, false_bits[k]) for k in xs1 + xs),
                    true_points=tuple(Point(arity, true_bits[k]) for k in ys1 + ys),
                )
    return None


def _multiset_count(n: int, k: int) -> int:
    if n == 0:
        return 0
    from math import comb

    return comb(n + k - 1, k)
