"""The counterexample family: threshold, non-nested, yet specification number n+1.

For n >= 4 the function with DNF ``x1x2 | x1x3 | ... | x1x(n-1) | x2x3...xn``
is positive, depends on all variables, is not linear read-once, and is
threshold with weights (2n-5, 2, ..., 2, 1) and threshold 2n-4. It has n-1
minimal ones and n maximal zeros; exactly n+1 of those 2n-1 extremal points
are essential, so its specification number meets the n+1 lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .boolfn import MAX_ARITY, BoolFunction, Point, parse_positive_dnf, serialize, table_mask, coordinate_mask
from .read_once import recognize_lro
from .separability import SummabilityCert, ThresholdCert, find_k_summability
from .teaching import ALL_POINTS, EXTREMAL_ONLY, essential_points, flip


@dataclass(frozen=True)
class FamilyInstance:
    n: int
    function: BoolFunction
    dnf: str
    cnf: str
    expected_minimal_ones: tuple[Point, ...]
    expected_maximal_zeros: tuple[Point, ...]
    expected_weights: tuple[int, ...]
    expected_threshold: int
    expected_spec_number: int
    expected_extremal_count: int

    def expected_cert(self) -> ThresholdCert:
        return ThresholdCert(
            weights=tuple(Fraction(w) for w in self.expected_weights),
            threshold=Fraction(self.expected_threshold),
        )

    def essential_expectation(self) -> frozenset[Point]:
        # the minimal ones plus the last two maximal zeros; the n-2 complement
        # zeros are the non-essential ones
        return frozenset(self.expected_minimal_ones) | frozenset(self.expected_maximal_zeros[-2:])


@dataclass
class FamilyVerdict:
    instance: FamilyInstance
    failures: list[str] = field(default_factory=list)
    essential: frozenset[Point] = frozenset()
    spec_number: int = 0
    y_certificates: dict[Point, SummabilityCert] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def make_family(n: int) -> FamilyInstance:
    if not 4 <= n <= MAX_ARITY:
        raise ValueError(f"family members exist for 4 <= n <= {MAX_ARITY}, got {n}")
    terms = [f"x1x{j}" for j in range(2, n)]
    terms.append("".join(f"x{j}" for j in range(2, n + 1)))
    dnf = " | ".join(terms)
    clauses = [f"(x1|x{j})" for j in range(2, n + 1)]
    clauses.append("(" + "|".join(f"x{j}" for j in range(2, n)) + ")")
    cnf = "".join(clauses)

    full = (1 << n) - 1
    minimal_ones = [Point(n, 1 | (1 << i)) for i in range(1, n - 1)]
    minimal_ones.append(Point(n, full & ~1))
    complement_zeros = [Point(n, full ^ p.bits) for p in minimal_ones[:-1]]
    z1 = Point(n, ((1 << (n - 1)) - 1) & ~1)
    z2 = Point(n, 1 | (1 << (n - 1)))
    maximal_zeros = complement_zeros + [z1, z2]

    return FamilyInstance(
        n=n,
        function=parse_positive_dnf(dnf, n),
        dnf=dnf,
        cnf=cnf,
        expected_minimal_ones=tuple(minimal_ones),
        expected_maximal_zeros=tuple(maximal_zeros),
        expected_weights=(2 * n - 5,) + (2,) * (n - 2) + (1,),
        expected_threshold=2 * n - 4,
        expected_spec_number=n + 1,
        expected_extremal_count=2 * n - 1,
    )


def cnf_table(inst: FamilyInstance) -> BoolFunction:
    """Expand the conjunctive form independently of the DNF parser."""
    n = inst.n
    table = table_mask(n)
    clause = 0
    for j in range(2, n + 1):
        table &= coordinate_mask(n, 1) | coordinate_mask(n, j)
    for j in range(2, n):
        clause |= coordinate_mask(n, j)
    return BoolFunction(n, table & clause)


def verify_family(inst: FamilyInstance, recheck_all_points: bool | None = None) -> FamilyVerdict:
    """Run the full battery of checks; the verdict lists any failures.

    ``recheck_all_points`` re-runs the essential-point scan over the whole cube
    instead of only extremal candidates (defaults to on at n = 4, where it is
    cheap, as a guard on the candidate pruning itself).
    """
    f = inst.function
    verdict = FamilyVerdict(instance=inst)
    fail = verdict.failures.append

    if not f.is_positive():
        fail("positive")
    if f.relevant_variables() != frozenset(range(1, inst.n + 1)):
        fail("depends_on_all_variables")
    if recognize_lro(f) is not None:
        fail("not_linear_read_once")
    if not inst.expected_cert().certifies(f):
        fail("weights_certify")

    ext = f.extremal_points()
    if ext.maximal_zeros != frozenset(inst.expected_maximal_zeros) or ext.minimal_ones != frozenset(
        inst.expected_minimal_ones
    ):
        fail("extremal_points_match")
    if ext.count != inst.expected_extremal_count:
        fail("extremal_count")

    report = essential_points(f, candidates=EXTREMAL_ONLY)
    verdict.essential = report.essential
    verdict.spec_number = report.spec_number
    if report.essential != inst.essential_expectation() or report.spec_number != inst.expected_spec_number:
        fail("essential_points_match")

    for y in inst.expected_maximal_zeros[: inst.n - 2]:
        cert = find_k_summability(flip(f, y), 2)
        if cert is None or not cert.valid_for(flip(f, y)):
            fail(f"y_point_{y.to_bitstring()}_two_summable")
        else:
            verdict.y_certificates[y] = cert

    if cnf_table(inst) != f:
        fail("cnf_matches_dnf")

    if recheck_all_points or (recheck_all_points is None and inst.n == 4):
        full_report = essential_points(f, candidates=ALL_POINTS)
        if full_report.essential != report.essential:
            fail("all_points_mode_agrees")

    return verdict


def family_bundle(inst: FamilyInstance, verdict: FamilyVerdict) -> dict:
    """JSON-ready summary used by the command line."""
    return {
        "n": inst.n,
        "dnf": inst.dnf,
        "cnf": inst.cnf,
        "table": serialize(inst.function),
        "minimal_ones": [p.to_bitstring() for p in inst.expected_minimal_ones],
        "maximal_zeros": [p.to_bitstring() for p in inst.expected_maximal_zeros],
        "weights": list(inst.expected_weights),
        "threshold": inst.expected_threshold,
        "essential": sorted(p.to_bitstring() for p in verdict.essential),
        "spec_number": verdict.spec_number,
        "r": inst.expected_extremal_count,
        "y_summability": {
            y.to_bitstring(): cert.to_json_dict() for y, cert in sorted(
                verdict.y_certificates.items(), key=lambda kv: kv[0].bits
            )
        },
        "checks_failed": list(verdict.failures),
        "verified": verdict.ok,
    }
