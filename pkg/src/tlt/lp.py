"""Exact rational LP feasibility via phase-1 simplex with Bland's rule.

Every answer is certified: a FeasiblePoint exactly satisfies all constraints,
an Infeasible verdict carries Farkas multipliers refuting the system. No
floating point is used anywhere. Internally the tableau is kept integral
(integer pivoting: all entries share one positive denominator and pivot
updates divide exactly), which is much faster than Fraction arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import PivotLimitError

LE = "<="
GE = ">="

DEFAULT_PIVOT_LIMIT = 200_000


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self) -> None:
        if self.relation not in (LE, GE):
            raise ValueError(f"relation must be {LE!r} or {GE!r}")

    def holds_at(self, values: Sequence[Fraction]) -> bool:
        lhs = sum(c * v for c, v in zip(self.coeffs, values))
        return lhs <= self.rhs if self.relation == LE else lhs >= self.rhs


@dataclass(frozen=True)
class LPSystem:
    num_vars: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        for con in self.constraints:
            if len(con.coeffs) != self.num_vars:
                raise ValueError(
                    f"constraint has {len(con.coeffs)} coefficients, expected {self.num_vars}"
                )

    def satisfied_by(self, values: Sequence[Fraction]) -> bool:
        return all(con.holds_at(values) for con in self.constraints)


def constraint(coeffs: Sequence[int | Fraction], relation: str, rhs: int | Fraction) -> Constraint:
    return Constraint(tuple(Fraction(c) for c in coeffs), relation, Fraction(rhs))


@dataclass(frozen=True)
class FeasiblePoint:
    values: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    """Definitive infeasibility; ``farkas`` are per-constraint multipliers.

    With every constraint rewritten in <= form (>= rows negated), the
    multipliers are nonnegative, combine the coefficient rows to zero and the
    right-hand sides to a negative number.
    """

    farkas: tuple[Fraction, ...] | None = None


def validate_farkas(system: LPSystem, multipliers: Sequence[Fraction]) -> bool:
    if len(multipliers) != len(system.constraints) or any(m < 0 for m in multipliers):
        return False
    combined = [Fraction(0)] * system.num_vars
    rhs_total = Fraction(0)
    for mult, con in zip(multipliers, system.constraints):
        sign = 1 if con.relation == LE else -1
        for j, c in enumerate(con.coeffs):
            combined[j] += mult * sign * c
        rhs_total += mult * sign * con.rhs
    return all(c == 0 for c in combined) and rhs_total < 0


def lp_feasible(system: LPSystem, max_pivots: int = DEFAULT_PIVOT_LIMIT) -> FeasiblePoint | Infeasible:
    """Decide feasibility exactly; both outcomes are validated before return."""
    nvars = system.num_vars
    m = len(system.constraints)
    if m == 0:
        return FeasiblePoint(tuple(Fraction(0) for _ in range(nvars)))

    # integral normal form: row = scale * (coeffs | rhs), slack sign per row
    rows: list[list[int]] = []
    slack_sign: list[int] = []
    scale: list[int] = []
    for con in system.constraints:
        denom = lcm(*(c.denominator for c in con.coeffs), con.rhs.denominator)
        coeffs = [int(c * denom) for c in con.coeffs]
        rhs = int(con.rhs * denom)
        sign = 1 if con.relation == LE else -1
        if rhs < 0 or (rhs == 0 and sign < 0):
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            sign = -sign
        rows.append(coeffs + [rhs])
        slack_sign.append(sign)
        scale.append(denom)

    # after sign normalization rhs >= 0 always; artificials exactly where slack is -1
    art_rows = [r for r in range(m) if slack_sign[r] < 0]
    art_index = {r: k for k, r in enumerate(art_rows)}
    ncols = 2 * nvars + m + len(art_rows) + 1
    rhs_col = ncols - 1

    def slack_col(r: int) -> int:
        return 2 * nvars + r

    def art_col(r: int) -> int:
        return 2 * nvars + m + art_index[r]

    tableau: list[list[int]] = []
    basis: list[int] = []
    for r in range(m):
        row = [0] * ncols
        for j in range(nvars):
            row[j] = rows[r][j]
            row[nvars + j] = -rows[r][j]
        row[slack_col(r)] = slack_sign[r]
        row[rhs_col] = rows[r][-1]
        if r in art_index:
            row[art_col(r)] = 1
            basis.append(art_col(r))
        else:
            basis.append(slack_col(r))
        tableau.append(row)

    # phase-1 objective: minimize the artificial total; reduced-cost row
    obj = [0] * ncols
    for r in art_rows:
        for j in range(ncols):
            obj[j] -= tableau[r][j]
    for r in art_rows:
        obj[art_col(r)] = 0
    tableau.append(obj)

    det = 1
    pivots = 0
    while True:
        objrow = tableau[m]
        enter = -1
        for j in range(ncols - 1):
            if objrow[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_num = best_den = 0
        for r in range(m):
            a = tableau[r][enter]
            if a <= 0:
                continue
            num, den = tableau[r][rhs_col], a
            if leave < 0 or num * best_den < best_num * den or (
                num * best_den == best_num * den and basis[r] < basis[leave]
            ):
                leave, best_num, best_den = r, num, den
        if leave < 0:
            raise AssertionError("phase-1 objective is bounded; no leaving row must be impossible")
        if pivots >= max_pivots:
            raise PivotLimitError(f"exceeded {max_pivots} pivots")
        pivots += 1

        pivot = tableau[leave][enter]
        prow = tableau[leave]
        for i in range(m + 1):
            if i == leave:
                continue
            row = tableau[i]
            f = row[enter]
            if f == 0:
                if pivot != det:
                    tableau[i] = [x * pivot // det for x in row]
            else:
                tableau[i] = [(x * pivot - f * y) // det for x, y in zip(row, prow)]
        basis[leave] = enter
        det = pivot

    if tableau[m][rhs_col] != 0:
        # infeasible: recover dual prices from the final reduced-cost row
        duals = []
        for r in range(m):
            if r in art_index:
                red = Fraction(tableau[m][art_col(r)], det)
                duals.append(1 - red)
            else:
                red = Fraction(tableau[m][slack_col(r)], det)
                duals.append(-slack_sign[r] * red)
        # multipliers for the <=-form of the original constraints: the slack
        # sign already folds in both the relation and any row sign flip
        farkas = tuple(-duals[r] * slack_sign[r] * scale[r] for r in range(m))
        if not validate_farkas(system, farkas):
            raise AssertionError("internal error: Farkas certificate failed validation")
        return Infeasible(farkas=farkas)

    values = [Fraction(0)] * (2 * nvars)
    for r in range(m):
        if basis[r] < 2 * nvars:
            values[basis[r]] = Fraction(tableau[r][rhs_col], det)
    point = tuple(values[j] - values[nvars + j] for j in range(nvars))
    if not system.satisfied_by(point):
        raise AssertionError("internal error: feasible point failed validation")
    return FeasiblePoint(point)
