"""Closed-form analytics behind the counterexample family.

For smoothness r with r + 1 = 4j, the discrepancy module of the bundled
counterexample mesh is presented by a 2x2 block of syzygies of degree 2j,
and comparing Hilbert functions of the presentation's target and source
gives the quadratic

    q_j(k) = -k**2 + (12j - 3)k - 28j**2 + 18j - 2.

Wherever q_j(k) > 0 the discrepancy is forced to be nonzero, and the
larger root of q_j sits strictly above (22r + 7)/10.  Everything here is
verified in exact rational arithmetic; root comparisons isolate the
radical and square, never touching floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chain import discrepancy, max_nonzero_h1
from .mesh import Triangulation

__all__ = [
    "BoundAnalytics",
    "bound_analytics",
    "hf_difference_quadratic",
    "RootBoundCheck",
    "larger_root_bound",
    "ConsistencyClause",
    "ConsistencyReport",
    "consistency_check",
]


@dataclass(frozen=True)
class BoundAnalytics:
    r: int
    j: int | None          # (r+1)/4 when r+1 is a multiple of 4
    theorem_bound: Fraction  # (22r+7)/10
    remark_max_degree: int   # floor((9r+2)/4)


def bound_analytics(r: int) -> BoundAnalytics:
    if r < 0:
        raise ValueError("smoothness r must be nonnegative")
    j = (r + 1) // 4 if (r + 1) % 4 == 0 else None
    return BoundAnalytics(r, j, Fraction(22 * r + 7, 10), (9 * r + 2) // 4)


def hf_difference_quadratic(j: int, k: int) -> int:
    """Target-minus-source Hilbert function of the presentation at degree k."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    return -k * k + (12 * j - 3) * k - 28 * j * j + 18 * j - 2


@dataclass(frozen=True)
class RootBoundCheck:
    """Exact record of 'larger root of q_j' > (22r+7)/10 at r = 4j - 1.

    The larger root is center + sqrt(radicand)/2 with center = 6j - 3/2;
    ``holds`` is decided by isolating the radical and squaring.
    """

    j: int
    center: Fraction
    radicand: int
    threshold: Fraction
    holds: bool


def larger_root_bound(j: int) -> RootBoundCheck:
    if j < 1:
        raise ValueError("j must be a positive integer")
    center = Fraction(12 * j - 3, 2)
    radicand = 32 * j * j + 1
    threshold = Fraction(22 * (4 * j - 1) + 7, 10)
    # center + sqrt(radicand)/2 > threshold  <=>  sqrt(radicand) > 2(threshold - center)
    rhs = 2 * (threshold - center)
    holds = rhs < 0 or radicand > rhs * rhs
    return RootBoundCheck(j, center, radicand, threshold, holds)


@dataclass(frozen=True)
class ConsistencyClause:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ConsistencyReport:
    r: int
    clauses: tuple[ConsistencyClause, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)


def consistency_check(mesh: Triangulation, r: int, *, seed: int = 0) -> ConsistencyReport:
    """Check the counterexample mesh against its three headline identities.

    (a) the largest degree with nonzero discrepancy is floor((9r+2)/4);
    (b) the discrepancy is nonzero for every k with r+1 <= k <= (22r+7)/10;
    (c) the discrepancy vanishes for k >= 4r+1 (checked on a window).
    """
    analytics = bound_analytics(r)
    clauses = []

    observed = max_nonzero_h1(mesh, r, seed=seed)
    clauses.append(
        ConsistencyClause(
            "max-nonzero-degree",
            observed == analytics.remark_max_degree,
            f"max k with h1 != 0: engine {observed}, "
            f"formula floor((9r+2)/4) = {analytics.remark_max_degree}",
        )
    )

    top = int(analytics.theorem_bound)  # floor, bound is positive
    failing = [
        k
        for k in range(r + 1, top + 1)
        if discrepancy(mesh, r, k, seed=seed).h1 == 0
    ]
    clauses.append(
        ConsistencyClause(
            "nonvanishing-window",
            not failing,
            f"h1 != 0 for k in {r + 1}..{top}"
            + (f"; offending k = {failing}" if failing else ""),
        )
    )

    zero_window = range(4 * r + 1, 4 * r + 4)
    nonzero = [k for k in zero_window if discrepancy(mesh, r, k, seed=seed).h1 != 0]
    clauses.append(
        ConsistencyClause(
            "vanishing-above-4r",
            not nonzero,
            f"h1 == 0 for k in {zero_window.start}..{zero_window.stop - 1}"
            + (f"; offending k = {nonzero}" if nonzero else ""),
        )
    )
    return ConsistencyReport(r, tuple(clauses))
