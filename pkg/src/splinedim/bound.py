"""The classical lower bound for the spline space dimension.

For a mesh with f1 interior edges, f0 interior vertices and n(v) distinct
slopes at each interior vertex v, the dimension of the C^r splines of
degree at most k is bounded below by

  P(r, k) = C(k+2,2) + C(k-r+1,2) f1 - (C(k+2,2) - C(r+2,2)) f0 + sigma,

where sigma sums the per-vertex slope corrections.  Every term is a count
of monomials or constraints, and each count is truncated at zero: the
vertex term for k < r and the correction terms beyond j = k - r do not
exist yet in degree k.  With those truncations the bound is valid for all
k >= 0 and agrees with the usual closed form for k >= 2r.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import monomial_count
from .local_vertex import sigma_capped
from .mesh import Triangulation

__all__ = ["BoundReport", "schumaker_bound"]


@dataclass(frozen=True)
class BoundReport:
    r: int
    k: int
    f0: int
    f1: int
    sigma_total: int
    value: int


def schumaker_bound(mesh: Triangulation, r: int, k: int) -> BoundReport:
    """Evaluate the lower bound exactly (integer arithmetic throughout)."""
    if r < 0 or k < 0:
        raise ValueError("smoothness r and degree k must be nonnegative")
    f0, f1 = mesh.f0, mesh.f1
    sigma_total = sum(
        sigma_capped(mesh.slope_count(v), r, k) for v in mesh.interior_vertices
    )
    value = (
        monomial_count(k)
        + monomial_count(k - r - 1) * f1
        - max(monomial_count(k) - monomial_count(r), 0) * f0
        + sigma_total
    )
    return BoundReport(r, k, f0, f1, sigma_total, value)
