"""Graded Euler characteristic and the homological discrepancy h1.

The smoothness construction organizes into a three-term complex: a free
summand per triangle, a quotient R/l^(r+1) per interior edge, and a
quotient R/J(v) per interior vertex.  Its top homology in degree k is the
spline space, its bottom homology vanishes, and the middle homology H1
measures how far the true dimension sits above the Euler characteristic:

    dim(k) = chi(k) + h1(k),   h1(k) >= 0.

chi needs no rank computations for the triangle and edge terms (closed
forms) and delegates the vertex term to the local Hilbert functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bound import schumaker_bound
from .linalg import monomial_count
from .local_vertex import VertexIdeal, local_hilbert
from .mesh import Triangulation
from .spline_space import spline_dimension

__all__ = ["ChiReport", "DiscrepancyReport", "euler_characteristic", "discrepancy", "max_nonzero_h1"]


@dataclass(frozen=True)
class ChiReport:
    r: int
    k: int
    triangle_term: int
    edge_term: int
    vertex_term: int
    chi: int


@dataclass(frozen=True)
class DiscrepancyReport:
    r: int
    k: int
    dim: int
    bound: int
    chi: int
    h1: int   # dim - chi, the homological discrepancy
    gap: int  # dim - bound


@lru_cache(maxsize=None)
def _vertex_ideals(mesh: Triangulation, r: int) -> tuple[VertexIdeal, ...]:
    return tuple(VertexIdeal.from_mesh(mesh, v, r) for v in mesh.interior_vertices)


def euler_characteristic(mesh: Triangulation, r: int, k: int, *, seed: int = 0) -> ChiReport:
    """chi(k) as triangle term - edge term + vertex term."""
    if r < 0 or k < 0:
        raise ValueError("smoothness r and degree k must be nonnegative")
    nb = monomial_count(k)
    triangle_term = len(mesh.triangles) * nb
    edge_term = mesh.f1 * (nb - monomial_count(k - r - 1))
    vertex_term = sum(local_hilbert(vi, k, seed=seed) for vi in _vertex_ideals(mesh, r))
    return ChiReport(r, k, triangle_term, edge_term, vertex_term,
                     triangle_term - edge_term + vertex_term)


def discrepancy(mesh: Triangulation, r: int, k: int, *, seed: int = 0) -> DiscrepancyReport:
    """Assemble dim, the lower bound, chi, h1 = dim - chi and gap = dim - bound."""
    dim = spline_dimension(mesh, r, k, seed=seed)
    bound = schumaker_bound(mesh, r, k).value
    chi = euler_characteristic(mesh, r, k, seed=seed).chi
    return DiscrepancyReport(r, k, dim, bound, chi, dim - chi, dim - bound)


def max_nonzero_h1(mesh: Triangulation, r: int, *, seed: int = 0) -> int | None:
    """Largest k in [0, 4r+1] with h1(k) != 0, or None if none.

    h1 vanishes for k >= 4r+1 (the bound is exact there and matches chi),
    so the search window is complete; scanning downward allows an early
    exit at the first nonzero value.
    """
    if r < 0:
        raise ValueError("smoothness r must be nonnegative")
    for k in range(4 * r + 1, -1, -1):
        rep = discrepancy(mesh, r, k, seed=seed)
        if rep.h1 != 0:
            return k
    return None
