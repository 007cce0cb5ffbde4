"""Exact dimension of the space of C^r splines of degree k on a mesh.

A piecewise polynomial (one degree-k polynomial per triangle, in
homogenized coordinates) is C^r smooth exactly when, across every
interior edge, the difference of the two adjacent pieces is divisible by
the (r+1)-st power of the edge's linear form.  We impose this with an
explicit multiplier unknown per interior edge:

    p_plus - p_minus - l**(r+1) * q = 0   in degree k,

where q has degree k - r - 1 (no multiplier when that is negative).  The
multiplier is determined by the pieces, so the kernel of the stacked
system projects bijectively onto the spline space and its nullity is the
dimension.  The graded degree-k dimension equals the dimension of the
space of splines of total degree at most k on the planar mesh.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .linalg import Block, GradedMatrix, monomial_count, multiplication_matrix, power, rank
from .mesh import Triangulation

__all__ = ["SplineProblem", "smoothness_matrix", "spline_dimension", "dimension_table"]


@dataclass(frozen=True)
class SplineProblem:
    mesh: Triangulation
    r: int
    k: int

    def __post_init__(self):
        if self.r < 0 or self.k < 0:
            raise ValueError("smoothness r and degree k must be nonnegative")


def smoothness_matrix(
    mesh: Triangulation,
    r: int,
    k: int,
    *,
    flip_edges: frozenset[int] = frozenset(),
) -> GradedMatrix:
    """The stacked smoothness system for (mesh, r, k).

    Columns: one degree-k coefficient block per triangle, then one
    degree-(k-r-1) multiplier block per interior edge (omitted when
    k < r + 1).  Rows: one degree-k equation block per interior edge.
    Edge orientation takes the lower-indexed adjacent triangle as the
    positive side; ``flip_edges`` (by interior-edge position) reverses
    that for orientation-independence tests.
    """
    if r < 0 or k < 0:
        raise ValueError("smoothness r and degree k must be nonnegative")
    nb = monomial_count(k)
    qdeg = k - r - 1
    nq = monomial_count(qdeg)
    interior = mesh.interior_edges

    col_blocks = [Block(f"triangle[{t}]", k, nb) for t in range(len(mesh.triangles))]
    if nq:
        col_blocks += [Block(f"multiplier[{e.u}-{e.v}]", qdeg, nq) for e in interior]
    row_blocks = [Block(f"edge[{e.u}-{e.v}]", k, nb) for e in interior]
    mat = GradedMatrix.zeros(row_blocks, col_blocks)
    arr = mat.array

    diag = np.arange(nb)
    ntri = len(mesh.triangles)
    for pos, edge in enumerate(interior):
        plus, minus = sorted(edge.triangles)
        if pos in flip_edges:
            plus, minus = minus, plus
        r0 = pos * nb
        arr[r0 + diag, plus * nb + diag] = 1
        arr[r0 + diag, minus * nb + diag] = -1
        if nq:
            block = multiplication_matrix(power(mesh.edge_form(edge), r + 1), qdeg)
            c0 = ntri * nb + pos * nq
            arr[r0 : r0 + nb, c0 : c0 + nq] = -block.array
    return mat


@lru_cache(maxsize=None)
def _dual_spanning_tree(mesh: Triangulation):
    """BFS spanning tree of the triangle adjacency graph.

    Returns (tree, cotree): ``tree`` maps each non-root triangle to the
    interior-edge position linking it to its parent; ``cotree`` lists the
    interior-edge positions outside the tree.
    """
    interior = mesh.interior_edges
    nbrs: dict[int, list[tuple[int, int]]] = {t: [] for t in range(len(mesh.triangles))}
    for pos, e in enumerate(interior):
        a, b = e.triangles
        nbrs[a].append((pos, b))
        nbrs[b].append((pos, a))
    tree: dict[int, tuple[int, int]] = {}  # triangle -> (edge pos, parent)
    seen = {0}
    queue = [0]
    while queue:
        t = queue.pop(0)
        for pos, other in nbrs[t]:
            if other not in seen:
                seen.add(other)
                tree[other] = (pos, t)
                queue.append(other)
    assert len(seen) == len(mesh.triangles), "dual graph of a disk is connected"
    in_tree = {pos for pos, _ in tree.values()}
    cotree = tuple(pos for pos in range(len(interior)) if pos not in in_tree)
    return tree, cotree


@lru_cache(maxsize=None)
def _multiplier_block(form, exponent: int, qdeg: int) -> np.ndarray:
    return multiplication_matrix(power(form, exponent), qdeg).array


def _reduced_system(mesh: Triangulation, r: int, k: int) -> np.ndarray:
    """Schur complement of the stacked system after unit-pivot elimination.

    Solving each spanning-tree constraint for the child triangle's piece
    (unit pivots, so exact over the integers) expresses every piece as
    the root piece plus a signed sum of multiplier terms along the tree
    path.  Substituting into the remaining constraints cancels the pieces
    entirely, leaving one equation block per cotree edge in the
    multiplier unknowns alone.  rank(full) = (F-1)*nb + rank(reduced).
    """
    nb = monomial_count(k)
    qdeg = k - r - 1
    nq = monomial_count(qdeg)
    interior = mesh.interior_edges
    tree, cotree = _dual_spanning_tree(mesh)
    if nq == 0 or not cotree:
        return np.zeros((len(cotree) * nb, len(interior) * nq), np.int64)

    # path expression per triangle: sparse {edge pos: +-1} relative to root
    expr: dict[int, dict[int, int]] = {0: {}}

    def expression(t: int) -> dict[int, int]:
        if t not in expr:
            pos, parent = tree[t]
            e = interior[pos]
            sign = 1 if t == max(e.triangles) else -1
            # plus side is the lower triangle index: p_max = p_min - sign*l^{r+1} q
            combo = dict(expression(parent))
            combo[pos] = combo.get(pos, 0) - sign
            expr[t] = {f: c for f, c in combo.items() if c}
        return expr[t]

    arr = np.zeros((len(cotree) * nb, len(interior) * nq), np.int64)
    for row_i, pos in enumerate(cotree):
        e = interior[pos]
        plus, minus = sorted(e.triangles)
        combo: dict[int, int] = {}
        for f, c in expression(plus).items():
            combo[f] = combo.get(f, 0) + c
        for f, c in expression(minus).items():
            combo[f] = combo.get(f, 0) - c
        combo[pos] = combo.get(pos, 0) - 1
        r0 = row_i * nb
        for f, c in combo.items():
            if c:
                block = _multiplier_block(mesh.edge_form(interior[f]), r + 1, qdeg)
                arr[r0 : r0 + nb, f * nq : (f + 1) * nq] = c * block
    return arr


@lru_cache(maxsize=None)
def _dimension(mesh: Triangulation, r: int, k: int, seed: int) -> int:
    reduced = _reduced_system(mesh, r, k)
    nq = monomial_count(k - r - 1)
    free_cols = monomial_count(k) + mesh.f1 * nq
    return free_cols - rank(reduced, seed=seed)


def spline_dimension(mesh, r: int | None = None, k: int | None = None, *, seed: int = 0) -> int:
    """dim of the C^r splines of degree at most k; accepts a SplineProblem."""
    if isinstance(mesh, SplineProblem):
        mesh, r, k = mesh.mesh, mesh.r, mesh.k
    if r is None or k is None:
        raise TypeError("spline_dimension needs r and k (or a SplineProblem)")
    if r < 0 or k < 0:
        raise ValueError("smoothness r and degree k must be nonnegative")
    return _dimension(mesh, r, k, seed)


def dimension_table(
    mesh: Triangulation, r: int, k_range: Iterable[int], *, seed: int = 0
) -> list[tuple[int, int]]:
    """(k, dim) pairs over a degree range; nondecreasing in k."""
    ks = list(k_range)
    if not ks:
        raise ValueError("empty degree range")
    return [(k, spline_dimension(mesh, r, k, seed=seed)) for k in ks]
