"""Planar triangulations with exact rational coordinates.

The data model is deliberately small: vertices are points with
``fractions.Fraction`` coordinates, triangles are index triples, and
everything else (edges, boundary/interior classification, edge lines,
slope counts) is derived.  Construction validates that the complex is a
triangulated topological disk; all downstream dimension computations
assume a validated mesh and never re-check.

No floating point is used anywhere: slope coincidences are exact
conditions and must stay exact.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from math import gcd, lcm
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "BUNDLED_MESHES",
    "MeshError",
    "ParseError",
    "ValidationError",
    "Point2",
    "LinearForm",
    "Edge",
    "Triangulation",
    "parse_rational",
    "parse_mesh",
    "serialize_mesh",
    "load_mesh",
    "bundled_mesh",
]

#: Names of the meshes shipped with the package (see ``data/``).
BUNDLED_MESHES = ("triangle", "two_triangles", "morgan_scott", "sy_delta")


class MeshError(ValueError):
    """Base class for mesh input problems."""


class ParseError(MeshError):
    """Malformed mesh file: bad structure, bad rational, bad index."""


class ValidationError(MeshError):
    """Well-formed file describing a complex that is not a valid disk."""


_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``"n"`` or ``"n/d"`` (d > 0) into an exact ``Fraction``."""
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ParseError(f"malformed rational {text!r} (expected 'n' or 'n/d')")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"malformed rational {text!r} (zero denominator)") from None


class Point2(NamedTuple):
    x: Fraction
    y: Fraction


class LinearForm(NamedTuple):
    """Canonical homogeneous form ``a*x + b*y + c*z`` in three variables.

    Canonical means: integer coefficients with no common factor, first
    nonzero coefficient positive.  Two edges lie on the same line exactly
    when their canonical forms are equal, so proportionality tests are
    plain equality tests.
    """

    a: int
    b: int
    c: int

    @classmethod
    def normalized(cls, a, b, c) -> "LinearForm":
        coeffs = [Fraction(a), Fraction(b), Fraction(c)]
        if not any(coeffs):
            raise ValueError("zero linear form")
        scale = lcm(*(q.denominator for q in coeffs))
        ints = [int(q * scale) for q in coeffs]
        g = gcd(*ints)
        ints = [v // g for v in ints]
        lead = next(v for v in ints if v)
        if lead < 0:
            ints = [-v for v in ints]
        return cls(*ints)

    @classmethod
    def through(cls, p: Point2, q: Point2) -> "LinearForm":
        """The line through two distinct affine points, homogenized with z."""
        if p == q:
            raise ValueError(f"degenerate edge: coincident endpoints ({p.x}, {p.y})")
        return cls.normalized(p.y - q.y, q.x - p.x, p.x * q.y - p.y * q.x)

    def evaluate(self, x, y, z):
        return self.a * x + self.b * y + self.c * z


class Edge(NamedTuple):
    """Undirected edge ``u < v`` with the indices of its incident triangles."""

    u: int
    v: int
    triangles: tuple[int, ...]

    @property
    def is_boundary(self) -> bool:
        return len(self.triangles) == 1


def _signed_area2(p: Point2, q: Point2, s: Point2) -> Fraction:
    return (q.x - p.x) * (s.y - p.y) - (q.y - p.y) * (s.x - p.x)


@dataclass(frozen=True)
class Triangulation:
    """A validated triangulation of a simply connected polygonal domain.

    Instances are immutable and hashable; build them with
    :meth:`Triangulation.build`, :func:`parse_mesh` or :func:`bundled_mesh`.
    """

    vertices: tuple[Point2, ...]
    triangles: tuple[tuple[int, int, int], ...]
    edges: tuple[Edge, ...]
    boundary_vertices: frozenset[int]
    f0: int  # interior vertex count
    f1: int  # interior edge count

    @classmethod
    def build(
        cls,
        vertices: Iterable[tuple],
        triangles: Iterable[Sequence[int]],
    ) -> "Triangulation":
        verts = tuple(Point2(Fraction(x), Fraction(y)) for x, y in vertices)
        tris = tuple(sorted(tuple(sorted(t)) for t in triangles))
        _check_simplices(verts, tris)
        edges = _derive_edges(tris)
        boundary_edges = [e for e in edges if e.is_boundary]
        _check_boundary_cycle(boundary_edges)
        v_total, e_total, f_total = len(verts), len(edges), len(tris)
        euler = v_total - e_total + f_total
        if euler != 1:
            raise ValidationError(
                f"V - E + F = {euler}, expected 1: not a triangulated disk"
            )
        boundary_vertices = frozenset(v for e in boundary_edges for v in (e.u, e.v))
        f0 = v_total - len(boundary_vertices)
        f1 = e_total - len(boundary_edges)
        assert f_total - f1 + f0 == 1
        return cls(verts, tris, edges, boundary_vertices, f0, f1)

    # -- combinatorial queries -------------------------------------------

    @cached_property
    def _edge_index(self) -> dict[tuple[int, int], Edge]:
        return {(e.u, e.v): e for e in self.edges}

    def edge(self, u: int, v: int) -> Edge:
        key = (u, v) if u < v else (v, u)
        try:
            return self._edge_index[key]
        except KeyError:
            raise KeyError(f"no edge {{{u}, {v}}} in mesh") from None

    @property
    def interior_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if not e.is_boundary)

    @property
    def boundary_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.is_boundary)

    @property
    def interior_vertices(self) -> tuple[int, ...]:
        return tuple(
            v for v in range(len(self.vertices)) if v not in self.boundary_vertices
        )

    def is_interior_vertex(self, v: int) -> bool:
        return 0 <= v < len(self.vertices) and v not in self.boundary_vertices

    def edges_at(self, v: int) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if v in (e.u, e.v))

    def totally_interior_edges(self) -> tuple[Edge, ...]:
        """Interior edges both of whose endpoints are interior vertices."""
        return tuple(
            e
            for e in self.interior_edges
            if e.u not in self.boundary_vertices and e.v not in self.boundary_vertices
        )

    # -- geometric queries -----------------------------------------------

    def edge_form(self, edge: Edge | tuple[int, int]) -> LinearForm:
        """Canonical linear form vanishing on the (homogenized) edge line."""
        u, v = (edge.u, edge.v) if isinstance(edge, Edge) else edge
        return LinearForm.through(self.vertices[u], self.vertices[v])

    def slope_count(self, v: int) -> int:
        """Number of distinct lines spanned by the edges at interior vertex v."""
        if not self.is_interior_vertex(v):
            raise ValueError(f"vertex {v} is not an interior vertex")
        return len({self.edge_form(e) for e in self.edges_at(v)})


def _check_simplices(verts, tris) -> None:
    seen: dict[Point2, int] = {}
    for i, p in enumerate(verts):
        if p in seen:
            raise ValidationError(
                f"duplicate vertex: #{seen[p]} and #{i} both at ({p.x}, {p.y})"
            )
        seen[p] = i
    if not tris:
        raise ValidationError("mesh has no triangles")
    for t in tris:
        if len(set(t)) != 3:
            raise ParseError(f"triangle {t} has repeated vertex indices")
        for v in t:
            if not 0 <= v < len(verts):
                raise ParseError(f"triangle {t} has bad index {v}")
        if _signed_area2(*(verts[v] for v in t)) == 0:
            raise ValidationError(f"degenerate triangle {t}: collinear vertices")
    for a, b in zip(tris, tris[1:]):
        if a == b:
            raise ValidationError(f"duplicate triangle {a}")
    used = {v for t in tris for v in t}
    for v in range(len(verts)):
        if v not in used:
            raise ValidationError(f"vertex {v} is not used by any triangle")


def _derive_edges(tris) -> tuple[Edge, ...]:
    incident: dict[tuple[int, int], list[int]] = {}
    for ti, (a, b, c) in enumerate(tris):
        for pair in ((a, b), (a, c), (b, c)):
            incident.setdefault(pair, []).append(ti)
    edges = []
    for (u, v), owners in sorted(incident.items()):
        if len(owners) > 2:
            raise ValidationError(
                f"non-manifold edge {{{u}, {v}}}: {len(owners)} incident triangles"
            )
        edges.append(Edge(u, v, tuple(owners)))
    return tuple(edges)


def _check_boundary_cycle(boundary_edges: list[Edge]) -> None:
    if not boundary_edges:
        raise ValidationError("mesh has no boundary edges")
    neighbors: dict[int, list[int]] = {}
    for e in boundary_edges:
        neighbors.setdefault(e.u, []).append(e.v)
        neighbors.setdefault(e.v, []).append(e.u)
    for v, nbrs in neighbors.items():
        if len(nbrs) != 2:
            raise ValidationError(
                f"boundary is not a simple cycle: vertex {v} lies on "
                f"{len(nbrs)} boundary edges"
            )
    start = boundary_edges[0].u
    prev, cur = None, start
    visited = 0
    while True:
        a, b = neighbors[cur]
        prev, cur = cur, (b if a == prev else a)
        visited += 1
        if cur == start:
            break
    if visited != len(boundary_edges):
        raise ValidationError(
            "disconnected boundary: "
            f"{len(boundary_edges)} boundary edges but a cycle of {visited}"
        )


# -- file format -----------------------------------------------------------
#
# A mesh file is a JSON document with exactly two keys:
#
#   {"vertices": [["x", "y"], ...], "triangles": [[a, b, c], ...]}
#
# Coordinates are strings "n" or "n/d" with d > 0 (plain JSON integers are
# also accepted; floats are rejected).  Triangle entries are 0-based vertex
# indices.  The serializer emits canonical-form rationals and sorted
# triangle triples.


def parse_mesh(text: str) -> Triangulation:
    """Parse and validate a mesh file; see the module docstring for errors."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"mesh file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"vertices", "triangles"}:
        raise ParseError("mesh file must be an object with 'vertices' and 'triangles'")
    vertices = []
    for i, entry in enumerate(doc["vertices"]):
        if not isinstance(entry, list) or len(entry) != 2:
            raise ParseError(f"vertex #{i} is not an [x, y] pair: {entry!r}")
        vertices.append((parse_rational(entry[0]), parse_rational(entry[1])))
    triangles = []
    for i, entry in enumerate(doc["triangles"]):
        if (
            not isinstance(entry, list)
            or len(entry) != 3
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
        ):
            raise ParseError(f"triangle #{i} is not a triple of indices: {entry!r}")
        triangles.append(tuple(entry))
    return Triangulation.build(vertices, triangles)


def serialize_mesh(mesh: Triangulation) -> str:
    """Canonical text form: exact rationals, sorted triangle triples."""
    doc = {
        "vertices": [[str(p.x), str(p.y)] for p in mesh.vertices],
        "triangles": [list(t) for t in mesh.triangles],
    }
    return json.dumps(doc, indent=2) + "\n"


def load_mesh(path) -> Triangulation:
    with open(path, encoding="utf-8") as fh:
        return parse_mesh(fh.read())


def bundled_mesh(name: str) -> Triangulation:
    """Load one of the meshes shipped with the package by name."""
    if name not in BUNDLED_MESHES:
        raise KeyError(f"unknown bundled mesh {name!r}; available: {BUNDLED_MESHES}")
    data = resources.files("splinedim.data").joinpath(f"{name}.json").read_text()
    return parse_mesh(data)
