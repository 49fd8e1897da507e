"""
MIT License

Copyright (c) 2025-present tom-jm69

Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in all
copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
SOFTWARE.
"""

import itertools
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np
import pydantic
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.spatial import ConvexHull

from .constants import (
    FACET_BATCH,
    INCIDENCE_TOL,
    MAX_QHULL_VERTICES,
    MAX_VERTICES,
    ORTHOGONAL_TOL,
    RANK_TOL,
    SYMMETRY_TOL,
)
from .enums import BodyKind, FacetMethod
from .exceptions import BodyParseError, CapacityError, InvalidArgument
from .grassmann import RandomSource, as_generator, ball_constants, sample_sphere
from .linalg import Subspace, affine_dimension, oriented_complement, orthonormal_frame
from .models import EllipsoidFile, PolytopeFile

__all__ = (
    "Facet",
    "Face",
    "Polytope",
    "Ellipsoid",
    "BoundarySample",
    "BoundaryBatch",
    "Body",
    "build_polytope",
    "standard_body",
    "transform_body",
    "normal_cone_contains",
    "normal_cone_mask",
    "integrate_normal_cone",
    "ellipsoid_boundary_sample",
    "ellipsoid_boundary_batch",
    "load_body",
    "parse_body",
)

_log = logging.getLogger(__name__)

_frozen_arrays = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class Facet(BaseModel):
    """Supporting hyperplane <normal, x> = offset with its incident vertices."""

    model_config = _frozen_arrays

    normal: np.ndarray
    offset: float
    vertex_ids: Tuple[int, ...]


class Face(BaseModel):
    """An l-dimensional face: vertex set, relative-interior point, direction and volume."""

    model_config = _frozen_arrays

    dim: int
    vertex_ids: Tuple[int, ...]
    basepoint: np.ndarray
    direction: Subspace
    volume: float
    facet_ids: Tuple[int, ...]


class Polytope(BaseModel):
    """
    A full-dimensional convex polytope given by its extreme points.

    ``face_lattice[l]`` lists the l-faces for 0 <= l <= n-1, each sorted by vertex ids.
    """

    model_config = _frozen_arrays

    dim: int
    vertices: np.ndarray
    facets: Tuple[Facet, ...]
    face_lattice: Tuple[Tuple[Face, ...], ...]
    label: str = "polytope"
    facet_method: FacetMethod = FacetMethod.BRUTE_FORCE
    incidence_tol: float = INCIDENCE_TOL

    def faces(self, dim: int) -> Tuple[Face, ...]:
        if not 0 <= dim <= self.dim - 1:
            raise InvalidArgument("Face dimension must lie in 0..n-1", "dim", dim)
        return self.face_lattice[dim]

    @property
    def f_vector(self) -> List[int]:
        return [len(level) for level in self.face_lattice]

    def euler_characteristic(self) -> int:
        """Alternating face count; equals 1 + (-1)^(n-1) for a polytope in R^n."""
        return sum((-1) ** ell * count for ell, count in enumerate(self.f_vector))

    @property
    def scale(self) -> float:
        """Largest distance from the first vertex, a translation-invariant length scale."""
        return float(np.max(np.linalg.norm(self.vertices - self.vertices[0], axis=1)))

    def facet_normal(self, face: Face) -> np.ndarray:
        if face.dim != self.dim - 1:
            raise InvalidArgument("Only facets have a single outward normal", "dim", face.dim)
        return self.facets[face.facet_ids[0]].normal

    def to_json(self) -> Dict[str, Any]:
        return {"kind": "polytope", "vertices": self.vertices.tolist(), "f_vector": self.f_vector}


class Ellipsoid(BaseModel):
    """The body {center + A s : |s| <= 1} for a symmetric positive-definite A."""

    model_config = _frozen_arrays

    dim: int
    shape: np.ndarray
    center: np.ndarray
    label: str = "ellipsoid"

    @model_validator(mode="before")
    @classmethod
    def coerce_arrays(cls, data: Any) -> Any:
        if isinstance(data, dict) and "shape" in data:
            shape = np.array(data["shape"], dtype=float)
            if shape.ndim != 2 or shape.shape[0] != shape.shape[1]:
                raise InvalidArgument(
                    "Ellipsoid shape must be a square matrix", "shape", shape.shape
                )
            center = data.get("center")
            center = np.zeros(shape.shape[0]) if center is None else np.array(center, dtype=float)
            return {**data, "dim": shape.shape[0], "shape": shape, "center": center}
        return data

    @model_validator(mode="after")
    def check_shape(self) -> "Ellipsoid":
        if self.center.shape != (self.dim,):
            raise InvalidArgument("Center must be an n-vector", "center", self.center.shape)
        if not np.allclose(self.shape, self.shape.T, rtol=0.0, atol=SYMMETRY_TOL):
            raise InvalidArgument("Ellipsoid shape must be symmetric", "shape")
        if np.min(np.linalg.eigvalsh(self.shape)) <= 0.0:
            raise InvalidArgument("Ellipsoid shape must be positive definite", "shape")
        return self

    @property
    def inverse_shape(self) -> np.ndarray:
        return np.linalg.inv(self.shape)

    def normal_at(self, x: np.ndarray) -> np.ndarray:
        """Outward unit normal of the level set through x."""
        inv = self.inverse_shape
        grad = (np.asarray(x, dtype=float) - self.center) @ (inv @ inv).T
        return grad / np.linalg.norm(grad, axis=-1, keepdims=True)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": "ellipsoid", "shape": self.shape.tolist(), "center": self.center.tolist()}


Body = Union[Polytope, Ellipsoid]


class BoundarySample(BaseModel):
    """A boundary point with its normal, tangent frame, shape operator and area weight."""

    model_config = _frozen_arrays

    point: np.ndarray
    normal: np.ndarray
    tangent_frame: np.ndarray
    shape_operator: np.ndarray
    area_weight: float


class BoundaryBatch(BaseModel):
    """Stacked boundary samples; leading axis indexes the draw."""

    model_config = _frozen_arrays

    points: np.ndarray
    normals: np.ndarray
    tangent_frames: np.ndarray
    shape_operators: np.ndarray
    area_weights: np.ndarray

    def __len__(self) -> int:
        return self.points.shape[0]

    def __getitem__(self, j: int) -> BoundarySample:
        return BoundarySample(
            point=self.points[j],
            normal=self.normals[j],
            tangent_frame=self.tangent_frames[j],
            shape_operator=self.shape_operators[j],
            area_weight=float(self.area_weights[j]),
        )


def _spread(points: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(points - points[0], axis=1)))


def _dedupe(points: np.ndarray, tol: float) -> np.ndarray:
    limit = tol * max(_spread(points), 1.0)
    kept: List[int] = []
    for idx, x in enumerate(points):
        if kept and np.min(np.linalg.norm(points[kept] - x, axis=1)) <= limit:
            continue
        kept.append(idx)
    return points[kept]


def _refit_facet(points: np.ndarray, incident: Tuple[int, ...], hint: np.ndarray) -> Facet:
    """Least-squares hyperplane through the incident points, oriented like ``hint``."""
    on_facet = points[list(incident)]
    centroid = on_facet.mean(axis=0)
    _, _, vh = np.linalg.svd(on_facet - centroid)
    normal = vh[-1]
    if normal @ hint < 0:
        normal = -normal
    return Facet(normal=normal, offset=float(centroid @ normal), vertex_ids=incident)


def _segment_facets(points: np.ndarray, limit: float) -> Dict[Tuple[int, ...], np.ndarray]:
    x = points[:, 0]
    low = tuple(np.flatnonzero(x <= x.min() + limit).tolist())
    high = tuple(np.flatnonzero(x >= x.max() - limit).tolist())
    return {low: np.array([-1.0]), high: np.array([1.0])}


def _brute_force_facets(points: np.ndarray, limit: float) -> Dict[Tuple[int, ...], np.ndarray]:
    """Supporting hyperplanes through every affinely independent n-subset of points."""
    count, n = points.shape
    spread = _spread(points)
    found: Dict[Tuple[int, ...], np.ndarray] = {}
    subsets = itertools.combinations(range(count), n)
    while True:
        batch = np.array(list(itertools.islice(subsets, FACET_BATCH)), dtype=int)
        if batch.size == 0:
            break
        base = points[batch[:, 0]]
        diffs = points[batch[:, 1:]] - base[:, None, :]
        _, s, vh = np.linalg.svd(diffs)
        normals = vh[:, -1, :]
        spanning = s[:, -1] > RANK_TOL * spread
        heights = normals @ points.T - np.einsum("bi,bi->b", normals, base)[:, None]
        below = np.all(heights <= limit, axis=1)
        above = np.all(heights >= -limit, axis=1)
        for row in np.flatnonzero(spanning & (below | above)):
            incident = tuple(np.flatnonzero(np.abs(heights[row]) <= limit).tolist())
            if incident not in found:
                found[incident] = normals[row] if below[row] else -normals[row]
    return found


def _qhull_facets(points: np.ndarray, limit: float) -> Dict[Tuple[int, ...], np.ndarray]:
    """Facets from Qhull simplices, merging coplanar simplices by incidence set."""
    hull = ConvexHull(points)
    found: Dict[Tuple[int, ...], np.ndarray] = {}
    for equation in hull.equations:
        normal, shift = equation[:-1], equation[-1]
        heights = points @ normal + shift
        incident = tuple(np.flatnonzero(np.abs(heights) <= limit).tolist())
        found.setdefault(incident, normal)
    return found


def _extreme_points(incidences: Sequence[FrozenSet[int]], count: int) -> List[int]:
    """Points that are the whole intersection of the facets through them."""
    vertex_facets: List[List[int]] = [[] for _ in range(count)]
    for h, incident in enumerate(incidences):
        for v in incident:
            vertex_facets[v].append(h)
    extreme = []
    for v, facet_ids in enumerate(vertex_facets):
        if facet_ids and frozenset.intersection(*(incidences[h] for h in facet_ids)) == {v}:
            extreme.append(v)
    return extreme


def build_polytope(
    vertices: Sequence[Sequence[float]] | np.ndarray,
    method: FacetMethod = FacetMethod.BRUTE_FORCE,
    tol: float = INCIDENCE_TOL,
    label: str = "polytope",
) -> Polytope:
    """
    Convex hull of the given points with its full face lattice and face volumes.

    Args:
        vertices: Points in R^n, one per row; duplicates and non-extreme points are dropped.
        method: Facet discovery, brute force over n-subsets or Qhull.
        tol: Relative incidence tolerance.
        label: Descriptor echoed in evaluation results.

    Returns:
        Polytope: Vertices in input order, facets and faces in sorted vertex-id order.

    Raises:
        InvalidArgument: Non-finite points or a hull that is not full-dimensional.
        CapacityError: More points than the chosen facet method accepts.
    """
    points = np.asarray(vertices, dtype=float)
    if points.ndim != 2 or points.shape[0] == 0 or points.shape[1] == 0:
        raise InvalidArgument("Expected a non-empty list of n-vectors", "vertices", points.shape)
    if not np.all(np.isfinite(points)):
        raise InvalidArgument("Vertices must be finite", "vertices")
    points = _dedupe(points, tol)
    count, n = points.shape

    cap = MAX_VERTICES if method is FacetMethod.BRUTE_FORCE else MAX_QHULL_VERTICES
    if count > cap:
        raise CapacityError(f"Too many points for {method} facet discovery", limit=cap, size=count)
    if count < n + 1 or affine_dimension(points) != n:
        raise InvalidArgument("Polytope is not full-dimensional", "vertices", count)

    limit = tol * _spread(points)
    if n == 1:
        raw = _segment_facets(points, limit)
    elif method is FacetMethod.QHULL:
        raw = _qhull_facets(points, limit)
    else:
        raw = _brute_force_facets(points, limit)

    incidences = [frozenset(incident) for incident in raw]
    extreme = _extreme_points(incidences, count)
    reindex = {old: new for new, old in enumerate(extreme)}
    points = points[extreme]

    facets: Dict[Tuple[int, ...], Facet] = {}
    for incident, hint in raw.items():
        kept = tuple(sorted(reindex[v] for v in incident if v in reindex))
        if kept not in facets:
            facets[kept] = _refit_facet(points, kept, hint)
    ordered = tuple(facets[key] for key in sorted(facets))
    _log.debug(f"Hull of {count} points: {len(points)} vertices, {len(ordered)} facets")

    lattice = _face_lattice(points, ordered)
    return Polytope(
        dim=n,
        vertices=points,
        facets=ordered,
        face_lattice=lattice,
        label=label,
        facet_method=method,
        incidence_tol=tol,
    )


def _face_lattice(points: np.ndarray, facets: Tuple[Facet, ...]) -> Tuple[Tuple[Face, ...], ...]:
    """Descend from facets through pairwise intersections, then sum pyramid volumes upward."""
    n = points.shape[1]
    incidences = [frozenset(f.vertex_ids) for f in facets]
    vertex_facets: List[set] = [set() for _ in range(len(points))]
    for h, incident in enumerate(incidences):
        for v in incident:
            vertex_facets[v].add(h)

    levels: Dict[int, Dict[FrozenSet[int], FrozenSet[int]]] = {
        n - 1: {incident: frozenset({h}) for h, incident in enumerate(incidences)}
    }
    children: Dict[FrozenSet[int], List[FrozenSet[int]]] = {}
    dims: Dict[FrozenSet[int], int] = {}
    for ell in range(n - 2, -1, -1):
        current: Dict[FrozenSet[int], FrozenSet[int]] = {}
        for face, containing in levels[ell + 1].items():
            candidates = set().union(*(vertex_facets[v] for v in face)) - containing
            kids = set()
            for h in candidates:
                cut = face & incidences[h]
                if len(cut) < ell + 1:
                    continue
                if cut not in dims:
                    dims[cut] = affine_dimension(points[sorted(cut)])
                if dims[cut] == ell:
                    kids.add(cut)
                    if cut not in current:
                        shared = (frozenset(vertex_facets[v]) for v in cut)
                        current[cut] = frozenset.intersection(*shared)
            children[face] = sorted(kids, key=sorted)
        levels[ell] = current

    directions: Dict[FrozenSet[int], Subspace] = {}
    centroids: Dict[FrozenSet[int], np.ndarray] = {}
    volumes: Dict[FrozenSet[int], float] = {}
    lattice: List[Tuple[Face, ...]] = []
    for ell in range(n):
        faces = []
        for face in sorted(levels[ell], key=sorted):
            ids = sorted(face)
            verts = points[ids]
            centroids[face] = verts.mean(axis=0)
            directions[face] = orthonormal_frame(verts[1:] - verts[0], ambient_dim=n)
            if ell == 0:
                volumes[face] = 1.0
            else:
                total = 0.0
                for kid in children[face]:
                    offset = centroids[face] - points[min(kid)]
                    frame = directions[kid].frame
                    height = np.linalg.norm(offset - frame @ (frame.T @ offset))
                    total += height * volumes[kid]
                volumes[face] = total / ell
            faces.append(
                Face(
                    dim=ell,
                    vertex_ids=tuple(ids),
                    basepoint=centroids[face],
                    direction=directions[face],
                    volume=volumes[face],
                    facet_ids=tuple(sorted(levels[ell][face])),
                )
            )
        lattice.append(tuple(faces))
    return tuple(lattice)


def standard_body(
    kind: BodyKind | str,
    n: int,
    points: int = 20,
    rng: Optional[RandomSource] = None,
    method: FacetMethod = FacetMethod.BRUTE_FORCE,
    axes: Optional[Sequence[float]] = None,
) -> Body:
    """
    Built-in bodies: simplex, cube, cross-polytope, random hull, ball and ellipsoid.

    ``random-hull`` is the hull of ``points`` standard Gaussian points drawn from ``rng``.
    ``method`` picks the facet discovery for every polytope kind.
    The default ellipsoid has semi-axes evenly spaced from 1 to 2.

    Raises:
        InvalidArgument: Unknown kind, n < 1, or a random hull without ``rng``.
    """
    try:
        kind = BodyKind(str(kind).replace("_", "-"))
    except ValueError as e:
        raise InvalidArgument(f"Unknown body kind: {kind}", "kind", str(kind)) from e
    if n < 1:
        raise InvalidArgument("Dimension must be positive", "n", n)
    label = f"{kind}(n={n})"

    if kind is BodyKind.SIMPLEX:
        return build_polytope(np.vstack([np.zeros(n), np.eye(n)]), method=method, label=label)
    if kind is BodyKind.CUBE:
        cloud = np.array(list(itertools.product((0.0, 1.0), repeat=n)))
        return build_polytope(cloud, method=method, label=label)
    if kind is BodyKind.CROSS:
        return build_polytope(np.vstack([np.eye(n), -np.eye(n)]), method=method, label=label)
    if kind is BodyKind.RANDOM_HULL:
        if rng is None:
            raise InvalidArgument("A random hull needs a random stream", "rng")
        cloud = as_generator(rng).standard_normal((points, n))
        return build_polytope(cloud, method=method, label=f"{kind}(n={n},points={points})")
    if kind is BodyKind.BALL:
        return Ellipsoid(shape=np.eye(n), label=label)

    semi_axes = np.linspace(1.0, 2.0, n) if axes is None else np.asarray(axes, dtype=float)
    if semi_axes.shape != (n,):
        raise InvalidArgument("Expected one semi-axis per dimension", "axes", semi_axes.tolist())
    return Ellipsoid(shape=np.diag(semi_axes), label=f"{kind}(axes={semi_axes.tolist()})")


def transform_body(
    body: Body,
    g: Optional[np.ndarray] = None,
    t: Optional[Sequence[float]] = None,
    s: float = 1.0,
) -> Body:
    """
    Image of ``body`` under x -> s*g*x + t; omitted parts are skipped, not multiplied by identity.

    Raises:
        InvalidArgument: ``g`` not orthogonal within 1e-10, or ``s`` not positive.
    """
    if s <= 0:
        raise InvalidArgument("Scale must be positive", "s", s)
    n = body.dim
    if g is not None:
        g = np.asarray(g, dtype=float)
        if g.shape != (n, n) or not np.allclose(g @ g.T, np.eye(n), rtol=0.0, atol=ORTHOGONAL_TOL):
            raise InvalidArgument("Transformation must be orthogonal", "g")

    if isinstance(body, Ellipsoid):
        shape, center = body.shape, body.center
        if g is not None:
            shape, center = g @ shape @ g.T, g @ center
        if s != 1.0:
            shape, center = s * shape, s * center
        if t is not None:
            center = center + np.asarray(t, dtype=float)
        return Ellipsoid(shape=(shape + shape.T) / 2, center=center, label=body.label)

    vertices = body.vertices
    if g is not None:
        vertices = vertices @ g.T
    if s != 1.0:
        vertices = s * vertices
    if t is not None:
        vertices = vertices + np.asarray(t, dtype=float)
    return build_polytope(
        vertices, method=body.facet_method, tol=body.incidence_tol, label=body.label
    )


def normal_cone_mask(
    P: Polytope, F: Face, directions: np.ndarray, tol: Optional[float] = None
) -> np.ndarray:
    """Vectorized normal-cone membership for directions stacked as rows."""
    tol = P.incidence_tol if tol is None else tol
    limit = tol * P.scale
    relative = P.vertices - P.vertices[F.vertex_ids[0]]
    heights = np.asarray(directions, dtype=float) @ relative.T
    on_face = np.zeros(len(P.vertices), dtype=bool)
    on_face[list(F.vertex_ids)] = True
    top = heights.max(axis=1, keepdims=True)
    attained = np.all(heights[:, on_face] >= top - limit, axis=1)
    if on_face.all():
        return attained
    strict = np.all(heights[:, ~on_face] < top - limit, axis=1)
    return attained & strict


def normal_cone_contains(
    P: Polytope, F: Face, u: Sequence[float] | np.ndarray, tol: Optional[float] = None
) -> bool:
    """True iff the support of P in direction u is attained exactly on F."""
    return bool(normal_cone_mask(P, F, np.asarray(u, dtype=float)[None, :], tol)[0])


def sample_normal_directions(F: Face, gen: np.random.Generator, count: int) -> np.ndarray:
    """Uniform directions on the unit sphere of the orthogonal complement of F."""
    complement = F.direction.complement().frame
    return sample_sphere(complement.shape[1], gen, count) @ complement.T


def integrate_normal_cone(
    P: Polytope,
    F: Face,
    g: Callable[[np.ndarray], np.ndarray],
    mc: int,
    rng: RandomSource,
) -> Tuple[float, float]:
    """
    Integral of ``g`` over the spherical normal cone of F, with its standard error.

    Facets are evaluated exactly at their outward normal.

    Raises:
        InvalidArgument: F is not a proper face or ``mc`` is not positive.
    """
    if F.dim >= P.dim:
        raise InvalidArgument("Face dimension must be below the ambient dimension", "dim", F.dim)
    if F.dim == P.dim - 1:
        return float(np.asarray(g(P.facet_normal(F)[None, :]))[0]), 0.0
    if mc < 1:
        raise InvalidArgument("Sample count must be positive", "mc", mc)
    _, omega = ball_constants(P.dim - F.dim)
    directions = sample_normal_directions(F, as_generator(rng), mc)
    values = omega * normal_cone_mask(P, F, directions) * np.asarray(g(directions), dtype=float)
    error = float(values.std(ddof=1) / np.sqrt(mc)) if mc > 1 else 0.0
    return float(values.mean()), error


def ellipsoid_boundary_batch(K: Ellipsoid, gen: np.random.Generator, count: int) -> BoundaryBatch:
    """
    Boundary draws x = c + A s with s uniform on the sphere.

    Weights are omega_n times the Jacobian of s -> A s on the tangent space of
    the sphere, so ``mean(weight * f)`` estimates the surface integral of f.
    """
    n = K.dim
    s = sample_sphere(n, gen, count)
    inv = K.inverse_shape
    pulled = s @ inv.T
    length = np.linalg.norm(pulled, axis=1)
    normals = pulled / length[:, None]
    frames = oriented_complement(normals)
    curvature = (inv @ inv)[None, :, :] / length[:, None, None]
    shape_ops = np.swapaxes(frames, 1, 2) @ curvature @ frames
    shape_ops = (shape_ops + np.swapaxes(shape_ops, 1, 2)) / 2

    pushed = K.shape @ oriented_complement(s)
    gram = np.swapaxes(pushed, 1, 2) @ pushed
    _, omega = ball_constants(n)
    weights = omega * np.sqrt(np.linalg.det(gram))
    return BoundaryBatch(
        points=K.center + s @ K.shape.T,
        normals=normals,
        tangent_frames=frames,
        shape_operators=shape_ops,
        area_weights=weights,
    )


def ellipsoid_boundary_sample(K: Ellipsoid, rng: RandomSource) -> BoundarySample:
    return ellipsoid_boundary_batch(K, as_generator(rng), 1)[0]


def parse_body(data: Dict[str, Any], path: Optional[str] = None) -> Body:
    """
    Body from its JSON document.

    Raises:
        BodyParseError: Document matches neither the polytope nor the ellipsoid schema.
    """
    if not isinstance(data, dict):
        raise BodyParseError("Body document must be a JSON object", raw_data=data, path=path)
    label = Path(path).stem if path else "file"
    try:
        if "shape" in data:
            model = EllipsoidFile(**data)
            return Ellipsoid(shape=model.shape, center=model.center, label=label)
        model = PolytopeFile(**data)
        return build_polytope(model.vertices, label=label)
    except pydantic.ValidationError as e:
        raise BodyParseError(f"Parsing failed: {e}", raw_data=data, path=path) from e


def load_body(path: str | Path) -> Body:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise BodyParseError(f"Reading body failed: {e}", path=str(path)) from e
    return parse_body(data, path=str(path))
