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
import logging
from math import comb, factorial, prod
from typing import Any, List, Optional, Sequence

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, model_validator

from .constants import FORCED_ONE_TOL, ORTHONORMAL_TOL, RANK_TOL
from .exceptions import ConsistencyError, InvalidArgument

__all__ = (
    "Subspace",
    "OrientedSubspace",
    "AngleSpectrum",
    "orthonormal_frame",
    "principal_angles",
    "elementary_symmetric",
    "sigma_elem",
    "squared_cosine",
    "sigma_tilde",
    "mixed_discriminant",
)

_log = logging.getLogger(__name__)


class Subspace(BaseModel):
    """A linear subspace of R^n' carried by an orthonormal frame (n' x d)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    ambient_dim: int
    frame: np.ndarray

    @model_validator(mode="before")
    @classmethod
    def coerce_frame(cls, data: Any) -> Any:
        if isinstance(data, dict) and "frame" in data:
            ambient = data.get("ambient_dim")
            frame = np.array(data["frame"], dtype=float)
            if frame.size == 0 and ambient is not None:
                frame = frame.reshape(int(ambient), 0)
            if frame.ndim == 1:
                frame = frame[:, None]
            if ambient is None:
                ambient = frame.shape[0]
            frame.setflags(write=False)
            return {**data, "frame": frame, "ambient_dim": ambient}
        return data

    @model_validator(mode="after")
    def check_frame(self) -> "Subspace":
        if self.ambient_dim < 1:
            raise InvalidArgument(
                "Ambient dimension must be positive", "ambient_dim", self.ambient_dim
            )
        if self.frame.ndim != 2 or self.frame.shape[0] != self.ambient_dim:
            raise InvalidArgument("Frame must be an n' x d matrix", "frame", self.frame.shape)
        if self.frame.shape[1] > self.ambient_dim:
            raise InvalidArgument(
                "Subspace dimension exceeds ambient dimension", "frame", self.frame.shape
            )
        gram = self.frame.T @ self.frame
        if not np.allclose(gram, np.eye(self.dim), rtol=0.0, atol=ORTHONORMAL_TOL):
            raise InvalidArgument("Frame columns are not orthonormal", "frame")
        return self

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    @property
    def projector(self) -> np.ndarray:
        return self.frame @ self.frame.T

    def complement(self) -> "Subspace":
        """Orthogonal complement in the ambient space."""
        if self.dim == 0:
            return Subspace(ambient_dim=self.ambient_dim, frame=np.eye(self.ambient_dim))
        return Subspace(
            ambient_dim=self.ambient_dim,
            frame=scipy.linalg.null_space(self.frame.T, rcond=RANK_TOL),
        )

    def contains(self, vector: np.ndarray, tol: float = RANK_TOL) -> bool:
        vector = np.asarray(vector, dtype=float)
        residual = np.linalg.norm(self.projector @ vector - vector)
        return bool(residual <= tol * max(1.0, np.linalg.norm(vector)))

    def transformed(self, g: np.ndarray) -> "Subspace":
        return Subspace(ambient_dim=self.ambient_dim, frame=np.asarray(g, dtype=float) @ self.frame)


class OrientedSubspace(BaseModel):
    """A subspace together with an orientation relative to its frame's column order."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    base: Subspace
    orientation: int = 1

    @model_validator(mode="after")
    def check_orientation(self) -> "OrientedSubspace":
        if self.orientation not in (1, -1):
            raise InvalidArgument("Orientation must be +1 or -1", "orientation", self.orientation)
        return self

    @property
    def oriented_frame(self) -> np.ndarray:
        """Frame whose column order is positively oriented."""
        frame = np.array(self.base.frame)
        if self.orientation < 0 and frame.shape[1] > 0:
            frame[:, 0] *= -1.0
        return frame

    def reversed(self) -> "OrientedSubspace":
        return OrientedSubspace(base=self.base, orientation=-self.orientation)


class AngleSpectrum(BaseModel):
    """Jordan angles theta_1 >= ... >= theta_m between two subspaces."""

    m: int
    angles: List[float]
    forced_ones: int

    @property
    def cos_squared(self) -> np.ndarray:
        return np.cos(np.asarray(self.angles, dtype=float)) ** 2


def orthonormal_frame(
    vectors: Sequence[Sequence[float]] | np.ndarray, ambient_dim: Optional[int] = None
) -> Subspace:
    """
    Orthonormal frame of the span of ``vectors``.

    The rank is decided by singular values above ``RANK_TOL`` times the largest one.

    Args:
        vectors: Coordinate vectors of a common dimension, one per row.
        ambient_dim: Ambient dimension; required when ``vectors`` is empty.

    Returns:
        Subspace: Frame spanning the same linear span.

    Raises:
        InvalidArgument: Ambient dimension missing or zero, or mismatched vector lengths.
    """
    rows = np.asarray(vectors, dtype=float)
    if rows.size == 0:
        if not ambient_dim:
            raise InvalidArgument(
                "Ambient dimension is required for an empty input", "ambient_dim", ambient_dim
            )
        return Subspace(ambient_dim=ambient_dim, frame=np.zeros((ambient_dim, 0)))
    if rows.ndim == 1:
        rows = rows[None, :]
    if rows.ndim != 2:
        raise InvalidArgument("Expected a list of vectors", "vectors", rows.shape)
    dim = rows.shape[1]
    if dim == 0 or (ambient_dim is not None and ambient_dim != dim):
        raise InvalidArgument(
            "Vector length does not match the ambient dimension", "ambient_dim", dim
        )
    if not np.all(np.isfinite(rows)):
        raise InvalidArgument("Vectors must be finite", "vectors")

    u, s, _ = np.linalg.svd(rows.T, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return Subspace(ambient_dim=dim, frame=np.zeros((dim, 0)))
    rank = int(np.count_nonzero(s > RANK_TOL * s[0]))
    return Subspace(ambient_dim=dim, frame=u[:, :rank])


def affine_dimension(points: np.ndarray) -> int:
    points = np.asarray(points, dtype=float)
    if len(points) <= 1:
        return 0
    return orthonormal_frame(points[1:] - points[0], ambient_dim=points.shape[1]).dim


def principal_angles(E: Subspace, F: Subspace) -> AngleSpectrum:
    """
    Jordan angles between E and F from the singular values of the cross-Gram matrix.

    The top min{d_E, d_F} - m singular values are forced to equal 1; the remaining
    m are returned as angles sorted non-increasingly.

    Raises:
        InvalidArgument: Mismatched ambient dimensions.
        ConsistencyError: A forced singular value deviates from 1.
    """
    if E.ambient_dim != F.ambient_dim:
        raise InvalidArgument(
            "Subspaces live in different ambient spaces",
            "ambient_dim",
            (E.ambient_dim, F.ambient_dim),
        )
    n = E.ambient_dim
    m = min(E.dim, n - E.dim, F.dim, n - F.dim)
    forced = min(E.dim, F.dim) - m
    if min(E.dim, F.dim) == 0:
        return AngleSpectrum(m=0, angles=[], forced_ones=0)

    small, large = (E.frame, F.frame) if E.dim <= F.dim else (F.frame, E.frame)
    s = np.clip(np.linalg.svd(small.T @ large, compute_uv=False), 0.0, 1.0)
    if forced and np.any(np.abs(s[:forced] - 1.0) > FORCED_ONE_TOL):
        raise ConsistencyError(
            "Forced singular value is not 1",
            observed=s[:forced].tolist(),
            expected=1.0,
        )
    # arccos loses half the digits near 0; sines of small angles come from the residual
    residual = small - large @ (large.T @ small)
    sines = np.clip(np.sort(np.linalg.svd(residual, compute_uv=False)), 0.0, 1.0)
    angles = np.where(s**2 >= 0.5, np.arcsin(sines), np.arccos(s))[forced:][::-1]
    return AngleSpectrum(m=m, angles=angles.tolist(), forced_ones=forced)


def elementary_symmetric(x: np.ndarray) -> np.ndarray:
    """
    All elementary symmetric polynomials e_0..e_m of the last axis of ``x``.

    Uses e_i(x_1..x_j) = e_i(x_1..x_{j-1}) + x_j * e_{i-1}(x_1..x_{j-1}).
    """
    x = np.asarray(x, dtype=float)
    m = x.shape[-1]
    e = np.zeros(x.shape[:-1] + (m + 1,))
    e[..., 0] = 1.0
    for j in range(m):
        e[..., 1 : j + 2] = e[..., 1 : j + 2] + x[..., j : j + 1] * e[..., 0 : j + 1]
    return e


def sigma_elem(E: Subspace, F: Subspace, i: int) -> float:
    """sigma_i(E, F): i-th elementary symmetric function of the squared Jordan cosines."""
    spectrum = principal_angles(E, F)
    if not 0 <= i <= spectrum.m:
        raise InvalidArgument("Index i must lie in 0..m", "i", i)
    return float(elementary_symmetric(spectrum.cos_squared)[i])


def squared_cosine(E: Subspace, F: Subspace) -> float:
    """Squared volume of the projection of a unit cube of the smaller space onto the other."""
    if E.ambient_dim != F.ambient_dim:
        raise InvalidArgument("Subspaces live in different ambient spaces", "ambient_dim")
    small, large = (E, F) if E.dim <= F.dim else (F, E)
    cross = small.frame.T @ large.frame
    return float(np.linalg.det(cross @ cross.T))


def sigma_tilde(
    w_orientation: int, E: Subspace | OrientedSubspace, F: Subspace | OrientedSubspace
) -> float:
    """
    det(B_{E,F}) * det(B_{E,F^perp}) for half-dimensional E, F in an oriented R^{2a}.

    F^perp is oriented so that F^perp + F has orientation ``w_orientation``. The value
    does not depend on the orientations of E and F.

    Raises:
        InvalidArgument: Odd ambient dimension, unequal half-dimensions or a bad sign.
    """
    if w_orientation not in (1, -1):
        raise InvalidArgument("Orientation must be +1 or -1", "w_orientation", w_orientation)
    e = E.oriented_frame if isinstance(E, OrientedSubspace) else E.frame
    f = F.oriented_frame if isinstance(F, OrientedSubspace) else F.frame
    n = e.shape[0]
    if n % 2 or n != f.shape[0]:
        raise InvalidArgument("sigma_tilde needs a common even ambient dimension", "ambient_dim", n)
    a = n // 2
    if e.shape[1] != a or f.shape[1] != a:
        raise InvalidArgument(
            "sigma_tilde needs two half-dimensional subspaces", "dim", (e.shape[1], f.shape[1])
        )
    return float(w_orientation * batch_sigma_tilde(e[None], f[None])[0])


def mixed_discriminant(
    matrices: Sequence[np.ndarray], multiplicities: Optional[Sequence[int]] = None
) -> np.ndarray | float:
    """
    Normalized mixed discriminant D(A_1[r_1], ..., A_j[r_j]) with D(A, ..., A) = det A.

    Evaluated by polarization over slot subsets, grouped by multiplicity. Leading axes
    of the matrices broadcast, so a stack of samples is handled in one call.

    Raises:
        InvalidArgument: Non-square or mismatched matrices, or multiplicities not summing
            to the matrix size.
    """
    mats = [np.asarray(a, dtype=float) for a in matrices]
    if not mats:
        raise InvalidArgument("At least one matrix is required", "matrices")
    size = mats[0].shape[-1]
    for a in mats:
        if a.ndim < 2 or a.shape[-1] != size or a.shape[-2] != size:
            raise InvalidArgument("Matrices must be square of a common size", "matrices", a.shape)
    mult = list(multiplicities) if multiplicities is not None else [1] * len(mats)
    if len(mult) != len(mats) or any(r < 0 for r in mult) or sum(mult) != size:
        raise InvalidArgument("Multiplicities must sum to the matrix size", "multiplicities", mult)

    batch_shape = np.broadcast_shapes(*(a.shape[:-2] for a in mats))
    if size == 0:
        return np.ones(batch_shape) if batch_shape else 1.0

    slots = [(a, r) for a, r in zip(mats, mult) if r > 0]
    total = np.zeros(batch_shape)
    for counts in itertools.product(*(range(r + 1) for _, r in slots)):
        used = sum(counts)
        if used == 0:
            continue
        weight = (-1) ** (size - used) * prod(comb(r, c) for (_, r), c in zip(slots, counts))
        combined = sum(c * a for (a, _), c in zip(slots, counts) if c)
        total = total + weight * np.linalg.det(combined)
    total = total / factorial(size)
    return float(total) if not batch_shape else total


# Batched kernels used by the evaluation engines. Frames are stacked along axis 0.


def complement_frames(frames: np.ndarray) -> np.ndarray:
    """Orthonormal frames (N, n, n-d) of the complements of stacked frames (N, n, d)."""
    frames = np.asarray(frames, dtype=float)
    count, n, d = frames.shape
    if d == 0:
        return np.broadcast_to(np.eye(n), (count, n, n)).copy()
    q, _ = np.linalg.qr(frames, mode="complete")
    return q[:, :, d:]


def oriented_complement(vectors: np.ndarray) -> np.ndarray:
    """Frames T (N, n, n-1) of v^perp such that (v, T) is a positive basis of R^n."""
    vectors = np.asarray(vectors, dtype=float)
    t = complement_frames(vectors[:, :, None])
    if t.shape[2] == 0:
        return t
    full = np.concatenate([vectors[:, :, None], t], axis=2)
    negative = np.linalg.det(full) < 0
    t[negative, :, -1] *= -1.0
    return t


def batch_cos_squared(a_frames: np.ndarray, b_frames: np.ndarray, m: int) -> np.ndarray:
    """
    Squared cosines of the m Jordan angles between stacked subspaces.

    The forced singular values equal to 1 are dropped from the top of the spectrum.
    """
    count = a_frames.shape[0]
    rank = min(a_frames.shape[2], b_frames.shape[2])
    if m == 0 or rank == 0:
        return np.zeros((count, 0))
    cross = np.einsum("nij,nik->njk", a_frames, b_frames)
    s = np.clip(np.linalg.svd(cross, compute_uv=False), 0.0, 1.0)
    forced = rank - m
    return s[:, forced : forced + m] ** 2


def batch_sigma(a_frames: np.ndarray, b_frames: np.ndarray, m: int) -> np.ndarray:
    """sigma_0..sigma_m for stacked subspace pairs, shape (N, m+1)."""
    return elementary_symmetric(batch_cos_squared(a_frames, b_frames, m))


def batch_squared_cosine(small: np.ndarray, large: np.ndarray) -> np.ndarray:
    """det of the projected Gram matrix, for frames with dim(small) <= dim(large)."""
    cross = np.einsum("nij,nik->njk", small, large)
    return np.linalg.det(cross @ np.swapaxes(cross, 1, 2))


def batch_sigma_tilde(e: np.ndarray, f: np.ndarray) -> np.ndarray:
    """sigma_tilde for stacked frames (N, 2a, a) in a positively oriented R^{2a}."""
    a = f.shape[2]
    q, _ = np.linalg.qr(f, mode="complete")
    h = q[:, :, a:]
    orientation = np.sign(np.linalg.det(np.concatenate([h, f], axis=2)))
    det_f = np.linalg.det(np.einsum("nij,nik->njk", f, e))
    det_h = np.linalg.det(np.einsum("nij,nik->njk", h, e))
    return orientation * det_f * det_h
