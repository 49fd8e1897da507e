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

import logging
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import gamma

from .constants import UNIT_TOL
from .exceptions import InvalidArgument
from .linalg import Subspace, oriented_complement
from .models import MeasureSpec

__all__ = (
    "RngStream",
    "sample_sphere",
    "sample_grassmann",
    "sample_grassmann_through",
    "aomoto_expectation",
    "aomoto_expectation_exact",
    "aomoto_product_moment",
    "measure_constant",
    "measure_constant_exact",
    "ball_constants",
    "james_log_density",
)

_log = logging.getLogger(__name__)

RandomSource = Union["RngStream", np.random.Generator]


class RngStream(BaseModel):
    """
    A reproducible random substream identified by ``(seed, stream_id)``.

    Substreams derive from a numpy ``SeedSequence`` spawn key, so distinct
    ``(stream_id, lineage)`` pairs are statistically independent and identical
    pairs reproduce identical draws bit for bit.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, lt=2**64)
    stream_id: int = Field(default=0, ge=0, lt=2**64)
    lineage: Tuple[int, ...] = ()

    def child(self, index: int) -> "RngStream":
        """Independent substream number ``index`` of this stream."""
        if index < 0:
            raise InvalidArgument("Substream index must be non-negative", "index", index)
        return RngStream(seed=self.seed, stream_id=self.stream_id, lineage=(*self.lineage, index))

    def spawn(self, count: int) -> list["RngStream"]:
        return [self.child(j) for j in range(count)]

    def generator(self) -> np.random.Generator:
        key = (self.stream_id, *self.lineage)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=key)
        return np.random.default_rng(sequence)


def as_generator(rng: RandomSource) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    return rng


def sample_sphere(n: int, rng: RandomSource, count: Optional[int] = None) -> np.ndarray:
    """
    Uniform draws on S^{n-1} by normalizing standard Gaussian vectors.

    A ``RngStream`` starts a fresh generator on every call; pass a
    ``numpy.random.Generator`` to continue one sequence across calls.

    Returns:
        np.ndarray: shape ``(n,)`` or ``(count, n)``.
    """
    if n < 1:
        raise InvalidArgument("Sphere dimension must be positive", "n", n)
    gen = as_generator(rng)
    draws = gen.standard_normal((1 if count is None else count, n))
    draws /= np.linalg.norm(draws, axis=1, keepdims=True)
    return draws[0] if count is None else draws


def grassmann_frames(n: int, p: int, gen: np.random.Generator, count: int) -> np.ndarray:
    """Stacked frames (count, n, p) of invariantly distributed p-planes."""
    if not 0 <= p <= n:
        raise InvalidArgument("Plane dimension must lie in 0..n", "p", p)
    if p == 0:
        return np.zeros((count, n, 0))
    q, _ = np.linalg.qr(gen.standard_normal((count, n, p)))
    return q


def sample_grassmann(n: int, p: int, rng: RandomSource) -> Subspace:
    """Draw a p-plane from the invariant probability measure on Gr_p(R^n)."""
    if n < 1:
        raise InvalidArgument("Ambient dimension must be positive", "n", n)
    if not 0 <= p <= n:
        raise InvalidArgument("Plane dimension must lie in 0..n", "p", p)
    return Subspace(ambient_dim=n, frame=grassmann_frames(n, p, as_generator(rng), 1)[0])


def grassmann_frames_through(vectors: np.ndarray, d: int, gen: np.random.Generator) -> np.ndarray:
    """
    Stacked frames (N, n, d) of d-planes through the given unit vectors.

    Each plane is v plus an invariantly distributed (d-1)-plane of v^perp; v is
    the first column of its frame.
    """
    vectors = np.asarray(vectors, dtype=float)
    count, n = vectors.shape
    if not 1 <= d <= n:
        raise InvalidArgument("Plane dimension must lie in 1..n", "d", d)
    return planes_through(vectors, gen.standard_normal((count, n - 1, d - 1)))


def planes_through(vectors: np.ndarray, coefficients: np.ndarray) -> np.ndarray:
    """
    Frames (N, n, d) spanned by v and the v^perp directions given by
    Gaussian coefficients (N, n-1, d-1).
    """
    head = vectors[:, :, None]
    if coefficients.shape[2] == 0:
        return head.copy()
    q, _ = np.linalg.qr(coefficients)
    return np.concatenate([head, oriented_complement(vectors) @ q], axis=2)


def sample_grassmann_through(
    v: Sequence[float] | np.ndarray, d: int, rng: RandomSource
) -> Subspace:
    """
    Draw a d-plane containing ``v``, invariant under the stabilizer of ``v``.

    Raises:
        InvalidArgument: ``v`` is not a unit vector or ``d`` is outside 1..n.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise InvalidArgument("Expected a unit vector", "v", v.tolist())
    frame = grassmann_frames_through(v[None, :], d, as_generator(rng))[0]
    return Subspace(ambient_dim=v.shape[0], frame=frame)


def _jordan_count(nprime: int, p: int, k: int) -> int:
    if nprime < 1 or not 0 <= p <= nprime or not 0 <= k <= nprime:
        raise InvalidArgument("Dimensions must satisfy 0 <= p, k <= n'", "nprime", (nprime, p, k))
    return min(k, nprime - k, p, nprime - p)


def aomoto_expectation_exact(nprime: int, p: int, k: int, i: int) -> Fraction:
    """E[sigma_i(E, F)] for independent invariant E in Gr_p and F in Gr_k of R^{n'}."""
    m = _jordan_count(nprime, p, k)
    if not 0 <= i <= m:
        raise InvalidArgument("Index i must lie in 0..m", "i", i)
    return Fraction(comb(m, i) * comb(abs(p - k) + m, i), comb(nprime, i))


def aomoto_expectation(nprime: int, p: int, k: int, i: int) -> float:
    return float(aomoto_expectation_exact(nprime, p, k, i))


def selberg_parameters(nprime: int, p: int, k: int) -> Tuple[Fraction, Fraction]:
    """Exponents (a, b) of x^a (1-x)^b in the joint density of squared Jordan cosines."""
    _jordan_count(nprime, p, k)
    return Fraction(abs(p - k) - 1, 2), Fraction(abs(nprime - p - k) - 1, 2)


def aomoto_product_moment(
    m: int,
    t: Fraction | float,
    lam1: Fraction | float,
    lam2: Fraction | float,
    lam: Fraction | float = 1,
) -> Fraction | float:
    """
    Ratio of Selberg-type integrals for the integrand prod_j (x_j - t).

    The weight is prod_j x_j^lam1 (1 - x_j)^lam2 times |Vandermonde|^lam on [0, 1]^m.
    Exact when every argument is an int or ``Fraction``.
    """
    if m < 0:
        raise InvalidArgument("Number of variables must be non-negative", "m", m)
    total: Fraction | float = 0
    for r in range(m + 1):
        moment: Fraction | float = comb(m, r)
        for j in range(1, r + 1):
            numerator = lam1 + 1 + Fraction(m - j, 2) * lam
            denominator = lam1 + lam2 + 2 + lam * (m - Fraction(j, 2) - Fraction(1, 2))
            moment = moment * numerator / denominator
        total = total + (-t) ** (m - r) * moment
    return total


def measure_constant_exact(spec: MeasureSpec) -> Fraction:
    """c_{n,k,p,i} = C(n-1,i) / (C(n-1,k) C(m,i) C(|k-(n-1-p)|+m, i))."""
    if spec.is_exceptional:
        raise InvalidArgument(
            "The exceptional measure has no sigma constant", "variant", str(spec.variant)
        )
    n, k, p, i, m = spec.n, spec.k, spec.p, spec.i, spec.m
    return Fraction(
        comb(n - 1, i),
        comb(n - 1, k) * comb(m, i) * comb(abs(k - (n - 1 - p)) + m, i),
    )


def measure_constant(spec: MeasureSpec) -> float:
    return float(measure_constant_exact(spec))


def ball_constants(n: int) -> Tuple[float, float]:
    """(kappa_n, omega_n): volume of the unit n-ball and area of the unit (n-1)-sphere."""
    if n < 0:
        raise InvalidArgument("Dimension must be non-negative", "n", n)
    kappa = float(np.pi ** (n / 2) / gamma(1 + n / 2))
    return kappa, n * kappa


def james_log_density(x: Iterable[float], nprime: int, p: int, k: int) -> float:
    """
    Unnormalized log density of the squared Jordan cosines of invariant random planes.

    Returns ``-inf`` where the Vandermonde factor vanishes and where a positive
    exponent meets a zero factor. A negative exponent at a zero factor (x_j = 0 with
    |p - k| = 0, or x_j = 1 with n' = p + k) returns ``+inf``: the density is
    unbounded there but stays integrable.
    """
    x = np.asarray(list(x), dtype=float)
    m = _jordan_count(nprime, p, k)
    if x.shape != (m,):
        raise InvalidArgument("Expected one value per Jordan angle", "x", x.tolist())
    if np.any((x < 0.0) | (x > 1.0)):
        raise InvalidArgument("Squared cosines must lie in [0, 1]", "x", x.tolist())

    gaps = np.abs(x[:, None] - x[None, :])[np.triu_indices(m, 1)]
    if np.any(gaps == 0.0):
        return float("-inf")
    a, b = selberg_parameters(nprime, p, k)
    total = float(np.sum(np.log(gaps)))
    with np.errstate(divide="ignore"):
        if a:
            total += float(a) * float(np.sum(np.log(x)))
        if b:
            total += float(b) * float(np.sum(np.log1p(-x)))
    return total
