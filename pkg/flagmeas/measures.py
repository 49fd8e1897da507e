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
from functools import cached_property, partial
from math import comb
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, TypeVar

import numpy as np

from .bodies import (
    Body,
    BoundaryBatch,
    Ellipsoid,
    Face,
    Polytope,
    ellipsoid_boundary_batch,
    normal_cone_mask,
    sample_normal_directions,
)
from .constants import DEFAULT_SEED
from .enums import SmoothForm
from .exceptions import InvalidArgument
from .grassmann import (
    RngStream,
    ball_constants,
    grassmann_frames_through,
    measure_constant_exact,
    planes_through,
)
from .linalg import (
    batch_sigma,
    batch_sigma_tilde,
    batch_squared_cosine,
    complement_frames,
    mixed_discriminant,
    oriented_complement,
)
from .models import EvalResult, MeasureSpec, MonteCarloConfig
from .testfunctions import TestFunction

__all__ = (
    "FlagKernel",
    "SigmaKernel",
    "ExceptionalKernel",
    "HindererKernel",
    "ComplementSigmaKernel",
    "ComplementExceptionalKernel",
    "kernel_for",
    "eval_polytope",
    "eval_smooth",
    "evaluate",
    "classical_area_measure",
    "hinderer_measure",
    "evaluate_polytope_family",
    "evaluate_smooth_family",
    "smooth_form_discrepancy",
)

_log = logging.getLogger(__name__)

T = TypeVar("T")


class FaceDraws:
    """Flags (v, E) drawn over one face: v in its normal cone, E a plane through v."""

    def __init__(self, face_frame: np.ndarray, directions: np.ndarray, planes: np.ndarray) -> None:
        self.directions = directions
        self.planes = planes
        self.face_frames = np.broadcast_to(face_frame, (len(directions),) + face_frame.shape)
        self._sigmas: Dict[Tuple[str, int], np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.directions)

    @cached_property
    def complements(self) -> np.ndarray:
        return complement_frames(self.planes)

    @cached_property
    def w_frames(self) -> np.ndarray:
        """Frames of W = v^perp, positively oriented after v."""
        return oriented_complement(self.directions)

    def sigmas(self, which: str, m: int) -> np.ndarray:
        key = (which, m)
        if key not in self._sigmas:
            planes = self.complements if which == "perp" else self.planes[:, :, 1:]
            self._sigmas[key] = batch_sigma(planes, self.face_frames, m)
        return self._sigmas[key]

    def in_w(self, frames: np.ndarray) -> np.ndarray:
        return np.swapaxes(self.w_frames, 1, 2) @ frames


class BoundaryDraws:
    """Flags (nu(x), E) over boundary samples, with projections in tangent coordinates."""

    def __init__(self, batch: BoundaryBatch, planes: np.ndarray) -> None:
        self.batch = batch
        self.planes = planes

    def __len__(self) -> int:
        return len(self.batch)

    @cached_property
    def complements(self) -> np.ndarray:
        return complement_frames(self.planes)

    @cached_property
    def proj_plane(self) -> np.ndarray:
        """Projection onto E intersected with the tangent space."""
        coords = np.swapaxes(self.batch.tangent_frames, 1, 2) @ self.planes
        return coords @ np.swapaxes(coords, 1, 2)

    @cached_property
    def proj_perp(self) -> np.ndarray:
        return np.eye(self.proj_plane.shape[-1]) - self.proj_plane


class FlagKernel:
    """
    Integrand of one flag area measure on F(n, p+1).

    ``on_face`` evaluates the polytope kernel at draws over a k-face and
    ``on_boundary`` the smooth-body kernel at boundary draws; both exclude the
    test function, the area weight and ``coefficient``.
    """

    def __init__(self, n: int, k: int, p: int, coefficient: Fraction | float, label: str) -> None:
        self.n = n
        self.k = k
        self.p = p
        self.coefficient = coefficient
        self.label = label

    def on_face(self, draws: FaceDraws) -> np.ndarray:
        raise InvalidArgument(f"{self.label} has no polytope form", "kernel", self.label)

    def on_boundary(self, draws: BoundaryDraws, form: SmoothForm = SmoothForm.AUTO) -> np.ndarray:
        raise InvalidArgument(f"{self.label} has no smooth-body form", "kernel", self.label)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class SigmaKernel(FlagKernel):
    """sigma_i(E^perp, F) on polytopes; the mixed-discriminant sum on smooth bodies."""

    def __init__(self, spec: MeasureSpec) -> None:
        super().__init__(spec.n, spec.k, spec.p, measure_constant_exact(spec), spec.label)
        self.i = spec.i
        self.m = spec.m

    def on_face(self, draws):
        return draws.sigmas("perp", self.m)[:, self.i]

    def resolve_form(self, form: SmoothForm) -> SmoothForm:
        if form is SmoothForm.AUTO:
            return SmoothForm.SIMPLIFIED if self.k <= self.p else SmoothForm.GENERAL
        if form is SmoothForm.SIMPLIFIED and self.k > self.p:
            raise InvalidArgument("The simplified smooth form needs k <= p", "form", str(form))
        return form

    def on_boundary(self, draws, form=SmoothForm.AUTO):
        n, k, p, i = self.n, self.k, self.p, self.i
        shape_ops = draws.batch.shape_operators
        if self.resolve_form(form) is SmoothForm.SIMPLIFIED:
            identity = np.broadcast_to(np.eye(n - 1), shape_ops.shape)
            value = comb(k, i) * mixed_discriminant(
                [shape_ops, identity, draws.proj_perp], [n - k - 1, k - i, i]
            )
            return comb(n - 1, k) * value

        low = min(k, p)
        value = np.zeros(len(draws))
        for a in range(low - self.m, low - i + 1):
            weight = comb(low - a, i) * comb(k, a)
            value = value + weight * mixed_discriminant(
                [shape_ops, draws.proj_plane, draws.proj_perp], [n - k - 1, a, k - a]
            )
        return comb(n - 1, k) * value


class ExceptionalKernel(FlagKernel):
    """
    sigma_tilde(E^perp, F) in W = v^perp on polytopes, det(Pi_{E^perp} S) on smooth bodies.

    Both use the orientation R v + (E cap v^perp) + E^perp of R^n. With the principal
    directions of an edge-like boundary the determinant equals sigma_tilde(E^perp, F)
    itself, so the smooth kernel carries no extra (-1)^{(n-1)/2}.
    """

    def __init__(self, spec: MeasureSpec) -> None:
        if not spec.is_exceptional:
            raise InvalidArgument("Expected an exceptional measure", "variant", str(spec.variant))
        super().__init__(spec.n, spec.k, spec.p, 1, spec.label)

    def on_face(self, draws):
        return batch_sigma_tilde(draws.in_w(draws.complements), draws.in_w(draws.face_frames))

    def on_boundary(self, draws, form=SmoothForm.AUTO):
        normals = draws.batch.normals[:, :, None]
        inside = draws.planes[:, :, 1:]
        across = draws.complements
        orientation = np.sign(np.linalg.det(np.concatenate([normals, inside, across], axis=2)))
        frames = draws.batch.tangent_frames
        ambient_shape = frames @ draws.batch.shape_operators @ np.swapaxes(frames, 1, 2)
        block = np.swapaxes(across, 1, 2) @ ambient_shape @ inside
        return orientation * np.linalg.det(block)


class HindererKernel(FlagKernel):
    """cos^2(E^perp, F) with the prefactor C(n-p-1, k)^-1 omega_{n-p} / omega_n."""

    def __init__(self, n: int, k: int, p: int) -> None:
        if not 0 <= p <= n - 1 or not 0 <= k <= n - p - 1:
            raise InvalidArgument("Hinderer measures need 0 <= k <= n-p-1", "k", k)
        prefactor = ball_constants(n - p)[1] / ball_constants(n)[1] / comb(n - p - 1, k)
        super().__init__(n, k, p, prefactor, f"S_{k}^({p}) hinderer n={n}")

    def on_face(self, draws):
        return batch_squared_cosine(draws.face_frames, draws.complements)


class ComplementSigmaKernel(FlagKernel):
    """
    sigma_j(E cap v^perp, F): the measure S_k^{(n-1-p), j} pulled back along
    (v, E) -> (v, Rv + E^perp).
    """

    def __init__(self, n: int, k: int, p: int, j: int) -> None:
        mirrored = MeasureSpec.sigma(n, k, n - 1 - p, j)
        super().__init__(n, k, p, measure_constant_exact(mirrored), f"pullback {mirrored.label}")
        self.j = j
        self.m = mirrored.m

    def on_face(self, draws):
        return draws.sigmas("inside", self.m)[:, self.j]


class ComplementExceptionalKernel(FlagKernel):
    """sigma_tilde(E cap v^perp, F), the pulled-back exceptional measure."""

    def __init__(self, n: int) -> None:
        spec = MeasureSpec.exceptional(n)
        super().__init__(n, spec.k, spec.p, 1, f"pullback {spec.label}")

    def on_face(self, draws):
        return batch_sigma_tilde(draws.in_w(draws.planes[:, :, 1:]), draws.in_w(draws.face_frames))


def kernel_for(spec: MeasureSpec) -> FlagKernel:
    return ExceptionalKernel(spec) if spec.is_exceptional else SigmaKernel(spec)


class Contribution(NamedTuple):
    """Per-face estimates and variances for each kernel of a family."""

    estimates: np.ndarray
    variances: np.ndarray
    samples: int

    @staticmethod
    def merge(a: "Contribution", b: "Contribution") -> "Contribution":
        return Contribution(
            a.estimates + b.estimates, a.variances + b.variances, max(a.samples, b.samples)
        )


class Moments(NamedTuple):
    """Count, mean and summed squared deviations of a sample block."""

    count: int
    means: np.ndarray
    squares: np.ndarray

    @staticmethod
    def merge(a: "Moments", b: "Moments") -> "Moments":
        total = a.count + b.count
        delta = b.means - a.means
        means = a.means + delta * (b.count / total)
        squares = a.squares + b.squares + delta**2 * (a.count * b.count / total)
        return Moments(total, means, squares)


def tree_reduce(items: Sequence[T], merge: Callable[[T, T], T]) -> T:
    """Pairwise reduction in a fixed order, independent of how items were computed."""
    if not items:
        raise InvalidArgument("Nothing to reduce", "items")
    level = list(items)
    while len(level) > 1:
        paired = [merge(level[j], level[j + 1]) for j in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            paired.append(level[-1])
        level = paired
    return level[0]


class EvaluationPlan:
    """
    Independent jobs of one evaluation plus the reduction that finishes it.

    Jobs may run in any order or concurrently; ``finish`` reduces their results
    in job order so the outcome depends only on the seed and the job split.
    """

    def __init__(
        self, jobs: List[Callable[[], T]], merge: Callable[[T, T], T], smooth: bool
    ) -> None:
        self.jobs = jobs
        self.merge = merge
        self.smooth = smooth

    def run(self) -> List[Tuple[float, float, int]]:
        return self.finish([job() for job in self.jobs])

    def finish(self, results: Sequence[T]) -> List[Tuple[float, float, int]]:
        if not results:
            return []
        total = tree_reduce(results, self.merge)
        if self.smooth:
            count = total.count
            if count > 1:
                variance = total.squares / (count - 1) / count
            else:
                variance = np.zeros_like(total.squares)
            return [(float(mu), float(np.sqrt(v)), count) for mu, v in zip(total.means, variance)]
        return [
            (float(est), float(np.sqrt(var)), total.samples)
            for est, var in zip(total.estimates, total.variances)
        ]


def _check_family(kernels: Sequence[FlagKernel], n: int) -> Tuple[int, int]:
    if not kernels:
        raise InvalidArgument("At least one kernel is required", "kernels")
    shape = {(kern.n, kern.k, kern.p) for kern in kernels}
    if len(shape) != 1:
        raise InvalidArgument("Kernels of a family must share (n, k, p)", "kernels", sorted(shape))
    family_n, k, p = shape.pop()
    if family_n != n:
        raise InvalidArgument("Measure and body dimensions differ", "n", (family_n, n))
    return k, p


def _face_job(
    P: Polytope,
    face: Face,
    kernels: Sequence[FlagKernel],
    f: TestFunction,
    samples: int,
    stream: RngStream,
) -> Contribution:
    n, p = P.dim, kernels[0].p
    weights = np.array([float(kern.coefficient) for kern in kernels]) * face.volume
    frame = face.direction.frame

    if face.dim == n - 1:
        normal = P.facet_normal(face)[None, :]
        if p in (0, n - 1) or not f.depends_on_plane:
            planes = planes_through(normal, np.eye(n - 1)[None, :, :p])
            draws = FaceDraws(frame, normal, planes)
            values = np.array([kern.on_face(draws)[0] for kern in kernels]) * f(normal, planes)[0]
            return Contribution(weights * values, np.zeros(len(kernels)), 0)
        directions = np.repeat(normal, samples, axis=0)
        mask = np.ones(samples, dtype=bool)
        scale = weights
    else:
        directions = sample_normal_directions(face, stream.child(0).generator(), samples)
        mask = normal_cone_mask(P, face, directions)
        scale = weights * ball_constants(n - face.dim)[1]
    coefficients = stream.child(1).generator().standard_normal((samples, n - 1, p))

    values = np.zeros((len(kernels), samples))
    accepted = np.flatnonzero(mask)
    if accepted.size:
        chosen = directions[accepted]
        planes = planes_through(chosen, coefficients[accepted])
        draws = FaceDraws(frame, chosen, planes)
        integrand = f(chosen, planes)
        for row, kern in enumerate(kernels):
            values[row, accepted] = kern.on_face(draws) * integrand
    variances = values.var(axis=1, ddof=1) / samples if samples > 1 else np.zeros(len(kernels))
    _log.debug(f"Face {face.vertex_ids}: {accepted.size}/{samples} directions in the normal cone")
    return Contribution(scale * values.mean(axis=1), scale**2 * variances, samples)


def plan_polytope(
    P: Polytope,
    kernels: Sequence[FlagKernel],
    f: TestFunction,
    mc: MonteCarloConfig,
    rng: RngStream,
) -> EvaluationPlan:
    """One job per k-face; face j draws from ``rng.child(j)``."""
    k, _ = _check_family(kernels, P.dim)
    f.check_dim(P.dim)
    jobs = [
        partial(_face_job, P, face, tuple(kernels), f, mc.samples, rng.child(j))
        for j, face in enumerate(P.faces(k))
    ]
    return EvaluationPlan(jobs, Contribution.merge, smooth=False)


def _block_job(
    K: Ellipsoid,
    kernels: Sequence[FlagKernel],
    f: TestFunction,
    count: int,
    stream: RngStream,
    form: SmoothForm,
) -> Moments:
    gen = stream.generator()
    batch = ellipsoid_boundary_batch(K, gen, count)
    planes = grassmann_frames_through(batch.normals, kernels[0].p + 1, gen)
    draws = BoundaryDraws(batch, planes)
    integrand = f(batch.normals, planes) * batch.area_weights
    values = np.stack(
        [float(kern.coefficient) * kern.on_boundary(draws, form) * integrand for kern in kernels]
    )
    means = values.mean(axis=1)
    return Moments(count, means, ((values - means[:, None]) ** 2).sum(axis=1))


def plan_smooth(
    K: Ellipsoid,
    kernels: Sequence[FlagKernel],
    f: TestFunction,
    mc: MonteCarloConfig,
    rng: RngStream,
    form: SmoothForm = SmoothForm.AUTO,
) -> EvaluationPlan:
    """One job per block of ``mc.block_size`` draws; block b draws from ``rng.child(b)``."""
    _check_family(kernels, K.dim)
    f.check_dim(K.dim)
    blocks = -(-mc.samples // mc.block_size)
    jobs = [
        partial(
            _block_job,
            K,
            tuple(kernels),
            f,
            min(mc.block_size, mc.samples - b * mc.block_size),
            rng.child(b),
            form,
        )
        for b in range(blocks)
    ]
    return EvaluationPlan(jobs, Moments.merge, smooth=True)


def plan_evaluation(
    spec: MeasureSpec,
    body: Body,
    f: TestFunction,
    mc: MonteCarloConfig,
    rng: RngStream,
    form: SmoothForm = SmoothForm.AUTO,
) -> EvaluationPlan:
    if spec.n != body.dim:
        raise InvalidArgument("Measure and body dimensions differ", "n", (spec.n, body.dim))
    kernel = kernel_for(spec)
    if isinstance(body, Ellipsoid):
        return plan_smooth(body, [kernel], f, mc, rng, form)
    return plan_polytope(body, [kernel], f, mc, rng)


def to_result(
    spec: MeasureSpec, body: Body, outcome: Sequence[Tuple[float, float, int]], rng: RngStream
) -> EvalResult:
    if not outcome:
        outcome = [(0.0, 0.0, 0)]
    estimate, error, samples = outcome[0]
    return EvalResult(
        spec=spec,
        body=body.label,
        estimate=estimate,
        std_error=error,
        samples=samples,
        seed=rng.seed,
    )


def _default_stream(rng: Optional[RngStream]) -> RngStream:
    return RngStream(seed=DEFAULT_SEED) if rng is None else rng


def eval_polytope(
    spec: MeasureSpec,
    P: Polytope,
    f: TestFunction,
    mc: Optional[MonteCarloConfig] = None,
    rng: Optional[RngStream] = None,
) -> EvalResult:
    """
    Monte Carlo estimate of the integral of f against a flag area measure of a polytope.

    Each k-face contributes c * vol_k(F) times a nested integral over its normal cone
    and the planes through each normal; facets without a random plane part are exact.

    Raises:
        InvalidArgument: Measure and polytope dimensions differ.
    """
    if not isinstance(P, Polytope):
        raise InvalidArgument("Expected a polytope", "body", type(P).__name__)
    mc, rng = mc or MonteCarloConfig(), _default_stream(rng)
    outcome = plan_evaluation(spec, P, f, mc, rng).run()
    result = to_result(spec, P, outcome, rng)
    _log.info(f"{spec.label} on {P.label}: {result.estimate:.6g} +- {result.std_error:.2g}")
    return result


def eval_smooth(
    spec: MeasureSpec,
    K: Ellipsoid,
    f: TestFunction,
    mc: Optional[MonteCarloConfig] = None,
    rng: Optional[RngStream] = None,
    form: SmoothForm = SmoothForm.AUTO,
) -> EvalResult:
    """
    Monte Carlo estimate of the integral of f against a flag area measure of an ellipsoid.

    Raises:
        InvalidArgument: Dimension mismatch, or the simplified form requested with k > p.
    """
    if not isinstance(K, Ellipsoid):
        raise InvalidArgument("Expected an ellipsoid", "body", type(K).__name__)
    mc, rng = mc or MonteCarloConfig(), _default_stream(rng)
    outcome = plan_evaluation(spec, K, f, mc, rng, form).run()
    result = to_result(spec, K, outcome, rng)
    _log.info(f"{spec.label} on {K.label}: {result.estimate:.6g} +- {result.std_error:.2g}")
    return result


def evaluate(
    spec: MeasureSpec,
    body: Body,
    f: TestFunction,
    mc: Optional[MonteCarloConfig] = None,
    rng: Optional[RngStream] = None,
) -> EvalResult:
    if isinstance(body, Ellipsoid):
        return eval_smooth(spec, body, f, mc, rng)
    return eval_polytope(spec, body, f, mc, rng)


def classical_area_measure(
    body: Body,
    k: int,
    g: TestFunction,
    mc: Optional[MonteCarloConfig] = None,
    rng: Optional[RngStream] = None,
) -> EvalResult:
    """
    Classical area measure S_k applied to a function of the normal only.

    Evaluated as the p = 0, i = 0 flag measure, whose kernel is identically 1.
    """
    if g.depends_on_plane:
        raise InvalidArgument("Area measures take functions of the normal only", "g")
    return evaluate(MeasureSpec.sigma(body.dim, k, 0, 0), body, g, mc, rng)


def hinderer_measure(
    P: Polytope,
    k: int,
    p: int,
    f: TestFunction,
    mc: Optional[MonteCarloConfig] = None,
    rng: Optional[RngStream] = None,
) -> EvalResult:
    """
    Hinderer flag area measure S_k^{(p)} of a polytope with kernel cos^2(E^perp, F).

    Flags (v, E cap v^perp) are identified with (v, E), so f is evaluated on the
    (p+1)-plane E through v. The result echoes the spec with i = m.

    Raises:
        InvalidArgument: k > n - p - 1.
    """
    kernel = HindererKernel(P.dim, k, p)
    mc, rng = mc or MonteCarloConfig(), _default_stream(rng)
    spec = MeasureSpec.sigma(P.dim, k, p, max(0, min(k, P.dim - k - 1, p, P.dim - p - 1)))
    outcome = plan_polytope(P, [kernel], f, mc, rng).run()
    return to_result(spec, P, outcome, rng)


def evaluate_polytope_family(
    P: Polytope,
    kernels: Sequence[FlagKernel],
    f: TestFunction,
    mc: Optional[MonteCarloConfig] = None,
    rng: Optional[RngStream] = None,
) -> List[Tuple[float, float]]:
    """(estimate, std_error) for each kernel, all evaluated on one shared set of flag draws."""
    plan = plan_polytope(P, kernels, f, mc or MonteCarloConfig(), _default_stream(rng))
    return [(est, err) for est, err, _ in plan.run()]


def evaluate_smooth_family(
    K: Ellipsoid,
    kernels: Sequence[FlagKernel],
    f: TestFunction,
    mc: Optional[MonteCarloConfig] = None,
    rng: Optional[RngStream] = None,
    form: SmoothForm = SmoothForm.AUTO,
) -> List[Tuple[float, float]]:
    plan = plan_smooth(K, kernels, f, mc or MonteCarloConfig(), _default_stream(rng), form)
    return [(est, err) for est, err, _ in plan.run()]


def smooth_form_discrepancy(spec: MeasureSpec, K: Ellipsoid, samples: int, rng: RngStream) -> float:
    """Largest per-sample gap between the general and simplified smooth kernels (k <= p)."""
    kernel = SigmaKernel(spec)
    if spec.k > spec.p:
        raise InvalidArgument("The simplified smooth form needs k <= p", "k", spec.k)
    gen = rng.generator()
    batch = ellipsoid_boundary_batch(K, gen, samples)
    draws = BoundaryDraws(batch, grassmann_frames_through(batch.normals, spec.p + 1, gen))
    general = kernel.on_boundary(draws, SmoothForm.GENERAL)
    simplified = kernel.on_boundary(draws, SmoothForm.SIMPLIFIED)
    return float(np.max(np.abs(general - simplified)))
