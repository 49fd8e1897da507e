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
import time
from functools import partial
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import special_ortho_group

from .bodies import (
    Body,
    Ellipsoid,
    Polytope,
    build_polytope,
    ellipsoid_boundary_batch,
    standard_body,
    transform_body,
)
from .constants import (
    AOMOTO_MAX_DIM,
    DEFAULT_SEED,
    MATCHED_RATIO_RTOL,
    RANK_DROP,
    RANK_KEEP,
    RANK_MAX_DOUBLINGS,
    RANK_NOISE,
    SCALING_RTOL,
    SE_GATE,
    SMOOTH_SCALING_RTOL,
)
from .enums import BodyKind, EquivarianceMode, FacetMethod, ToleranceRule
from .exceptions import InvalidArgument
from .grassmann import (
    RngStream,
    aomoto_expectation,
    ball_constants,
    grassmann_frames,
    grassmann_frames_through,
    sample_sphere,
)
from .linalg import batch_sigma, batch_squared_cosine, complement_frames, oriented_complement
from .measures import (
    ComplementExceptionalKernel,
    ComplementSigmaKernel,
    ExceptionalKernel,
    FlagKernel,
    SigmaKernel,
    classical_area_measure,
    eval_polytope,
    eval_smooth,
    evaluate,
    evaluate_polytope_family,
    hinderer_measure,
)
from .models import CheckReport, MeasureSpec, MonteCarloConfig, VerificationReport
from .testfunctions import Const, DirPoly, Product, ProjTrace, Sum, TestFunction

__all__ = (
    "check_aomoto",
    "check_marginal",
    "check_equivariance",
    "check_rank_basis",
    "check_hinderer_consistency",
    "check_positivity",
    "check_closed_value",
    "check_convergence",
    "plane_dependent_function",
    "suite_checks",
    "run_suite",
    "SUITES",
)

_log = logging.getLogger(__name__)

Check = Callable[[], CheckReport]


class _Timer:
    def __init__(self) -> None:
        self.started = time.perf_counter()

    @property
    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.started) * 1000.0


def _stream(rng: Optional[RngStream]) -> RngStream:
    return RngStream(seed=DEFAULT_SEED) if rng is None else rng


def _gate(error: float, scale: float = 1.0) -> float:
    """k standard errors, floored at round-off level for exact paths."""
    return max(SE_GATE * error, 1e-12 * max(1.0, abs(scale)))


def _spec_params(spec: MeasureSpec) -> Dict[str, Any]:
    return {"n": spec.n, "k": spec.k, "p": spec.p, "variant": str(spec.variant), "i": spec.i}


def _finish(report: CheckReport) -> CheckReport:
    status = "passed" if report.passed else "FAILED"
    _log.info(f"Check {report.check_id} {report.params} {status} in {report.runtime_ms:.0f} ms")
    return report


def random_unit(n: int, gen: np.random.Generator) -> List[float]:
    return sample_sphere(n, gen).tolist()


def random_symmetric(n: int, gen: np.random.Generator) -> List[List[float]]:
    a = gen.standard_normal((n, n))
    return ((a + a.T) / 2).tolist()


def check_aomoto(
    nprime: int,
    p: int,
    k: int,
    i: int,
    samples: int = 200_000,
    rng: Optional[RngStream] = None,
) -> CheckReport:
    """Monte Carlo mean of sigma_i over invariant plane pairs against its closed form."""
    timer, rng = _Timer(), _stream(rng)
    expected = aomoto_expectation(nprime, p, k, i)
    m = min(k, nprime - k, p, nprime - p)
    gen = rng.generator()
    planes = grassmann_frames(nprime, p, gen, samples)
    others = grassmann_frames(nprime, k, gen, samples)
    values = batch_sigma(planes, others, m)[:, i]
    observed = float(values.mean())
    error = float(values.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    tolerance = _gate(error, expected)
    return _finish(
        CheckReport(
            check_id="aomoto",
            params={"nprime": nprime, "p": p, "k": k, "i": i},
            observed=[observed],
            expected=[expected],
            tolerance_rule=ToleranceRule.STD_ERROR,
            tolerance=tolerance,
            passed=abs(observed - expected) <= tolerance,
            samples=samples,
            seed=rng.seed,
            runtime_ms=timer.elapsed_ms,
        )
    )


def check_marginal(
    spec: MeasureSpec,
    body: Body,
    g: Optional[TestFunction] = None,
    samples: int = 20_000,
    rng: Optional[RngStream] = None,
) -> CheckReport:
    """Pushing forward to the normal gives the classical area measure, or zero if exceptional."""
    timer, rng = _Timer(), _stream(rng)
    g = g or Const()
    if g.depends_on_plane:
        raise InvalidArgument("Marginal checks take functions of the normal only", "g")
    mc = MonteCarloConfig(samples=samples)
    flag = evaluate(spec, body, g, mc, rng)
    if spec.is_exceptional:
        expected, combined = 0.0, flag.std_error
    else:
        classical = classical_area_measure(body, spec.k, g, mc, rng)
        expected = classical.estimate
        combined = float(np.hypot(flag.std_error, classical.std_error))
    tolerance = _gate(combined, expected)
    return _finish(
        CheckReport(
            check_id="marginal",
            params={**_spec_params(spec), "body": body.label, "g": g.to_json()},
            observed=[flag.estimate],
            expected=[expected],
            tolerance_rule=ToleranceRule.STD_ERROR,
            tolerance=tolerance,
            passed=abs(flag.estimate - expected) <= tolerance,
            samples=samples,
            seed=rng.seed,
            runtime_ms=timer.elapsed_ms,
        )
    )


def _group_element(n: int, mode: EquivarianceMode, gen: np.random.Generator) -> np.ndarray:
    g = special_ortho_group.rvs(dim=n, random_state=gen) if n > 1 else np.eye(1)
    if mode is EquivarianceMode.REFLECT:
        g = np.diag([-1.0] + [1.0] * (n - 1)) @ g
    return g


def check_equivariance(
    spec: MeasureSpec,
    body: Body,
    f: Optional[TestFunction] = None,
    mode: EquivarianceMode = EquivarianceMode.ROTATE,
    samples: int = 20_000,
    rng: Optional[RngStream] = None,
    trials: int = 1,
    shift: Optional[Sequence[float]] = None,
    factor: float = 2.0,
) -> CheckReport:
    """
    Matched-seed comparison of a measure on a transformed body with a transformed test function.

    Translations must reproduce the estimate bit for bit and scalings must
    multiply it by factor^k. Rotations and reflections are compared within
    combined standard errors; a reflection negates the exceptional measure.
    """
    timer, rng = _Timer(), _stream(rng)
    f = f or Const()
    mode = EquivarianceMode(str(mode))
    mc = MonteCarloConfig(samples=samples)
    base = evaluate(spec, body, f, mc, rng)
    observed: List[float] = []
    expected: List[float] = []
    params = {**_spec_params(spec), "body": body.label, "mode": str(mode)}

    if mode is EquivarianceMode.TRANSLATE:
        t = list(shift) if shift is not None else [float(j + 1) for j in range(body.dim)]
        moved = evaluate(spec, transform_body(body, t=t), f, mc, rng)
        observed, expected = [moved.estimate], [base.estimate]
        rule, tolerance = ToleranceRule.EXACT, 0.0
        passed = moved.estimate == base.estimate
        params["t"] = t
    elif mode is EquivarianceMode.SCALE:
        scaled = evaluate(spec, transform_body(body, s=factor), f, mc, rng)
        target = factor**spec.k * base.estimate
        observed, expected = [scaled.estimate], [target]
        rule = ToleranceRule.RELATIVE
        tolerance = SMOOTH_SCALING_RTOL if isinstance(body, Ellipsoid) else SCALING_RTOL
        passed = abs(scaled.estimate - target) <= tolerance * max(abs(target), 1e-300)
        params["s"] = factor
    else:
        sign = -1.0 if mode is EquivarianceMode.REFLECT and spec.is_exceptional else 1.0
        rule, passed, gates = ToleranceRule.STD_ERROR, True, []
        for trial in range(trials):
            g = _group_element(body.dim, mode, rng.child(trial).generator())
            moved = evaluate(spec, transform_body(body, g=g), f.transform(g), mc, rng.child(trial))
            target = sign * base.estimate
            gate = _gate(float(np.hypot(moved.std_error, base.std_error)), target)
            gates.append(gate)
            observed.append(moved.estimate)
            expected.append(target)
            passed = passed and abs(moved.estimate - target) <= gate
        tolerance = max(gates) if gates else 0.0
        params["trials"] = trials

    return _finish(
        CheckReport(
            check_id="equivariance",
            params=params,
            observed=observed,
            expected=expected,
            tolerance_rule=rule,
            tolerance=tolerance,
            passed=passed,
            samples=samples,
            seed=rng.seed,
            runtime_ms=timer.elapsed_ms,
        )
    )


def rank_family(n: int, k: int, p: int) -> Tuple[List[FlagKernel], int]:
    """
    Kernels of the rank check and the dimension they should span.

    The rows are S_k^{(p),i} for i = 0..m (plus the exceptional measure), followed by
    the same measures of the complementary flag manifold pulled back to F(n, p+1).
    """
    m = max(0, min(k, n - k - 1, p, n - p - 1))
    exceptional = n % 2 == 1 and n >= 3 and p == k == (n - 1) // 2
    kernels: List[FlagKernel] = [SigmaKernel(MeasureSpec.sigma(n, k, p, i)) for i in range(m + 1)]
    if exceptional:
        kernels.append(ExceptionalKernel(MeasureSpec.exceptional(n)))
    kernels += [ComplementSigmaKernel(n, k, p, j) for j in range(m + 1)]
    if exceptional:
        kernels.append(ComplementExceptionalKernel(n))
    return kernels, m + 1 + int(exceptional)


def _rank_column(n: int, stream: RngStream, points: int) -> Tuple[Polytope, TestFunction]:
    gen = stream.child(1).generator()
    body = standard_body(
        BodyKind.RANDOM_HULL, n, points=points, rng=stream.child(0), method=FacetMethod.QHULL
    )
    f = Product(
        factors=[
            DirPoly(u=random_unit(n, gen), d=int(gen.integers(1, 4))),
            ProjTrace(A=random_symmetric(n, gen), e=int(gen.integers(1, 3))),
        ]
    )
    return body, f


def check_rank_basis(
    n: int,
    k: int,
    p: int,
    columns: Optional[int] = None,
    samples: int = 20_000,
    rng: Optional[RngStream] = None,
    points: Optional[int] = None,
    doublings: int = RANK_MAX_DOUBLINGS,
) -> CheckReport:
    """
    Numerical rank of the measure-by-column matrix equals the dimension of the invariant family.

    Columns are random-hull polytopes paired with random plane-dependent test functions. The
    sample budget doubles until every entry's standard error is at most ``RANK_NOISE`` times
    its row's largest entry, or the doubling limit is reached.

    The defaults keep the face count low: rows + 2 columns, each the hull of n + 2 Gaussian
    points, so a column has at most C(n + 2, k + 1) k-faces.

    Raises:
        InvalidArgument: Fewer columns than the expected rank.
    """
    timer, rng = _Timer(), _stream(rng)
    kernels, rank = rank_family(n, k, p)
    columns = columns if columns is not None else len(kernels) + 2
    if columns < rank:
        raise InvalidArgument(
            "Need at least as many columns as the expected rank", "columns", columns
        )
    points = points if points is not None else n + 2
    bodies = [_rank_column(n, rng.child(q), points) for q in range(columns)]

    budget = samples
    for doubling in range(doublings + 1):
        mc = MonteCarloConfig(samples=budget)
        estimates = [
            evaluate_polytope_family(body, kernels, f, mc, rng.child(q).child(2))
            for q, (body, f) in enumerate(bodies)
        ]
        matrix = np.array([[est for est, _ in column] for column in estimates]).T
        errors = np.array([[err for _, err in column] for column in estimates]).T
        row_scale = np.max(np.abs(matrix), axis=1, keepdims=True)
        row_scale[row_scale == 0.0] = 1.0
        noise = float(np.max(errors / row_scale))
        if noise <= RANK_NOISE:
            break
        if doubling == doublings:
            _log.warning(f"Rank check ({n}, {k}, {p}) stopped at relative noise {noise:.2g}")
        else:
            budget *= 2

    singular = np.linalg.svd(matrix / row_scale, compute_uv=False)
    relative = (singular / singular[0]).tolist() if singular[0] > 0 else [0.0] * len(singular)
    keep = relative[rank - 1] >= RANK_KEEP if len(relative) >= rank else False
    drop = len(relative) <= rank or relative[rank] <= RANK_DROP
    return _finish(
        CheckReport(
            check_id="rank_basis",
            params={
                "n": n,
                "k": k,
                "p": p,
                "columns": columns,
                "points": points,
                "rows": len(kernels),
                "rank": rank,
                "noise": noise,
            },
            observed=relative,
            expected=[RANK_KEEP] * rank + [RANK_DROP] * (len(relative) - rank),
            tolerance_rule=ToleranceRule.RANK,
            tolerance=RANK_DROP,
            passed=keep and drop,
            samples=budget,
            seed=rng.seed,
            runtime_ms=timer.elapsed_ms,
        )
    )


def check_hinderer_consistency(
    n: int,
    k: int,
    p: int,
    samples: int = 20_000,
    rng: Optional[RngStream] = None,
    configurations: int = 10_000,
    body: Optional[Polytope] = None,
) -> CheckReport:
    """
    sigma_m(E^perp, F) equals cos^2(E^perp, F) pointwise, and the two polytope engines differ
    by exactly omega_n / omega_{n-p} under matched seeds.

    Raises:
        InvalidArgument: k > n - p - 1.
    """
    timer, rng = _Timer(), _stream(rng)
    if not 0 <= p <= n - 1 or not 0 <= k <= n - p - 1:
        raise InvalidArgument("Hinderer measures need 0 <= k <= n-p-1", "k", k)
    m = max(0, min(k, n - k - 1, p, n - p - 1))

    gen = rng.child(0).generator()
    directions = sample_sphere(n, gen, configurations)
    faces = oriented_complement(directions) @ grassmann_frames(n - 1, k, gen, configurations)
    complements = complement_frames(grassmann_frames_through(directions, p + 1, gen))
    sigma = batch_sigma(complements, faces, m)[:, m]
    cosine = batch_squared_cosine(faces, complements)
    deviation = float(np.max(np.abs(sigma - cosine)))

    body = body or standard_body(BodyKind.CUBE, n)
    mc = MonteCarloConfig(samples=samples)
    flag = eval_polytope(MeasureSpec.sigma(n, k, p, m), body, Const(), mc, rng.child(1))
    classical = hinderer_measure(body, k, p, Const(), mc, rng.child(1))
    target = ball_constants(n)[1] / ball_constants(n - p)[1]
    ratio = flag.estimate / classical.estimate
    return _finish(
        CheckReport(
            check_id="hinderer_consistency",
            params={"n": n, "k": k, "p": p, "configurations": configurations, "body": body.label},
            observed=[deviation, ratio],
            expected=[0.0, target],
            tolerance_rule=ToleranceRule.RELATIVE,
            tolerance=MATCHED_RATIO_RTOL,
            passed=deviation <= MATCHED_RATIO_RTOL
            and abs(ratio - target) <= MATCHED_RATIO_RTOL * target,
            samples=samples,
            seed=rng.seed,
            runtime_ms=timer.elapsed_ms,
        )
    )


def random_square(n: int, gen: np.random.Generator) -> TestFunction:
    """A nonnegative test function (<v, u> + tr(Pi_E A))^2."""
    h = Sum(terms=[DirPoly(u=random_unit(n, gen), d=1), ProjTrace(A=random_symmetric(n, gen), e=1)])
    return Product(factors=[h, h])


def check_positivity(
    spec: MeasureSpec,
    body: Body,
    trials: int = 10,
    samples: int = 20_000,
    rng: Optional[RngStream] = None,
) -> CheckReport:
    """
    Estimates for random squares stay above -k standard errors.

    Raises:
        InvalidArgument: The exceptional measure is signed.
    """
    timer, rng = _Timer(), _stream(rng)
    if spec.is_exceptional:
        raise InvalidArgument("The exceptional measure is signed", "variant", str(spec.variant))
    mc = MonteCarloConfig(samples=samples)
    observed, gates = [], []
    for trial in range(trials):
        f = random_square(spec.n, rng.child(trial).child(0).generator())
        result = evaluate(spec, body, f, mc, rng.child(trial).child(1))
        observed.append(result.estimate)
        gates.append(SE_GATE * result.std_error)
    return _finish(
        CheckReport(
            check_id="positivity",
            params={**_spec_params(spec), "body": body.label, "trials": trials},
            observed=observed,
            expected=[0.0] * trials,
            tolerance_rule=ToleranceRule.STD_ERROR,
            tolerance=max(gates, default=0.0),
            passed=all(value >= -gate for value, gate in zip(observed, gates)),
            samples=samples,
            seed=rng.seed,
            runtime_ms=timer.elapsed_ms,
        )
    )


def check_closed_value(
    spec: MeasureSpec,
    body: Body,
    expected: float,
    f: Optional[TestFunction] = None,
    samples: int = 20_000,
    rng: Optional[RngStream] = None,
    rtol: Optional[float] = None,
) -> CheckReport:
    """An estimate against a known closed value, within standard errors or a relative tolerance."""
    timer, rng = _Timer(), _stream(rng)
    result = evaluate(spec, body, f or Const(), MonteCarloConfig(samples=samples), rng)
    if rtol is None:
        rule, tolerance = ToleranceRule.STD_ERROR, _gate(result.std_error, expected)
    else:
        rule, tolerance = ToleranceRule.RELATIVE, rtol * abs(expected)
    return _finish(
        CheckReport(
            check_id="closed_value",
            params={**_spec_params(spec), "body": body.label},
            observed=[result.estimate],
            expected=[expected],
            tolerance_rule=rule,
            tolerance=tolerance,
            passed=abs(result.estimate - expected) <= tolerance,
            samples=samples,
            seed=rng.seed,
            runtime_ms=timer.elapsed_ms,
        )
    )


def check_convergence(
    spec: Optional[MeasureSpec] = None,
    f: Optional[TestFunction] = None,
    axes: Sequence[float] = (1.0, 1.5, 2.0),
    point_counts: Sequence[int] = (50, 200, 800),
    samples: int = 200_000,
    face_samples: int = 512,
    rng: Optional[RngStream] = None,
    final_gap: float = 0.03,
) -> CheckReport:
    """
    Hulls of growing boundary samples of an ellipsoid approach the smooth-body value.

    Both engines integrate the same ``f``, so a plane-dependent ``f`` compares the full
    flag kernels and not only their marginals. Each relative gap is allowed ``SE_GATE``
    combined standard errors of slack. Passes iff every hull value has the sign of the
    smooth value, the gaps shrink and the last one is at most ``final_gap``.

    Raises:
        InvalidArgument: The smooth value is indistinguishable from zero.
    """
    timer, rng = _Timer(), _stream(rng)
    spec = spec or MeasureSpec.sigma(3, 1, 1, 1)
    f = f or Const()
    K = standard_body(BodyKind.ELLIPSOID, len(axes), axes=axes)
    smooth = eval_smooth(spec, K, f, MonteCarloConfig(samples=samples), rng.child(0))
    if abs(smooth.estimate) <= SE_GATE * smooth.std_error:
        raise InvalidArgument(
            "Smooth value is zero within its noise, relative gaps are undefined",
            "f",
            smooth.estimate,
        )

    estimates, gaps, slack = [], [], []
    for j, count in enumerate(point_counts):
        cloud = ellipsoid_boundary_batch(K, rng.child(1).child(j).generator(), count).points
        P = build_polytope(cloud, method=FacetMethod.QHULL, label=f"hull({count})")
        face_mc = MonteCarloConfig(samples=face_samples)
        result = eval_polytope(spec, P, f, face_mc, rng.child(2).child(j))
        noise = np.hypot(result.std_error, smooth.std_error) / abs(smooth.estimate)
        estimates.append(result.estimate)
        gaps.append(abs(result.estimate - smooth.estimate) / abs(smooth.estimate))
        slack.append(float(SE_GATE * noise))
        _log.debug(f"Hull of {count} points: {result.estimate:.6g} vs {smooth.estimate:.6g}")

    same_sign = all(np.sign(e) == np.sign(smooth.estimate) for e in estimates)
    shrinking = all(b < a + s for a, b, s in zip(gaps, gaps[1:], slack[1:]))
    return _finish(
        CheckReport(
            check_id="convergence",
            params={
                **_spec_params(spec),
                "f": f.to_json(),
                "axes": list(axes),
                "points": list(point_counts),
                "gaps": gaps,
                "slack": slack,
            },
            observed=estimates,
            expected=[smooth.estimate] * len(estimates),
            tolerance_rule=ToleranceRule.RELATIVE,
            tolerance=final_gap,
            passed=same_sign and shrinking and gaps[-1] <= final_gap + slack[-1],
            samples=samples,
            seed=rng.seed,
            runtime_ms=timer.elapsed_ms,
        )
    )


def _valid_specs(n: int) -> List[MeasureSpec]:
    specs = []
    for k in range(n):
        for p in range(n):
            m = max(0, min(k, n - k - 1, p, n - p - 1))
            specs += [MeasureSpec.sigma(n, k, p, i) for i in range(m + 1)]
    if n % 2 == 1 and n >= 3:
        specs.append(MeasureSpec.exceptional(n))
    return specs


Planned = Tuple[Callable[..., CheckReport], Dict[str, Any]]


def _aomoto_checks(n_top: int, samples: int) -> List[Planned]:
    checks: List[Planned] = []
    for nprime in range(2, n_top + 1):
        for p in range(nprime + 1):
            for k in range(p, nprime + 1):
                m = min(k, nprime - k, p, nprime - p)
                for i in range(m + 1):
                    kwargs = {"nprime": nprime, "p": p, "k": k, "i": i, "samples": 10 * samples}
                    checks.append((check_aomoto, kwargs))
    return checks


def _anchor_checks(n: int, samples: int) -> List[Planned]:
    """Marginals on the cube and simplex, plus the closed total masses of S_0 and of the ball."""
    cube = standard_body(BodyKind.CUBE, n, method=FacetMethod.QHULL)
    simplex = standard_body(BodyKind.SIMPLEX, n, method=FacetMethod.QHULL)
    ball = standard_body(BodyKind.BALL, n)
    tilted = np.arange(1.0, n + 1.0)
    square = DirPoly(u=(tilted / np.linalg.norm(tilted)).tolist(), d=2)
    omega = ball_constants(n)[1]
    checks: List[Planned] = []
    for spec in _valid_specs(n):
        checks.append((check_marginal, {"spec": spec, "body": cube, "samples": samples}))
        checks.append((check_marginal, {"spec": spec, "body": simplex, "samples": samples}))
        kwargs = {"spec": spec, "body": simplex, "g": square, "samples": samples}
        checks.append((check_marginal, kwargs))
        kwargs = {"spec": spec, "body": cube, "g": square, "samples": samples}
        checks.append((check_marginal, kwargs))
        if not spec.is_exceptional:
            kwargs = {"spec": spec, "body": ball, "expected": omega, "samples": 5 * samples}
            checks.append((check_closed_value, kwargs))
    vertex_mass = {"spec": MeasureSpec.sigma(n, 0, 1, 0), "body": simplex, "expected": omega}
    checks.append((check_closed_value, {**vertex_mass, "samples": samples}))
    return checks


def _symmetry_checks() -> List[Planned]:
    """Closed values, group actions and the structural checks in dimension 3."""
    cube, simplex = standard_body(BodyKind.CUBE, 3), standard_body(BodyKind.SIMPLEX, 3)
    edges, mixed = MeasureSpec.sigma(3, 1, 1, 0), MeasureSpec.sigma(3, 1, 1, 1)
    faces = MeasureSpec.sigma(3, 2, 1, 0)
    square = random_square(3, RngStream(seed=DEFAULT_SEED).generator())
    linear = DirPoly(u=[0.6, 0.8, 0.0], d=1)
    return [
        (check_closed_value, {"spec": edges, "body": cube, "expected": 3 * np.pi}),
        (check_closed_value, {"spec": mixed, "body": cube, "expected": 3 * np.pi}),
        (check_equivariance, {"spec": edges, "body": cube, "mode": EquivarianceMode.TRANSLATE}),
        (check_equivariance, {"spec": faces, "body": simplex, "mode": EquivarianceMode.SCALE}),
        (
            check_equivariance,
            {
                "spec": mixed,
                "body": cube,
                "f": square,
                "mode": EquivarianceMode.ROTATE,
                "trials": 10,
            },
        ),
        (
            check_equivariance,
            {
                "spec": MeasureSpec.exceptional(3),
                "body": cube,
                "f": linear,
                "mode": EquivarianceMode.REFLECT,
                "trials": 10,
            },
        ),
        (check_hinderer_consistency, {"n": 3, "k": 1, "p": 1}),
        (check_positivity, {"spec": mixed, "body": cube, "trials": 10}),
        (check_rank_basis, {"n": 3, "k": 1, "p": 1}),
    ]


def plane_dependent_function(n: int, signed: bool = False) -> TestFunction:
    """
    A test function that depends on the plane of the flag, nonzero on centred ellipsoids.

    The default <v, e_n>^2 tr(Pi_E e_1 e_1^T) is nonnegative. With ``signed`` it is
    <v, e_n> tr(Pi_E A) for A = e_1 e_2^T + e_2 e_1^T, which flips under v -> -v and under
    e_1 -> -e_1, so only the exceptional measure can integrate it to a nonzero value there.
    """
    A = np.zeros((n, n))
    if signed:
        A[0, 1] = A[1, 0] = 1.0
    else:
        A[0, 0] = 1.0
    axis = [0.0] * (n - 1) + [1.0]
    return Product(factors=[DirPoly(u=axis, d=1 if signed else 2), ProjTrace(A=A.tolist(), e=1)])


def _default_checks(n_max: int, samples: int) -> List[Planned]:
    checks = _aomoto_checks(max(n_max, AOMOTO_MAX_DIM), samples)
    for n in range(3, n_max + 1):
        checks += _anchor_checks(n, samples)
    checks += [(check, {"samples": samples, **kwargs}) for check, kwargs in _symmetry_checks()]
    if n_max >= 4:
        ball, spread = standard_body(BodyKind.BALL, 4), MeasureSpec.sigma(4, 2, 1, 1)
        checks += [
            (check_hinderer_consistency, {"n": 4, "k": 1, "p": 2, "samples": samples}),
            (check_positivity, {"spec": spread, "body": ball, "trials": 5, "samples": samples}),
            (check_rank_basis, {"n": 4, "k": 1, "p": 1, "samples": samples}),
        ]
    if n_max >= 5:
        checks += [
            (check_hinderer_consistency, {"n": 5, "k": 2, "p": 2, "samples": samples}),
            (check_rank_basis, {"n": 5, "k": 2, "p": 2, "samples": samples}),
            (check_rank_basis, {"n": 5, "k": 1, "p": 2, "samples": samples}),
        ]
    if n_max >= 6:
        checks.append((check_rank_basis, {"n": 6, "k": 2, "p": 3, "samples": samples}))
    signed = plane_dependent_function(3, signed=True)
    checks += [
        (check_convergence, {}),
        (check_convergence, {"f": plane_dependent_function(3)}),
        (check_convergence, {"spec": MeasureSpec.exceptional(3), "f": signed}),
    ]
    return checks


def _quick_checks(n_max: int, samples: int) -> List[Planned]:
    cube = standard_body(BodyKind.CUBE, 3)
    edges, mixed = MeasureSpec.sigma(3, 1, 1, 0), MeasureSpec.sigma(3, 1, 1, 1)
    checks: List[Planned] = [
        (check_aomoto, {"nprime": 3, "p": 1, "k": 1, "i": 1, "samples": 10 * samples}),
        (check_aomoto, {"nprime": 4, "p": 2, "k": 2, "i": 1, "samples": 10 * samples}),
        (check_marginal, {"spec": edges, "body": cube}),
        (check_marginal, {"spec": mixed, "body": cube}),
        (check_marginal, {"spec": MeasureSpec.exceptional(3), "body": cube}),
        (check_closed_value, {"spec": edges, "body": cube, "expected": 3 * np.pi}),
        (check_equivariance, {"spec": edges, "body": cube, "mode": EquivarianceMode.TRANSLATE}),
        (check_equivariance, {"spec": edges, "body": cube, "mode": EquivarianceMode.SCALE}),
        (check_hinderer_consistency, {"n": 3, "k": 1, "p": 1, "configurations": 2_000}),
        (check_positivity, {"spec": mixed, "body": cube, "trials": 3}),
    ]
    return [(check, {"samples": samples, **kwargs}) for check, kwargs in checks]


SUITES: Dict[str, Callable[[int, int], List[Planned]]] = {
    "default": _default_checks,
    "quick": _quick_checks,
}


def suite_checks(
    suite: str = "default",
    n_max: int = 4,
    samples: int = 20_000,
    seed: int = DEFAULT_SEED,
) -> List[Check]:
    """
    Zero-argument callables for every check of a suite; check j draws from stream j.

    Raises:
        InvalidArgument: Unknown suite name.
    """
    if suite not in SUITES:
        raise InvalidArgument(f"Unknown suite: {suite}", "suite", suite)
    root = RngStream(seed=seed)
    planned = SUITES[suite](n_max, samples)
    return [
        partial(check, **kwargs, rng=root.child(j)) for j, (check, kwargs) in enumerate(planned)
    ]


def run_suite(
    suite: str = "default",
    n_max: int = 4,
    samples: int = 20_000,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    checks = suite_checks(suite, n_max, samples, seed)
    _log.info(f"Running {len(checks)} checks of suite {suite!r}")
    return VerificationReport(suite=suite, reports=[check() for check in checks])
