import numpy as np
import pytest
from numpy.testing import assert_allclose

from flagmeas.bodies import (
    Ellipsoid,
    build_polytope,
    ellipsoid_boundary_batch,
    standard_body,
    transform_body,
)
from flagmeas.enums import BodyKind, FacetMethod, SmoothForm
from flagmeas.exceptions import InvalidArgument
from flagmeas.grassmann import ball_constants
from flagmeas.measures import (
    ComplementSigmaKernel,
    ExceptionalKernel,
    HindererKernel,
    Moments,
    SigmaKernel,
    classical_area_measure,
    eval_polytope,
    eval_smooth,
    evaluate,
    evaluate_polytope_family,
    evaluate_smooth_family,
    hinderer_measure,
    kernel_for,
    smooth_form_discrepancy,
    tree_reduce,
)
from flagmeas.models import MeasureSpec, MonteCarloConfig
from flagmeas.testfunctions import Const, DirPoly, Product, ProjTrace

MC = MonteCarloConfig(samples=20_000)
A3 = [[1.0, 0.5, 0.0], [0.5, -1.0, 0.3], [0.0, 0.3, 2.0]]


def within(result, expected, gate=4.0):
    slack = 1e-12 * max(1.0, abs(expected))
    return abs(result.estimate - expected) <= gate * result.std_error + slack


def top_index(n, k, p):
    return max(0, min(k, n - k - 1, p, n - p - 1))


class TestPolytopeEngine:
    @pytest.mark.parametrize("i", [0, 1])
    def test_cube_edges(self, cube3, stream, i):
        result = eval_polytope(MeasureSpec.sigma(3, 1, 1, i), cube3, Const(), MC, stream)
        assert within(result, 3 * np.pi)
        assert result.samples == MC.samples
        assert result.seed == stream.seed
        assert result.body == "cube(n=3)"

    def test_facets_are_exact(self, cube3, stream):
        f = DirPoly(u=[1.0, 0.0, 0.0], d=2)
        result = eval_polytope(MeasureSpec.sigma(3, 2, 1, 0), cube3, f, MC, stream)
        assert result.exact
        assert result.std_error == 0.0
        assert_allclose(result.estimate, 2.0, rtol=1e-12)

    @pytest.mark.parametrize("kind", [BodyKind.SIMPLEX, BodyKind.CUBE, BodyKind.CROSS])
    def test_vertex_measure_is_sphere_area(self, kind, stream):
        P = standard_body(kind, 3)
        result = eval_polytope(MeasureSpec.sigma(3, 0, 1, 0), P, Const(), MC, stream)
        assert within(result, 4 * np.pi)

    def test_translation_is_bit_identical(self, cube3, stream):
        spec, f = MeasureSpec.sigma(3, 1, 1, 1), ProjTrace(A=A3, e=1)
        base = eval_polytope(spec, cube3, f, MC, stream)
        moved = eval_polytope(spec, transform_body(cube3, t=[1.0, 2.0, 3.0]), f, MC, stream)
        assert moved.estimate == base.estimate
        assert moved.std_error == base.std_error

    @pytest.mark.parametrize(
        ("n", "k", "p", "i"), [(3, 1, 1, 0), (3, 2, 1, 0), (4, 2, 1, 1), (4, 1, 2, 1)]
    )
    def test_scaling_is_homogeneous(self, stream, n, k, p, i):
        spec, P = MeasureSpec.sigma(n, k, p, i), standard_body(BodyKind.SIMPLEX, n)
        f = ProjTrace(A=np.eye(n).tolist(), e=1)
        mc = MonteCarloConfig(samples=2_000)
        base = eval_polytope(spec, P, f, mc, stream)
        scaled = eval_polytope(spec, transform_body(P, s=2.0), f, mc, stream)
        assert_allclose(scaled.estimate, 2.0**k * base.estimate, rtol=1e-12)

    def test_family_shares_draws(self, cube3, stream):
        f = Product(factors=[DirPoly(u=[0.0, 0.0, 1.0], d=2), ProjTrace(A=A3, e=1)])
        specs = [MeasureSpec.sigma(3, 1, 1, 0), MeasureSpec.sigma(3, 1, 1, 1)]
        kernels = [SigmaKernel(spec) for spec in specs]
        family = evaluate_polytope_family(cube3, kernels, f, MC, stream)
        for spec, (estimate, error) in zip(specs, family):
            single = eval_polytope(spec, cube3, f, MC, stream)
            assert_allclose(estimate, single.estimate, rtol=1e-14)
            assert_allclose(error, single.std_error, rtol=1e-14)

    def test_family_needs_a_common_flag_type(self, cube3):
        kernels = [
            SigmaKernel(MeasureSpec.sigma(3, 1, 1, 0)),
            SigmaKernel(MeasureSpec.sigma(3, 1, 0, 0)),
        ]
        with pytest.raises(InvalidArgument):
            evaluate_polytope_family(cube3, kernels, Const())
        with pytest.raises(InvalidArgument):
            evaluate_polytope_family(cube3, [], Const())

    def test_exceptional_marginal_vanishes(self, cube3, stream):
        f = DirPoly(u=[0.6, 0.8, 0.0], d=1)
        result = eval_polytope(MeasureSpec.exceptional(3), cube3, f, MC, stream)
        assert within(result, 0.0)

    def test_dimension_checks(self, cube3, ball3):
        with pytest.raises(InvalidArgument):
            eval_polytope(MeasureSpec.sigma(4, 1, 1, 0), cube3, Const())
        with pytest.raises(InvalidArgument):
            eval_polytope(MeasureSpec.sigma(3, 1, 1, 0), ball3, Const())
        with pytest.raises(InvalidArgument):
            eval_polytope(MeasureSpec.sigma(3, 1, 1, 0), cube3, DirPoly(u=[1.0, 0.0], d=1))

    def test_default_stream_is_reproducible(self, simplex3):
        spec = MeasureSpec.sigma(3, 1, 1, 1)
        mc = MonteCarloConfig(samples=500)
        first = eval_polytope(spec, simplex3, Const(), mc)
        assert eval_polytope(spec, simplex3, Const(), mc).estimate == first.estimate


class TestClassicalMeasures:
    def test_classical_area_measure_of_facets(self, cube3):
        result = classical_area_measure(cube3, 2, Const())
        assert result.exact
        assert_allclose(result.estimate, 6.0)

    def test_classical_rejects_plane_functions(self, cube3):
        with pytest.raises(InvalidArgument):
            classical_area_measure(cube3, 1, ProjTrace(A=A3, e=1))

    def test_hinderer_at_p0_is_classical(self, cube3, stream):
        g = DirPoly(u=[0.0, 0.6, 0.8], d=2)
        hinderer = hinderer_measure(cube3, 1, 0, g, MC, stream)
        classical = classical_area_measure(cube3, 1, g, MC, stream)
        assert_allclose(hinderer.estimate, classical.estimate, rtol=1e-12)

    @pytest.mark.parametrize(
        ("kind", "n", "k", "p"),
        [(BodyKind.CUBE, 3, 1, 1), (BodyKind.CUBE, 4, 1, 2), (BodyKind.SIMPLEX, 4, 2, 1)],
    )
    def test_engine_ratio(self, stream, kind, n, k, p):
        P = standard_body(kind, n)
        spec = MeasureSpec.sigma(n, k, p, top_index(n, k, p))
        f = ProjTrace(A=np.diag(np.arange(1.0, n + 1)).tolist(), e=2)
        mc = MonteCarloConfig(samples=3_000)
        flag = eval_polytope(spec, P, f, mc, stream)
        classical = hinderer_measure(P, k, p, f, mc, stream)
        assert classical.spec == spec
        ratio = ball_constants(n)[1] / ball_constants(n - p)[1]
        assert_allclose(flag.estimate / classical.estimate, ratio, rtol=1e-10)

    def test_hinderer_range(self):
        with pytest.raises(InvalidArgument):
            HindererKernel(3, 2, 1)


class TestSmoothEngine:
    @pytest.mark.parametrize("spec", [MeasureSpec.sigma(3, 2, 0, 0), MeasureSpec.sigma(3, 0, 2, 0)])
    def test_ball_is_deterministic(self, ball3, stream, spec):
        result = eval_smooth(spec, ball3, Const(), MonteCarloConfig(samples=5_000), stream)
        assert_allclose(result.estimate, 4 * np.pi, rtol=1e-12)

    @pytest.mark.parametrize(
        ("n", "k", "p", "i"),
        [(3, 1, 1, 0), (3, 1, 1, 1), (3, 1, 2, 0), (4, 2, 1, 1), (4, 1, 2, 1)],
    )
    def test_ball_total_mass(self, stream, n, k, p, i):
        ball = standard_body(BodyKind.BALL, n)
        mc = MonteCarloConfig(samples=40_000)
        result = eval_smooth(MeasureSpec.sigma(n, k, p, i), ball, Const(), mc, stream)
        assert within(result, ball_constants(n)[1])

    def test_gauss_bonnet(self, stream):
        K = standard_body(BodyKind.ELLIPSOID, 3, axes=[1.0, 1.5, 2.0])
        mc = MonteCarloConfig(samples=40_000)
        result = eval_smooth(MeasureSpec.sigma(3, 0, 1, 0), K, Const(), mc, stream)
        assert within(result, 4 * np.pi)

    def test_blocks_are_reproducible(self, stream):
        K = standard_body(BodyKind.ELLIPSOID, 3)
        spec, mc = MeasureSpec.sigma(3, 1, 1, 1), MonteCarloConfig(samples=3_000, block_size=1_000)
        one = eval_smooth(spec, K, Const(), mc, stream)
        two = eval_smooth(spec, K, Const(), mc, stream)
        assert one.estimate == two.estimate
        assert one.samples == 3_000

    def test_scaling(self, stream):
        K = standard_body(BodyKind.ELLIPSOID, 3)
        spec, mc = MeasureSpec.sigma(3, 2, 1, 0), MonteCarloConfig(samples=4_000)
        base = eval_smooth(spec, K, Const(), mc, stream)
        scaled = eval_smooth(spec, transform_body(K, s=2.0), Const(), mc, stream)
        assert_allclose(scaled.estimate, 4.0 * base.estimate, rtol=1e-9)

    @pytest.mark.parametrize(
        ("n", "k", "p"), [(3, 1, 1), (3, 1, 2), (4, 1, 2), (4, 2, 2), (5, 2, 3)]
    )
    def test_smooth_forms_agree(self, stream, n, k, p):
        K = Ellipsoid(shape=np.diag(np.linspace(1.0, 2.5, n)))
        for i in range(top_index(n, k, p) + 1):
            assert smooth_form_discrepancy(MeasureSpec.sigma(n, k, p, i), K, 200, stream) <= 1e-9

    def test_simplified_form_needs_k_at_most_p(self, stream):
        K = standard_body(BodyKind.ELLIPSOID, 3)
        spec, mc = MeasureSpec.sigma(3, 2, 1, 0), MonteCarloConfig(samples=10)
        with pytest.raises(InvalidArgument):
            eval_smooth(spec, K, Const(), mc, stream, SmoothForm.SIMPLIFIED)
        with pytest.raises(InvalidArgument):
            smooth_form_discrepancy(spec, K, 10, stream)

    def test_exceptional_marginal_vanishes(self, stream):
        K = Ellipsoid(shape=[[2.0, 0.3, 0.1], [0.3, 1.0, 0.0], [0.1, 0.0, 1.5]])
        f = DirPoly(u=[0.0, 0.6, 0.8], d=2)
        result = eval_smooth(MeasureSpec.exceptional(3), K, f, MC, stream)
        assert within(result, 0.0)

    @pytest.mark.parametrize("u", [[0.0, 0.0, 1.0], [0.6, 0.0, 0.8]])
    def test_exceptional_matches_dense_hull(self, stream, u):
        K = standard_body(BodyKind.ELLIPSOID, 3, axes=(1.0, 1.5, 2.0))
        A = [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
        f = Product(factors=[DirPoly(u=u, d=1), ProjTrace(A=A, e=1)])
        spec = MeasureSpec.exceptional(3)
        smooth = eval_smooth(spec, K, f, MC, stream.child(0))
        cloud = ellipsoid_boundary_batch(K, stream.child(1).generator(), 200).points
        P = build_polytope(cloud, method=FacetMethod.QHULL)
        hull = eval_polytope(spec, P, f, MonteCarloConfig(samples=256), stream.child(2))
        assert abs(smooth.estimate) > 0.4
        assert np.sign(hull.estimate) == np.sign(smooth.estimate)
        noise = 4.0 * np.hypot(hull.std_error, smooth.std_error)
        assert abs(hull.estimate - smooth.estimate) <= noise + 0.1 * abs(smooth.estimate)

    def test_family(self, stream):
        K = standard_body(BodyKind.ELLIPSOID, 3)
        mc = MonteCarloConfig(samples=2_000)
        kernels = [SigmaKernel(MeasureSpec.sigma(3, 1, 1, i)) for i in range(2)]
        family = evaluate_smooth_family(K, kernels, Const(), mc, stream)
        single = eval_smooth(MeasureSpec.sigma(3, 1, 1, 1), K, Const(), mc, stream)
        assert_allclose(family[1][0], single.estimate, rtol=1e-14)

    def test_dispatch(self, ball3, cube3, stream):
        mc = MonteCarloConfig(samples=100)
        spec = MeasureSpec.sigma(3, 1, 1, 0)
        smooth = eval_smooth(spec, ball3, Const(), mc, stream)
        assert evaluate(spec, ball3, Const(), mc, stream) == smooth
        polytope = eval_polytope(spec, cube3, Const(), mc, stream)
        assert evaluate(spec, cube3, Const(), mc, stream) == polytope
        with pytest.raises(InvalidArgument):
            eval_smooth(spec, cube3, Const())


class TestKernels:
    def test_kernel_for(self):
        assert isinstance(kernel_for(MeasureSpec.exceptional(3)), ExceptionalKernel)
        assert isinstance(kernel_for(MeasureSpec.sigma(3, 1, 1, 0)), SigmaKernel)
        with pytest.raises(InvalidArgument):
            ExceptionalKernel(MeasureSpec.sigma(3, 1, 1, 0))

    def test_polytope_only_kernels(self, stream):
        K = standard_body(BodyKind.ELLIPSOID, 3)
        kernels = [ComplementSigmaKernel(3, 1, 1, 0)]
        with pytest.raises(InvalidArgument):
            evaluate_smooth_family(K, kernels, Const(), MonteCarloConfig(samples=10), stream)


class TestReduction:
    def test_moments_merge(self, gen):
        values = gen.standard_normal((2, 101))
        moments = []
        for block in (values[:, :40], values[:, 40:77], values[:, 77:]):
            means = block.mean(axis=1)
            squares = ((block - means[:, None]) ** 2).sum(axis=1)
            moments.append(Moments(block.shape[1], means, squares))
        total = tree_reduce(moments, Moments.merge)
        assert total.count == 101
        assert_allclose(total.means, values.mean(axis=1))
        assert_allclose(total.squares / 100, values.var(axis=1, ddof=1))

    def test_tree_reduce_order(self):
        assert tree_reduce(["a", "b", "c", "d", "e"], lambda x, y: f"({x}{y})") == "(((ab)(cd))e)"
        with pytest.raises(InvalidArgument):
            tree_reduce([], lambda x, y: x)
