from fractions import Fraction
from math import comb

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate

from flagmeas.exceptions import InvalidArgument, SpecError
from flagmeas.grassmann import (
    RngStream,
    aomoto_expectation,
    aomoto_expectation_exact,
    aomoto_product_moment,
    ball_constants,
    grassmann_frames,
    grassmann_frames_through,
    james_log_density,
    measure_constant,
    measure_constant_exact,
    sample_grassmann,
    sample_grassmann_through,
    sample_sphere,
    selberg_parameters,
)
from flagmeas.linalg import batch_sigma
from flagmeas.models import MeasureSpec


def valid_specs(n: int):
    for k in range(n):
        for p in range(n):
            m = max(0, min(k, n - k - 1, p, n - p - 1))
            for i in range(m + 1):
                yield MeasureSpec.sigma(n, k, p, i)


class TestRngStream:
    def test_reproducible(self):
        a = RngStream(seed=11, stream_id=3).generator().standard_normal(5)
        b = RngStream(seed=11, stream_id=3).generator().standard_normal(5)
        assert np.array_equal(a, b)

    def test_substreams_differ(self):
        root = RngStream(seed=11)
        draws = [child.generator().standard_normal(3) for child in root.spawn(3)]
        assert not np.array_equal(draws[0], draws[1])
        nested = root.child(0).child(1).generator().standard_normal(3)
        assert not np.array_equal(nested, draws[0])

    def test_child_lineage(self):
        assert RngStream(seed=1).child(2).child(5).lineage == (2, 5)
        with pytest.raises(InvalidArgument):
            RngStream(seed=1).child(-1)


class TestSampling:
    def test_sphere(self, gen):
        draws = sample_sphere(4, gen, 100)
        assert draws.shape == (100, 4)
        assert_allclose(np.linalg.norm(draws, axis=1), 1.0)
        assert sample_sphere(3, gen).shape == (3,)

    def test_sphere_dimension(self, gen):
        with pytest.raises(InvalidArgument):
            sample_sphere(0, gen)

    def test_grassmann_frames_are_orthonormal(self, gen):
        frames = grassmann_frames(5, 3, gen, 20)
        gram = np.swapaxes(frames, 1, 2) @ frames
        assert_allclose(gram, np.broadcast_to(np.eye(3), (20, 3, 3)), atol=1e-12)
        assert grassmann_frames(5, 0, gen, 4).shape == (4, 5, 0)

    def test_sample_grassmann(self, stream):
        E = sample_grassmann(6, 2, stream)
        assert E.dim == 2 and E.ambient_dim == 6
        with pytest.raises(InvalidArgument):
            sample_grassmann(3, 4, stream)

    def test_planes_through_contain_their_vector(self, gen):
        v = sample_sphere(5, gen, 50)
        frames = grassmann_frames_through(v, 3, gen)
        assert_allclose(frames[:, :, 0], v)
        gram = np.swapaxes(frames, 1, 2) @ frames
        assert_allclose(gram, np.broadcast_to(np.eye(3), (50, 3, 3)), atol=1e-12)

    def test_line_through_vector(self, gen):
        v = sample_sphere(3, gen, 4)
        assert_allclose(grassmann_frames_through(v, 1, gen)[:, :, 0], v)

    def test_sample_through_requires_unit_vector(self, stream):
        pole = np.array([0.0, 0.0, 1.0])
        assert sample_grassmann_through(pole, 2, stream).contains(pole)
        with pytest.raises(InvalidArgument):
            sample_grassmann_through([0.0, 0.0, 2.0], 2, stream)
        with pytest.raises(InvalidArgument):
            sample_grassmann_through([0.0, 0.0, 1.0], 4, stream)

    def test_plane_part_is_uniform_in_complement(self, gen):
        # The second column is uniform on the unit sphere of v^perp.
        v = np.tile([1.0, 0.0, 0.0, 0.0], (40_000, 1))
        frames = grassmann_frames_through(v, 2, gen)
        assert_allclose((frames[:, 1:, 1] ** 2).mean(axis=0), 1 / 3, atol=0.01)


class TestAomoto:
    @pytest.mark.parametrize(
        ("nprime", "p", "k", "i", "expected"),
        [
            (2, 1, 1, 1, Fraction(1, 2)),
            (3, 1, 1, 1, Fraction(1, 3)),
            (4, 2, 2, 1, Fraction(1)),
            (4, 2, 2, 2, Fraction(1, 6)),
            (4, 1, 2, 1, Fraction(1, 2)),
            (5, 2, 2, 0, Fraction(1)),
        ],
    )
    def test_closed_values(self, nprime, p, k, i, expected):
        assert aomoto_expectation_exact(nprime, p, k, i) == expected

    def test_index_range(self):
        with pytest.raises(InvalidArgument):
            aomoto_expectation(4, 1, 1, 2)
        with pytest.raises(InvalidArgument):
            aomoto_expectation(3, 4, 1, 0)

    @pytest.mark.parametrize(
        ("nprime", "p", "k"), [(3, 1, 1), (4, 2, 2), (5, 2, 3), (6, 2, 2), (5, 1, 3)]
    )
    def test_monte_carlo_mean(self, gen, nprime, p, k):
        samples = 100_000
        m = min(k, nprime - k, p, nprime - p)
        planes = grassmann_frames(nprime, p, gen, samples)
        values = batch_sigma(planes, grassmann_frames(nprime, k, gen, samples), m)
        for i in range(m + 1):
            se = values[:, i].std(ddof=1) / np.sqrt(samples)
            assert abs(values[:, i].mean() - aomoto_expectation(nprime, p, k, i)) <= 4 * se + 1e-12

    @pytest.mark.parametrize("nprime", range(2, 8))
    def test_product_moment_expands_to_expectations(self, nprime):
        for p in range(nprime + 1):
            for k in range(nprime + 1):
                m = min(k, nprime - k, p, nprime - p)
                a, b = selberg_parameters(nprime, p, k)
                for t in (Fraction(0), Fraction(1, 3), Fraction(-2)):
                    expanded = sum(
                        (-t) ** (m - i) * aomoto_expectation_exact(nprime, p, k, i)
                        for i in range(m + 1)
                    )
                    assert aomoto_product_moment(m, t, a, b) == expanded

    def test_product_moment_float(self):
        half = Fraction(1, 2)
        exact = aomoto_product_moment(2, half, -half, -half)
        assert_allclose(aomoto_product_moment(2, 0.5, -0.5, -0.5), float(exact))
        with pytest.raises(InvalidArgument):
            aomoto_product_moment(-1, 0, 0, 0)


class TestJamesDensity:
    @pytest.mark.parametrize(("nprime", "p", "k"), [(3, 1, 1), (4, 1, 2), (5, 2, 1)])
    def test_single_angle_mean(self, nprime, p, k):
        # x = sin^2(phi) removes the endpoint singularities of x^a (1-x)^b.
        def weight(phi, power):
            x = np.sin(phi) ** 2
            return x**power * np.exp(james_log_density([x], nprime, p, k)) * np.sin(2 * phi)

        mass, _ = integrate.quad(weight, 0.0, np.pi / 2, args=(0,))
        first, _ = integrate.quad(weight, 0.0, np.pi / 2, args=(1,))
        assert_allclose(first / mass, aomoto_expectation(nprime, p, k, 1), rtol=1e-7)

    @pytest.mark.parametrize(("nprime", "p", "k"), [(4, 2, 2), (5, 2, 2)])
    def test_two_angle_moments(self, nprime, p, k):
        def weight(phi2, phi1, which):
            x = np.array([np.sin(phi1) ** 2, np.sin(phi2) ** 2])
            density = np.exp(james_log_density(x, nprime, p, k))
            symmetric = [1.0, x.sum(), x.prod()][which]
            return symmetric * density * np.sin(2 * phi1) * np.sin(2 * phi2)

        half = np.pi / 2
        moments = [integrate.dblquad(weight, 0.0, half, 0.0, half, args=(j,))[0] for j in range(3)]
        for i in (1, 2):
            assert_allclose(moments[i] / moments[0], aomoto_expectation(nprime, p, k, i), rtol=1e-4)

    def test_vandermonde_zero(self):
        assert james_log_density([0.3, 0.3], 4, 2, 2) == float("-inf")

    def test_zero_factors(self):
        assert james_log_density([0.0, 0.5], 4, 2, 2) == float("inf")
        assert james_log_density([0.5, 1.0], 4, 2, 2) == float("inf")
        assert james_log_density([0.0], 4, 1, 3) == float("-inf")

    def test_domain(self):
        with pytest.raises(InvalidArgument):
            james_log_density([1.5], 3, 1, 1)
        with pytest.raises(InvalidArgument):
            james_log_density([0.5, 0.2], 3, 1, 1)


class TestConstants:
    @pytest.mark.parametrize(
        ("spec", "expected"),
        [
            (MeasureSpec.sigma(3, 1, 1, 0), Fraction(1, 2)),
            (MeasureSpec.sigma(3, 1, 1, 1), Fraction(1)),
            (MeasureSpec.sigma(3, 0, 2, 0), Fraction(1)),
            (MeasureSpec.sigma(4, 1, 1, 1), Fraction(3, 3 * 1 * 2)),
        ],
    )
    def test_closed_values(self, spec, expected):
        assert measure_constant_exact(spec) == expected

    @pytest.mark.parametrize("n", range(1, 8))
    def test_normalization_against_expectation(self, n):
        # c * E[sigma_i(E^perp, F)] in v^perp is 1 / C(n-1, k) for every index.
        for spec in valid_specs(n):
            mean = aomoto_expectation_exact(n - 1, n - 1 - spec.p, spec.k, spec.i)
            assert measure_constant_exact(spec) * mean == Fraction(1, comb(n - 1, spec.k))
            assert measure_constant(spec) == float(measure_constant_exact(spec))

    def test_exceptional_has_no_constant(self):
        with pytest.raises(InvalidArgument):
            measure_constant(MeasureSpec.exceptional(3))

    def test_ball_constants(self):
        assert_allclose(ball_constants(0), (1.0, 0.0))
        assert_allclose(ball_constants(2), (np.pi, 2 * np.pi))
        assert_allclose(ball_constants(3), (4 * np.pi / 3, 4 * np.pi))
        assert_allclose(ball_constants(4), (np.pi**2 / 2, 2 * np.pi**2))
        with pytest.raises(InvalidArgument):
            ball_constants(-1)


class TestMeasureSpec:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 3, "k": 3, "p": 0, "i": 0},
            {"n": 3, "k": 1, "p": 3, "i": 0},
            {"n": 3, "k": 1, "p": 1, "i": 2},
            {"n": 3, "k": 1, "p": 1},
            {"n": 4, "k": 1, "p": 1, "variant": "exceptional"},
            {"n": 5, "k": 1, "p": 2, "variant": "exceptional"},
            {"n": 3, "k": 1, "p": 1, "i": 0, "variant": "exceptional"},
        ],
    )
    def test_rejects_invalid(self, kwargs):
        with pytest.raises(SpecError):
            MeasureSpec(**kwargs)

    def test_m(self):
        assert MeasureSpec.sigma(5, 2, 2, 0).m == 2
        assert MeasureSpec.sigma(4, 3, 1, 0).m == 0
        assert MeasureSpec.exceptional(5).m == 2
