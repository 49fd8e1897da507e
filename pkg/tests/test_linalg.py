from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from flagmeas.exceptions import ConsistencyError, InvalidArgument
from flagmeas.linalg import (
    OrientedSubspace,
    Subspace,
    affine_dimension,
    batch_sigma,
    batch_sigma_tilde,
    complement_frames,
    elementary_symmetric,
    mixed_discriminant,
    oriented_complement,
    orthonormal_frame,
    principal_angles,
    sigma_elem,
    sigma_tilde,
    squared_cosine,
)

from .conftest import random_frame, random_orthogonal

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def subspace(frame: np.ndarray) -> Subspace:
    return Subspace(ambient_dim=frame.shape[0], frame=frame)


class TestSubspace:
    def test_rejects_non_orthonormal_frame(self):
        with pytest.raises(InvalidArgument):
            Subspace(ambient_dim=3, frame=[[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]])

    def test_rejects_ambient_mismatch(self):
        with pytest.raises(InvalidArgument):
            Subspace(ambient_dim=4, frame=np.eye(3)[:, :1])

    def test_empty_frame(self):
        E = Subspace(ambient_dim=3, frame=[])
        assert E.dim == 0
        assert E.complement().dim == 3

    def test_complement(self, gen):
        E = subspace(random_frame(5, 2, gen))
        W = E.complement()
        assert W.dim == 3
        assert_allclose(E.frame.T @ W.frame, 0.0, atol=1e-12)
        assert_allclose(E.projector + W.projector, np.eye(5), atol=1e-12)

    def test_contains(self):
        E = orthonormal_frame([[1.0, 1.0, 0.0]])
        assert E.contains(np.array([2.0, 2.0, 0.0]))
        assert not E.contains(np.array([1.0, 0.0, 0.0]))

    def test_oriented_reversal_flips_first_column(self, gen):
        E = OrientedSubspace(base=subspace(random_frame(4, 2, gen)))
        flipped = E.reversed().oriented_frame
        assert_allclose(flipped[:, 0], -E.oriented_frame[:, 0])
        assert_allclose(flipped[:, 1], E.oriented_frame[:, 1])

    def test_bad_orientation(self, gen):
        with pytest.raises(InvalidArgument):
            OrientedSubspace(base=subspace(random_frame(3, 1, gen)), orientation=0)


class TestOrthonormalFrame:
    def test_rank_deficient_input(self):
        E = orthonormal_frame([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 0.0, 3.0]])
        assert E.dim == 2

    def test_empty_needs_ambient_dim(self):
        with pytest.raises(InvalidArgument):
            orthonormal_frame([])
        assert orthonormal_frame([], ambient_dim=4).dim == 0

    def test_zero_vectors(self):
        assert orthonormal_frame([[0.0, 0.0]]).dim == 0

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgument):
            orthonormal_frame([[1.0, 0.0]], ambient_dim=3)

    def test_affine_dimension(self):
        square = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [1.0, 1.0, 1.0]])
        assert affine_dimension(square) == 2
        assert affine_dimension(square[:1]) == 0


class TestPrincipalAngles:
    @pytest.mark.parametrize("theta", [0.0, 1e-9, 1e-6, 0.3, np.pi / 4, 1.2, np.pi / 2])
    def test_planes_in_r3(self, theta):
        E = orthonormal_frame([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        F = orthonormal_frame([[1.0, 0.0, 0.0], [0.0, np.cos(theta), np.sin(theta)]])
        spectrum = principal_angles(E, F)
        assert spectrum.m == 1
        assert spectrum.forced_ones == 1
        assert_allclose(spectrum.angles, [theta], rtol=1e-9, atol=1e-12)

    def test_planted_angles(self, gen):
        planted = np.array([1.2, 0.4, 1e-7])
        basis = np.eye(6)
        e = basis[:, :3]
        f = basis[:, :3] * np.cos(planted) + basis[:, 3:] * np.sin(planted)
        q = random_orthogonal(6, gen)
        spectrum = principal_angles(orthonormal_frame((q @ e).T), orthonormal_frame((q @ f).T))
        assert_allclose(spectrum.angles, planted, atol=1e-12)

    def test_lines(self):
        E = orthonormal_frame([[1.0, 0.0]])
        F = orthonormal_frame([[1.0, 1.0]])
        assert_allclose(principal_angles(E, F).cos_squared, [0.5])

    def test_angles_are_sorted(self, gen):
        E, F = subspace(random_frame(6, 3, gen)), subspace(random_frame(6, 3, gen))
        angles = principal_angles(E, F).angles
        assert angles == sorted(angles, reverse=True)

    def test_ambient_mismatch(self, gen):
        with pytest.raises(InvalidArgument):
            principal_angles(subspace(random_frame(3, 1, gen)), subspace(random_frame(4, 1, gen)))

    def test_forced_one_violation(self):
        # Bypasses validation to feed a frame whose forced cosines are 0.9.
        E = Subspace.model_construct(ambient_dim=3, frame=np.eye(3)[:, :2] * 0.9)
        F = orthonormal_frame([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        with pytest.raises(ConsistencyError):
            principal_angles(E, F)


class TestSymmetricFunctions:
    def test_elementary_symmetric(self):
        assert_allclose(elementary_symmetric(np.array([1.0, 2.0, 3.0])), [1.0, 6.0, 11.0, 6.0])

    def test_elementary_symmetric_batched(self, gen):
        x = gen.uniform(size=(5, 4))
        e = elementary_symmetric(x)
        for i in range(5):
            expected = [sum(np.prod(row[list(c)]) for c in combinations(range(4), i)) for row in x]
            assert_allclose(e[:, i], expected)

    def test_sigma_bounds(self, gen):
        for _ in range(20):
            E, F = subspace(random_frame(7, 3, gen)), subspace(random_frame(7, 4, gen))
            m = principal_angles(E, F).m
            for i in range(m + 1):
                value = sigma_elem(E, F, i)
                assert -1e-12 <= value <= comb(m, i) + 1e-12

    def test_sigma_index_out_of_range(self, gen):
        E, F = subspace(random_frame(4, 1, gen)), subspace(random_frame(4, 1, gen))
        with pytest.raises(InvalidArgument):
            sigma_elem(E, F, 2)

    @settings(max_examples=25, deadline=None)
    @given(seed=seeds, n=st.integers(2, 7), data=st.data())
    def test_sigma_is_orbit_invariant(self, seed, n, data):
        gen = np.random.default_rng(seed)
        d_e = data.draw(st.integers(1, n - 1))
        d_f = data.draw(st.integers(1, n - 1))
        e, f, g = random_frame(n, d_e, gen), random_frame(n, d_f, gen), random_orthogonal(n, gen)
        E, F = subspace(e), subspace(f)
        m = principal_angles(E, F).m
        for i in range(m + 1):
            moved = sigma_elem(E.transformed(g), F.transformed(g), i)
            assert abs(sigma_elem(E, F, i) - moved) <= 1e-10

    def test_squared_cosine_top_sigma(self, gen):
        # E of dimension 2 inside R^5 against F of dimension 3: no forced ones, m = 2.
        E, F = subspace(random_frame(5, 2, gen)), subspace(random_frame(5, 3, gen))
        assert_allclose(squared_cosine(E, F), sigma_elem(E, F, 2), atol=1e-12)
        assert_allclose(squared_cosine(F, E), squared_cosine(E, F))

    def test_batch_sigma_matches_scalar(self, gen):
        a = np.stack([random_frame(5, 2, gen) for _ in range(6)])
        b = np.stack([random_frame(5, 3, gen) for _ in range(6)])
        batched = batch_sigma(a, b, 2)
        for j in range(6):
            for i in range(3):
                scalar = sigma_elem(subspace(a[j]), subspace(b[j]), i)
                assert_allclose(batched[j, i], scalar, atol=1e-12)


class TestSigmaTilde:
    @pytest.mark.parametrize("alpha", [0.1, 0.7, 2.0])
    def test_lines_in_the_plane(self, alpha):
        E = orthonormal_frame([[np.cos(alpha), np.sin(alpha)]])
        F = orthonormal_frame([[1.0, 0.0]])
        assert_allclose(sigma_tilde(1, E, F), -np.sin(2 * alpha) / 2, atol=1e-12)

    def test_independent_of_internal_orientations(self, gen):
        E = OrientedSubspace(base=subspace(random_frame(4, 2, gen)))
        F = OrientedSubspace(base=subspace(random_frame(4, 2, gen)))
        value = sigma_tilde(1, E, F)
        assert_allclose(sigma_tilde(1, E.reversed(), F), value, atol=1e-12)
        assert_allclose(sigma_tilde(1, E, F.reversed()), value, atol=1e-12)
        assert_allclose(sigma_tilde(-1, E, F), -value, atol=1e-12)

    def test_bounded_by_cosines(self, gen):
        for _ in range(20):
            E, F = subspace(random_frame(6, 3, gen)), subspace(random_frame(6, 3, gen))
            assert abs(sigma_tilde(1, E, F)) <= 1.0 + 1e-12

    def test_rotation_invariance(self, gen):
        e, f = random_frame(4, 2, gen), random_frame(4, 2, gen)
        g = random_orthogonal(4, gen)
        if np.linalg.det(g) < 0:
            g[:, 0] *= -1.0
        moved = batch_sigma_tilde((g @ e)[None], (g @ f)[None])
        assert_allclose(moved, batch_sigma_tilde(e[None], f[None]), atol=1e-12)

    def test_needs_half_dimensions(self, gen):
        with pytest.raises(InvalidArgument):
            sigma_tilde(1, subspace(random_frame(4, 1, gen)), subspace(random_frame(4, 2, gen)))
        with pytest.raises(InvalidArgument):
            sigma_tilde(1, subspace(random_frame(3, 1, gen)), subspace(random_frame(3, 1, gen)))


class TestMixedDiscriminant:
    def test_equal_arguments_give_determinant(self, gen):
        a = gen.standard_normal((4, 4))
        assert_allclose(mixed_discriminant([a], [4]), np.linalg.det(a))
        assert_allclose(mixed_discriminant([a, a], [2, 2]), np.linalg.det(a))

    def test_diagonal_pair(self):
        a, b = np.diag([1.0, 2.0]), np.diag([3.0, 5.0])
        assert_allclose(mixed_discriminant([a, b]), (1.0 * 5.0 + 2.0 * 3.0) / 2)

    def test_polynomial_expansion(self, gen):
        a, b = gen.standard_normal((3, 3)), gen.standard_normal((3, 3))
        for s, t in [(1.0, 1.0), (0.5, 2.0), (-1.5, 0.3)]:
            expanded = sum(
                comb(3, r) * s**r * t ** (3 - r) * mixed_discriminant([a, b], [r, 3 - r])
                for r in range(4)
            )
            assert_allclose(expanded, np.linalg.det(s * a + t * b), rtol=1e-10)

    def test_identity_slots(self, gen):
        # D(A[1], I[2]) = tr(A) / 3 for 3 x 3 matrices.
        a = gen.standard_normal((3, 3))
        assert_allclose(mixed_discriminant([a, np.eye(3)], [1, 2]), np.trace(a) / 3)

    def test_broadcast_over_samples(self, gen):
        stack = gen.standard_normal((5, 3, 3))
        values = mixed_discriminant([stack, np.eye(3)], [3, 0])
        assert values.shape == (5,)
        assert_allclose(values, np.linalg.det(stack))

    def test_empty_matrices(self):
        assert mixed_discriminant([np.zeros((0, 0))], [0]) == 1.0

    def test_bad_multiplicities(self):
        with pytest.raises(InvalidArgument):
            mixed_discriminant([np.eye(3), np.eye(3)], [1, 1])


class TestBatchedFrames:
    def test_complement_frames(self, gen):
        frames = np.stack([random_frame(5, 2, gen) for _ in range(4)])
        comp = complement_frames(frames)
        assert comp.shape == (4, 5, 3)
        assert_allclose(np.swapaxes(frames, 1, 2) @ comp, 0.0, atol=1e-12)

    def test_oriented_complement_is_positive(self, gen):
        v = gen.standard_normal((10, 4))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        t = oriented_complement(v)
        dets = np.linalg.det(np.concatenate([v[:, :, None], t], axis=2))
        assert_allclose(dets, 1.0, atol=1e-12)
