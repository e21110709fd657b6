import numpy as np
import pytest

from sipmink.errors import DegenerateError, DomainError, NeutralPivotError
from sipmink.minkowski import GeneralizedMinkowskiSpace, max_norm_spacetime, product_plus
from sipmink.norms import NormSpec, SipSpace, norm, sip
from sipmink.numerics import Seed
from sipmink.ortho import (
    OrthoRelation,
    auerbach_basis_2d,
    birkhoff_margin,
    gram_determinant,
    gram_matrix,
    is_orthogonal,
    minkowski_auerbach,
    orthogonal_companion_basis,
    pythagorean_subspace_scan,
    regular_orthogonalization,
)
from sipmink.siip import SiipSpace, siip

E2 = SipSpace.euclidean(2)
E3 = SipSpace.euclidean(3)
MAX2 = SipSpace.max_norm(2)
P3 = SipSpace.pnorm(3.0, 2)

DIAG11 = SiipSpace.diagonal((1, -1))
DIAG21 = SiipSpace.diagonal((1, 1, -1))


def diag_product(space):
    return lambda u, v: siip(space, u, v)


class TestRelations:
    def test_perpendicular_satisfies_everything_euclidean(self):
        x, y = np.array([1.0, 0.0]), np.array([0.0, 1.0])
        for rel in OrthoRelation:
            assert is_orthogonal(E2, rel, x, y, 1e-8)

    def test_pythagorean_triangle(self):
        assert is_orthogonal(E2, OrthoRelation.PYTHAGOREAN, [3.0, 0.0], [0.0, 4.0], 1e-12)

    def test_max_norm_birkhoff_both_ways(self):
        # oracle: min over t of max(1, |t|) = 1, attained on a flat piece
        grid = np.linspace(-4, 4, 2001)
        assert min(max(1.0, abs(t)) for t in grid) == 1.0
        assert is_orthogonal(MAX2, OrthoRelation.BIRKHOFF, [1.0, 0.0], [0.0, 1.0], 1e-9)
        assert is_orthogonal(MAX2, OrthoRelation.BIRKHOFF, [0.0, 1.0], [1.0, 0.0], 1e-9)

    def test_sip_relation_tests_reversed_arguments(self):
        # x | y reads "y orthogonal to x", i.e. [y, x] = 0
        x, y = np.array([1.0, 0.0]), np.array([1.0, 1.0])
        assert not is_orthogonal(E2, OrthoRelation.SIP, x, y, 1e-9)
        assert sip(E2, y, x) == 1.0

    def test_sip_not_symmetric_for_max_norm(self):
        x, y = np.array([1.0, 0.5]), np.array([0.25, 1.0])
        assert is_orthogonal(MAX2, OrthoRelation.SIP, np.array([1.0, 0.0]), np.array([0.0, 1.0]), 1e-9)
        assert sip(MAX2, y, x) != sip(MAX2, x, y)

    def test_roberts_on_dyadic_grid(self):
        assert is_orthogonal(E2, OrthoRelation.ROBERTS, [2.0, 0.0], [0.0, 3.0], 1e-9)
        assert not is_orthogonal(E2, OrthoRelation.ROBERTS, [2.0, 0.0], [1.0, 3.0], 1e-6)

    def test_singer_zero_case(self):
        assert is_orthogonal(E2, OrthoRelation.SINGER, [0.0, 0.0], [1.0, 2.0], 1e-9)

    def test_sip_orthogonality_implies_birkhoff(self, rng):
        # smooth norms: [y, x] = 0 forces |x + t y| >= |x|
        for space in (E2, P3):
            for _ in range(20):
                x = rng.uniform(-2, 2, 2)
                if norm(space, x) < 0.3:
                    continue
                basis = orthogonal_companion_basis(lambda a, b: sip(space, a, b), x)
                y = basis[0]
                assert abs(sip(space, y, x)) <= 1e-9
                mn, _ = birkhoff_margin(space, x, y)
                assert mn >= norm(space, x) - 1e-6


class TestCompanion:
    def test_euclidean_axis(self):
        basis = orthogonal_companion_basis(lambda a, b: float(a @ b), np.array([0.0, 0.0, 1.0]))
        assert len(basis) == 2
        span = np.array(basis)
        assert np.linalg.matrix_rank(span) == 2
        assert all(abs(w[2]) < 1e-12 for w in basis)

    def test_neutral_vector_contained_in_companion(self):
        u = np.array([1.0, 1.0])
        basis = orthogonal_companion_basis(diag_product(DIAG11), u)
        assert len(basis) == 1
        assert diag_product(DIAG11)(basis[0], u) == pytest.approx(0.0, abs=1e-12)
        # u itself lies in the companion span
        coeff = np.linalg.lstsq(np.array(basis).T, u, rcond=None)[0]
        assert np.array(basis).T @ coeff == pytest.approx(u, abs=1e-9)

    def test_remark_space_time_axis(self):
        space = max_norm_spacetime()
        pp = lambda a, b: product_plus(space, a, b)
        basis = orthogonal_companion_basis(pp, np.array([0.0, 0.0, 1.0]))
        assert len(basis) == 2
        for w in basis:
            assert w[2] == pytest.approx(0.0, abs=1e-12)
            assert pp(w, np.array([0.0, 0.0, 1.0])) == pytest.approx(0.0, abs=1e-12)

    def test_degenerate_rejected(self):
        zero_product = lambda a, b: 0.0
        with pytest.raises(DegenerateError):
            orthogonal_companion_basis(zero_product, np.array([1.0, 0.0]))

    def test_dimension_count(self, rng):
        pp = diag_product(DIAG21)
        for _ in range(20):
            u = rng.uniform(-2, 2, 3)
            basis = orthogonal_companion_basis(pp, u)
            assert len(basis) == 2
            assert np.linalg.matrix_rank(np.array(basis)) == 2


class TestRegularOrthogonalization:
    def test_euclidean_identity(self):
        vecs = [np.eye(3)[i] for i in range(3)]
        out = regular_orthogonalization(lambda a, b: float(a @ b), vecs)
        assert np.array(out) == pytest.approx(np.eye(3))

    def test_hand_computed_hyperbolic_case(self):
        out = regular_orthogonalization(diag_product(DIAG11), [np.array([1.0, 0.0]), np.array([1.0, 1.0])])
        assert out[0] == pytest.approx([1.0, 0.0])
        assert out[1] == pytest.approx([0.0, 1.0])

    def test_neutral_start_raises_at_one(self):
        with pytest.raises(NeutralPivotError) as err:
            regular_orthogonalization(diag_product(DIAG11), [np.array([1.0, 1.0])])
        assert err.value.index == 1

    def test_seeded_triples_orthogonal_and_span_preserving(self, rng):
        product = diag_product(DIAG21)
        done = 0
        while done < 50:
            vecs = [rng.uniform(-2, 2, 3) for _ in range(3)]
            dets = [abs(gram_determinant(product, vecs[: k + 1])) for k in range(3)]
            if min(dets) < 1e-2:
                continue
            done += 1
            out = regular_orthogonalization(product, vecs)
            for i in range(3):
                for j in range(3):
                    if i != j:
                        assert abs(product(out[i], out[j])) <= 1e-9
            A = np.array(out).T
            for k in range(3):
                c, res, _, _ = np.linalg.lstsq(A[:, : k + 1], vecs[k], rcond=None)
                assert (res.size == 0) or (float(np.sqrt(res[0])) <= 1e-9)


class TestGram:
    def test_orthonormal_pair(self):
        dot = lambda a, b: float(a @ b)
        assert gram_determinant(dot, [np.array([1.0, 0.0]), np.array([0.0, 1.0])]) == pytest.approx(1.0)

    def test_neutral_vector_gram_vanishes(self):
        assert gram_determinant(diag_product(DIAG11), [np.array([1.0, 1.0])]) == pytest.approx(0.0)

    def test_mixed_signature_pair(self):
        vecs = [np.eye(3)[0], np.eye(3)[2]]
        assert gram_determinant(diag_product(DIAG21), vecs) == pytest.approx(-1.0)

    def test_matrix_entries_are_products(self):
        G = gram_matrix(diag_product(DIAG11), [np.array([1.0, 2.0]), np.array([0.5, -1.0])])
        assert G[0, 1] == pytest.approx(diag_product(DIAG11)(np.array([1.0, 2.0]), np.array([0.5, -1.0])))

    def test_size_capped(self):
        dot = lambda a, b: float(a @ b)
        with pytest.raises(DomainError):
            gram_determinant(dot, [np.eye(7)[i] for i in range(7)])


class TestAuerbach2d:
    def test_euclidean_orthonormal(self):
        u, v = auerbach_basis_2d(NormSpec.euclidean(2))
        assert abs(u[0] * v[1] - u[1] * v[0]) == pytest.approx(1.0, abs=1e-6)
        assert norm(E2, u) == pytest.approx(1.0, abs=1e-12)
        assert norm(E2, v) == pytest.approx(1.0, abs=1e-12)

    def test_max_norm_pair_is_mutually_birkhoff(self):
        u, v = auerbach_basis_2d(NormSpec.max_norm(2))
        for a, b in ((u, v), (v, u)):
            mn, _ = birkhoff_margin(MAX2, a, b)
            assert mn >= norm(MAX2, a) - 1e-5
        # the max-volume pair spans the whole square: |det| = 2
        assert abs(u[0] * v[1] - u[1] * v[0]) == pytest.approx(2.0, abs=1e-5)

    def test_pnorm_pair_is_mutually_birkhoff(self):
        u, v = auerbach_basis_2d(NormSpec.pnorm(3.0, 2))
        for a, b in ((u, v), (v, u)):
            mn, _ = birkhoff_margin(P3, a, b)
            assert mn >= norm(P3, a) - 1e-5


class TestMinkowskiAuerbach:
    def test_pseudo_euclidean_standard_basis(self):
        space = GeneralizedMinkowskiSpace.pseudo_euclidean(2)
        basis = minkowski_auerbach(space)
        assert np.abs(np.array(basis)) == pytest.approx(np.eye(3), abs=1e-9)

    def test_remark_space_standard_basis(self):
        space = max_norm_spacetime()
        basis = minkowski_auerbach(space)
        assert np.abs(np.array(basis)) == pytest.approx(np.eye(3), abs=1e-9)

    def test_span_orthogonality_residual(self, rng):
        space = max_norm_spacetime()
        basis = minkowski_auerbach(space)
        worst = 0.0
        for idx, e in enumerate(basis):
            others = [b for j, b in enumerate(basis) if j != idx]
            for _ in range(100):
                c = rng.uniform(-2, 2, len(others))
                w = sum(ci * bi for ci, bi in zip(c, others))
                worst = max(worst, abs(product_plus(space, w, e)))
        assert worst <= 1e-9

    def test_pnorm_block(self):
        space = GeneralizedMinkowskiSpace.from_norms(NormSpec.pnorm(3.0, 2), NormSpec.euclidean(1))
        basis = minkowski_auerbach(space)
        assert len(basis) == 3

    def test_large_blocks_rejected(self):
        space = GeneralizedMinkowskiSpace.pseudo_euclidean(3)
        with pytest.raises(Exception):
            minkowski_auerbach(space)


class TestPythagoreanScan:
    def test_euclidean_finds_perpendicular_pair(self):
        found = pythagorean_subspace_scan(NormSpec.euclidean(2), 360)
        assert found is not None
        u, v = found
        assert abs(float(u @ v)) <= 1e-7

    def test_max_norm_finds_none(self):
        assert pythagorean_subspace_scan(NormSpec.max_norm(2), 360) is None

    def test_p4_finds_none(self):
        assert pythagorean_subspace_scan(NormSpec.pnorm(4.0, 2), 360) is None

    def test_resolution_floor(self):
        with pytest.raises(DomainError):
            pythagorean_subspace_scan(NormSpec.euclidean(2), 45)
