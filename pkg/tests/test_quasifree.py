import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fermicorr import (
    Determinant,
    QuasifreeSpec,
    build_quasifree_fock_matrix,
    occupation_probability,
    verify_wick,
)
from fermicorr.quasifree import pattern_probabilities


def det(*indices):
    return Determinant.from_indices(indices)


def unit_vectors(rng, count, d):
    v = rng.normal(size=(count, d)) + 1j * rng.normal(size=(count, d))
    return [row / np.linalg.norm(row) for row in v]


class TestOccupationProbability:
    def test_deterministic_occupation(self):
        spec = QuasifreeSpec(np.array([1.0, 1.0, 0.0, 0.0]))
        assert occupation_probability(spec, det(0, 1)) == 1.0
        assert occupation_probability(spec, det(0, 2)) == 0.0

    def test_two_thirds_pattern(self):
        # probabilities (2/3, 1/3, 2/3, 1/3, 2/3, 1/3) in the original
        # orbital order; patterns quoted 1-based as {1,3,5} and {2,4,6}
        spec = QuasifreeSpec(np.array([2 / 3, 1 / 3, 2 / 3, 1 / 3, 2 / 3, 1 / 3]))
        assert abs(occupation_probability(spec, det(0, 2, 4)) - 64 / 729) < 1e-15
        assert abs(occupation_probability(spec, det(1, 3, 5)) - 1 / 729) < 1e-15

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=8))
    def test_in_unit_interval(self, lams):
        spec = QuasifreeSpec(np.array(lams))
        mask = sum(1 << i for i in range(0, len(lams), 2))
        p = occupation_probability(spec, Determinant(mask))
        assert 0.0 <= p <= 1.0

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="invalid occupation"):
            QuasifreeSpec(np.array([1.1, 0.0]))


class TestPatternProbabilities:
    @pytest.mark.parametrize("d", [1, 4, 8, 12, 16])
    def test_total_probability_one(self, d):
        rng = np.random.default_rng(d)
        spec = QuasifreeSpec(rng.uniform(0, 1, d))
        p = pattern_probabilities(spec)
        assert p.shape == (1 << d,)
        assert abs(math.fsum(p.tolist()) - 1.0) < 1e-12

    def test_sector_masses_below_one(self):
        rng = np.random.default_rng(5)
        d = 8
        spec = QuasifreeSpec(rng.uniform(0, 1, d))
        p = pattern_probabilities(spec)
        by_count = {}
        for mask in range(1 << d):
            by_count.setdefault(bin(mask).count("1"), []).append(p[mask])
        for terms in by_count.values():
            assert math.fsum(terms) <= 1.0 + 1e-12

    def test_matches_elementwise_product(self):
        rng = np.random.default_rng(9)
        d = 6
        spec = QuasifreeSpec(rng.uniform(0, 1, d))
        p = pattern_probabilities(spec)
        for mask in range(1 << d):
            assert abs(p[mask] - occupation_probability(spec, Determinant(mask))) < 1e-15


class TestBuildQuasifreeFockMatrix:
    def test_single_occupied_mode(self):
        rho = build_quasifree_fock_matrix(QuasifreeSpec(np.array([1.0, 0.0])))
        assert np.allclose(rho.diagonal(), [0, 1, 0, 0])

    def test_fair_coins(self):
        rho = build_quasifree_fock_matrix(QuasifreeSpec(np.array([0.5, 0.5])))
        assert np.allclose(rho.diagonal(), [0.25] * 4)

    def test_trace_and_particle_number(self):
        rng = np.random.default_rng(3)
        lam = rng.uniform(0, 1, 10)
        rho = build_quasifree_fock_matrix(QuasifreeSpec(lam))
        diag = rho.diagonal().real
        assert abs(diag.sum() - 1.0) < 1e-12
        counts = np.array([bin(m).count("1") for m in range(1 << 10)])
        assert abs(float(diag @ counts) - lam.sum()) < 1e-10

    def test_commutes_with_number_operator(self):
        import scipy.sparse as sp

        rng = np.random.default_rng(4)
        d = 5
        rho = build_quasifree_fock_matrix(QuasifreeSpec(rng.uniform(0, 1, d))).matrix
        counts = np.array([bin(m).count("1") for m in range(1 << d)], dtype=float)
        nop = sp.diags(counts)
        comm = rho @ nop - nop @ rho
        assert abs(comm).max() == 0.0

    def test_scale_guard(self):
        with pytest.raises(ValueError, match="oracle scale exceeded"):
            build_quasifree_fock_matrix(QuasifreeSpec(np.zeros(21)))


class TestVerifyWick:
    def test_natural_orbital_two_point(self, rng):
        d = 5
        lam = rng.uniform(0, 1, d)
        spec = QuasifreeSpec(lam)
        e0 = np.zeros(d)
        e0[0] = 1.0
        report = verify_wick(spec, [e0], [e0])
        assert abs(report.lhs - lam[0]) < 1e-12
        assert abs(report.rhs - lam[0]) < 1e-12

    def test_unbalanced_op_count_vanishes(self, rng):
        d = 5
        spec = QuasifreeSpec(rng.uniform(0, 1, d))
        report = verify_wick(spec, unit_vectors(rng, 1, d), unit_vectors(rng, 2, d))
        assert report.rhs == 0
        assert abs(report.lhs) < 1e-12

    def test_three_body_factorization(self, rng):
        d = 6
        spec = QuasifreeSpec(rng.uniform(0, 1, d))
        report = verify_wick(spec, unit_vectors(rng, 3, d), unit_vectors(rng, 3, d))
        assert report.difference < 1e-10

    def test_fifty_random_trials(self):
        rng = np.random.default_rng(123)
        d = 6
        worst = 0.0
        for trial in range(50):
            spec = QuasifreeSpec(rng.uniform(0, 1, d))
            m = n = int(rng.integers(1, 4))
            report = verify_wick(spec, unit_vectors(rng, m, d), unit_vectors(rng, n, d))
            worst = max(worst, report.difference)
        assert worst < 1e-10

    def test_scale_guards(self, rng):
        with pytest.raises(ValueError, match="oracle scale exceeded"):
            verify_wick(QuasifreeSpec(np.zeros(13)), [], [])
        spec = QuasifreeSpec(np.full(4, 0.5))
        with pytest.raises(ValueError, match="oracle scale exceeded"):
            verify_wick(spec, unit_vectors(rng, 5, 4), unit_vectors(rng, 5, 4))
