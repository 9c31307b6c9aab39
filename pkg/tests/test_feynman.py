import math

import numpy as np
import pytest

from fock_splitter.classical import SymmetricSplitter
from fock_splitter.config import config
from fock_splitter.exceptions import DomainError, PhotonLimitError
from fock_splitter.quantum import feynman, operators
from fock_splitter.quantum import (
    FockPair,
    OutputDistribution,
    cell_count_approx_error,
    path_sum_terms,
    poisson_reference,
    single_input_distribution,
    streamlined_terms,
    total_variation_distance,
    two_input_distribution,
    two_input_distribution_streamlined,
)


def splitter_with_reflectance(reflectance: float) -> SymmetricSplitter:
    return SymmetricSplitter.from_polar(math.sqrt(reflectance), 0.0, math.sqrt(1.0 - reflectance), math.pi / 2)


class TestSingleInput:
    @pytest.mark.parametrize(
        "n, expected",
        [
            (2, [1 / 4, 1 / 2, 1 / 4]),
            (3, [1 / 8, 3 / 8, 3 / 8, 1 / 8]),
        ],
    )
    def test_balanced_binomial(self, balanced, n, expected):
        probabilities = single_input_distribution(n, balanced).probabilities
        assert np.allclose(probabilities, expected, rtol=0.0, atol=1e-12)

    def test_vacuum(self, splitters):
        for s in splitters(5):
            distribution = single_input_distribution(0, s)
            assert distribution.amplitudes == (1 + 0j,)

    def test_matches_two_input_with_empty_port(self, splitters):
        for s in splitters(10):
            for n in range(12):
                single = single_input_distribution(n, s).as_array()
                double = two_input_distribution(FockPair(n1=n), s).as_array()
                assert np.allclose(single, double, rtol=0.0, atol=1e-12)

    def test_large_n_is_normalized(self):
        s = splitter_with_reflectance(0.001)
        distribution = single_input_distribution(10_000, s)
        assert distribution.norm_residual <= max(config.NORMALIZATION_TOL, distribution.rounding_bound)
        assert distribution.rounding_bound < 1e-8
        assert all(math.isfinite(p) for p in distribution.probabilities)

    def test_limits(self):
        with pytest.raises(PhotonLimitError):
            single_input_distribution(config.MAX_SINGLE_INPUT_PHOTONS + 1, SymmetricSplitter.balanced())
        with pytest.raises(DomainError):
            single_input_distribution(-1, SymmetricSplitter.balanced())


class TestTwoInput:
    def test_hong_ou_mandel(self, rng):
        for phase in rng.uniform(-math.pi, math.pi, size=20):
            s = SymmetricSplitter.from_polar(math.sqrt(0.5), phase)
            probabilities = two_input_distribution((1, 1), s).probabilities
            assert probabilities[1] <= 1e-24
            assert math.isclose(probabilities[0], 0.5, abs_tol=1e-12)
            assert math.isclose(probabilities[2], 0.5, abs_tol=1e-12)

    def test_one_one_amplitudes(self, splitters):
        for s in splitters(10):
            amplitudes = two_input_distribution((1, 1), s).amplitudes
            expected = [math.sqrt(2) * s.rho * s.tau, s.rho ** 2 + s.tau ** 2, math.sqrt(2) * s.rho * s.tau]
            assert np.allclose(amplitudes, expected, rtol=0.0, atol=1e-12)

    def test_two_one_balanced(self, balanced):
        probabilities = two_input_distribution((2, 1), balanced).probabilities
        assert np.allclose(probabilities, [3 / 8, 1 / 8, 1 / 8, 3 / 8], rtol=0.0, atol=1e-12)

    def test_normalized_for_small_inputs(self, splitters):
        batch = splitters(200)
        for n1 in range(17):
            for n2 in range(17 - n1):
                for s in batch:
                    distribution = two_input_distribution((n1, n2), s)
                    assert distribution.norm_residual <= config.NORMALIZATION_TOL

    @pytest.mark.parametrize("method", [two_input_distribution, two_input_distribution_streamlined])
    def test_normalized_within_rounding_bound(self, splitters, method):
        batch = splitters(25)
        for n1 in range(31):
            for n2 in range(31):
                for s in batch:
                    distribution = method((n1, n2), s)
                    assert distribution.norm_residual <= max(config.NORMALIZATION_TOL, distribution.rounding_bound)

    def test_large_balanced_input_stays_close_to_unit_norm(self, balanced):
        # Individual terms reach ~2e7 at (30, 30).
        for method in (two_input_distribution, two_input_distribution_streamlined):
            distribution = method((30, 30), balanced)
            assert distribution.norm_residual <= 2e-7

    def test_rounding_bound_is_small_for_small_inputs(self, balanced):
        assert two_input_distribution((3, 2), balanced).rounding_bound < 1e-11

    def test_exchange_symmetry(self, splitters):
        for s in splitters(20):
            for n1, n2 in [(3, 1), (4, 4), (0, 5), (7, 2)]:
                forward = two_input_distribution((n1, n2), s).probabilities
                ports_swapped = two_input_distribution((n2, n1), s).probabilities
                coefficients_swapped = two_input_distribution((n1, n2), s.swapped()).probabilities
                both_swapped = two_input_distribution((n2, n1), s.swapped()).probabilities
                # Either exchange mirrors the distribution; doing both undoes it.
                assert np.allclose(forward, ports_swapped[::-1], rtol=0.0, atol=1e-12)
                assert np.allclose(forward, coefficients_swapped[::-1], rtol=0.0, atol=1e-12)
                assert np.allclose(forward, both_swapped, rtol=0.0, atol=1e-12)

    @pytest.mark.parametrize("n1, n2", [(3, 2), (0, 4), (5, 0)])
    def test_window_and_mirror(self, n1, n2):
        window = two_input_distribution((n1, n2), SymmetricSplitter(0.0, 1.0)).probabilities
        mirror = two_input_distribution((n1, n2), SymmetricSplitter(1.0, 0.0)).probabilities
        assert math.isclose(window[n2], 1.0, rel_tol=1e-12)
        assert math.isclose(sum(window), 1.0, rel_tol=1e-12)
        assert math.isclose(mirror[n1], 1.0, rel_tol=1e-12)
        assert math.isclose(sum(mirror), 1.0, rel_tol=1e-12)

    def test_accepts_fock_pair_and_tuple(self, balanced):
        a = two_input_distribution(FockPair(n1=2, n2=3), balanced)
        b = two_input_distribution((2, 3), balanced)
        assert a.amplitudes == b.amplitudes

    def test_deterministic(self, splitters):
        s = splitters(1)[0]
        assert two_input_distribution((9, 7), s) == two_input_distribution((9, 7), s)

    def test_photon_limit(self, balanced):
        with pytest.raises(PhotonLimitError):
            two_input_distribution((config.MAX_TOTAL_PHOTONS, 1), balanced)

    def test_output_distribution_checks_length(self):
        with pytest.raises(ValueError):
            OutputDistribution(total=2, amplitudes=(1.0, 0.0))


class TestStreamlined:
    def test_termwise_identity(self, splitters):
        for s in splitters(3):
            for n1 in range(21):
                for n2 in range(21):
                    direct = path_sum_terms((n1, n2), s)
                    streamlined = streamlined_terms((n1, n2), s)
                    assert direct.shape == (n1 + 1, n2 + 1)
                    assert np.allclose(direct, streamlined, rtol=1e-12, atol=1e-12)

    def test_five_three(self, splitters):
        s = splitters(1)[0]
        direct = two_input_distribution((5, 3), s).as_array()
        streamlined = two_input_distribution_streamlined((5, 3), s).as_array()
        assert np.allclose(direct, streamlined, rtol=0.0, atol=1e-12)

    def test_vacuum(self, balanced):
        assert two_input_distribution_streamlined((0, 0), balanced).amplitudes == (1 + 0j,)


class TestCellCount:
    def test_single_photon_is_exact(self):
        assert cell_count_approx_error(10 ** 6, 1) == 0.0

    def test_three_photons(self):
        error = cell_count_approx_error(10 ** 6, 3)
        predicted = 3 * 2 / (2 * 10 ** 6)
        assert predicted / 2 <= error <= 2 * predicted

    def test_marginal_regime(self):
        error = cell_count_approx_error(100, 10)
        predicted = 1 - math.exp(-45 / 100)
        assert predicted / 2 <= error <= 2 * predicted

    def test_matches_exact_integers(self):
        for N, m in [(50, 7), (1000, 20), (37, 37)]:
            approx = N ** m / math.factorial(m)
            exact = math.comb(N, m)
            assert math.isclose(cell_count_approx_error(N, m), (approx - exact) / exact, rel_tol=1e-10)

    def test_overflow_is_infinite(self):
        assert cell_count_approx_error(1000, 1000) == math.inf
        assert math.isfinite(cell_count_approx_error(1000, 100))

    @pytest.mark.parametrize("N, m", [(5, 6), (-1, 0), (10 ** 9, 2)])
    def test_rejects(self, N, m):
        with pytest.raises(DomainError):
            cell_count_approx_error(N, m)


class TestPoisson:
    def test_mean(self):
        reference = poisson_reference(400, splitter_with_reflectance(0.01), 30)
        assert math.isclose(reference.mean, 400 * 0.01 / 0.99, abs_tol=1e-9)
        assert reference.cutoff == 30

    def test_no_reflection(self):
        reference = poisson_reference(50, SymmetricSplitter(0.0, 1j), 4)
        assert reference.mean == 0.0
        assert reference.probabilities == (1.0, 0.0, 0.0, 0.0, 0.0)

    def test_weak_splitter_limit(self):
        s = splitter_with_reflectance(0.001)
        exact = single_input_distribution(1000, s).probabilities
        reference = poisson_reference(1000, s, 1000)
        assert total_variation_distance(exact, reference.probabilities) <= 0.01

    @pytest.mark.parametrize("n, reflectance", [(500, 0.01), (2000, 0.001), (800, 0.0125)])
    def test_validity_domain(self, n, reflectance):
        s = splitter_with_reflectance(reflectance)
        exact = single_input_distribution(n, s).probabilities
        reference = poisson_reference(n, s, n)
        bound = max(0.02, 5 * n * reflectance ** 2)
        assert total_variation_distance(exact, reference.probabilities) <= bound

    def test_rejects_mirror(self):
        with pytest.raises(DomainError):
            poisson_reference(10, SymmetricSplitter(1.0, 0.0), 5)

    def test_rejects_cutoff_above_n(self, balanced):
        with pytest.raises(DomainError):
            poisson_reference(10, balanced, 11)


class TestTotalVariation:
    def test_identical(self):
        p = [0.2, 0.3, 0.5]
        assert total_variation_distance(p, p) == 0.0

    def test_disjoint(self):
        assert math.isclose(total_variation_distance([1.0, 0.0], [0.0, 1.0]), 1.0)

    def test_truncated_reference_adds_missing_mass(self):
        # q loses 0.1 to truncation; p carries 0.1 beyond q's support.
        distance = total_variation_distance([0.5, 0.4, 0.1], [0.5, 0.4])
        assert math.isclose(distance, 0.5 * 0.1 + 0.1)


class TestGridCaches:
    @pytest.mark.parametrize(
        "cached",
        [
            feynman._path_sum_grid,
            feynman._path_sum_coefficients,
            feynman._streamlined_grid,
            feynman._streamlined_coefficients,
            operators._expansion_weights,
        ],
    )
    def test_bounded(self, cached):
        maxsize = cached.cache_parameters()["maxsize"]
        assert maxsize is not None and maxsize <= 256

    def test_grid_cache_evicts(self, balanced):
        feynman._path_sum_grid.cache_clear()
        for n in range(40):
            two_input_distribution((n, 1), balanced)
        assert feynman._path_sum_grid.cache_info().currsize <= 8
