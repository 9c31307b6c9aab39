import math

import numpy as np
import pytest

from fock_splitter.classical import SymmetricSplitter
from fock_splitter.config import config
from fock_splitter.exceptions import DomainError, PhotonLimitError, TruncationError
from fock_splitter.quantum import (
    FockPair,
    SparsePolynomial,
    TwoModeState,
    annihilation_chain,
    apply_splitter,
    coherent_passthrough_fidelity,
    coherent_two_mode,
    expand_output_state,
    fock_state,
    post_select_port3,
    two_input_distribution,
)


def random_state(rng, max_photons):
    amplitudes = {}
    for a in range(max_photons + 1):
        for b in range(max_photons + 1 - a):
            amplitudes[a, b] = complex(*rng.normal(size=2))
    norm = math.sqrt(sum(abs(v) ** 2 for v in amplitudes.values()))
    return TwoModeState(n_max=max_photons, amplitudes={k: v / norm for k, v in amplitudes.items()})


def collected(state, total):
    return np.array([state.amplitude(m, total - m) for m in range(total + 1)])


class TestSparsePolynomial:
    def test_convolution(self):
        product = SparsePolynomial.port1_power(1) * SparsePolynomial.port2_power(1)
        # (rho x + tau y)(tau x + rho y) = rho tau x^2 + (rho^2 + tau^2) x y + rho tau y^2
        assert dict(product) == {(2, 1): 1, (1, 2): 1, (1, 0): 1, (0, 1): 1}

    def test_binomial_rows(self):
        assert dict(SparsePolynomial.port1_power(3)) == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}
        assert dict(SparsePolynomial.port2_power(2)) == {(0, 2): 1, (1, 1): 2, (2, 0): 1}


class TestExpandOutputState:
    def test_hong_ou_mandel_amplitudes(self, splitters):
        for s in splitters(10):
            state = expand_output_state(FockPair(n1=1, n2=1), s)
            assert np.isclose(state.amplitude(0, 2), math.sqrt(2) * s.rho * s.tau, atol=1e-14)
            assert np.isclose(state.amplitude(1, 1), s.rho ** 2 + s.tau ** 2, atol=1e-14)
            assert np.isclose(state.amplitude(2, 0), math.sqrt(2) * s.rho * s.tau, atol=1e-14)

    def test_vacuum(self, balanced):
        state = expand_output_state(FockPair(n1=0, n2=0), balanced)
        assert dict(state.amplitudes) == {(0, 0): 1 + 0j}

    def test_two_one_balanced(self, balanced):
        state = expand_output_state(FockPair(n1=2, n2=1), balanced)
        probabilities = np.abs(collected(state, 3)) ** 2
        assert np.allclose(probabilities, [3 / 8, 1 / 8, 1 / 8, 3 / 8], atol=1e-14)

    def test_photon_number_conservation(self, splitters):
        for s in splitters(5):
            for n1, n2 in [(3, 4), (6, 0), (0, 2), (5, 5)]:
                state = expand_output_state(FockPair(n1=n1, n2=n2), s)
                assert state.photon_numbers() == (n1 + n2,)
                assert math.isclose(state.norm_squared(), 1.0, abs_tol=1e-12)

    def test_agrees_with_path_sum(self, splitters):
        for s in splitters(50):
            for n1 in range(13):
                for n2 in range(13 - n1):
                    oracle = collected(expand_output_state(FockPair(n1=n1, n2=n2), s), n1 + n2)
                    path_sum = two_input_distribution((n1, n2), s).as_array()
                    assert np.allclose(oracle, path_sum, rtol=0.0, atol=1e-10)

    def test_port3_marginal(self, balanced):
        marginal = expand_output_state(FockPair(n1=2, n2=1), balanced).port3_probabilities()
        assert list(marginal) == [0, 1, 2, 3]
        assert np.allclose(list(marginal.values()), [3 / 8, 1 / 8, 1 / 8, 3 / 8], atol=1e-14)

    def test_rejects_large_inputs(self, balanced):
        with pytest.raises(PhotonLimitError):
            expand_output_state(FockPair(n1=config.ORACLE_MAX_PHOTONS, n2=1), balanced)


class TestApplySplitter:
    def test_vacuum(self, balanced):
        state = apply_splitter(fock_state(0, 0), balanced)
        assert dict(state.amplitudes) == {(0, 0): 1 + 0j}

    def test_hong_ou_mandel(self, balanced):
        state = apply_splitter(fock_state(1, 1), balanced)
        assert state.amplitude(1, 1) == 0j
        assert math.isclose(abs(state.amplitude(2, 0)) ** 2, 0.5)
        assert math.isclose(abs(state.amplitude(0, 2)) ** 2, 0.5)

    def test_preserves_norm(self, rng, splitters):
        for s in splitters(20):
            state = random_state(rng, 12)
            output = apply_splitter(state, s)
            assert math.isclose(output.norm_squared(), 1.0, abs_tol=1e-10)

    def test_inverse_round_trip(self, rng, splitters):
        for s in splitters(10):
            state = random_state(rng, 6)
            back = apply_splitter(apply_splitter(state, s), s.inverse())
            for mode in set(state.amplitudes) | set(back.amplitudes):
                assert abs(back.amplitude(*mode) - state.amplitude(*mode)) <= 1e-10

    def test_sectors_map_to_themselves(self, splitters):
        s = splitters(1)[0]
        state = TwoModeState(n_max=3, amplitudes={(1, 0): 0.6 + 0j, (2, 1): 0.8j})
        assert apply_splitter(state, s).photon_numbers() == (1, 3)


class TestCoherentStates:
    def test_vacuum(self):
        state = coherent_two_mode(0, 0, 4)
        assert dict(state.amplitudes) == {(0, 0): 1 + 0j}
        assert state.norm_deficit == 0.0

    def test_single_mode_poisson_weights(self):
        state = coherent_two_mode(1.0, 0.0, 20)
        for a in range(21):
            assert math.isclose(abs(state.amplitude(a, 0)) ** 2, math.exp(-1) / math.factorial(a), rel_tol=1e-12)

    def test_truncation_deficit(self):
        state = coherent_two_mode(1.2, 0.5j, 25)
        assert state.norm_deficit <= 1e-10
        assert math.isclose(state.norm_squared() + state.norm_deficit, 1.0, abs_tol=1e-12)

    def test_rejects_inadequate_truncation(self):
        with pytest.raises(TruncationError):
            coherent_two_mode(3.0, 0.0, 20)
        with pytest.raises(DomainError):
            coherent_two_mode(0.0, 0.0, -1)

    def test_passthrough_vacuum(self, balanced):
        assert coherent_passthrough_fidelity(0, 0, balanced, 10) == 1.0

    @pytest.mark.parametrize(
        "gamma1, gamma2, splitter",
        [
            (1.2, 0.5j, SymmetricSplitter.balanced()),
            (0.8, 0.0, SymmetricSplitter(0.1, 1j * math.sqrt(0.99))),
        ],
    )
    def test_passthrough(self, gamma1, gamma2, splitter):
        fidelity = coherent_passthrough_fidelity(gamma1, gamma2, splitter, 25)
        assert fidelity >= 1 - 1e-8
        assert fidelity <= 1 + 1e-12

    def test_passthrough_propagates_truncation_error(self, balanced):
        with pytest.raises(TruncationError):
            coherent_passthrough_fidelity(4.0, 0.0, balanced, 10)


class TestAnnihilationChain:
    def test_post_selection(self, balanced):
        state = expand_output_state(FockPair(n1=3), balanced)
        port4 = post_select_port3(state, 1)
        assert list(port4) == [2]
        assert np.isclose(port4[2], math.sqrt(3) * balanced.rho * balanced.tau ** 2)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_weak_splitter_recovers_sqrt_factorial(self, n):
        s = SymmetricSplitter.from_polar(1e-3)
        ratio = abs(annihilation_chain(n, n, s)) / abs(s.rho) ** n
        assert math.isclose(ratio, math.sqrt(math.factorial(n)), rel_tol=0.01)

    def test_partial_chain(self):
        s = SymmetricSplitter.from_polar(1e-3)
        ratio = abs(annihilation_chain(6, 2, s)) / abs(s.rho) ** 2
        assert math.isclose(ratio, math.sqrt(6 * 5), rel_tol=0.01)

    def test_rejects_too_many_steps(self, balanced):
        with pytest.raises(DomainError):
            annihilation_chain(2, 3, balanced)


class TestTwoModeState:
    def test_rejects_norm_above_one(self):
        with pytest.raises(DomainError):
            TwoModeState(n_max=1, amplitudes={(0, 0): 1 + 0j, (1, 0): 0.5 + 0j})

    def test_accepts_rounded_unit_norm(self):
        state = TwoModeState(n_max=3, amplitudes={(1, 0): 0.6 + 0j, (2, 1): 0.8j})
        assert math.isclose(state.norm_squared(), 1.0, abs_tol=1e-15)

    def test_unitary_outputs_keep_tight_bound(self, splitters):
        for s in splitters(5):
            state = expand_output_state(FockPair(n1=5, n2=5), s)
            assert state.norm_bound <= 1 + 1e-9
            assert state.norm_squared() <= state.norm_bound + 1e-12

    def test_gain_splitter_raises_bound(self):
        amplifying = SymmetricSplitter(1.0, 0.5)
        state = apply_splitter(fock_state(1, 0), amplifying)
        assert math.isclose(state.norm_squared(), 1.25, rel_tol=1e-14)
        assert state.norm_bound >= state.norm_squared()
