"""Creation-operator expansion of the splitter transform on two-mode Fock states.

a1+ = rho a3+ + tau a4+ and a2+ = tau a3+ + rho a4+, so
|n1>|n2> = (a1+)^n1 (a2+)^n2 |0> / sqrt(n1! n2!) expands into a polynomial in
a3+ and a4+. Its integer coefficients are collected exactly and turned into
floats once, keeping this path independent of the log-space path sum.
"""

import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np
from loguru import logger
from scipy import stats

from fock_splitter.classical.models import SymmetricSplitter
from fock_splitter.config import config
from fock_splitter.exceptions import DomainError, PhotonLimitError, TruncationError
from fock_splitter.numerics import log_abs, log_factorial_array, log_power, safe_phase
from fock_splitter.quantum.models import FockPair, TwoModeState

# Expansion weights are tuples of up to (n1 + 1)(n2 + 1) monomials.
_WEIGHT_CACHE_SIZE = 256
_EPS = float(np.finfo(np.float64).eps)
_LOG_FLOAT_MAX = 700.0


def _rounding_ulps(total: int, components: int) -> int:
    """Relative rounding per term: integer powers of rho and tau, the weight, and the sums."""
    return 3 * total + 8 + components


class SparsePolynomial(defaultdict):
    """Integer polynomial in a3+ and rho, multiplied by convolution.

    Keys are (power of a3+, power of rho); the powers of a4+ and tau follow
    from the total photon number.
    """

    def __init__(self):
        super().__init__(int)

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        other_items = list(other.items())
        res = SparsePolynomial()
        for (a_x, a_rho), a_coef in self.items():
            for (b_x, b_rho), b_coef in other_items:
                res[a_x + b_x, a_rho + b_rho] += a_coef * b_coef
        return res

    @classmethod
    def port1_power(cls, n: int) -> "SparsePolynomial":
        """(rho a3+ + tau a4+)^n."""
        poly = cls()
        for j in range(n + 1):
            poly[j, j] = math.comb(n, j)
        return poly

    @classmethod
    def port2_power(cls, n: int) -> "SparsePolynomial":
        """(tau a3+ + rho a4+)^n."""
        poly = cls()
        for j in range(n + 1):
            poly[j, n - j] = math.comb(n, j)
        return poly


@lru_cache(maxsize=_WEIGHT_CACHE_SIZE)
def _expansion_weights(n1: int, n2: int) -> Tuple[Tuple[int, int, float], ...]:
    """(m3, rho power, weight) for every monomial of the expanded input state.

    weight = c * sqrt(m3! m4! / (n1! n2!)), rounded once from an exact rational.
    """
    total = n1 + n2
    poly = SparsePolynomial.port1_power(n1) * SparsePolynomial.port2_power(n2)
    denominator = math.factorial(n1) * math.factorial(n2)
    weights = []
    for (m3, rho_power), coef in sorted(poly.items()):
        squared = Fraction(coef * coef * math.factorial(m3) * math.factorial(total - m3), denominator)
        weights.append((m3, rho_power, math.sqrt(float(squared))))
    return tuple(weights)


def _check_oracle_total(total: int) -> None:
    if total > config.ORACLE_MAX_PHOTONS:
        raise PhotonLimitError(total, config.ORACLE_MAX_PHOTONS, "operator")


def _output_amplitudes(n1: int, n2: int, s: SymmetricSplitter) -> Tuple[Dict[Tuple[int, int], complex], float]:
    """Output amplitudes of |n1>|n2> and the sum of the magnitudes of their terms."""
    total = n1 + n2
    amplitudes: Dict[Tuple[int, int], complex] = defaultdict(complex)
    spread = 0.0
    for m3, rho_power, weight in _expansion_weights(n1, n2):
        term = weight * s.rho ** rho_power * s.tau ** (total - rho_power)
        amplitudes[m3, total - m3] += term
        spread += abs(term)
    return amplitudes, spread


def _norm_gain(s: SymmetricSplitter, total: int) -> float:
    """Largest factor by which the splitter can scale the squared norm of a total-photon state.

    The mode matrix [[rho, tau], [tau, rho]] is normal with eigenvalues rho +- tau.
    """
    sigma = max(abs(s.rho + s.tau), abs(s.rho - s.tau))
    if sigma <= 1.0:
        return 1.0
    return math.exp(min(2 * total * math.log(sigma), _LOG_FLOAT_MAX))


def _output_norm_bound(input_bound: float, gain: float, drift: float) -> float:
    """Bound on the output squared norm given a summed amplitude rounding drift."""
    return input_bound * gain + 2.0 * math.sqrt(input_bound * gain) * drift + drift * drift


def fock_state(n3: int, n4: int) -> TwoModeState:
    """The basis state |n3>|n4>."""
    pair = FockPair(n1=n3, n2=n4)
    return TwoModeState(n_max=max(pair.n1, pair.n2), amplitudes={(pair.n1, pair.n2): 1 + 0j})


def expand_output_state(pair: FockPair, s: SymmetricSplitter) -> TwoModeState:
    """Output state for the input |n1>|n2>, supported on m3 + m4 = n1 + n2."""
    _check_oracle_total(pair.total)
    amplitudes, spread = _output_amplitudes(pair.n1, pair.n2, s)
    drift = _rounding_ulps(pair.total, 1) * _EPS * spread
    return TwoModeState.from_amplitudes(
        amplitudes,
        config.PRUNE_THRESHOLD,
        n_max=pair.total,
        norm_bound=_output_norm_bound(1.0, _norm_gain(s, pair.total), drift),
    )


def apply_splitter(state: TwoModeState, s: SymmetricSplitter) -> TwoModeState:
    """Apply the splitter to every basis component of state and superpose."""
    accumulated: Dict[Tuple[int, int], complex] = defaultdict(complex)
    n_max = 0
    spread = 0.0
    for (a, b), weight in sorted(state.amplitudes.items()):
        _check_oracle_total(a + b)
        n_max = max(n_max, a + b)
        amplitudes, component_spread = _output_amplitudes(a, b, s)
        for mode, amplitude in amplitudes.items():
            accumulated[mode] += weight * amplitude
        spread += abs(weight) * component_spread
    drift = _rounding_ulps(n_max, len(state.amplitudes)) * _EPS * spread

    logger.debug(f"Applied splitter to {len(state.amplitudes)} components")
    return TwoModeState.from_amplitudes(
        accumulated,
        config.PRUNE_THRESHOLD,
        n_max=n_max,
        norm_deficit=state.norm_deficit,
        norm_bound=_output_norm_bound(state.norm_bound, _norm_gain(s, n_max), drift),
    )


def _coherent_mode(gamma: complex, n_max: int) -> np.ndarray:
    a = np.arange(n_max + 1)
    log_mag = -0.5 * abs(gamma) ** 2 + log_power(log_abs(gamma), a) - 0.5 * log_factorial_array(a)
    return np.exp(log_mag) * np.exp(1j * a * safe_phase(gamma))


def _poisson_tail(mean: float, n_max: int) -> float:
    if mean == 0.0:
        return 0.0
    return float(stats.poisson.sf(n_max, mean))


def coherent_two_mode(gamma1: complex, gamma2: complex, n_max: int) -> TwoModeState:
    """Product of Glauber states |gamma1>|gamma2>, each truncated at n_max photons.

    The weight beyond the truncation is reported in norm_deficit, never
    renormalized away.
    """
    if isinstance(n_max, bool) or not isinstance(n_max, (int, np.integer)) or n_max < 0:
        raise DomainError(f"n_max must be a non-negative integer, got {n_max!r}")
    gamma1 = complex(gamma1)
    gamma2 = complex(gamma2)
    for gamma in (gamma1, gamma2):
        if abs(gamma) ** 2 > n_max / 4:
            raise TruncationError(f"|gamma|^2 = {abs(gamma) ** 2:.4g} needs n_max >= {4 * abs(gamma) ** 2:.4g}")

    grid = np.outer(_coherent_mode(gamma1, n_max), _coherent_mode(gamma2, n_max))
    amplitudes = {(int(a), int(b)): complex(grid[a, b]) for a, b in zip(*np.nonzero(grid))}

    tail1 = _poisson_tail(abs(gamma1) ** 2, n_max)
    tail2 = _poisson_tail(abs(gamma2) ** 2, n_max)
    deficit = tail1 + tail2 - tail1 * tail2
    if deficit > config.NORMALIZATION_TOL:
        logger.warning(f"Coherent truncation at n_max={n_max} drops {deficit:.3e} of the norm")
    return TwoModeState.from_amplitudes(amplitudes, config.PRUNE_THRESHOLD, n_max=n_max, norm_deficit=deficit)


def coherent_passthrough_fidelity(gamma1: complex, gamma2: complex, s: SymmetricSplitter, n_max: int) -> float:
    """|<rho g1 + tau g2, tau g1 + rho g2 | U |g1, g2>|^2 for truncated coherent states."""
    actual = apply_splitter(coherent_two_mode(gamma1, gamma2, n_max), s)
    expected = coherent_two_mode(s.rho * gamma1 + s.tau * gamma2, s.tau * gamma1 + s.rho * gamma2, n_max)
    fidelity = abs(expected.inner(actual)) ** 2
    logger.debug(f"Coherent passthrough fidelity {fidelity:.15f}, deficit {actual.norm_deficit:.3e}")
    return fidelity


def post_select_port3(state: TwoModeState, m3: int) -> Dict[int, complex]:
    """Unnormalized port-4 amplitudes conditioned on m3 photons at port 3."""
    return {m4: amplitude for (a, m4), amplitude in sorted(state.amplitudes.items()) if a == m3}


def annihilation_chain(n: int, k: int, s: SymmetricSplitter) -> complex:
    """Amplitude of removing one photon at a time through k successive splitters.

    |n>|0> meets the splitter, one photon is detected at port 3, and the
    port-4 state |n-1> is fed into the next splitter, k times in all.
    """
    if not 0 <= k <= n:
        raise DomainError(f"cannot remove {k} photons from {n}")
    amplitude = 1 + 0j
    for remaining in range(n, n - k, -1):
        output = expand_output_state(FockPair(n1=remaining), s)
        amplitude *= post_select_port3(output, 1).get(remaining - 1, 0j)
    return amplitude

