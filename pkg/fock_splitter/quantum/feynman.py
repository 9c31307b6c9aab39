"""Photon-number distributions from summing indistinguishable-path amplitudes.

Each term is a coefficient times rho^k tau^j. When every factor is a normal
double the coefficient is the square root of an exact integer and the powers
are taken directly; otherwise the term is assembled in log space and
exponentiated once. Terms are then added as ordinary complex numbers because
the interference between them is what the distribution is made of.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from scipy import special, stats

from fock_splitter.classical.models import SymmetricSplitter
from fock_splitter.config import config
from fock_splitter.exceptions import DomainError, PhotonLimitError
from fock_splitter.numerics import (
    log_abs,
    log_binomial_array,
    log_factorial_array,
    log_power,
    multiple_phase_array,
)
from fock_splitter.numerics.phasor import TWO_PI
from fock_splitter.quantum.models import FockPair, OutputDistribution, PoissonReference

# Ulps of error granted per unit of log-space magnitude when bounding rounding.
_ROUNDING_ULPS = 8.0
_EPS = np.finfo(np.float64).eps
# Factors with |ln| below this stay normal doubles.
_DIRECT_LOG_LIMIT = 700.0
# A grid at the two-input photon limit holds about 10 MB.
_GRID_CACHE_SIZE = 8

PairLike = Union[FockPair, Tuple[int, int]]


@dataclass(frozen=True)
class _TermGrid:
    m: np.ndarray
    rho_exp: np.ndarray
    tau_exp: np.ndarray
    log_coef: np.ndarray
    # Sum of the absolute log-factorials entering log_coef.
    log_scale: np.ndarray


def _frozen(*arrays: np.ndarray) -> Tuple[np.ndarray, ...]:
    for array in arrays:
        array.setflags(write=False)
    return arrays


def _indices(n1: int, n2: int) -> Tuple[np.ndarray, np.ndarray]:
    m1, m2 = np.meshgrid(np.arange(n1 + 1), np.arange(n2 + 1), indexing="ij")
    return m1.ravel(), m2.ravel()


def _sqrt_int(value: int) -> float:
    """sqrt of a non-negative integer of any size, rounded once."""
    shift = max(0, value.bit_length() - 106) & ~1
    return math.ldexp(math.sqrt(value >> shift), shift // 2)


@lru_cache(maxsize=_GRID_CACHE_SIZE)
def _path_sum_grid(n1: int, n2: int) -> _TermGrid:
    m1, m2 = _indices(n1, n2)
    m = m1 + m2
    total = n1 + n2
    lf = log_factorial_array
    half = 0.5 * (lf(n1) + lf(n2) + lf(m) + lf(total - m))
    denominator = lf(m1) + lf(m2) + lf(n1 - m1) + lf(n2 - m2)
    return _TermGrid(*_frozen(m, n2 + m1 - m2, n1 - m1 + m2, half - denominator, half + denominator))


@lru_cache(maxsize=_GRID_CACHE_SIZE)
def _path_sum_coefficients(n1: int, n2: int) -> np.ndarray:
    """sqrt(n1! n2! m! (n1+n2-m)!) / (m1! m2! (n1-m1)! (n2-m2)!) from exact integers."""
    total = n1 + n2
    f = [math.factorial(k) for k in range(total + 1)]
    numerator = f[n1] * f[n2]
    coefficients = np.empty((n1 + 1) * (n2 + 1))
    for index, (m1, m2) in enumerate(product(range(n1 + 1), range(n2 + 1))):
        m = m1 + m2
        denominator = f[m1] * f[m2] * f[n1 - m1] * f[n2 - m2]
        coefficients[index] = _sqrt_int(numerator * f[m] * f[total - m] // (denominator * denominator))
    return _frozen(coefficients)[0]


@lru_cache(maxsize=_GRID_CACHE_SIZE)
def _streamlined_grid(n1: int, n2: int) -> _TermGrid:
    m1, m2 = _indices(n1, n2)
    m = m1 + m2
    total = n1 + n2
    lb = log_binomial_array
    lf = log_factorial_array
    log_coef = 0.5 * (lb(n1, m1) + lb(n2, m2) + lb(m, m1) + lb(total - m, n1 - m1))
    log_scale = 0.5 * (
        lf(n1) + lf(m1) + lf(n1 - m1)
        + lf(n2) + lf(m2) + lf(n2 - m2)
        + lf(m) + lf(m1) + lf(m2)
        + lf(total - m) + lf(n1 - m1) + lf(n2 - m2)
    )
    return _TermGrid(*_frozen(m, n2 + m1 - m2, n1 - m1 + m2, log_coef, log_scale))


@lru_cache(maxsize=_GRID_CACHE_SIZE)
def _streamlined_coefficients(n1: int, n2: int) -> np.ndarray:
    total = n1 + n2
    comb = math.comb
    coefficients = np.empty((n1 + 1) * (n2 + 1))
    for index, (m1, m2) in enumerate(product(range(n1 + 1), range(n2 + 1))):
        m = m1 + m2
        squared = comb(n1, m1) * comb(n2, m2) * comb(m, m1) * comb(total - m, n1 - m1)
        coefficients[index] = _sqrt_int(squared)
    return _frozen(coefficients)[0]


def _single_grid(n: int) -> _TermGrid:
    m = np.arange(n + 1)
    lf = log_factorial_array
    log_coef = 0.5 * log_binomial_array(n, m)
    log_scale = 0.5 * (lf(n) + lf(m) + lf(n - m))
    return _TermGrid(m, m, n - m, log_coef, log_scale)


def _single_coefficients(n: int) -> np.ndarray:
    return np.array([_sqrt_int(math.comb(n, m)) for m in range(n + 1)])


def _finite_abs(x: np.ndarray) -> np.ndarray:
    return np.where(np.isfinite(x), np.abs(x), 0.0)


def _fits_float(*logs: np.ndarray) -> bool:
    """True when every finite log-magnitude lies inside the normal double range."""
    return all(_finite_abs(values).max(initial=0.0) < _DIRECT_LOG_LIMIT for values in logs)


def _evaluate(
    grid: _TermGrid, s: SymmetricSplitter, coefficients: Callable[[], np.ndarray]
) -> Tuple[np.ndarray, np.ndarray]:
    """Return the complex terms and a per-term relative rounding bound."""
    rho_part = log_power(log_abs(s.rho), grid.rho_exp)
    tau_part = log_power(log_abs(s.tau), grid.tau_exp)
    phases = np.exp(
        1j * (multiple_phase_array(s.rho_phase, grid.rho_exp) + multiple_phase_array(s.tau_phase, grid.tau_exp))
    )

    if _fits_float(grid.log_coef, rho_part, tau_part):
        magnitudes = coefficients() * np.power(abs(s.rho), grid.rho_exp) * np.power(abs(s.tau), grid.tau_exp)
        magnitude_error = 1.0
    else:
        magnitudes = np.exp(grid.log_coef + rho_part + tau_part)
        magnitude_error = 1.0 + grid.log_scale + _finite_abs(rho_part) + _finite_abs(tau_part)
    return magnitudes * phases, _ROUNDING_ULPS * _EPS * (magnitude_error + TWO_PI)


def _accumulate(grid: _TermGrid, terms: np.ndarray, relative_error: np.ndarray, total: int) -> OutputDistribution:
    length = total + 1
    re = np.bincount(grid.m, weights=terms.real, minlength=length)
    im = np.bincount(grid.m, weights=terms.imag, minlength=length)
    # Per-term error plus the error of adding up to max(count) terms per m.
    summands = np.bincount(grid.m, minlength=length).max()
    relative_error = relative_error + 2.0 * _EPS * summands
    delta = np.bincount(grid.m, weights=np.abs(terms) * relative_error, minlength=length)
    bound = float(np.sum(2.0 * delta + delta * delta)) + length * _EPS
    distribution = OutputDistribution(total=total, amplitudes=(re + 1j * im).tolist(), rounding_bound=bound)

    residual = distribution.norm_residual
    if residual > max(config.NORMALIZATION_TOL, bound):
        logger.warning(f"Normalization residual {residual:.3e} exceeds rounding bound {bound:.3e}")
    return distribution


def _as_pair(pair: PairLike) -> FockPair:
    if isinstance(pair, FockPair):
        return pair
    n1, n2 = pair
    return FockPair(n1=n1, n2=n2)


def _check_total(total: int, limit: int, path: str) -> None:
    if total > limit:
        raise PhotonLimitError(total, limit, path)


def single_input_distribution(n: int, s: SymmetricSplitter) -> OutputDistribution:
    """|n>|0> input: A(m) = sqrt(C(n, m)) rho^m tau^(n-m)."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"photon count must be a non-negative integer, got {n!r}")
    n = int(n)
    _check_total(n, config.MAX_SINGLE_INPUT_PHOTONS, "single-input")
    grid = _single_grid(n)
    terms, relative_error = _evaluate(grid, s, lambda: _single_coefficients(n))
    return _accumulate(grid, terms, relative_error, n)


def path_sum_terms(pair: PairLike, s: SymmetricSplitter) -> np.ndarray:
    """Term grid indexed [m1, m2] of the two-input path sum."""
    pair = _as_pair(pair)
    _check_total(pair.total, config.MAX_TOTAL_PHOTONS, "path-sum")
    terms, _ = _evaluate(_path_sum_grid(pair.n1, pair.n2), s, lambda: _path_sum_coefficients(pair.n1, pair.n2))
    return terms.reshape(pair.n1 + 1, pair.n2 + 1)


def streamlined_terms(pair: PairLike, s: SymmetricSplitter) -> np.ndarray:
    """Term grid indexed [m1, m2] using the square root of four binomials."""
    pair = _as_pair(pair)
    _check_total(pair.total, config.MAX_TOTAL_PHOTONS, "path-sum")
    terms, _ = _evaluate(
        _streamlined_grid(pair.n1, pair.n2), s, lambda: _streamlined_coefficients(pair.n1, pair.n2)
    )
    return terms.reshape(pair.n1 + 1, pair.n2 + 1)


def two_input_distribution(pair: PairLike, s: SymmetricSplitter) -> OutputDistribution:
    """|n1>|n2> input, summing over every (m1, m2) with m1 + m2 = m.

    Each term is
        sqrt(n1! n2! m! (n1+n2-m)!) / (m1! m2! (n1-m1)! (n2-m2)!)
            * rho^(n2+m1-m2) * tau^(n1-m1+m2).
    """
    pair = _as_pair(pair)
    _check_total(pair.total, config.MAX_TOTAL_PHOTONS, "path-sum")
    grid = _path_sum_grid(pair.n1, pair.n2)
    terms, relative_error = _evaluate(grid, s, lambda: _path_sum_coefficients(pair.n1, pair.n2))
    logger.debug(f"Path sum for ({pair.n1}, {pair.n2}): {terms.size} terms")
    return _accumulate(grid, terms, relative_error, pair.total)


def two_input_distribution_streamlined(pair: PairLike, s: SymmetricSplitter) -> OutputDistribution:
    """Same distribution with coefficients sqrt(C(n1,m1) C(n2,m2) C(m,m1) C(n1+n2-m, n1-m1))."""
    pair = _as_pair(pair)
    _check_total(pair.total, config.MAX_TOTAL_PHOTONS, "path-sum")
    grid = _streamlined_grid(pair.n1, pair.n2)
    terms, relative_error = _evaluate(grid, s, lambda: _streamlined_coefficients(pair.n1, pair.n2))
    return _accumulate(grid, terms, relative_error, pair.total)


def cell_count_approx_error(N: int, m: int) -> float:
    """Relative error of N^m/m! as an approximation to C(N, m).

    C(N, m) = (N^m/m!) * prod_{j<m} (1 - j/N), so the error is
    exp(-sum log1p(-j/N)) - 1, which stays accurate when it is tiny.
    Errors beyond float range come back as inf.
    """
    for name, value in (("N", N), ("m", m)):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 0:
            raise DomainError(f"{name} must be a non-negative integer, got {value!r}")
    if m > N:
        raise DomainError(f"m={m} exceeds the cell count N={N}")
    if N > config.MAX_CELL_COUNT:
        raise DomainError(f"cell count {N} exceeds {config.MAX_CELL_COUNT}")

    if m <= 1_000_000:
        log_product = math.fsum(np.log1p(-np.arange(m, dtype=np.float64) / N))
    else:
        log_product = float(special.gammaln(N + 1) - special.gammaln(N - m + 1)) - m * math.log(N)
    try:
        return math.expm1(-log_product)
    except OverflowError:
        return math.inf


def poisson_reference(n: int, s: SymmetricSplitter, cutoff: int) -> PoissonReference:
    """Coherent-state limit of the reflected photon count, mean n|rho/tau|^2."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"photon count must be a non-negative integer, got {n!r}")
    if isinstance(cutoff, bool) or not isinstance(cutoff, (int, np.integer)) or not 0 <= cutoff <= n:
        raise DomainError(f"cutoff must lie in [0, {n}], got {cutoff!r}")
    if s.tau == 0:
        raise DomainError("a perfect mirror (tau = 0) has no Poisson limit")

    mean = n * abs(s.rho) ** 2 / abs(s.tau) ** 2
    if mean == 0.0:
        probabilities = np.zeros(cutoff + 1)
        probabilities[0] = 1.0
    else:
        probabilities = stats.poisson.pmf(np.arange(cutoff + 1), mean)
    return PoissonReference(mean=mean, probabilities=tuple(float(p) for p in probabilities))


def total_variation_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """Half the L1 distance between p and a possibly truncated q.

    Mass of p beyond q's support enters the sum, and mass missing from q
    is added in full.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    k = min(p.size, q.size)
    head = math.fsum(np.abs(p[:k] - q[:k]))
    tails = math.fsum(p[k:]) + math.fsum(q[k:])
    missing = max(0.0, 1.0 - math.fsum(q))
    return 0.5 * (head + tails) + missing
