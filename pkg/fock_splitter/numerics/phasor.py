"""Complex amplitudes kept as (log-magnitude, phase) pairs.

Powers such as tau**n for n in the thousands underflow as plain floats, so
they are carried in log space and exponentiated once.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from fock_splitter.exceptions import DomainError

# Probability amplitudes and Fresnel coefficients are plain Python complex numbers.
ComplexAmplitude = complex

# Log-magnitude of an exact zero amplitude.
LOG_ZERO = -math.inf

TWO_PI = 2.0 * math.pi


def normalize_phase(phase: float) -> float:
    """Wrap a phase into (-pi, pi]."""
    wrapped = math.remainder(phase, TWO_PI)
    if wrapped <= -math.pi:
        return math.pi
    return wrapped


def normalize_phase_array(phases: np.ndarray) -> np.ndarray:
    """Vectorized normalize_phase."""
    wrapped = phases - TWO_PI * np.round(phases / TWO_PI)
    wrapped = np.where(wrapped <= -math.pi, wrapped + TWO_PI, wrapped)
    return np.where(wrapped > math.pi, wrapped - TWO_PI, wrapped)


# 2*pi as hi + mid + lo; n * hi and n * mid are exact for n < 2**13.
_TWO_PI_HI = math.ldexp(math.floor(math.ldexp(TWO_PI, 27)), -27)
_TWO_PI_MID = TWO_PI - _TWO_PI_HI
_TWO_PI_LO = 2.4492935982947064e-16
_VELTKAMP = 2.0 ** 27 + 1.0


def multiple_phase_array(phase: float, k) -> np.ndarray:
    """k * phase wrapped into (-pi, pi] for integer k, without rounding k * phase first.

    phase is split into two 26-bit halves so each product with k < 2**14 is
    exact, and the multiple of 2*pi is removed in three pieces.
    """
    c = _VELTKAMP * phase
    hi = c - (c - phase)
    lo = phase - hi
    k = np.asarray(k, dtype=np.float64)
    big = k * hi
    small = k * lo
    turns = np.round(big / TWO_PI)
    reduced = ((big - turns * _TWO_PI_HI) - turns * _TWO_PI_MID) + (small - turns * _TWO_PI_LO)
    return normalize_phase_array(reduced)


def safe_phase(z: complex) -> float:
    """Phase of z in (-pi, pi]; zero amplitudes have phase 0."""
    if z == 0:
        return 0.0
    return normalize_phase(cmath.phase(z))


def log_abs(z: complex) -> float:
    """ln|z|, with LOG_ZERO for an exact zero."""
    magnitude = abs(z)
    if magnitude == 0.0:
        return LOG_ZERO
    return math.log(magnitude)


def log_power(log_base: float, exponents: np.ndarray) -> np.ndarray:
    """k * log_base for an array of non-negative k, with 0 * LOG_ZERO taken as 0."""
    exponents = np.asarray(exponents)
    out = np.zeros(exponents.shape, dtype=np.float64)
    np.multiply(exponents, log_base, out=out, where=exponents != 0)
    return out


@dataclass(frozen=True)
class LogMagnitudePhase:
    log_mag: float
    phase: float = 0.0

    def __post_init__(self):
        if math.isnan(self.log_mag) or math.isnan(self.phase):
            raise DomainError("log-magnitude and phase must not be NaN")
        phase = 0.0 if self.is_zero else normalize_phase(self.phase)
        object.__setattr__(self, "phase", phase)

    @classmethod
    def from_complex(cls, z: complex) -> "LogMagnitudePhase":
        return cls(log_abs(z), safe_phase(z))

    @property
    def is_zero(self) -> bool:
        return self.log_mag == LOG_ZERO

    @property
    def magnitude(self) -> float:
        return math.exp(self.log_mag)

    def __mul__(self, other: "LogMagnitudePhase") -> "LogMagnitudePhase":
        if not isinstance(other, LogMagnitudePhase):
            return NotImplemented
        return LogMagnitudePhase(self.log_mag + other.log_mag, self.phase + other.phase)

    def scaled(self, log_factor: float) -> "LogMagnitudePhase":
        """Multiply by the positive real exp(log_factor)."""
        return LogMagnitudePhase(self.log_mag + log_factor, self.phase)

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(self.log_mag), self.phase)


def complex_pow(z: complex, k: int) -> LogMagnitudePhase:
    """Return z**k in log space; z**0 is exactly one, 0**k (k > 0) is the zero sentinel."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise DomainError(f"exponent must be a non-negative integer, got {k!r}")
    if k == 0:
        return LogMagnitudePhase(0.0, 0.0)
    if z == 0:
        return LogMagnitudePhase(LOG_ZERO)
    return LogMagnitudePhase(k * math.log(abs(z)), k * cmath.phase(z))
