from fock_splitter.numerics.factorials import (
    log_binomial,
    log_binomial_array,
    log_factorial,
    log_factorial_array,
    sqrt_binomial,
)
from fock_splitter.numerics.phasor import (
    LOG_ZERO,
    ComplexAmplitude,
    LogMagnitudePhase,
    complex_pow,
    log_abs,
    log_power,
    multiple_phase_array,
    normalize_phase,
    normalize_phase_array,
    safe_phase,
)

__all__ = [
    "LOG_ZERO",
    "ComplexAmplitude",
    "LogMagnitudePhase",
    "complex_pow",
    "log_abs",
    "log_binomial",
    "log_binomial_array",
    "log_factorial",
    "log_factorial_array",
    "log_power",
    "multiple_phase_array",
    "normalize_phase",
    "normalize_phase_array",
    "safe_phase",
    "sqrt_binomial",
]
