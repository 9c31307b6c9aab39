from fock_splitter.classical.constraints import (
    complete_family,
    lateral_symmetric_family,
    lossless_residual,
    michelson_amplitudes,
    time_reversal_residuals,
    validate_asymmetric,
    validate_symmetric,
)
from fock_splitter.classical.models import AsymmetricSplitter, ConstraintReport, SymmetricSplitter

__all__ = [
    "AsymmetricSplitter",
    "ConstraintReport",
    "SymmetricSplitter",
    "complete_family",
    "lateral_symmetric_family",
    "lossless_residual",
    "michelson_amplitudes",
    "time_reversal_residuals",
    "validate_asymmetric",
    "validate_symmetric",
]
