import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeInt, field_validator

from fock_splitter.exceptions import DomainError
from fock_splitter.numerics import ComplexAmplitude

Mode = Tuple[int, int]

# Squared norms may exceed norm_bound by this much.
_NORM_SLACK = 1e-12


class FockPair(BaseModel):
    """Number states |n1> and |n2> arriving at input ports 1 and 2."""

    model_config = ConfigDict(frozen=True)

    n1: NonNegativeInt
    n2: NonNegativeInt = 0

    @property
    def total(self) -> int:
        return self.n1 + self.n2

    def swapped(self) -> "FockPair":
        return FockPair(n1=self.n2, n2=self.n1)


@dataclass(frozen=True)
class OutputDistribution:
    """Amplitudes A(m) for m photons at port 3 and total - m at port 4."""

    total: int
    amplitudes: Tuple[ComplexAmplitude, ...]
    # Bound on |sum |A|^2 - 1| attributable to rounding in the term sum.
    rounding_bound: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", tuple(complex(a) for a in self.amplitudes))
        if len(self.amplitudes) != self.total + 1:
            raise ValueError(
                f"expected {self.total + 1} amplitudes for {self.total} photons, "
                f"got {len(self.amplitudes)}"
            )

    @property
    def probabilities(self) -> Tuple[float, ...]:
        return tuple(abs(a) ** 2 for a in self.amplitudes)

    @property
    def norm_residual(self) -> float:
        return abs(math.fsum(self.probabilities) - 1.0)

    def amplitude(self, m: int) -> complex:
        return self.amplitudes[m]

    def as_array(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=np.complex128)


class PoissonReference(BaseModel):
    """Poisson photon statistics with mean n|rho/tau|^2, truncated at a cutoff."""

    model_config = ConfigDict(frozen=True)

    mean: float
    probabilities: Tuple[float, ...]

    @field_validator("probabilities")
    @classmethod
    def _sub_stochastic(cls, probabilities: Tuple[float, ...]) -> Tuple[float, ...]:
        if any(not 0.0 <= p <= 1.0 for p in probabilities):
            raise ValueError("every probability must lie in [0, 1]")
        if math.fsum(probabilities) > 1.0 + 1e-12:
            raise ValueError("truncated probabilities must not sum above 1")
        return probabilities

    @property
    def cutoff(self) -> int:
        return len(self.probabilities) - 1


@dataclass(frozen=True)
class TwoModeState:
    """A truncated two-mode Fock state stored as a sparse (m3, m4) -> amplitude map."""

    n_max: int
    amplitudes: Mapping[Mode, ComplexAmplitude] = field(default_factory=dict)
    # Norm lost to truncation and pruning, surfaced rather than renormalized.
    norm_deficit: float = 0.0
    # Upper limit on norm_squared(); splitter outputs carry gain and rounding allowances.
    norm_bound: float = 1.0

    def __post_init__(self):
        for m3, m4 in self.amplitudes:
            if not (0 <= m3 <= self.n_max and 0 <= m4 <= self.n_max):
                raise ValueError(f"component ({m3}, {m4}) outside truncation n_max={self.n_max}")
        norm_squared = math.fsum(abs(a) ** 2 for a in self.amplitudes.values())
        if not norm_squared <= self.norm_bound + _NORM_SLACK:
            raise DomainError(f"squared norm {norm_squared!r} exceeds {self.norm_bound!r}")
        object.__setattr__(self, "amplitudes", MappingProxyType(dict(self.amplitudes)))

    @classmethod
    def from_amplitudes(
        cls,
        amplitudes: Dict[Mode, complex],
        prune_threshold: float,
        n_max: Optional[int] = None,
        norm_deficit: float = 0.0,
        norm_bound: float = 1.0,
    ) -> "TwoModeState":
        """Drop components below prune_threshold and count their weight as deficit."""
        kept = {}
        pruned = 0.0
        for mode, amplitude in amplitudes.items():
            if abs(amplitude) < prune_threshold:
                pruned += abs(amplitude) ** 2
            else:
                kept[mode] = complex(amplitude)
        if n_max is None:
            n_max = max((max(mode) for mode in kept), default=0)
        return cls(n_max=n_max, amplitudes=kept, norm_deficit=norm_deficit + pruned, norm_bound=norm_bound)

    def amplitude(self, m3: int, m4: int) -> complex:
        return self.amplitudes.get((m3, m4), 0j)

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amplitudes.values())

    def inner(self, other: "TwoModeState") -> complex:
        """<self|other> over the common support."""
        overlap = 0j
        for mode in sorted(self.amplitudes.keys() & other.amplitudes.keys()):
            overlap += self.amplitudes[mode].conjugate() * other.amplitudes[mode]
        return overlap

    def photon_numbers(self) -> Tuple[int, ...]:
        """Distinct total photon numbers m3 + m4 present in the state."""
        return tuple(sorted({m3 + m4 for m3, m4 in self.amplitudes}))

    def port3_probabilities(self) -> Dict[int, float]:
        probabilities: Dict[int, float] = {}
        for (m3, _), amplitude in sorted(self.amplitudes.items()):
            probabilities[m3] = probabilities.get(m3, 0.0) + abs(amplitude) ** 2
        return probabilities
