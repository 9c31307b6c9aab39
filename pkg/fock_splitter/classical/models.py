import cmath
import math
from dataclasses import dataclass, fields
from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict, field_validator

from fock_splitter.exceptions import DomainError
from fock_splitter.numerics import ComplexAmplitude, safe_phase


@dataclass(frozen=True)
class SymmetricSplitter:
    """A lossless splitter whose (rho, tau) apply to both input ports."""

    rho: ComplexAmplitude
    tau: ComplexAmplitude

    def __post_init__(self):
        object.__setattr__(self, "rho", complex(self.rho))
        object.__setattr__(self, "tau", complex(self.tau))
        if not (cmath.isfinite(self.rho) and cmath.isfinite(self.tau)):
            raise DomainError(f"splitter coefficients must be finite, got rho={self.rho!r}, tau={self.tau!r}")

    @classmethod
    def from_polar(
        cls,
        rho_mag: float,
        rho_phase: float = 0.0,
        tau_mag: Optional[float] = None,
        tau_phase: Optional[float] = None,
    ) -> "SymmetricSplitter":
        """Build from magnitudes and phases in radians.

        tau_mag defaults to sqrt(1 - rho_mag**2), tau_phase to rho_phase + pi/2.
        """
        for value in (rho_mag, rho_phase, tau_mag, tau_phase):
            if value is not None and not math.isfinite(value):
                raise DomainError(f"polar splitter parameters must be finite, got {value!r}")
        if tau_mag is None:
            tau_mag = math.sqrt(max(0.0, 1.0 - rho_mag * rho_mag))
        if tau_phase is None:
            tau_phase = rho_phase + math.pi / 2
        return cls(cmath.rect(rho_mag, rho_phase), cmath.rect(tau_mag, tau_phase))

    @classmethod
    def balanced(cls) -> "SymmetricSplitter":
        """rho = 1/sqrt(2), tau = i/sqrt(2)."""
        return cls(complex(math.sqrt(0.5), 0.0), complex(0.0, math.sqrt(0.5)))

    @property
    def reflectance(self) -> float:
        return abs(self.rho) ** 2

    @property
    def transmittance(self) -> float:
        return abs(self.tau) ** 2

    @property
    def rho_phase(self) -> float:
        return safe_phase(self.rho)

    @property
    def tau_phase(self) -> float:
        return safe_phase(self.tau)

    def inverse(self) -> "SymmetricSplitter":
        """The conjugate-transpose splitter (rho*, tau*)."""
        return SymmetricSplitter(self.rho.conjugate(), self.tau.conjugate())

    def swapped(self) -> "SymmetricSplitter":
        """Exchange the roles of reflection and transmission."""
        return SymmetricSplitter(self.tau, self.rho)


@dataclass(frozen=True)
class AsymmetricSplitter:
    """The eight Fresnel coefficients of the four incidence geometries.

    (rho, tau) at first incidence, (rho_p, tau_p) returning from mirror 1,
    (rho_pp, tau_pp) returning from mirror 2 on the backside, and
    (rho_ppp, tau_ppp) for incidence through the second channel.
    """

    rho: ComplexAmplitude
    tau: ComplexAmplitude
    rho_p: ComplexAmplitude
    tau_p: ComplexAmplitude
    rho_pp: ComplexAmplitude
    tau_pp: ComplexAmplitude
    rho_ppp: ComplexAmplitude
    tau_ppp: ComplexAmplitude

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, complex(getattr(self, f.name)))

    @classmethod
    def from_symmetric(cls, s: SymmetricSplitter) -> "AsymmetricSplitter":
        return cls(s.rho, s.tau, s.rho, s.tau, s.rho, s.tau, s.rho, s.tau)

    def coefficients(self) -> Dict[str, complex]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class ConstraintReport(BaseModel):
    """Named constraint residuals judged against one tolerance."""

    model_config = ConfigDict(frozen=True)

    tolerance: float
    residuals: Dict[str, float]

    @field_validator("residuals")
    @classmethod
    def _non_negative(cls, residuals: Dict[str, float]) -> Dict[str, float]:
        for name, value in residuals.items():
            if not value >= 0.0:
                raise ValueError(f"residual {name} must be a non-negative magnitude, got {value}")
        return residuals

    @property
    def passed(self) -> Dict[str, bool]:
        return {name: value <= self.tolerance for name, value in self.residuals.items()}

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    def failures(self) -> Dict[str, float]:
        return {name: value for name, value in self.residuals.items() if value > self.tolerance}
