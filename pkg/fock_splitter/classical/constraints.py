"""Losslessness and time-reversal constraints on Fresnel coefficient families."""

import cmath
import math
from typing import Optional, Tuple

from loguru import logger

from fock_splitter.classical.models import AsymmetricSplitter, ConstraintReport, SymmetricSplitter
from fock_splitter.config import config
from fock_splitter.exceptions import DomainError, InvalidSplitterError
from fock_splitter.numerics import normalize_phase, safe_phase


def _check_tolerance(tol: Optional[float], default: float) -> float:
    tol = default if tol is None else tol
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    return tol


def _norm_residual(a: complex, b: complex) -> float:
    return abs(abs(a) ** 2 + abs(b) ** 2 - 1.0)


def _quadrature_residual(rho: complex, tau: complex) -> float:
    # |cos(phi_rho - phi_tau)|; undefined phases of zero amplitudes are unconstrained.
    if rho == 0 or tau == 0:
        return 0.0
    return abs((rho * tau.conjugate()).real) / (abs(rho) * abs(tau))


def validate_symmetric(s: SymmetricSplitter, tol: Optional[float] = None) -> ConstraintReport:
    """Check |rho|^2 + |tau|^2 = 1 and phi_rho - phi_tau = +-pi/2."""
    tol = _check_tolerance(tol, config.CONSTRUCTION_TOL)
    report = ConstraintReport(
        tolerance=tol,
        residuals={
            "unitarity": _norm_residual(s.rho, s.tau),
            "phase": _quadrature_residual(s.rho, s.tau),
        },
    )
    if not report.ok:
        logger.debug(f"Symmetric splitter fails {sorted(report.failures())}")
    return report


def validate_asymmetric(s: AsymmetricSplitter, tol: Optional[float] = None) -> ConstraintReport:
    """Check every constraint a lossless, time-reversible coefficient family obeys."""
    tol = _check_tolerance(tol, config.IDENTITY_TOL)

    if 0 in (s.rho_p, s.rho_pp, s.tau_p, s.tau_pp):
        phase_sum = 0.0
    else:
        difference = (safe_phase(s.rho_p) + safe_phase(s.rho_pp)) - (
            safe_phase(s.tau_p) + safe_phase(s.tau_pp)
        )
        phase_sum = abs(normalize_phase(difference - math.pi))

    c1, c2 = time_reversal_residuals(s)
    return ConstraintReport(
        tolerance=tol,
        residuals={
            "norm": _norm_residual(s.rho, s.tau),
            "norm_p": _norm_residual(s.rho_p, s.tau_p),
            "norm_pp": _norm_residual(s.rho_pp, s.tau_pp),
            "reflection_magnitudes": abs(abs(s.rho_p) - abs(s.rho_pp)),
            "transmission_magnitudes": abs(abs(s.tau_p) - abs(s.tau_pp)),
            "phase_sum": phase_sum,
            "time_reversal_c1": abs(c1),
            "time_reversal_c2": abs(c2),
            "backside_rho": abs(s.rho_ppp - s.rho_pp),
            "backside_tau": abs(s.tau_ppp - s.tau_p),
        },
    )


def michelson_amplitudes(s: AsymmetricSplitter, phi1: float, phi2: float) -> Tuple[complex, complex]:
    """Amplitudes for a returning photon to leave channel 1 and channel 2.

    phi1 and phi2 are the round-trip phases of the two arms, in radians.
    """
    arm1 = cmath.exp(1j * phi1)
    arm2 = cmath.exp(1j * phi2)
    psi1 = s.rho * s.rho_p * arm1 + s.tau * s.tau_pp * arm2
    psi2 = s.rho * s.tau_p * arm1 + s.tau * s.rho_pp * arm2
    return psi1, psi2


def lossless_residual(s: AsymmetricSplitter, delta_phi: float) -> float:
    """|psi1|^2 + |psi2|^2 - 1 at arm phase difference delta_phi."""
    psi1, psi2 = michelson_amplitudes(s, delta_phi, 0.0)
    return abs(psi1) ** 2 + abs(psi2) ** 2 - 1.0


def time_reversal_residuals(s: AsymmetricSplitter) -> Tuple[complex, complex]:
    """Residuals of retro-reflection by phase-conjugate mirrors.

    c1 = rho* rho' + tau* tau'' - 1 must vanish so the incident beam is rebuilt
    in channel 1; c2 = rho* tau' + tau* rho'' must vanish so nothing returns
    through channel 2.
    """
    c1 = s.rho.conjugate() * s.rho_p + s.tau.conjugate() * s.tau_pp - 1.0
    c2 = s.rho.conjugate() * s.tau_p + s.tau.conjugate() * s.rho_pp
    return c1, c2


def complete_family(
    rho: complex,
    tau: complex,
    phi_tau_prime: float,
    branch: int,
) -> AsymmetricSplitter:
    """Build the full coefficient family implied by losslessness and time reversal.

    phi_tau_prime is free: nothing in the constraints fixes it relative to
    phi_tau. branch (+1 or -1) selects the sign of the pi in
    phi_rho + phi_rho'' = phi_tau + phi_tau' +- pi.
    """
    if branch not in (1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch!r}")
    rho = complex(rho)
    tau = complex(tau)
    residual = _norm_residual(rho, tau)
    if residual > config.CONSTRUCTION_TOL:
        raise InvalidSplitterError(
            f"|rho|^2 + |tau|^2 deviates from 1 by {residual:.3e}", residual=residual
        )

    phi_rho = safe_phase(rho)
    phi_tau = safe_phase(tau)
    tau_p = cmath.rect(abs(tau), phi_tau_prime)
    rho_pp = cmath.rect(abs(rho), phi_tau + phi_tau_prime - phi_rho + branch * math.pi)

    logger.debug(f"Completed family for rho={rho}, tau={tau}, branch={branch:+d}")
    return AsymmetricSplitter(
        rho=rho,
        tau=tau,
        rho_p=rho,
        tau_p=tau_p,
        rho_pp=rho_pp,
        tau_pp=tau,
        rho_ppp=rho_pp,
        tau_ppp=tau_p,
    )


def lateral_symmetric_family(rho: complex, tau: complex, branch: int) -> AsymmetricSplitter:
    """complete_family for a laterally symmetric splitter, where phi_tau' = phi_tau."""
    return complete_family(rho, tau, safe_phase(complex(tau)), branch)
