"""Named limiting cases of the splitter and the records the CLI emits for them."""

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from fock_splitter.classical import (
    AsymmetricSplitter,
    SymmetricSplitter,
    complete_family,
    lossless_residual,
    michelson_amplitudes,
    validate_asymmetric,
    validate_symmetric,
)
from fock_splitter.exceptions import DomainError, SchemaError
from fock_splitter.numerics import complex_pow
from fock_splitter.quantum import (
    FockPair,
    expand_output_state,
    poisson_reference,
    single_input_distribution,
    total_variation_distance,
    two_input_distribution,
    two_input_distribution_streamlined,
)

METHODS = ("path-sum", "streamlined", "operator")

# Every key a scenario may emit, per scenario. Outputs, checks and row columns
# outside these sets are rejected when the result is built.
OUTPUT_SCHEMA: Dict[str, frozenset] = {
    "validate": frozenset({"ok", "failures"}),
    "distribution": frozenset({"probabilities", "amplitudes"}),
    "hom-scan": frozenset(),
    "michelson": frozenset({"coefficients"}),
    "poisson-compare": frozenset({"mean", "tv_distance"}),
    "cascade": frozenset(
        {
            "annihilation_amplitude",
            "cascade_amplitude",
            "single_splitter_two_photon_amplitude",
            "expected_magnitude",
            "relative_deviation",
        }
    ),
    "complete-family": frozenset({"ok", "coefficients"}),
}

CHECK_SCHEMA: Dict[str, frozenset] = {
    "validate": frozenset({"tolerance", "unitarity", "phase"}),
    "distribution": frozenset({"norm_residual", "rounding_bound"}),
    "hom-scan": frozenset({"max_closed_form_deviation"}),
    "michelson": frozenset({"max_abs_residual", "residual_spread"}),
    "poisson-compare": frozenset({"exact_mass", "poisson_mass"}),
    "cascade": frozenset(),
    "complete-family": frozenset(
        {
            "norm",
            "norm_p",
            "norm_pp",
            "reflection_magnitudes",
            "transmission_magnitudes",
            "phase_sum",
            "time_reversal_c1",
            "time_reversal_c2",
            "backside_rho",
            "backside_tau",
        }
    ),
}

ROW_SCHEMA: Dict[str, tuple] = {
    "validate": (),
    "distribution": ("m", "probability", "amplitude"),
    "hom-scan": ("reflectance", "coincidence_probability"),
    "michelson": ("delta_phi", "channel1_probability", "channel2_probability", "residual"),
    "poisson-compare": ("m", "exact", "poisson"),
    "cascade": (),
    "complete-family": (),
}


@dataclass(frozen=True)
class ScenarioResult:
    scenario: str
    inputs: Dict[str, Any]
    outputs: Dict[str, Any]
    checks: Dict[str, float] = field(default_factory=dict)
    refs: List[str] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def __post_init__(self):
        if self.scenario not in OUTPUT_SCHEMA:
            raise SchemaError(f"unknown scenario {self.scenario!r}")
        undocumented = set(self.outputs) - OUTPUT_SCHEMA[self.scenario]
        undocumented |= set(self.checks) - CHECK_SCHEMA[self.scenario]
        for row in self.rows:
            undocumented |= set(row) - set(ROW_SCHEMA[self.scenario])
        if undocumented:
            raise SchemaError(f"{self.scenario} emitted undocumented keys {sorted(undocumented)}")

    @property
    def columns(self) -> tuple:
        return ROW_SCHEMA[self.scenario]


def splitter_inputs(s: SymmetricSplitter) -> Dict[str, complex]:
    return {"rho": s.rho, "tau": s.tau}


def hom_coincidence_probability(s: SymmetricSplitter) -> float:
    """Probability of one photon in each output port for the input |1>|1>."""
    return abs(s.rho * s.rho + s.tau * s.tau) ** 2


def annihilation_amplitude(n: int, s: SymmetricSplitter) -> complex:
    """sqrt(n) rho tau^(n-1): one photon at port 3, n - 1 at port 4, from |n>|0>."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"annihilation needs at least one photon, got {n!r}")
    amplitude = (complex_pow(s.rho, 1) * complex_pow(s.tau, int(n) - 1)).scaled(0.5 * math.log(n))
    return amplitude.to_complex()


def creation_amplitude(n: int, s: SymmetricSplitter) -> complex:
    """sqrt(n+1) rho tau^n: all n + 1 photons at port 4 from |n>|1>."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"photon count must be a non-negative integer, got {n!r}")
    amplitude = (complex_pow(s.rho, 1) * complex_pow(s.tau, int(n))).scaled(0.5 * math.log(n + 1))
    return amplitude.to_complex()


def cascade_two_photon_annihilator(n: int, s: SymmetricSplitter) -> complex:
    """Two splitters in series, each post-selected on one photon at port 3."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise DomainError(f"the two-photon cascade needs n >= 2, got {n!r}")
    return annihilation_amplitude(n, s) * annihilation_amplitude(n - 1, s)


def n_fold_annihilation_ratio(n: int, s: SymmetricSplitter) -> complex:
    """Product of annihilation_amplitude(k) / rho for k = n down to 1.

    For a weak splitter this tends to sqrt(n!), the norm of a^n |n>.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"photon count must be a non-negative integer, got {n!r}")
    if s.rho == 0:
        raise DomainError("a perfect window (rho = 0) never reflects a photon")
    ratio = 1 + 0j
    for k in range(int(n), 0, -1):
        ratio *= annihilation_amplitude(k, s) / s.rho
    return ratio


def with_rho_pp_offset(s: AsymmetricSplitter, offset: float) -> AsymmetricSplitter:
    """Rotate rho'' (and the backside rho''' with it) by offset radians."""
    rotation = complex(math.cos(offset), math.sin(offset))
    return dataclasses.replace(s, rho_pp=s.rho_pp * rotation, rho_ppp=s.rho_ppp * rotation)


def validate_scenario(s: SymmetricSplitter, tol: Optional[float] = None) -> ScenarioResult:
    report = validate_symmetric(s, tol)
    return ScenarioResult(
        scenario="validate",
        inputs=splitter_inputs(s),
        outputs={"ok": report.ok, "failures": sorted(report.failures())},
        checks={"tolerance": report.tolerance, **report.residuals},
        refs=["lossless symmetric splitter"],
    )


def distribution_scenario(n1: int, n2: int, s: SymmetricSplitter, method: str = "path-sum") -> ScenarioResult:
    pair = FockPair(n1=n1, n2=n2)
    if method == "path-sum":
        distribution = two_input_distribution(pair, s)
        rounding_bound = distribution.rounding_bound
        amplitudes = list(distribution.amplitudes)
        refs = ["path-sum amplitude"]
    elif method == "streamlined":
        distribution = two_input_distribution_streamlined(pair, s)
        rounding_bound = distribution.rounding_bound
        amplitudes = list(distribution.amplitudes)
        refs = ["streamlined path-sum amplitude"]
    elif method == "operator":
        state = expand_output_state(pair, s)
        rounding_bound = state.norm_deficit
        amplitudes = [state.amplitude(m, pair.total - m) for m in range(pair.total + 1)]
        refs = ["operator expansion"]
    else:
        raise DomainError(f"unknown method {method!r}, expected one of {', '.join(METHODS)}")

    probabilities = [abs(a) ** 2 for a in amplitudes]
    norm_residual = abs(math.fsum(probabilities) - 1.0)
    logger.debug(f"Distribution ({n1}, {n2}) via {method}: residual {norm_residual:.3e}")
    return ScenarioResult(
        scenario="distribution",
        inputs={"n1": n1, "n2": n2, "method": method, **splitter_inputs(s)},
        outputs={"probabilities": probabilities, "amplitudes": amplitudes},
        checks={"norm_residual": norm_residual, "rounding_bound": rounding_bound},
        refs=refs,
        rows=[
            {"m": m, "probability": p, "amplitude": a}
            for m, (p, a) in enumerate(zip(probabilities, amplitudes))
        ],
    )


def hom_scan_scenario(steps: int, rho_phase: float = 0.0) -> ScenarioResult:
    """Coincidence probability for |1>|1> as the reflectance runs from 0 to 1."""
    if steps < 2:
        raise DomainError(f"a scan needs at least 2 steps, got {steps}")
    rows = []
    deviation = 0.0
    for reflectance in np.linspace(0.0, 1.0, steps):
        s = SymmetricSplitter.from_polar(math.sqrt(reflectance), rho_phase)
        probability = hom_coincidence_probability(s)
        deviation = max(deviation, abs(probability - (2.0 * reflectance - 1.0) ** 2))
        rows.append({"reflectance": float(reflectance), "coincidence_probability": probability})
    return ScenarioResult(
        scenario="hom-scan",
        inputs={"steps": steps, "rho_phase": rho_phase},
        outputs={},
        checks={"max_closed_form_deviation": deviation},
        refs=["two-photon coincidence"],
        rows=rows,
    )


def michelson_scenario(s: AsymmetricSplitter, phi1: float, phi2: float, steps: int = 1) -> ScenarioResult:
    """Sweep the arm phase difference over steps values spanning one period."""
    if steps < 1:
        raise DomainError(f"steps must be positive, got {steps}")
    start = phi1 - phi2
    rows = []
    for delta_phi in start + 2.0 * math.pi * np.arange(steps) / steps:
        psi1, psi2 = michelson_amplitudes(s, float(delta_phi), 0.0)
        rows.append(
            {
                "delta_phi": float(delta_phi),
                "channel1_probability": abs(psi1) ** 2,
                "channel2_probability": abs(psi2) ** 2,
                "residual": lossless_residual(s, float(delta_phi)),
            }
        )
    residuals = [row["residual"] for row in rows]
    return ScenarioResult(
        scenario="michelson",
        inputs={"phi1": phi1, "phi2": phi2, "steps": steps},
        outputs={"coefficients": s.coefficients()},
        checks={
            "max_abs_residual": max(abs(r) for r in residuals),
            "residual_spread": max(residuals) - min(residuals),
        },
        refs=["Michelson energy balance"],
        rows=rows,
    )


def poisson_compare_scenario(n: int, s: SymmetricSplitter, cutoff: Optional[int] = None) -> ScenarioResult:
    """Exact reflected-photon statistics of |n>|0> against the coherent limit."""
    exact = single_input_distribution(n, s).probabilities
    reference = poisson_reference(n, s, n if cutoff is None else cutoff)
    tv_distance = total_variation_distance(exact, reference.probabilities)
    return ScenarioResult(
        scenario="poisson-compare",
        inputs={"n": n, "cutoff": reference.cutoff, **splitter_inputs(s)},
        outputs={"mean": reference.mean, "tv_distance": tv_distance},
        checks={
            "exact_mass": math.fsum(exact[: reference.cutoff + 1]),
            "poisson_mass": math.fsum(reference.probabilities),
        },
        refs=["coherent-state limit"],
        rows=[
            {"m": m, "exact": exact[m], "poisson": p}
            for m, p in enumerate(reference.probabilities)
        ],
    )


def cascade_scenario(n: int, s: SymmetricSplitter) -> ScenarioResult:
    """Two weak splitters in series against one splitter reflecting two photons."""
    cascade = cascade_two_photon_annihilator(n, s)
    expected = math.sqrt(n * (n - 1)) * abs(s.rho) ** 2
    return ScenarioResult(
        scenario="cascade",
        inputs={"n": n, **splitter_inputs(s)},
        outputs={
            "annihilation_amplitude": annihilation_amplitude(n, s),
            "cascade_amplitude": cascade,
            "single_splitter_two_photon_amplitude": single_input_distribution(n, s).amplitude(2),
            "expected_magnitude": expected,
            "relative_deviation": abs(abs(cascade) - expected) / expected if expected else 0.0,
        },
        refs=["cascaded two-photon annihilator"],
    )


def complete_family_scenario(
    rho: complex, tau: complex, phi_tau_prime: float, branch: int, tol: Optional[float] = None
) -> ScenarioResult:
    family = complete_family(rho, tau, phi_tau_prime, branch)
    report = validate_asymmetric(family, tol)
    return ScenarioResult(
        scenario="complete-family",
        inputs={"rho": complex(rho), "tau": complex(tau), "phi_tau_prime": phi_tau_prime, "branch": branch},
        outputs={"ok": report.ok, "coefficients": family.coefficients()},
        checks=dict(report.residuals),
        refs=["lossless time-reversible coefficient family"],
    )


def documented_keys(scenario: str) -> Sequence[str]:
    """Output, check and column names a scenario may emit."""
    return sorted(OUTPUT_SCHEMA[scenario] | CHECK_SCHEMA[scenario] | set(ROW_SCHEMA[scenario]))
