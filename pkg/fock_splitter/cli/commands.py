"""
Command-line interface for fock_splitter.

Usage:
    fock-splitter validate --rho-mag 0.8 --tau-mag 0.6 --tau-deg 0
    fock-splitter distribution --n1 2 --n2 1 --format json
    fock-splitter hom-scan --steps 101 --format csv
    fock-splitter michelson --steps 8 --violate-deg 5.7
    fock-splitter poisson-compare --n 1000 --rho-mag 0.0316227766
    fock-splitter cascade --n 10 --rho-mag 0.001
    fock-splitter complete-family --tau-prime-deg 30 --branch -1
"""

import math
from typing import Optional

import click
from loguru import logger

from fock_splitter import __version__
from fock_splitter.classical import SymmetricSplitter, complete_family
from fock_splitter.cli.formatters import RENDERERS
from fock_splitter.scenarios import (
    METHODS,
    ScenarioResult,
    cascade_scenario,
    complete_family_scenario,
    distribution_scenario,
    hom_scan_scenario,
    michelson_scenario,
    poisson_compare_scenario,
    validate_scenario,
    with_rho_pp_offset,
)

EXIT_INVALID = 2


class _FiniteMixin:
    """Refuse nan and infinities after the base float conversion."""

    def convert(self, value, param, ctx):
        rv = super().convert(value, param, ctx)
        if not math.isfinite(rv):
            self.fail(f"{rv!r} is not a finite number.", param, ctx)
        return rv


class FiniteFloat(_FiniteMixin, click.types.FloatParamType):
    pass


class FiniteFloatRange(_FiniteMixin, click.FloatRange):
    pass


FINITE = FiniteFloat()


def splitter_options(func):
    """Magnitude and phase (degrees) of rho and tau, plus the validation tolerance."""
    options = [
        click.option("--rho-mag", type=FiniteFloatRange(min=0.0), default=math.sqrt(0.5), show_default=True,
                     help="Reflection magnitude |rho|"),
        click.option("--rho-deg", type=FINITE, default=0.0, show_default=True, help="Reflection phase in degrees"),
        click.option("--tau-mag", type=FiniteFloatRange(min=0.0), default=None,
                     help="Transmission magnitude (default sqrt(1 - |rho|^2))"),
        click.option("--tau-deg", type=FINITE, default=None, help="Transmission phase in degrees (default rho + 90)"),
        click.option("--tol", type=FiniteFloatRange(min=0.0, min_open=True), default=1e-10, show_default=True,
                     help="Tolerance for the losslessness check"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def format_option(func):
    return click.option("--format", "fmt", type=click.Choice(sorted(RENDERERS)), default="json",
                        show_default=True, help="Output format")(func)


def family_options(func):
    func = click.option("--branch", type=click.Choice(["1", "-1"]), default="1", show_default=True,
                        help="Sign of the pi in the phase relation for rho''")(func)
    return click.option("--tau-prime-deg", type=FINITE, default=None,
                        help="Phase of tau' in degrees (default: phase of tau)")(func)


def build_splitter(rho_mag: float, rho_deg: float, tau_mag: Optional[float], tau_deg: Optional[float]) -> SymmetricSplitter:
    return SymmetricSplitter.from_polar(
        rho_mag,
        math.radians(rho_deg),
        tau_mag,
        None if tau_deg is None else math.radians(tau_deg),
    )


def emit(result: ScenarioResult, fmt: str, err: bool = False) -> None:
    text = RENDERERS[fmt](result)
    click.echo(text, nl=not text.endswith("\n"), err=err)


def require_valid(ctx: click.Context, s: SymmetricSplitter, tol: float, fmt: str) -> None:
    """Stop with the constraint report on stderr if the splitter is not lossless."""
    report = validate_scenario(s, tol)
    if not report.outputs["ok"]:
        logger.error(f"Splitter rho={s.rho}, tau={s.tau} fails {report.outputs['failures']}")
        emit(report, fmt, err=True)
        ctx.exit(EXIT_INVALID)


def _tau_prime(s: SymmetricSplitter, tau_prime_deg: Optional[float]) -> float:
    return s.tau_phase if tau_prime_deg is None else math.radians(tau_prime_deg)


@click.group()
@click.version_option(version=__version__, prog_name="fock-splitter")
def cli():
    """
    Photon-number statistics of a lossless beam splitter.

    Phases are given in degrees. Results go to stdout, diagnostics to stderr;
    an invalid splitter or input exits with status 2.
    """


@cli.command()
@splitter_options
@format_option
@click.pass_context
def validate(ctx, rho_mag, rho_deg, tau_mag, tau_deg, tol, fmt):
    """Check |rho|^2 + |tau|^2 = 1 and the 90 degree phase relation."""
    result = validate_scenario(build_splitter(rho_mag, rho_deg, tau_mag, tau_deg), tol)
    emit(result, fmt)
    if not result.outputs["ok"]:
        ctx.exit(EXIT_INVALID)


@cli.command()
@click.option("--n1", type=click.IntRange(min=0), required=True, help="Photons entering port 1")
@click.option("--n2", type=click.IntRange(min=0), default=0, show_default=True, help="Photons entering port 2")
@click.option("--method", type=click.Choice(METHODS), default="path-sum", show_default=True,
              help="Path sum, its streamlined form, or the operator expansion")
@splitter_options
@format_option
@click.pass_context
def distribution(ctx, n1, n2, method, rho_mag, rho_deg, tau_mag, tau_deg, tol, fmt):
    """Amplitudes and probabilities of m photons at port 3 for input |n1>|n2>."""
    s = build_splitter(rho_mag, rho_deg, tau_mag, tau_deg)
    require_valid(ctx, s, tol, fmt)
    emit(distribution_scenario(n1, n2, s, method), fmt)


@cli.command("hom-scan")
@click.option("--steps", type=click.IntRange(min=2), default=101, show_default=True,
              help="Number of reflectance values from 0 to 1")
@click.option("--rho-deg", type=FINITE, default=0.0, show_default=True, help="Reflection phase in degrees")
@format_option
def hom_scan(steps, rho_deg, fmt):
    """Coincidence probability for |1>|1> across reflectance."""
    emit(hom_scan_scenario(steps, math.radians(rho_deg)), fmt)


@cli.command()
@click.option("--phi1-deg", type=FINITE, default=0.0, show_default=True, help="Round-trip phase of arm 1")
@click.option("--phi2-deg", type=FINITE, default=0.0, show_default=True, help="Round-trip phase of arm 2")
@click.option("--steps", type=click.IntRange(min=1), default=1, show_default=True,
              help="Phase differences to sample over one period")
@click.option("--violate-deg", type=FINITE, default=0.0, show_default=True,
              help="Rotate rho'' by this many degrees away from the lossless family")
@family_options
@splitter_options
@format_option
@click.pass_context
def michelson(ctx, phi1_deg, phi2_deg, steps, violate_deg, tau_prime_deg, branch,
              rho_mag, rho_deg, tau_mag, tau_deg, tol, fmt):
    """Output probabilities of a Michelson interferometer built on the splitter."""
    s = build_splitter(rho_mag, rho_deg, tau_mag, tau_deg)
    require_valid(ctx, s, tol, fmt)
    family = complete_family(s.rho, s.tau, _tau_prime(s, tau_prime_deg), int(branch))
    if violate_deg:
        family = with_rho_pp_offset(family, math.radians(violate_deg))
    emit(michelson_scenario(family, math.radians(phi1_deg), math.radians(phi2_deg), steps), fmt)


@cli.command("poisson-compare")
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Photons entering port 1")
@click.option("--cutoff", type=click.IntRange(min=0), default=None, help="Largest m compared (default n)")
@splitter_options
@format_option
@click.pass_context
def poisson_compare(ctx, n, cutoff, rho_mag, rho_deg, tau_mag, tau_deg, tol, fmt):
    """Exact reflected-photon statistics against the Poisson limit."""
    s = build_splitter(rho_mag, rho_deg, tau_mag, tau_deg)
    require_valid(ctx, s, tol, fmt)
    emit(poisson_compare_scenario(n, s, cutoff), fmt)


@cli.command()
@click.option("--n", "n", type=click.IntRange(min=2), required=True, help="Photons entering port 1")
@splitter_options
@format_option
@click.pass_context
def cascade(ctx, n, rho_mag, rho_deg, tau_mag, tau_deg, tol, fmt):
    """Two-photon removal by two post-selected splitters in series."""
    s = build_splitter(rho_mag, rho_deg, tau_mag, tau_deg)
    require_valid(ctx, s, tol, fmt)
    emit(cascade_scenario(n, s), fmt)


@cli.command("complete-family")
@family_options
@splitter_options
@format_option
@click.pass_context
def complete_family_cmd(ctx, tau_prime_deg, branch, rho_mag, rho_deg, tau_mag, tau_deg, tol, fmt):
    """All eight coefficients implied by losslessness and time reversal."""
    s = build_splitter(rho_mag, rho_deg, tau_mag, tau_deg)
    result = complete_family_scenario(s.rho, s.tau, _tau_prime(s, tau_prime_deg), int(branch), tol)
    emit(result, fmt)
    if not result.outputs["ok"]:
        ctx.exit(EXIT_INVALID)
