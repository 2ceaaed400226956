"""Local stability of the three steady states.

**Functions**
    classify_disease_free: sign of N beta lambda - d mu.
    classify_e1: sign of beta N (mu c lambda - beta h a N) - mu^2 c d.
    classify_e2_tau0: quartic criteria at the full endemic point.

Each report holds the published verdict, a Routh-Hurwitz verdict on
rederived coefficients and the eigenvalue verdict of the undelayed system.
Symbolic coefficients are compared with the characteristic polynomial of
a1 + a2 and every mismatch ends up in the report notes.
"""

import logging

import numpy as np

from common.exceptions import InfeasibleEquilibrium
from common.logging import LoggerDecorator
from common.verdicts import DEAD_ZONE, positivity_verdict, sign_verdict
from dynamics.types import ModelParams
from equilibria.conditions import condition_values
from equilibria.points import (
    disease_free,
    e2_denominator,
    endemic_e1,
    endemic_e2,
)

from .coefficients import (
    ctl_free_coefficients,
    ctl_free_printed_cubic,
    disease_free_crossing,
    endemic_printed_quartic,
    endemic_quasi_polynomial,
    infection_ratio,
)
from .criteria import (
    hurwitz_cubic,
    hurwitz_quadratic,
    hurwitz_quartic,
    positive_coefficient_quartic,
)
from .linearization import (
    char_poly_tau0,
    eigenvalues_tau0,
    linearize,
    numeric_verdict,
)
from .polynomials import PolyCoeffs
from .reports import StabilityReport


logger = logging.getLogger("stability")

# Relative to 1 + the largest numeric coefficient.
COEFFICIENT_TOLERANCE = 1e-8


def _floats(values) -> list[float]:
    return [float(value) for value in values]


def compare_coefficients(
    label: str, symbolic, numeric, notes: list[str]
) -> float:
    """Scaled largest difference between two coefficient lists.

    A difference above `COEFFICIENT_TOLERANCE` is reported in `notes`.
    """
    symbolic, numeric = np.asarray(symbolic), np.asarray(numeric)
    scale = 1.0 + float(np.max(np.abs(numeric)))
    difference = float(np.max(np.abs(symbolic - numeric))) / scale
    if difference > COEFFICIENT_TOLERANCE:
        notes.append(
            f"{label} coefficients {_floats(symbolic)} differ from the "
            f"characteristic polynomial of a1 + a2 {_floats(numeric)} "
            f"(scaled difference {difference:.3g})"
        )
    return difference


def _crossing_notes(roots: list[float], notes: list[str]) -> None:
    positive = [root for root in roots if root > DEAD_ZONE]
    if positive:
        notes.append(
            f"crossing polynomial has positive roots X = {positive}: "
            "imaginary characteristic roots exist for some delay"
        )


@LoggerDecorator("stability")
def classify_disease_free(params: ModelParams) -> StabilityReport:
    """Stability of (lambda/d, 0, 0, 0), which holds for every delay when
    N beta lambda < d mu."""
    equilibrium = disease_free(params)
    pair = linearize(params, equilibrium)
    a, d, h, mu = params.a, params.d, params.h_ctl, params.mu
    ratio = infection_ratio(params)
    constant = a * mu * (1.0 - ratio)
    notes = []

    symbolic = np.polymul(
        np.polymul([1.0, d], [1.0, h]), [1.0, mu + a, constant]
    )[1:]
    numeric = char_poly_tau0(pair).highest_first()[1:]
    difference = compare_coefficients("Factored", symbolic, numeric, notes)

    crossing = disease_free_crossing(params)
    roots = crossing.real_roots()
    _crossing_notes(roots, notes)

    cond_ef = condition_values(params).cond_ef
    report = StabilityReport(
        equilibrium=equilibrium,
        verdict_paper=sign_verdict(cond_ef),
        verdict_rh_standard=positivity_verdict(
            [d, h, *hurwitz_quadratic(mu + a, constant)]
        ),
        verdict_numeric_tau0=numeric_verdict(pair),
        crossing_roots=roots,
        notes=notes,
        details={
            "cond_ef": cond_ef,
            "infection_ratio": ratio,
            "char_poly_tau0": _floats(numeric),
            "coefficient_difference": difference,
            "crossing_coefficients": crossing.highest_first(),
            "max_real_eigenvalue": float(
                np.max(eigenvalues_tau0(pair).real)
            ),
        },
    )
    logger.info(
        "Disease-free point: %s (published criterion)", report.verdict_paper
    )
    return report


@LoggerDecorator("stability")
def classify_e1(params: ModelParams) -> StabilityReport:
    """Stability of the CTL-free endemic point.

    The characteristic function has the real root
    (beta N (mu c lambda - beta h a N) - mu^2 c d) / (a N^2 beta^2) and a
    delayed cubic factor. The published verdict is the sign of that root.
    """
    equilibrium = endemic_e1(params)
    pair = linearize(params, equilibrium)
    coefficients = ctl_free_coefficients(params)
    derived = coefficients.cubic_tau0
    printed = ctl_free_printed_cubic(params)
    notes = []

    quartic = char_poly_tau0(pair).highest_first()
    quotient, remainder = np.polydiv(quartic, [1.0, -coefficients.ctl_root])
    numeric = quotient[1:]
    residual = float(np.max(np.abs(remainder))) / (
        1.0 + float(np.max(np.abs(quartic)))
    )
    if residual > COEFFICIENT_TOLERANCE:
        notes.append(
            f"z - {coefficients.ctl_root:.6g} does not divide the "
            f"characteristic polynomial of a1 + a2 (residual {residual:.3g})"
        )
    compare_coefficients("Rederived cubic", derived, numeric, notes)
    compare_coefficients("Published cubic", printed, numeric, notes)

    crossing = coefficients.crossing()
    roots = crossing.real_roots()
    _crossing_notes(roots, notes)
    if not equilibrium.feasible:
        notes.append(
            "the CTL-free endemic point is infeasible (lambda beta N <= d mu)"
        )

    lam, d, beta, a, big_n, mu = (
        params.lam,
        params.d,
        params.beta,
        params.a,
        params.big_n,
        params.mu,
    )
    cond_e1_e2 = condition_values(params).cond_e1_e2
    report = StabilityReport(
        equilibrium=equilibrium,
        verdict_paper=sign_verdict(cond_e1_e2),
        verdict_rh_standard=positivity_verdict(
            [-coefficients.ctl_root, *hurwitz_cubic(*derived)]
        ),
        verdict_numeric_tau0=numeric_verdict(pair),
        crossing_roots=roots,
        notes=notes,
        details={
            "cond_e1_e2": cond_e1_e2,
            "ctl_root": coefficients.ctl_root,
            "cubic_tau0": _floats(derived),
            "cubic_tau0_published": _floats(printed),
            "cubic_tau0_numeric": _floats(numeric),
            "division_residual": residual,
            "crossing_coefficients": crossing.highest_first(),
            "crossing_at_zero": coefficients.c**2 - coefficients.g2**2,
            "crossing_at_zero_closed_form": (
                lam**2 * beta**2 * a**2 * big_n**2 - a**2 * mu**2 * d**2
            ),
        },
    )
    logger.info(
        "CTL-free endemic point: %s (published criterion)",
        report.verdict_paper,
    )
    return report


@LoggerDecorator("stability")
def classify_e2_tau0(params: ModelParams) -> StabilityReport:
    """Stability of the full endemic point without delay.

    Raises:
        InfeasibleEquilibrium: If lambda mu c - beta a N h is not positive.
    """
    denominator = e2_denominator(params)
    if denominator <= DEAD_ZONE:
        raise InfeasibleEquilibrium(
            f"lambda*mu*c - beta*a*N*h_ctl = {denominator:.6g} is not "
            "positive, the full endemic point does not exist"
        )
    equilibrium = endemic_e2(params)
    pair = linearize(params, equilibrium)
    quasi = endemic_quasi_polynomial(params)
    printed = endemic_printed_quartic(params)
    e, f, g, h = printed
    corrected = (e, f + quasi.ctl_correction, g, h)
    notes = [
        "no verdict is given for tau > 0; use the crossing roots and "
        "real-axis scans as evidence"
    ]

    numeric = char_poly_tau0(pair).highest_first()[1:]
    compare_coefficients("Published quartic", printed, numeric, notes)
    compare_coefficients("Corrected quartic", corrected, numeric, notes)
    if not equilibrium.feasible:
        notes.append(
            "the full endemic point is infeasible (negative CTL component)"
        )

    s, t, u, v = quasi.crossing_published()
    crossing = PolyCoeffs.from_highest_first([1.0, s, t, u, v])
    roots = crossing.real_roots()
    _crossing_notes(roots, notes)

    report = StabilityReport(
        equilibrium=equilibrium,
        verdict_paper=positivity_verdict(
            positive_coefficient_quartic(*printed)
        ),
        verdict_rh_standard=positivity_verdict(hurwitz_quartic(*corrected)),
        verdict_numeric_tau0=numeric_verdict(pair),
        crossing_roots=roots,
        notes=notes,
        details={
            "cond_e2_exist": denominator,
            "quartic_tau0_published": _floats(printed),
            "quartic_tau0_corrected": _floats(corrected),
            "quartic_tau0_numeric": _floats(numeric),
            "crossing_coefficients": crossing.highest_first(),
            "max_real_eigenvalue": float(
                np.max(eigenvalues_tau0(pair).real)
            ),
        },
    )
    logger.info(
        "Full endemic point: %s (eigenvalues)", report.verdict_numeric_tau0
    )
    return report
