"""Evidence on the full endemic point for positive delays.

Imaginary roots i w of the characteristic function satisfy a degree-8
polynomial in w that is even, so its roots come in pairs +-w. A real-axis
scan of the characteristic factor finds nonnegative real roots.
"""

from typing import NamedTuple

import numpy as np

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from common.logging import LoggerDecorator
from dynamics.types import ModelParams
from equilibria.points import DISEASE_FREE, FULL_ENDEMIC

from .coefficients import disease_free_factor, endemic_quasi_polynomial
from .polynomials import PolyCoeffs


SCAN_KINDS = (DISEASE_FREE, FULL_ENDEMIC)


class CrossingPolynomial(NamedTuple):
    coefficients: PolyCoeffs
    roots: np.ndarray

    @property
    def imaginary_roots(self) -> list[float]:
        """Imaginary parts of the purely imaginary roots, sorted."""
        return sorted(
            float(root.imag)
            for root in self.roots
            if abs(root.real) <= 1e-9 * (1.0 + abs(root))
        )


class RealAxisScan(NamedTuple):
    zeta: np.ndarray
    values: np.ndarray
    sign_changes: list[float]

    @property
    def positive(self) -> bool:
        return bool(np.all(self.values > 0))


@LoggerDecorator("stability")
def crossing_poly_e2(
    params: ModelParams, corrected: bool = False
) -> CrossingPolynomial:
    """w^8 + s w^6 + t w^4 + u w^2 + v and all its roots.

    Args:
        params: The model constants.
        corrected: Use the rederived coefficients instead of the
            published ones.

    Returns:
        The degree-8 polynomial in w and its eight complex roots.
    """
    quasi = endemic_quasi_polynomial(params)
    s, t, u, v = (
        quasi.crossing_derived() if corrected else quasi.crossing_published()
    )
    coefficients = PolyCoeffs.from_highest_first([1.0, s, t, u, v])
    square = coefficients.in_square()
    return CrossingPolynomial(coefficients=square, roots=square.roots())


def quasipoly_real_axis_scan(
    params: ModelParams,
    tau: float,
    interval: tuple[float, float] = (0.0, 10.0),
    samples: int = 10001,
    kind: str = FULL_ENDEMIC,
    corrected: bool = False,
) -> RealAxisScan:
    """Evaluates a characteristic factor on a real grid.

    For the full endemic point the factor is the published quasi-
    polynomial (`corrected` swaps in the rederived z^2 coefficient); for
    the disease-free point it is
    z^2 + (mu + a) z + a mu (1 - ratio exp(-z tau)).

    Args:
        params: The model constants.
        tau: The delay.
        interval: The scanned range, a subset of [0, inf).
        samples: Number of evenly spaced points, at least 2.
        kind: `DISEASE_FREE` or `FULL_ENDEMIC`.
        corrected: See above.

    Returns:
        The grid, the values and the points where the sign changes.

    Raises:
        ValidationError: If an argument is out of its domain.
    """
    low, high = interval
    errors = {}
    if not 0.0 <= low < high:
        errors["interval"] = [_("Interval must satisfy 0 <= low < high.")]
    if samples < 2:
        errors["samples"] = [_("At least two samples are needed.")]
    if tau < 0:
        errors["tau"] = [_("Value must be nonnegative.")]
    if kind not in SCAN_KINDS:
        errors["kind"] = [_("Unknown steady state.")]
    if errors:
        raise ValidationError(errors)

    zeta = np.linspace(low, high, samples)
    if kind == DISEASE_FREE:
        values = disease_free_factor(params, zeta, tau)
    else:
        values = endemic_quasi_polynomial(params)(
            zeta, tau, corrected=corrected
        )
    signs = np.sign(values)
    changes = np.flatnonzero(signs[:-1] * signs[1:] <= 0)
    return RealAxisScan(
        zeta=zeta,
        values=values,
        sign_changes=[float(zeta[i]) for i in changes],
    )
