"""Real polynomials stored constant term first, as `numpy.polynomial` does.

Roots come from the eigenvalues of the companion matrix
(`numpy.polynomial.polynomial.polyroots`). Vanishing low-order coefficients
are split off first, so a zero root is reported as exactly 0.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _


MAX_DEGREE = 8
REAL_ROOT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PolyCoeffs:
    coefficients: tuple[float, ...]

    def __post_init__(self):
        coefficients = self.coefficients
        if not 1 <= len(coefficients) <= MAX_DEGREE + 1:
            raise ValidationError(
                {
                    "coefficients": [
                        _("Degree must lie between 0 and %(max)s.")
                        % {"max": MAX_DEGREE}
                    ]
                }
            )
        if not all(math.isfinite(value) for value in coefficients):
            raise ValidationError(
                {"coefficients": [_("Coefficients must be finite.")]}
            )
        if coefficients[-1] == 0:
            raise ValidationError(
                {"coefficients": [_("Leading coefficient must be nonzero.")]}
            )

    @classmethod
    def from_lowest_first(cls, coefficients) -> "PolyCoeffs":
        return cls(tuple(float(value) for value in coefficients))

    @classmethod
    def from_highest_first(cls, coefficients) -> "PolyCoeffs":
        return cls.from_lowest_first(reversed(list(coefficients)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def highest_first(self) -> list[float]:
        return list(reversed(self.coefficients))

    def __call__(self, value):
        return polynomial.polyval(value, self.coefficients)

    def in_square(self) -> "PolyCoeffs":
        """The polynomial q(w) = p(w^2)."""
        coefficients = []
        for value in self.coefficients:
            coefficients.extend((value, 0.0))
        return PolyCoeffs(tuple(coefficients[:-1]))

    def roots(self) -> np.ndarray:
        """All complex roots, with multiplicity."""
        coefficients = np.asarray(self.coefficients)
        zeros = int(np.argmax(coefficients != 0))
        rest = polynomial.polyroots(coefficients[zeros:])
        return np.concatenate(
            [np.zeros(zeros, dtype=complex), np.asarray(rest, dtype=complex)]
        )

    def real_roots(
        self, tolerance: float = REAL_ROOT_TOLERANCE
    ) -> list[float]:
        """Sorted real roots.

        A root counts as real if its imaginary part is at most
        `tolerance * (1 + |root|)`.
        """
        return sorted(
            float(root.real)
            for root in self.roots()
            if abs(root.imag) <= tolerance * (1.0 + abs(root))
        )
