"""Routh-Hurwitz conditions as lists of quantities that must be positive.

Feed the lists to `common.verdicts.positivity_verdict`.
"""


def hurwitz_quadratic(a1: float, a2: float) -> list[float]:
    """z^2 + a1 z + a2."""
    return [a1, a2]


def hurwitz_cubic(a1: float, a2: float, a3: float) -> list[float]:
    """z^3 + a1 z^2 + a2 z + a3."""
    return [a1, a3, a1 * a2 - a3]


def hurwitz_quartic(a1: float, a2: float, a3: float, a4: float) -> list[float]:
    """z^4 + a1 z^3 + a2 z^2 + a3 z + a4."""
    return [a1, a3, a4, a1 * a2 * a3 - a3**2 - a1**2 * a4]


def positive_coefficient_quartic(
    a1: float, a2: float, a3: float, a4: float
) -> list[float]:
    """All coefficients positive and a2 a3 - a1 a4 positive.

    This is the test published for the full endemic point. It is neither
    necessary nor sufficient in general and is kept to be compared with
    `hurwitz_quartic`.
    """
    return [a1, a2, a3, a4, a2 * a3 - a1 * a4]
