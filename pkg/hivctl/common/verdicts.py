"""Stability verdicts and the sign tests that produce them.

Floating point sign tests use a dead zone: a quantity whose magnitude is
at most `DEAD_ZONE` counts as zero and makes the verdict inconclusive.
"""
from typing import Iterable

import numpy as np


STABLE = "stable"
UNSTABLE = "unstable"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "not-applicable"

VERDICTS = (STABLE, UNSTABLE, INCONCLUSIVE, NOT_APPLICABLE)

DEAD_ZONE = 1e-12


def sign_verdict(value: float, dead_zone: float = DEAD_ZONE) -> str:
    """Verdict of a criterion that reads "stable iff value < 0"."""
    if value < -dead_zone:
        return STABLE
    if value > dead_zone:
        return UNSTABLE
    return INCONCLUSIVE


def positivity_verdict(
    quantities: Iterable[float], dead_zone: float = DEAD_ZONE
) -> str:
    """Verdict of a criterion that requires every quantity to be positive.

    This is the shape of every Routh-Hurwitz style test: one clearly
    negative quantity is enough for instability, otherwise any quantity in
    the dead zone leaves the question open.

    Args:
        quantities: The values that must all be strictly positive.
        dead_zone: Magnitude below which a value counts as zero.

    Returns:
        One of `STABLE`, `UNSTABLE`, `INCONCLUSIVE`.
    """
    values = [float(q) for q in quantities]
    if any(q < -dead_zone for q in values):
        return UNSTABLE
    if any(abs(q) <= dead_zone for q in values):
        return INCONCLUSIVE
    return STABLE


def eigenvalue_verdict(
    eigenvalues: np.ndarray, dead_zone: float = DEAD_ZONE
) -> str:
    """Verdict from the largest real part of a spectrum."""
    return sign_verdict(float(np.max(np.real(eigenvalues))), dead_zone)
