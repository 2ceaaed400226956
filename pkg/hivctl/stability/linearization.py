"""Linearization of the delayed model around a steady state.

The linear system reads w'(t) = a1 w(t) + a2 w(t - tau). Its
characteristic function is det(zeta I - a1 - exp(-zeta tau) a2).
"""

from typing import NamedTuple

import numpy as np

from common.verdicts import eigenvalue_verdict
from dynamics.types import ModelParams
from equilibria.points import Equilibrium

from .polynomials import PolyCoeffs


class LinearizationPair(NamedTuple):
    a1: np.ndarray
    a2: np.ndarray

    @property
    def tau0(self) -> np.ndarray:
        """Jacobian of the model without delay."""
        return self.a1 + self.a2


def linearize(params: ModelParams, eq: Equilibrium) -> LinearizationPair:
    """Jacobians of the current and delayed terms at `eq.point`.

    Only the infected cell equation depends on the past, so `a2` has
    nonzero entries in its second row only.
    """
    x, y, v, z = eq.point
    d, beta, a, p, c, h, big_n, mu = (
        params.d,
        params.beta,
        params.a,
        params.p,
        params.c,
        params.h_ctl,
        params.big_n,
        params.mu,
    )
    a1 = np.array(
        [
            [-d - beta * v, 0.0, -beta * x, 0.0],
            [0.0, -a - p * z, 0.0, -p * y],
            [0.0, a * big_n, -mu, 0.0],
            [c * y * z, c * x * z, 0.0, c * x * y - h],
        ]
    )
    a2 = np.zeros((4, 4))
    a2[1, 0] = beta * v
    a2[1, 2] = beta * x
    return LinearizationPair(a1=a1, a2=a2)


def char_fn(pair: LinearizationPair, zeta: complex, tau: float) -> complex:
    """det(zeta I - a1 - exp(-zeta tau) a2)."""
    matrix = zeta * np.eye(4) - pair.a1 - np.exp(-zeta * tau) * pair.a2
    return complex(np.linalg.det(matrix))


def char_poly_tau0(pair: LinearizationPair) -> PolyCoeffs:
    """Characteristic polynomial of a1 + a2, computed from its eigenvalues."""
    return PolyCoeffs.from_highest_first(np.real(np.poly(pair.tau0)))


def eigenvalues_tau0(pair: LinearizationPair) -> np.ndarray:
    return np.linalg.eigvals(pair.tau0)


def numeric_verdict(pair: LinearizationPair) -> str:
    """Stability of the model without delay, from the spectrum of a1 + a2."""
    return eigenvalue_verdict(eigenvalues_tau0(pair))
