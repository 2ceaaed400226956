"""Closed-form steady states of the model.

**Functions**
    disease_free: (lambda/d, 0, 0, 0), always feasible.
    endemic_e1: infection without CTL response.
    endemic_e2: infection with an active CTL response.
    all_equilibria: every steady state that has a finite formula.

Endemic points are returned even when a component is negative; the
`feasible` flag tells whether the point is biologically meaningful.
The delay does not move any steady state.
"""

import logging
from dataclasses import dataclass

from common.exceptions import DegenerateDenominator
from dynamics.types import ModelParams, State


logger = logging.getLogger("equilibria")

DISEASE_FREE = "disease-free"
CTL_FREE_ENDEMIC = "ctl-free-endemic"
FULL_ENDEMIC = "full-endemic"

KINDS = (DISEASE_FREE, CTL_FREE_ENDEMIC, FULL_ENDEMIC)

DENOMINATOR_TOLERANCE = 1e-14


@dataclass(frozen=True)
class Equilibrium:
    kind: str
    point: State
    feasible: bool

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "point": [float(value) for value in self.point],
            "feasible": self.feasible,
        }


def disease_free(params: ModelParams) -> Equilibrium:
    return Equilibrium(
        kind=DISEASE_FREE,
        point=State(params.lam / params.d, 0.0, 0.0, 0.0),
        feasible=True,
    )


def endemic_e1(params: ModelParams) -> Equilibrium:
    """The CTL-free endemic point.

    Feasible iff lambda beta N - d mu > 0, which is when infected cells
    and virus are positive.
    """
    lam, d, beta, a, big_n, mu = (
        params.lam,
        params.d,
        params.beta,
        params.a,
        params.big_n,
        params.mu,
    )
    growth = lam * beta * big_n - d * mu
    point = State(
        mu / (big_n * beta),
        growth / (a * big_n * beta),
        growth / (mu * beta),
        0.0,
    )
    return Equilibrium(kind=CTL_FREE_ENDEMIC, point=point, feasible=growth > 0)


def e2_denominator(params: ModelParams) -> float:
    """lambda mu c - beta a N h, positive iff the full endemic point exists."""
    return (
        params.lam * params.mu * params.c
        - params.beta * params.a * params.big_n * params.h_ctl
    )


def endemic_e2(params: ModelParams) -> Equilibrium:
    """The full endemic point.

    Args:
        params: The model constants.

    Returns:
        The point, feasible iff lambda mu c - beta a N h > 0 and the CTL
        component is nonnegative.

    Raises:
        DegenerateDenominator: If lambda mu c = beta a N h up to a relative
            1e-14.
    """
    lam, d, beta, a, p, c, h, big_n, mu = (
        params.lam,
        params.d,
        params.beta,
        params.a,
        params.p,
        params.c,
        params.h_ctl,
        params.big_n,
        params.mu,
    )
    denominator = e2_denominator(params)
    scale = max(abs(lam * mu * c), abs(beta * a * big_n * h))
    if abs(denominator) <= DENOMINATOR_TOLERANCE * scale:
        raise DegenerateDenominator(
            "lambda*mu*c equals beta*a*N*h_ctl, the full endemic point "
            "is at infinity"
        )
    x = denominator / (d * mu * c)
    z = (beta * a * big_n / (mu * p)) * x - a / p
    point = State(
        x,
        d * h * mu / denominator,
        d * h * a * big_n / denominator,
        z,
    )
    return Equilibrium(
        kind=FULL_ENDEMIC, point=point, feasible=denominator > 0 and z >= 0
    )


def all_equilibria(params: ModelParams) -> list[Equilibrium]:
    equilibria = [disease_free(params), endemic_e1(params)]
    try:
        equilibria.append(endemic_e2(params))
    except DegenerateDenominator as error:
        logger.warning("Skipping the full endemic point: %s", error)
    return equilibria
