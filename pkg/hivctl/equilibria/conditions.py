from typing import NamedTuple

from dynamics.types import ModelParams

from .points import e2_denominator


class ConditionValues(NamedTuple):
    """Sign conditions of the steady states.

    cond_ef: N beta lambda - d mu, negative iff the disease-free point is
        stable, positive iff the CTL-free endemic point exists.
    cond_e2_exist: lambda mu c - beta a N h, positive iff the full
        endemic point exists.
    cond_e1_e2: beta N (mu c lambda - beta h a N) - mu^2 c d, negative iff
        the CTL-free endemic point is stable.
    """

    cond_ef: float
    cond_e2_exist: float
    cond_e1_e2: float

    def as_dict(self) -> dict:
        return {key: float(value) for key, value in self._asdict().items()}


def cond_e1_e2(params: ModelParams) -> float:
    lam, d, beta, a, c, h, big_n, mu = (
        params.lam,
        params.d,
        params.beta,
        params.a,
        params.c,
        params.h_ctl,
        params.big_n,
        params.mu,
    )
    return beta * big_n * (mu * c * lam - beta * h * a * big_n) - mu**2 * c * d


def condition_values(params: ModelParams) -> ConditionValues:
    return ConditionValues(
        cond_ef=params.big_n * params.beta * params.lam - params.d * params.mu,
        cond_e2_exist=e2_denominator(params),
        cond_e1_e2=cond_e1_e2(params),
    )
