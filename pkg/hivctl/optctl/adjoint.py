"""Costate equations of the treatment problem and the optimal controls.

The adjoint of the infected cells enters the equations of x and v at
t + tau, because the infection term reads x and v at t - tau. Those
advanced terms only act on [0, tf - tau]; past that point they are not
evaluated at all.
"""

from typing import NamedTuple

from dynamics.types import (
    ControlPair,
    ModelParams,
    ObjectiveWeights,
    State,
    clamp_unit,
)


class Adjoint(NamedTuple):
    psi1: float
    psi2: float
    psi3: float
    psi4: float


TERMINAL_ADJOINT = Adjoint(0.0, 0.0, 0.0, 0.0)


def costate_derivative(
    x: float,
    y: float,
    v: float,
    z: float,
    psi1: float,
    psi2: float,
    psi3: float,
    psi4: float,
    u1: float,
    u2: float,
    advanced: tuple[float, float] | None,
    params: ModelParams,
) -> tuple[float, float, float, float]:
    """Float-level kernel of `adjoint_rhs`.

    `advanced` is (psi2, u1) at t + tau, or None past tf - tau.
    """
    d, beta, a, p, c, h = (
        params.d,
        params.beta,
        params.a,
        params.p,
        params.c,
        params.h_ctl,
    )
    dpsi1 = 1.0 + psi1 * (d + (1.0 - u1) * beta * v) - psi4 * c * y * z
    dpsi3 = psi1 * (beta * (1.0 - u1) * x) + psi3 * params.mu
    if advanced is not None:
        psi2_advanced, u1_advanced = advanced
        dpsi1 += psi2_advanced * (u1_advanced - 1.0) * beta * v
        dpsi3 += psi2_advanced * (beta * (u1_advanced - 1.0) * x)
    dpsi2 = (
        psi2 * a
        - psi3 * (1.0 - u2) * a * params.big_n
        - psi4 * c * x * z
        + psi2 * p * z
    )
    dpsi4 = 1.0 + psi2 * p * y + psi4 * (h - c * x * y)
    return dpsi1, dpsi2, dpsi3, dpsi4


def adjoint_rhs(
    state: State,
    adj: Adjoint,
    adj_advanced: Adjoint,
    u: ControlPair,
    u_advanced: ControlPair,
    params: ModelParams,
    active: bool,
) -> Adjoint:
    """Time derivative of the costates.

    Args:
        state: The optimal state at t.
        adj: The costates at t.
        adj_advanced: The costates at t + tau.
        u: The controls at t.
        u_advanced: The controls at t + tau.
        params: The model constants.
        active: Whether t <= tf - tau. When False the advanced arguments
            are never read.

    Returns:
        psi'(t), with the sign convention in which psi(tf) = 0 and the
        costates are integrated backwards.
    """
    advanced = (adj_advanced.psi2, u_advanced.u1) if active else None
    return Adjoint(
        *costate_derivative(
            state.x,
            state.y,
            state.v,
            state.z,
            adj.psi1,
            adj.psi2,
            adj.psi3,
            adj.psi4,
            u.u1,
            u.u2,
            advanced,
            params,
        )
    )


def control_values(
    x: float,
    y: float,
    v: float,
    x_lag: float,
    v_lag: float,
    psi1: float,
    psi2: float,
    psi3: float,
    params: ModelParams,
    weights: ObjectiveWeights,
) -> tuple[float, float]:
    """Float-level kernel of `control_from_costate`."""
    raw1 = (params.beta / weights.A1) * (psi2 * v_lag * x_lag - psi1 * v * x)
    raw2 = (1.0 / weights.A2) * psi3 * params.a * params.big_n * y
    return clamp_unit(raw1), clamp_unit(raw2)


def control_from_costate(
    state_now: State,
    state_delayed: State,
    adj_now: Adjoint,
    params: ModelParams,
    weights: ObjectiveWeights,
) -> ControlPair:
    """Pointwise maximizer of the Hamiltonian, clamped to [0, 1]^2."""
    return ControlPair(
        *control_values(
            state_now.x,
            state_now.y,
            state_now.v,
            state_delayed.x,
            state_delayed.v,
            adj_now.psi1,
            adj_now.psi2,
            adj_now.psi3,
            params,
            weights,
        )
    )
