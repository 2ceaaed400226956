"""Right-hand sides of the delayed model and the objective integrand.

**Functions**
    derivative: float-level kernel shared by the integrators.
    rhs_uncontrolled: the model without treatment.
    rhs_controlled: the model under treatment efficiencies (u1, u2).
    objective_integrand: running benefit minus treatment cost.

The non-delayed model is the `tau = 0` case: pass the current state as the
delayed one.
"""

from .types import (
    ZERO_CONTROL,
    ControlPair,
    Derivative,
    ModelParams,
    ObjectiveWeights,
    State,
)


def derivative(
    x: float,
    y: float,
    v: float,
    z: float,
    x_lag: float,
    v_lag: float,
    u1: float,
    u2: float,
    params: ModelParams,
) -> tuple[float, float, float, float]:
    """Evaluates the controlled system on plain floats.

    The integrators call this once per step, so it takes no containers.
    `x_lag` and `v_lag` are the uninfected cells and virus at t - tau.
    """
    infection = params.beta * (1.0 - u1)
    return (
        params.lam - params.d * x - infection * x * v,
        infection * x_lag * v_lag - params.a * y - params.p * y * z,
        params.a * params.big_n * (1.0 - u2) * y - params.mu * v,
        params.c * x * y * z - params.h_ctl * z,
    )


def rhs_uncontrolled(
    now: State, delayed: State, params: ModelParams
) -> Derivative:
    """Time derivative of the model without treatment.

    Args:
        now: The state at time t.
        delayed: The state at time t - tau.
        params: The model constants.

    Returns:
        The derivative at time t.
    """
    return rhs_controlled(now, delayed, ZERO_CONTROL, params)


def rhs_controlled(
    now: State, delayed: State, u: ControlPair, params: ModelParams
) -> Derivative:
    """Time derivative of the model under treatment.

    `u.u1` blocks new infections and `u.u2` inhibits virus production.
    Nothing is clamped here, a negative derivative is returned as is.
    """
    return Derivative(
        *derivative(
            now.x,
            now.y,
            now.v,
            now.z,
            delayed.x,
            delayed.v,
            u.u1,
            u.u2,
            params,
        )
    )


def objective_integrand(x, z, u: ControlPair, w: ObjectiveWeights):
    """x + z - (A1/2) u1^2 - (A2/2) u2^2.

    Works element-wise when the arguments are numpy arrays.
    """
    return x + z - 0.5 * w.A1 * u.u1**2 - 0.5 * w.A2 * u.u2**2
