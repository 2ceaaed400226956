"""Forward-backward sweeps for the delayed treatment problem.

**Functions**
    sweep_single_pass: one loop that steps the states forward and the
        costates backward together, as the published scheme does.
    sweep_iterated: full forward and backward passes repeated until the
        controls settle.

Costates live on the nodes 0 .. n + m. The tail n .. n + m holds the zero
terminal values that the advanced terms read.
"""

import logging

import numpy as np

from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from common.exceptions import GridTooShort
from common.logging import LoggerDecorator
from common.validators import (
    validate_fields,
    validate_positive,
    validate_unit_interval,
)
from dynamics.model import derivative
from dynamics.types import HistoryFunction, ModelParams, ObjectiveWeights
from simulation.grid import GRID_TOLERANCE, Grid
from simulation.integrator import (
    check_finite,
    check_grid,
    initial_columns,
    simulate,
)
from simulation.trajectory import Trajectory

from .adjoint import control_values, costate_derivative
from .objective import evaluate_objective
from .solution import OptimalSolution


logger = logging.getLogger("optctl")

SCHEME_NOTES = (
    "psi2 update uses psi3 in the aN(1 - u2) term, as the costate "
    "equation of y does",
    "psi3 update keeps the factor beta in the advanced term, as the "
    "costate equation of v does",
)

# Floor of the control scale in the relative stopping rule.
TINY_CONTROL = 1e-12

# A sweep stalls when its control change is at least this share of the
# previous one.
STALL_RATIO = 0.9
OBJECTIVE_SLACK = 1e-9
RELAXATION_CUT = 0.5


def validate_relaxation(value: float) -> None:
    validate_positive(value)
    validate_unit_interval(value)


def check_problem(
    params: ModelParams, grid: Grid, weights: ObjectiveWeights
) -> None:
    """Common preconditions of both sweeps.

    Raises:
        NonCommensurateDelay: If the grid was built for another delay.
        GridTooShort: If the horizon is shorter than one delay.
        ValidationError: If the weights are set for another horizon.
    """
    check_grid(params, grid)
    if grid.m > grid.n:
        raise GridTooShort(
            f"the horizon of {grid.n} steps is shorter than the delay of "
            f"{grid.m} steps"
        )
    if abs(weights.tf - grid.tf) > GRID_TOLERANCE * max(1.0, grid.tf):
        raise ValidationError(
            {"tf": [_("Objective horizon differs from the grid horizon.")]}
        )


@LoggerDecorator("optctl")
def sweep_single_pass(
    params: ModelParams,
    hist: HistoryFunction,
    grid: Grid,
    weights: ObjectiveWeights,
) -> OptimalSolution:
    """Runs the published single-loop scheme.

    Step i moves the states from node i to i + 1, moves the costates from
    node n - i to n - i - 1 using the states at node i + 1, and sets the
    controls of node i + 1 from the new costates. Controls not computed
    yet, including the advanced ones, are 0.

    Returns:
        The solution with `iterations = 1` and `converged = None`.
    """
    check_problem(params, grid, weights)
    n, m, dt = grid.n, grid.m, grid.dt
    xs, ys, vs, zs = initial_columns(hist, grid)
    u1s, u2s = [0.0] * (n + m + 1), [0.0] * (n + m + 1)
    psi1s, psi2s, psi3s, psi4s = ([0.0] * (n + m + 1) for _ in range(4))

    for i in range(n):
        k = i + m
        dx, dy, dv, dz = derivative(
            xs[k], ys[k], vs[k], zs[k], xs[i], vs[i], u1s[i], u2s[i], params
        )
        x, y, v, z = (
            xs[k] + dt * dx,
            ys[k] + dt * dy,
            vs[k] + dt * dv,
            zs[k] + dt * dz,
        )
        xs.append(x)
        ys.append(y)
        vs.append(v)
        zs.append(z)

        j = n - i
        advanced = (psi2s[j + m], u1s[i + m]) if j <= n - m else None
        dpsi1, dpsi2, dpsi3, dpsi4 = costate_derivative(
            x,
            y,
            v,
            z,
            psi1s[j],
            psi2s[j],
            psi3s[j],
            psi4s[j],
            u1s[i],
            u2s[i],
            advanced,
            params,
        )
        psi1s[j - 1] = psi1s[j] - dt * dpsi1
        psi2s[j - 1] = psi2s[j] - dt * dpsi2
        psi3s[j - 1] = psi3s[j] - dt * dpsi3
        psi4s[j - 1] = psi4s[j] - dt * dpsi4

        u1s[i + 1], u2s[i + 1] = control_values(
            x,
            y,
            v,
            xs[i + 1],
            vs[i + 1],
            psi1s[j - 1],
            psi2s[j - 1],
            psi3s[j - 1],
            params,
            weights,
        )

    states = np.column_stack([xs, ys, vs, zs])
    check_finite(states, grid)
    trajectory = Trajectory(
        grid=grid,
        states=states,
        controls=np.column_stack([u1s[: n + 1], u2s[: n + 1]]),
        adjoints=np.column_stack([psi1s, psi2s, psi3s, psi4s]),
    )
    objective = evaluate_objective(trajectory, weights)
    logger.info("Single pass over %s steps: J=%.6g", n, objective)
    return OptimalSolution(
        trajectory=trajectory,
        objective=objective,
        iterations=1,
        converged=None,
        notes=list(SCHEME_NOTES),
        objective_history=[objective],
    )


def backward_pass(
    params: ModelParams, grid: Grid, states: np.ndarray, controls: np.ndarray
) -> np.ndarray:
    """Costates on the nodes 0 .. n + m for fixed states and controls.

    Node k - 1 is reached from node k with the costate derivative at k;
    the advanced terms are read at k + m while k <= n - m.
    """
    n, m, dt = grid.n, grid.m, grid.dt
    xs, ys, vs, zs = (states[:, column].tolist() for column in range(4))
    u1s, u2s = controls[:, 0].tolist(), controls[:, 1].tolist()
    psi1s, psi2s, psi3s, psi4s = ([0.0] * (n + m + 1) for _ in range(4))

    for k in range(n, 0, -1):
        s = k + m
        advanced = (psi2s[k + m], u1s[k + m]) if k <= n - m else None
        dpsi1, dpsi2, dpsi3, dpsi4 = costate_derivative(
            xs[s],
            ys[s],
            vs[s],
            zs[s],
            psi1s[k],
            psi2s[k],
            psi3s[k],
            psi4s[k],
            u1s[k],
            u2s[k],
            advanced,
            params,
        )
        psi1s[k - 1] = psi1s[k] - dt * dpsi1
        psi2s[k - 1] = psi2s[k] - dt * dpsi2
        psi3s[k - 1] = psi3s[k] - dt * dpsi3
        psi4s[k - 1] = psi4s[k] - dt * dpsi4

    return np.column_stack([psi1s, psi2s, psi3s, psi4s])


def control_update(
    params: ModelParams,
    grid: Grid,
    weights: ObjectiveWeights,
    states: np.ndarray,
    adjoints: np.ndarray,
) -> np.ndarray:
    """Pointwise optimal controls of the nodes 0 .. n."""
    m = grid.m
    controls = np.empty((grid.n + 1, 2))
    for k in range(grid.n + 1):
        x, y, v, _ = states[k + m]
        x_lag, _, v_lag, _ = states[k]
        psi1, psi2, psi3, _ = adjoints[k]
        controls[k] = control_values(
            x, y, v, x_lag, v_lag, psi1, psi2, psi3, params, weights
        )
    return controls


def sweep_stalled(changes: list[float], history: list[float]) -> bool:
    """Whether the last sweep failed to make progress.

    It did when the control change stopped shrinking or the objective
    fell by more than a relative `OBJECTIVE_SLACK`.
    """
    if len(changes) >= 2 and changes[-1] >= STALL_RATIO * changes[-2]:
        return True
    if len(history) >= 2:
        slack = OBJECTIVE_SLACK * abs(history[-2])
        return history[-1] < history[-2] - slack
    return False


@LoggerDecorator("optctl")
def sweep_iterated(
    params: ModelParams,
    hist: HistoryFunction,
    grid: Grid,
    weights: ObjectiveWeights,
    tol: float | None = None,
    max_iter: int | None = None,
    relaxation: float | None = None,
) -> OptimalSolution:
    """Repeats forward pass, backward pass and relaxed control update.

    `relaxation` is the largest weight given to the new controls. It is
    halved whenever a sweep stalls, see `sweep_stalled`. The sweep stops
    once the largest control change is at most `tol * max|u|`. A last
    forward and backward pass with the final controls gives the returned
    states, costates and objective. Unset arguments come from
    `settings.HIVCTL`.

    Args:
        params: The model constants.
        hist: The constant initial function.
        grid: The time grid; `weights.tf` must equal `grid.tf`.
        weights: Control costs.
        tol: Relative control-change tolerance, positive.
        max_iter: Largest number of sweeps, at least 1.
        relaxation: Upper bound of the weight of the new controls, in
            (0, 1].

    Returns:
        The solution; `converged` tells whether the tolerance was met.
    """
    defaults = settings.HIVCTL
    tol = defaults["ITERATE_TOL"] if tol is None else tol
    max_iter = defaults["ITERATE_MAX_ITER"] if max_iter is None else max_iter
    if relaxation is None:
        relaxation = defaults["ITERATE_RELAXATION"]
    validate_fields(
        {"tol": tol, "max_iter": max_iter, "relaxation": relaxation},
        {
            "tol": validate_positive,
            "max_iter": validate_positive,
            "relaxation": validate_relaxation,
        },
    )
    check_problem(params, grid, weights)

    controls = np.zeros((grid.n + 1, 2))
    history, changes = [], []
    rate, cuts = relaxation, 0
    converged = False
    iteration = 0
    while iteration < max_iter:
        iteration += 1
        traj = simulate(params, hist, grid, controls)
        history.append(evaluate_objective(traj, weights))
        if sweep_stalled(changes, history):
            rate *= RELAXATION_CUT
            cuts += 1
        adjoints = backward_pass(params, grid, traj.states, controls)
        proposal = control_update(params, grid, weights, traj.states, adjoints)
        updated = np.clip((1.0 - rate) * controls + rate * proposal, 0.0, 1.0)
        change = float(np.max(np.abs(updated - controls)))
        changes.append(change)
        scale = max(float(np.max(np.abs(updated))), TINY_CONTROL)
        controls = updated
        if change <= tol * scale:
            converged = True
            break

    final = simulate(params, hist, grid, controls)
    adjoints = backward_pass(params, grid, final.states, controls)
    objective = evaluate_objective(final, weights)
    notes = [
        f"objective after the first forward pass {history[0]:.9g}, "
        f"after the last {history[-1]:.9g}, final {objective:.9g}"
    ]
    if len(history) > 1:
        notes.append(
            "objective nondecreasing over the last two sweeps: "
            f"{history[-1] >= history[-2]}"
        )
    if cuts:
        notes.append(
            f"relaxation reduced from {relaxation:.3g} to {rate:.3g} "
            f"after {cuts} stalled sweeps"
        )
    if not converged:
        notes.append(
            f"control change {change:.3g} still above "
            f"{tol * scale:.3g} after {iteration} sweeps"
        )
    logger.info(
        "Iterated sweep: %s sweeps, %s relaxation cuts, converged=%s, J=%.6g",
        iteration,
        cuts,
        converged,
        objective,
    )
    return OptimalSolution(
        trajectory=Trajectory(
            grid=grid,
            states=final.states,
            controls=controls,
            adjoints=adjoints,
        ),
        objective=objective,
        iterations=iteration,
        converged=converged,
        notes=notes,
        objective_history=history + [objective],
    )
