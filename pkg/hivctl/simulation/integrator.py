"""Method of steps for the delayed model.

The step is explicit Euler with the delayed terms read `m` nodes back, so
a delay has to be a whole number of steps. History nodes hold the constant
initial function.
"""

import logging

import numpy as np

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from common.exceptions import NonCommensurateDelay, NonFiniteState
from common.logging import LoggerDecorator
from dynamics.model import derivative
from dynamics.types import HistoryFunction, ModelParams

from .grid import Grid
from .trajectory import STATE_COLUMNS, Trajectory


logger = logging.getLogger("simulation")


def check_grid(params: ModelParams, grid: Grid) -> None:
    """Raises `NonCommensurateDelay` if the grid was built for another tau."""
    if not grid.matches_delay(params.tau):
        raise NonCommensurateDelay(
            f"tau={params.tau} does not match the grid delay of {grid.m} "
            f"steps of dt={grid.dt}"
        )


def check_controls(controls: np.ndarray, grid: Grid) -> np.ndarray:
    """Validates a per-node control table of shape (n + 1, 2).

    Raises:
        ValidationError: If the shape is wrong or a value is outside [0, 1].
    """
    controls = np.asarray(controls, dtype=float)
    if controls.shape != (grid.n + 1, 2):
        raise ValidationError(
            {
                "controls": [
                    _("Expected %(count)s control pairs.")
                    % {"count": grid.n + 1}
                ]
            }
        )
    if not np.all((controls >= 0.0) & (controls <= 1.0)):
        raise ValidationError(
            {"controls": [_("Every control must lie in [0, 1].")]}
        )
    return controls


def initial_columns(hist: HistoryFunction, grid: Grid) -> list[list[float]]:
    """One list per state component, holding the m + 1 history nodes."""
    return [[float(value)] * (grid.m + 1) for value in hist.as_state()]


def check_finite(states: np.ndarray, grid: Grid) -> None:
    finite = np.isfinite(states).all(axis=1)
    if not finite.all():
        row = int(np.argmin(finite))
        column = STATE_COLUMNS[int(np.argmin(np.isfinite(states[row])))]
        raise NonFiniteState(
            f"{column} is not finite at node {row - grid.m} "
            f"(t={(row - grid.m) * grid.dt:g}); dt={grid.dt} is too large"
        )


@LoggerDecorator("simulation")
def simulate(
    params: ModelParams,
    hist: HistoryFunction,
    grid: Grid,
    controls: np.ndarray | None = None,
    clamp_nonneg: bool = False,
) -> Trajectory:
    """Integrates the delayed model over the grid.

    Args:
        params: The model constants; `params.tau` must match `grid.m`.
        hist: The constant initial function.
        grid: The time grid.
        controls: Optional (n + 1, 2) table of (u1, u2) per node. Missing
            controls mean no treatment.
        clamp_nonneg: Set negative components to zero after each step.

    Returns:
        The trajectory with history and node states.

    Raises:
        NonCommensurateDelay: If the grid does not match the delay.
        NonFiniteState: If a component becomes NaN or infinite.
        ValidationError: If the control table is malformed.
    """
    check_grid(params, grid)
    n, m, dt = grid.n, grid.m, grid.dt
    if controls is None:
        u1s = u2s = [0.0] * n
    else:
        controls = check_controls(controls, grid)
        u1s, u2s = controls[:, 0].tolist(), controls[:, 1].tolist()
    xs, ys, vs, zs = initial_columns(hist, grid)

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
        if clamp_nonneg:
            x, y, v, z = max(x, 0.0), max(y, 0.0), max(v, 0.0), max(z, 0.0)
        xs.append(x)
        ys.append(y)
        vs.append(v)
        zs.append(z)

    states = np.column_stack([xs, ys, vs, zs])
    check_finite(states, grid)
    logger.info(
        "Simulated %s steps of dt=%s with a delay of %s steps", n, dt, m
    )
    return Trajectory(grid=grid, states=states, controls=controls)
