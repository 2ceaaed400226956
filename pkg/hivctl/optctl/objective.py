"""Treatment objective J = int_0^tf x + z - A1/2 u1^2 - A2/2 u2^2 dt.

The integral is the trapezoidal rule on the Euler grid.
"""

import itertools
import logging

import numpy as np
from scipy.integrate import trapezoid

from common.exceptions import MissingControls
from common.logging import LoggerDecorator
from dynamics.model import objective_integrand
from dynamics.types import (
    ControlPair,
    HistoryFunction,
    ModelParams,
    ObjectiveWeights,
)
from simulation.grid import Grid
from simulation.integrator import simulate
from simulation.trajectory import Trajectory


logger = logging.getLogger("optctl")

CONSTANT_LEVELS = (0.0, 0.25, 0.5, 0.75, 1.0)


def evaluate_objective(traj: Trajectory, weights: ObjectiveWeights) -> float:
    """Trapezoidal J over the nodes 0 .. n of a controlled trajectory.

    Raises:
        MissingControls: If the trajectory carries no controls.
    """
    if traj.controls is None:
        raise MissingControls(
            "the objective needs the controls of every node"
        )
    nodes = traj.nodes
    controls = ControlPair(traj.controls[:, 0], traj.controls[:, 1])
    values = objective_integrand(nodes[:, 0], nodes[:, 3], controls, weights)
    return float(trapezoid(values, dx=traj.grid.dt))


def constant_controls(grid: Grid, u1: float, u2: float) -> np.ndarray:
    return np.tile([u1, u2], (grid.n + 1, 1)).astype(float)


@LoggerDecorator("optctl")
def constant_control_baseline(
    params: ModelParams,
    hist: HistoryFunction,
    grid: Grid,
    weights: ObjectiveWeights,
    levels=CONSTANT_LEVELS,
) -> dict[tuple[float, float], float]:
    """J of every constant treatment (u1, u2) with both in `levels`.

    Returns:
        The objective keyed by the control pair.
    """
    objectives = {}
    for u1, u2 in itertools.product(levels, repeat=2):
        traj = simulate(params, hist, grid, constant_controls(grid, u1, u2))
        objectives[(float(u1), float(u2))] = evaluate_objective(traj, weights)
    best = max(objectives, key=objectives.get)
    logger.info(
        "Best constant treatment %s with J=%.6g", best, objectives[best]
    )
    return objectives
