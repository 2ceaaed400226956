from dataclasses import dataclass, field

import numpy as np

from dynamics.types import HistoryFunction, ModelParams, ObjectiveWeights
from simulation.integrator import simulate
from simulation.trajectory import Trajectory

from .objective import constant_controls, evaluate_objective


SWITCH_LEVEL = 0.5


@dataclass
class OptimalSolution:
    """States, controls and costates of one sweep.

    `converged` is None for the single pass, which has no stopping rule.
    `objective_history` holds J after every forward pass.
    """

    trajectory: Trajectory
    objective: float
    iterations: int
    converged: bool | None
    notes: list[str] = field(default_factory=list)
    objective_history: list[float] = field(default_factory=list)

    @property
    def controls(self) -> np.ndarray:
        return self.trajectory.controls


def switch_count(values: np.ndarray, level: float = SWITCH_LEVEL) -> int:
    """Number of times a control trace crosses `level`."""
    above = np.asarray(values) >= level
    return int(np.count_nonzero(above[1:] != above[:-1]))


def summarize(
    solution: OptimalSolution,
    params: ModelParams,
    hist: HistoryFunction,
    weights: ObjectiveWeights,
) -> dict:
    """Summary written by the optimize mode.

    Besides the solution fields it holds the switch count of u1, the mean
    of u2 and J of the untreated run on the same grid.
    """
    grid = solution.trajectory.grid
    untreated = simulate(
        params, hist, grid, constant_controls(grid, 0.0, 0.0)
    )
    return {
        "objective": solution.objective,
        "iterations": solution.iterations,
        "converged": solution.converged,
        "u1_switch_count": switch_count(solution.controls[:, 0]),
        "u2_mean": float(np.mean(solution.controls[:, 1])),
        "zero_control_objective": evaluate_objective(untreated, weights),
        "notes": list(solution.notes),
    }
