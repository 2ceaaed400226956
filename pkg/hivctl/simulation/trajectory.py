"""Trajectories on a uniform grid and their CSV form.

States are stored for the grid nodes -m .. n, so row `m + i` of
`Trajectory.states` is the state at t_i. Controls cover the nodes 0 .. n
and adjoints the nodes 0 .. n + m, the tail past t_f being the terminal
zeros the advanced adjoint terms read.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from dynamics.types import State

from .grid import Grid


STATE_COLUMNS = ("x", "y", "v", "z")
CONTROL_COLUMNS = ("u1", "u2")
ADJOINT_COLUMNS = ("psi1", "psi2", "psi3", "psi4")

CSV_FORMAT = "%.12g"


@dataclass
class Trajectory:
    grid: Grid
    states: np.ndarray
    controls: np.ndarray | None = None
    adjoints: np.ndarray | None = None

    def __post_init__(self):
        n, m = self.grid.n, self.grid.m
        if self.states.shape != (n + m + 1, 4):
            raise ValueError(
                f"states must have shape {(n + m + 1, 4)}, "
                f"got {self.states.shape}"
            )
        if self.controls is not None and self.controls.shape != (n + 1, 2):
            raise ValueError(
                f"controls must have shape {(n + 1, 2)}, "
                f"got {self.controls.shape}"
            )
        if self.adjoints is not None and self.adjoints.shape != (
            n + m + 1,
            4,
        ):
            raise ValueError(
                f"adjoints must have shape {(n + m + 1, 4)}, "
                f"got {self.adjoints.shape}"
            )

    @property
    def times(self) -> np.ndarray:
        """Times t_0 .. t_n."""
        return np.arange(self.grid.n + 1) * self.grid.dt

    @property
    def nodes(self) -> np.ndarray:
        """States at t_0 .. t_n, without the history."""
        return self.states[self.grid.m :]

    def state_at(self, i: int) -> State:
        """State at node i, where -m <= i <= n."""
        if not -self.grid.m <= i <= self.grid.n:
            raise IndexError(f"node {i} is outside the grid")
        return State(*(float(value) for value in self.states[self.grid.m + i]))


def final_state(traj: Trajectory) -> State:
    return traj.state_at(traj.grid.n)


def trajectory_columns(traj: Trajectory) -> tuple[list[str], np.ndarray]:
    """Header and table of the CSV form, one row per node 0 .. n."""
    n = traj.grid.n
    columns = ["t", *STATE_COLUMNS]
    blocks = [traj.times[:, None], traj.nodes]
    if traj.controls is not None:
        columns.extend(CONTROL_COLUMNS)
        blocks.append(traj.controls)
    if traj.adjoints is not None:
        columns.extend(ADJOINT_COLUMNS)
        blocks.append(traj.adjoints[: n + 1])
    return columns, np.hstack(blocks)


def write_trajectory_csv(traj: Trajectory, path: Path) -> Path:
    """Writes the trajectory as `t,x,y,v,z[,u1,u2][,psi1,..,psi4]`.

    Args:
        traj: The trajectory to export.
        path: The CSV file to create; its directory must exist.

    Returns:
        The path written.
    """
    columns, table = trajectory_columns(traj)
    np.savetxt(
        path,
        table,
        fmt=CSV_FORMAT,
        delimiter=",",
        header=",".join(columns),
        comments="",
    )
    return Path(path)


def read_trajectory_csv(path: Path) -> tuple[list[str], np.ndarray]:
    """Reads a file written by `write_trajectory_csv`.

    Returns:
        The column names and a table with one row per node.
    """
    with open(path, encoding="utf-8") as csv_file:
        columns = csv_file.readline().strip().split(",")
        table = np.loadtxt(csv_file, delimiter=",", ndmin=2)
    return columns, table
