"""Numerical checks of nonnegativity and boundedness of trajectories.

With a nonnegative history every solution stays nonnegative, and
F(t) = aN x(t) + aN y(t + tau) + (a/2) v(t + tau) obeys
F(t) <= max(F(0), lambda a N / rho), rho = min(d, a/2, mu). The explicit
Euler step keeps both properties for rho * dt < 1 as long as no component
goes negative, so any violation points at a too large step.
"""

from typing import NamedTuple

import numpy as np

from common.exceptions import GridTooShort
from dynamics.types import ModelParams

from .trajectory import Trajectory


NONNEG_TOLERANCE = 1e-9
BOUND_TOLERANCE = 1e-6


class PositivityResult(NamedTuple):
    ok: bool
    node: int | None = None
    component: str | None = None


class BoundednessCertificate(NamedTuple):
    max_f: float
    bound: float
    violated: bool


def positivity_check(traj: Trajectory) -> PositivityResult:
    """Checks every stored state, history included.

    Returns:
        `ok` is false when a component is below -1e-9; `node` is then the
        grid index (-m .. n) of the first offending state.
    """
    negative = traj.states < -NONNEG_TOLERANCE
    rows = np.flatnonzero(negative.any(axis=1))
    if rows.size == 0:
        return PositivityResult(ok=True)
    row = int(rows[0])
    column = int(np.argmax(negative[row]))
    return PositivityResult(
        ok=False,
        node=row - traj.grid.m,
        component=("x", "y", "v", "z")[column],
    )


def f_values(traj: Trajectory, params: ModelParams) -> np.ndarray:
    """F on the nodes 0 .. n - m, pairing node i with node i + m."""
    n, m = traj.grid.n, traj.grid.m
    if n <= m:
        raise GridTooShort(
            f"the horizon of {n} steps does not cover the delay of {m} steps"
        )
    states = traj.states
    now = states[m : n + 1]
    ahead = states[2 * m : n + m + 1]
    scale = params.a * params.big_n
    return (
        scale * now[:, 0]
        + scale * ahead[:, 1]
        + 0.5 * params.a * ahead[:, 2]
    )


def boundedness_certificate(
    traj: Trajectory, params: ModelParams
) -> BoundednessCertificate:
    """Compares the largest F on the grid with its theoretical bound.

    Args:
        traj: A simulated trajectory.
        params: The constants it was simulated with.

    Returns:
        The observed maximum of F, the bound max(F(0), lambda a N / rho)
        and whether the maximum exceeds the bound by more than 1e-6
        relative.

    Raises:
        GridTooShort: If the horizon is not longer than the delay.
    """
    values = f_values(traj, params)
    rho = min(params.d, params.a / 2.0, params.mu)
    bound = max(float(values[0]), params.lam * params.a * params.big_n / rho)
    max_f = float(values.max())
    return BoundednessCertificate(
        max_f=max_f,
        bound=bound,
        violated=max_f > bound * (1.0 + BOUND_TOLERANCE),
    )
