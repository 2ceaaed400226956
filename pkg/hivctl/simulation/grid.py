from dataclasses import dataclass

from common.exceptions import NonCommensurateDelay
from common.validators import (
    validate_fields,
    validate_nonnegative,
    validate_positive,
)


# |value - k * dt| <= GRID_TOLERANCE * max(1, value)
GRID_TOLERANCE = 1e-9


def steps_in(value: float, dt: float) -> int | None:
    """Number of whole steps in `value`, or None if it is not whole."""
    steps = round(value / dt)
    if abs(value - steps * dt) <= GRID_TOLERANCE * max(1.0, value):
        return steps
    return None


@dataclass(frozen=True)
class Grid:
    """Uniform time grid t_i = i * dt for i = -m .. n.

    Build it with `Grid.from_horizon` so the delay and the horizon are
    checked against the step size.
    """

    tf: float
    dt: float
    n: int
    m: int

    @classmethod
    def from_horizon(cls, tf: float, dt: float, tau: float) -> "Grid":
        """Creates the grid covering [-tau, tf] with step dt.

        Args:
            tf: Final time in days.
            dt: Step size in days.
            tau: Delay in days.

        Raises:
            ValidationError: If tf or dt is not positive, or tau is negative.
            NonCommensurateDelay: If tau or tf is not a whole number of
                steps.
        """
        validate_fields(
            {"tf": tf, "dt": dt, "tau": tau},
            {
                "tf": validate_positive,
                "dt": validate_positive,
                "tau": validate_nonnegative,
            },
        )
        n = steps_in(tf, dt)
        if n is None or n < 1:
            raise NonCommensurateDelay(
                f"tf={tf} is not a whole number of steps of dt={dt}"
            )
        m = steps_in(tau, dt)
        if m is None:
            raise NonCommensurateDelay(
                f"tau={tau} is not a whole number of steps of dt={dt}"
            )
        return cls(tf=tf, dt=dt, n=n, m=m)

    @property
    def tau(self) -> float:
        return self.m * self.dt

    def matches_delay(self, tau: float) -> bool:
        return steps_in(tau, self.dt) == self.m
