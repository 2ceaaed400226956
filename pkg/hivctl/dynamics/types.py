"""Value types of the delayed infection model with CTL response.

**Classes**
    State: concentrations (x, y, v, z) at one instant.
    Derivative: time derivative of a `State`.
    ControlPair: treatment efficiencies (u1, u2) in [0, 1].
    ModelParams: biological constants and the intracellular delay.
    HistoryFunction: constant initial function on [-tau, 0].
    ObjectiveWeights: control costs and treatment horizon.
"""

from dataclasses import asdict, dataclass, fields, replace
from typing import NamedTuple

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from common.validators import (
    validate_fields,
    validate_nonnegative,
    validate_positive,
    validate_unit_interval,
)


class State(NamedTuple):
    x: float
    y: float
    v: float
    z: float


class Derivative(NamedTuple):
    dx: float
    dy: float
    dv: float
    dz: float


class ControlPair(NamedTuple):
    u1: float = 0.0
    u2: float = 0.0

    def validate(self) -> None:
        """Raises `ValidationError` naming u1 or u2 if outside [0, 1]."""
        validate_fields(
            self._asdict(),
            {"u1": validate_unit_interval, "u2": validate_unit_interval},
        )


ZERO_CONTROL = ControlPair(0.0, 0.0)


def clamp_unit(value: float) -> float:
    return min(1.0, max(0.0, value))


class _Validated:
    """Mixin for frozen dataclasses that validate every field on creation."""

    validators: dict = {}

    def __post_init__(self):
        validate_fields(self.__dict__, self.validators)

    def with_overrides(self, **changes):
        """Returns a validated copy with some fields replaced.

        Raises:
            ValidationError: If a field name is unknown or a new value
                breaks an invariant.
        """
        names = {field.name for field in fields(self)}
        unknown = sorted(set(changes) - names)
        if unknown:
            raise ValidationError(
                {name: [_("Unknown field.")] for name in unknown}
            )
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ModelParams(_Validated):
    """Constants of the delayed model.

    The CTL death rate is `h_ctl` and the number of virions released by an
    infected cell is `big_n`, keeping `h`, `n` and `dt` free for grid
    arithmetic. `tau` is the intracellular delay in days, every other field
    is a rate or count that must be strictly positive.
    """

    lam: float
    d: float
    beta: float
    a: float
    p: float
    c: float
    h_ctl: float
    big_n: float
    mu: float
    tau: float = 0.0

    validators = {
        "lam": validate_positive,
        "d": validate_positive,
        "beta": validate_positive,
        "a": validate_positive,
        "p": validate_positive,
        "c": validate_positive,
        "h_ctl": validate_positive,
        "big_n": validate_positive,
        "mu": validate_positive,
        "tau": validate_nonnegative,
    }


@dataclass(frozen=True)
class HistoryFunction(_Validated):
    """Constant initial concentrations held on [-tau, 0]."""

    x0: float
    y0: float
    v0: float
    z0: float

    validators = {
        "x0": validate_nonnegative,
        "y0": validate_nonnegative,
        "v0": validate_nonnegative,
        "z0": validate_nonnegative,
    }

    def as_state(self) -> State:
        return State(self.x0, self.y0, self.v0, self.z0)


@dataclass(frozen=True)
class ObjectiveWeights(_Validated):
    A1: float
    A2: float
    tf: float

    validators = {
        "A1": validate_positive,
        "A2": validate_positive,
        "tf": validate_positive,
    }
