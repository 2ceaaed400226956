from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from .types import ModelParams


# Ranges found in the HIV literature, in the units of `ModelParams`.
TABLE1_RANGES = {
    "lam": (1.0, 10.0),
    "d": (0.007, 0.1),
    "beta": (0.00025, 0.5),
    "a": (0.2, 0.3),
    "mu": (2.06, 3.81),
    "big_n": (6.25, 23599.9),
    "c": (0.0051, 3.912),
    "h_ctl": (0.004, 8.087),
    "tau": (7.0, 21.0),
}

# The literature prints the killing rate range as "1 to 4.048e-4 ml virion
# per day", lower bound above the upper one. Only positivity is checked.
P_RANGE_AS_PRINTED = "1--4.048e-4 ml virion days^-1"


def validate_ranges(params: ModelParams) -> None:
    """Checks every parameter against the literature ranges.

    Args:
        params: The parameters to check.

    Raises:
        ValidationError: Keyed by every field outside its range.
    """
    errors = {}
    for name, (low, high) in TABLE1_RANGES.items():
        value = getattr(params, name)
        if not low <= value <= high:
            errors[name] = [
                _("Value %(value)s is outside the range [%(low)s, %(high)s].")
                % {"value": value, "low": low, "high": high}
            ]
    if errors:
        raise ValidationError(errors)
