import math
from typing import Mapping

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _


def validate_finite(value: float) -> None:
    """Checks that a number is neither NaN nor infinite.

    Raises:
        ValidationError: If the value is not a finite number.
    """
    if not math.isfinite(value):
        raise ValidationError(_("Value must be a finite number."))


def validate_positive(value: float) -> None:
    """Checks that a number is finite and strictly positive.

    Raises:
        ValidationError: If the value is not finite or is <= 0.
    """
    validate_finite(value)
    if value <= 0:
        raise ValidationError(_("Value must be strictly positive."))


def validate_nonnegative(value: float) -> None:
    """Checks that a number is finite and not negative.

    Raises:
        ValidationError: If the value is not finite or is < 0.
    """
    validate_finite(value)
    if value < 0:
        raise ValidationError(_("Value must be nonnegative."))


def validate_unit_interval(value: float) -> None:
    """Checks that a number lies in [0, 1].

    Raises:
        ValidationError: If the value is outside [0, 1].
    """
    validate_finite(value)
    if not 0.0 <= value <= 1.0:
        raise ValidationError(_("Value must lie in [0, 1]."))


def validate_fields(values: Mapping, validators: dict) -> None:
    """Runs field validators and reports errors by field name.

    Args:
        values: A mapping of field name to value.
        validators: A mapping of attribute name to a validator function.

    Raises:
        ValidationError: With a message dict keyed by the offending fields.
    """
    errors = {}
    for name, validator in validators.items():
        try:
            validator(values[name])
        except ValidationError as error:
            errors[name] = error.messages
        except TypeError:
            errors[name] = [_("Value must be a number.")]
    if errors:
        raise ValidationError(errors)
