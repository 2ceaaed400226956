import numpy as np

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from core.settings.base import default_result_backend

from .exceptions import (
    IO_EXIT_CODE,
    NUMERIC_EXIT_CODE,
    VALIDATION_EXIT_CODE,
    GridTooShort,
    NonFiniteState,
)
from .logging import LoggerDecorator, summarize_argument
from .validators import (
    validate_nonnegative,
    validate_positive,
    validate_unit_interval,
)
from .verdicts import (
    INCONCLUSIVE,
    STABLE,
    UNSTABLE,
    eigenvalue_verdict,
    positivity_verdict,
    sign_verdict,
)


class VerdictTests(SimpleTestCase):
    def test_sign_verdict(self):
        self.assertEqual(sign_verdict(-1e-3), STABLE)
        self.assertEqual(sign_verdict(2.0), UNSTABLE)
        self.assertEqual(sign_verdict(1e-13), INCONCLUSIVE)
        self.assertEqual(sign_verdict(0.0), INCONCLUSIVE)

    def test_positivity_verdict_negative_wins_over_dead_zone(self):
        self.assertEqual(positivity_verdict([1.0, 0.0, -1.0]), UNSTABLE)
        self.assertEqual(positivity_verdict([1.0, 0.0, 3.0]), INCONCLUSIVE)
        self.assertEqual(positivity_verdict([1.0, 2.0, 3.0]), STABLE)

    def test_eigenvalue_verdict(self):
        eigenvalues = np.array([-1.0 + 2.0j, -1.0 - 2.0j, -0.5])
        self.assertEqual(eigenvalue_verdict(eigenvalues), STABLE)
        eigenvalues = np.array([0.1 + 2.0j, 0.1 - 2.0j, -0.5])
        self.assertEqual(eigenvalue_verdict(eigenvalues), UNSTABLE)


class ValidatorTests(SimpleTestCase):
    def test_validate_positive(self):
        validate_positive(1e-9)
        self.assertRaises(ValidationError, validate_positive, 0.0)
        self.assertRaises(ValidationError, validate_positive, float("nan"))
        self.assertRaises(ValidationError, validate_positive, float("inf"))

    def test_validate_nonnegative(self):
        validate_nonnegative(0.0)
        self.assertRaises(ValidationError, validate_nonnegative, -1e-12)

    def test_validate_unit_interval(self):
        validate_unit_interval(0.0)
        validate_unit_interval(1.0)
        self.assertRaises(ValidationError, validate_unit_interval, 1.5)


class ExceptionTests(SimpleTestCase):
    def test_exit_codes(self):
        self.assertEqual(NonFiniteState.exit_code, NUMERIC_EXIT_CODE)
        self.assertEqual(GridTooShort.exit_code, VALIDATION_EXIT_CODE)
        self.assertNotIn(IO_EXIT_CODE, (VALIDATION_EXIT_CODE, 3))


class LoggerDecoratorTests(SimpleTestCase):
    def test_error_is_logged_and_reraised(self):
        @LoggerDecorator("exceptions")
        def failing(values):
            raise NonFiniteState("x is nan at node 3")

        with self.assertLogs("exceptions", level="ERROR") as logs:
            with self.assertRaises(NonFiniteState):
                failing(np.zeros((5, 4)))
        self.assertIn("NonFiniteState", logs.output[0])
        self.assertIn("shape=(5, 4)", logs.output[0])

    def test_result_passes_through(self):
        @LoggerDecorator("exceptions")
        def double(value):
            return 2 * value

        self.assertEqual(double(2), 4)

    def test_long_arguments_are_truncated(self):
        self.assertTrue(len(summarize_argument("a" * 1000)) <= 200)


class CelerySettingsTests(SimpleTestCase):
    def test_eager_runs_need_no_result_backend(self):
        self.assertIsNone(default_result_backend("memory://"))

    def test_broker_gets_a_result_backend(self):
        self.assertEqual(
            default_result_backend("redis://localhost:6379/0"), "rpc://"
        )
