import numpy as np

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from scenarios.presets import N_DISEASE_FREE, baseline_params

from .model import objective_integrand, rhs_controlled, rhs_uncontrolled
from .types import (
    ControlPair,
    HistoryFunction,
    ModelParams,
    ObjectiveWeights,
    State,
)
from .validators import validate_ranges


class ModelParamsTests(SimpleTestCase):
    def test_negative_rate_names_the_field(self):
        with self.assertRaises(ValidationError) as context:
            baseline_params(d=-1.0)
        self.assertIn("d", context.exception.message_dict)

    def test_zero_delay_is_allowed(self):
        self.assertEqual(baseline_params(tau=0.0).tau, 0.0)

    def test_negative_delay_is_rejected(self):
        with self.assertRaises(ValidationError) as context:
            baseline_params(tau=-0.5)
        self.assertIn("tau", context.exception.message_dict)

    def test_nan_is_rejected(self):
        self.assertRaises(ValidationError, baseline_params, beta=float("nan"))

    def test_with_overrides(self):
        params = baseline_params()
        changed = params.with_overrides(big_n=750.0)
        self.assertEqual(changed.big_n, 750.0)
        self.assertEqual(changed.mu, params.mu)
        with self.assertRaises(ValidationError) as context:
            params.with_overrides(gamma=1.0)
        self.assertIn("gamma", context.exception.message_dict)

    def test_baseline_values_respect_literature_ranges(self):
        validate_ranges(baseline_params())
        validate_ranges(baseline_params(N_DISEASE_FREE))

    def test_out_of_range_values_are_named(self):
        with self.assertRaises(ValidationError) as context:
            validate_ranges(baseline_params(mu=5.0, tau=0.0))
        self.assertEqual(
            sorted(context.exception.message_dict), ["mu", "tau"]
        )

    def test_killing_rate_is_not_range_checked(self):
        validate_ranges(baseline_params(p=12.0))


class ValueTypeTests(SimpleTestCase):
    def test_history_must_be_nonnegative(self):
        with self.assertRaises(ValidationError) as context:
            HistoryFunction(5.0, -1.0, 1.0, 2.0)
        self.assertIn("y0", context.exception.message_dict)

    def test_weights_must_be_positive(self):
        with self.assertRaises(ValidationError) as context:
            ObjectiveWeights(A1=0.0, A2=0.0, tf=500.0)
        self.assertEqual(sorted(context.exception.message_dict), ["A1", "A2"])

    def test_control_bounds(self):
        ControlPair(0.0, 1.0).validate()
        with self.assertRaises(ValidationError) as context:
            ControlPair(1.5, 0.5).validate()
        self.assertIn("u1", context.exception.message_dict)


class RightHandSideTests(SimpleTestCase):
    def setUp(self):
        self.params = baseline_params()

    def test_disease_free_point_is_fixed(self):
        point = State(10.0, 0.0, 0.0, 0.0)
        params = baseline_params(N_DISEASE_FREE)
        self.assertEqual(
            tuple(rhs_uncontrolled(point, point, params)), (0.0,) * 4
        )
        self.assertEqual(
            tuple(rhs_controlled(point, point, ControlPair(1, 1), params)),
            (0.0,) * 4,
        )

    def test_ctl_free_point_is_fixed(self):
        point = State(8.0, 1.0, 100.0, 0.0)
        for value in rhs_uncontrolled(point, point, self.params):
            self.assertAlmostEqual(value, 0.0, places=12)

    def test_uncontrolled_values(self):
        point = State(5.0, 1.0, 1.0, 2.0)
        dx, dy, dv, dz = rhs_uncontrolled(point, point, self.params)
        self.assertAlmostEqual(dx, 0.49875, places=12)
        self.assertAlmostEqual(dy, -0.20075, places=12)
        self.assertAlmostEqual(dv, 297.0, places=10)
        self.assertAlmostEqual(dz, -0.1, places=12)

    def test_controlled_values(self):
        point = State(5.0, 1.0, 1.0, 2.0)
        dx, dy, dv, dz = rhs_controlled(
            point, point, ControlPair(0.5, 0.5), self.params
        )
        self.assertAlmostEqual(dx, 0.499375, places=12)
        self.assertAlmostEqual(dy, -0.201375, places=12)
        self.assertAlmostEqual(dv, 147.0, places=10)
        self.assertAlmostEqual(dz, -0.1, places=12)

    def test_delayed_state_only_feeds_infections(self):
        now = State(5.0, 1.0, 1.0, 2.0)
        delayed = State(7.0, 3.0, 4.0, 9.0)
        derivative = rhs_uncontrolled(now, delayed, self.params)
        self.assertAlmostEqual(
            derivative.dy, 0.00025 * 7.0 * 4.0 - 0.2 - 0.002, places=12
        )
        self.assertEqual(
            derivative.dx, rhs_uncontrolled(now, now, self.params).dx
        )

    def test_zero_control_matches_uncontrolled_exactly(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            now = State(*rng.uniform(0.0, 100.0, 4))
            delayed = State(*rng.uniform(0.0, 100.0, 4))
            self.assertEqual(
                rhs_controlled(now, delayed, ControlPair(), self.params),
                rhs_uncontrolled(now, delayed, self.params),
            )

    def test_infection_terms_cancel_without_delay(self):
        rng = np.random.default_rng(11)
        params = self.params
        for _ in range(200):
            now = State(*rng.uniform(0.0, 100.0, 4))
            derivative = rhs_uncontrolled(now, now, params)
            expected = (
                params.lam
                - params.d * now.x
                - params.a * now.y
                - params.p * now.y * now.z
            )
            self.assertAlmostEqual(
                derivative.dx + derivative.dy,
                expected,
                delta=1e-12 * (1.0 + abs(expected) + now.x * now.v),
            )


class ObjectiveIntegrandTests(SimpleTestCase):
    def setUp(self):
        self.weights = ObjectiveWeights(A1=30.0, A2=40.0, tf=500.0)

    def test_values(self):
        self.assertEqual(
            objective_integrand(10.0, 0.0, ControlPair(), self.weights), 10.0
        )
        self.assertEqual(
            objective_integrand(10.0, 2.0, ControlPair(1, 1), self.weights),
            -23.0,
        )
        self.assertEqual(
            objective_integrand(0.0, 0.0, ControlPair(), self.weights), 0.0
        )

    def test_arrays(self):
        values = objective_integrand(
            np.array([10.0, 10.0]),
            np.array([0.0, 2.0]),
            ControlPair(np.zeros(2), np.ones(2)),
            self.weights,
        )
        np.testing.assert_allclose(values, [-10.0, -8.0])
