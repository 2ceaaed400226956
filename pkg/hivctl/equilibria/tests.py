import numpy as np

from django.test import SimpleTestCase

from common.exceptions import DegenerateDenominator
from dynamics.model import rhs_uncontrolled
from scenarios.presets import N_DISEASE_FREE, baseline_params

from .conditions import condition_values
from .points import (
    CTL_FREE_ENDEMIC,
    DISEASE_FREE,
    FULL_ENDEMIC,
    all_equilibria,
    disease_free,
    endemic_e1,
    endemic_e2,
)


def jittered_params(rng, spread=2.0):
    """Baseline constants, each scaled by a log-uniform factor."""
    base = baseline_params()
    factors = np.exp(rng.uniform(-np.log(spread), np.log(spread), 9))
    names = ("lam", "d", "beta", "a", "p", "c", "h_ctl", "big_n", "mu")
    return base.with_overrides(
        **{
            name: getattr(base, name) * float(factor)
            for name, factor in zip(names, factors)
        }
    )


def residual(equilibrium, params):
    point = equilibrium.point
    return max(abs(value) for value in rhs_uncontrolled(point, point, params))


class PointTests(SimpleTestCase):
    def test_disease_free(self):
        self.assertEqual(
            tuple(disease_free(baseline_params()).point), (10.0, 0.0, 0.0, 0.0)
        )
        point = disease_free(baseline_params(lam=2.0, d=0.5)).point
        self.assertEqual(tuple(point), (4.0, 0.0, 0.0, 0.0))
        self.assertEqual(
            disease_free(baseline_params(lam=1.0, d=1.0)).point.x, 1.0
        )

    def test_ctl_free_endemic(self):
        params = baseline_params()
        equilibrium = endemic_e1(params)
        self.assertEqual(equilibrium.kind, CTL_FREE_ENDEMIC)
        self.assertTrue(equilibrium.feasible)
        np.testing.assert_allclose(
            equilibrium.point, (8.0, 1.0, 100.0, 0.0), rtol=1e-12
        )
        self.assertLessEqual(residual(equilibrium, params), 1e-10)

    def test_ctl_free_endemic_below_threshold(self):
        equilibrium = endemic_e1(baseline_params(N_DISEASE_FREE))
        self.assertFalse(equilibrium.feasible)
        # (0.1875 - 0.3) / (0.2 * 750 * 0.00025)
        self.assertAlmostEqual(equilibrium.point.y, -3.0, places=12)

    def test_ctl_free_endemic_on_threshold(self):
        point = endemic_e1(baseline_params(1200.0)).point
        self.assertAlmostEqual(point.y, 0.0, places=12)
        self.assertAlmostEqual(point.v, 0.0, places=10)
        self.assertAlmostEqual(point.x, 10.0, places=12)

    def test_full_endemic(self):
        params = baseline_params()
        equilibrium = endemic_e2(params)
        self.assertEqual(equilibrium.kind, FULL_ENDEMIC)
        self.assertTrue(equilibrium.feasible)
        np.testing.assert_allclose(
            equilibrium.point, (25 / 3, 0.8, 80.0, 25 / 3), rtol=1e-12
        )
        for value, printed in zip(equilibrium.point, (8.333, 0.8, 80, 8.333)):
            self.assertLessEqual(abs(value - printed), 0.005 * printed)

    def test_full_endemic_below_threshold(self):
        equilibrium = endemic_e2(baseline_params(N_DISEASE_FREE))
        self.assertFalse(equilibrium.feasible)
        self.assertAlmostEqual(equilibrium.point.x, 0.0825 / 0.009)
        self.assertLess(equilibrium.point.z, 0.0)

    def test_full_endemic_with_zero_ctl(self):
        # x = 10 - 0.05 / c equals mu / (beta N) = 8 for c = 0.025.
        params = baseline_params(c=0.025)
        point = endemic_e2(params).point
        self.assertAlmostEqual(point.z, 0.0, places=9)

    def test_degenerate_denominator(self):
        # lambda mu c = 0.09 = beta a N h for N = 7500 and h = 0.24.
        params = baseline_params(7500.0, h_ctl=0.24)
        self.assertRaises(DegenerateDenominator, endemic_e2, params)
        with self.assertLogs("equilibria", level="WARNING") as logs:
            equilibria = all_equilibria(params)
        self.assertIn("full endemic point", logs.output[0])
        kinds = [equilibrium.kind for equilibrium in equilibria]
        self.assertEqual(kinds, [DISEASE_FREE, CTL_FREE_ENDEMIC])


class ConditionTests(SimpleTestCase):
    def test_baseline_values(self):
        self.assertAlmostEqual(
            condition_values(baseline_params(N_DISEASE_FREE)).cond_ef,
            -0.1125,
            delta=1e-12,
        )
        values = condition_values(baseline_params())
        self.assertAlmostEqual(values.cond_e2_exist, 0.075, delta=1e-12)
        self.assertAlmostEqual(values.cond_e1_e2, 1.125e-3, delta=1e-12)

    def test_as_dict(self):
        self.assertEqual(
            sorted(condition_values(baseline_params()).as_dict()),
            ["cond_e1_e2", "cond_e2_exist", "cond_ef"],
        )


class PropertyTests(SimpleTestCase):
    def test_feasible_points_are_fixed(self):
        rng = np.random.default_rng(2024)
        for _ in range(500):
            params = jittered_params(rng)
            for equilibrium in all_equilibria(params):
                if not equilibrium.feasible:
                    continue
                scale = 1.0 + max(abs(value) for value in equilibrium.point)
                self.assertLessEqual(
                    residual(equilibrium, params), 1e-10 * scale
                )

    def test_threshold_coherence(self):
        rng = np.random.default_rng(99)
        checked = 0
        while checked < 300:
            params = jittered_params(rng)
            cond_ef = condition_values(params).cond_ef
            if abs(cond_ef) < 1e-6:
                continue
            point = endemic_e1(params).point
            self.assertEqual(cond_ef > 0, point.y > 0 and point.v > 0)
            checked += 1

    def test_ctl_free_point_tends_to_disease_free(self):
        previous = None
        for offset in (1e-1, 1e-3, 1e-5):
            point = endemic_e1(baseline_params(1200.0 + offset)).point
            distance = max(
                abs(point.x - 10.0), abs(point.y), abs(point.v), abs(point.z)
            )
            if previous is not None:
                self.assertLess(distance, previous)
            previous = distance
        self.assertLess(previous, 1e-4)
