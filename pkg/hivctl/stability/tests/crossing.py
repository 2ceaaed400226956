from fractions import Fraction

import numpy as np

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from equilibria.points import DISEASE_FREE
from scenarios.presets import N_DISEASE_FREE, baseline_params
from stability.coefficients import (
    endemic_printed_quartic,
    endemic_quasi_polynomial,
)
from stability.crossing import crossing_poly_e2, quasipoly_real_axis_scan

from .utils import jittered_params


class CrossingPolynomialTest(SimpleTestCase):
    def setUp(self):
        self.params = baseline_params()
        self.crossing = crossing_poly_e2(self.params)

    def test_coefficients(self):
        # w^8 + s w^6 + t w^4 + u w^2 + v, constant term first.
        v, _, u, _, t, _, s, _, one = self.crossing.coefficients.coefficients
        self.assertEqual(one, 1.0)
        expected = {
            "s": Fraction(3262009, 360000),
            "t": Fraction(419609, 4500000),
            "u": Fraction(1060237, 300000000),
            "v": Fraction(313, 2000000),
        }
        for name, value in zip("stuv", (s, t, u, v)):
            target = float(expected[name])
            self.assertLessEqual(abs(value - target), 1e-12 * abs(target))

    def test_imaginary_roots(self):
        roots = self.crossing.roots
        self.assertEqual(len(roots), 8)
        for target in (0.1550207983j, 3.008467478j):
            for sign in (1, -1):
                self.assertLessEqual(
                    np.min(np.abs(roots - sign * target)), 1e-6
                )
        np.testing.assert_allclose(
            self.crossing.imaginary_roots,
            [-3.008467478, -0.1550207983, 0.1550207983, 3.008467478],
            atol=1e-6,
        )

    def test_root_residuals(self):
        poly = self.crossing.coefficients
        for root in self.crossing.roots:
            self.assertLessEqual(
                abs(poly(root)), 1e-8 * (1.0 + abs(root) ** 8)
            )

    def test_rederived_constant_term(self):
        crossing = crossing_poly_e2(self.params, corrected=True)
        self.assertAlmostEqual(
            crossing.coefficients.coefficients[0], 0.0005**2, delta=1e-15
        )


class RealAxisScanTest(SimpleTestCase):
    def test_delayed_example(self):
        params = baseline_params()
        quasi = endemic_quasi_polynomial(params)
        self.assertAlmostEqual(quasi.k3, 1997 / 600, places=12)
        scan = quasipoly_real_axis_scan(params, 10.0, (0.0, 10.0), 10000)
        self.assertAlmostEqual(scan.values[0], 0.0005, delta=1e-12)
        self.assertTrue(scan.positive)
        self.assertEqual(scan.sign_changes, [])

    def test_zero_delay_is_the_quartic(self):
        rng = np.random.default_rng(41)
        for params in [baseline_params()] + [
            jittered_params(rng, spread=1.2) for _ in range(5)
        ]:
            scan = quasipoly_real_axis_scan(params, 0.0, (0.0, 10.0), 101)
            e, f, g, h = endemic_printed_quartic(params)
            zeta = scan.zeta
            expected = zeta**4 + e * zeta**3 + f * zeta**2 + g * zeta + h
            np.testing.assert_allclose(
                scan.values, expected, rtol=1e-12, atol=1e-12
            )

    def test_disease_free_factor(self):
        below = quasipoly_real_axis_scan(
            baseline_params(N_DISEASE_FREE), 10.0, kind=DISEASE_FREE
        )
        self.assertEqual(below.sign_changes, [])
        self.assertAlmostEqual(below.values[0], 0.6 * (1 - 0.625))

        above = quasipoly_real_axis_scan(
            baseline_params(), 10.0, kind=DISEASE_FREE
        )
        self.assertEqual(len(above.sign_changes), 1)

    def test_invalid_arguments(self):
        with self.assertRaises(ValidationError) as context:
            quasipoly_real_axis_scan(
                baseline_params(), -1.0, (2.0, 1.0), 1, kind="other"
            )
        self.assertEqual(
            sorted(context.exception.message_dict),
            ["interval", "kind", "samples", "tau"],
        )
