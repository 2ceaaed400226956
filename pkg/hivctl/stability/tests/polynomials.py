import numpy as np

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from stability.polynomials import PolyCoeffs


class PolyCoeffsTest(SimpleTestCase):
    def test_real_roots(self):
        poly = PolyCoeffs.from_highest_first([1.0, -3.0, 2.0])
        np.testing.assert_allclose(poly.real_roots(), [1.0, 2.0])
        self.assertEqual(poly.degree, 2)
        self.assertEqual(poly.coefficients, (2.0, -3.0, 1.0))

    def test_complex_roots_are_not_real(self):
        poly = PolyCoeffs.from_highest_first([1.0, 0.0, 1.0])
        self.assertEqual(poly.real_roots(), [])
        np.testing.assert_allclose(
            sorted(poly.roots(), key=lambda root: root.imag), [-1j, 1j]
        )

    def test_zero_constant_term_gives_exact_zero_root(self):
        poly = PolyCoeffs.from_highest_first([1.0, 9.0, 0.09, 0.0035, 0.0])
        roots = poly.in_square().roots()
        self.assertEqual(len(roots), 8)
        self.assertEqual(np.count_nonzero(roots == 0), 2)

    def test_in_square(self):
        poly = PolyCoeffs.from_highest_first([1.0, 2.0, 3.0])
        self.assertEqual(
            poly.in_square().highest_first(), [1.0, 0.0, 2.0, 0.0, 3.0]
        )
        self.assertAlmostEqual(poly.in_square()(2.0), poly(4.0))

    def test_invalid_coefficients(self):
        self.assertRaises(
            ValidationError, PolyCoeffs.from_highest_first, [0.0, 1.0]
        )
        self.assertRaises(
            ValidationError, PolyCoeffs.from_lowest_first, [1.0] * 10
        )
        self.assertRaises(
            ValidationError, PolyCoeffs.from_lowest_first, [float("nan"), 1]
        )

    def test_root_residuals(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            degree = int(rng.integers(1, 9))
            poly = PolyCoeffs.from_lowest_first(
                [*rng.normal(size=degree), 1.0]
            )
            for root in poly.roots():
                self.assertLessEqual(
                    abs(poly(root)), 1e-8 * (1.0 + abs(root) ** degree)
                )
