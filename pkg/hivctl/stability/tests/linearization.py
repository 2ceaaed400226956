import numpy as np

from django.test import SimpleTestCase

from equilibria.points import disease_free, endemic_e1, endemic_e2
from scenarios.presets import N_DISEASE_FREE, baseline_params
from stability.coefficients import (
    disease_free_factor,
    endemic_quasi_polynomial,
)
from stability.linearization import (
    char_fn,
    char_poly_tau0,
    eigenvalues_tau0,
    linearize,
)

from .utils import jittered_params


class LinearizationTest(SimpleTestCase):
    def test_disease_free_matrices(self):
        params = baseline_params(N_DISEASE_FREE)
        pair = linearize(params, disease_free(params))
        np.testing.assert_allclose(
            pair.a1[0], [-0.1, 0.0, -0.00025 * 10, 0.0]
        )
        expected = np.zeros((4, 4))
        expected[1, 2] = 0.00025 * 10
        np.testing.assert_allclose(pair.a2, expected)
        self.assertEqual(pair.a1[3, 3], -0.2)

    def test_delayed_matrix_pattern(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            params = jittered_params(rng)
            pair = linearize(params, endemic_e1(params))
            mask = np.ones((4, 4), dtype=bool)
            mask[1, 0] = mask[1, 2] = False
            self.assertTrue(np.all(pair.a2[mask] == 0))

    def test_ctl_growth_vanishes_at_full_endemic_point(self):
        params = baseline_params()
        pair = linearize(params, endemic_e2(params))
        self.assertLessEqual(abs(pair.a1[3, 3]), 1e-12)

    def test_char_fn_vanishes_at_eigenvalues(self):
        params = baseline_params()
        for equilibrium in (disease_free(params), endemic_e2(params)):
            pair = linearize(params, equilibrium)
            for zeta in eigenvalues_tau0(pair):
                self.assertLessEqual(
                    abs(char_fn(pair, zeta, 0.0)),
                    1e-8 * (1.0 + abs(zeta) ** 4),
                )

    def test_disease_free_roots_for_any_delay(self):
        params = baseline_params(N_DISEASE_FREE)
        pair = linearize(params, disease_free(params))
        for tau in (0.0, 1.0, 10.0):
            self.assertLessEqual(abs(char_fn(pair, -params.d, tau)), 1e-12)
            self.assertLessEqual(
                abs(char_fn(pair, -params.h_ctl, tau)), 1e-12
            )

    def test_disease_free_factorization(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            params = jittered_params(rng)
            tau = float(rng.uniform(0.0, 20.0))
            zeta = complex(rng.uniform(-0.05, 2.0), rng.uniform(-3.0, 3.0))
            pair = linearize(params, disease_free(params))
            expected = (
                (zeta + params.d)
                * (zeta + params.h_ctl)
                * disease_free_factor(params, zeta, tau)
            )
            self.assertLessEqual(
                abs(char_fn(pair, zeta, tau) - expected),
                1e-8 * max(1.0, abs(expected)),
            )

    def test_full_endemic_quasi_polynomial_with_corrected_term(self):
        rng = np.random.default_rng(19)
        params = baseline_params()
        pair = linearize(params, endemic_e2(params))
        quasi = endemic_quasi_polynomial(params)
        for _ in range(100):
            zeta = complex(rng.uniform(-0.05, 2.0), rng.uniform(-3.0, 3.0))
            expected = quasi(zeta, 10.0, corrected=True)
            self.assertLessEqual(
                abs(char_fn(pair, zeta, 10.0) - expected),
                1e-8 * max(1.0, abs(expected)),
            )

    def test_char_poly_roots_are_eigenvalues(self):
        params = baseline_params()
        pair = linearize(params, endemic_e2(params))
        roots = char_poly_tau0(pair).roots()
        for eigenvalue in eigenvalues_tau0(pair):
            self.assertLessEqual(np.min(np.abs(roots - eigenvalue)), 1e-8)
